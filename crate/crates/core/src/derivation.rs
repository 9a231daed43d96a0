//! The derivation induced by an endomorphism on the coordinate ring.
//!
//! For `A` in `End(V)`, `D_A f (v) = df(v)(A v)`, i.e.
//! `D_A = sum_{i,j} A_ij x_j d/dx_i`. The matrix sending `(a, b)` to `(0, a)`
//! gives `x d/dy`. With this convention `A -> D_A` reverses brackets:
//! `D_A D_B - D_B D_A = D_{[B,A]}`.

use num_traits::Zero;

use crate::error::{check_dim, Result};
use crate::matrix::{AffineMap, Matrix};
use crate::poly::{Monomial, Polynomial};
use crate::scalar::{self, Scalar};

/// `D_A f`.
pub fn derivation_apply(a: &Matrix, f: &Polynomial) -> Result<Polynomial> {
    let n = a.dim();
    check_dim(n, f.nvars())?;
    let mut terms = Vec::new();
    for (m, c) in f.terms() {
        let exps = m.exponents();
        for i in 0..n {
            if exps[i] == 0 {
                continue;
            }
            let ci = c * scalar::int(exps[i] as i64);
            for j in 0..n {
                let aij = a.get(i, j);
                if aij.is_zero() {
                    continue;
                }
                let mut e = exps.to_vec();
                e[i] -= 1;
                e[j] += 1;
                terms.push((Monomial::new(e), &ci * aij));
            }
        }
    }
    Ok(Polynomial::from_terms(n, terms))
}

/// `D_{E_ij} f = x_j df/dx_i` for the matrix unit `E_ij`.
pub fn unit_derivation(i: usize, j: usize, f: &Polynomial) -> Result<Polynomial> {
    let d = f.partial_derivative(i)?;
    Ok(d.mul_monomial(&Monomial::var(f.nvars(), j)))
}

/// Directional derivative along the constant vector field `b`.
pub fn directional_derivative(b: &[Scalar], f: &Polynomial) -> Result<Polynomial> {
    check_dim(f.nvars(), b.len())?;
    let mut out = Polynomial::zero(f.nvars());
    for (i, bi) in b.iter().enumerate() {
        if !bi.is_zero() {
            out = &out + &f.partial_derivative(i)?.scale(bi);
        }
    }
    Ok(out)
}

/// The affine vector field `x -> A x + b` applied to `f`.
pub fn affine_field_apply(field: &AffineMap, f: &Polynomial) -> Result<Polynomial> {
    Ok(&derivation_apply(&field.linear, f)? + &directional_derivative(&field.translation, f)?)
}
