use num_traits::Zero;

use super::MonomialBasis;
use crate::error::{check_dim, Error, Result};
use crate::invariants::GeneratorSet;
use crate::linalg;
use crate::poly::{monomials_of_degree, Polynomial};
use crate::scalar::Scalar;

/// Lowers a representation `f = sum_i a_i (p_i - c_i)` until every product
/// `a_i p_i` has degree at most `r`.
///
/// Each round takes the top-degree parts `a'_i` (which satisfy
/// `sum a'_i p_i = 0`), writes that syzygy as
/// `sum_{i<j} b_ij (p_j e_i - p_i e_j)`, and replaces
/// `sum a'_i (p_i - c_i)` by `sum b_ij (c_j (p_i - c_i) - c_i (p_j - c_j))`,
/// which has strictly lower degree. Fails with
/// [`Error::SyzygyNotKoszul`] when a top syzygy is not Koszul.
pub fn koszul_reduce(a: &[Polynomial], gens: &GeneratorSet, consts: &[Scalar], r: usize) -> Result<Vec<Polynomial>> {
    let k = gens.len();
    check_dim(k, a.len())?;
    check_dim(k, consts.len())?;
    let n = gens.nvars();
    for ai in a {
        check_dim(n, ai.nvars())?;
    }
    let p = gens.generators();
    let d = gens.degrees();
    let mut a = a.to_vec();
    loop {
        let Some(s) = (0..k).filter_map(|i| a[i].degree().map(|e| e + d[i])).max() else { return Ok(a) };
        if s <= r {
            return Ok(a);
        }
        let top: Vec<Polynomial> = (0..k)
            .map(|i| if s >= d[i] { a[i].homogeneous_component(s - d[i]) } else { Polynomial::zero(n) })
            .collect();
        let mut relation = Polynomial::zero(n);
        for (t, pi) in top.iter().zip(p) {
            relation = &relation + &(t * pi);
        }
        if !relation.is_zero() {
            return Err(Error::Invalid(format!("the degree-{s} parts do not cancel; is r the degree of f?")));
        }

        let blocks: Vec<MonomialBasis> =
            (0..k).map(|i| MonomialBasis::homogeneous(n, s.saturating_sub(d[i]))).collect();
        let offsets: Vec<usize> = blocks.iter().scan(0, |acc, b| { let o = *acc; *acc += b.len(); Some(o) }).collect();
        let total: usize = blocks.iter().map(MonomialBasis::len).sum();
        let embed = |i: usize, poly: &Polynomial, out: &mut [Scalar]| {
            let v = blocks[i].vector(poly).expect("homogeneous of the block degree");
            for (x, y) in out[offsets[i]..].iter_mut().zip(v) {
                *x += y;
            }
        };

        let mut unknowns = Vec::new();
        let mut columns = Vec::new();
        for i in 0..k {
            for j in i + 1..k {
                let Some(e) = s.checked_sub(d[i] + d[j]) else { continue };
                for m in monomials_of_degree(n, e) {
                    let mut col = vec![Scalar::zero(); total];
                    embed(i, &p[j].mul_monomial(&m), &mut col);
                    embed(j, &(-&p[i]).mul_monomial(&m), &mut col);
                    columns.push(col);
                    unknowns.push((i, j, m));
                }
            }
        }
        let mut rhs = vec![Scalar::zero(); total];
        for (i, t) in top.iter().enumerate() {
            if s >= d[i] {
                embed(i, t, &mut rhs);
            }
        }
        let rows = linalg::columns_to_rows(&columns, total);
        let x = linalg::solve(&rows, &rhs, columns.len()).ok_or(Error::SyzygyNotKoszul { degree: s })?;

        for i in 0..k {
            a[i] = &a[i] - &top[i];
        }
        for ((i, j, m), b) in unknowns.iter().zip(&x) {
            if b.is_zero() {
                continue;
            }
            let bij = Polynomial::monomial(m.clone(), b.clone());
            a[*i] = &a[*i] + &bij.scale(&consts[*j]);
            a[*j] = &a[*j] - &bij.scale(&consts[*i]);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideals::MembershipCertificate;
    use crate::invariants::adjoint_trace_generators;
    use crate::poly::VarNames;
    use crate::scalar::int;

    #[test]
    fn counterexample_syzygy_is_not_koszul() {
        let names = VarNames::new(["x", "y", "z"]).unwrap();
        let gens = GeneratorSet::parse(names.clone(), &["x*y", "x^2*z"]).unwrap();
        let a = vec![
            Polynomial::parse("-(x*y + 1)*z", &names).unwrap(),
            Polynomial::parse("y^2", &names).unwrap(),
        ];
        assert_eq!(koszul_reduce(&a, &gens, &[int(1), int(0)], 1), Err(Error::SyzygyNotKoszul { degree: 5 }));
    }

    #[test]
    fn already_reduced_input_is_unchanged() {
        let gens = adjoint_trace_generators(2, false).unwrap();
        let q = gens.generators()[0].clone();
        let out = koszul_reduce(std::slice::from_ref(&q), &gens, &[int(1)], 4).unwrap();
        assert_eq!(out, vec![q]);
    }

    #[test]
    fn reduces_a_padded_representation() {
        let names = VarNames::new(["x", "y"]).unwrap();
        let gens = GeneratorSet::parse(names.clone(), &["x", "y"]).unwrap();
        let consts = [int(2), int(3)];
        let elements: Vec<Polynomial> = ["x - 2", "y - 3"].iter().map(|s| Polynomial::parse(s, &names).unwrap()).collect();
        let a = vec![Polynomial::parse("1 + y^2", &names).unwrap(), Polynomial::parse("-x*y", &names).unwrap()];
        let f = MembershipCertificate { coefficients: a.clone() }.expand(&elements).unwrap();
        assert_eq!(f.degree(), Some(2));
        let out = koszul_reduce(&a, &gens, &consts, 2).unwrap();
        assert!(out.iter().all(|ai| ai.degree().is_none_or(|e| e < 2)));
        assert!(MembershipCertificate { coefficients: out }.verifies(&f, &elements));
    }
}
