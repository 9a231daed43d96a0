use crate::error::{check_dim, Error, Result};
use crate::invariants::GeneratorSet;
use crate::linalg;
use crate::scalar::Scalar;

use super::GradedIdeal;

/// Hilbert-function test for a regular sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RegSeqVerdict {
    RegularUpTo(usize),
    /// `dim (R/I)_d` differs from the coefficient predicted for a regular
    /// sequence. With more generators than variables the witness degree is 0
    /// and the two numbers are the variable and generator counts.
    NotRegular { witness_degree: usize, expected_dim: i128, actual_dim: i128 },
}

impl RegSeqVerdict {
    pub fn is_regular(&self) -> bool {
        matches!(self, RegSeqVerdict::RegularUpTo(_))
    }
}

/// Coefficients of `prod_j (1 - t^{d_j}) * (1 - t)^{-n}` up to `bound`.
pub fn regular_hilbert_series(n: usize, degrees: &[usize], bound: usize) -> Vec<i128> {
    let mut h: Vec<i128> = vec![0; bound + 1];
    if n == 0 {
        h[0] = 1;
    } else {
        // C(n-1+k, k) by the recurrence c_k = c_{k-1} (n-1+k) / k
        let mut c: i128 = 1;
        for (k, slot) in h.iter_mut().enumerate() {
            if k > 0 {
                c = c * (n - 1 + k) as i128 / k as i128;
            }
            *slot = c;
        }
    }
    for &d in degrees {
        for k in (d..=bound).rev() {
            h[k] -= h[k - d];
        }
    }
    h
}

pub fn regular_sequence_check(gens: &GeneratorSet, bound: usize) -> Result<RegSeqVerdict> {
    if bound < 1 {
        return Err(Error::Invalid("bound must be at least 1".into()));
    }
    let n = gens.nvars();
    if gens.len() > n {
        return Ok(RegSeqVerdict::NotRegular { witness_degree: 0, expected_dim: n as i128, actual_dim: gens.len() as i128 });
    }
    let ideal = GradedIdeal::new(gens.clone())?;
    let expected = regular_hilbert_series(n, &gens.degrees(), bound);
    for (d, &e) in expected.iter().enumerate() {
        let actual = ideal.quotient_dim(d) as i128;
        if actual != e {
            return Ok(RegSeqVerdict::NotRegular { witness_degree: d, expected_dim: e, actual_dim: actual });
        }
    }
    Ok(RegSeqVerdict::RegularUpTo(bound))
}

/// Rank of the Jacobian `(dp_j/dx_i)` at `point`.
pub fn jacobian_rank_at(gens: &GeneratorSet, point: &[Scalar]) -> Result<usize> {
    check_dim(gens.nvars(), point.len())?;
    let rows = gens
        .generators()
        .iter()
        .map(|p| (0..gens.nvars()).map(|i| p.partial_derivative(i)?.evaluate(point)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Ok(linalg::rank(&rows, gens.nvars()))
}
