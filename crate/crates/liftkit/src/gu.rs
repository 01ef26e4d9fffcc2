//! The Fibonacci-like coefficient family with three leading ones, whose
//! sequential lifting coefficients grow exponentially, plus the
//! constructive subset-sum representation used by the hardness reduction.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::knapsack::{IndexSet, KnapsackSet, Partition};
use crate::lifting::LiftingTask;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GuError {
    #[error("sequence length must be at least 3, got {0}")]
    LengthTooSmall(usize),
    #[error("target {tau} is outside [0, {max}]")]
    OutOfRange { tau: BigInt, max: BigInt },
}

/// The sequence 1, 1, 1, 2, 3, 5, 8, ... (`f_i = f_{i-2} + f_{i-1}` with
/// three leading ones).
pub fn gen_f(length: usize) -> Result<Vec<BigInt>, GuError> {
    if length < 3 {
        return Err(GuError::LengthTooSmall(length));
    }
    let mut f = vec![BigInt::one(); length];
    for i in 3..length {
        f[i] = &f[i - 2] + &f[i - 1];
    }
    Ok(f)
}

/// The lifting task with weights `f_1, ..., f_{2r+1}`, capacity
/// `sum_{i=1}^{2r} f_i`, cover `{1, 2}`, even indices fixed to 0, odd
/// indices from 3 fixed to 1, and lifting sequence `3, 4, ..., 2r+1`.
/// Its restricted capacity is always 1.
pub fn build_gu_task(r: usize) -> LiftingTask {
    assert!(r >= 1, "r must be positive");
    let n = 2 * r + 1;
    let f = gen_f(n).expect("n >= 3");
    let b: BigInt = f[..2 * r].iter().sum();
    let set = KnapsackSet::new(f, b).expect("weights are positive");
    let cover: IndexSet = [1, 2].into_iter().collect();
    let fixed_zero: IndexSet = (4..=2 * r).step_by(2).collect();
    let fixed_one: IndexSet = (3..=n).step_by(2).collect();
    LiftingTask::new(set, Partition::new(cover, fixed_zero, fixed_one), (3..=n).collect())
}

/// The lifted coefficients the task is known to produce: `i -> f_i` for
/// every lifted index.
pub fn expected_gu_coefficients(r: usize) -> BTreeMap<usize, BigInt> {
    assert!(r >= 1, "r must be positive");
    let f = gen_f(2 * r + 1).expect("length >= 3");
    (3..=2 * r + 1).map(|i| (i, f[i - 1].clone())).collect()
}

/// Represents `tau` as a subset of `{f_1, ..., f_{2r+1}}` summing to it
/// exactly, by the deterministic descent: at level `r` take `f_{2r+1}`
/// (and also `f_{2r}` when the remainder demands it) whenever `tau`
/// exceeds the span of the first `2r-1` entries, then recurse.
pub fn represent_subset_sum(r: usize, tau: &BigInt) -> Result<IndexSet, GuError> {
    assert!(r >= 1, "r must be positive");
    let f = gen_f(2 * r + 1).expect("length >= 3");
    let max: BigInt = f.iter().sum();
    if tau.is_negative() || tau > &max {
        return Err(GuError::OutOfRange { tau: tau.clone(), max });
    }
    let mut s = IndexSet::new();
    let mut tau = tau.clone();
    let mut level = r;
    while level > 1 {
        let hi = &f[2 * level]; // f_{2level+1}
        let lo = &f[2 * level - 1]; // f_{2level}
        // Span of f_1..f_{2level-1} equals f_{2level+1}.
        if &tau > hi {
            if &tau > &(lo + hi) {
                tau -= lo + hi;
                s.insert(2 * level);
                s.insert(2 * level + 1);
            } else {
                tau -= hi;
                s.insert(2 * level + 1);
            }
        }
        level -= 1;
    }
    // f_1 = f_2 = f_3 = 1: take as many unit entries as remain.
    let mut rest = tau;
    for i in 1..=3 {
        if rest.is_zero() {
            break;
        }
        s.insert(i);
        rest -= 1u8;
    }
    debug_assert!(rest.is_zero());
    Ok(s)
}

/// Partial-sum identity: `f_j = sum_{i=1}^{j-2} f_i` for `j >= 3`.
pub fn partial_sum_identity_holds(f: &[BigInt]) -> bool {
    (3..=f.len()).all(|j| f[j - 1] == f[..j - 2].iter().sum::<BigInt>())
}

/// Checks `(1/4)(sqrt(2)-1)(sqrt(2))^j <= f_j <= 2^j` in squared integer
/// form, keeping the whole artifact float-free:
/// for even `j = 2s`, `(4 f_j + 2^s)^2 >= 2^(2s+1)`;
/// for odd `j = 2s+1`, either `2^(s+1) <= 4 f_j` or
/// `(2^(s+1) - 4 f_j)^2 <= 2^(2s+1)`.
pub fn growth_bounds_hold(j: usize, f_j: &BigInt) -> bool {
    let upper = f_j <= &(BigInt::one() << j);
    let four_f = BigInt::from(4u8) * f_j;
    let s = j / 2;
    let lower = if j % 2 == 0 {
        let lhs = &four_f + (BigInt::one() << s);
        &lhs * &lhs >= (BigInt::one() << (2 * s + 1))
    } else {
        let pow = BigInt::one() << (s + 1);
        if pow <= four_f {
            true
        } else {
            let d = &pow - &four_f;
            &d * &d <= (BigInt::one() << (2 * s + 1))
        }
    };
    upper && lower
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lifting::sequential_lift;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn gen_f_examples() {
        assert_eq!(gen_f(2), Err(GuError::LengthTooSmall(2)));
        let f5: Vec<i64> = vec![1, 1, 1, 2, 3];
        assert_eq!(gen_f(5).unwrap(), f5.into_iter().map(big).collect::<Vec<_>>());
        let f9: Vec<i64> = vec![1, 1, 1, 2, 3, 5, 8, 13, 21];
        assert_eq!(gen_f(9).unwrap(), f9.into_iter().map(big).collect::<Vec<_>>());
        let f = gen_f(17).unwrap();
        assert_eq!(f[14], big(377));
        assert_eq!(f[16], big(987));
    }

    #[test]
    fn build_task_examples() {
        let t = build_gu_task(1);
        assert_eq!(t.set.weights(), &[big(1), big(1), big(1)]);
        assert_eq!(t.set.capacity(), &big(2));
        assert!(t.partition.fixed_zero.is_empty());
        assert_eq!(t.partition.fixed_one, [3].into_iter().collect());

        let t = build_gu_task(2);
        assert_eq!(t.set.weights(), &[big(1), big(1), big(1), big(2), big(3)]);
        assert_eq!(t.set.capacity(), &big(5));
        assert_eq!(t.partition.fixed_zero, [4].into_iter().collect());
        assert_eq!(t.partition.fixed_one, [3, 5].into_iter().collect());
        assert_eq!(t.sequence, vec![3, 4, 5]);
    }

    #[test]
    fn restricted_capacity_is_one() {
        for r in 1..=8 {
            let t = build_gu_task(r);
            let restriction = t.validate().unwrap();
            assert_eq!(restriction.restricted_capacity(), &big(1), "r = {r}");
        }
    }

    #[test]
    fn expected_coefficients_examples() {
        assert_eq!(expected_gu_coefficients(1), [(3, big(1))].into_iter().collect());
        assert_eq!(
            expected_gu_coefficients(2),
            [(3, big(1)), (4, big(2)), (5, big(3))].into_iter().collect()
        );
        let f = gen_f(21).unwrap();
        assert_eq!(expected_gu_coefficients(10)[&21], f[20]);
    }

    #[test]
    fn lifting_matches_expected_small() {
        for r in 1..=6 {
            let t = build_gu_task(r);
            let lci = sequential_lift(&t).unwrap();
            for (i, f_i) in expected_gu_coefficients(r) {
                assert_eq!(lci.coeffs[&i], f_i, "r = {r}, i = {i}");
            }
        }
    }

    #[test]
    fn subset_sum_examples() {
        assert_eq!(represent_subset_sum(1, &big(0)).unwrap(), IndexSet::new());
        let s = represent_subset_sum(1, &big(2)).unwrap();
        assert_eq!(s.len(), 2);
        let f = gen_f(5).unwrap();
        let s = represent_subset_sum(2, &big(6)).unwrap();
        let total: BigInt = s.iter().map(|&i| &f[i - 1]).sum();
        assert_eq!(total, big(6));
    }

    #[test]
    fn subset_sum_rejects_out_of_range() {
        assert!(matches!(
            represent_subset_sum(1, &big(-1)),
            Err(GuError::OutOfRange { .. })
        ));
        assert!(matches!(
            represent_subset_sum(1, &big(4)),
            Err(GuError::OutOfRange { .. })
        ));
    }

    #[test]
    fn subset_sum_exhaustive_small() {
        for r in 1..=6 {
            let f = gen_f(2 * r + 1).unwrap();
            let max: BigInt = f.iter().sum();
            let mut tau = BigInt::zero();
            while tau <= max {
                let s = represent_subset_sum(r, &tau).unwrap();
                let total: BigInt = s.iter().map(|&i| &f[i - 1]).sum();
                assert_eq!(total, tau, "r = {r}");
                tau += 1u8;
            }
        }
    }

    #[test]
    fn partial_sum_identity() {
        assert!(partial_sum_identity_holds(&gen_f(81).unwrap()));
    }

    #[test]
    fn growth_bounds() {
        let f = gen_f(81).unwrap();
        for j in 3..=81 {
            assert!(growth_bounds_hold(j, &f[j - 1]), "j = {j}");
        }
    }
}
