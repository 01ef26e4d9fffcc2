//! The restricted partition problem (RPP), its polynomial preprocessing,
//! a brute-force decider, and the reduction that builds a lifting task
//! whose final down-lifted coefficient encodes the RPP answer.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use thiserror::Error;

use crate::gu::gen_f;
use crate::knapsack::{IndexSet, KnapsackSet, Partition};
use crate::lifting::{sequential_lift, LiftError, LiftingTask};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RppError {
    #[error("element values must sum to 2(2^(m+1) - 1) = {expected}, got {actual}")]
    BadTotal { expected: BigInt, actual: BigInt },
    #[error("element {index} has non-positive value")]
    NonPositiveValue { index: usize },
    #[error("instance is not reduced: element {index} has value >= lambda")]
    NotReduced { index: usize },
    #[error("m must be >= 1: for m = 0 no reduced instance exists")]
    MTooSmall,
    #[error("m = {m} exceeds the brute-force cap {cap}: the sum table has 2^(m+2) entries")]
    MTooLargeForBruteForce { m: u32, cap: u32 },
    #[error(transparent)]
    Lift(#[from] LiftError),
    #[error("lifted coefficient {got} is outside the two admissible values {no_value} and {yes_value}")]
    UnexpectedCoefficient { got: BigInt, no_value: BigInt, yes_value: BigInt },
}

/// `m` plus element values summing to `2 lambda` where
/// `lambda = 2^(m+1) - 1`. Elements form a multiset, indexed positionally.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RppInstance {
    pub m: u32,
    pub omega: Vec<BigInt>,
}

impl RppInstance {
    pub fn new(m: u32, omega: Vec<BigInt>) -> Self {
        RppInstance { m, omega }
    }

    pub fn lambda(&self) -> BigInt {
        (BigInt::one() << (self.m + 1)) - 1
    }

    pub fn k(&self) -> usize {
        self.omega.len()
    }
}

/// Checks the defining invariants: positive values summing to `2 lambda`.
pub fn validate_rpp(inst: &RppInstance) -> Result<(), RppError> {
    for (i, w) in inst.omega.iter().enumerate() {
        if w < &BigInt::one() {
            return Err(RppError::NonPositiveValue { index: i + 1 });
        }
    }
    let expected = BigInt::from(2u8) * inst.lambda();
    let actual: BigInt = inst.omega.iter().sum();
    if actual != expected {
        return Err(RppError::BadTotal { expected, actual });
    }
    Ok(())
}

/// Result of preprocessing an instance with oversized elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Preprocessed {
    /// All values lie in `[1, lambda - 1]`; the reduction applies.
    Reduced(RppInstance),
    /// The answer follows without any search: some element in
    /// `[lambda, lambda + 1]` makes the rest the desired subset (yes), or
    /// some element `>= lambda + 2` leaves no room (no).
    Decided(bool),
}

pub fn preprocess_rpp(inst: &RppInstance) -> Result<Preprocessed, RppError> {
    validate_rpp(inst)?;
    let lambda = inst.lambda();
    for w in &inst.omega {
        if w >= &(&lambda + 2u8) {
            return Ok(Preprocessed::Decided(false));
        }
        if w >= &lambda {
            return Ok(Preprocessed::Decided(true));
        }
    }
    Ok(Preprocessed::Reduced(inst.clone()))
}

/// Exact decision by a subset-sum table over `[0, 2 lambda]`: is some
/// subset's total `lambda` or `lambda - 1`? Returns the witness subset
/// when the answer is yes. The table is exponential in `m`, hence the
/// hard cap.
pub fn solve_rpp(inst: &RppInstance) -> Result<Option<IndexSet>, RppError> {
    validate_rpp(inst)?;
    const M_CAP: u32 = 20;
    if inst.m > M_CAP {
        return Err(RppError::MTooLargeForBruteForce { m: inst.m, cap: M_CAP });
    }
    let total = (2usize << (inst.m + 1)) - 2; // 2 lambda
    // reachable[s] = index (1-based) of the last element used to first
    // reach sum s, 0 at s = 0, usize::MAX if unreachable.
    let mut reached: Vec<usize> = vec![usize::MAX; total + 1];
    reached[0] = 0;
    for (idx, w) in inst.omega.iter().enumerate() {
        let w = w.to_usize().expect("values are at most 2 lambda");
        for s in (w..=total).rev() {
            if reached[s] == usize::MAX && reached[s - w] != usize::MAX && reached[s - w] <= idx {
                reached[s] = idx + 1;
            }
        }
    }
    let lambda = total / 2; // 2^(m+1) - 1
    for target in [lambda, lambda - 1] {
        if reached[target] != usize::MAX {
            // Walk the table backwards to reconstruct the subset.
            let mut s = target;
            let mut witness = IndexSet::new();
            while s > 0 {
                let idx = reached[s];
                witness.insert(idx);
                s -= inst.omega[idx - 1].to_usize().unwrap();
            }
            return Ok(Some(witness));
        }
    }
    Ok(None)
}

/// The lifting task built from a reduced RPP instance, with the shape
/// parameters needed to read the encoded answer back off.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HardInstance {
    pub task: LiftingTask,
    pub r: usize,
    pub n: usize,
    pub lambda: BigInt,
    pub provenance: RppInstance,
}

impl HardInstance {
    /// Indices of the instance carrying the original element values.
    pub fn element_indices(&self) -> std::ops::RangeInclusive<usize> {
        2 * self.r + 4..=self.n - 1
    }

    /// The coefficient value of `x_n` that encodes a yes answer:
    /// `f_{2r+1} + 3 lambda + 5`.
    pub fn yes_coefficient(&self) -> BigInt {
        let f = gen_f(2 * self.r + 1).expect("2r+1 >= 3");
        f[2 * self.r].clone() + BigInt::from(3u8) * &self.lambda + 5u8
    }

    pub fn no_coefficient(&self) -> BigInt {
        self.yes_coefficient() - 1u8
    }
}

/// Builds the reduction: `r = m + 6`, `n = 2r + 4 + k`, weights
/// `lambda f_i` on the family block, two bracketing items around
/// `lambda (lambda + 3)`, the element values scaled by `lambda + 1`, and
/// one final item whose down-lifted coefficient encodes the answer.
pub fn build_hard_instance(inst: &RppInstance) -> Result<HardInstance, RppError> {
    validate_rpp(inst)?;
    if inst.m < 1 {
        return Err(RppError::MTooSmall);
    }
    let lambda = inst.lambda();
    for (i, w) in inst.omega.iter().enumerate() {
        if w >= &lambda {
            return Err(RppError::NotReduced { index: i + 1 });
        }
    }

    let r = inst.m as usize + 6;
    let k = inst.k();
    let n = 2 * r + 4 + k;
    let f = gen_f(2 * r + 1).expect("2r+1 >= 3");

    let mut weights: Vec<BigInt> = Vec::with_capacity(n);
    for f_i in &f {
        weights.push(&lambda * f_i);
    }
    let bracket = &lambda * (&lambda + 3u8);
    weights.push(&bracket + 1u8);
    weights.push(&bracket - 1u8);
    for w in &inst.omega {
        weights.push(w * (&lambda + 1u8));
    }
    let f_sum: BigInt = f.iter().sum();
    weights.push(&lambda * (BigInt::from(3u8) * &lambda + 6u8 + &f[2 * r]));
    let b = &lambda * &f_sum + &lambda * (BigInt::from(3u8) * &lambda + 6u8);

    let set = KnapsackSet::new(weights, b).expect("weights positive, capacity nonnegative");
    let cover: IndexSet = [1, 2].into_iter().collect();
    let mut fixed_zero: IndexSet = (4..=2 * r).step_by(2).collect();
    fixed_zero.extend(2 * r + 2..=n - 1);
    let mut fixed_one: IndexSet = (3..=2 * r + 1).step_by(2).collect();
    fixed_one.insert(n);
    let task = LiftingTask::new(
        set,
        Partition::new(cover, fixed_zero, fixed_one),
        (3..=n).collect(),
    );

    debug_assert_eq!(task.validate().unwrap().restricted_capacity(), &lambda);
    debug_assert!(f[2 * r] > BigInt::from(2u8) * &lambda + 6u8);

    Ok(HardInstance { task, r, n, lambda, provenance: inst.clone() })
}

/// The full coefficient ledger the lifting run is expected to reproduce:
/// `f_i` on the family block, `lambda + 4` and `lambda + 2` on the
/// bracketing pair, the element values themselves, and the answer-encoding
/// coefficient on `x_n`.
pub fn predicted_hard_coefficients(
    hi: &HardInstance,
    rpp_answer: bool,
) -> std::collections::BTreeMap<usize, BigInt> {
    let f = gen_f(2 * hi.r + 1).expect("2r+1 >= 3");
    let mut coeffs = std::collections::BTreeMap::new();
    coeffs.insert(1, BigInt::one());
    coeffs.insert(2, BigInt::one());
    for i in 3..=2 * hi.r + 1 {
        coeffs.insert(i, f[i - 1].clone());
    }
    coeffs.insert(2 * hi.r + 2, &hi.lambda + 4u8);
    coeffs.insert(2 * hi.r + 3, &hi.lambda + 2u8);
    for (pos, i) in hi.element_indices().enumerate() {
        coeffs.insert(i, hi.provenance.omega[pos].clone());
    }
    coeffs.insert(
        hi.n,
        if rpp_answer { hi.yes_coefficient() } else { hi.no_coefficient() },
    );
    coeffs
}

/// Decides the RPP instance through the reduction: preprocess, build the
/// hard instance, lift, and read the answer off the final coefficient.
pub fn decide_rpp_via_lifting(inst: &RppInstance) -> Result<bool, RppError> {
    match preprocess_rpp(inst)? {
        Preprocessed::Decided(answer) => Ok(answer),
        Preprocessed::Reduced(reduced) => {
            let hi = build_hard_instance(&reduced)?;
            let lci = sequential_lift(&hi.task)?;
            let beta_n = &lci.coeffs[&hi.n];
            let yes = hi.yes_coefficient();
            let no = hi.no_coefficient();
            if beta_n == &yes {
                Ok(true)
            } else if beta_n == &no {
                Ok(false)
            } else {
                Err(RppError::UnexpectedCoefficient {
                    got: beta_n.clone(),
                    no_value: no,
                    yes_value: yes,
                })
            }
        }
    }
}
