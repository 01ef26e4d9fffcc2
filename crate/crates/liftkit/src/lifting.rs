//! Up-lifting, down-lifting, and the sequential driver that turns a
//! minimal-cover inequality into a fully lifted cover inequality.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use thiserror::Error;

use crate::knapsack::{
    validate_lifting_task, IndexSet, KnapsackError, KnapsackSet, Partition, Restriction,
};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LiftError {
    #[error(transparent)]
    Invalid(#[from] KnapsackError),
    #[error("lifting sequence is not a permutation of N0 ∪ N1: {detail}")]
    BadSequence { detail: String },
    #[error("up-lifting x_{index} at step {step} is infeasible: the variable can never be 1 in the current restriction")]
    InfeasibleLift { index: usize, step: usize },
    #[error("index {index} is not an unlifted member of {expected}")]
    NotLiftable { index: usize, expected: &'static str },
    #[error("scale factor must be >= 1")]
    NonPositiveScale,
}

/// A knapsack set, a partition `(C, N0, N1)`, and the order in which the
/// variables of `N0 ∪ N1` are lifted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftingTask {
    pub set: KnapsackSet,
    pub partition: Partition,
    pub sequence: Vec<usize>,
}

impl LiftingTask {
    pub fn new(set: KnapsackSet, partition: Partition, sequence: Vec<usize>) -> Self {
        LiftingTask { set, partition, sequence }
    }

    /// Validates the restriction and checks the sequence is a permutation
    /// of `N0 ∪ N1`.
    pub fn validate(&self) -> Result<Restriction, LiftError> {
        let restriction = validate_lifting_task(&self.set, &self.partition)?;
        let mut pending: IndexSet = self
            .partition
            .fixed_zero
            .union(&self.partition.fixed_one)
            .copied()
            .collect();
        for &l in &self.sequence {
            if !pending.remove(&l) {
                return Err(LiftError::BadSequence {
                    detail: format!("index {l} repeated or not in N0 ∪ N1"),
                });
            }
        }
        if let Some(&l) = pending.iter().next() {
            return Err(LiftError::BadSequence {
                detail: format!("index {l} of N0 ∪ N1 never lifted"),
            });
        }
        Ok(restriction)
    }
}

/// Direction of a single lifting step.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LiftDirection {
    Up,
    Down,
}

/// One completed lifting step, as recorded in the trace.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftStep {
    pub index: usize,
    pub direction: LiftDirection,
    pub coefficient: BigInt,
    /// Optimal value of the knapsack subproblem that produced the
    /// coefficient.
    pub optimum: BigInt,
}

/// Partially lifted inequality over `C ∪ N0' ∪ N1'`.
#[derive(Debug, Clone)]
pub struct LiftState {
    restriction: Restriction,
    alpha: BTreeMap<usize, BigInt>,
    beta: BTreeMap<usize, BigInt>,
}

impl LiftState {
    pub fn new(restriction: Restriction) -> Self {
        LiftState { restriction, alpha: BTreeMap::new(), beta: BTreeMap::new() }
    }

    pub fn alpha(&self) -> &BTreeMap<usize, BigInt> {
        &self.alpha
    }

    pub fn beta(&self) -> &BTreeMap<usize, BigInt> {
        &self.beta
    }

    /// Current right-hand side `c - 1 + sum of lifted betas`.
    pub fn rhs(&self) -> BigInt {
        BigInt::from(self.restriction.cover_size() as u64) - 1
            + self.beta.values().sum::<BigInt>()
    }

    fn lifted_one_weight(&self) -> BigInt {
        self.restriction.set().weight_sum(self.beta.keys())
    }

    /// Profit/weight columns for the variables lifted so far plus the
    /// cover, in ascending index order.
    fn subproblem_columns(&self) -> (Vec<BigInt>, Vec<BigInt>) {
        let ks = self.restriction.set();
        let mut profits = Vec::new();
        let mut weights = Vec::new();
        let mut indices: Vec<usize> = self.restriction.partition().cover.iter().copied().collect();
        indices.extend(self.alpha.keys());
        indices.extend(self.beta.keys());
        indices.sort_unstable();
        for i in indices {
            let p = if let Some(a) = self.alpha.get(&i) {
                a.clone()
            } else if let Some(b) = self.beta.get(&i) {
                b.clone()
            } else {
                BigInt::one()
            };
            profits.push(p);
            weights.push(ks.weight(i).clone());
        }
        (profits, weights)
    }
}

/// Computes the up-lifting coefficient of `x_l` for `l ∈ N0` not yet
/// lifted: the current right-hand side minus the maximum activation of
/// the lifted variables when `x_l = 1`.
pub fn up_lift_coefficient(state: &LiftState, l: usize) -> Result<LiftStep, LiftError> {
    let part = state.restriction.partition();
    if !part.fixed_zero.contains(&l) || state.alpha.contains_key(&l) {
        return Err(LiftError::NotLiftable { index: l, expected: "N0" });
    }
    let capacity = state.restriction.restricted_capacity() + state.lifted_one_weight()
        - state.restriction.set().weight(l);
    if capacity.is_negative() {
        return Err(LiftError::InfeasibleLift { index: l, step: 0 });
    }
    let (profits, weights) = state.subproblem_columns();
    let (optimum, _) = crate::knapsack::knapsack_max(&profits, &weights, &capacity)?;
    let coefficient = state.rhs() - &optimum;
    debug_assert!(!coefficient.is_negative());
    Ok(LiftStep { index: l, direction: LiftDirection::Up, coefficient, optimum })
}

/// Computes the down-lifting coefficient of `x_l` for `l ∈ N1` not yet
/// lifted: the maximum activation with `x_l` freed, minus the current
/// right-hand side. Always nonnegative and always feasible.
pub fn down_lift_coefficient(state: &LiftState, l: usize) -> Result<LiftStep, LiftError> {
    let part = state.restriction.partition();
    if !part.fixed_one.contains(&l) || state.beta.contains_key(&l) {
        return Err(LiftError::NotLiftable { index: l, expected: "N1" });
    }
    let capacity = state.restriction.restricted_capacity() + state.lifted_one_weight()
        + state.restriction.set().weight(l);
    let (profits, weights) = state.subproblem_columns();
    let (optimum, _) = crate::knapsack::knapsack_max(&profits, &weights, &capacity)?;
    let coefficient = &optimum - state.rhs();
    debug_assert!(!coefficient.is_negative());
    Ok(LiftStep { index: l, direction: LiftDirection::Down, coefficient, optimum })
}

/// The final lifted cover inequality `sum coeffs_i x_i <= rhs`, with the
/// per-step trace that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftedCoverInequality {
    /// Coefficient for every index `1..=n` (1 on the cover).
    pub coeffs: BTreeMap<usize, BigInt>,
    pub rhs: BigInt,
    pub trace: Vec<LiftStep>,
}

impl LiftedCoverInequality {
    /// Coefficients as a dense vector in index order.
    pub fn coeff_vec(&self) -> Vec<BigInt> {
        self.coeffs.values().cloned().collect()
    }
}

/// Lifts the variables of `N0 ∪ N1` one at a time in the given sequence,
/// folding up- and down-lifting steps into the final inequality.
/// Deterministic: the same task yields the identical output.
pub fn sequential_lift(task: &LiftingTask) -> Result<LiftedCoverInequality, LiftError> {
    let restriction = task.validate()?;
    let mut state = LiftState::new(restriction);
    let mut trace = Vec::with_capacity(task.sequence.len());
    for (step, &l) in task.sequence.iter().enumerate() {
        let mut record = if task.partition.fixed_zero.contains(&l) {
            up_lift_coefficient(&state, l).map_err(|e| match e {
                LiftError::InfeasibleLift { index, .. } => {
                    LiftError::InfeasibleLift { index, step: step + 1 }
                }
                other => other,
            })?
        } else {
            down_lift_coefficient(&state, l)?
        };
        record.index = l;
        match record.direction {
            LiftDirection::Up => state.alpha.insert(l, record.coefficient.clone()),
            LiftDirection::Down => state.beta.insert(l, record.coefficient.clone()),
        };
        trace.push(record);
    }

    let mut coeffs = BTreeMap::new();
    for &i in &task.partition.cover {
        coeffs.insert(i, BigInt::one());
    }
    for (&i, a) in &state.alpha {
        coeffs.insert(i, a.clone());
    }
    for (&i, b) in &state.beta {
        coeffs.insert(i, b.clone());
    }
    Ok(LiftedCoverInequality { coeffs, rhs: state.rhs(), trace })
}

/// Multiplies weights and capacity by `t`; the same partition and sequence
/// then produce the same lifted inequality.
pub fn scale_task(task: &LiftingTask, t: &BigInt) -> Result<LiftingTask, LiftError> {
    if t < &BigInt::one() {
        return Err(LiftError::NonPositiveScale);
    }
    let weights = task.set.weights().iter().map(|a| a * t).collect();
    let set = KnapsackSet::new(weights, task.set.capacity() * t)?;
    Ok(LiftingTask::new(set, task.partition.clone(), task.sequence.clone()))
}
