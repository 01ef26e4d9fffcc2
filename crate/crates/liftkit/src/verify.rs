//! Brute-force verification: validity of inequalities over the knapsack
//! set, exact polytope dimension and facet checks, and an
//! enumeration-based lifting oracle that shares no code with the
//! production kernel.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::knapsack::{KnapsackError, KnapsackSet};
use crate::lifting::{
    LiftDirection, LiftError, LiftStep, LiftedCoverInequality, LiftingTask,
};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum VerifyError {
    #[error(transparent)]
    Knapsack(#[from] KnapsackError),
    #[error(transparent)]
    Lift(#[from] LiftError),
    #[error("inequality has {coeffs} coefficients but the set has {n} variables")]
    CoefficientMismatch { coeffs: usize, n: usize },
}

/// Outcome of a validity check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Validity {
    Valid,
    /// A feasible point violating the inequality.
    Violated(Vec<u8>),
}

fn check_limit(ks: &KnapsackSet, limit: usize) -> Result<(), VerifyError> {
    if ks.n() > limit {
        return Err(KnapsackError::TooLarge { n: ks.n(), limit }.into());
    }
    Ok(())
}

fn check_coeffs(ks: &KnapsackSet, coeffs: &[BigInt]) -> Result<(), VerifyError> {
    if coeffs.len() != ks.n() {
        return Err(VerifyError::CoefficientMismatch { coeffs: coeffs.len(), n: ks.n() });
    }
    Ok(())
}

/// Walks every feasible point, carrying the running weight and activation
/// so each tree edge costs O(1) big-integer work. Points are visited in
/// the same lexicographic order as `enumerate_feasible_points`.
fn walk_feasible<F: FnMut(&[u8], &BigInt)>(
    ks: &KnapsackSet,
    coeffs: &[BigInt],
    mut visit: F,
) {
    fn go<F: FnMut(&[u8], &BigInt)>(
        ks: &KnapsackSet,
        coeffs: &[BigInt],
        point: &mut Vec<u8>,
        depth: usize,
        remaining: &BigInt,
        activation: &BigInt,
        visit: &mut F,
    ) {
        if depth == ks.n() {
            visit(point, activation);
            return;
        }
        point.push(0);
        go(ks, coeffs, point, depth + 1, remaining, activation, visit);
        point.pop();
        let w = ks.weight(depth + 1);
        if w <= remaining {
            point.push(1);
            go(
                ks,
                coeffs,
                point,
                depth + 1,
                &(remaining - w),
                &(activation + &coeffs[depth]),
                visit,
            );
            point.pop();
        }
    }
    let mut point = Vec::with_capacity(ks.n());
    go(ks, coeffs, &mut point, 0, ks.capacity(), &BigInt::zero(), &mut visit);
}

/// Does every feasible point of `ks` satisfy `coeffs · x <= rhs`?
pub fn check_validity(
    ks: &KnapsackSet,
    coeffs: &[BigInt],
    rhs: &BigInt,
    limit: usize,
) -> Result<Validity, VerifyError> {
    check_limit(ks, limit)?;
    check_coeffs(ks, coeffs)?;
    let mut witness: Option<Vec<u8>> = None;
    walk_feasible(ks, coeffs, |point, activation| {
        if witness.is_none() && activation > rhs {
            witness = Some(point.to_vec());
        }
    });
    Ok(match witness {
        Some(p) => Validity::Violated(p),
        None => Validity::Valid,
    })
}

/// Incremental row basis over the integers, kept in echelon form by
/// fraction-free (Bareiss-style) elimination. Only the rank is queried,
/// so rows are never normalized.
struct IntRowBasis {
    /// Rows sorted by pivot column; `pivots[k]` is the pivot column of
    /// `rows[k]`.
    rows: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
}

impl IntRowBasis {
    fn new() -> Self {
        IntRowBasis { rows: Vec::new(), pivots: Vec::new() }
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `row` against the basis; inserts the remainder if nonzero.
    fn insert(&mut self, mut row: Vec<BigInt>) {
        for (k, pivot_col) in self.pivots.iter().copied().enumerate() {
            if row[pivot_col].is_zero() {
                continue;
            }
            let pivot = self.rows[k][pivot_col].clone();
            let factor = std::mem::replace(&mut row[pivot_col], BigInt::zero());
            for j in 0..row.len() {
                if j == pivot_col {
                    continue;
                }
                row[j] = &row[j] * &pivot - &self.rows[k][j] * &factor;
            }
            // Keep entries small; a common divisor never changes the rank.
            let g = row.iter().fold(BigInt::zero(), |g, v| num_integer::Integer::gcd(&g, v));
            if g > BigInt::one() {
                for v in row.iter_mut() {
                    *v /= &g;
                }
            }
        }
        if let Some(pivot_col) = row.iter().position(|v| !v.is_zero()) {
            let at = self.pivots.partition_point(|&p| p < pivot_col);
            self.pivots.insert(at, pivot_col);
            self.rows.insert(at, row);
        }
    }
}

/// Streaming affine-dimension tracker: the rank of point differences
/// against the first point seen. Dimension of the empty set is -1.
struct AffineSpan {
    anchor: Option<Vec<u8>>,
    basis: IntRowBasis,
    ambient: usize,
}

impl AffineSpan {
    fn new(ambient: usize) -> Self {
        AffineSpan { anchor: None, basis: IntRowBasis::new(), ambient }
    }

    fn add(&mut self, point: &[u8]) {
        match &self.anchor {
            None => self.anchor = Some(point.to_vec()),
            Some(anchor) => {
                // Once the span is full-dimensional it cannot grow.
                if self.basis.rank() == self.ambient {
                    return;
                }
                let diff: Vec<BigInt> = point
                    .iter()
                    .zip(anchor)
                    .map(|(&a, &b)| BigInt::from(a as i64 - b as i64))
                    .collect();
                self.basis.insert(diff);
            }
        }
    }

    fn dimension(&self) -> i64 {
        match self.anchor {
            None => -1,
            Some(_) => self.basis.rank() as i64,
        }
    }
}

/// Affine dimension of the feasible set of `ks`. Never empty: the origin
/// is always feasible.
pub fn polytope_dimension(ks: &KnapsackSet, limit: usize) -> Result<usize, VerifyError> {
    check_limit(ks, limit)?;
    let zeros = vec![BigInt::zero(); ks.n()];
    let mut span = AffineSpan::new(ks.n());
    walk_feasible(ks, &zeros, |point, _| span.add(point));
    Ok(span.dimension() as usize)
}

/// Result of a facet check for an inequality over `conv(X)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FacetReport {
    pub valid: bool,
    pub tight_count: usize,
    /// Affine dimension of the tight feasible points (-1 when none).
    pub tight_affine_dim: i64,
    pub polytope_dim: usize,
    pub is_facet: bool,
}

/// Checks validity and whether the tight feasible points span an affine
/// subspace of dimension one below the polytope's.
pub fn check_facet(
    ks: &KnapsackSet,
    coeffs: &[BigInt],
    rhs: &BigInt,
    limit: usize,
) -> Result<FacetReport, VerifyError> {
    check_limit(ks, limit)?;
    check_coeffs(ks, coeffs)?;
    let mut valid = true;
    let mut tight_count = 0usize;
    let mut tight_span = AffineSpan::new(ks.n());
    let mut full_span = AffineSpan::new(ks.n());
    walk_feasible(ks, coeffs, |point, activation| {
        if activation > rhs {
            valid = false;
        } else if activation == rhs {
            // Tight points are met in the deterministic enumeration
            // order, so the anchor (and the report) is reproducible.
            tight_count += 1;
            tight_span.add(point);
        }
        full_span.add(point);
    });
    let polytope_dim = full_span.dimension() as usize;
    let tight_affine_dim = tight_span.dimension();
    Ok(FacetReport {
        valid,
        tight_count,
        tight_affine_dim,
        polytope_dim,
        is_facet: valid && tight_affine_dim >= 0 && tight_affine_dim as usize + 1 == polytope_dim,
    })
}

/// Maximum of `profits · x` subject to `weights · x <= capacity` by
/// exhaustive depth-first subset enumeration. Deliberately independent of
/// the production kernel; infeasible-weight subtrees are skipped, which
/// discards no feasible subset.
fn oracle_subset_max(
    profits: &[BigInt],
    weights: &[BigInt],
    capacity: &BigInt,
) -> Option<BigInt> {
    if capacity.is_negative() {
        return None;
    }
    fn go(
        profits: &[BigInt],
        weights: &[BigInt],
        k: usize,
        remaining: &BigInt,
        value: &BigInt,
        best: &mut BigInt,
    ) {
        if k == profits.len() {
            if &*value > best {
                *best = value.clone();
            }
            return;
        }
        go(profits, weights, k + 1, remaining, value, best);
        if &weights[k] <= remaining {
            go(
                profits,
                weights,
                k + 1,
                &(remaining - &weights[k]),
                &(value + &profits[k]),
                best,
            );
        }
    }
    let mut best = BigInt::zero();
    go(profits, weights, 0, capacity, &BigInt::zero(), &mut best);
    Some(best)
}

/// Independent re-implementation of the sequential lifting fold with
/// every subproblem solved by exhaustive enumeration. Same contract and
/// error behavior as `sequential_lift`.
pub fn brute_force_lift_oracle(
    task: &LiftingTask,
    limit: usize,
) -> Result<LiftedCoverInequality, VerifyError> {
    check_limit(&task.set, limit)?;
    let restriction = task.validate()?;
    let b_bar = restriction.restricted_capacity().clone();
    let cover = &task.partition.cover;
    let mut coeff: BTreeMap<usize, BigInt> = BTreeMap::new();
    for &i in cover {
        coeff.insert(i, BigInt::one());
    }
    let mut lifted_ones: Vec<usize> = Vec::new();
    let mut rhs = BigInt::from(cover.len() as u64) - 1;
    let mut trace = Vec::new();

    for (step, &l) in task.sequence.iter().enumerate() {
        let mut indices: Vec<usize> = coeff.keys().copied().collect();
        indices.sort_unstable();
        let profits: Vec<BigInt> = indices.iter().map(|i| coeff[i].clone()).collect();
        let weights: Vec<BigInt> =
            indices.iter().map(|&i| task.set.weight(i).clone()).collect();
        let ones_weight: BigInt = lifted_ones.iter().map(|&i| task.set.weight(i)).sum();

        if task.partition.fixed_zero.contains(&l) {
            let capacity = &b_bar + &ones_weight - task.set.weight(l);
            let Some(optimum) = oracle_subset_max(&profits, &weights, &capacity) else {
                return Err(LiftError::InfeasibleLift { index: l, step: step + 1 }.into());
            };
            let c: BigInt = &rhs - &optimum;
            coeff.insert(l, c.clone());
            trace.push(LiftStep {
                index: l,
                direction: LiftDirection::Up,
                coefficient: c,
                optimum,
            });
        } else {
            let capacity = &b_bar + &ones_weight + task.set.weight(l);
            let optimum = oracle_subset_max(&profits, &weights, &capacity)
                .expect("down-lift capacity is nonnegative");
            let c: BigInt = &optimum - &rhs;
            rhs += &c;
            coeff.insert(l, c.clone());
            lifted_ones.push(l);
            trace.push(LiftStep {
                index: l,
                direction: LiftDirection::Down,
                coefficient: c,
                optimum,
            });
        }
    }
    Ok(LiftedCoverInequality { coeffs: coeff, rhs, trace })
}
