//! 0-1 knapsack sets, covers, partitions, restrictions, and the exact
//! maximization kernel used by every lifting subproblem.
//!
//! Indices are 1-based everywhere in the public API, matching the file
//! formats.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Default cap on the number of variables for the enumeration-based
/// operations (2^n growth).
pub const DEFAULT_ENUMERATION_LIMIT: usize = 26;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum KnapsackError {
    #[error("knapsack set must have at least one item")]
    NoItems,
    #[error("weight of item {index} must be >= 1")]
    NonPositiveWeight { index: usize },
    #[error("capacity must be >= 0")]
    NegativeCapacity,
    #[error("index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("(C, N0, N1) is not a partition of 1..={n}: {detail}")]
    NotAPartition { n: usize, detail: String },
    #[error("restricted capacity is negative: {b_bar}")]
    NegativeRestrictedCapacity { b_bar: BigInt },
    #[error("C is not a cover: its weight does not exceed the restricted capacity")]
    NotACover,
    #[error("C is not a minimal cover: item {index} can be dropped")]
    NotMinimal { index: usize },
    #[error("subproblem is infeasible (negative capacity)")]
    Infeasible,
    #[error("profit and weight lists have different lengths ({profits} vs {weights})")]
    LengthMismatch { profits: usize, weights: usize },
    #[error("negative profit at position {index}")]
    NegativeProfit { index: usize },
    #[error("negative weight at position {index}")]
    NegativeWeight { index: usize },
    #[error("instance has {n} variables, above the enumeration limit {limit}")]
    TooLarge { n: usize, limit: usize },
}

/// The set `{ x in {0,1}^n : a^T x <= b }` with positive integer weights
/// and nonnegative integer capacity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KnapsackSet {
    weights: Vec<BigInt>,
    capacity: BigInt,
}

impl KnapsackSet {
    pub fn new(weights: Vec<BigInt>, capacity: BigInt) -> Result<Self, KnapsackError> {
        if weights.is_empty() {
            return Err(KnapsackError::NoItems);
        }
        for (i, w) in weights.iter().enumerate() {
            if w < &BigInt::one() {
                return Err(KnapsackError::NonPositiveWeight { index: i + 1 });
            }
        }
        if capacity.is_negative() {
            return Err(KnapsackError::NegativeCapacity);
        }
        Ok(KnapsackSet { weights, capacity })
    }

    pub fn n(&self) -> usize {
        self.weights.len()
    }

    /// Weight of item `i` (1-based).
    pub fn weight(&self, i: usize) -> &BigInt {
        &self.weights[i - 1]
    }

    pub fn weights(&self) -> &[BigInt] {
        &self.weights
    }

    pub fn capacity(&self) -> &BigInt {
        &self.capacity
    }

    pub fn weight_sum<'a, I: IntoIterator<Item = &'a usize>>(&self, indices: I) -> BigInt {
        indices.into_iter().map(|&i| self.weight(i)).sum()
    }
}

pub type IndexSet = BTreeSet<usize>;

/// A partition `(C, N0, N1)` of the index set `{1, ..., n}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    pub cover: IndexSet,
    pub fixed_zero: IndexSet,
    pub fixed_one: IndexSet,
}

impl Partition {
    pub fn new(cover: IndexSet, fixed_zero: IndexSet, fixed_one: IndexSet) -> Self {
        Partition { cover, fixed_zero, fixed_one }
    }

    /// Checks disjointness and coverage of `{1, ..., n}`, and |C| >= 1.
    pub fn validate(&self, n: usize) -> Result<(), KnapsackError> {
        if self.cover.is_empty() {
            return Err(KnapsackError::NotAPartition {
                n,
                detail: "C is empty".into(),
            });
        }
        let mut seen = vec![false; n + 1];
        for (&i, name) in self
            .cover
            .iter()
            .map(|i| (i, "C"))
            .chain(self.fixed_zero.iter().map(|i| (i, "N0")))
            .chain(self.fixed_one.iter().map(|i| (i, "N1")))
        {
            if i == 0 || i > n {
                return Err(KnapsackError::IndexOutOfRange { index: i, n });
            }
            if seen[i] {
                return Err(KnapsackError::NotAPartition {
                    n,
                    detail: format!("index {i} appears twice (last in {name})"),
                });
            }
            seen[i] = true;
        }
        if let Some(missing) = (1..=n).find(|&i| !seen[i]) {
            return Err(KnapsackError::NotAPartition {
                n,
                detail: format!("index {missing} is not assigned"),
            });
        }
        Ok(())
    }
}

/// A knapsack set together with a partition under which the variables of
/// `N0` are fixed to 0 and those of `N1` to 1, with the restricted
/// capacity `b_bar = b - sum_{i in N1} a_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Restriction {
    set: KnapsackSet,
    partition: Partition,
    restricted_capacity: BigInt,
}

impl Restriction {
    pub fn set(&self) -> &KnapsackSet {
        &self.set
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn restricted_capacity(&self) -> &BigInt {
        &self.restricted_capacity
    }

    pub fn cover_size(&self) -> usize {
        self.partition.cover.len()
    }
}

/// Is `C` a cover with respect to the effective capacity `b_eff`?
pub fn is_cover(ks: &KnapsackSet, cover: &IndexSet, b_eff: &BigInt) -> Result<bool, KnapsackError> {
    check_indices(ks, cover)?;
    Ok(&ks.weight_sum(cover) > b_eff)
}

/// Is the cover `C` minimal, i.e. does dropping any single element bring
/// its weight within `b_eff`?
pub fn is_minimal_cover(
    ks: &KnapsackSet,
    cover: &IndexSet,
    b_eff: &BigInt,
) -> Result<bool, KnapsackError> {
    if !is_cover(ks, cover, b_eff)? {
        return Err(KnapsackError::NotACover);
    }
    let total = ks.weight_sum(cover);
    Ok(cover.iter().all(|&j| &(&total - ks.weight(j)) <= b_eff))
}

fn check_indices(ks: &KnapsackSet, indices: &IndexSet) -> Result<(), KnapsackError> {
    for &i in indices {
        if i == 0 || i > ks.n() {
            return Err(KnapsackError::IndexOutOfRange { index: i, n: ks.n() });
        }
    }
    Ok(())
}

/// Checks that `(C, N0, N1)` is a partition, that `b_bar >= 0`, and that
/// `C` is a minimal cover of the restriction, returning the
/// [`Restriction`] ready for lifting.
pub fn validate_lifting_task(
    ks: &KnapsackSet,
    partition: &Partition,
) -> Result<Restriction, KnapsackError> {
    partition.validate(ks.n())?;
    let b_bar = ks.capacity() - ks.weight_sum(&partition.fixed_one);
    if b_bar.is_negative() {
        return Err(KnapsackError::NegativeRestrictedCapacity { b_bar });
    }
    let cover_weight = ks.weight_sum(&partition.cover);
    if cover_weight <= b_bar {
        return Err(KnapsackError::NotACover);
    }
    for &j in &partition.cover {
        if &cover_weight - ks.weight(j) > b_bar {
            return Err(KnapsackError::NotMinimal { index: j });
        }
    }
    Ok(Restriction {
        set: ks.clone(),
        partition: partition.clone(),
        restricted_capacity: b_bar,
    })
}

/// Exact maximum of `sum p_i x_i` over binary `x` with `sum w_i x_i <= cap`,
/// together with one optimal witness.
///
/// Strategy is selected per call: a dynamic program over the capacity when
/// the capacity is small enough for a table, full enumeration when the
/// number of items is small, and otherwise depth-first branch-and-bound
/// with the exact fractional-relaxation upper bound. The reduction
/// instances have capacities far beyond any table, so a capacity DP alone
/// cannot serve.
pub fn knapsack_max(
    profits: &[BigInt],
    weights: &[BigInt],
    capacity: &BigInt,
) -> Result<(BigInt, Vec<u8>), KnapsackError> {
    if profits.len() != weights.len() {
        return Err(KnapsackError::LengthMismatch {
            profits: profits.len(),
            weights: weights.len(),
        });
    }
    if let Some(i) = profits.iter().position(|p| p.is_negative()) {
        return Err(KnapsackError::NegativeProfit { index: i + 1 });
    }
    if let Some(i) = weights.iter().position(|w| w.is_negative()) {
        return Err(KnapsackError::NegativeWeight { index: i + 1 });
    }
    if capacity.is_negative() {
        return Err(KnapsackError::Infeasible);
    }

    let n = profits.len();
    let mut witness = vec![0u8; n];

    // Items heavier than the capacity are forced to 0; zero-weight items
    // are always taken (profits are nonnegative).
    let mut free: Vec<usize> = Vec::new();
    let mut base_value = BigInt::zero();
    for i in 0..n {
        if weights[i].is_zero() {
            witness[i] = 1;
            base_value += &profits[i];
        } else if &weights[i] <= capacity {
            free.push(i);
        }
    }

    if free.is_empty() {
        return Ok((base_value, witness));
    }

    const DP_CAPACITY_LIMIT: u64 = 1_000_000;
    const ENUM_ITEM_LIMIT: usize = 24;

    let (value, chosen) = match capacity.to_u64() {
        Some(cap) if cap <= DP_CAPACITY_LIMIT => dp_by_capacity(profits, weights, &free, cap),
        _ if free.len() <= ENUM_ITEM_LIMIT => {
            enumerate_max(profits, weights, &free, capacity)
        }
        _ => branch_and_bound(profits, weights, &free, capacity),
    };

    for i in chosen {
        witness[i] = 1;
    }
    Ok((base_value + value, witness))
}

/// Bottom-up DP over capacities `0..=cap`; weights of `free` items fit in
/// `u64` since each is at most `cap`.
fn dp_by_capacity(
    profits: &[BigInt],
    weights: &[BigInt],
    free: &[usize],
    cap: u64,
) -> (BigInt, Vec<usize>) {
    let cap = cap as usize;
    let words = cap / 64 + 1;
    let mut best: Vec<BigInt> = vec![BigInt::zero(); cap + 1];
    // One bit row per item: whether the item is taken in the optimum for
    // each capacity.
    let mut taken: Vec<Vec<u64>> = Vec::with_capacity(free.len());
    for &i in free {
        let w = weights[i].to_u64().expect("free item weight fits u64") as usize;
        let mut row = vec![0u64; words];
        for c in (w..=cap).rev() {
            let candidate = &best[c - w] + &profits[i];
            if candidate > best[c] {
                best[c] = candidate;
                row[c / 64] |= 1 << (c % 64);
            }
        }
        taken.push(row);
    }
    // The table is monotone in c, so the optimum sits at full capacity.
    let mut c = cap;
    let mut chosen = Vec::new();
    for (k, &i) in free.iter().enumerate().rev() {
        if taken[k][c / 64] >> (c % 64) & 1 == 1 {
            chosen.push(i);
            c -= weights[i].to_u64().unwrap() as usize;
        }
    }
    chosen.reverse();
    (std::mem::take(&mut best[cap]), chosen)
}

/// Depth-first enumeration of all feasible subsets of the free items,
/// pruned by capacity and by the remaining-profit optimistic bound.
fn enumerate_max(
    profits: &[BigInt],
    weights: &[BigInt],
    free: &[usize],
    capacity: &BigInt,
) -> (BigInt, Vec<usize>) {
    // suffix_profit[k] = total profit of free[k..]
    let mut suffix_profit = vec![BigInt::zero(); free.len() + 1];
    for k in (0..free.len()).rev() {
        suffix_profit[k] = &suffix_profit[k + 1] + &profits[free[k]];
    }

    struct Dfs<'a> {
        profits: &'a [BigInt],
        weights: &'a [BigInt],
        free: &'a [usize],
        suffix_profit: &'a [BigInt],
        best: BigInt,
        best_set: Vec<usize>,
        current: Vec<usize>,
    }

    impl Dfs<'_> {
        fn go(&mut self, k: usize, remaining: &BigInt, value: &BigInt) {
            if value + &self.suffix_profit[k] <= self.best {
                return;
            }
            if k == self.free.len() {
                if *value > self.best {
                    self.best = value.clone();
                    self.best_set = self.current.clone();
                }
                return;
            }
            let i = self.free[k];
            if &self.weights[i] <= remaining {
                self.current.push(i);
                self.go(k + 1, &(remaining - &self.weights[i]), &(value + &self.profits[i]));
                self.current.pop();
            }
            self.go(k + 1, remaining, value);
        }
    }

    let mut dfs = Dfs {
        profits,
        weights,
        free,
        suffix_profit: &suffix_profit,
        best: BigInt::from(-1),
        best_set: Vec::new(),
        current: Vec::new(),
    };
    dfs.go(0, capacity, &BigInt::zero());
    (dfs.best, dfs.best_set)
}

/// Branch-and-bound ordered by profit/weight ratio with the exact
/// fractional-relaxation upper bound (compared by cross multiplication,
/// no rationals materialized).
fn branch_and_bound(
    profits: &[BigInt],
    weights: &[BigInt],
    free: &[usize],
    capacity: &BigInt,
) -> (BigInt, Vec<usize>) {
    let mut order: Vec<usize> = free.to_vec();
    order.sort_by(|&i, &j| (&profits[j] * &weights[i]).cmp(&(&profits[i] * &weights[j])));

    struct Bb<'a> {
        profits: &'a [BigInt],
        weights: &'a [BigInt],
        order: &'a [usize],
        best: BigInt,
        best_set: Vec<usize>,
        current: Vec<usize>,
    }

    impl Bb<'_> {
        /// Floor of the fractional-relaxation optimum for items `order[k..]`
        /// within `remaining`, added to `value`.
        fn bound(&self, k: usize, remaining: &BigInt, value: &BigInt) -> BigInt {
            let mut bound = value.clone();
            let mut room = remaining.clone();
            for &i in &self.order[k..] {
                if &self.weights[i] <= &room {
                    room -= &self.weights[i];
                    bound += &self.profits[i];
                } else {
                    bound += num_integer::Integer::div_floor(
                        &(&room * &self.profits[i]),
                        &self.weights[i],
                    );
                    break;
                }
            }
            bound
        }

        fn go(&mut self, k: usize, remaining: &BigInt, value: &BigInt) {
            if *value > self.best {
                self.best = value.clone();
                self.best_set = self.current.clone();
            }
            if k == self.order.len() {
                return;
            }
            if self.bound(k, remaining, value) <= self.best {
                return;
            }
            let i = self.order[k];
            if &self.weights[i] <= remaining {
                self.current.push(i);
                self.go(k + 1, &(remaining - &self.weights[i]), &(value + &self.profits[i]));
                self.current.pop();
            }
            self.go(k + 1, remaining, value);
        }
    }

    let mut bb = Bb {
        profits,
        weights,
        order: &order,
        best: BigInt::from(-1),
        best_set: Vec::new(),
        current: Vec::new(),
    };
    bb.go(0, capacity, &BigInt::zero());
    (bb.best, bb.best_set)
}

/// Streams every feasible point of `ks` exactly once, in lexicographic
/// order with `x_1` varying slowest and 0 before 1.
pub fn enumerate_feasible_points(
    ks: &KnapsackSet,
    limit: usize,
) -> Result<FeasiblePoints<'_>, KnapsackError> {
    if ks.n() > limit {
        return Err(KnapsackError::TooLarge { n: ks.n(), limit });
    }
    Ok(FeasiblePoints {
        ks,
        // Remaining capacity after the committed prefix, per depth.
        stack: vec![Frame { depth: 0, remaining: ks.capacity().clone(), point: vec![0; ks.n()] }],
    })
}

struct Frame {
    depth: usize,
    remaining: BigInt,
    point: Vec<u8>,
}

/// Iterator over feasible points; prunes any branch whose committed prefix
/// already exceeds the capacity.
pub struct FeasiblePoints<'a> {
    ks: &'a KnapsackSet,
    stack: Vec<Frame>,
}

impl Iterator for FeasiblePoints<'_> {
    type Item = Vec<u8>;

    fn next(&mut self) -> Option<Self::Item> {
        while let Some(frame) = self.stack.pop() {
            if frame.depth == self.ks.n() {
                return Some(frame.point);
            }
            let i = frame.depth + 1;
            // Push x_i = 1 first so that x_i = 0 is explored first (LIFO).
            if self.ks.weight(i) <= &frame.remaining {
                let mut point = frame.point.clone();
                point[frame.depth] = 1;
                self.stack.push(Frame {
                    depth: frame.depth + 1,
                    remaining: &frame.remaining - self.ks.weight(i),
                    point,
                });
            }
            self.stack.push(Frame {
                depth: frame.depth + 1,
                remaining: frame.remaining,
                point: frame.point,
            });
        }
        None
    }
}
