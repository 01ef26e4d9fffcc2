//! Property tests: the kernel against subset enumeration, monotonicity,
//! downward closure, and intermediate validity of partial liftings.

mod common;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;

use common::{random_valid_task, seeded};
use liftkit::knapsack::{enumerate_feasible_points, knapsack_max, KnapsackSet};
use liftkit::lifting::{sequential_lift, LiftDirection};

fn subset_max(profits: &[BigInt], weights: &[BigInt], cap: &BigInt) -> BigInt {
    let n = profits.len();
    let mut best = BigInt::zero();
    for mask in 0u32..(1 << n) {
        let mut wsum = BigInt::zero();
        let mut psum = BigInt::zero();
        for i in 0..n {
            if mask >> i & 1 == 1 {
                wsum += &weights[i];
                psum += &profits[i];
            }
        }
        if &wsum <= cap && psum > best {
            best = psum;
        }
    }
    best
}

proptest! {
    #[test]
    fn kernel_matches_subset_enumeration(
        items in prop::collection::vec((0u64..40, 1u64..40), 1..=14),
        cap in 0u64..200,
    ) {
        let profits: Vec<BigInt> = items.iter().map(|&(p, _)| BigInt::from(p)).collect();
        let weights: Vec<BigInt> = items.iter().map(|&(_, w)| BigInt::from(w)).collect();
        let cap = BigInt::from(cap);
        let (value, witness) = knapsack_max(&profits, &weights, &cap).unwrap();
        prop_assert_eq!(&value, &subset_max(&profits, &weights, &cap));
        // The witness realizes the value and respects the capacity.
        let wsum: BigInt = witness.iter().zip(&weights).filter(|(x, _)| **x == 1).map(|(_, w)| w).sum();
        let psum: BigInt = witness.iter().zip(&profits).filter(|(x, _)| **x == 1).map(|(_, p)| p).sum();
        prop_assert!(wsum <= cap);
        prop_assert_eq!(psum, value);
    }

    #[test]
    fn kernel_monotone_in_capacity_and_profit(
        items in prop::collection::vec((0u64..40, 1u64..40), 1..=10),
        cap in 0u64..150,
        bump_index in 0usize..10,
        bump in 1u64..20,
    ) {
        let profits: Vec<BigInt> = items.iter().map(|&(p, _)| BigInt::from(p)).collect();
        let weights: Vec<BigInt> = items.iter().map(|&(_, w)| BigInt::from(w)).collect();
        let cap = BigInt::from(cap);
        let (value, _) = knapsack_max(&profits, &weights, &cap).unwrap();

        let (larger_cap, _) = knapsack_max(&profits, &weights, &(&cap + 5u8)).unwrap();
        prop_assert!(larger_cap >= value);

        let mut bumped = profits.clone();
        let i = bump_index % bumped.len();
        bumped[i] += bump;
        let (larger_profit, _) = knapsack_max(&bumped, &weights, &cap).unwrap();
        prop_assert!(larger_profit >= value);
    }

    #[test]
    fn feasible_points_closed_downward(
        weights in prop::collection::vec(1u64..20, 1..=10),
        cap in 0u64..80,
    ) {
        let ks = KnapsackSet::new(
            weights.iter().map(|&w| BigInt::from(w)).collect(),
            BigInt::from(cap),
        ).unwrap();
        let pts: Vec<Vec<u8>> = enumerate_feasible_points(&ks, 26).unwrap().collect();
        for p in &pts {
            for i in 0..p.len() {
                if p[i] == 1 {
                    let mut q = p.clone();
                    q[i] = 0;
                    prop_assert!(pts.contains(&q));
                }
            }
        }
    }
}

/// After each lifting step the partial inequality must hold on every
/// point of the knapsack set whose still-unlifted variables sit at their
/// fixed values.
#[test]
fn intermediate_inequalities_valid() {
    let mut rng = seeded(90210);
    let mut checked = 0;
    while checked < 60 {
        let task = random_valid_task(&mut rng, 10, 30);
        let Ok(lci) = sequential_lift(&task) else {
            continue; // infeasible up-lift; covered elsewhere
        };
        checked += 1;

        let cover_size = task.partition.cover.len() as u64;
        for step in 0..=lci.trace.len() {
            let mut coeffs: BTreeMap<usize, BigInt> = task
                .partition
                .cover
                .iter()
                .map(|&i| (i, BigInt::from(1u8)))
                .collect();
            let mut rhs = BigInt::from(cover_size) - 1u8;
            for record in &lci.trace[..step] {
                coeffs.insert(record.index, record.coefficient.clone());
                if record.direction == LiftDirection::Down {
                    rhs += &record.coefficient;
                }
            }
            let unlifted: Vec<usize> =
                lci.trace[step..].iter().map(|r| r.index).collect();

            // Enumerate the full set and filter to the restriction.
            for point in enumerate_feasible_points(&task.set, 26).unwrap() {
                let respects_fixing = unlifted.iter().all(|&i| {
                    if task.partition.fixed_zero.contains(&i) {
                        point[i - 1] == 0
                    } else {
                        point[i - 1] == 1
                    }
                });
                if !respects_fixing {
                    continue;
                }
                let activation: BigInt = coeffs
                    .iter()
                    .map(|(&i, c)| c * BigInt::from(point[i - 1]))
                    .sum();
                assert!(
                    activation <= rhs,
                    "step {step} of {task:?}: point {point:?} violates partial inequality"
                );
            }
        }
    }
}
