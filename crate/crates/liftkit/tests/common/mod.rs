//! Shared helpers for the integration suites: random valid lifting tasks
//! and exhaustive multiset generation.

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use liftkit::knapsack::{IndexSet, KnapsackSet, Partition};
use liftkit::lifting::LiftingTask;

/// A random task that always passes validation: the cover is made
/// minimal by choosing the restricted capacity inside the admissible
/// window.
pub fn random_valid_task(rng: &mut ChaCha8Rng, max_n: usize, max_weight: u64) -> LiftingTask {
    let n = rng.gen_range(3..=max_n);
    let weights: Vec<BigInt> = (0..n)
        .map(|_| BigInt::from(rng.gen_range(1..=max_weight)))
        .collect();

    let mut indices: Vec<usize> = (1..=n).collect();
    indices.shuffle(rng);
    let c = rng.gen_range(1..=n.min(4));
    let cover: IndexSet = indices[..c].iter().copied().collect();
    let rest = &indices[c..];
    let split = rng.gen_range(0..=rest.len());
    let fixed_zero: IndexSet = rest[..split].iter().copied().collect();
    let fixed_one: IndexSet = rest[split..].iter().copied().collect();

    let cover_weight: BigInt = cover.iter().map(|&i| &weights[i - 1]).sum();
    let cover_min: BigInt = cover.iter().map(|&i| weights[i - 1].clone()).min().unwrap();
    // b_bar anywhere in [cover_weight - min, cover_weight - 1] keeps the
    // cover minimal; shift by the N1 weight to get b.
    let lo = &cover_weight - &cover_min;
    let offset = rng.gen_range(0..=u64::try_from(&cover_min - 1u8).unwrap());
    let b_bar = lo + offset;
    let one_weight: BigInt = fixed_one.iter().map(|&i| &weights[i - 1]).sum();
    let b = b_bar + one_weight;

    let mut sequence: Vec<usize> = fixed_zero.union(&fixed_one).copied().collect();
    sequence.shuffle(rng);

    let set = KnapsackSet::new(weights, b).expect("constructed valid");
    let task = LiftingTask::new(set, Partition::new(cover, fixed_zero, fixed_one), sequence);
    debug_assert!(task.validate().is_ok());
    task
}

/// All multisets of positive integers with the given total, at most
/// `max_parts` parts, and each part at most `max_value`, in
/// non-increasing order.
#[allow(dead_code)] // not every suite uses every helper
pub fn bounded_partitions(total: u64, max_parts: usize, max_value: u64) -> Vec<Vec<u64>> {
    fn go(total: u64, parts_left: usize, cap: u64, prefix: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if total == 0 {
            out.push(prefix.clone());
            return;
        }
        if parts_left == 0 {
            return;
        }
        let hi = cap.min(total);
        for v in (1..=hi).rev() {
            // Remaining parts must be able to absorb the rest.
            if total - v <= v * (parts_left as u64 - 1) {
                prefix.push(v);
                go(total - v, parts_left - 1, v, prefix, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(total, max_parts, max_value, &mut Vec::new(), &mut out);
    out
}

#[allow(dead_code)]
pub fn seeded(seed: u64) -> ChaCha8Rng {
    use rand::SeedableRng;
    ChaCha8Rng::seed_from_u64(seed)
}
