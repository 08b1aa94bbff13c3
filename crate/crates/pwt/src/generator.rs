//! Deterministic instance generators.
//!
//! Three benchmark-style item classes plus the subset-sum reduction family.
//! Everything is a pure function of the parameters, backed by SplitMix64 so
//! the exact same instances can be rebuilt from any language.

use crate::problem::Instance;
use crate::Error;

/// SplitMix64: `state += 0x9E3779B97F4A7C15`, then two xor-shift-multiply
/// rounds with the constants 0xBF58476D1CE4E5B9 and 0x94D049BB133111EB.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform integer in `lo..=hi` via modulo reduction. The tiny modulo
    /// bias is acceptable for test-instance generation and keeps the mapping
    /// trivially portable.
    pub fn int_in(&mut self, lo: u64, hi: u64) -> u64 {
        debug_assert!(lo <= hi);
        lo + self.next_u64() % (hi - lo + 1)
    }
}

/// Benchmark item classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ItemClass {
    /// Profit and weight drawn independently from 1..=1000.
    Uncorrelated,
    /// Weights packed into 1000..=1010, profits from 1..=1000.
    SimilarWeights,
    /// Weight from 1..=1000, profit = weight + 100.
    BoundedStrongCorr,
}

impl ItemClass {
    pub fn name(self) -> &'static str {
        match self {
            ItemClass::Uncorrelated => "uncorr",
            ItemClass::SimilarWeights => "uncorr-s-w",
            ItemClass::BoundedStrongCorr => "b-s-corr",
        }
    }
}

/// Generates an instance with `cities` item-holding cities, `items_per_city`
/// items each, distances in 1..=1000 and velocities 0.1 / 1.
///
/// The capacity is `(capacity_class / 11) * total_weight`, rounded. The rent
/// rate is scaled to the instance so that transport costs matter: tight
/// capacities get a low rate (heavy loads are already expensive through the
/// velocity drop), large capacities a high one (otherwise every item would
/// pay for itself and the selection would be trivial).
pub fn generate(
    seed: u64,
    cities: usize,
    items_per_city: usize,
    class: ItemClass,
    capacity_class: u32,
) -> Result<Instance, Error> {
    if cities == 0 || items_per_city == 0 {
        return Err(Error::invariant("need at least one city and one item per city"));
    }
    if !(1..=10).contains(&capacity_class) {
        return Err(Error::invariant("capacity class must be in 1..=10"));
    }
    let mut rng = SplitMix64::new(seed);
    let distances: Vec<f64> = (0..cities).map(|_| rng.int_in(1, 1000) as f64).collect();
    let mut items = Vec::with_capacity(cities);
    for _ in 0..cities {
        let mut city = Vec::with_capacity(items_per_city);
        for _ in 0..items_per_city {
            let (profit, weight) = match class {
                ItemClass::Uncorrelated => {
                    (rng.int_in(1, 1000) as f64, rng.int_in(1, 1000) as f64)
                }
                ItemClass::SimilarWeights => {
                    (rng.int_in(1, 1000) as f64, rng.int_in(1000, 1010) as f64)
                }
                ItemClass::BoundedStrongCorr => {
                    let w = rng.int_in(1, 1000) as f64;
                    (w + 100.0, w)
                }
            };
            city.push((profit, weight));
        }
        items.push(city);
    }
    let total_weight: f64 = items.iter().flatten().map(|&(_, w)| w).sum();
    let total_profit: f64 = items.iter().flatten().map(|&(p, _)| p).sum();
    let total_distance: f64 = distances.iter().sum();
    let capacity = (capacity_class as f64 / 11.0 * total_weight).round().max(1.0);
    let (v_min, v_max) = (0.1, 1.0);
    let kappa = match capacity_class {
        1..=3 => 0.5,
        4..=7 => 3.0,
        _ => 6.0,
    };
    let rent = kappa * total_profit / (total_distance / v_min);
    Instance::new(distances, items, capacity, v_min, v_max, rent)
}

/// Encodes a subset-sum question as a two-city instance: all elements of
/// `set` become items with profit = weight = element at the first city,
/// `d = 1`, `W = sum(set)`, velocities 2 / 1 and rent `W * (2 - target/W)^2`.
/// The optimum reaches `2 * (target - W)` exactly when a subset sums to
/// `target`.
pub fn generate_ssp(set: &[u64], target: u64) -> Result<Instance, Error> {
    if set.is_empty() {
        return Err(Error::invariant("subset-sum set must be nonempty"));
    }
    let total: u64 = set.iter().sum();
    if target == 0 || target > total {
        return Err(Error::invariant("target must be in 1..=sum(set)"));
    }
    let w = total as f64;
    let rent = w * (2.0 - target as f64 / w).powi(2);
    let items: Vec<(f64, f64)> = set.iter().map(|&s| (s as f64, s as f64)).collect();
    Instance::new(vec![1.0], vec![items], w, 1.0, 2.0, rent)
}

/// Objective value that an exact subset-sum witness attains.
pub fn ssp_target_objective(set: &[u64], target: u64) -> f64 {
    let total: u64 = set.iter().sum();
    2.0 * (target as f64 - total as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle;
    use crate::problem::{evaluate_objective, PackingPlan};

    #[test]
    fn same_seed_is_identical() {
        let a = generate(7, 4, 2, ItemClass::Uncorrelated, 5).unwrap();
        let b = generate(7, 4, 2, ItemClass::Uncorrelated, 5).unwrap();
        assert_eq!(a.distances(), b.distances());
        assert_eq!(a.items().len(), b.items().len());
        for (x, y) in a.items().iter().zip(b.items()) {
            assert_eq!(x, y);
        }
        assert_eq!(a.capacity(), b.capacity());
        assert_eq!(a.rent, b.rent);
    }

    #[test]
    fn strongly_correlated_offset_is_exact() {
        let inst = generate(3, 5, 3, ItemClass::BoundedStrongCorr, 6).unwrap();
        for it in inst.items() {
            assert_eq!(it.profit - it.weight, 100.0);
        }
    }

    #[test]
    fn similar_weights_are_in_band() {
        let inst = generate(11, 3, 4, ItemClass::SimilarWeights, 4).unwrap();
        for it in inst.items() {
            assert!((1000.0..=1010.0).contains(&it.weight));
        }
    }

    #[test]
    fn ssp_witness_value_closed_form() {
        // set {3,5,7}, target 8: selecting {3,5} must give 2*(8-15) = -14.
        let inst = generate_ssp(&[3, 5, 7], 8).unwrap();
        assert!((inst.rent - 484.0 / 15.0).abs() < 1e-12);
        let plan = PackingPlan::from_ids(&inst, &[0, 1]);
        let value = evaluate_objective(&inst, &plan);
        assert!((value - (-14.0)).abs() < 1e-9);
        assert!((ssp_target_objective(&[3, 5, 7], 8) - (-14.0)).abs() < 1e-12);
    }

    #[test]
    fn ssp_single_element_witness() {
        let inst = generate_ssp(&[1], 1).unwrap();
        let (_, opt) = oracle::brute_force(&inst).unwrap();
        assert!((opt - 0.0).abs() < 1e-9);
    }

    #[test]
    fn ssp_without_witness_stays_below_bound() {
        // set {2,4}, target 3: no subset sums to 3.
        let inst = generate_ssp(&[2, 4], 3).unwrap();
        let (_, opt) = oracle::brute_force(&inst).unwrap();
        assert!(opt < ssp_target_objective(&[2, 4], 3) - 1e-9);
    }
}
