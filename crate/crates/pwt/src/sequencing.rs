//! Static precedence constraints between items and the pending pairs the
//! search propagates dynamically.
//!
//! `delta_lower` / `delta_upper` bound the marginal transport cost of hauling
//! one item between two route positions, assuming the vehicle otherwise
//! carries the compulsory load (cheapest case) or as much as possibly fits
//! (priciest case). Comparing profits deflated by these bounds orders items:
//! a clearly dominated item must not be selected ahead of its dominator.

use crate::preprocess::Reduction;
use crate::problem::Instance;

/// Which rule produced a pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PrecedenceKind {
    /// Same-city dominance: lower profit at no lower weight.
    Sc1,
    /// Earlier item dominated even after paying its cheapest haul.
    Sc2,
    /// Earlier item dominates even after paying its priciest haul.
    Sc3,
}

/// A hard implication `x[low] <= x[high]`, i.e. selecting `low` forces
/// `high` in, and rejecting `high` rules `low` out.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrecedencePair {
    pub kind: PrecedenceKind,
    pub low: usize,
    pub high: usize,
}

/// A pair whose ordering is not yet decided: the candidate's profit sits
/// between the watched item's deflated profits. The search re-evaluates the
/// bounds with live weight information.
#[derive(Debug, Clone, Copy)]
pub struct PendingPair {
    /// Earlier item (strictly smaller city).
    pub watched: usize,
    /// Later item.
    pub candidate: usize,
    /// Weight relation allows forcing the candidate in (`w_watched >= w_candidate`).
    pub can_force_in: bool,
    /// Weight relation allows forcing the candidate out (`w_watched <= w_candidate`).
    pub can_force_out: bool,
}

/// All static pairs plus pending pairs of an instance.
#[derive(Debug, Clone, Default)]
pub struct SequencingSet {
    pub pairs: Vec<PrecedencePair>,
    pub pending: Vec<PendingPair>,
}

fn unit_time(inst: &Instance, load: f64) -> f64 {
    1.0 / inst.velocity_at(load)
}

/// Cheapest marginal cost of hauling weight `w` from city `j` to city `i`
/// (exclusive), over the compulsory load. Zero when `i == j`.
pub fn delta_lower(inst: &Instance, red: &Reduction, j: usize, i: usize, w: f64) -> f64 {
    debug_assert!(1 <= j && j <= i && i <= inst.edges() + 1);
    let mut delta = 0.0;
    for a in j..i {
        let base = red.prefix_compulsory[a - 1];
        let loaded = (base + w).min(inst.capacity());
        delta += inst.rent
            * inst.distances()[a - 1]
            * (unit_time(inst, loaded) - unit_time(inst, base.min(inst.capacity())));
    }
    delta
}

/// Priciest marginal cost of hauling weight `w` from city `j` to city `i`
/// (exclusive): the vehicle is otherwise filled as far as the city maxima and
/// the capacity allow.
pub fn delta_upper(inst: &Instance, red: &Reduction, j: usize, i: usize, w: f64) -> f64 {
    debug_assert!(1 <= j && j <= i && i <= inst.edges() + 1);
    let mut delta = 0.0;
    for a in j..i {
        let top = red.prefix_max[a - 1].min(inst.capacity());
        delta += inst.rent
            * inst.distances()[a - 1]
            * (unit_time(inst, top) - unit_time(inst, (top - w).max(0.0)));
    }
    delta
}

/// Builds the full static pair set over the undecided items.
pub fn build_sequencing(inst: &Instance, red: &Reduction) -> SequencingSet {
    let mut set = SequencingSet::default();

    // Same-city pairs.
    for city in 1..=inst.edges() {
        let ids: Vec<usize> =
            inst.city_items(city).iter().copied().filter(|&e| red.labels()[e].undecided()).collect();
        for &a in &ids {
            for &b in &ids {
                if a == b {
                    continue;
                }
                let (ia, ib) = (inst.item(a), inst.item(b));
                if ia.profit < ib.profit && ia.weight >= ib.weight {
                    set.pairs.push(PrecedencePair { kind: PrecedenceKind::Sc1, low: a, high: b });
                }
            }
        }
    }

    // Cross-city pairs, accumulating the haul bounds edge by edge.
    for watched in red.undecided.iter().copied() {
        let wa = inst.item(watched);
        let mut lower = 0.0;
        let mut upper = 0.0;
        for i in wa.city + 1..=inst.edges() {
            let a = i - 1; // edge crossed to reach city i
            let base = red.prefix_compulsory[a - 1];
            lower += inst.rent
                * inst.distances()[a - 1]
                * (unit_time(inst, (base + wa.weight).min(inst.capacity()))
                    - unit_time(inst, base.min(inst.capacity())));
            let top = red.prefix_max[a - 1].min(inst.capacity());
            upper += inst.rent
                * inst.distances()[a - 1]
                * (unit_time(inst, top) - unit_time(inst, (top - wa.weight).max(0.0)));
            for &cand in inst.city_items(i) {
                if !red.labels()[cand].undecided() {
                    continue;
                }
                let ib = inst.item(cand);
                if wa.profit - lower < ib.profit && wa.weight >= ib.weight {
                    set.pairs.push(PrecedencePair {
                        kind: PrecedenceKind::Sc2,
                        low: watched,
                        high: cand,
                    });
                } else if wa.profit - upper > ib.profit && wa.weight <= ib.weight {
                    // x[watched] >= x[cand], normalized to low <= high.
                    set.pairs.push(PrecedencePair {
                        kind: PrecedenceKind::Sc3,
                        low: cand,
                        high: watched,
                    });
                } else if wa.profit - upper <= ib.profit && ib.profit <= wa.profit - lower {
                    set.pending.push(PendingPair {
                        watched,
                        candidate: cand,
                        can_force_in: wa.weight >= ib.weight,
                        can_force_out: wa.weight <= ib.weight,
                    });
                }
            }
        }
    }
    set
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generator::{generate, ItemClass};
    use crate::preprocess::run_preprocessing;

    fn with_reduction(items: Vec<Vec<(f64, f64)>>, distances: Vec<f64>) -> (Instance, Reduction) {
        let inst = Instance::new(distances, items, 10.0, 0.1, 1.0, 1.0).unwrap();
        let labels =
            (0..inst.item_count()).map(|_| crate::preprocess::ItemLabel { unprofitable: false, compulsory: false, dummy: f64::NAN }).collect();
        let red = Reduction::from_labels(&inst, labels);
        (inst, red)
    }

    #[test]
    fn delta_lower_single_edge() {
        let (inst, red) = with_reduction(vec![vec![(1.0, 5.0)], vec![]], vec![10.0, 1.0]);
        assert_eq!(delta_lower(&inst, &red, 1, 1, 5.0), 0.0);
        assert_eq!(delta_lower(&inst, &red, 1, 2, 0.0), 0.0);
        let d = delta_lower(&inst, &red, 1, 2, 5.0);
        assert!((d - (10.0 / 0.55 - 10.0)).abs() < 1e-9);
    }

    #[test]
    fn delta_upper_with_full_city_load() {
        // Two city-1 items of weight 5 fill the vehicle; hauling one of them
        // costs at most 10 * (1/0.1 - 1/0.55).
        let (inst, red) =
            with_reduction(vec![vec![(1.0, 5.0), (1.0, 5.0)], vec![]], vec![10.0, 1.0]);
        let d = delta_upper(&inst, &red, 1, 2, 5.0);
        assert!((d - 10.0 * (10.0 - 1.0 / 0.55)).abs() < 1e-9);
        // Coincides with the lower bound when the item is the only weight.
        let (inst1, red1) = with_reduction(vec![vec![(1.0, 5.0)], vec![]], vec![10.0, 1.0]);
        let lo = delta_lower(&inst1, &red1, 1, 2, 5.0);
        let hi = delta_upper(&inst1, &red1, 1, 2, 5.0);
        assert!((lo - hi).abs() < 1e-12);
    }

    #[test]
    fn lower_never_exceeds_upper() {
        for seed in 0..20u64 {
            let inst = generate(seed, 6, 2, ItemClass::Uncorrelated, 6).unwrap();
            let red = run_preprocessing(&inst);
            for &e in &red.undecided {
                let it = inst.item(e);
                for i in it.city..=inst.edges() + 1 {
                    let lo = delta_lower(&inst, &red, it.city, i, it.weight);
                    let hi = delta_upper(&inst, &red, it.city, i, it.weight);
                    assert!(lo <= hi + 1e-9, "delta ordering broke for item {e} to {i}");
                }
            }
        }
    }

    #[test]
    fn upper_is_monotone_in_weight() {
        let inst = generate(5, 5, 2, ItemClass::Uncorrelated, 4).unwrap();
        let red = run_preprocessing(&inst);
        let mut last = 0.0;
        for w in [0.0, 10.0, 100.0, 400.0, 900.0] {
            let d = delta_upper(&inst, &red, 1, inst.edges() + 1, w);
            assert!(d >= last - 1e-12);
            last = d;
        }
    }

    #[test]
    fn same_city_dominance() {
        let (inst, red) = with_reduction(vec![vec![(5.0, 3.0), (7.0, 3.0)]], vec![10.0]);
        let set = build_sequencing(&inst, &red);
        assert_eq!(set.pairs.len(), 1);
        let p = set.pairs[0];
        assert_eq!(p.kind, PrecedenceKind::Sc1);
        assert_eq!((p.low, p.high), (0, 1));
    }

    #[test]
    fn identical_items_stay_unordered() {
        let (inst, red) = with_reduction(vec![vec![(5.0, 3.0), (5.0, 3.0)]], vec![10.0]);
        let set = build_sequencing(&inst, &red);
        assert!(set.pairs.is_empty());
    }

    #[test]
    fn cross_city_dominance() {
        // Equal items across cities: the earlier one pays 8.18 extra haul, so
        // it must not be selected ahead of the later twin.
        let (inst, red) =
            with_reduction(vec![vec![(20.0, 5.0)], vec![(20.0, 5.0)]], vec![10.0, 1.0]);
        let set = build_sequencing(&inst, &red);
        assert_eq!(set.pairs.len(), 1);
        let p = set.pairs[0];
        assert_eq!(p.kind, PrecedenceKind::Sc2);
        assert_eq!((p.low, p.high), (0, 1));
    }

    #[test]
    fn sandwiched_profit_becomes_pending() {
        // Candidate profit between the deflated profits of the watched item:
        // 20 - 81.8 <= 10 <= 20 - 8.18.
        let (inst, red) =
            with_reduction(vec![vec![(20.0, 5.0), (1.0, 5.0)], vec![(10.0, 5.0)]], vec![10.0, 1.0]);
        let set = build_sequencing(&inst, &red);
        assert!(set
            .pending
            .iter()
            .any(|p| p.watched == 0 && p.candidate == 2 && p.can_force_in && p.can_force_out));
    }
}
