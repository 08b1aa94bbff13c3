//! Reduction of instances by detecting compulsory and unprofitable items.
//!
//! An item is *unprofitable* when its profit cannot even cover the smallest
//! marginal transport cost its weight induces; it can be discarded without
//! losing any optimum. An item is *compulsory* when its profit beats the
//! largest possible marginal cost; every optimum contains it. The fast path
//! [`run_preprocessing`] deduces labels from already-decided items through
//! dummy profits instead of evaluating every item from scratch, and the slow
//! per-item tests are kept as independent checks.

use log::debug;

use crate::problem::{Instance, PackingPlan};
use crate::Error;

/// Per-item reduction state.
#[derive(Debug, Clone, Copy)]
pub struct ItemLabel {
    pub unprofitable: bool,
    pub compulsory: bool,
    /// Dummy profit recorded when the item was last classified; encodes the
    /// threshold other items are compared against.
    pub dummy: f64,
}

impl ItemLabel {
    fn fresh() -> Self {
        ItemLabel { unprofitable: false, compulsory: false, dummy: f64::NAN }
    }

    pub fn undecided(&self) -> bool {
        !self.unprofitable && !self.compulsory
    }
}

/// Outcome of preprocessing: labels plus the per-city aggregates that the
/// bound models and the search build on.
#[derive(Debug, Clone)]
pub struct Reduction {
    labels: Vec<ItemLabel>,
    /// Ids still open for the search, in instance order.
    pub undecided: Vec<usize>,
    /// Compulsory weight per city (index `i - 1` for city `i`).
    pub city_compulsory_weight: Vec<f64>,
    /// Compulsory profit per city.
    pub city_compulsory_profit: Vec<f64>,
    /// Weight of all surviving (undecided + compulsory) items per city.
    pub city_max_weight: Vec<f64>,
    /// Prefix sums of `city_compulsory_weight`.
    pub prefix_compulsory: Vec<f64>,
    /// Prefix sums of `city_max_weight`.
    pub prefix_max: Vec<f64>,
    /// Percentage of items no longer part of the decision set.
    pub alpha: f64,
    /// True when the surviving items all fit the capacity together.
    pub unconstrained: bool,
}

impl Reduction {
    /// Assembles the aggregates for a given label vector.
    pub fn from_labels(inst: &Instance, labels: Vec<ItemLabel>) -> Self {
        let n = inst.edges();
        let mut city_compulsory_weight = vec![0.0; n];
        let mut city_compulsory_profit = vec![0.0; n];
        let mut city_max_weight = vec![0.0; n];
        let mut undecided = Vec::new();
        for (e, (label, item)) in labels.iter().zip(inst.items()).enumerate() {
            debug_assert!(!(label.unprofitable && label.compulsory));
            if label.unprofitable {
                continue;
            }
            city_max_weight[item.city - 1] += item.weight;
            if label.compulsory {
                city_compulsory_weight[item.city - 1] += item.weight;
                city_compulsory_profit[item.city - 1] += item.profit;
            } else {
                undecided.push(e);
            }
        }
        let prefix = |per_city: &[f64]| {
            let mut acc = 0.0;
            per_city
                .iter()
                .map(|w| {
                    acc += w;
                    acc
                })
                .collect::<Vec<f64>>()
        };
        let prefix_compulsory = prefix(&city_compulsory_weight);
        let prefix_max = prefix(&city_max_weight);
        let m = inst.item_count();
        let alpha = if m == 0 {
            0.0
        } else {
            100.0 * (m - undecided.len()) as f64 / m as f64
        };
        let unconstrained = prefix_max.last().copied().unwrap_or(0.0) <= inst.capacity();
        Reduction {
            labels,
            undecided,
            city_compulsory_weight,
            city_compulsory_profit,
            city_max_weight,
            prefix_compulsory,
            prefix_max,
            alpha,
            unconstrained,
        }
    }

    pub fn labels(&self) -> &[ItemLabel] {
        &self.labels
    }

    pub fn compulsory_ids(&self) -> Vec<usize> {
        self.labels
            .iter()
            .enumerate()
            .filter(|(_, l)| l.compulsory)
            .map(|(e, _)| e)
            .collect()
    }

    pub fn unprofitable_ids(&self) -> Vec<usize> {
        self.labels
            .iter()
            .enumerate()
            .filter(|(_, l)| l.unprofitable)
            .map(|(e, _)| e)
            .collect()
    }

    /// Plan selecting exactly the compulsory items.
    pub fn compulsory_plan(&self, inst: &Instance) -> PackingPlan {
        PackingPlan::from_ids(inst, &self.compulsory_ids())
    }

    /// Completes a selection over the undecided items into a full plan.
    pub fn complete_plan(&self, inst: &Instance, chosen_undecided: &[usize]) -> PackingPlan {
        let mut ids = self.compulsory_ids();
        ids.extend_from_slice(chosen_undecided);
        PackingPlan::from_ids(inst, &ids)
    }

    /// Instance with the unprofitable items dropped. Compulsory items stay in
    /// place; the solvers fold them through the per-city aggregates instead
    /// of rewriting the item set, so re-reducing this instance re-derives the
    /// same partition and discards nothing further.
    pub fn reduced_instance(&self, inst: &Instance) -> Instance {
        let n = inst.edges();
        let mut items = vec![Vec::new(); n];
        for (e, label) in self.labels.iter().enumerate() {
            if label.unprofitable {
                continue;
            }
            let it = inst.item(e);
            items[it.city - 1].push((it.profit, it.weight));
        }
        Instance::new(
            inst.distances().to_vec(),
            items,
            inst.capacity(),
            inst.v_min,
            inst.v_max,
            inst.rent,
        )
        .expect("reduced instance inherits validity")
    }
}

/// Travel time per distance unit at `load`.
fn unit_time(inst: &Instance, load: f64) -> f64 {
    let v = inst.velocity_at(load);
    debug_assert!(v > 0.0, "velocity must stay positive (load {load})");
    1.0 / v
}

/// One accumulator step of the fast sweeps for an item of weight `w` crossing
/// edge `city`: the smallest possible marginal cost (on top of the compulsory
/// load) and the largest possible one (on top of the maximal load, clamped to
/// the capacity).
pub fn incremental_costs(
    inst: &Instance,
    w: f64,
    city: usize,
    prefix_compulsory: &[f64],
    prefix_max: &[f64],
) -> (f64, f64) {
    let d = inst.distances()[city - 1];
    let base_min = prefix_compulsory[city - 1];
    let c_min = inst.rent * d * (unit_time(inst, base_min + w) - unit_time(inst, base_min));
    let top = prefix_max[city - 1].min(inst.capacity());
    debug_assert!(top - w >= -1e-9, "item weight exceeds the clamped city maximum");
    let c_max = inst.rent * d * (unit_time(inst, top) - unit_time(inst, top - w));
    (c_min, c_max)
}

/// Items that can never be packed because they alone exceed the capacity.
fn overweight(inst: &Instance, e: usize) -> bool {
    inst.item(e).weight > inst.capacity()
}

/// Unprofitable items of a constrained instance: profit at most the cost of
/// carrying the item alone through an otherwise empty vehicle. Runs in
/// `O(m + n)` using suffix distance sums.
pub fn unprofitable_constrained(inst: &Instance) -> Vec<usize> {
    let n = inst.edges();
    let mut suffix = vec![0.0; n + 1];
    for i in (1..=n).rev() {
        suffix[i - 1] = suffix[i] + inst.distances()[i - 1];
    }
    let empty = unit_time(inst, 0.0);
    (0..inst.item_count())
        .filter(|&e| {
            let it = inst.item(e);
            if overweight(inst, e) {
                return true;
            }
            let threshold =
                inst.rent * suffix[it.city - 1] * (unit_time(inst, it.weight) - empty);
            it.profit <= threshold
        })
        .collect()
}

/// Remaining (non-unprofitable) weight prefix per edge.
fn remaining_prefix(inst: &Instance, labels: &[ItemLabel]) -> Vec<f64> {
    let selected: Vec<bool> = labels.iter().map(|l| !l.unprofitable).collect();
    inst.prefix_weights(&selected)
}

/// Compulsory weight prefix per edge.
fn compulsory_prefix(inst: &Instance, labels: &[ItemLabel]) -> Vec<f64> {
    let selected: Vec<bool> = labels.iter().map(|l| l.compulsory).collect();
    inst.prefix_weights(&selected)
}

/// Newly compulsory items of an unconstrained instance: profit strictly above
/// the cost of carrying the item on top of every other remaining item.
/// Errors when the remaining items do not all fit the capacity.
pub fn compulsory_unconstrained(
    inst: &Instance,
    labels: &[ItemLabel],
) -> Result<Vec<usize>, Error> {
    let prefix_all = remaining_prefix(inst, labels);
    let total = prefix_all.last().copied().unwrap_or(0.0);
    if total > inst.capacity() {
        return Err(Error::Unsupported(format!(
            "compulsory test needs an unconstrained instance (remaining weight {total} > capacity {})",
            inst.capacity()
        )));
    }
    let mut found = Vec::new();
    for (e, label) in labels.iter().enumerate() {
        if !label.undecided() {
            continue;
        }
        let it = inst.item(e);
        let mut threshold = 0.0;
        for a in it.city..=inst.edges() {
            let full = prefix_all[a - 1];
            threshold += inst.rent
                * inst.distances()[a - 1]
                * (unit_time(inst, full) - unit_time(inst, full - it.weight));
        }
        if it.profit > threshold {
            found.push(e);
        }
    }
    Ok(found)
}

/// Newly unprofitable items of an unconstrained instance: profit at most the
/// cost of carrying the item on top of the compulsory items alone. With no
/// compulsory items this coincides with the constrained test.
pub fn unprofitable_unconstrained(inst: &Instance, labels: &[ItemLabel]) -> Vec<usize> {
    let prefix_c = compulsory_prefix(inst, labels);
    let mut found = Vec::new();
    for (e, label) in labels.iter().enumerate() {
        if !label.undecided() {
            continue;
        }
        let it = inst.item(e);
        let mut threshold = 0.0;
        for a in it.city..=inst.edges() {
            let base = prefix_c[a - 1];
            threshold += inst.rent
                * inst.distances()[a - 1]
                * (unit_time(inst, base + it.weight) - unit_time(inst, base));
        }
        if it.profit <= threshold {
            found.push(e);
        }
    }
    found
}

/// Reference reduction: iterates the direct per-item tests to their fixpoint.
/// Slower than [`run_preprocessing`] but free of the dummy-profit shortcuts;
/// the two must agree.
pub fn direct_fixpoint(inst: &Instance) -> Reduction {
    let mut labels: Vec<ItemLabel> = (0..inst.item_count())
        .map(|e| {
            let mut l = ItemLabel::fresh();
            if overweight(inst, e) {
                l.unprofitable = true;
                l.dummy = f64::INFINITY;
            }
            l
        })
        .collect();
    for e in unprofitable_constrained(inst) {
        labels[e].unprofitable = true;
    }
    let remaining: f64 = labels
        .iter()
        .zip(inst.items())
        .filter(|(l, _)| !l.unprofitable)
        .map(|(_, it)| it.weight)
        .sum();
    if remaining <= inst.capacity() {
        loop {
            let comp = compulsory_unconstrained(inst, &labels).expect("unconstrained");
            for &e in &comp {
                labels[e].compulsory = true;
            }
            let unprof = unprofitable_unconstrained(inst, &labels);
            for &e in &unprof {
                labels[e].unprofitable = true;
            }
            if comp.is_empty() && unprof.is_empty() {
                break;
            }
        }
    }
    Reduction::from_labels(inst, labels)
}

/// Accelerated reduction. Alternates a compulsory sweep and an unprofitable
/// sweep until one round finds nothing; on constrained instances only the
/// unprofitable test applies until the instance shrinks below the capacity.
/// Sweeps scan cities from the route's end backwards and reuse decisions of
/// forward items through their dummy profits instead of re-deriving the full
/// marginal-cost sums per item.
pub fn run_preprocessing(inst: &Instance) -> Reduction {
    let mut labels: Vec<ItemLabel> = (0..inst.item_count())
        .map(|e| {
            let mut l = ItemLabel::fresh();
            if overweight(inst, e) {
                l.unprofitable = true;
                l.dummy = f64::INFINITY;
            }
            l
        })
        .collect();

    let remaining = |labels: &[ItemLabel]| -> f64 {
        labels
            .iter()
            .zip(inst.items())
            .filter(|(l, _)| !l.unprofitable)
            .map(|(_, it)| it.weight)
            .sum()
    };

    let mut unconstrained = remaining(&labels) <= inst.capacity();
    if !unconstrained {
        loop {
            let changed = unprofitable_sweep(inst, &mut labels);
            if remaining(&labels) <= inst.capacity() {
                unconstrained = true;
                break;
            }
            if !changed {
                break;
            }
        }
    }
    if unconstrained {
        loop {
            let found_c = compulsory_sweep(inst, &mut labels);
            let found_u = unprofitable_sweep(inst, &mut labels);
            if !found_c && !found_u {
                break;
            }
        }
    }
    let red = Reduction::from_labels(inst, labels);
    debug!(
        "preprocessing left {} of {} items undecided (alpha {:.1}%, {})",
        red.undecided.len(),
        inst.item_count(),
        red.alpha,
        if red.unconstrained { "unconstrained" } else { "constrained" }
    );
    red
}

/// One backward sweep hunting compulsory items. Returns whether anything was
/// marked.
fn compulsory_sweep(inst: &Instance, labels: &mut [ItemLabel]) -> bool {
    let prefix_c = compulsory_prefix(inst, labels);
    let prefix_max = remaining_prefix(inst, labels);
    let n = inst.edges();
    let mut found = false;
    for i in (1..=n).rev() {
        'candidate: for (pos, &e) in inst.city_items(i).iter().enumerate() {
            if !labels[e].undecided() {
                continue;
            }
            let (p_e, w_e) = {
                let it = inst.item(e);
                (it.profit, it.weight)
            };
            let mut c_min = 0.0;
            let mut c_max = 0.0;
            for j in i..=n {
                for (qpos, &f) in inst.city_items(j).iter().enumerate() {
                    if (j == i && qpos >= pos) || labels[f].unprofitable {
                        continue;
                    }
                    let w_f = inst.item(f).weight;
                    if !labels[f].compulsory {
                        // A heavier item that cannot beat a known
                        // non-compulsory one is not compulsory either.
                        if w_e >= w_f && p_e - c_min <= labels[f].dummy {
                            labels[e].dummy = labels[f].dummy + c_min;
                            continue 'candidate;
                        }
                    } else if w_e <= w_f && p_e - c_max > labels[f].dummy {
                        labels[e].compulsory = true;
                        labels[e].dummy = labels[f].dummy + c_max;
                        found = true;
                        continue 'candidate;
                    }
                }
                let (dc_min, dc_max) = incremental_costs(inst, w_e, j, &prefix_c, &prefix_max);
                c_min += dc_min;
                c_max += dc_max;
            }
            labels[e].dummy = c_max;
            if c_max < p_e {
                labels[e].compulsory = true;
                found = true;
            }
        }
    }
    found
}

/// One backward sweep hunting unprofitable items.
fn unprofitable_sweep(inst: &Instance, labels: &mut [ItemLabel]) -> bool {
    let prefix_c = compulsory_prefix(inst, labels);
    let prefix_max = remaining_prefix(inst, labels);
    let n = inst.edges();
    let mut found = false;
    for i in (1..=n).rev() {
        'candidate: for (pos, &e) in inst.city_items(i).iter().enumerate() {
            if !labels[e].undecided() {
                continue;
            }
            let (p_e, w_e) = {
                let it = inst.item(e);
                (it.profit, it.weight)
            };
            let mut c_min = 0.0;
            let mut c_max = 0.0;
            for j in i..=n {
                for (qpos, &f) in inst.city_items(j).iter().enumerate() {
                    if (j == i && qpos >= pos) || labels[f].compulsory {
                        continue;
                    }
                    let w_f = inst.item(f).weight;
                    if !labels[f].unprofitable {
                        // A lighter item that clearly beats a known
                        // profitable one stays in the game.
                        if w_e <= w_f && p_e - c_max > labels[f].dummy {
                            labels[e].dummy = labels[f].dummy + c_max;
                            continue 'candidate;
                        }
                    } else if w_e >= w_f && p_e - c_min <= labels[f].dummy {
                        labels[e].unprofitable = true;
                        labels[e].dummy = labels[f].dummy + c_min;
                        found = true;
                        continue 'candidate;
                    }
                }
                let (dc_min, dc_max) = incremental_costs(inst, w_e, j, &prefix_c, &prefix_max);
                c_min += dc_min;
                if c_min >= p_e {
                    labels[e].unprofitable = true;
                    labels[e].dummy = c_min;
                    found = true;
                    continue 'candidate;
                }
                c_max += dc_max;
            }
            labels[e].dummy = c_min;
        }
    }
    found
}
