//! Exact branch-infer-and-bound solver.
//!
//! Depth-first search over the undecided items in route order. Fixing an
//! item triggers propagation: the static precedence pairs are enforced by
//! value removal, pending pairs re-derive their haul-cost bounds from the
//! live weight window and may force partners in or out, and every node is
//! capped by a relaxed tangent-model bound; a node whose bound cannot beat
//! the incumbent dies on the spot.

use std::time::{Duration, Instant};

use log::{debug, info};

use crate::bounds::{solve_lower_bound, solve_upper_bound};
use crate::preprocess::{run_preprocessing, Reduction};
use crate::problem::{evaluate_objective, Instance, PackingPlan};
use crate::sequencing::{build_sequencing, PendingPair, PrecedencePair, SequencingSet};
use crate::Error;

/// Search counters.
#[derive(Debug, Clone, Default)]
pub struct SearchStats {
    /// Branches attempted.
    pub branches: u64,
    /// Branches that died (conflict, capacity, or bound).
    pub fails: u64,
    /// Upper-bound evaluations.
    pub ub_runs_total: u64,
    /// Upper-bound evaluations that pruned their node.
    pub ub_runs_success: u64,
    pub wall_time: Duration,
}

impl SearchStats {
    /// Percentage of bound evaluations that pruned.
    pub fn eta(&self) -> f64 {
        if self.ub_runs_total == 0 {
            0.0
        } else {
            100.0 * self.ub_runs_success as f64 / self.ub_runs_total as f64
        }
    }
}

#[derive(Debug, Clone)]
pub struct SolveOptions {
    /// Segment count of the per-node upper-bound model.
    pub lambda: usize,
    /// Segment count of the root incumbent's lower-bound model.
    pub lb_lambda: usize,
    /// Evaluate the upper bound only at every k-th depth.
    pub ub_stride: usize,
    pub time_limit: Option<Duration>,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { lambda: 1000, lb_lambda: 100, ub_stride: 1, time_limit: None }
    }
}

#[derive(Debug, Clone)]
pub struct ExactSolution {
    pub plan: PackingPlan,
    pub objective: f64,
    pub stats: SearchStats,
    /// False when the time limit cut the search short.
    pub proven: bool,
    /// Exact value of the plan that seeded the incumbent.
    pub root_lower_bound: f64,
}

/// Events exposed to instrumented runs.
pub enum SearchEvent<'a> {
    /// Propagation finished at a node.
    Propagated {
        /// Branch decisions on the path.
        decisions: &'a [(usize, bool)],
        /// All singleton assignments after propagation.
        fixed: Vec<(usize, bool)>,
        failed: bool,
    },
    /// The bound closed the node.
    Pruned { fixed: Vec<(usize, bool)>, bound: f64, incumbent: f64 },
}

pub type Observer<'a> = dyn FnMut(SearchEvent) + 'a;

/// Binary domains over the undecided items with a backtracking trail.
pub struct DomainStore {
    dom: Vec<u8>, // bit 0: value 0 allowed, bit 1: value 1 allowed
    /// Weight of everything certainly on board: compulsory plus fixed-ones.
    pub committed_weight: f64,
    trail: Vec<(u32, u8)>,
}

#[derive(Clone, Copy)]
pub struct Mark {
    trail_len: usize,
    committed_weight: f64,
}

enum Removal {
    Unchanged,
    Fixed,
    Empty,
}

impl DomainStore {
    pub fn new(inst: &Instance, red: &Reduction) -> Self {
        let mut dom = vec![0u8; inst.item_count()];
        for (e, label) in red.labels().iter().enumerate() {
            dom[e] = if label.compulsory {
                0b10
            } else if label.unprofitable {
                0b01
            } else {
                0b11
            };
        }
        let committed_weight = red.prefix_compulsory.last().copied().unwrap_or(0.0);
        DomainStore { dom, committed_weight, trail: Vec::new() }
    }

    pub fn can_be(&self, e: usize, v: bool) -> bool {
        self.dom[e] & (1 << v as u8) != 0
    }

    /// The assigned value when the domain is a singleton.
    pub fn value(&self, e: usize) -> Option<bool> {
        match self.dom[e] {
            0b01 => Some(false),
            0b10 => Some(true),
            _ => None,
        }
    }

    fn remove(&mut self, inst: &Instance, e: usize, v: bool) -> Removal {
        let bit = 1 << v as u8;
        if self.dom[e] & bit == 0 {
            return Removal::Unchanged;
        }
        self.trail.push((e as u32, self.dom[e]));
        self.dom[e] &= !bit;
        match self.dom[e] {
            0 => Removal::Empty,
            0b10 => {
                self.committed_weight += inst.item(e).weight;
                Removal::Fixed
            }
            _ => Removal::Fixed,
        }
    }

    pub fn mark(&self) -> Mark {
        Mark { trail_len: self.trail.len(), committed_weight: self.committed_weight }
    }

    pub fn undo_to(&mut self, mark: Mark) {
        while self.trail.len() > mark.trail_len {
            let (e, old) = self.trail.pop().unwrap();
            self.dom[e as usize] = old;
        }
        self.committed_weight = mark.committed_weight;
    }

    /// Current singleton assignments over the undecided items.
    pub fn fixed_assignments(&self, red: &Reduction) -> Vec<(usize, bool)> {
        red.undecided
            .iter()
            .filter_map(|&e| self.value(e).map(|v| (e, v)))
            .collect()
    }
}

struct Propagator<'a> {
    inst: &'a Instance,
    red: &'a Reduction,
    pairs: Vec<PrecedencePair>,
    pair_by_item: Vec<Vec<usize>>,
    /// Pending pairs grouped by watched item; `watched` lists the group keys.
    pending_of: Vec<Vec<PendingPair>>,
    watched: Vec<usize>,
}

impl<'a> Propagator<'a> {
    fn new(inst: &'a Instance, red: &'a Reduction, seq: SequencingSet) -> Self {
        let m = inst.item_count();
        let mut pair_by_item = vec![Vec::new(); m];
        for (k, p) in seq.pairs.iter().enumerate() {
            pair_by_item[p.low].push(k);
            pair_by_item[p.high].push(k);
        }
        let mut pending_of = vec![Vec::new(); m];
        for p in seq.pending {
            pending_of[p.watched].push(p);
        }
        let watched: Vec<usize> = (0..m).filter(|&e| !pending_of[e].is_empty()).collect();
        Propagator { inst, red, pairs: seq.pairs, pair_by_item, pending_of, watched }
    }

    fn assign(&self, store: &mut DomainStore, e: usize, v: bool, queue: &mut Vec<usize>) -> bool {
        match store.remove(self.inst, e, !v) {
            Removal::Unchanged => true,
            Removal::Fixed => {
                queue.push(e);
                true
            }
            Removal::Empty => false,
        }
    }

    /// Runs all rules to a fixpoint. Returns false on a wiped-out domain or
    /// a capacity overrun.
    fn propagate(&self, store: &mut DomainStore, mut queue: Vec<usize>) -> bool {
        loop {
            while let Some(e) = queue.pop() {
                for &k in &self.pair_by_item[e] {
                    let p = self.pairs[k];
                    if store.value(p.low) == Some(true)
                        && !self.assign(store, p.high, true, &mut queue)
                    {
                        return false;
                    }
                    if store.value(p.high) == Some(false)
                        && !self.assign(store, p.low, false, &mut queue)
                    {
                        return false;
                    }
                }
                if store.committed_weight > self.inst.capacity() + 1e-9 {
                    return false;
                }
            }
            let mut changed = false;
            // Items that no longer fit can be ruled out immediately.
            for &e in &self.red.undecided {
                if store.value(e).is_none()
                    && store.committed_weight + self.inst.item(e).weight
                        > self.inst.capacity() + 1e-9
                {
                    if !self.assign(store, e, false, &mut queue) {
                        return false;
                    }
                    changed = true;
                }
            }
            for &a in &self.watched {
                match self.run_filter(store, a, &mut queue) {
                    None => return false,
                    Some(c) => changed |= c,
                }
            }
            if !changed && queue.is_empty() {
                return true;
            }
        }
    }

    /// Lower/upper bounds of the collected weight per edge under the current
    /// domains.
    fn weight_bounds(&self, store: &DomainStore) -> (Vec<f64>, Vec<f64>) {
        let n = self.inst.edges();
        let mut wmin = vec![0.0; n];
        let mut wmax = vec![0.0; n];
        let mut acc_min = 0.0;
        let mut acc_max = 0.0;
        for i in 1..=n {
            acc_min += self.red.city_compulsory_weight[i - 1];
            acc_max += self.red.city_compulsory_weight[i - 1];
            for &e in self.inst.city_items(i) {
                if !self.red.labels()[e].undecided() {
                    continue;
                }
                match store.value(e) {
                    Some(true) => {
                        acc_min += self.inst.item(e).weight;
                        acc_max += self.inst.item(e).weight;
                    }
                    Some(false) => {}
                    None => acc_max += self.inst.item(e).weight,
                }
            }
            wmin[i - 1] = acc_min;
            wmax[i - 1] = acc_max;
        }
        (wmin, wmax)
    }

    /// Marginal cost of hauling `w` over one edge on top of `base` weight of
    /// other cargo, clamped so the loaded vehicle stays within capacity.
    fn marginal(&self, d: f64, base: f64, w: f64) -> f64 {
        let cap = self.inst.capacity();
        let b = base.min(cap - w).max(0.0);
        self.inst.rent
            * d
            * (1.0 / self.inst.velocity_at(b + w) - 1.0 / self.inst.velocity_at(b))
    }

    /// The filtering pass of one watched item: walks the route suffix,
    /// re-deriving the haul-cost window from the live weight bounds, forcing
    /// pending partners whose ordering has become decidable, discarding items
    /// whose profit cannot cover their remaining minimum haul, and (on
    /// unconstrained instances) committing items whose profit beats even the
    /// maximum haul. Returns None on a wiped-out domain.
    fn run_filter(
        &self,
        store: &mut DomainStore,
        a: usize,
        queue: &mut Vec<usize>,
    ) -> Option<bool> {
        let item_a = self.inst.item(a);
        let j = item_a.city;
        let x_a = store.value(a);
        let (wmin, wmax) = self.weight_bounds(store);
        let n = self.inst.edges();
        let mut changed = false;

        let mut delta_a = 0.0;
        let mut delta_bar_a = 0.0;
        let mut open: Vec<(usize, f64, f64)> = Vec::new();

        for i in j..=n {
            // Haul-cost window covers edges j..i-1 here.
            for p in &self.pending_of[a] {
                if self.inst.item(p.candidate).city != i {
                    continue;
                }
                let cand = self.inst.item(p.candidate);
                if p.can_force_out
                    && x_a == Some(false)
                    && item_a.profit - delta_bar_a > cand.profit
                {
                    match store.remove(self.inst, p.candidate, true) {
                        Removal::Empty => return None,
                        Removal::Fixed => {
                            queue.push(p.candidate);
                            changed = true;
                        }
                        Removal::Unchanged => {}
                    }
                }
                if p.can_force_in && x_a == Some(true) && item_a.profit - delta_a < cand.profit {
                    match store.remove(self.inst, p.candidate, false) {
                        Removal::Empty => return None,
                        Removal::Fixed => {
                            queue.push(p.candidate);
                            changed = true;
                        }
                        Removal::Unchanged => {}
                    }
                }
            }
            for &e in self.inst.city_items(i) {
                if e != a && self.red.labels()[e].undecided() && store.value(e).is_none() {
                    open.push((e, 0.0, 0.0));
                }
            }

            // Cross edge i.
            let d = self.inst.distances()[i - 1];
            let w_a = item_a.weight;
            let base_min = wmin[i - 1] - if x_a == Some(true) { w_a } else { 0.0 };
            let base_max = wmax[i - 1] - if x_a == Some(false) { 0.0 } else { w_a };
            delta_a += self.marginal(d, base_min, w_a);
            delta_bar_a += self.marginal(d, base_max, w_a);

            let mut k = 0;
            while k < open.len() {
                let (e, ref mut dmin, ref mut dmax) = open[k];
                let w_e = self.inst.item(e).weight;
                *dmin += self.marginal(d, wmin[i - 1], w_e);
                *dmax += self.marginal(d, wmax[i - 1] - w_e, w_e);
                if self.inst.item(e).profit - *dmin <= 0.0 {
                    match store.remove(self.inst, e, true) {
                        Removal::Empty => return None,
                        Removal::Fixed => {
                            queue.push(e);
                            changed = true;
                        }
                        Removal::Unchanged => {}
                    }
                    open.swap_remove(k);
                } else {
                    k += 1;
                }
            }
        }

        if self.red.unconstrained {
            for &(e, _, dmax) in &open {
                if self.inst.item(e).profit - dmax > 0.0 {
                    match store.remove(self.inst, e, false) {
                        Removal::Empty => return None,
                        Removal::Fixed => {
                            queue.push(e);
                            changed = true;
                        }
                        Removal::Unchanged => {}
                    }
                }
            }
        }
        Some(changed)
    }
}

/// Relaxed tangent bound of the node described by the store's singletons.
pub fn node_upper_bound(
    inst: &Instance,
    red: &Reduction,
    store: &DomainStore,
    lambda: usize,
) -> Result<f64, Error> {
    let fixed = store.fixed_assignments(red);
    solve_upper_bound(inst, red, lambda, false, &fixed)
}

/// Solves the instance to proven optimality. Runs preprocessing internally.
pub fn solve_exact(inst: &Instance, options: &SolveOptions) -> Result<ExactSolution, Error> {
    let red = run_preprocessing(inst);
    solve_exact_with(inst, &red, options, None)
}

/// Core search over a prepared reduction; `observer` sees every node.
pub fn solve_exact_with(
    inst: &Instance,
    red: &Reduction,
    options: &SolveOptions,
    observer: Option<&mut Observer>,
) -> Result<ExactSolution, Error> {
    let mut noop = |_: SearchEvent| {};
    let observer: &mut dyn FnMut(SearchEvent) = match observer {
        Some(o) => o,
        None => &mut noop,
    };
    let start = Instant::now();
    let deadline = options.time_limit.map(|d| start + d);
    let mut stats = SearchStats::default();

    if red.undecided.is_empty() {
        let plan = red.compulsory_plan(inst);
        let objective = evaluate_objective(inst, &plan);
        stats.wall_time = start.elapsed();
        return Ok(ExactSolution {
            plan,
            objective,
            stats,
            proven: true,
            root_lower_bound: objective,
        });
    }

    let lb = solve_lower_bound(inst, red, options.lb_lambda, false)?;
    debug!("incumbent seeded at {} from the relaxed chord model", lb.value);
    let root_lower_bound = lb.value;
    let mut incumbent_plan = lb.plan;
    let mut incumbent_value = lb.value;

    let mut order = red.undecided.clone();
    order.sort_by(|&x, &y| {
        let (a, b) = (inst.item(x), inst.item(y));
        a.city
            .cmp(&b.city)
            .then_with(|| {
                let ra = if a.weight > 0.0 { a.profit / a.weight } else { f64::INFINITY };
                let rb = if b.weight > 0.0 { b.profit / b.weight } else { f64::INFINITY };
                rb.partial_cmp(&ra).unwrap()
            })
            .then(x.cmp(&y))
    });

    let prop = Propagator::new(inst, red, build_sequencing(inst, red));
    let mut store = DomainStore::new(inst, red);
    let mut decisions: Vec<(usize, bool)> = Vec::new();

    let root_ok = prop.propagate(&mut store, Vec::new());
    observer(SearchEvent::Propagated {
        decisions: &decisions,
        fixed: store.fixed_assignments(red),
        failed: !root_ok,
    });
    let mut proven = true;
    if root_ok {
        stats.ub_runs_total += 1;
        let root_bound = node_upper_bound(inst, red, &store, options.lambda)?;
        if root_bound <= incumbent_value + 1e-9 {
            stats.ub_runs_success += 1;
            observer(SearchEvent::Pruned {
                fixed: store.fixed_assignments(red),
                bound: root_bound,
                incumbent: incumbent_value,
            });
        } else {
            let mut ctx = SearchCtx {
                inst,
                red,
                prop: &prop,
                order: &order,
                options,
                deadline,
                stats: &mut stats,
                incumbent_plan: &mut incumbent_plan,
                incumbent_value: &mut incumbent_value,
                observer,
            };
            proven = dfs(&mut ctx, &mut store, &mut decisions, 0);
        }
    }

    stats.wall_time = start.elapsed();
    let objective = evaluate_objective(inst, &incumbent_plan);
    debug_assert!((objective - incumbent_value).abs() <= 1e-9 * objective.abs().max(1.0));
    info!(
        "search finished: objective {objective}, {} branches, {} fails, bound pruned {}/{} runs, proven {proven}",
        stats.branches, stats.fails, stats.ub_runs_success, stats.ub_runs_total
    );
    Ok(ExactSolution { plan: incumbent_plan, objective, stats, proven, root_lower_bound })
}

struct SearchCtx<'a> {
    inst: &'a Instance,
    red: &'a Reduction,
    prop: &'a Propagator<'a>,
    order: &'a [usize],
    options: &'a SolveOptions,
    deadline: Option<Instant>,
    stats: &'a mut SearchStats,
    incumbent_plan: &'a mut PackingPlan,
    incumbent_value: &'a mut f64,
    observer: &'a mut dyn FnMut(SearchEvent),
}

/// Returns false when the deadline interrupted the subtree.
fn dfs(ctx: &mut SearchCtx, store: &mut DomainStore, decisions: &mut Vec<(usize, bool)>, pos: usize) -> bool {
    let mut k = pos;
    while k < ctx.order.len() && store.value(ctx.order[k]).is_some() {
        k += 1;
    }
    if k == ctx.order.len() {
        let chosen: Vec<usize> = ctx
            .red
            .undecided
            .iter()
            .copied()
            .filter(|&e| store.value(e) == Some(true))
            .collect();
        let plan = ctx.red.complete_plan(ctx.inst, &chosen);
        let value = evaluate_objective(ctx.inst, &plan);
        if value > *ctx.incumbent_value + 1e-9 {
            debug!("incumbent improved to {value} after {} branches", ctx.stats.branches);
            *ctx.incumbent_value = value;
            *ctx.incumbent_plan = plan;
        }
        return true;
    }

    let e = ctx.order[k];
    for value in [true, false] {
        if let Some(deadline) = ctx.deadline {
            if Instant::now() >= deadline {
                return false;
            }
        }
        ctx.stats.branches += 1;
        let mark = store.mark();
        decisions.push((e, value));

        let mut queue = Vec::new();
        let ok = ctx.prop.assign(store, e, value, &mut queue)
            && ctx.prop.propagate(store, queue);
        (ctx.observer)(SearchEvent::Propagated {
            decisions,
            fixed: store.fixed_assignments(ctx.red),
            failed: !ok,
        });
        let mut complete = true;
        if !ok {
            ctx.stats.fails += 1;
        } else {
            let mut pruned = false;
            if decisions.len().is_multiple_of(ctx.options.ub_stride.max(1)) {
                ctx.stats.ub_runs_total += 1;
                let bound = node_upper_bound(ctx.inst, ctx.red, store, ctx.options.lambda)
                    .expect("bound model is always solvable");
                if bound <= *ctx.incumbent_value + 1e-9 {
                    ctx.stats.ub_runs_success += 1;
                    ctx.stats.fails += 1;
                    pruned = true;
                    (ctx.observer)(SearchEvent::Pruned {
                        fixed: store.fixed_assignments(ctx.red),
                        bound,
                        incumbent: *ctx.incumbent_value,
                    });
                }
            }
            if !pruned {
                complete = dfs(ctx, store, decisions, k + 1);
            }
        }
        decisions.pop();
        store.undo_to(mark);
        if !complete {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generator::{generate, generate_ssp, ssp_target_objective, ItemClass};
    use crate::oracle::brute_force;

    fn desk_options() -> SolveOptions {
        SolveOptions { lambda: 100, lb_lambda: 100, ub_stride: 1, time_limit: None }
    }

    #[test]
    fn trivial_instance_needs_no_branching() {
        // Single compulsory item: preprocessing decides everything.
        let inst =
            Instance::new(vec![10.0], vec![vec![(50.0, 5.0)]], 10.0, 0.1, 1.0, 1.0).unwrap();
        let sol = solve_exact(&inst, &desk_options()).unwrap();
        assert_eq!(sol.stats.branches, 0);
        assert!(sol.proven);
        assert!((sol.objective - (50.0 - 10.0 / 0.55)).abs() < 1e-9);
    }

    #[test]
    fn matches_oracle_on_random_instances() {
        for seed in 0..12u64 {
            for class in [
                ItemClass::Uncorrelated,
                ItemClass::SimilarWeights,
                ItemClass::BoundedStrongCorr,
            ] {
                for cap in [1, 6, 10] {
                    let inst = generate(seed, 4, 2, class, cap).unwrap();
                    let (_, want) = brute_force(&inst).unwrap();
                    let sol = solve_exact(&inst, &desk_options()).unwrap();
                    assert!(
                        (sol.objective - want).abs() <= 1e-9 * want.abs().max(1.0),
                        "seed {seed} class {:?} cap {cap}: got {} want {want}",
                        class,
                        sol.objective
                    );
                    assert!(sol.proven);
                }
            }
        }
    }

    #[test]
    fn ssp_witness_objective() {
        let set = [4u64, 9, 2, 7];
        let target = 13;
        let inst = generate_ssp(&set, target).unwrap();
        let sol = solve_exact(&inst, &desk_options()).unwrap();
        assert!((sol.objective - ssp_target_objective(&set, target)).abs() < 1e-9);
    }

    #[test]
    fn propagation_forces_pair_partners() {
        // Same-city dominance: selecting the weaker item forces the stronger.
        let inst = Instance::new(
            vec![10.0],
            vec![vec![(5.0, 3.0), (7.0, 3.0)]],
            10.0,
            0.1,
            1.0,
            1.0,
        )
        .unwrap();
        let red = run_preprocessing(&inst);
        let prop = Propagator::new(&inst, &red, build_sequencing(&inst, &red));
        let mut store = DomainStore::new(&inst, &red);
        let mut queue = Vec::new();
        assert!(prop.assign(&mut store, 0, true, &mut queue));
        assert!(prop.propagate(&mut store, queue));
        assert_eq!(store.value(1), Some(true));

        // And rejecting the stronger forces out the weaker.
        let mut store = DomainStore::new(&inst, &red);
        let mut queue = Vec::new();
        assert!(prop.assign(&mut store, 1, false, &mut queue));
        assert!(prop.propagate(&mut store, queue));
        assert_eq!(store.value(0), Some(false));
    }

    #[test]
    fn capacity_filtering_rules_out_oversized_items() {
        let inst = Instance::new(
            vec![10.0],
            vec![vec![(900.0, 6.0), (850.0, 6.0)]],
            10.0,
            0.1,
            1.0,
            1.0,
        )
        .unwrap();
        let red = run_preprocessing(&inst);
        let prop = Propagator::new(&inst, &red, build_sequencing(&inst, &red));
        let mut store = DomainStore::new(&inst, &red);
        let mut queue = Vec::new();
        assert!(prop.assign(&mut store, 0, true, &mut queue));
        assert!(prop.propagate(&mut store, queue));
        assert_eq!(store.value(1), Some(false));
    }

    #[test]
    fn root_bound_equals_the_standalone_upper_bound() {
        let inst = generate(14, 4, 2, ItemClass::Uncorrelated, 6).unwrap();
        let red = run_preprocessing(&inst);
        let store = DomainStore::new(&inst, &red);
        let at_root = node_upper_bound(&inst, &red, &store, 50).unwrap();
        let standalone = solve_upper_bound(&inst, &red, 50, false, &[]).unwrap();
        assert_eq!(at_root.to_bits(), standalone.to_bits());
    }

    #[test]
    fn stats_are_consistent() {
        let inst = generate(3, 5, 3, ItemClass::BoundedStrongCorr, 6).unwrap();
        let sol = solve_exact(&inst, &desk_options()).unwrap();
        assert!(sol.stats.ub_runs_success <= sol.stats.ub_runs_total);
        assert!(sol.stats.fails <= sol.stats.branches);
        assert!((0.0..=100.0).contains(&sol.stats.eta()));
    }

    #[test]
    fn deterministic_across_runs() {
        let inst = generate(21, 4, 3, ItemClass::Uncorrelated, 6).unwrap();
        let a = solve_exact(&inst, &desk_options()).unwrap();
        let b = solve_exact(&inst, &desk_options()).unwrap();
        assert_eq!(a.objective.to_bits(), b.objective.to_bits());
        assert_eq!(a.plan.ids(), b.plan.ids());
        assert_eq!(a.stats.branches, b.stats.branches);
        assert_eq!(a.stats.fails, b.stats.fails);
        assert_eq!(a.stats.ub_runs_total, b.stats.ub_runs_total);
    }

    #[test]
    fn ub_stride_still_finds_the_optimum() {
        let inst = generate(8, 4, 3, ItemClass::Uncorrelated, 6).unwrap();
        let (_, want) = brute_force(&inst).unwrap();
        let opts = SolveOptions { ub_stride: 3, ..desk_options() };
        let sol = solve_exact(&inst, &opts).unwrap();
        assert!((sol.objective - want).abs() <= 1e-9 * want.abs().max(1.0));
    }
}
