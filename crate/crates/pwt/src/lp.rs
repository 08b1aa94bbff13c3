//! Dense bounded-variable primal simplex and an LP-based branch-and-bound
//! for mixed 0-1 programs.
//!
//! Each solve owns a full tableau. Phase 1 drives artificials out via a
//! two-phase scheme; pricing is Dantzig with a Bland fallback once degenerate
//! pivots pile up, which keeps the method deterministic and cycle-free.

use std::time::{Duration, Instant};

/// Row sense.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

/// One constraint row in sparse form.
#[derive(Debug, Clone)]
pub struct Row {
    pub coeffs: Vec<(usize, f64)>,
    pub relation: Relation,
    pub rhs: f64,
}

/// A maximization program over bounded variables, some possibly binary.
#[derive(Debug, Clone, Default)]
pub struct LinearProgram {
    pub objective: Vec<f64>,
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
    pub integral: Vec<bool>,
    pub rows: Vec<Row>,
}

impl LinearProgram {
    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    /// Adds a variable and returns its column index.
    pub fn add_var(&mut self, objective: f64, lower: f64, upper: f64, integral: bool) -> usize {
        assert!(lower <= upper, "variable bounds out of order");
        self.objective.push(objective);
        self.lower.push(lower);
        self.upper.push(upper);
        self.integral.push(integral);
        self.objective.len() - 1
    }

    pub fn add_row(&mut self, coeffs: Vec<(usize, f64)>, relation: Relation, rhs: f64) {
        debug_assert!(coeffs.iter().all(|&(j, _)| j < self.num_vars()));
        self.rows.push(Row { coeffs, relation, rhs });
    }

    /// Objective value of a point.
    pub fn objective_value(&self, x: &[f64]) -> f64 {
        self.objective.iter().zip(x).map(|(c, v)| c * v).sum()
    }

    /// Largest absolute row violation of a point.
    pub fn max_violation(&self, x: &[f64]) -> f64 {
        let mut worst: f64 = 0.0;
        for row in &self.rows {
            let lhs: f64 = row.coeffs.iter().map(|&(j, c)| c * x[j]).sum();
            let v = match row.relation {
                Relation::Le => lhs - row.rhs,
                Relation::Ge => row.rhs - lhs,
                Relation::Eq => (lhs - row.rhs).abs(),
            };
            worst = worst.max(v);
        }
        worst
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Debug, Clone)]
pub struct LpSolution {
    pub status: LpStatus,
    pub objective: f64,
    pub values: Vec<f64>,
}

const PIVOT_TOL: f64 = 1e-9;
const RATIO_TOL: f64 = 1e-10;
const FEAS_TOL: f64 = 1e-7;

#[derive(Debug, Clone, Copy, PartialEq)]
enum VarState {
    Basic(usize),
    AtLower,
    AtUpper,
    /// Free variable resting at zero.
    FreeZero,
}

struct Tableau {
    cols: usize,
    rows: usize,
    /// Dense `rows x cols` matrix `B^-1 A`.
    t: Vec<f64>,
    /// Current value of every variable.
    x: Vec<f64>,
    lower: Vec<f64>,
    upper: Vec<f64>,
    state: Vec<VarState>,
    basis: Vec<usize>,
    /// Reduced costs of the active objective.
    d: Vec<f64>,
    /// Columns excluded from pricing (fixed artificials).
    frozen: Vec<bool>,
    degenerate_streak: usize,
    bland: bool,
}

impl Tableau {
    fn at(&self, r: usize, c: usize) -> f64 {
        self.t[r * self.cols + c]
    }

    fn set_costs(&mut self, costs: &[f64]) {
        self.d.copy_from_slice(costs);
        for r in 0..self.rows {
            let cb = costs[self.basis[r]];
            if cb != 0.0 {
                for c in 0..self.cols {
                    self.d[c] -= cb * self.at(r, c);
                }
            }
        }
    }

    /// Entering column and direction (+1 increase, -1 decrease), or None at
    /// optimality.
    fn price(&self) -> Option<(usize, f64)> {
        let mut best: Option<(usize, f64, f64)> = None;
        for j in 0..self.cols {
            if self.frozen[j] || self.lower[j] == self.upper[j] {
                continue;
            }
            let dir = match self.state[j] {
                VarState::Basic(_) => continue,
                VarState::AtLower => {
                    if self.d[j] > PIVOT_TOL {
                        1.0
                    } else {
                        continue;
                    }
                }
                VarState::AtUpper => {
                    if self.d[j] < -PIVOT_TOL {
                        -1.0
                    } else {
                        continue;
                    }
                }
                VarState::FreeZero => {
                    if self.d[j] > PIVOT_TOL {
                        1.0
                    } else if self.d[j] < -PIVOT_TOL {
                        -1.0
                    } else {
                        continue;
                    }
                }
            };
            if self.bland {
                return Some((j, dir));
            }
            let score = self.d[j].abs();
            match best {
                Some((_, _, s)) if s >= score => {}
                _ => best = Some((j, dir, score)),
            }
        }
        best.map(|(j, dir, _)| (j, dir))
    }

    /// Largest step for `enter` moving in `dir`, and the blocking row.
    fn ratio_test(&self, enter: usize, dir: f64) -> (f64, Option<usize>) {
        let mut t_max = if self.lower[enter].is_finite() && self.upper[enter].is_finite() {
            self.upper[enter] - self.lower[enter]
        } else {
            f64::INFINITY
        };
        let mut block: Option<usize> = None;
        for r in 0..self.rows {
            let coef = dir * self.at(r, enter);
            let b = self.basis[r];
            let limit = if coef > RATIO_TOL {
                if self.lower[b].is_finite() {
                    (self.x[b] - self.lower[b]) / coef
                } else {
                    continue;
                }
            } else if coef < -RATIO_TOL {
                if self.upper[b].is_finite() {
                    (self.x[b] - self.upper[b]) / coef
                } else {
                    continue;
                }
            } else {
                continue;
            };
            let limit = limit.max(0.0);
            if limit < t_max - RATIO_TOL || (limit < t_max + RATIO_TOL && block.is_some_and(|rb| self.basis[rb] > b))
            {
                t_max = limit.min(t_max);
                block = Some(r);
            }
        }
        (t_max, block)
    }

    fn pivot(&mut self, enter: usize, dir: f64, step: f64, block: Option<usize>) {
        // Move the entering variable and patch all basic values.
        self.x[enter] += dir * step;
        if step > 0.0 {
            for r in 0..self.rows {
                let coef = self.at(r, enter);
                if coef != 0.0 {
                    let b = self.basis[r];
                    self.x[b] -= dir * step * coef;
                }
            }
        }
        match block {
            None => {
                // Bound flip: the entering variable ran to its other bound.
                self.state[enter] = if dir > 0.0 { VarState::AtUpper } else { VarState::AtLower };
            }
            Some(r) => {
                let leave = self.basis[r];
                let coef_leave = dir * self.at(r, enter);
                self.state[leave] = if coef_leave > 0.0 {
                    VarState::AtLower
                } else {
                    VarState::AtUpper
                };
                // Clamp away accumulated rounding.
                if self.state[leave] == VarState::AtLower {
                    self.x[leave] = self.lower[leave];
                } else {
                    self.x[leave] = self.upper[leave];
                }
                self.state[enter] = VarState::Basic(r);
                self.basis[r] = enter;
                let piv = self.at(r, enter);
                let inv = 1.0 / piv;
                for c in 0..self.cols {
                    self.t[r * self.cols + c] *= inv;
                }
                for rr in 0..self.rows {
                    if rr == r {
                        continue;
                    }
                    let f = self.at(rr, enter);
                    if f != 0.0 {
                        for c in 0..self.cols {
                            let v = self.at(r, c);
                            self.t[rr * self.cols + c] -= f * v;
                        }
                    }
                }
                let f = self.d[enter];
                if f != 0.0 {
                    for c in 0..self.cols {
                        self.d[c] -= f * self.at(r, c);
                    }
                }
            }
        }
        if step <= RATIO_TOL {
            self.degenerate_streak += 1;
            if self.degenerate_streak > 5 * (self.rows + self.cols) {
                self.bland = true;
            }
        } else {
            self.degenerate_streak = 0;
        }
    }

    /// Runs the simplex until optimality or unboundedness.
    fn optimize(&mut self) -> LpStatus {
        let cap = 2000 + 400 * (self.rows + self.cols);
        for _ in 0..cap {
            let Some((enter, dir)) = self.price() else {
                return LpStatus::Optimal;
            };
            let (step, block) = self.ratio_test(enter, dir);
            if step.is_infinite() {
                return LpStatus::Unbounded;
            }
            self.pivot(enter, dir, step, block);
        }
        panic!("simplex iteration cap exceeded ({cap} pivots)");
    }
}

/// Solves the LP relaxation (integrality flags ignored).
pub fn solve_lp(prog: &LinearProgram) -> LpSolution {
    let n = prog.num_vars();
    for j in 0..n {
        assert!(prog.lower[j] <= prog.upper[j], "bounds out of order on column {j}");
    }

    // Layout: structural vars, one slack per inequality, one artificial per row.
    let num_slack = prog.rows.iter().filter(|r| r.relation != Relation::Eq).count();
    let cols = n + num_slack + prog.rows.len();
    let rows = prog.rows.len();

    let mut lower = vec![0.0; cols];
    let mut upper = vec![0.0; cols];
    lower[..n].copy_from_slice(&prog.lower);
    upper[..n].copy_from_slice(&prog.upper);

    let mut dense = vec![0.0; rows * cols];
    let mut rhs = vec![0.0; rows];
    let mut slack_idx = n;
    for (r, row) in prog.rows.iter().enumerate() {
        for &(j, c) in &row.coeffs {
            dense[r * cols + j] += c;
        }
        rhs[r] = row.rhs;
        match row.relation {
            Relation::Le => {
                dense[r * cols + slack_idx] = 1.0;
                lower[slack_idx] = 0.0;
                upper[slack_idx] = f64::INFINITY;
                slack_idx += 1;
            }
            Relation::Ge => {
                dense[r * cols + slack_idx] = -1.0;
                lower[slack_idx] = 0.0;
                upper[slack_idx] = f64::INFINITY;
                slack_idx += 1;
            }
            Relation::Eq => {}
        }
    }

    // Start the structural and slack variables at a bound (free ones at 0).
    let mut x = vec![0.0; cols];
    let mut state = vec![VarState::AtLower; cols];
    for j in 0..n + num_slack {
        if lower[j].is_finite() {
            x[j] = lower[j];
            state[j] = VarState::AtLower;
        } else if upper[j].is_finite() {
            x[j] = upper[j];
            state[j] = VarState::AtUpper;
        } else {
            x[j] = 0.0;
            state[j] = VarState::FreeZero;
        }
    }

    // Artificial columns close the residual gap and form the initial basis.
    let mut basis = Vec::with_capacity(rows);
    for r in 0..rows {
        let mut residual = rhs[r];
        for j in 0..n + num_slack {
            residual -= dense[r * cols + j] * x[j];
        }
        let a = n + num_slack + r;
        let sign = if residual < 0.0 { -1.0 } else { 1.0 };
        dense[r * cols + a] = sign;
        if sign < 0.0 {
            for j in 0..n + num_slack {
                dense[r * cols + j] = -dense[r * cols + j];
            }
        }
        lower[a] = 0.0;
        upper[a] = f64::INFINITY;
        x[a] = residual.abs();
        state[a] = VarState::Basic(r);
        basis.push(a);
    }

    let mut tab = Tableau {
        cols,
        rows,
        t: dense,
        x,
        lower,
        upper,
        state,
        basis,
        d: vec![0.0; cols],
        frozen: vec![false; cols],
        degenerate_streak: 0,
        bland: false,
    };

    // Phase 1: maximize minus the artificial sum.
    let mut costs = vec![0.0; cols];
    costs[n + num_slack..cols].fill(-1.0);
    tab.set_costs(&costs);
    match tab.optimize() {
        LpStatus::Optimal => {}
        LpStatus::Unbounded => unreachable!("phase 1 objective is bounded"),
        LpStatus::Infeasible => unreachable!(),
    }
    let infeasibility: f64 = (n + num_slack..cols).map(|a| tab.x[a]).sum();
    if infeasibility > FEAS_TOL {
        return LpSolution { status: LpStatus::Infeasible, objective: f64::NAN, values: Vec::new() };
    }

    // Pin the artificials to zero and never price them again.
    for a in n + num_slack..cols {
        tab.lower[a] = 0.0;
        tab.upper[a] = 0.0;
        tab.frozen[a] = true;
        tab.x[a] = 0.0;
    }

    // Phase 2 with the real objective.
    let mut costs = vec![0.0; cols];
    costs[..n].copy_from_slice(&prog.objective);
    tab.set_costs(&costs);
    tab.degenerate_streak = 0;
    tab.bland = false;
    match tab.optimize() {
        LpStatus::Optimal => {
            let values: Vec<f64> = tab.x[..n].to_vec();
            let objective = prog.objective_value(&values);
            LpSolution { status: LpStatus::Optimal, objective, values }
        }
        LpStatus::Unbounded => {
            LpSolution { status: LpStatus::Unbounded, objective: f64::INFINITY, values: Vec::new() }
        }
        LpStatus::Infeasible => unreachable!(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MipStatus {
    /// Proven optimal (or proven infeasible with no incumbent).
    Optimal,
    Infeasible,
    /// Deadline hit; the incumbent, if any, is the best known.
    TimeLimit,
}

#[derive(Debug, Clone)]
pub struct MipResult {
    pub status: MipStatus,
    pub objective: f64,
    pub values: Vec<f64>,
    /// Valid upper bound on the optimum at return time.
    pub best_bound: f64,
}

const INT_TOL: f64 = 1e-6;

/// Exact 0-1 optimum by LP-based branch-and-bound, best-first on the LP
/// bound. `incumbent` may seed the search with a known feasible point.
pub fn solve_mip(
    prog: &LinearProgram,
    time_limit: Option<Duration>,
    incumbent: Option<(Vec<f64>, f64)>,
) -> MipResult {
    if !prog.integral.iter().any(|&b| b) {
        let sol = solve_lp(prog);
        return MipResult {
            status: match sol.status {
                LpStatus::Optimal => MipStatus::Optimal,
                LpStatus::Infeasible => MipStatus::Infeasible,
                LpStatus::Unbounded => panic!("unbounded relaxation in mip"),
            },
            best_bound: sol.objective,
            objective: sol.objective,
            values: sol.values,
        };
    }

    let start = Instant::now();
    let mut best: Option<(Vec<f64>, f64)> = incumbent;

    // Depth-limited stack would bias the bound; keep a sorted frontier.
    struct Node {
        bound: f64,
        id: u64,
        overrides: Vec<(usize, f64, f64)>,
    }
    let mut frontier: Vec<Node> = vec![Node { bound: f64::INFINITY, id: 0, overrides: Vec::new() }];
    let mut next_id = 1u64;
    let mut timed_out = false;

    while let Some(pos) = frontier
        .iter()
        .enumerate()
        .max_by(|(_, a), (_, b)| {
            a.bound.partial_cmp(&b.bound).unwrap().then(b.id.cmp(&a.id))
        })
        .map(|(i, _)| i)
    {
        if frontier[pos].bound <= best.as_ref().map_or(f64::NEG_INFINITY, |b| b.1) + 1e-9 {
            frontier.remove(pos);
            continue;
        }
        if let Some(limit) = time_limit {
            if start.elapsed() >= limit {
                timed_out = true;
                break;
            }
        }
        let node = frontier.remove(pos);

        let mut sub = prog.clone();
        for &(j, lo, hi) in &node.overrides {
            sub.lower[j] = lo;
            sub.upper[j] = hi;
        }
        let relax = solve_lp(&sub);
        if relax.status != LpStatus::Optimal {
            continue;
        }
        if relax.objective <= best.as_ref().map_or(f64::NEG_INFINITY, |b| b.1) + 1e-9 {
            continue;
        }

        // Most fractional binary, ties by column index.
        let mut branch: Option<(usize, f64)> = None;
        for j in 0..prog.num_vars() {
            if !prog.integral[j] {
                continue;
            }
            let f = relax.values[j] - relax.values[j].floor();
            let dist = f.min(1.0 - f);
            if dist > INT_TOL {
                match branch {
                    Some((_, bd)) if bd >= dist => {}
                    _ => branch = Some((j, dist)),
                }
            }
        }
        match branch {
            None => {
                let val = relax.objective;
                if best.as_ref().is_none_or(|b| val > b.1 + 1e-9) {
                    best = Some((relax.values, val));
                }
            }
            Some((j, _)) => {
                let x = relax.values[j];
                let mut down = node.overrides.clone();
                down.push((j, prog.lower[j], x.floor()));
                let mut up = node.overrides;
                up.push((j, x.ceil(), prog.upper[j]));
                frontier.push(Node { bound: relax.objective, id: next_id, overrides: down });
                frontier.push(Node { bound: relax.objective, id: next_id + 1, overrides: up });
                next_id += 2;
            }
        }
    }

    let open_bound = frontier.iter().map(|n| n.bound).fold(f64::NEG_INFINITY, f64::max);
    match best {
        Some((values, objective)) => MipResult {
            status: if timed_out { MipStatus::TimeLimit } else { MipStatus::Optimal },
            best_bound: if timed_out { open_bound.max(objective) } else { objective },
            objective,
            values,
        },
        None => MipResult {
            status: if timed_out { MipStatus::TimeLimit } else { MipStatus::Infeasible },
            objective: f64::NEG_INFINITY,
            values: Vec::new(),
            best_bound: open_bound,
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn simple(obj: &[f64], bounds: &[(f64, f64)]) -> LinearProgram {
        let mut p = LinearProgram::default();
        for (c, &(lo, hi)) in obj.iter().zip(bounds) {
            p.add_var(*c, lo, hi, false);
        }
        p
    }

    #[test]
    fn box_maximum() {
        let p = simple(&[1.0], &[(0.0, 5.0)]);
        let s = solve_lp(&p);
        assert_eq!(s.status, LpStatus::Optimal);
        assert!((s.objective - 5.0).abs() < 1e-9);
    }

    #[test]
    fn shared_budget() {
        let mut p = simple(&[1.0, 1.0], &[(0.0, 1.0), (0.0, 1.0)]);
        p.add_row(vec![(0, 1.0), (1, 1.0)], Relation::Le, 1.0);
        let s = solve_lp(&p);
        assert!((s.objective - 1.0).abs() < 1e-9);
        assert!(p.max_violation(&s.values) < 1e-9);
    }

    #[test]
    fn equality_and_free_variables() {
        // max y s.t. y = 2x - 3, x in [0, 4], y free.
        let mut p = LinearProgram::default();
        let x = p.add_var(0.0, 0.0, 4.0, false);
        let y = p.add_var(1.0, f64::NEG_INFINITY, f64::INFINITY, false);
        p.add_row(vec![(y, 1.0), (x, -2.0)], Relation::Eq, -3.0);
        let s = solve_lp(&p);
        assert_eq!(s.status, LpStatus::Optimal);
        assert!((s.objective - 5.0).abs() < 1e-9, "got {}", s.objective);
    }

    #[test]
    fn detects_infeasible() {
        let mut p = simple(&[1.0], &[(0.0, 1.0)]);
        p.add_row(vec![(0, 1.0)], Relation::Ge, 2.0);
        assert_eq!(solve_lp(&p).status, LpStatus::Infeasible);
    }

    #[test]
    fn detects_unbounded() {
        let mut p = simple(&[1.0], &[(0.0, f64::INFINITY)]);
        p.add_row(vec![(0, -1.0)], Relation::Le, 0.0);
        assert_eq!(solve_lp(&p).status, LpStatus::Unbounded);
    }

    #[test]
    fn ge_rows_and_negative_rhs() {
        // max -x + y, x >= 2, y <= x - 1, y >= 0.
        let mut p = simple(&[-1.0, 1.0], &[(0.0, 10.0), (0.0, 10.0)]);
        p.add_row(vec![(0, 1.0)], Relation::Ge, 2.0);
        p.add_row(vec![(1, 1.0), (0, -1.0)], Relation::Le, -1.0);
        let s = solve_lp(&p);
        assert_eq!(s.status, LpStatus::Optimal);
        assert!((s.objective - (-1.0)).abs() < 1e-9, "got {}", s.objective);
    }

    #[test]
    fn determinism_across_runs() {
        let mut p = simple(
            &[3.0, 1.0, 4.0, 1.0, 5.0],
            &[(0.0, 2.0), (0.0, 2.0), (0.0, 2.0), (0.0, 2.0), (0.0, 2.0)],
        );
        p.add_row(vec![(0, 1.0), (1, 2.0), (2, 1.0)], Relation::Le, 3.0);
        p.add_row(vec![(2, 1.0), (3, 1.0), (4, 2.0)], Relation::Le, 4.0);
        p.add_row(vec![(0, 1.0), (4, 1.0)], Relation::Ge, 1.0);
        let a = solve_lp(&p);
        let b = solve_lp(&p);
        assert_eq!(a.objective.to_bits(), b.objective.to_bits());
        assert_eq!(
            a.values.iter().map(|v| v.to_bits()).collect::<Vec<_>>(),
            b.values.iter().map(|v| v.to_bits()).collect::<Vec<_>>()
        );
    }

    /// Seeded random programs over boxed variables with a handful of rows.
    fn random_program(seed: u64) -> LinearProgram {
        let mut s = seed;
        let mut next = move || {
            s = s.wrapping_add(0x9E37_79B9_7F4A_7C15);
            let mut z = s;
            z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
            z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
            z ^ (z >> 31)
        };
        let vars = 2 + (next() % 6) as usize;
        let mut p = LinearProgram::default();
        for _ in 0..vars {
            let c = (next() % 21) as f64 - 10.0;
            p.add_var(c, 0.0, 1.0 + (next() % 10) as f64, false);
        }
        for _ in 0..1 + next() % 4 {
            let coeffs: Vec<(usize, f64)> =
                (0..vars).map(|j| (j, (next() % 11) as f64 - 5.0)).collect();
            let relation = match next() % 3 {
                0 => Relation::Le,
                1 => Relation::Ge,
                _ => Relation::Eq,
            };
            let rhs = (next() % 41) as f64 - 10.0;
            p.add_row(coeffs, relation, rhs);
        }
        p
    }

    #[test]
    fn optima_have_tiny_residuals() {
        for seed in 0..200u64 {
            let p = random_program(seed);
            let sol = solve_lp(&p);
            if sol.status != LpStatus::Optimal {
                continue;
            }
            assert!(
                p.max_violation(&sol.values) <= 1e-7,
                "seed {seed}: residual {}",
                p.max_violation(&sol.values)
            );
            for (j, &v) in sol.values.iter().enumerate() {
                assert!(
                    v >= p.lower[j] - 1e-9 && v <= p.upper[j] + 1e-9,
                    "seed {seed}: column {j} out of bounds"
                );
            }
        }
    }

    #[test]
    fn feasible_points_never_beat_the_reported_optimum() {
        let mut misses = 0;
        for seed in 0..200u64 {
            let p = random_program(seed);
            let sol = solve_lp(&p);
            if sol.status != LpStatus::Optimal {
                continue;
            }
            let mut s = seed ^ 0xF00D;
            for _ in 0..50 {
                let point: Vec<f64> = (0..p.num_vars())
                    .map(|j| {
                        s = s.wrapping_mul(6364136223846793005).wrapping_add(1);
                        let u = (s >> 11) as f64 / (1u64 << 53) as f64;
                        p.lower[j] + u * (p.upper[j] - p.lower[j])
                    })
                    .collect();
                if p.max_violation(&point) <= 1e-9 {
                    assert!(
                        p.objective_value(&point) <= sol.objective + 1e-7,
                        "seed {seed}: feasible point beats the optimum"
                    );
                    misses += 1;
                }
            }
        }
        assert!(misses > 100, "too few feasible sample points ({misses}) to mean much");
    }

    #[test]
    fn mip_matches_lp_without_flags() {
        let mut p = simple(&[2.0, 1.0], &[(0.0, 1.0), (0.0, 1.0)]);
        p.add_row(vec![(0, 1.0), (1, 1.0)], Relation::Le, 1.5);
        let lp = solve_lp(&p);
        let mip = solve_mip(&p, None, None);
        assert_eq!(mip.status, MipStatus::Optimal);
        assert!((mip.objective - lp.objective).abs() < 1e-9);
    }

    #[test]
    fn tiny_knapsack() {
        // max 3a + 2b, 2a + 2b <= 3, binaries: optimum picks a alone.
        let mut p = LinearProgram::default();
        p.add_var(3.0, 0.0, 1.0, true);
        p.add_var(2.0, 0.0, 1.0, true);
        p.add_row(vec![(0, 2.0), (1, 2.0)], Relation::Le, 3.0);
        let s = solve_mip(&p, None, None);
        assert_eq!(s.status, MipStatus::Optimal);
        assert!((s.objective - 3.0).abs() < 1e-9);
        assert!((s.values[0] - 1.0).abs() < 1e-6);
        assert!(s.values[1].abs() < 1e-6);
    }

    #[test]
    fn mip_detects_infeasible_binaries() {
        let mut p = LinearProgram::default();
        p.add_var(1.0, 0.0, 1.0, true);
        p.add_row(vec![(0, 2.0)], Relation::Eq, 1.0);
        assert_eq!(solve_mip(&p, None, None).status, MipStatus::Infeasible);
    }
}
