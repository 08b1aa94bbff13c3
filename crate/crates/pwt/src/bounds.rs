//! Piecewise-linear bound models.
//!
//! Travel time per distance unit is `t(v) = 1/v`, a convex curve. Chords over
//! a uniform partition of `[t_min, t_max]` overestimate it, which
//! underestimates the reward and yields a lower bound; tangents drawn in the
//! same breakpoints underestimate the time and yield an upper bound. Both
//! bounds solve as LPs (or mixed 0-1 programs) over convex-combination
//! weights per edge, with per-edge breakpoint sets trimmed to the velocity
//! range the edge can actually see.

use crate::lp::{solve_lp, solve_mip, LinearProgram, LpStatus, MipStatus, Relation};
use crate::preprocess::{ItemLabel, Reduction};
use crate::problem::{evaluate_objective, Instance, PackingPlan};
use crate::Error;

/// One endpoint of a linear segment approximating `t(v) = 1/v`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Breakpoint {
    pub velocity: f64,
    pub time: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundFlavor {
    /// Points on the curve; interpolation overestimates the time.
    Chord,
    /// Tangent envelope points; interpolation underestimates the time.
    Tangent,
}

/// Per-edge breakpoint sets for one value of `lambda`.
#[derive(Debug, Clone)]
pub struct PiecewiseModel {
    pub lambda: usize,
    pub flavor: BoundFlavor,
    /// Velocity range `[v_lo, v_hi]` reachable on each edge.
    pub edge_ranges: Vec<(f64, f64)>,
    /// Breakpoints per edge, sorted by ascending velocity.
    pub edge_points: Vec<Vec<Breakpoint>>,
    /// Percentage of breakpoints retained relative to `lambda * n`.
    pub beta: f64,
}

/// Chord breakpoints: the interval `[t_min, t_max]` is split into `lambda`
/// equal sub-intervals; each edge keeps the segments its velocity range
/// intersects.
pub fn build_chord_breakpoints(
    inst: &Instance,
    red: &Reduction,
    lambda: usize,
) -> Result<PiecewiseModel, Error> {
    if lambda < 1 {
        return Err(Error::invariant("lambda must be at least 1"));
    }
    let n = inst.edges();
    let t_min = 1.0 / inst.v_max;
    let t_max = 1.0 / inst.v_min;
    let h = (t_max - t_min) / lambda as f64;
    let grid: Vec<f64> = (0..=lambda).map(|s| t_min + s as f64 * h).collect();

    let mut edge_ranges = Vec::with_capacity(n);
    let mut edge_points = Vec::with_capacity(n);
    let mut kept_points = 0usize;
    for i in 1..=n {
        let v_hi = inst.velocity_at(red.prefix_compulsory[i - 1]);
        let v_lo = inst.velocity_at(red.prefix_max[i - 1].min(inst.capacity()));
        debug_assert!(v_lo <= v_hi + 1e-12);
        edge_ranges.push((v_lo, v_hi));

        let mut points = Vec::new();
        if h <= 0.0 {
            points.push(Breakpoint { velocity: inst.v_max, time: t_min });
        } else {
            // Edge range in time units.
            let et_lo = 1.0 / v_hi;
            let et_hi = 1.0 / v_lo;
            let eps = 1e-9 * h;
            let mut first_kept = None;
            let mut last_kept = 0;
            for s in 1..=lambda {
                if grid[s - 1] <= et_hi + eps && grid[s] >= et_lo - eps {
                    first_kept.get_or_insert(s);
                    last_kept = s;
                }
            }
            let first = first_kept.expect("edge range always meets the grid");
            for &t in &grid[first - 1..=last_kept] {
                points.push(Breakpoint { velocity: 1.0 / t, time: t });
            }
            points.reverse(); // ascending velocity
        }
        kept_points += points.len();
        edge_points.push(points);
    }
    let beta = 100.0 * kept_points as f64 / (lambda * n) as f64;
    Ok(PiecewiseModel { lambda, flavor: BoundFlavor::Chord, edge_ranges, edge_points, beta })
}

/// Replaces each edge's chord points by the tangent envelope: the outermost
/// curve points plus the intersections of tangents at neighboring
/// breakpoints. The tangent at `v_b` is `t = 2/v_b - v/v_b^2`; tangents at
/// `a` and `b` cross at `v = 2ab/(a+b)`, `t = 2/(a+b)`.
pub fn build_tangent_breakpoints(model: &PiecewiseModel) -> PiecewiseModel {
    assert_eq!(model.flavor, BoundFlavor::Chord, "tangent construction starts from chords");
    let mut edge_points = Vec::with_capacity(model.edge_points.len());
    let mut kept = 0usize;
    for points in &model.edge_points {
        let mut out = Vec::with_capacity(points.len() + 1);
        let first = points[0];
        out.push(Breakpoint { velocity: first.velocity, time: 1.0 / first.velocity });
        for pair in points.windows(2) {
            let (a, b) = (pair[0].velocity, pair[1].velocity);
            out.push(Breakpoint { velocity: 2.0 * a * b / (a + b), time: 2.0 / (a + b) });
        }
        if points.len() > 1 {
            let last = points[points.len() - 1];
            out.push(Breakpoint { velocity: last.velocity, time: 1.0 / last.velocity });
        }
        kept += out.len();
        edge_points.push(out);
    }
    let n = model.edge_points.len();
    PiecewiseModel {
        lambda: model.lambda,
        flavor: BoundFlavor::Tangent,
        edge_ranges: model.edge_ranges.clone(),
        edge_points,
        beta: 100.0 * kept as f64 / (model.lambda * n) as f64,
    }
}

/// Column layout of a bound program.
#[derive(Debug, Clone)]
pub struct BoundVars {
    /// Undecided item ids in column order.
    pub items: Vec<usize>,
    /// First x column (always 0).
    pub x_start: usize,
    /// First y column of each edge.
    pub y_start: Vec<usize>,
    /// w_i columns.
    pub w: Vec<usize>,
    /// p_i columns.
    pub p: Vec<usize>,
}

/// Builds the bound program for `model`: profit and weight recursions per
/// edge, a velocity balance tying the convex-combination weights to the load,
/// and the capacity row. Maximizes the final profit variable.
pub fn build_bound_program(
    inst: &Instance,
    red: &Reduction,
    model: &PiecewiseModel,
    integral: bool,
) -> Result<(LinearProgram, BoundVars), Error> {
    let n = inst.edges();
    if model.edge_points.len() != n {
        return Err(Error::invariant("piecewise model does not match the instance"));
    }
    let mut prog = LinearProgram::default();
    let items = red.undecided.clone();
    for _ in &items {
        prog.add_var(0.0, 0.0, 1.0, integral);
    }
    let mut y_start = Vec::with_capacity(n);
    for points in &model.edge_points {
        y_start.push(prog.num_vars());
        for _ in points {
            prog.add_var(0.0, 0.0, 1.0, false);
        }
    }
    let w: Vec<usize> = (0..n).map(|_| prog.add_var(0.0, 0.0, f64::INFINITY, false)).collect();
    let p: Vec<usize> =
        (0..n).map(|_| prog.add_var(0.0, f64::NEG_INFINITY, f64::INFINITY, false)).collect();
    prog.objective[p[n - 1]] = 1.0;

    let col_of_item: std::collections::HashMap<usize, usize> =
        items.iter().enumerate().map(|(c, &e)| (e, c)).collect();

    for i in 1..=n {
        let d = inst.distances()[i - 1];
        // Profit recursion.
        let mut row = vec![(p[i - 1], 1.0)];
        if i > 1 {
            row.push((p[i - 2], -1.0));
        }
        for &e in inst.city_items(i) {
            if let Some(&c) = col_of_item.get(&e) {
                row.push((c, -inst.item(e).profit));
            }
        }
        for (b, point) in model.edge_points[i - 1].iter().enumerate() {
            row.push((y_start[i - 1] + b, inst.rent * d * point.time));
        }
        prog.add_row(row, Relation::Eq, red.city_compulsory_profit[i - 1]);

        // Weight recursion.
        let mut row = vec![(w[i - 1], 1.0)];
        if i > 1 {
            row.push((w[i - 2], -1.0));
        }
        for &e in inst.city_items(i) {
            if let Some(&c) = col_of_item.get(&e) {
                row.push((c, -inst.item(e).weight));
            }
        }
        prog.add_row(row, Relation::Eq, red.city_compulsory_weight[i - 1]);

        // Velocity balance.
        let mut row = vec![(w[i - 1], inst.nu())];
        for (b, point) in model.edge_points[i - 1].iter().enumerate() {
            row.push((y_start[i - 1] + b, point.velocity));
        }
        prog.add_row(row, Relation::Eq, inst.v_max);

        // Convex combination.
        let row: Vec<(usize, f64)> = (0..model.edge_points[i - 1].len())
            .map(|b| (y_start[i - 1] + b, 1.0))
            .collect();
        prog.add_row(row, Relation::Eq, 1.0);
    }
    prog.add_row(vec![(w[n - 1], 1.0)], Relation::Le, inst.capacity());

    Ok((prog, BoundVars { items, x_start: 0, y_start, w, p }))
}

/// Result of a lower-bound solve.
#[derive(Debug, Clone)]
pub struct LowerBound {
    /// Exact objective of the extracted plan; always a valid lower bound.
    pub value: f64,
    pub plan: PackingPlan,
    /// Optimum of the chord model itself.
    pub model_value: f64,
    pub beta: f64,
}

/// Solves the chord model at `lambda` and re-evaluates the extracted plan
/// exactly. In relaxed mode fractional selections are rounded at 0.5 and
/// repaired by dropping the worst profit/weight picks until feasible.
pub fn solve_lower_bound(
    inst: &Instance,
    red: &Reduction,
    lambda: usize,
    integral: bool,
) -> Result<LowerBound, Error> {
    let model = build_chord_breakpoints(inst, red, lambda)?;
    let (prog, vars) = build_bound_program(inst, red, &model, integral)?;
    let (model_value, values) = run_bound_program(&prog, integral);

    let mut chosen: Vec<usize> = vars
        .items
        .iter()
        .enumerate()
        .filter(|(c, _)| values[*c] >= 0.5)
        .map(|(_, &e)| e)
        .collect();
    let mut weight: f64 = red.prefix_compulsory.last().copied().unwrap_or(0.0)
        + chosen.iter().map(|&e| inst.item(e).weight).sum::<f64>();
    while weight > inst.capacity() && !chosen.is_empty() {
        let worst = chosen
            .iter()
            .enumerate()
            .min_by(|(_, &a), (_, &b)| {
                let ra = ratio(inst, a);
                let rb = ratio(inst, b);
                ra.partial_cmp(&rb).unwrap().then(b.cmp(&a))
            })
            .map(|(k, _)| k)
            .unwrap();
        weight -= inst.item(chosen[worst]).weight;
        chosen.remove(worst);
    }
    let plan = red.complete_plan(inst, &chosen);
    let value = evaluate_objective(inst, &plan);
    Ok(LowerBound { value, plan, model_value, beta: model.beta })
}

fn ratio(inst: &Instance, e: usize) -> f64 {
    let it = inst.item(e);
    if it.weight > 0.0 {
        it.profit / it.weight
    } else {
        f64::INFINITY
    }
}

/// Solves the tangent model at `lambda` under a partial assignment of the
/// undecided items; accepted items are folded in as compulsory, rejected ones
/// leave the city maxima. Returns negative infinity when the accepted weight
/// already breaks the capacity.
pub fn solve_upper_bound(
    inst: &Instance,
    red: &Reduction,
    lambda: usize,
    integral: bool,
    fixed: &[(usize, bool)],
) -> Result<f64, Error> {
    let eff = apply_assignment(inst, red, fixed);
    if eff.prefix_compulsory.last().copied().unwrap_or(0.0) > inst.capacity() + 1e-9 {
        return Ok(f64::NEG_INFINITY);
    }
    let chord = build_chord_breakpoints(inst, &eff, lambda)?;
    let tangent = build_tangent_breakpoints(&chord);
    let (prog, _) = build_bound_program(inst, &eff, &tangent, integral)?;
    let (value, _) = run_bound_program(&prog, integral);
    Ok(value)
}

/// Reduction with a partial assignment folded in: accepted items become
/// compulsory, rejected ones unprofitable.
pub fn apply_assignment(inst: &Instance, red: &Reduction, fixed: &[(usize, bool)]) -> Reduction {
    let mut labels: Vec<ItemLabel> = red.labels().to_vec();
    for &(e, accept) in fixed {
        debug_assert!(labels[e].undecided(), "assignment touches a decided item");
        if accept {
            labels[e].compulsory = true;
        } else {
            labels[e].unprofitable = true;
        }
    }
    Reduction::from_labels(inst, labels)
}

fn run_bound_program(prog: &LinearProgram, integral: bool) -> (f64, Vec<f64>) {
    if integral {
        let sol = solve_mip(prog, None, None);
        assert_eq!(sol.status, MipStatus::Optimal, "bound model must be solvable");
        (sol.objective, sol.values)
    } else {
        let sol = solve_lp(prog);
        assert_eq!(sol.status, LpStatus::Optimal, "bound model must be solvable");
        (sol.objective, sol.values)
    }
}
