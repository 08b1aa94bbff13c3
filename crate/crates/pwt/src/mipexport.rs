//! Exact linearized model export in LP text format.
//!
//! The fractional objective is rewritten with per-edge time variables
//! `y_i = 1/velocity_i` and products `z^i_jk = x_jk * y_i`, each product
//! linearized through four rows using the edge bounds `L_i <= y_i <= U_i`.
//! The document targets external MIP solvers; a verifier replays returned
//! assignments against every row and against the exact nonlinear objective.

use std::collections::BTreeMap;

use crate::bounds::{solve_lower_bound, solve_upper_bound};
use crate::lp::Relation;
use crate::numfmt::sig12;
use crate::preprocess::Reduction;
use crate::problem::{evaluate_objective, Instance};
use crate::Error;

/// Per-edge bounds on the time-per-distance variable.
#[derive(Debug, Clone)]
pub struct EdgeVarBounds {
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
}

/// `L_i` is the time at the compulsory load, `U_i` the time at the maximal
/// (capacity-clamped) load; both nondecreasing along the route.
pub fn compute_var_bounds(inst: &Instance, red: &Reduction) -> EdgeVarBounds {
    let n = inst.edges();
    let mut lower = Vec::with_capacity(n);
    let mut upper = Vec::with_capacity(n);
    for i in 0..n {
        lower.push(1.0 / inst.velocity_at(red.prefix_compulsory[i]));
        upper.push(1.0 / inst.velocity_at(red.prefix_max[i].min(inst.capacity())));
    }
    EdgeVarBounds { lower, upper }
}

/// One named constraint row of a document.
#[derive(Debug, Clone, PartialEq)]
pub struct DocRow {
    pub name: String,
    pub terms: Vec<(String, f64)>,
    pub relation: Relation,
    pub rhs: f64,
}

/// A parsed or freshly built LP document.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct LpDocument {
    pub objective_constant: f64,
    pub objective: Vec<(String, f64)>,
    pub rows: Vec<DocRow>,
    /// `lo <= var <= hi` lines.
    pub bounds: Vec<(String, f64, f64)>,
    pub binaries: Vec<String>,
}

impl LpDocument {
    /// Every variable name referenced anywhere, first occurrence order.
    pub fn variables(&self) -> Vec<String> {
        let mut seen = std::collections::BTreeSet::new();
        let mut out = Vec::new();
        let mut push = |name: &String| {
            if seen.insert(name.clone()) {
                out.push(name.clone());
            }
        };
        for (v, _) in &self.objective {
            push(v);
        }
        for row in &self.rows {
            for (v, _) in &row.terms {
                push(v);
            }
        }
        for (v, _, _) in &self.bounds {
            push(v);
        }
        for v in &self.binaries {
            push(v);
        }
        out
    }
}

/// Exported model plus its sidecar metadata document.
#[derive(Debug, Clone)]
pub struct MipExport {
    pub document: String,
    pub metadata: String,
}

fn x_name(inst: &Instance, e: usize) -> String {
    format!("x_{}_{}", inst.item(e).city, inst.index_in_city(e))
}

fn z_name(inst: &Instance, edge: usize, e: usize) -> String {
    format!("z_{}_{}_{}", edge, inst.item(e).city, inst.index_in_city(e))
}

/// Builds the linearized document. With `lambda > 0` the objective is also
/// clamped between the piecewise bounds computed at that `lambda`; with
/// `with_rlt` the capacity row is multiplied through by `y_l`, `U_l - y_l`
/// and `y_l - L_l` for every edge, which needs products of every item with
/// every edge rather than only the edges the item rides on.
pub fn export_mip(
    inst: &Instance,
    red: &Reduction,
    name: &str,
    lambda: usize,
    with_rlt: bool,
) -> Result<MipExport, Error> {
    let n = inst.edges();
    let bounds = compute_var_bounds(inst, red);
    let undecided = &red.undecided;
    let compulsory_profit: f64 = red.city_compulsory_profit.iter().sum();
    let compulsory_weight: f64 = red.city_compulsory_weight.iter().sum();
    let residual_capacity = inst.capacity() - compulsory_weight;

    let mut doc = LpDocument { objective_constant: compulsory_profit, ..Default::default() };
    for &e in undecided {
        doc.objective.push((x_name(inst, e), inst.item(e).profit));
    }
    for i in 1..=n {
        doc.objective.push((format!("y_{i}"), -inst.rent * inst.distances()[i - 1]));
    }

    // Velocity balance per edge: (v_max - nu*compulsory_prefix) y_i equals 1
    // plus nu times the weight of selected items riding the edge.
    for i in 1..=n {
        let mut terms =
            vec![(format!("y_{i}"), inst.v_max - inst.nu() * red.prefix_compulsory[i - 1])];
        for &e in undecided {
            if inst.item(e).city <= i {
                terms.push((z_name(inst, i, e), -inst.nu() * inst.item(e).weight));
            }
        }
        doc.rows.push(DocRow {
            name: format!("balance_{i}"),
            terms,
            relation: Relation::Eq,
            rhs: 1.0,
        });
    }

    // Product linearization rows.
    for i in 1..=n {
        let (l, u) = (bounds.lower[i - 1], bounds.upper[i - 1]);
        for &e in undecided {
            let rides = inst.item(e).city <= i;
            if !rides && !with_rlt {
                continue;
            }
            let z = z_name(inst, i, e);
            let x = x_name(inst, e);
            let y = format!("y_{i}");
            let suffix = format!("{}_{}_{}", i, inst.item(e).city, inst.index_in_city(e));
            doc.rows.push(DocRow {
                name: format!("lin1_{suffix}"),
                terms: vec![(z.clone(), 1.0), (x.clone(), -u)],
                relation: Relation::Le,
                rhs: 0.0,
            });
            doc.rows.push(DocRow {
                name: format!("lin2_{suffix}"),
                terms: vec![(z.clone(), 1.0), (x.clone(), -l)],
                relation: Relation::Ge,
                rhs: 0.0,
            });
            doc.rows.push(DocRow {
                name: format!("lin3_{suffix}"),
                terms: vec![(z.clone(), 1.0), (y.clone(), -1.0), (x.clone(), -u)],
                relation: Relation::Ge,
                rhs: -u,
            });
            doc.rows.push(DocRow {
                name: format!("lin4_{suffix}"),
                terms: vec![(z, 1.0), (y, -1.0), (x, -l)],
                relation: Relation::Le,
                rhs: -l,
            });
        }
    }

    // Capacity over the undecided items.
    doc.rows.push(DocRow {
        name: "capacity".to_string(),
        terms: undecided.iter().map(|&e| (x_name(inst, e), inst.item(e).weight)).collect(),
        relation: Relation::Le,
        rhs: residual_capacity,
    });

    // Objective clamps from the piecewise bounds.
    if lambda > 0 {
        let lb = solve_lower_bound(inst, red, lambda, false)?;
        let ub = solve_upper_bound(inst, red, lambda, false, &[])?;
        let expr: Vec<(String, f64)> = doc.objective.clone();
        doc.rows.push(DocRow {
            name: "obj_lb".to_string(),
            terms: expr.clone(),
            relation: Relation::Ge,
            rhs: lb.value - compulsory_profit,
        });
        doc.rows.push(DocRow {
            name: "obj_ub".to_string(),
            terms: expr,
            relation: Relation::Le,
            rhs: ub - compulsory_profit,
        });
    }

    if with_rlt {
        for l in 1..=n {
            let (lo, up) = (bounds.lower[l - 1], bounds.upper[l - 1]);
            let y = format!("y_{l}");
            let w_of = |e: usize| inst.item(e).weight;

            let mut t1: Vec<(String, f64)> =
                undecided.iter().map(|&e| (z_name(inst, l, e), w_of(e))).collect();
            t1.push((y.clone(), -residual_capacity));
            doc.rows.push(DocRow {
                name: format!("rlt1_{l}"),
                terms: t1,
                relation: Relation::Le,
                rhs: 0.0,
            });

            let mut t2: Vec<(String, f64)> = Vec::new();
            for &e in undecided {
                t2.push((x_name(inst, e), up * w_of(e)));
                t2.push((z_name(inst, l, e), -w_of(e)));
            }
            t2.push((y.clone(), residual_capacity));
            doc.rows.push(DocRow {
                name: format!("rlt2_{l}"),
                terms: t2,
                relation: Relation::Le,
                rhs: up * residual_capacity,
            });

            let mut t3: Vec<(String, f64)> = Vec::new();
            for &e in undecided {
                t3.push((z_name(inst, l, e), w_of(e)));
                t3.push((x_name(inst, e), -lo * w_of(e)));
            }
            t3.push((y, -residual_capacity));
            doc.rows.push(DocRow {
                name: format!("rlt3_{l}"),
                terms: t3,
                relation: Relation::Le,
                rhs: -lo * residual_capacity,
            });
        }
    }

    for i in 1..=n {
        doc.bounds.push((format!("y_{i}"), bounds.lower[i - 1], bounds.upper[i - 1]));
    }
    doc.binaries = undecided.iter().map(|&e| x_name(inst, e)).collect();

    let z_count = doc.variables().iter().filter(|v| v.starts_with("z_")).count();
    let metadata = format!(
        "format-version=1\nname={name}\nlambda={lambda}\nrlt={with_rlt}\nvars-x={}\nvars-y={}\nvars-z={}\nrows={}\n",
        undecided.len(),
        n,
        z_count,
        doc.rows.len(),
    );
    Ok(MipExport { document: write_lp_document(&doc), metadata })
}

fn push_term(out: &mut String, first: &mut bool, coef: f64, name: &str) {
    if *first {
        if coef < 0.0 {
            out.push_str("- ");
        }
        *first = false;
    } else if coef < 0.0 {
        out.push_str(" - ");
    } else {
        out.push_str(" + ");
    }
    out.push_str(&sig12(coef.abs()));
    out.push(' ');
    out.push_str(name);
}

/// Canonical text form: one line per row, spaces around every token.
pub fn write_lp_document(doc: &LpDocument) -> String {
    let mut out = String::new();
    out.push_str("Maximize\n obj: ");
    let mut first = true;
    if doc.objective_constant != 0.0 {
        out.push_str(&sig12(doc.objective_constant));
        first = false;
    }
    for (name, coef) in &doc.objective {
        push_term(&mut out, &mut first, *coef, name);
    }
    out.push_str("\nSubject To\n");
    for row in &doc.rows {
        out.push(' ');
        out.push_str(&row.name);
        out.push_str(": ");
        let mut first = true;
        for (name, coef) in &row.terms {
            push_term(&mut out, &mut first, *coef, name);
        }
        let rel = match row.relation {
            Relation::Le => "<=",
            Relation::Ge => ">=",
            Relation::Eq => "=",
        };
        out.push_str(&format!(" {rel} {}\n", sig12(row.rhs)));
    }
    out.push_str("Bounds\n");
    for (name, lo, hi) in &doc.bounds {
        out.push_str(&format!(" {} <= {} <= {}\n", sig12(*lo), name, sig12(*hi)));
    }
    out.push_str("Binaries\n");
    for chunk in doc.binaries.chunks(8) {
        out.push(' ');
        out.push_str(&chunk.join(" "));
        out.push('\n');
    }
    out.push_str("End\n");
    out
}

/// Parses the canonical document form back into its structure.
pub fn parse_lp_document(text: &str) -> Result<LpDocument, Error> {
    #[derive(PartialEq)]
    enum Section {
        Start,
        Objective,
        Rows,
        Bounds,
        Binaries,
        Done,
    }
    let mut section = Section::Start;
    let mut doc = LpDocument::default();
    for (ln, raw) in text.lines().enumerate() {
        let line = raw.trim();
        let lineno = ln + 1;
        if line.is_empty() || line.starts_with('\\') {
            continue;
        }
        match line {
            "Maximize" => {
                section = Section::Objective;
                continue;
            }
            "Subject To" => {
                section = Section::Rows;
                continue;
            }
            "Bounds" => {
                section = Section::Bounds;
                continue;
            }
            "Binaries" => {
                section = Section::Binaries;
                continue;
            }
            "End" => {
                section = Section::Done;
                continue;
            }
            _ => {}
        }
        match section {
            Section::Start => return Err(Error::parse(lineno, "expected a section header")),
            Section::Done => return Err(Error::parse(lineno, "content after End")),
            Section::Objective => {
                let (label, expr) = line
                    .split_once(':')
                    .ok_or_else(|| Error::parse(lineno, "objective needs a label"))?;
                if label.trim() != "obj" {
                    return Err(Error::parse(lineno, "objective label must be `obj`"));
                }
                let (constant, terms) = parse_terms(expr, lineno)?;
                doc.objective_constant = constant;
                doc.objective = terms;
            }
            Section::Rows => {
                let (name, rest) = line
                    .split_once(':')
                    .ok_or_else(|| Error::parse(lineno, "constraint needs a name"))?;
                let (relation, split_at) = if let Some(p) = rest.find("<=") {
                    (Relation::Le, p)
                } else if let Some(p) = rest.find(">=") {
                    (Relation::Ge, p)
                } else if let Some(p) = rest.rfind(" = ") {
                    (Relation::Eq, p + 1)
                } else {
                    return Err(Error::parse(lineno, "constraint needs a relation"));
                };
                let lhs = &rest[..split_at];
                let rhs_text = rest[split_at..].trim_start_matches(['<', '>', '=']).trim();
                let rhs: f64 = rhs_text
                    .parse()
                    .map_err(|_| Error::parse(lineno, format!("bad rhs `{rhs_text}`")))?;
                let (constant, terms) = parse_terms(lhs, lineno)?;
                if constant != 0.0 {
                    return Err(Error::parse(lineno, "constants belong on the rhs"));
                }
                doc.rows.push(DocRow { name: name.trim().to_string(), terms, relation, rhs });
            }
            Section::Bounds => {
                let parts: Vec<&str> = line.split_whitespace().collect();
                if parts.len() != 5 || parts[1] != "<=" || parts[3] != "<=" {
                    return Err(Error::parse(lineno, "bounds line must be `lo <= var <= hi`"));
                }
                let lo: f64 =
                    parts[0].parse().map_err(|_| Error::parse(lineno, "bad lower bound"))?;
                let hi: f64 =
                    parts[4].parse().map_err(|_| Error::parse(lineno, "bad upper bound"))?;
                doc.bounds.push((parts[2].to_string(), lo, hi));
            }
            Section::Binaries => {
                doc.binaries.extend(line.split_whitespace().map(String::from));
            }
        }
    }
    if section == Section::Done {
        Ok(doc)
    } else {
        Err(Error::parse(text.lines().count(), "missing End marker"))
    }
}

fn parse_terms(expr: &str, lineno: usize) -> Result<(f64, Vec<(String, f64)>), Error> {
    let tokens: Vec<&str> = expr.split_whitespace().collect();
    let mut constant = 0.0;
    let mut terms = Vec::new();
    let mut i = 0;
    while i < tokens.len() {
        let mut sign = 1.0;
        while tokens[i] == "+" || tokens[i] == "-" {
            if tokens[i] == "-" {
                sign = -sign;
            }
            i += 1;
            if i >= tokens.len() {
                return Err(Error::parse(lineno, "dangling sign"));
            }
        }
        let value: f64 = tokens[i]
            .parse()
            .map_err(|_| Error::parse(lineno, format!("expected a number, got `{}`", tokens[i])))?;
        i += 1;
        if i < tokens.len() && tokens[i].chars().next().is_some_and(|c| c.is_ascii_alphabetic()) {
            terms.push((tokens[i].to_string(), sign * value));
            i += 1;
        } else {
            constant += sign * value;
        }
    }
    Ok((constant, terms))
}

/// Outcome of replaying an assignment against a document.
#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub max_row_violation: f64,
    pub worst_row: Option<String>,
    /// Objective of the document at the assignment.
    pub linear_objective: f64,
    /// Exact nonlinear objective of the selection encoded by the x part.
    pub exact_objective: f64,
    /// Linear and exact objectives drifted apart by more than 1e-6.
    pub diverged: bool,
}

/// Checks `assignment` against every row and bound of `document` and
/// recomputes both objectives. The assignment must cover exactly the
/// document's variables.
pub fn verify_mip_solution(
    inst: &Instance,
    red: &Reduction,
    document: &str,
    assignment: &BTreeMap<String, f64>,
) -> Result<VerifyReport, Error> {
    let doc = parse_lp_document(document)?;
    let vars = doc.variables();
    for v in &vars {
        if !assignment.contains_key(v) {
            return Err(Error::Unsupported(format!("assignment misses variable `{v}`")));
        }
    }
    for name in assignment.keys() {
        if !vars.contains(name) {
            return Err(Error::Unsupported(format!("unknown variable name `{name}`")));
        }
    }
    let value = |name: &String| assignment[name];

    let mut max_violation: f64 = 0.0;
    let mut worst_row = None;
    for row in &doc.rows {
        let lhs: f64 = row.terms.iter().map(|(v, c)| c * value(v)).sum();
        let violation = match row.relation {
            Relation::Le => lhs - row.rhs,
            Relation::Ge => row.rhs - lhs,
            Relation::Eq => (lhs - row.rhs).abs(),
        };
        if violation > max_violation {
            max_violation = violation;
            worst_row = Some(row.name.clone());
        }
    }
    for (v, lo, hi) in &doc.bounds {
        let violation = (lo - value(v)).max(value(v) - hi);
        if violation > max_violation {
            max_violation = violation;
            worst_row = Some(format!("bound({v})"));
        }
    }

    let linear_objective = doc.objective_constant
        + doc.objective.iter().map(|(v, c)| c * value(v)).sum::<f64>();

    let mut chosen = Vec::new();
    for v in &doc.binaries {
        if value(v) > 0.5 {
            chosen.push(item_from_name(inst, v)?);
        }
    }
    let plan = red.complete_plan(inst, &chosen);
    let exact_objective = evaluate_objective(inst, &plan);
    Ok(VerifyReport {
        max_row_violation: max_violation,
        worst_row,
        linear_objective,
        exact_objective,
        diverged: (linear_objective - exact_objective).abs() > 1e-6,
    })
}

/// Builds the assignment induced by selecting `chosen` undecided items:
/// exact per-edge times for `y`, binary `x`, and `z = x * y`.
pub fn exact_assignment(
    inst: &Instance,
    red: &Reduction,
    document: &str,
    chosen: &[usize],
) -> Result<BTreeMap<String, f64>, Error> {
    let doc = parse_lp_document(document)?;
    let plan = red.complete_plan(inst, chosen);
    let prefix = inst.prefix_weights(plan.selected());
    let y: Vec<f64> = prefix.iter().map(|&w| 1.0 / inst.velocity_at(w)).collect();
    let mut assignment = BTreeMap::new();
    for v in doc.variables() {
        let val = if let Some(rest) = v.strip_prefix("y_") {
            let i: usize = rest
                .parse()
                .map_err(|_| Error::Unsupported(format!("bad edge in `{v}`")))?;
            y[i - 1]
        } else if v.starts_with("x_") {
            let e = item_from_name(inst, &v)?;
            if plan.is_selected(e) {
                1.0
            } else {
                0.0
            }
        } else if let Some(rest) = v.strip_prefix("z_") {
            let mut parts = rest.split('_');
            let i: usize = parts
                .next()
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| Error::Unsupported(format!("bad product name `{v}`")))?;
            let e = item_from_name(inst, &format!("x_{}", parts.collect::<Vec<_>>().join("_")))?;
            if plan.is_selected(e) {
                y[i - 1]
            } else {
                0.0
            }
        } else {
            return Err(Error::Unsupported(format!("unknown variable family `{v}`")));
        };
        assignment.insert(v, val);
    }
    Ok(assignment)
}

fn item_from_name(inst: &Instance, name: &str) -> Result<usize, Error> {
    let rest = name
        .strip_prefix("x_")
        .ok_or_else(|| Error::Unsupported(format!("expected an item variable, got `{name}`")))?;
    let (city, k) = rest
        .split_once('_')
        .ok_or_else(|| Error::Unsupported(format!("malformed item variable `{name}`")))?;
    let city: usize =
        city.parse().map_err(|_| Error::Unsupported(format!("bad city in `{name}`")))?;
    let k: usize = k.parse().map_err(|_| Error::Unsupported(format!("bad index in `{name}`")))?;
    if city == 0 || city > inst.edges() {
        return Err(Error::Unsupported(format!("city out of range in `{name}`")));
    }
    inst.city_items(city)
        .get(k.wrapping_sub(1))
        .copied()
        .ok_or_else(|| Error::Unsupported(format!("item index out of range in `{name}`")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::preprocess::run_preprocessing;

    fn open_label() -> crate::preprocess::ItemLabel {
        crate::preprocess::ItemLabel { unprofitable: false, compulsory: false, dummy: f64::NAN }
    }

    /// Two equally attractive items that cannot both fit: stays undecided.
    fn tiny() -> (Instance, Reduction) {
        let inst =
            Instance::new(vec![10.0], vec![vec![(100.0, 5.0), (100.0, 5.0)]], 5.0, 0.1, 1.0, 1.0)
                .unwrap();
        let red = run_preprocessing(&inst);
        assert_eq!(red.undecided.len(), 2);
        (inst, red)
    }

    #[test]
    fn single_item_structure_counts() {
        // One open item, one edge, lambda 0: 4 product rows, one balance,
        // one capacity; a single z variable.
        let inst =
            Instance::new(vec![10.0], vec![vec![(9.0, 5.0)]], 10.0, 0.1, 1.0, 1.0).unwrap();
        let red = Reduction::from_labels(&inst, vec![open_label(); 1]);
        assert_eq!(red.undecided.len(), 1);
        let export = export_mip(&inst, &red, "t", 0, false).unwrap();
        let doc = parse_lp_document(&export.document).unwrap();
        assert_eq!(doc.rows.len(), 6);
        let z_vars = doc.variables().into_iter().filter(|v| v.starts_with("z_")).count();
        assert_eq!(z_vars, 1);
        assert!(export.metadata.contains("vars-z=1"));
    }

    #[test]
    fn product_rows_collapse_when_selected() {
        let (inst, red) = tiny();
        let export = export_mip(&inst, &red, "t", 0, false).unwrap();
        let doc = parse_lp_document(&export.document).unwrap();
        // With x = 1 the third and fourth rows force z = y.
        let undecided = red.undecided[0];
        let assignment = exact_assignment(&inst, &red, &export.document, &[undecided]).unwrap();
        let z = assignment[&z_name(&inst, 1, undecided)];
        let y = assignment["y_1"];
        assert!((z - y).abs() < 1e-12);
        let _ = doc;
    }

    #[test]
    fn exact_assignments_satisfy_all_rows() {
        let (inst, red) = tiny();
        // Without objective clamps, every feasible integral point fits.
        for with_rlt in [false, true] {
            let export = export_mip(&inst, &red, "t", 0, with_rlt).unwrap();
            for chosen in [vec![], vec![red.undecided[0]], vec![red.undecided[1]]] {
                let assignment =
                    exact_assignment(&inst, &red, &export.document, &chosen).unwrap();
                let report =
                    verify_mip_solution(&inst, &red, &export.document, &assignment).unwrap();
                assert!(
                    report.max_row_violation < 1e-7,
                    "violation {} at {:?} (rlt {with_rlt})",
                    report.max_row_violation,
                    report.worst_row
                );
                assert!(!report.diverged);
                assert!((report.linear_objective - report.exact_objective).abs() < 1e-6);
            }
        }
        // With clamps, the optimal selection still satisfies everything.
        let export = export_mip(&inst, &red, "t", 5, true).unwrap();
        let best = vec![red.undecided[0]];
        let assignment = exact_assignment(&inst, &red, &export.document, &best).unwrap();
        let report = verify_mip_solution(&inst, &red, &export.document, &assignment).unwrap();
        assert!(
            report.max_row_violation < 1e-7,
            "violation {} at {:?}",
            report.max_row_violation,
            report.worst_row
        );
    }

    #[test]
    fn corrupted_products_are_localized() {
        let (inst, red) = tiny();
        let export = export_mip(&inst, &red, "t", 0, false).unwrap();
        let e = red.undecided[0];
        let mut assignment = exact_assignment(&inst, &red, &export.document, &[e]).unwrap();
        *assignment.get_mut(&z_name(&inst, 1, e)).unwrap() = 0.0;
        let report = verify_mip_solution(&inst, &red, &export.document, &assignment).unwrap();
        assert!(report.max_row_violation > 1e-3);
        assert!(report.worst_row.as_deref().unwrap_or("").starts_with("lin"));
    }

    #[test]
    fn unknown_names_are_rejected() {
        let (inst, red) = tiny();
        let export = export_mip(&inst, &red, "t", 0, false).unwrap();
        let mut assignment = exact_assignment(&inst, &red, &export.document, &[]).unwrap();
        assignment.insert("mystery_1".to_string(), 1.0);
        assert!(verify_mip_solution(&inst, &red, &export.document, &assignment).is_err());
    }

    #[test]
    fn document_round_trip_is_byte_identical() {
        let (inst, red) = tiny();
        for (lambda, rlt) in [(0, false), (5, false), (0, true), (5, true)] {
            let export = export_mip(&inst, &red, "t", lambda, rlt).unwrap();
            let doc = parse_lp_document(&export.document).unwrap();
            assert_eq!(write_lp_document(&doc), export.document);
        }
    }

    #[test]
    fn var_bounds_formulas() {
        // No items anywhere: L = U = 1/v_max.
        let empty = Instance::new(vec![5.0], vec![vec![]], 10.0, 0.1, 1.0, 1.0).unwrap();
        let red = run_preprocessing(&empty);
        let b = compute_var_bounds(&empty, &red);
        assert_eq!((b.lower[0], b.upper[0]), (1.0, 1.0));

        // One open 5-weight item on a 0.09-slope instance: U = 1/0.55.
        let inst =
            Instance::new(vec![10.0], vec![vec![(9.0, 5.0)]], 10.0, 0.1, 1.0, 1.0).unwrap();
        let labels = vec![
            crate::preprocess::ItemLabel { unprofitable: false, compulsory: false, dummy: f64::NAN };
            1
        ];
        let red = Reduction::from_labels(&inst, labels);
        let b = compute_var_bounds(&inst, &red);
        assert!((b.lower[0] - 1.0).abs() < 1e-12);
        assert!((b.upper[0] - 1.0 / 0.55).abs() < 1e-9);

        // City maxima beyond the capacity clamp to 1/v_min.
        let heavy =
            Instance::new(vec![5.0], vec![vec![(99.0, 10.0), (99.0, 10.0)]], 10.0, 0.1, 1.0, 1.0)
                .unwrap();
        let red_heavy = run_preprocessing(&heavy);
        let b = compute_var_bounds(&heavy, &red_heavy);
        assert!((b.upper[0] - 10.0).abs() < 1e-9);
    }
}
