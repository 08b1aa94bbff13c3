//! File formats: benchmark instances, tour files, and solution records.
//!
//! Instances follow the travelling-thief benchmark layout: a key/value
//! header, a node coordinate section, and an items section assigning each
//! item to a node. Distances come from the coordinates via `CEIL_2D`
//! (Euclidean, rounded up). The first node is the depot and holds no items;
//! given a tour, the route is rotated so the depot comes last.

use crate::problem::{Instance, PackingPlan};
use crate::numfmt::sig12;
use crate::Error;

/// A parsed instance plus the bookkeeping to speak the file's item language.
#[derive(Debug, Clone)]
pub struct InstanceFile {
    pub name: String,
    pub instance: Instance,
    /// File-level (1-based) index of each internal item.
    pub file_ids: Vec<usize>,
}

impl InstanceFile {
    /// Internal ids of the given file-level ids.
    pub fn internal_ids(&self, file_ids: &[usize]) -> Result<Vec<usize>, Error> {
        file_ids
            .iter()
            .map(|fid| {
                self.file_ids
                    .iter()
                    .position(|x| x == fid)
                    .ok_or_else(|| Error::invariant(format!("unknown item id {fid}")))
            })
            .collect()
    }

    /// Sorted file-level ids of a plan.
    pub fn plan_file_ids(&self, plan: &PackingPlan) -> Vec<usize> {
        let mut ids: Vec<usize> = plan.ids().iter().map(|&e| self.file_ids[e]).collect();
        ids.sort_unstable();
        ids
    }
}

struct HeaderLine<'a> {
    key: String,
    value: &'a str,
    lineno: usize,
}

fn split_header(line: &str, lineno: usize) -> Option<HeaderLine<'_>> {
    let (key, value) = line.split_once(':')?;
    let key = key.split('(').next().unwrap_or("").trim().to_uppercase();
    Some(HeaderLine { key, value: value.trim(), lineno })
}

fn parse_num<T: std::str::FromStr>(h: &HeaderLine, what: &str) -> Result<T, Error> {
    h.value
        .split_whitespace()
        .next()
        .unwrap_or("")
        .parse()
        .map_err(|_| Error::parse(h.lineno, format!("bad {what}: `{}`", h.value)))
}

/// Parses a benchmark instance document. `tour`, when given, is the node
/// permutation the vehicle follows; without one the nodes are visited in
/// file order starting at node 2 and ending at the depot.
pub fn parse_instance(text: &str, tour: Option<&[usize]>) -> Result<InstanceFile, Error> {
    let mut name = String::from("unnamed");
    let mut dimension: Option<usize> = None;
    let mut item_count: Option<usize> = None;
    let mut capacity: Option<f64> = None;
    let mut v_min: Option<f64> = None;
    let mut v_max: Option<f64> = None;
    let mut rent: Option<f64> = None;
    let mut coords: Vec<(f64, f64)> = Vec::new();
    let mut items: Vec<(f64, f64, usize)> = Vec::new();

    #[derive(PartialEq)]
    enum Section {
        Header,
        Nodes,
        Items,
    }
    let mut section = Section::Header;

    for (ln, raw) in text.lines().enumerate() {
        let lineno = ln + 1;
        let line = raw.trim();
        if line.is_empty() || line == "EOF" {
            continue;
        }
        let upper = line.to_uppercase();
        if upper.starts_with("NODE_COORD_SECTION") {
            section = Section::Nodes;
            continue;
        }
        if upper.starts_with("ITEMS SECTION") {
            section = Section::Items;
            continue;
        }
        match section {
            Section::Header => {
                let Some(h) = split_header(line, lineno) else {
                    return Err(Error::parse(lineno, format!("expected `key: value`, got `{line}`")));
                };
                match h.key.as_str() {
                    "PROBLEM NAME" | "NAME" => name = h.value.to_string(),
                    "DIMENSION" => dimension = Some(parse_num(&h, "dimension")?),
                    "NUMBER OF ITEMS" => item_count = Some(parse_num(&h, "item count")?),
                    "CAPACITY OF KNAPSACK" => capacity = Some(parse_num(&h, "capacity")?),
                    "MIN SPEED" => v_min = Some(parse_num(&h, "min speed")?),
                    "MAX SPEED" => v_max = Some(parse_num(&h, "max speed")?),
                    "RENTING RATIO" => rent = Some(parse_num(&h, "renting ratio")?),
                    "EDGE_WEIGHT_TYPE" => {
                        if !h.value.eq_ignore_ascii_case("CEIL_2D") {
                            return Err(Error::parse(
                                lineno,
                                format!("unsupported edge weight type `{}`", h.value),
                            ));
                        }
                    }
                    "KNAPSACK DATA TYPE" | "TYPE" | "COMMENT" => {}
                    other => {
                        return Err(Error::parse(lineno, format!("unknown header key `{other}`")))
                    }
                }
            }
            Section::Nodes => {
                let mut parts = line.split_whitespace();
                let idx: usize = parts
                    .next()
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| Error::parse(lineno, "bad node index"))?;
                let x: f64 = parts
                    .next()
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| Error::parse(lineno, "bad node x coordinate"))?;
                let y: f64 = parts
                    .next()
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| Error::parse(lineno, "bad node y coordinate"))?;
                if idx != coords.len() + 1 {
                    return Err(Error::parse(lineno, "node indices must be sequential"));
                }
                coords.push((x, y));
            }
            Section::Items => {
                let mut parts = line.split_whitespace();
                let idx: usize = parts
                    .next()
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| Error::parse(lineno, "bad item index"))?;
                let profit: f64 = parts
                    .next()
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| Error::parse(lineno, "bad item profit"))?;
                let weight: f64 = parts
                    .next()
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| Error::parse(lineno, "bad item weight"))?;
                let node: usize = parts
                    .next()
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| Error::parse(lineno, "bad item node"))?;
                if idx != items.len() + 1 {
                    return Err(Error::parse(lineno, "item indices must be sequential"));
                }
                if node == 1 {
                    return Err(Error::parse(lineno, "items assigned to the depot"));
                }
                items.push((profit, weight, node));
            }
        }
    }

    let dim = dimension.ok_or_else(|| Error::parse(0, "missing DIMENSION header"))?;
    if coords.len() != dim {
        return Err(Error::parse(0, format!("expected {dim} nodes, found {}", coords.len())));
    }
    if let Some(m) = item_count {
        if items.len() != m {
            return Err(Error::parse(0, format!("expected {m} items, found {}", items.len())));
        }
    }
    let capacity = capacity.ok_or_else(|| Error::parse(0, "missing CAPACITY OF KNAPSACK"))?;
    let v_min = v_min.ok_or_else(|| Error::parse(0, "missing MIN SPEED"))?;
    let v_max = v_max.ok_or_else(|| Error::parse(0, "missing MAX SPEED"))?;
    let rent = rent.ok_or_else(|| Error::parse(0, "missing RENTING RATIO"))?;

    // Route over nodes: rotate the tour so the depot closes the loop.
    let route: Vec<usize> = match tour {
        Some(t) => {
            if t.len() != dim {
                return Err(Error::parse(0, format!("tour has {} nodes, instance {dim}", t.len())));
            }
            let depot = t
                .iter()
                .position(|&c| c == 1)
                .ok_or_else(|| Error::parse(0, "tour never visits the depot"))?;
            let mut r: Vec<usize> = t[depot + 1..].to_vec();
            r.extend_from_slice(&t[..depot]);
            r.push(1);
            r
        }
        None => {
            let mut r: Vec<usize> = (2..=dim).collect();
            r.push(1);
            r
        }
    };

    let n = dim - 1;
    let mut distances = Vec::with_capacity(n);
    for i in 0..n {
        let (x1, y1) = coords[route[i] - 1];
        let (x2, y2) = coords[route[i + 1] - 1];
        distances.push(((x1 - x2).powi(2) + (y1 - y2).powi(2)).sqrt().ceil());
    }

    // Node -> route position.
    let mut position = vec![0usize; dim + 1];
    for (p, &node) in route.iter().enumerate() {
        position[node] = p + 1;
    }

    let mut per_city: Vec<Vec<(f64, f64)>> = vec![Vec::new(); n];
    let mut per_city_file: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (k, &(profit, weight, node)) in items.iter().enumerate() {
        if node > dim {
            return Err(Error::parse(0, format!("item {} assigned to unknown node {node}", k + 1)));
        }
        let city = position[node];
        per_city[city - 1].push((profit, weight));
        per_city_file[city - 1].push(k + 1);
    }
    let file_ids: Vec<usize> = per_city_file.into_iter().flatten().collect();
    let instance = Instance::new(distances, per_city, capacity, v_min, v_max, rent)?;
    Ok(InstanceFile { name, instance, file_ids })
}

/// Canonical instance writer. Embeds the route on a line so the `CEIL_2D`
/// distances reproduce exactly; this requires integral edge distances.
pub fn write_instance(inst: &Instance, name: &str, data_type: &str) -> Result<String, Error> {
    for &d in inst.distances() {
        if d.fract() != 0.0 {
            return Err(Error::Unsupported(
                "only instances with integral distances can be written".to_string(),
            ));
        }
    }
    let n = inst.edges();
    let dim = n + 1;
    let m = inst.item_count();
    let mut out = String::new();
    out.push_str(&format!("PROBLEM NAME: {name}\n"));
    out.push_str(&format!("KNAPSACK DATA TYPE: {data_type}\n"));
    out.push_str(&format!("DIMENSION: {dim}\n"));
    out.push_str(&format!("NUMBER OF ITEMS: {m}\n"));
    out.push_str(&format!("CAPACITY OF KNAPSACK: {}\n", sig12(inst.capacity())));
    out.push_str(&format!("MIN SPEED: {}\n", sig12(inst.v_min)));
    out.push_str(&format!("MAX SPEED: {}\n", sig12(inst.v_max)));
    out.push_str(&format!("RENTING RATIO: {}\n", sig12(inst.rent)));
    out.push_str("EDGE_WEIGHT_TYPE: CEIL_2D\n");
    out.push_str("NODE_COORD_SECTION\t(INDEX, X, Y):\n");
    // Node k+1 sits at the cumulative distance of the first k-1 edges; the
    // depot (node 1) closes the line at the full route length.
    let mut cum = Vec::with_capacity(n);
    let mut acc = 0.0;
    for &d in inst.distances() {
        cum.push(acc);
        acc += d;
    }
    out.push_str(&format!("1 {} 0\n", sig12(acc)));
    for k in 2..=dim {
        out.push_str(&format!("{k} {} 0\n", sig12(cum[k - 2])));
    }
    out.push_str("ITEMS SECTION\t(INDEX, PROFIT, WEIGHT, ASSIGNED NODE NUMBER):\n");
    let mut idx = 0;
    for city in 1..=n {
        for &e in inst.city_items(city) {
            idx += 1;
            let it = inst.item(e);
            out.push_str(&format!(
                "{idx} {} {} {}\n",
                sig12(it.profit),
                sig12(it.weight),
                city + 1
            ));
        }
    }
    Ok(out)
}

/// Parses a tour document: header lines, `TOUR_SECTION`, then one node per
/// line until `-1` or `EOF`. The result must be a permutation.
pub fn parse_tour(text: &str) -> Result<Vec<usize>, Error> {
    let mut dimension: Option<usize> = None;
    let mut tour = Vec::new();
    let mut in_tour = false;
    for (ln, raw) in text.lines().enumerate() {
        let lineno = ln + 1;
        let line = raw.trim();
        if line.is_empty() || line == "EOF" {
            continue;
        }
        if line.to_uppercase().starts_with("TOUR_SECTION") {
            in_tour = true;
            continue;
        }
        if !in_tour {
            if let Some(h) = split_header(line, lineno) {
                if h.key == "DIMENSION" {
                    dimension = Some(parse_num(&h, "dimension")?);
                }
                continue;
            }
            return Err(Error::parse(lineno, format!("expected `key: value`, got `{line}`")));
        }
        for token in line.split_whitespace() {
            let v: i64 = token
                .parse()
                .map_err(|_| Error::parse(lineno, format!("bad tour entry `{token}`")))?;
            if v == -1 {
                in_tour = false;
                break;
            }
            if v < 1 {
                return Err(Error::parse(lineno, format!("invalid city `{v}`")));
            }
            tour.push(v as usize);
        }
    }
    if tour.is_empty() {
        return Err(Error::parse(0, "tour section is missing or empty"));
    }
    let dim = dimension.unwrap_or_else(|| tour.iter().copied().max().unwrap_or(0));
    let mut seen = vec![false; dim + 1];
    for &c in &tour {
        if c > dim {
            return Err(Error::parse(0, format!("city {c} exceeds dimension {dim}")));
        }
        if seen[c] {
            return Err(Error::parse(0, format!("city {c} visited twice")));
        }
        seen[c] = true;
    }
    if tour.len() != dim {
        return Err(Error::parse(0, format!("tour visits {} of {dim} cities", tour.len())));
    }
    Ok(tour)
}

/// One solver run, serialized as `key=value` lines plus a plan line.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct SolutionRecord {
    pub instance: String,
    pub algorithm: String,
    pub lambda: Option<usize>,
    pub objective: f64,
    /// Sorted file-level item ids.
    pub plan: Vec<usize>,
    pub proven_optimal: bool,
    pub alpha: Option<f64>,
    pub beta: Option<f64>,
    pub rho: Option<f64>,
    pub branches: Option<u64>,
    pub fails: Option<u64>,
    pub ub_success: Option<u64>,
    pub ub_total: Option<u64>,
    pub time_seconds: Option<f64>,
}

pub fn write_solution(record: &SolutionRecord) -> String {
    let mut out = String::new();
    out.push_str("format-version=1\n");
    out.push_str(&format!("instance={}\n", record.instance));
    out.push_str(&format!("algorithm={}\n", record.algorithm));
    if let Some(l) = record.lambda {
        out.push_str(&format!("lambda={l}\n"));
    }
    out.push_str(&format!("objective={}\n", sig12(record.objective)));
    out.push_str(&format!("proven-optimal={}\n", record.proven_optimal));
    let mut float_key = |key: &str, v: Option<f64>| {
        if let Some(v) = v {
            out.push_str(&format!("{key}={}\n", sig12(v)));
        }
    };
    float_key("alpha", record.alpha);
    float_key("beta", record.beta);
    float_key("rho", record.rho);
    let mut int_key = |key: &str, v: Option<u64>| {
        if let Some(v) = v {
            out.push_str(&format!("{key}={v}\n"));
        }
    };
    int_key("branches", record.branches);
    int_key("fails", record.fails);
    int_key("ub-success", record.ub_success);
    int_key("ub-total", record.ub_total);
    if let Some(t) = record.time_seconds {
        out.push_str(&format!("time-seconds={}\n", sig12(t)));
    }
    let plan: Vec<String> = record.plan.iter().map(|id| id.to_string()).collect();
    out.push_str(&format!("plan={}\n", plan.join(" ")));
    out
}

pub fn parse_solution(text: &str) -> Result<SolutionRecord, Error> {
    let mut record = SolutionRecord::default();
    let mut version_seen = false;
    let mut plan_seen = false;
    for (ln, raw) in text.lines().enumerate() {
        let lineno = ln + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| Error::parse(lineno, format!("expected `key=value`, got `{line}`")))?;
        let bad = |what: &str| Error::parse(lineno, format!("bad {what}: `{value}`"));
        match key {
            "format-version" => {
                if value != "1" {
                    return Err(Error::parse(lineno, format!("unsupported format version {value}")));
                }
                version_seen = true;
            }
            "instance" => record.instance = value.to_string(),
            "algorithm" => record.algorithm = value.to_string(),
            "lambda" => record.lambda = Some(value.parse().map_err(|_| bad("lambda"))?),
            "objective" => record.objective = value.parse().map_err(|_| bad("objective"))?,
            "proven-optimal" => {
                record.proven_optimal = value.parse().map_err(|_| bad("proven flag"))?
            }
            "alpha" => record.alpha = Some(value.parse().map_err(|_| bad("alpha"))?),
            "beta" => record.beta = Some(value.parse().map_err(|_| bad("beta"))?),
            "rho" => record.rho = Some(value.parse().map_err(|_| bad("rho"))?),
            "branches" => record.branches = Some(value.parse().map_err(|_| bad("branches"))?),
            "fails" => record.fails = Some(value.parse().map_err(|_| bad("fails"))?),
            "ub-success" => record.ub_success = Some(value.parse().map_err(|_| bad("ub-success"))?),
            "ub-total" => record.ub_total = Some(value.parse().map_err(|_| bad("ub-total"))?),
            "time-seconds" => {
                record.time_seconds = Some(value.parse().map_err(|_| bad("time"))?)
            }
            "plan" => {
                plan_seen = true;
                for token in value.split_whitespace() {
                    record.plan.push(token.parse().map_err(|_| bad("plan id"))?);
                }
            }
            other => return Err(Error::parse(lineno, format!("unknown key `{other}`"))),
        }
    }
    if !version_seen {
        return Err(Error::parse(0, "missing format-version key"));
    }
    if !plan_seen {
        return Err(Error::parse(0, "missing plan line"));
    }
    Ok(record)
}
