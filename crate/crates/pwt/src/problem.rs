//! Problem data model, exact objective evaluation and feasibility checks.
//!
//! An instance is a route of `n + 1` cities with `n` positive edge distances.
//! Items live in cities `1..=n`; the final city is a bare destination. The
//! vehicle's velocity on edge `i` drops linearly with the weight collected in
//! cities `1..=i`, from `v_max` (empty) down to `v_min` (loaded to capacity).

use crate::Error;

/// One item, fixed to a route position.
#[derive(Debug, Clone, PartialEq)]
pub struct Item {
    /// Route position of the holding city, 1-based, in `1..=n`.
    pub city: usize,
    /// Nonnegative profit.
    pub profit: f64,
    /// Nonnegative weight.
    pub weight: f64,
}

/// A problem instance. Immutable after construction.
#[derive(Debug, Clone)]
pub struct Instance {
    /// Edge distances `d_1..d_n`; the route has `n + 1` cities.
    distances: Vec<f64>,
    /// All items, ordered by city then by position within the city.
    items: Vec<Item>,
    /// Global item ids per city (1-based city index; entry 0 unused).
    city_items: Vec<Vec<usize>>,
    /// Knapsack capacity.
    capacity: f64,
    /// Velocity of the empty vehicle.
    pub v_max: f64,
    /// Velocity at full capacity.
    pub v_min: f64,
    /// Rent paid per unit of travel time.
    pub rent: f64,
    /// Velocity lost per unit of carried weight: `(v_max - v_min) / W`.
    nu: f64,
}

impl Instance {
    /// Builds an instance from per-city item lists. `items_per_city[c]` holds
    /// the `(profit, weight)` pairs of city `c + 1`; the destination city has
    /// no list.
    pub fn new(
        distances: Vec<f64>,
        items_per_city: Vec<Vec<(f64, f64)>>,
        capacity: f64,
        v_min: f64,
        v_max: f64,
        rent: f64,
    ) -> Result<Self, Error> {
        // NaN fails all of these comparisons and is rejected alongside.
        let positive = |x: f64| x.is_finite() && x > 0.0;
        let n = distances.len();
        if n == 0 {
            return Err(Error::invariant("route must have at least one edge"));
        }
        if !distances.iter().all(|&d| positive(d)) {
            return Err(Error::invariant("edge distances must be positive"));
        }
        if !positive(v_min) || !v_max.is_finite() || v_max < v_min {
            return Err(Error::invariant("velocities must satisfy 0 < v_min <= v_max"));
        }
        if !positive(capacity) {
            return Err(Error::invariant("capacity must be positive"));
        }
        if !positive(rent) {
            return Err(Error::invariant("rent rate must be positive"));
        }
        if items_per_city.len() > n {
            return Err(Error::invariant(format!(
                "items listed for {} cities but the route has only {} item cities",
                items_per_city.len(),
                n
            )));
        }
        let mut items = Vec::new();
        let mut city_items = vec![Vec::new(); n + 1];
        let nonnegative = |x: f64| x.is_finite() && x >= 0.0;
        for (c, list) in items_per_city.iter().enumerate() {
            for &(profit, weight) in list {
                if !nonnegative(profit) || !nonnegative(weight) {
                    return Err(Error::invariant("item profits and weights must be nonnegative"));
                }
                city_items[c + 1].push(items.len());
                items.push(Item { city: c + 1, profit, weight });
            }
        }
        let nu = (v_max - v_min) / capacity;
        Ok(Instance { distances, items, city_items, capacity, v_max, v_min, rent, nu })
    }

    /// Number of edges; the route has `n + 1` cities.
    pub fn edges(&self) -> usize {
        self.distances.len()
    }

    pub fn distances(&self) -> &[f64] {
        &self.distances
    }

    pub fn capacity(&self) -> f64 {
        self.capacity
    }

    /// Velocity loss per unit weight.
    pub fn nu(&self) -> f64 {
        self.nu
    }

    pub fn items(&self) -> &[Item] {
        &self.items
    }

    pub fn item(&self, id: usize) -> &Item {
        &self.items[id]
    }

    pub fn item_count(&self) -> usize {
        self.items.len()
    }

    /// Global item ids held by `city` (1-based).
    pub fn city_items(&self, city: usize) -> &[usize] {
        &self.city_items[city]
    }

    /// Position of `id` within its city's list, 1-based.
    pub fn index_in_city(&self, id: usize) -> usize {
        let city = self.items[id].city;
        1 + self.city_items[city].iter().position(|&e| e == id).expect("item in its city list")
    }

    /// Velocity when carrying `load`: `v_max - nu * load`, valid for loads up
    /// to the capacity.
    pub fn velocity_at(&self, load: f64) -> f64 {
        self.v_max - self.nu * load
    }

    /// Per-edge weight prefix sums of the selected items: entry `i - 1` holds
    /// the weight collected in cities `1..=i`.
    pub fn prefix_weights(&self, selected: &[bool]) -> Vec<f64> {
        let n = self.edges();
        let mut prefix = vec![0.0; n];
        let mut acc = 0.0;
        for i in 1..=n {
            for &e in &self.city_items[i] {
                if selected[e] {
                    acc += self.items[e].weight;
                }
            }
            prefix[i - 1] = acc;
        }
        prefix
    }
}

/// A selection of items with its cached total weight.
#[derive(Debug, Clone, PartialEq)]
pub struct PackingPlan {
    selected: Vec<bool>,
    total_weight: f64,
}

impl PackingPlan {
    pub fn new(inst: &Instance, selected: Vec<bool>) -> Self {
        assert_eq!(selected.len(), inst.item_count(), "selection vector length mismatch");
        let total_weight = selected
            .iter()
            .zip(inst.items())
            .filter(|(&s, _)| s)
            .map(|(_, it)| it.weight)
            .sum();
        PackingPlan { selected, total_weight }
    }

    pub fn empty(inst: &Instance) -> Self {
        PackingPlan { selected: vec![false; inst.item_count()], total_weight: 0.0 }
    }

    /// Plan selecting exactly the given global item ids.
    pub fn from_ids(inst: &Instance, ids: &[usize]) -> Self {
        let mut selected = vec![false; inst.item_count()];
        for &id in ids {
            selected[id] = true;
        }
        PackingPlan::new(inst, selected)
    }

    pub fn selected(&self) -> &[bool] {
        &self.selected
    }

    pub fn is_selected(&self, id: usize) -> bool {
        self.selected[id]
    }

    pub fn total_weight(&self) -> f64 {
        self.total_weight
    }

    /// Selected ids in increasing order.
    pub fn ids(&self) -> Vec<usize> {
        self.selected.iter().enumerate().filter(|(_, &s)| s).map(|(i, _)| i).collect()
    }

    pub fn total_profit(&self, inst: &Instance) -> f64 {
        self.selected
            .iter()
            .zip(inst.items())
            .filter(|(&s, _)| s)
            .map(|(_, it)| it.profit)
            .sum()
    }
}

/// Per-edge velocities and travel times of a feasible plan.
#[derive(Debug, Clone)]
pub struct VelocityProfile {
    /// Velocity on edge `i` (index `i - 1`).
    pub velocities: Vec<f64>,
    /// Travel time on edge `i`: `d_i / v_i`.
    pub times: Vec<f64>,
}

/// Reward of `plan`: total profit of the selected items minus the transport
/// cost they induce. Defined for any selection, feasible or not.
pub fn evaluate_objective(inst: &Instance, plan: &PackingPlan) -> f64 {
    plan.total_profit(inst) - total_transport_cost(inst, plan)
}

/// Total transport cost of carrying exactly the items of `subset`:
/// `R * sum_i d_i / (v_max - nu * prefix_i)`.
pub fn total_transport_cost(inst: &Instance, subset: &PackingPlan) -> f64 {
    let prefix = inst.prefix_weights(subset.selected());
    let mut cost = 0.0;
    for (i, &d) in inst.distances().iter().enumerate() {
        cost += d / inst.velocity_at(prefix[i]);
    }
    inst.rent * cost
}

/// True iff the selected weight fits the capacity (boundary inclusive).
pub fn is_feasible(inst: &Instance, plan: &PackingPlan) -> bool {
    plan.total_weight() <= inst.capacity()
}

/// Per-edge velocities and times of `plan`. Rejects plans whose weight
/// exceeds the capacity, which would push the velocity below `v_min`.
pub fn velocity_profile(inst: &Instance, plan: &PackingPlan) -> Result<VelocityProfile, Error> {
    if !is_feasible(inst, plan) {
        return Err(Error::invariant(format!(
            "plan weight {} exceeds capacity {}",
            plan.total_weight(),
            inst.capacity()
        )));
    }
    let prefix = inst.prefix_weights(plan.selected());
    let velocities: Vec<f64> = prefix.iter().map(|&w| inst.velocity_at(w)).collect();
    let times = inst
        .distances()
        .iter()
        .zip(&velocities)
        .map(|(&d, &v)| d / v)
        .collect();
    Ok(VelocityProfile { velocities, times })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Single-edge instance shared by the hand-checked examples:
    /// d = [10], R = 1, v in [0.1, 1], W = 10, so nu = 0.09.
    pub(crate) fn tiny(items: Vec<(f64, f64)>) -> Instance {
        Instance::new(vec![10.0], vec![items], 10.0, 0.1, 1.0, 1.0).unwrap()
    }

    #[test]
    fn empty_plan_costs_full_speed_run() {
        let inst = tiny(vec![]);
        let plan = PackingPlan::empty(&inst);
        assert_eq!(evaluate_objective(&inst, &plan), -10.0);
    }

    #[test]
    fn full_load_runs_at_v_min() {
        let inst = tiny(vec![(150.0, 10.0)]);
        let plan = PackingPlan::from_ids(&inst, &[0]);
        let obj = evaluate_objective(&inst, &plan);
        assert!((obj - 50.0).abs() < 1e-9, "got {obj}");
        // t_full = R * d / v_min
        assert!((total_transport_cost(&inst, &plan) - 100.0).abs() < 1e-9);
    }

    #[test]
    fn empty_plan_on_longer_route() {
        let inst =
            Instance::new(vec![1.0, 1.0, 1.0], vec![vec![], vec![], vec![]], 1.0, 0.1, 1.0, 2.0)
                .unwrap();
        let plan = PackingPlan::empty(&inst);
        assert!((evaluate_objective(&inst, &plan) - (-6.0)).abs() < 1e-12);
    }

    #[test]
    fn transport_cost_of_single_item() {
        let inst = tiny(vec![(0.0, 5.0)]);
        assert!((total_transport_cost(&inst, &PackingPlan::empty(&inst)) - 10.0).abs() < 1e-12);
        let sub = PackingPlan::from_ids(&inst, &[0]);
        let expect = 10.0 / (1.0 - 0.09 * 5.0);
        assert!((total_transport_cost(&inst, &sub) - expect).abs() < 1e-9);
    }

    #[test]
    fn feasibility_boundary_is_inclusive() {
        let inst = tiny(vec![(1.0, 10.0), (1.0, 10.0)]);
        assert!(is_feasible(&inst, &PackingPlan::empty(&inst)));
        assert!(is_feasible(&inst, &PackingPlan::from_ids(&inst, &[0])));
        assert!(!is_feasible(&inst, &PackingPlan::from_ids(&inst, &[0, 1])));
    }

    #[test]
    fn velocity_profile_matches_cost() {
        let inst = tiny(vec![(1.0, 5.0)]);
        let plan = PackingPlan::from_ids(&inst, &[0]);
        let prof = velocity_profile(&inst, &plan).unwrap();
        assert!((prof.velocities[0] - 0.55).abs() < 1e-12);
        let tot: f64 = prof.times.iter().sum::<f64>() * inst.rent;
        assert!((tot - total_transport_cost(&inst, &plan)).abs() < 1e-9);

        let empty = velocity_profile(&inst, &PackingPlan::empty(&inst)).unwrap();
        assert_eq!(empty.velocities[0], 1.0);
    }

    #[test]
    fn velocity_profile_rejects_overweight_plan() {
        let inst = tiny(vec![(1.0, 10.0), (1.0, 3.0)]);
        let plan = PackingPlan::from_ids(&inst, &[0, 1]);
        assert!(velocity_profile(&inst, &plan).is_err());
    }

    #[test]
    fn decomposition_holds() {
        let inst = tiny(vec![(7.0, 2.0), (3.0, 4.0)]);
        let plan = PackingPlan::from_ids(&inst, &[0, 1]);
        let lhs = evaluate_objective(&inst, &plan);
        let rhs = plan.total_profit(&inst) - total_transport_cost(&inst, &plan);
        assert!((lhs - rhs).abs() < 1e-12);
    }

    #[test]
    fn zero_weight_items_do_not_slow_the_vehicle() {
        let inst = tiny(vec![(5.0, 0.0)]);
        let plan = PackingPlan::from_ids(&inst, &[0]);
        assert!((evaluate_objective(&inst, &plan) - (5.0 - 10.0)).abs() < 1e-12);
    }

    #[test]
    fn rejects_malformed_instances() {
        assert!(Instance::new(vec![], vec![], 1.0, 0.1, 1.0, 1.0).is_err());
        assert!(Instance::new(vec![0.0], vec![vec![]], 1.0, 0.1, 1.0, 1.0).is_err());
        assert!(Instance::new(vec![1.0], vec![vec![]], 1.0, 0.0, 1.0, 1.0).is_err());
        assert!(Instance::new(vec![1.0], vec![vec![(-1.0, 1.0)]], 1.0, 0.1, 1.0, 1.0).is_err());
        assert!(Instance::new(vec![1.0], vec![vec![]], 0.0, 0.1, 1.0, 1.0).is_err());
    }
}
