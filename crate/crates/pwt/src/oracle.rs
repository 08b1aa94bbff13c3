//! Brute-force ground truth for small instances.
//!
//! Enumerates subsets in Gray-code order so that each step flips a single
//! item and the per-edge weight prefixes can be patched in `O(n)`.

use crate::problem::{Instance, PackingPlan};
use crate::Error;

/// Hard cap on exhaustively enumerated items.
pub const MAX_ITEMS: usize = 25;

/// Equal-value plans within this slack are ties; ties keep the
/// lexicographically smallest selection vector.
const TIE_EPS: f64 = 1e-9;

/// Exhaustive optimum over all capacity-feasible selections.
pub fn brute_force(inst: &Instance) -> Result<(PackingPlan, f64), Error> {
    if inst.item_count() > MAX_ITEMS {
        return Err(Error::TooLarge { items: inst.item_count(), limit: MAX_ITEMS });
    }
    let fixed = vec![None; inst.item_count()];
    let free: Vec<usize> = (0..inst.item_count()).collect();
    Ok(enumerate(inst, &fixed, &free).expect("the empty selection is always feasible"))
}

/// Exhaustive optimum with some items pre-assigned. `fixed[e] = Some(v)`
/// forces item `e`; `None` leaves it free. Returns `None` when no feasible
/// completion exists.
pub fn brute_force_restricted(
    inst: &Instance,
    fixed: &[Option<bool>],
) -> Result<Option<(PackingPlan, f64)>, Error> {
    assert_eq!(fixed.len(), inst.item_count());
    let free: Vec<usize> =
        (0..inst.item_count()).filter(|&e| fixed[e].is_none()).collect();
    if free.len() > MAX_ITEMS {
        return Err(Error::TooLarge { items: free.len(), limit: MAX_ITEMS });
    }
    Ok(enumerate(inst, fixed, &free))
}

/// Decision variant: is the optimum at least `bound`?
pub fn decision(inst: &Instance, bound: f64) -> Result<bool, Error> {
    let (_, value) = brute_force(inst)?;
    Ok(value >= bound - 1e-9)
}

fn enumerate(
    inst: &Instance,
    fixed: &[Option<bool>],
    free: &[usize],
) -> Option<(PackingPlan, f64)> {
    let n = inst.edges();
    let mut selected = vec![false; inst.item_count()];
    let mut prefix = vec![0.0; n];
    let mut weight = 0.0;
    let mut profit = 0.0;
    for (e, f) in fixed.iter().enumerate() {
        if *f == Some(true) {
            selected[e] = true;
            let it = inst.item(e);
            weight += it.weight;
            profit += it.profit;
            for p in &mut prefix[it.city - 1..] {
                *p += it.weight;
            }
        }
    }

    let mut best: Option<(Vec<bool>, f64)> = None;
    let mut consider = |sel: &Vec<bool>, value: f64| match &mut best {
        None => best = Some((sel.clone(), value)),
        Some((bsel, bval)) => {
            if value > *bval + TIE_EPS || (value > *bval - TIE_EPS && lex_less(sel, bsel)) {
                *bsel = sel.clone();
                *bval = value;
            }
        }
    };

    if weight <= inst.capacity() {
        consider(&selected, profit - cost_of(inst, &prefix));
    }
    for step in 1u64..(1u64 << free.len()) {
        let bit = step.trailing_zeros() as usize;
        let e = free[bit];
        let it = inst.item(e);
        let sign = if selected[e] { -1.0 } else { 1.0 };
        selected[e] = !selected[e];
        weight += sign * it.weight;
        profit += sign * it.profit;
        for p in &mut prefix[it.city - 1..] {
            *p += sign * it.weight;
        }
        if weight <= inst.capacity() {
            consider(&selected, profit - cost_of(inst, &prefix));
        }
    }

    best.map(|(sel, value)| (PackingPlan::new(inst, sel), value))
}

fn cost_of(inst: &Instance, prefix: &[f64]) -> f64 {
    let mut t = 0.0;
    for (i, &d) in inst.distances().iter().enumerate() {
        t += d / inst.velocity_at(prefix[i]);
    }
    inst.rent * t
}

/// First differing item decides; unselected beats selected.
fn lex_less(a: &[bool], b: &[bool]) -> bool {
    for (x, y) in a.iter().zip(b) {
        if x != y {
            return !*x;
        }
    }
    false
}
