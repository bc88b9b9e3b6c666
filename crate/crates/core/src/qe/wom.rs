//! Existential elimination over the lexicographic group with its chain of
//! convex subgroups.
//!
//! For a conjunction normalized on `x` the solution set is
//!
//! ```text
//!   C^K(c) ∩ ⋂_i (l_i, ∞) ∩ ⋂_j (-∞, u_j)  ∖  ⋃_e C^{k_e}(d_e)
//! ```
//!
//! after folding: multiple positive class literals collapse to the minimal
//! level `K` (the rest become compatibility conditions on the parameters),
//! and excluded classes at level `≥ K` reduce to conditions on the class
//! centre. `K = m+1` stands for "no class constraint".
//!
//! Emptiness of what remains is decided by convexity:
//!
//! * the convex part `W` is nonempty iff every pair of one-sided constraints
//!   is compatible (classes and half-lines are convex, so pairwise
//!   compatibility suffices);
//! * an excluded class can only swallow `W` when `W` lies inside a single
//!   class of that level, which happens exactly when both bounds are
//!   effective (inside `C^K(c)`) and `u - l ∈ U_{k_e}`; a class at a level
//!   below the reach of `W` misses infinitely many classes of `W`'s points,
//!   and finitely many of them never cover `W`.
//!
//! Every case guard is itself an atom over the parameter terms, so the
//! output is quantifier-free with no blow-up beyond the max/min selection.

use alloc::vec::Vec;

use crate::budget::Budget;
use crate::formula::{Formula, Literal, Term, VarId};
use crate::model::ModelId;
use crate::Result;

pub fn eliminate_conjunct(
    var: VarId,
    lits: &[Literal],
    m: u8,
    budget: &Budget,
) -> Result<Formula> {
    let model = ModelId::Wom { m };
    let cons = super::normalize_on_var(lits, var, model)?;

    if let Some(pinned) = cons.eqs.first() {
        return super::substitute_constraints(pinned, &cons, model);
    }

    // Fold positive class literals to the minimal level; ties keep the first
    // occurrence. K = m+1 encodes the absence of a class constraint.
    let mut side = Vec::new();
    let (cap_k, centre) = match cons
        .classes
        .iter()
        .enumerate()
        .min_by_key(|(i, (k, _))| (*k, *i))
    {
        Some((imin, (k, c))) => {
            for (i, (ki, ci)) in cons.classes.iter().enumerate() {
                if i != imin {
                    side.push(Formula::in_u(*ki, ci.sub(c, model)?));
                }
            }
            (*k, Some(c.clone()))
        }
        None => (m + 1, None),
    };

    // Excluded classes at level ≥ K reduce to conditions on the centre.
    let mut live_exclusions: Vec<(u8, Term)> = Vec::new();
    for (ke, d) in &cons.exclusions {
        if *ke >= cap_k {
            let c = centre.as_ref().expect("level ≥ K implies a class constraint");
            side.push(Formula::not(Formula::in_u(*ke, d.sub(c, model)?)));
        } else {
            live_exclusions.push((*ke, d.clone()));
        }
    }

    budget.charge_atoms(
        (cons.lowers.len() + 1) * (cons.uppers.len() + 1) * (live_exclusions.len() + 4),
    )?;

    // Case split on which lower bound is maximal and which upper bound is
    // minimal (first index wins ties); within a case the verdict reduces to
    // pairwise conditions on (l, u, centre, exclusion centres).
    let mut cases = Vec::new();
    let lower_choices = selection(&cons.lowers, Extremum::Max);
    let upper_choices = selection(&cons.uppers, Extremum::Min);
    for (l, guard_l) in &lower_choices {
        for (u, guard_u) in &upper_choices {
            let mut case = guard_l.clone();
            case.extend(guard_u.iter().cloned());
            case.extend(core_condition(
                l.as_ref(),
                u.as_ref(),
                cap_k,
                centre.as_ref(),
                &live_exclusions,
                m,
                model,
            )?);
            cases.push(Formula::and(case));
        }
    }

    side.push(Formula::or(cases));
    side.extend(cons.passthrough.iter().cloned());
    Ok(Formula::and(side))
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Extremum {
    Max,
    Min,
}

/// All ways to pick the extremal bound: `(None, [])` when there are no
/// bounds, else one case per index with the guard "this is the first index
/// attaining the extremum" — earlier entries strictly lose, later ones tie
/// or lose. The guards partition, so the output disjunction is exact.
fn selection(bounds: &[Term], which: Extremum) -> Vec<(Option<Term>, Vec<Formula>)> {
    if bounds.is_empty() {
        return alloc::vec![(None, Vec::new())];
    }
    bounds
        .iter()
        .enumerate()
        .map(|(i, b)| {
            let mut guard = Vec::new();
            for (j, other) in bounds.iter().enumerate() {
                let (lo, hi) = match which {
                    Extremum::Max => (other.clone(), b.clone()),
                    Extremum::Min => (b.clone(), other.clone()),
                };
                if j < i {
                    guard.push(Formula::less(lo, hi));
                } else if j > i {
                    guard.push(Formula::not(Formula::less(hi, lo)));
                }
            }
            (Some(b.clone()), guard)
        })
        .collect()
}

/// Nonemptiness of `C^K(c) ∩ (l, u) ∖ ⋃ C^{k_e}(d_e)` for a fixed choice of
/// extremal bounds, as a conjunction/disjunction of parameter atoms.
pub(crate) fn core_condition(
    l: Option<&Term>,
    u: Option<&Term>,
    cap_k: u8,
    centre: Option<&Term>,
    exclusions: &[(u8, Term)],
    m: u8,
    model: ModelId,
) -> Result<Vec<Formula>> {
    // Selection guards for max/min use non-strict comparisons, so l = u is
    // still possible here; the strict `l < u` below covers it.
    match (l, u, centre) {
        // No class constraint: a one-sided or unconstrained set meets
        // infinitely many classes of every named level.
        (None, _, None) | (_, None, None) => Ok(Vec::new()),
        (Some(l), Some(u), None) => {
            let mut out = alloc::vec![Formula::less(l.clone(), u.clone())];
            for (ke, d) in exclusions {
                out.push(not_covering(l, u, *ke, d, model)?);
            }
            Ok(out)
        }
        (None, None, Some(_)) => Ok(Vec::new()),
        (Some(l), None, Some(c)) => {
            // Tail of the class above l: nonempty iff l is not above the
            // whole class. Exclusions live strictly below level K and never
            // cover a tail.
            let inside = Formula::in_u(cap_k, l.sub(c, model)?);
            let below = Formula::less(l.clone(), c.clone());
            Ok(alloc::vec![Formula::or(alloc::vec![inside, below])])
        }
        (None, Some(u), Some(c)) => {
            let inside = Formula::in_u(cap_k, u.sub(c, model)?);
            let above = Formula::less(c.clone(), u.clone());
            Ok(alloc::vec![Formula::or(alloc::vec![inside, above])])
        }
        (Some(l), Some(u), Some(c)) => {
            debug_assert!(cap_k <= m);
            let l_in = Formula::in_u(cap_k, l.sub(c, model)?);
            let u_in = Formula::in_u(cap_k, u.sub(c, model)?);
            let l_below = Formula::less(l.clone(), c.clone());
            let u_above = Formula::less(c.clone(), u.clone());

            // Both bounds inside the class: the whole interval (l, u) sits
            // in the class, and exclusions may cover it.
            let mut both = alloc::vec![l_in.clone(), u_in.clone(), Formula::less(l.clone(), u.clone())];
            for (ke, d) in exclusions {
                both.push(not_covering(l, u, *ke, d, model)?);
            }

            // One bound effective: an in-class tail remains; no exclusion of
            // lower level covers a tail.
            let lower_tail =
                alloc::vec![l_in.clone(), Formula::not(u_in.clone()), u_above.clone()];
            let upper_tail =
                alloc::vec![Formula::not(l_in.clone()), l_below.clone(), u_in.clone()];
            // Neither effective: the whole class survives.
            let whole = alloc::vec![
                Formula::not(l_in),
                l_below,
                Formula::not(u_in),
                u_above,
            ];

            Ok(alloc::vec![Formula::or(alloc::vec![
                Formula::and(both),
                Formula::and(lower_tail),
                Formula::and(upper_tail),
                Formula::and(whole),
            ])])
        }
    }
}

/// `¬(C^{k_e}(d) ⊇ (l, u))`: the class covers the interval exactly when the
/// interval fits inside one level-`k_e` class (`u - l ∈ U_{k_e}`) that is
/// `d`'s own (`d - l ∈ U_{k_e}`).
fn not_covering(l: &Term, u: &Term, ke: u8, d: &Term, model: ModelId) -> Result<Formula> {
    let width = Formula::in_u(ke, u.sub(l, model)?);
    let same = Formula::in_u(ke, d.sub(l, model)?);
    Ok(Formula::not(Formula::and(alloc::vec![width, same])))
}
