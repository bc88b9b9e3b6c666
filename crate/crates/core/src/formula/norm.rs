//! Normal-form transforms: negation normal form, disjunctive normal form,
//! constant-folding simplification, substitution and variable renaming.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use super::eval::{eval_atom, Assignment};
use super::{Atom, Formula, Term, VarId};
use crate::budget::Budget;
use crate::model::ModelId;
use crate::Result;

/// A possibly negated atom.
pub type Literal = (Atom, bool);

pub fn free_vars(f: &Formula) -> BTreeSet<VarId> {
    fn walk(f: &Formula, bound: &mut Vec<VarId>, acc: &mut BTreeSet<VarId>) {
        match f {
            Formula::True | Formula::False => {}
            Formula::Atom(a) => {
                for t in a.terms() {
                    for v in t.coeffs().keys() {
                        if !bound.contains(v) {
                            acc.insert(*v);
                        }
                    }
                }
            }
            Formula::Not(g) => walk(g, bound, acc),
            Formula::And(parts) | Formula::Or(parts) => {
                for p in parts {
                    walk(p, bound, acc);
                }
            }
            Formula::Exists(v, g) | Formula::Forall(v, g) => {
                bound.push(*v);
                walk(g, bound, acc);
                bound.pop();
            }
        }
    }
    let mut acc = BTreeSet::new();
    walk(f, &mut Vec::new(), &mut acc);
    acc
}

/// Largest positional variable occurring free; 0 when there is none.
pub fn max_free_var(f: &Formula) -> VarId {
    free_vars(f).into_iter().filter(|v| *v < super::BOUND_BASE).max().unwrap_or(0)
}

/// Renames free variables according to `map`; ids outside the map are kept.
/// The map must target ids that are not captured by any binder, which holds
/// for positional-to-positional renamings since binders use a disjoint range.
pub fn rename_free_vars(f: &Formula, map: &BTreeMap<VarId, VarId>) -> Formula {
    match f {
        Formula::True | Formula::False => f.clone(),
        Formula::Atom(a) => Formula::Atom(a.rename_vars(map)),
        Formula::Not(g) => Formula::not(rename_free_vars(g, map)),
        Formula::And(parts) => {
            Formula::And(parts.iter().map(|p| rename_free_vars(p, map)).collect())
        }
        Formula::Or(parts) => {
            Formula::Or(parts.iter().map(|p| rename_free_vars(p, map)).collect())
        }
        Formula::Exists(v, g) => Formula::exists(*v, rename_free_vars(g, map)),
        Formula::Forall(v, g) => Formula::forall(*v, rename_free_vars(g, map)),
    }
}

/// The coordinate swap on `M^2`: exchanges `x1` and `x2`.
pub fn swap_formula(f: &Formula) -> Formula {
    let mut map = BTreeMap::new();
    map.insert(1, 2);
    map.insert(2, 1);
    rename_free_vars(f, &map)
}

/// Substitutes `repl` for every occurrence of `v`.
pub fn substitute(f: &Formula, v: VarId, repl: &Term, model: ModelId) -> Result<Formula> {
    Ok(match f {
        Formula::True | Formula::False => f.clone(),
        Formula::Atom(a) => Formula::Atom(match a {
            Atom::Less(s, t) => {
                Atom::Less(s.subst_var(v, repl, model)?, t.subst_var(v, repl, model)?)
            }
            Atom::Eq(s, t) => {
                Atom::Eq(s.subst_var(v, repl, model)?, t.subst_var(v, repl, model)?)
            }
            Atom::InU(k, t) => Atom::InU(*k, t.subst_var(v, repl, model)?),
        }),
        Formula::Not(g) => Formula::not(substitute(g, v, repl, model)?),
        Formula::And(parts) => Formula::And(
            parts.iter().map(|p| substitute(p, v, repl, model)).collect::<Result<_>>()?,
        ),
        Formula::Or(parts) => Formula::Or(
            parts.iter().map(|p| substitute(p, v, repl, model)).collect::<Result<_>>()?,
        ),
        Formula::Exists(w, g) => Formula::exists(*w, substitute(g, v, repl, model)?),
        Formula::Forall(w, g) => Formula::forall(*w, substitute(g, v, repl, model)?),
    })
}

/// Negation normal form: negations pushed to atoms, quantifiers dualized.
pub fn nnf(f: &Formula) -> Formula {
    fn pos(f: &Formula) -> Formula {
        match f {
            Formula::True | Formula::False | Formula::Atom(_) => f.clone(),
            Formula::Not(g) => neg(g),
            Formula::And(parts) => Formula::And(parts.iter().map(pos).collect()),
            Formula::Or(parts) => Formula::Or(parts.iter().map(pos).collect()),
            Formula::Exists(v, g) => Formula::exists(*v, pos(g)),
            Formula::Forall(v, g) => Formula::forall(*v, pos(g)),
        }
    }
    fn neg(f: &Formula) -> Formula {
        match f {
            Formula::True => Formula::False,
            Formula::False => Formula::True,
            Formula::Atom(_) => Formula::not(f.clone()),
            Formula::Not(g) => pos(g),
            Formula::And(parts) => Formula::Or(parts.iter().map(neg).collect()),
            Formula::Or(parts) => Formula::And(parts.iter().map(neg).collect()),
            Formula::Exists(v, g) => Formula::forall(*v, neg(g)),
            Formula::Forall(v, g) => Formula::exists(*v, neg(g)),
        }
    }
    pos(f)
}

/// DNF of a quantifier-free formula as a list of literal conjunctions.
/// `Ok(vec![])` is `false`; a conjunction may be empty (`true`).
pub fn dnf_conjuncts(f: &Formula, budget: &Budget) -> Result<Vec<Vec<Literal>>> {
    fn go(f: &Formula, budget: &Budget) -> Result<Vec<Vec<Literal>>> {
        match f {
            Formula::True => Ok(alloc::vec![Vec::new()]),
            Formula::False => Ok(Vec::new()),
            Formula::Atom(a) => Ok(alloc::vec![alloc::vec![(a.clone(), true)]]),
            Formula::Not(g) => match &**g {
                Formula::Atom(a) => Ok(alloc::vec![alloc::vec![(a.clone(), false)]]),
                _ => Err(crate::error::Error::Internal(alloc::string::String::from(
                    "dnf_conjuncts expects NNF input",
                ))),
            },
            Formula::Or(parts) => {
                let mut out = Vec::new();
                for p in parts {
                    out.extend(go(p, budget)?);
                }
                budget.charge_atoms(out.len())?;
                Ok(out)
            }
            Formula::And(parts) => {
                let mut acc: Vec<Vec<Literal>> = alloc::vec![Vec::new()];
                for p in parts {
                    let next = go(p, budget)?;
                    budget.charge_atoms(acc.len().saturating_mul(next.len()))?;
                    let mut merged = Vec::with_capacity(acc.len() * next.len());
                    for a in &acc {
                        for b in &next {
                            let mut c = a.clone();
                            c.extend(b.iter().cloned());
                            merged.push(c);
                        }
                    }
                    acc = merged;
                }
                Ok(acc)
            }
            Formula::Exists(..) | Formula::Forall(..) => Err(crate::error::Error::Internal(
                alloc::string::String::from("dnf_conjuncts expects quantifier-free input"),
            )),
        }
    }
    go(&nnf(f), budget)
}

/// Disjunctive normal form of a quantifier-free formula.
pub fn to_dnf(f: &Formula, budget: &Budget) -> Result<Formula> {
    let conjs = dnf_conjuncts(f, budget)?;
    Ok(Formula::or(
        conjs
            .into_iter()
            .map(|lits| {
                Formula::and(
                    lits.into_iter()
                        .map(|(a, positive)| {
                            let at = Formula::Atom(a);
                            if positive {
                                at
                            } else {
                                Formula::not(at)
                            }
                        })
                        .collect(),
                )
            })
            .collect(),
    ))
}

fn is_ground(t: &Term) -> bool {
    t.coeffs().is_empty()
}

fn fold_atom(a: &Atom, model: ModelId) -> Result<Option<bool>> {
    match a {
        Atom::Less(s, t) => {
            if s == t {
                return Ok(Some(false));
            }
            if is_ground(s) && is_ground(t) {
                return Ok(Some(eval_atom(a, &Assignment::new(), model)?));
            }
            Ok(None)
        }
        Atom::Eq(s, t) => {
            if s == t {
                return Ok(Some(true));
            }
            if is_ground(s) && is_ground(t) {
                return Ok(Some(eval_atom(a, &Assignment::new(), model)?));
            }
            Ok(None)
        }
        Atom::InU(_, t) => {
            if is_ground(t) {
                return Ok(Some(eval_atom(a, &Assignment::new(), model)?));
            }
            Ok(None)
        }
    }
}

/// Bottom-up simplification: folds ground atoms, flattens and canonically
/// sorts `And`/`Or`, removes duplicates, applies unit and complement laws,
/// and drops vacuous quantifiers. Output order is deterministic.
pub fn simplify(f: &Formula, model: ModelId) -> Result<Formula> {
    Ok(match f {
        Formula::True | Formula::False => f.clone(),
        Formula::Atom(a) => match fold_atom(a, model)? {
            Some(true) => Formula::True,
            Some(false) => Formula::False,
            None => f.clone(),
        },
        Formula::Not(g) => match simplify(g, model)? {
            Formula::True => Formula::False,
            Formula::False => Formula::True,
            Formula::Not(h) => *h,
            h => Formula::not(h),
        },
        Formula::And(parts) => {
            let mut flat: BTreeSet<Formula> = BTreeSet::new();
            let mut queue: Vec<Formula> = Vec::new();
            for p in parts {
                queue.push(simplify(p, model)?);
            }
            while let Some(p) = queue.pop() {
                match p {
                    Formula::True => {}
                    Formula::False => return Ok(Formula::False),
                    Formula::And(inner) => queue.extend(inner),
                    other => {
                        flat.insert(other);
                    }
                }
            }
            for p in &flat {
                if flat.contains(&complement(p)) {
                    return Ok(Formula::False);
                }
            }
            Formula::and(flat.into_iter().collect())
        }
        Formula::Or(parts) => {
            let mut flat: BTreeSet<Formula> = BTreeSet::new();
            let mut queue: Vec<Formula> = Vec::new();
            for p in parts {
                queue.push(simplify(p, model)?);
            }
            while let Some(p) = queue.pop() {
                match p {
                    Formula::False => {}
                    Formula::True => return Ok(Formula::True),
                    Formula::Or(inner) => queue.extend(inner),
                    other => {
                        flat.insert(other);
                    }
                }
            }
            for p in &flat {
                if flat.contains(&complement(p)) {
                    return Ok(Formula::True);
                }
            }
            Formula::or(flat.into_iter().collect())
        }
        Formula::Exists(v, g) => match simplify(g, model)? {
            Formula::True => Formula::True,
            Formula::False => Formula::False,
            h if !free_vars(&h).contains(v) => h,
            h => Formula::exists(*v, h),
        },
        Formula::Forall(v, g) => match simplify(g, model)? {
            Formula::True => Formula::True,
            Formula::False => Formula::False,
            h if !free_vars(&h).contains(v) => h,
            h => Formula::forall(*v, h),
        },
    })
}

fn complement(f: &Formula) -> Formula {
    match f {
        Formula::Not(g) => (**g).clone(),
        other => Formula::not(other.clone()),
    }
}

/// Structural equality modulo renaming of bound variables.
pub fn alpha_eq(a: &Formula, b: &Formula) -> bool {
    fn go(a: &Formula, b: &Formula, map: &mut BTreeMap<VarId, VarId>) -> bool {
        match (a, b) {
            (Formula::True, Formula::True) | (Formula::False, Formula::False) => true,
            (Formula::Atom(x), Formula::Atom(y)) => {
                let renamed = x.rename_vars(map);
                renamed == *y
            }
            (Formula::Not(x), Formula::Not(y)) => go(x, y, map),
            (Formula::And(xs), Formula::And(ys)) | (Formula::Or(xs), Formula::Or(ys)) => {
                xs.len() == ys.len() && xs.iter().zip(ys).all(|(x, y)| go(x, y, map))
            }
            (Formula::Exists(v, x), Formula::Exists(w, y))
            | (Formula::Forall(v, x), Formula::Forall(w, y)) => {
                let shadowed = map.insert(*v, *w);
                let ok = go(x, y, map);
                match shadowed {
                    Some(old) => {
                        map.insert(*v, old);
                    }
                    None => {
                        map.remove(v);
                    }
                }
                ok
            }
            _ => false,
        }
    }
    go(a, b, &mut BTreeMap::new())
}
