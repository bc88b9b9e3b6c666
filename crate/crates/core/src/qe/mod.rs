//! Quantifier elimination for the three theories, plus an independent
//! one-variable test-point oracle used to differentially validate it.
//!
//! The driver rewrites `∀` as `¬∃¬`, eliminates innermost quantifiers first,
//! and processes each existential over the disjunctive normal form of its
//! body. Negated order literals that mention the quantified variable are
//! split into strict/equality disjuncts first, so each single-variable
//! elimination sees only five literal shapes.

pub(crate) mod concat;
mod dlo;
mod oracle;
pub(crate) mod wom;

pub use oracle::{sat_one_var, SatOutcome, SatWitness, WitnessRule};

use alloc::string::String;
use alloc::vec::Vec;

use crate::budget::Budget;
use crate::error::Error;
use crate::formula::{
    dnf_conjuncts, simplify, substitute, Atom, Formula, Literal, Term, VarId,
};
use crate::model::ModelId;
use crate::Result;

/// A constraint on a single distinguished variable with the variable
/// isolated and coefficient 1. `InClass(0, t)` is canonicalized to `Eq(t)`
/// at constructionsites; negated equality never reaches this type.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum NormalizedLiteral {
    /// x = t
    Eq(Term),
    /// x < t
    Lt(Term),
    /// x > t
    Gt(Term),
    /// x ∈ C^k(t), i.e. U_k(x - t); k in 1..=m
    InClass(u8, Term),
    /// x ∉ C^k(t); k in 1..=m
    NotInClass(u8, Term),
}

impl NormalizedLiteral {
    /// The parameter term.
    pub fn param(&self) -> &Term {
        match self {
            NormalizedLiteral::Eq(t)
            | NormalizedLiteral::Lt(t)
            | NormalizedLiteral::Gt(t)
            | NormalizedLiteral::InClass(_, t)
            | NormalizedLiteral::NotInClass(_, t) => t,
        }
    }

    /// Renders the constraint back as a formula in the variable `v`.
    pub fn to_formula(&self, v: VarId, model: ModelId) -> Result<Formula> {
        let x = Term::var(v);
        Ok(match self {
            NormalizedLiteral::Eq(t) => Formula::eq(x, t.clone()),
            NormalizedLiteral::Lt(t) => Formula::less(x, t.clone()),
            NormalizedLiteral::Gt(t) => Formula::less(t.clone(), x),
            NormalizedLiteral::InClass(k, t) => Formula::in_u(*k, x.sub(t, model)?),
            NormalizedLiteral::NotInClass(k, t) => {
                Formula::not(Formula::in_u(*k, x.sub(t, model)?))
            }
        })
    }
}

/// Outcome of isolating `var` in a literal.
pub enum Solved {
    /// The literal constrains `var` as given.
    On(NormalizedLiteral),
    /// The literal does not constrain `var`; the carried atom (the original
    /// one, or a rewrite when `var`'s occurrences cancel in the difference)
    /// passes through elimination.
    Free(Atom),
}

/// Isolates `var` in a possibly negated atom: divides by its coefficient,
/// flipping the order for negative ones. `U_k` is invariant under rational
/// scaling, so class atoms normalize to class membership of `var`.
///
/// Negated order atoms must be split into strict/equality parts before
/// calling this; they are rejected here.
pub fn solve_for(atom: &Atom, positive: bool, var: VarId, model: ModelId) -> Result<Solved> {
    let mentions = atom.terms().any(|t| t.mentions(var));
    if !mentions {
        return Ok(Solved::Free(atom.clone()));
    }
    let zero = || Term::constant(crate::model::Element::zero_of(model));
    match (atom, positive) {
        (Atom::Less(s, t), true) => {
            let diff = t.sub(s, model)?;
            match diff.split_var(var) {
                Some((q, rest)) => {
                    // s < t  ⟺  0 < q·x + rest  ⟺  x ⋛ -rest/q.
                    let bound = rest.scale(&(-q.clone().recip()), model)?;
                    Ok(Solved::On(if q.is_positive() {
                        NormalizedLiteral::Gt(bound)
                    } else {
                        NormalizedLiteral::Lt(bound)
                    }))
                }
                // The occurrences of `var` cancel: s < t ⟺ 0 < diff.
                None => Ok(Solved::Free(Atom::Less(zero(), diff))),
            }
        }
        (Atom::Eq(s, t), true) => {
            let diff = t.sub(s, model)?;
            match diff.split_var(var) {
                Some((q, rest)) => {
                    let bound = rest.scale(&(-q.recip()), model)?;
                    Ok(Solved::On(NormalizedLiteral::Eq(bound)))
                }
                None => Ok(Solved::Free(Atom::Eq(zero(), diff))),
            }
        }
        (Atom::InU(k, t), sign) => {
            let (q, rest) = t
                .split_var(var)
                .ok_or_else(|| Error::Internal(String::from("var vanished in U argument")))?;
            let center = rest.scale(&(-q.recip()), model)?;
            Ok(Solved::On(if sign {
                NormalizedLiteral::InClass(*k, center)
            } else {
                NormalizedLiteral::NotInClass(*k, center)
            }))
        }
        (Atom::Less(..), false) | (Atom::Eq(..), false) => Err(Error::Internal(String::from(
            "negated order literal reached solve_for; split it first",
        ))),
    }
}

/// Conjunct constraints separated by role relative to one variable.
#[derive(Debug, Default, Clone)]
pub struct VarConstraints {
    pub eqs: Vec<Term>,
    pub lowers: Vec<Term>,
    pub uppers: Vec<Term>,
    pub classes: Vec<(u8, Term)>,
    pub exclusions: Vec<(u8, Term)>,
    /// Literals not mentioning the variable, kept verbatim.
    pub passthrough: Vec<Formula>,
}

pub fn normalize_on_var(
    lits: &[Literal],
    var: VarId,
    model: ModelId,
) -> Result<VarConstraints> {
    let mut out = VarConstraints::default();
    for (atom, positive) in lits {
        match solve_for(atom, *positive, var, model)? {
            Solved::Free(a) => {
                let f = Formula::Atom(a);
                out.passthrough.push(if *positive { f } else { Formula::not(f) });
            }
            Solved::On(NormalizedLiteral::Eq(t)) => out.eqs.push(t),
            Solved::On(NormalizedLiteral::Lt(t)) => out.uppers.push(t),
            Solved::On(NormalizedLiteral::Gt(t)) => out.lowers.push(t),
            Solved::On(NormalizedLiteral::InClass(0, t)) => out.eqs.push(t),
            Solved::On(NormalizedLiteral::InClass(k, t)) => out.classes.push((k, t)),
            Solved::On(NormalizedLiteral::NotInClass(k, t)) => out.exclusions.push((k, t)),
        }
    }
    Ok(out)
}

/// Splits negated order literals into strict/equality disjuncts.
/// With `split_all` set every negated order literal is split; otherwise only
/// the ones mentioning `var` (the rest pass through elimination untouched).
pub fn split_negations(
    lits: &[Literal],
    var: VarId,
    split_all: bool,
) -> Vec<Vec<Literal>> {
    let mut branches: Vec<Vec<Literal>> = alloc::vec![Vec::new()];
    for (atom, positive) in lits {
        let needs_split = !positive
            && matches!(atom, Atom::Less(..) | Atom::Eq(..))
            && (split_all || atom.terms().any(|t| t.mentions(var)));
        if !needs_split {
            for b in &mut branches {
                b.push((atom.clone(), *positive));
            }
            continue;
        }
        let (alt1, alt2) = match atom {
            // ¬(s < t)  ⟺  s = t ∨ t < s
            Atom::Less(s, t) => (Atom::Eq(s.clone(), t.clone()), Atom::Less(t.clone(), s.clone())),
            // ¬(s = t)  ⟺  s < t ∨ t < s
            Atom::Eq(s, t) => (Atom::Less(s.clone(), t.clone()), Atom::Less(t.clone(), s.clone())),
            _ => unreachable!(),
        };
        let mut extra = branches.clone();
        for b in &mut branches {
            b.push((alt1.clone(), true));
        }
        for b in &mut extra {
            b.push((alt2.clone(), true));
        }
        branches.extend(extra);
    }
    branches
}

/// Existential elimination of `var` from one conjunction of literals.
pub fn eliminate_one(
    var: VarId,
    lits: &[Literal],
    model: ModelId,
    budget: &Budget,
) -> Result<Formula> {
    let split_all = matches!(model, ModelId::Concat { .. });
    let mut disjuncts = Vec::new();
    for branch in split_negations(lits, var, split_all) {
        budget.charge_atoms(branch.len() + 1)?;
        let f = match model {
            ModelId::Dlo => dlo::eliminate_conjunct(var, &branch, budget)?,
            ModelId::Wom { m } => wom::eliminate_conjunct(var, &branch, m, budget)?,
            ModelId::Concat { m } => concat::eliminate_conjunct(var, &branch, m, budget)?,
        };
        disjuncts.push(f);
    }
    simplify(&Formula::or(disjuncts), model)
}

/// Full quantifier elimination; the result is semantically equal to `f` and
/// quantifier-free. `∀` is rewritten as `¬∃¬`; elimination is innermost
/// first, over the DNF of each quantifier body.
pub fn eliminate(f: &Formula, model: ModelId) -> Result<Formula> {
    eliminate_with(f, model, &Budget::default())
}

pub fn eliminate_with(f: &Formula, model: ModelId, budget: &Budget) -> Result<Formula> {
    let out = match f {
        Formula::True | Formula::False | Formula::Atom(_) => f.clone(),
        Formula::Not(g) => Formula::not(eliminate_with(g, model, budget)?),
        Formula::And(parts) => Formula::And(
            parts.iter().map(|p| eliminate_with(p, model, budget)).collect::<Result<_>>()?,
        ),
        Formula::Or(parts) => Formula::Or(
            parts.iter().map(|p| eliminate_with(p, model, budget)).collect::<Result<_>>()?,
        ),
        Formula::Forall(v, g) => {
            let inner = Formula::exists(*v, Formula::not((**g).clone()));
            Formula::not(eliminate_with(&inner, model, budget)?)
        }
        Formula::Exists(v, g) => {
            let body = eliminate_with(g, model, budget)?;
            let body = simplify(&body, model)?;
            let mut disjuncts = Vec::new();
            for conj in dnf_conjuncts(&body, budget)? {
                disjuncts.push(eliminate_one(*v, &conj, model, budget)?);
            }
            Formula::or(disjuncts)
        }
    };
    simplify(&out, model)
}

/// Substitution form used by the per-model eliminators when an equality
/// literal pins the variable: every remaining constraint is instantiated at
/// the pinned term.
fn substitute_constraints(
    pinned: &Term,
    cons: &VarConstraints,
    model: ModelId,
) -> Result<Formula> {
    let mut parts = Vec::new();
    for e in &cons.eqs {
        if e != pinned {
            parts.push(Formula::eq(pinned.clone(), e.clone()));
        }
    }
    for l in &cons.lowers {
        parts.push(Formula::less(l.clone(), pinned.clone()));
    }
    for u in &cons.uppers {
        parts.push(Formula::less(pinned.clone(), u.clone()));
    }
    for (k, c) in &cons.classes {
        parts.push(Formula::in_u(*k, pinned.sub(c, model)?));
    }
    for (k, d) in &cons.exclusions {
        parts.push(Formula::not(Formula::in_u(*k, pinned.sub(d, model)?)));
    }
    parts.extend(cons.passthrough.iter().cloned());
    Ok(Formula::and(parts))
}

/// Instantiates the body of `∃ var …` at a concrete pinned variable value
/// given as a term; used by tests and the `oracle` front end.
pub fn instantiate(
    f: &Formula,
    var: VarId,
    value: &Term,
    model: ModelId,
) -> Result<Formula> {
    substitute(f, var, value, model)
}
