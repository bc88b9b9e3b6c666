//! First-order formulas over the three signatures.
//!
//! Terms are normalized affine combinations `q_1·x_{i_1} + … + q_r·x_{i_r} + a`
//! with rational coefficients and a model constant: like terms are combined
//! and zero coefficients dropped at construction. Under `dlo` a term is a
//! single variable or a single constant (the signature has no addition).
//!
//! Variables are positional: the free variables of a formula defining a
//! subset of `M^n` are `x1..xn`, so projecting away the last `d` coordinates
//! is existential quantification over `x_{n-d+1}..x_n`. Bound variables are
//! alpha-renamed to a disjoint id range at parse time.

mod eval;
mod norm;
mod parse;
mod print;

pub use eval::{eval, eval_closed, Assignment};
pub use norm::{
    alpha_eq, dnf_conjuncts, free_vars, max_free_var, nnf, rename_free_vars, simplify,
    substitute, swap_formula, to_dnf, Literal,
};
pub use parse::parse;

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use crate::error::Error;
use crate::model::{Element, ModelId};
use crate::rat::Rat;
use crate::Result;

/// Variable identifier. Free (positional) variables are `1..=n`; parser-made
/// bound variables start at [`BOUND_BASE`].
pub type VarId = u32;

/// First id used for quantifier-bound variables.
pub const BOUND_BASE: VarId = 1_000_000;

/// Normalized affine term.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Term {
    /// Sorted by variable id; never stores a zero coefficient.
    coeffs: BTreeMap<VarId, Rat>,
    /// Model constant; `None` only transiently, normalized away by `new`.
    constant: Option<Element>,
}

impl Term {
    pub fn var(v: VarId) -> Term {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(v, Rat::one());
        Term { coeffs, constant: None }
    }

    pub fn constant(e: Element) -> Term {
        Term { coeffs: BTreeMap::new(), constant: Some(e) }
    }

    pub fn scaled_var(q: Rat, v: VarId) -> Term {
        let mut coeffs = BTreeMap::new();
        if !q.is_zero() {
            coeffs.insert(v, q);
        }
        Term { coeffs, constant: None }
    }

    pub fn with_parts(coeffs: BTreeMap<VarId, Rat>, constant: Option<Element>) -> Term {
        let mut t = Term { coeffs, constant };
        t.coeffs.retain(|_, q| !q.is_zero());
        t
    }

    pub fn coeffs(&self) -> &BTreeMap<VarId, Rat> {
        &self.coeffs
    }

    pub fn constant_part(&self) -> Option<&Element> {
        self.constant.as_ref()
    }

    pub fn coeff_of(&self, v: VarId) -> Option<&Rat> {
        self.coeffs.get(&v)
    }

    pub fn mentions(&self, v: VarId) -> bool {
        self.coeffs.contains_key(&v)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// The term with `v` struck out, paired with `v`'s coefficient.
    pub fn split_var(&self, v: VarId) -> Option<(Rat, Term)> {
        let q = self.coeffs.get(&v)?.clone();
        let mut rest = self.clone();
        rest.coeffs.remove(&v);
        Some((q, rest))
    }

    /// Formal sum; constants fold through the model operation.
    pub fn add(&self, other: &Term, model: ModelId) -> Result<Term> {
        let mut coeffs = self.coeffs.clone();
        for (v, q) in &other.coeffs {
            let entry = coeffs.entry(*v).or_insert_with(Rat::zero);
            *entry = &*entry + q;
        }
        coeffs.retain(|_, q| !q.is_zero());
        let constant = match (&self.constant, &other.constant) {
            (Some(a), Some(b)) => Some(a.add(b, model)?),
            (Some(a), None) | (None, Some(a)) => Some(a.clone()),
            (None, None) => None,
        };
        Ok(Term { coeffs, constant }.filled(model))
    }

    /// Formal `λ_q`-scaling of the whole term.
    pub fn scale(&self, q: &Rat, model: ModelId) -> Result<Term> {
        let mut coeffs = BTreeMap::new();
        if !q.is_zero() {
            for (v, c) in &self.coeffs {
                coeffs.insert(*v, c * q);
            }
        }
        let constant = match &self.constant {
            Some(e) => Some(e.scale(q, model)?),
            None => None,
        };
        Ok(Term { coeffs, constant }.filled(model))
    }

    pub fn sub(&self, other: &Term, model: ModelId) -> Result<Term> {
        self.add(&other.scale(&-Rat::one(), model)?, model)
    }

    /// Substitutes `repl` for the variable `v`.
    pub fn subst_var(&self, v: VarId, repl: &Term, model: ModelId) -> Result<Term> {
        match self.split_var(v) {
            None => Ok(self.clone()),
            Some((q, rest)) => rest.add(&repl.scale(&q, model)?, model),
        }
    }

    /// A term that combined away to nothing becomes the explicit zero
    /// constant, so every term evaluates to something.
    fn filled(self, model: ModelId) -> Term {
        if self.coeffs.is_empty() && self.constant.is_none() {
            Term::constant(Element::zero_of(model))
        } else {
            self
        }
    }

    /// Checks the term against a model signature.
    pub fn validate(&self, model: ModelId) -> Result<()> {
        if let Some(c) = &self.constant {
            c.validate(model)?;
        }
        if model == ModelId::Dlo {
            let n_parts = self.coeffs.len() + usize::from(self.constant.is_some());
            let unit_coeff = self.coeffs.values().all(|q| *q == Rat::one());
            if n_parts > 1 || !unit_coeff {
                return Err(Error::Signature(format!(
                    "`{self}` is not a dlo term (single variable or single constant only)"
                )));
            }
        }
        Ok(())
    }

    pub fn rename_vars(&self, map: &BTreeMap<VarId, VarId>) -> Term {
        let coeffs = self
            .coeffs
            .iter()
            .map(|(v, q)| (*map.get(v).unwrap_or(v), q.clone()))
            .collect();
        Term { coeffs, constant: self.constant.clone() }
    }
}

/// Atomic formulas. `a > b` is parsed as `Less(b, a)`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Atom {
    Less(Term, Term),
    Eq(Term, Term),
    /// `U_k(t)`; only in the `wom` signature, `1 ≤ k ≤ m`.
    InU(u8, Term),
}

impl Atom {
    pub fn validate(&self, model: ModelId) -> Result<()> {
        match self {
            Atom::Less(a, b) | Atom::Eq(a, b) => {
                a.validate(model)?;
                b.validate(model)
            }
            Atom::InU(k, t) => match model {
                ModelId::Wom { m } if *k >= 1 && *k <= m => t.validate(model),
                ModelId::Wom { m } => {
                    Err(Error::Signature(format!("U{k} out of range 1..={m}")))
                }
                _ => Err(Error::Signature(format!("U{k} atom outside the wom signature"))),
            },
        }
    }

    pub fn rename_vars(&self, map: &BTreeMap<VarId, VarId>) -> Atom {
        match self {
            Atom::Less(a, b) => Atom::Less(a.rename_vars(map), b.rename_vars(map)),
            Atom::Eq(a, b) => Atom::Eq(a.rename_vars(map), b.rename_vars(map)),
            Atom::InU(k, t) => Atom::InU(*k, t.rename_vars(map)),
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = &Term> {
        let (a, b) = match self {
            Atom::Less(a, b) | Atom::Eq(a, b) => (a, Some(b)),
            Atom::InU(_, t) => (t, None),
        };
        core::iter::once(a).chain(b)
    }
}

/// Formula AST. `And`/`Or` are n-ary; an empty `And` is `True`, an empty
/// `Or` is `False`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    True,
    False,
    Atom(Atom),
    Not(alloc::boxed::Box<Formula>),
    And(Vec<Formula>),
    Or(Vec<Formula>),
    Exists(VarId, alloc::boxed::Box<Formula>),
    Forall(VarId, alloc::boxed::Box<Formula>),
}

impl Formula {
    pub fn atom(a: Atom) -> Formula {
        Formula::Atom(a)
    }

    pub fn not(f: Formula) -> Formula {
        Formula::Not(alloc::boxed::Box::new(f))
    }

    pub fn and(mut parts: Vec<Formula>) -> Formula {
        match parts.len() {
            0 => Formula::True,
            1 => parts.pop().unwrap(),
            _ => Formula::And(parts),
        }
    }

    pub fn or(mut parts: Vec<Formula>) -> Formula {
        match parts.len() {
            0 => Formula::False,
            1 => parts.pop().unwrap(),
            _ => Formula::Or(parts),
        }
    }

    pub fn exists(v: VarId, f: Formula) -> Formula {
        Formula::Exists(v, alloc::boxed::Box::new(f))
    }

    pub fn forall(v: VarId, f: Formula) -> Formula {
        Formula::Forall(v, alloc::boxed::Box::new(f))
    }

    pub fn less(a: Term, b: Term) -> Formula {
        Formula::Atom(Atom::Less(a, b))
    }

    pub fn eq(a: Term, b: Term) -> Formula {
        Formula::Atom(Atom::Eq(a, b))
    }

    pub fn in_u(k: u8, t: Term) -> Formula {
        Formula::Atom(Atom::InU(k, t))
    }

    pub fn is_quantifier_free(&self) -> bool {
        match self {
            Formula::True | Formula::False | Formula::Atom(_) => true,
            Formula::Not(f) => f.is_quantifier_free(),
            Formula::And(fs) | Formula::Or(fs) => fs.iter().all(|f| f.is_quantifier_free()),
            Formula::Exists(..) | Formula::Forall(..) => false,
        }
    }

    /// Number of atom occurrences; the size measure budgets charge against.
    pub fn atom_count(&self) -> usize {
        match self {
            Formula::True | Formula::False => 0,
            Formula::Atom(_) => 1,
            Formula::Not(f) | Formula::Exists(_, f) | Formula::Forall(_, f) => f.atom_count(),
            Formula::And(fs) | Formula::Or(fs) => fs.iter().map(|f| f.atom_count()).sum(),
        }
    }

    pub fn validate(&self, model: ModelId) -> Result<()> {
        match self {
            Formula::True | Formula::False => Ok(()),
            Formula::Atom(a) => a.validate(model),
            Formula::Not(f) | Formula::Exists(_, f) | Formula::Forall(_, f) => f.validate(model),
            Formula::And(fs) | Formula::Or(fs) => {
                fs.iter().try_for_each(|f| f.validate(model))
            }
        }
    }
}
