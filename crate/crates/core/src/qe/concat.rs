//! Existential elimination over the concatenated model.
//!
//! Affine rearrangement is not sound across segments (the totalized `+`
//! collapses off-segment sums to `c1`), so elimination first case-splits
//! every variable of the conjunct over its location — one of the `m` open
//! segments or one of the `m-1` separator points. Under a fixed location
//! assignment every atom either has a constant truth value or becomes a
//! rational linear constraint among the in-segment values of the variables
//! of one segment; the quantified variable is then eliminated by
//! substitution (an equality pins it) or by density of `Q` (each lower
//! bound below each upper bound). Location guards on the free variables are
//! emitted as order atoms against the separator constants.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;

use crate::budget::Budget;
use crate::error::Error;
use crate::formula::{Atom, Formula, Literal, Term, VarId};
use crate::model::{ConcatElem, Element, ModelId};
use crate::rat::Rat;
use crate::Result;

/// Location of a variable on the glued line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Loc {
    Seg(u8),
    Sep(u8),
}

impl Loc {
    /// Segments sit at odd positions `2i-1`, separators at even `2j`.
    fn position(self) -> u8 {
        match self {
            Loc::Seg(i) => 2 * i - 1,
            Loc::Sep(j) => 2 * j,
        }
    }
}

pub fn locations(m: u8) -> Vec<Loc> {
    let mut out = Vec::new();
    for i in 1..=m {
        out.push(Loc::Seg(i));
        if i < m {
            out.push(Loc::Sep(i));
        }
    }
    out
}

/// Rational affine expression over the in-segment values of variables.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LinExpr {
    pub coeffs: BTreeMap<VarId, Rat>,
    pub offset: Rat,
}

impl LinExpr {
    fn constant(q: Rat) -> Self {
        LinExpr { coeffs: BTreeMap::new(), offset: q }
    }

    fn add_scaled(&mut self, other: &LinExpr, factor: &Rat) {
        for (v, q) in &other.coeffs {
            let entry = self.coeffs.entry(*v).or_insert_with(Rat::zero);
            *entry = &*entry + &(q * factor);
        }
        self.offset = &self.offset + &(&other.offset * factor);
        self.coeffs.retain(|_, q| !q.is_zero());
    }

    fn sub(&self, other: &LinExpr) -> LinExpr {
        let mut out = self.clone();
        out.add_scaled(other, &-Rat::one());
        out
    }

    fn split_var(&self, v: VarId) -> Option<(Rat, LinExpr)> {
        let q = self.coeffs.get(&v)?.clone();
        let mut rest = self.clone();
        rest.coeffs.remove(&v);
        Some((q, rest))
    }

    fn is_constant(&self) -> bool {
        self.coeffs.is_empty()
    }
}

/// Value shape of a term under a location assignment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SpecValue {
    Sep(u8),
    Aff { seg: u8, expr: LinExpr },
}

impl SpecValue {
    fn position(&self) -> u8 {
        match self {
            SpecValue::Sep(j) => Loc::Sep(*j).position(),
            SpecValue::Aff { seg, .. } => Loc::Seg(*seg).position(),
        }
    }
}

/// Shape of a term under `sigma`. A coefficient of exactly 1 is a bare
/// occurrence (separators survive); any other coefficient is a `λ_q`
/// application, which sends separators to `c1`. Cross-segment sums and sums
/// involving separators collapse to `c1`, matching the totalized `+`.
pub fn term_value(t: &Term, sigma: &BTreeMap<VarId, Loc>) -> Result<SpecValue> {
    let mut parts: Vec<SpecValue> = Vec::new();
    for (v, q) in t.coeffs() {
        let loc = sigma
            .get(v)
            .ok_or_else(|| Error::Internal(String::from("unassigned variable in location split")))?;
        parts.push(match loc {
            Loc::Sep(j) => {
                if *q == Rat::one() {
                    SpecValue::Sep(*j)
                } else {
                    SpecValue::Sep(1)
                }
            }
            Loc::Seg(s) => {
                let mut expr = LinExpr::default();
                expr.coeffs.insert(*v, q.clone());
                SpecValue::Aff { seg: *s, expr }
            }
        });
    }
    if let Some(c) = t.constant_part() {
        let e = c.as_concat()?;
        parts.push(match e {
            ConcatElem::Sep(j) => SpecValue::Sep(*j),
            ConcatElem::Seg(i, q) => SpecValue::Aff { seg: *i, expr: LinExpr::constant(q.clone()) },
        });
    }
    match parts.len() {
        0 => Ok(SpecValue::Aff { seg: 1, expr: LinExpr::constant(Rat::zero()) }),
        1 => Ok(parts.pop().expect("len checked")),
        _ => {
            let same_seg = match &parts[0] {
                SpecValue::Aff { seg, .. } => {
                    let s = *seg;
                    parts.iter().all(|p| matches!(p, SpecValue::Aff { seg, .. } if *seg == s))
                }
                SpecValue::Sep(_) => false,
            };
            if !same_seg {
                return Ok(SpecValue::Sep(1));
            }
            let mut acc = LinExpr::default();
            let mut seg = 0;
            for p in parts {
                if let SpecValue::Aff { seg: s, expr } = p {
                    seg = s;
                    acc.add_scaled(&expr, &Rat::one());
                }
            }
            Ok(SpecValue::Aff { seg, expr: acc })
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LinOp {
    /// expr < 0
    Lt,
    /// expr = 0
    Eq,
}

/// An atom under a location assignment: decided, or linear in one segment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SpecAtom {
    Const(bool),
    Lin { seg: u8, op: LinOp, expr: LinExpr },
}

pub fn spec_atom(atom: &Atom, sigma: &BTreeMap<VarId, Loc>) -> Result<SpecAtom> {
    match atom {
        Atom::InU(..) => Err(Error::Signature(String::from("U predicate outside wom"))),
        Atom::Less(a, b) => {
            let va = term_value(a, sigma)?;
            let vb = term_value(b, sigma)?;
            Ok(match (&va, &vb) {
                (SpecValue::Aff { seg: s1, expr: e1 }, SpecValue::Aff { seg: s2, expr: e2 })
                    if s1 == s2 =>
                {
                    SpecAtom::Lin { seg: *s1, op: LinOp::Lt, expr: e1.sub(e2) }
                }
                _ => SpecAtom::Const(va.position() < vb.position()),
            })
        }
        Atom::Eq(a, b) => {
            let va = term_value(a, sigma)?;
            let vb = term_value(b, sigma)?;
            Ok(match (&va, &vb) {
                (SpecValue::Aff { seg: s1, expr: e1 }, SpecValue::Aff { seg: s2, expr: e2 })
                    if s1 == s2 =>
                {
                    SpecAtom::Lin { seg: *s1, op: LinOp::Eq, expr: e1.sub(e2) }
                }
                (SpecValue::Sep(i), SpecValue::Sep(j)) => SpecAtom::Const(i == j),
                _ => SpecAtom::Const(false),
            })
        }
    }
}

/// Location guard for a free variable, as atoms against the separators.
pub fn location_guard(v: VarId, loc: Loc, m: u8) -> Vec<Formula> {
    let sep = |j: u8| Term::constant(Element::Concat(ConcatElem::Sep(j)));
    let var = Term::var(v);
    match loc {
        Loc::Sep(j) => alloc::vec![Formula::eq(var, sep(j))],
        Loc::Seg(s) => {
            let mut out = Vec::new();
            if s >= 2 {
                out.push(Formula::less(sep(s - 1), var.clone()));
            }
            if s <= m - 1 {
                out.push(Formula::less(var, sep(s)));
            }
            out
        }
    }
}

/// Turns `expr OP 0` in segment `seg` back into an atom; sound only under
/// the location guard that put every variable of `expr` into `seg`.
pub fn retermify(seg: u8, op: LinOp, expr: &LinExpr) -> Formula {
    if expr.is_constant() {
        let holds = match op {
            LinOp::Lt => expr.offset.is_negative(),
            LinOp::Eq => expr.offset.is_zero(),
        };
        return if holds { Formula::True } else { Formula::False };
    }
    let lhs = Term::with_parts(
        expr.coeffs.clone(),
        (!expr.offset.is_zero())
            .then(|| Element::Concat(ConcatElem::Seg(seg, expr.offset.clone()))),
    );
    let rhs = Term::constant(Element::Concat(ConcatElem::Seg(seg, Rat::zero())));
    match op {
        LinOp::Lt => Formula::less(lhs, rhs),
        LinOp::Eq => Formula::eq(lhs, rhs),
    }
}

/// Enumerates location assignments for `vars`, deterministically.
pub fn assignments(vars: &[VarId], m: u8) -> Vec<BTreeMap<VarId, Loc>> {
    let locs = locations(m);
    let mut out: Vec<BTreeMap<VarId, Loc>> = alloc::vec![BTreeMap::new()];
    for v in vars {
        let mut next = Vec::with_capacity(out.len() * locs.len());
        for partial in &out {
            for loc in &locs {
                let mut extended = partial.clone();
                extended.insert(*v, *loc);
                next.push(extended);
            }
        }
        out = next;
    }
    out
}

pub fn conjunct_vars(lits: &[Literal]) -> BTreeSet<VarId> {
    let mut vars = BTreeSet::new();
    for (atom, _) in lits {
        for t in atom.terms() {
            vars.extend(t.coeffs().keys().copied());
        }
    }
    vars
}

/// Existential elimination of `var` from a conjunction of positive order
/// literals (negations were split upstream).
pub fn eliminate_conjunct(
    var: VarId,
    lits: &[Literal],
    m: u8,
    budget: &Budget,
) -> Result<Formula> {
    for (atom, positive) in lits {
        if !positive {
            return Err(Error::Internal(String::from(
                "negative literal reached concat elimination",
            )));
        }
        atom.validate(ModelId::Concat { m })?;
    }
    let mut vars: Vec<VarId> = conjunct_vars(lits).into_iter().collect();
    if !vars.contains(&var) {
        vars.push(var);
    }

    let case_count = locations(m).len().checked_pow(vars.len() as u32).unwrap_or(usize::MAX);
    budget.charge_atoms(case_count.saturating_mul(lits.len().max(1)))?;

    let mut disjuncts = Vec::new();
    'sigma: for sigma in assignments(&vars, m) {
        let mut constraints: Vec<(u8, LinOp, LinExpr)> = Vec::new();
        for (atom, _) in lits {
            match spec_atom(atom, &sigma)? {
                SpecAtom::Const(false) => continue 'sigma,
                SpecAtom::Const(true) => {}
                SpecAtom::Lin { seg, op, expr } => constraints.push((seg, op, expr)),
            }
        }
        let remaining = eliminate_value(var, constraints);

        let mut parts = Vec::new();
        for (&w, &loc) in &sigma {
            if w != var {
                parts.extend(location_guard(w, loc, m));
            }
        }
        for (seg, op, expr) in remaining {
            match retermify(seg, op, &expr) {
                Formula::False => continue 'sigma,
                Formula::True => {}
                f => parts.push(f),
            }
        }
        disjuncts.push(Formula::and(parts));
    }
    Ok(Formula::or(disjuncts))
}

/// Eliminates the in-segment value of `var` from the linear constraints,
/// returning the induced constraints on the remaining variables (constant
/// infeasibilities surface later as `false` atoms). Within its segment the
/// value ranges over all of `Q`, so an unbounded side is always satisfiable
/// and two-sided bounds combine by density.
fn eliminate_value(
    var: VarId,
    constraints: Vec<(u8, LinOp, LinExpr)>,
) -> Vec<(u8, LinOp, LinExpr)> {
    let mentions =
        |expr: &LinExpr| expr.coeffs.contains_key(&var);

    // An equality pins the value: substitute it everywhere else.
    if let Some(idx) = constraints
        .iter()
        .position(|(_, op, expr)| *op == LinOp::Eq && mentions(expr))
    {
        let (_seg, _, expr) = constraints[idx].clone();
        let (q, rest) = expr.split_var(var).expect("mentions checked");
        // q·x + rest = 0  ⟹  x = -rest/q
        let mut pinned = LinExpr::default();
        pinned.add_scaled(&rest, &(-q.recip()));
        let mut out = Vec::new();
        for (i, (seg, op, e)) in constraints.into_iter().enumerate() {
            if i == idx {
                continue;
            }
            match e.split_var(var) {
                None => out.push((seg, op, e)),
                Some((c, mut r)) => {
                    r.add_scaled(&pinned, &c);
                    out.push((seg, op, r));
                }
            }
        }
        return out;
    }

    // Every constraint mentioning `var` lives in the segment of `var`'s
    // location, so the bounds all share one segment id.
    let mut var_seg: Option<u8> = None;
    let mut lowers: Vec<LinExpr> = Vec::new();
    let mut uppers: Vec<LinExpr> = Vec::new();
    let mut out = Vec::new();
    for (seg, op, e) in constraints {
        match e.split_var(var) {
            None => out.push((seg, op, e)),
            Some((q, rest)) => {
                debug_assert!(op == LinOp::Lt);
                var_seg = Some(seg);
                // q·x + rest < 0  ⟺  x < -rest/q (q > 0), x > -rest/q (q < 0)
                let mut bound = LinExpr::default();
                bound.add_scaled(&rest, &(-q.clone().recip()));
                if q.is_positive() {
                    uppers.push(bound);
                } else {
                    lowers.push(bound);
                }
            }
        }
    }
    // Density of Q: a value exists between the bounds iff every lower bound
    // is strictly below every upper bound; an unbounded side never blocks.
    if let Some(seg) = var_seg {
        for l in &lowers {
            for u in &uppers {
                out.push((seg, LinOp::Lt, l.sub(u)));
            }
        }
    }
    out
}
