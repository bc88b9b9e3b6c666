//! Independent one-variable satisfiability oracle.
//!
//! Given constraints with concrete parameters, builds a finite candidate set
//! that provably (for `dlo`/`concat`) or hypothetically (for `wom`, where
//! the hypothesis is fuzzed against the eliminator at build time) meets the
//! solution set whenever it is nonempty, evaluates every candidate and
//! returns the first satisfier. Used to differentially validate
//! `eliminate`, so it deliberately shares no code with it.

use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;

use super::NormalizedLiteral;
use crate::error::Error;
use crate::model::{ConcatElem, Element, LexVector, ModelId};
use crate::rat::Rat;
use crate::Result;

/// Which candidate rule produced a witness.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum WitnessRule {
    /// A parameter point (or named separator) itself.
    EqualityPoint,
    /// Midpoint of two parameter points.
    Midpoint,
    /// A parameter or midpoint nudged by a subgroup unit (or by ±1 within a
    /// segment).
    ClassOffset,
    /// Beyond every parameter in one direction.
    BeyondAll,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SatWitness {
    pub point: Element,
    pub rule: WitnessRule,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SatOutcome {
    Sat(SatWitness),
    Unsat,
}

impl SatOutcome {
    pub fn is_sat(&self) -> bool {
        matches!(self, SatOutcome::Sat(_))
    }
}

/// Does `point` satisfy the constraint?
pub fn check_constraint(point: &Element, c: &NormalizedLiteral, model: ModelId) -> Result<bool> {
    let param = param_element(c)?;
    match c {
        NormalizedLiteral::Eq(_) => Ok(*point == param),
        NormalizedLiteral::Lt(_) => Ok(point.compare(&param)? == Ordering::Less),
        NormalizedLiteral::Gt(_) => Ok(point.compare(&param)? == Ordering::Greater),
        NormalizedLiteral::InClass(k, _) => Ok(point.sep_level(&param, model)? <= *k),
        NormalizedLiteral::NotInClass(k, _) => Ok(point.sep_level(&param, model)? > *k),
    }
}

fn param_element(c: &NormalizedLiteral) -> Result<Element> {
    let t = c.param();
    if !t.is_constant() {
        return Err(Error::Arity(String::from(
            "sat_one_var needs fully concrete constraints",
        )));
    }
    t.constant_part()
        .cloned()
        .ok_or_else(|| Error::Internal(String::from("constant term without a constant")))
}

/// Decides `∃x ⋀ constraints` by exhaustive candidate evaluation.
pub fn sat_one_var(constraints: &[NormalizedLiteral], model: ModelId) -> Result<SatOutcome> {
    let mut params = Vec::new();
    for c in constraints {
        let e = param_element(c)?;
        e.validate(model)?;
        if !params.contains(&e) {
            params.push(e);
        }
    }
    let candidates = match model {
        ModelId::Dlo => dlo_candidates(&params)?,
        ModelId::Wom { m } => wom_candidates(&params, m)?,
        ModelId::Concat { m } => concat_candidates(&params, m),
    };
    'cand: for (point, rule) in candidates {
        for c in constraints {
            if !check_constraint(&point, c, model)? {
                continue 'cand;
            }
        }
        return Ok(SatOutcome::Sat(SatWitness { point, rule }));
    }
    Ok(SatOutcome::Unsat)
}

fn dlo_candidates(params: &[Element]) -> Result<Vec<(Element, WitnessRule)>> {
    let mut vals: Vec<Rat> = Vec::new();
    for p in params {
        vals.push(p.as_rat()?.clone());
    }
    let mut out = Vec::new();
    for v in &vals {
        out.push((Element::Rat(v.clone()), WitnessRule::EqualityPoint));
    }
    for (i, a) in vals.iter().enumerate() {
        for b in vals.iter().skip(i + 1) {
            let mid = &(a + b) * &Rat::new(1, 2);
            out.push((Element::Rat(mid), WitnessRule::Midpoint));
        }
    }
    let bound = vals
        .iter()
        .map(|v| v.abs())
        .max()
        .unwrap_or_else(Rat::zero)
        + Rat::one();
    out.push((Element::Rat(bound.clone()), WitnessRule::BeyondAll));
    out.push((Element::Rat(-bound), WitnessRule::BeyondAll));
    if vals.is_empty() {
        out.push((Element::Rat(Rat::zero()), WitnessRule::BeyondAll));
    }
    Ok(out)
}

/// Parameters, midpoints, each of those nudged by every subgroup unit
/// (`±u_k`, `u_k` having its 1 in coordinate `m+1-k`), and two points
/// beyond everything in the leading coordinate.
fn wom_candidates(params: &[Element], m: u8) -> Result<Vec<(Element, WitnessRule)>> {
    let len = m as usize + 1;
    let mut base: Vec<LexVector> = Vec::new();
    for p in params {
        base.push(p.as_lex()?.clone());
    }
    let mut seeds: Vec<(LexVector, WitnessRule)> = Vec::new();
    for b in &base {
        seeds.push((b.clone(), WitnessRule::EqualityPoint));
    }
    for (i, a) in base.iter().enumerate() {
        for b in base.iter().skip(i + 1) {
            let mid = a.add(b)?.scale(&Rat::new(1, 2));
            seeds.push((mid, WitnessRule::Midpoint));
        }
    }
    if seeds.is_empty() {
        seeds.push((LexVector::zero(len), WitnessRule::BeyondAll));
    }

    let mut out: Vec<(Element, WitnessRule)> = Vec::new();
    for (s, rule) in &seeds {
        out.push((Element::Lex(s.clone()), *rule));
    }
    for (s, _) in &seeds {
        for k in 0..=m {
            let u = LexVector::unit(k, m);
            out.push((Element::Lex(s.add(&u)?), WitnessRule::ClassOffset));
            out.push((Element::Lex(s.sub(&u)?), WitnessRule::ClassOffset));
        }
    }
    let mut big = Rat::zero();
    for b in &base {
        for c in &b.0 {
            if c.abs() > big {
                big = c.abs();
            }
        }
    }
    big = &big + &Rat::one();
    let mut beyond = LexVector::zero(len);
    beyond.0[0] = big.clone();
    out.push((Element::Lex(beyond.clone()), WitnessRule::BeyondAll));
    beyond.0[0] = -big;
    out.push((Element::Lex(beyond), WitnessRule::BeyondAll));
    Ok(out)
}

/// Parameters, separators, same-segment midpoints, ±1 nudges, each segment's
/// zero, and per-segment points beyond every parameter value.
fn concat_candidates(params: &[Element], m: u8) -> Vec<(Element, WitnessRule)> {
    let mut out: Vec<(Element, WitnessRule)> = Vec::new();
    let push = |e: ConcatElem, rule: WitnessRule, out: &mut Vec<(Element, WitnessRule)>| {
        out.push((Element::Concat(e), rule));
    };
    let segs: Vec<(u8, Rat)> = params
        .iter()
        .filter_map(|p| match p {
            Element::Concat(ConcatElem::Seg(i, q)) => Some((*i, q.clone())),
            _ => None,
        })
        .collect();

    for p in params {
        if let Element::Concat(e) = p {
            push(e.clone(), WitnessRule::EqualityPoint, &mut out);
        }
    }
    for j in 1..m {
        push(ConcatElem::Sep(j), WitnessRule::EqualityPoint, &mut out);
    }
    for (i, (s1, q1)) in segs.iter().enumerate() {
        for (s2, q2) in segs.iter().skip(i + 1) {
            if s1 == s2 {
                let mid = &(q1 + q2) * &Rat::new(1, 2);
                push(ConcatElem::Seg(*s1, mid), WitnessRule::Midpoint, &mut out);
            }
        }
    }
    for (s, q) in &segs {
        push(ConcatElem::Seg(*s, q + &Rat::one()), WitnessRule::ClassOffset, &mut out);
        push(ConcatElem::Seg(*s, q - &Rat::one()), WitnessRule::ClassOffset, &mut out);
    }
    let mut big = Rat::zero();
    for (_, q) in &segs {
        if q.abs() > big {
            big = q.abs();
        }
    }
    big = &big + &Rat::one();
    for s in 1..=m {
        push(ConcatElem::Seg(s, Rat::zero()), WitnessRule::ClassOffset, &mut out);
        push(ConcatElem::Seg(s, big.clone()), WitnessRule::BeyondAll, &mut out);
        push(ConcatElem::Seg(s, -big.clone()), WitnessRule::BeyondAll, &mut out);
    }
    out
}
