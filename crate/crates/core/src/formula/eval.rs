//! Semantic truth in the concrete models.
//!
//! Quantifier-free formulas are evaluated directly; quantified ones are
//! routed through quantifier elimination first, so `eval` is total on the
//! whole AST.

use alloc::collections::BTreeMap;
use core::cmp::Ordering;

use super::{Atom, Formula, Term, VarId};
use crate::error::Error;
use crate::model::{Element, ModelId};
use crate::rat::Rat;
use crate::Result;

pub type Assignment = BTreeMap<VarId, Element>;

pub fn eval_term(t: &Term, asg: &Assignment, model: ModelId) -> Result<Element> {
    let mut acc: Option<Element> = None;
    for (v, q) in t.coeffs() {
        let base = asg.get(v).ok_or(Error::UnassignedVar(*v))?;
        base.validate(model)?;
        // Coefficient 1 is a bare occurrence of the variable, not a scaling:
        // under `concat` the scaling maps send separators to c1 while a bare
        // occurrence keeps them.
        let part = if *q == Rat::one() { base.clone() } else { base.scale(q, model)? };
        acc = Some(match acc {
            None => part,
            Some(prev) => prev.add(&part, model)?,
        });
    }
    if let Some(c) = t.constant_part() {
        acc = Some(match acc {
            None => c.clone(),
            Some(prev) => prev.add(c, model)?,
        });
    }
    Ok(acc.unwrap_or_else(|| Element::zero_of(model)))
}

pub fn eval_atom(a: &Atom, asg: &Assignment, model: ModelId) -> Result<bool> {
    match a {
        Atom::Less(s, t) => {
            let sv = eval_term(s, asg, model)?;
            let tv = eval_term(t, asg, model)?;
            Ok(sv.compare(&tv)? == Ordering::Less)
        }
        Atom::Eq(s, t) => {
            let sv = eval_term(s, asg, model)?;
            let tv = eval_term(t, asg, model)?;
            Ok(sv == tv)
        }
        Atom::InU(k, t) => {
            let tv = eval_term(t, asg, model)?;
            Ok(tv.as_lex()?.in_subgroup(*k))
        }
    }
}

fn eval_qf(f: &Formula, asg: &Assignment, model: ModelId) -> Result<bool> {
    match f {
        Formula::True => Ok(true),
        Formula::False => Ok(false),
        Formula::Atom(a) => eval_atom(a, asg, model),
        Formula::Not(g) => Ok(!eval_qf(g, asg, model)?),
        Formula::And(parts) => {
            for p in parts {
                if !eval_qf(p, asg, model)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        Formula::Or(parts) => {
            for p in parts {
                if eval_qf(p, asg, model)? {
                    return Ok(true);
                }
            }
            Ok(false)
        }
        Formula::Exists(..) | Formula::Forall(..) => {
            Err(Error::Internal(alloc::string::String::from("eval_qf hit a quantifier")))
        }
    }
}

/// Truth value of `f` at `asg`. Quantifiers are eliminated first.
pub fn eval(f: &Formula, asg: &Assignment, model: ModelId) -> Result<bool> {
    if f.is_quantifier_free() {
        eval_qf(f, asg, model)
    } else {
        let qf = crate::qe::eliminate(f, model)?;
        eval_qf(&qf, asg, model)
    }
}

/// Truth value of a sentence (no free variables).
pub fn eval_closed(f: &Formula, model: ModelId) -> Result<bool> {
    eval(f, &Assignment::new(), model)
}
