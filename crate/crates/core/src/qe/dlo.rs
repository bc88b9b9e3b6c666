//! Existential elimination over a dense linear order without endpoints:
//! an equality pins the variable; otherwise `∃x (⋀ l_i < x ∧ ⋀ x < u_j)`
//! holds exactly when every lower bound is below every upper bound.

use alloc::vec::Vec;

use crate::budget::Budget;
use crate::formula::{Formula, Literal, VarId};
use crate::model::ModelId;
use crate::Result;

pub fn eliminate_conjunct(
    var: VarId,
    lits: &[Literal],
    budget: &Budget,
) -> Result<Formula> {
    let cons = super::normalize_on_var(lits, var, ModelId::Dlo)?;
    debug_assert!(cons.classes.is_empty() && cons.exclusions.is_empty());

    if let Some(pinned) = cons.eqs.first() {
        return super::substitute_constraints(pinned, &cons, ModelId::Dlo);
    }

    budget.charge_atoms(cons.lowers.len() * cons.uppers.len())?;
    let mut parts = Vec::new();
    for l in &cons.lowers {
        for u in &cons.uppers {
            parts.push(Formula::less(l.clone(), u.clone()));
        }
    }
    parts.extend(cons.passthrough.iter().cloned());
    Ok(Formula::and(parts))
}
