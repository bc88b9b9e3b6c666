//! Concrete syntax output. `parse(print(f))` reproduces `f` up to
//! alpha-renaming of bound variables.

use core::fmt;

use super::{Atom, Formula, Term, VarId, BOUND_BASE};
use crate::rat::Rat;

fn write_var(f: &mut fmt::Formatter<'_>, v: VarId) -> fmt::Result {
    if v >= BOUND_BASE {
        write!(f, "y{}", v - BOUND_BASE)
    } else {
        write!(f, "x{v}")
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (v, q) in &self.coeffs {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if *q == Rat::one() {
                write_var(f, *v)?;
            } else if *q == -Rat::one() {
                write!(f, "-")?;
                write_var(f, *v)?;
            } else {
                write!(f, "{q}*")?;
                write_var(f, *v)?;
            }
        }
        if let Some(c) = &self.constant {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c}")?;
        }
        if first {
            // Unreachable for normalized terms; printed defensively.
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Less(a, b) => write!(f, "{a} < {b}"),
            Atom::Eq(a, b) => write!(f, "{a} = {b}"),
            Atom::InU(k, t) => write!(f, "U{k}({t})"),
        }
    }
}

impl fmt::Debug for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Writes `g` parenthesized whenever it is not atomic, so the printed tree
/// reparses to exactly the same shape.
fn write_child(f: &mut fmt::Formatter<'_>, g: &Formula) -> fmt::Result {
    match g {
        Formula::True | Formula::False | Formula::Atom(_) | Formula::Not(_) => write!(f, "{g}"),
        _ => write!(f, "({g})"),
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::True => write!(f, "true"),
            Formula::False => write!(f, "false"),
            Formula::Atom(a) => write!(f, "{a}"),
            Formula::Not(g) => match &**g {
                Formula::Atom(a) => write!(f, "!({a})"),
                other => {
                    write!(f, "!")?;
                    write_child(f, other)
                }
            },
            Formula::And(parts) => {
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        write!(f, " & ")?;
                    }
                    match p {
                        // Nested And must keep its own parens to reparse 1:1.
                        Formula::And(_) | Formula::Or(_) | Formula::Exists(..) | Formula::Forall(..) => {
                            write!(f, "({p})")?
                        }
                        _ => write!(f, "{p}")?,
                    }
                }
                Ok(())
            }
            Formula::Or(parts) => {
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        write!(f, " | ")?;
                    }
                    match p {
                        Formula::Or(_) | Formula::Exists(..) | Formula::Forall(..) => {
                            write!(f, "({p})")?
                        }
                        _ => write!(f, "{p}")?,
                    }
                }
                Ok(())
            }
            Formula::Exists(v, g) => {
                write!(f, "E ")?;
                write_var(f, *v)?;
                write!(f, ". {g}")
            }
            Formula::Forall(v, g) => {
                write!(f, "A ")?;
                write_var(f, *v)?;
                write!(f, ". {g}")
            }
        }
    }
}

impl fmt::Debug for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
