//! Size budgets for symbolic passes.
//!
//! Elimination and decomposition can blow up on adversarial inputs; the
//! theory gives no complexity bound. Every top-level call owns a `Budget`
//! and aborts with [`Error::Budget`] instead of guessing how far to push.
//! Harness checks record such aborts as skipped, never as failures.

use core::cell::Cell;

use crate::error::Error;
use crate::Result;

#[derive(Debug)]
pub struct Budget {
    atoms_left: Cell<usize>,
    cells_left: Cell<usize>,
}

impl Budget {
    pub const DEFAULT_ATOMS: usize = 200_000;
    pub const DEFAULT_CELLS: usize = 60_000;

    pub fn new(atoms: usize, cells: usize) -> Self {
        Budget { atoms_left: Cell::new(atoms), cells_left: Cell::new(cells) }
    }

    pub fn charge_atoms(&self, n: usize) -> Result<()> {
        Self::charge(&self.atoms_left, n, "formula atoms")
    }

    pub fn charge_cells(&self, n: usize) -> Result<()> {
        Self::charge(&self.cells_left, n, "cells")
    }

    fn charge(cell: &Cell<usize>, n: usize, what: &'static str) -> Result<()> {
        let left = cell.get();
        if left < n {
            return Err(Error::Budget(what));
        }
        cell.set(left - n);
        Ok(())
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::new(Self::DEFAULT_ATOMS, Self::DEFAULT_CELLS)
    }
}
