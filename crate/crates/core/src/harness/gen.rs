//! Deterministic random formulas, constraint sets and points.

use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::formula::{Atom, Formula, Term, VarId, BOUND_BASE};
use crate::model::{ConcatElem, Element, LexVector, ModelId};
use crate::qe::NormalizedLiteral;
use crate::rat::Rat;
use crate::Result;

/// Generation parameters. The pool is the set of model constants formulas
/// draw on; it must be nonempty and valid for the model.
#[derive(Debug, Clone)]
pub struct GenConfig {
    pub seed: u64,
    pub samples: u32,
    /// Largest ambient arity checked; capped at 3.
    pub max_arity: u8,
    /// Connective nesting depth; capped at 4.
    pub max_depth: u8,
    pub pool: Vec<Element>,
    /// Relative weight of atom leaves against connective nodes.
    pub atom_weight: u32,
}

impl GenConfig {
    pub fn for_model(model: ModelId, seed: u64) -> GenConfig {
        GenConfig {
            seed,
            samples: 200,
            max_arity: 3,
            max_depth: 4,
            pool: default_pool(model),
            atom_weight: 3,
        }
    }
}

fn default_pool(model: ModelId) -> Vec<Element> {
    match model {
        ModelId::Dlo => [-2i64, -1, 0, 1, 2]
            .iter()
            .map(|&q| Element::Rat(Rat::from_int(q)))
            .chain(core::iter::once(Element::Rat(Rat::new(1, 2))))
            .collect(),
        ModelId::Wom { m } => {
            let len = m as usize + 1;
            let mut pool = Vec::new();
            pool.push(Element::Lex(LexVector::zero(len)));
            for k in 0..=m {
                let u = LexVector::unit(k, m);
                pool.push(Element::Lex(u.clone()));
                pool.push(Element::Lex(u.scale(&-Rat::one())));
            }
            // A couple of mixed points so classes at different levels meet.
            let mut mixed = LexVector::zero(len);
            mixed.0[0] = Rat::one();
            mixed.0[len - 1] = Rat::one();
            pool.push(Element::Lex(mixed));
            let mut half = LexVector::zero(len);
            half.0[len - 1] = Rat::new(1, 2);
            if len >= 2 {
                half.0[len - 2] = Rat::from_int(-1);
            }
            pool.push(Element::Lex(half));
            pool
        }
        ModelId::Concat { m } => {
            let mut pool = Vec::new();
            for i in 1..=m {
                for q in [-1i64, 0, 1] {
                    pool.push(Element::Concat(ConcatElem::Seg(i, Rat::from_int(q))));
                }
            }
            for j in 1..m {
                pool.push(Element::Concat(ConcatElem::Sep(j)));
            }
            pool
        }
    }
}

fn rng_for(cfg: &GenConfig, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(index);
    rng
}

fn pick<'a, T>(rng: &mut ChaCha8Rng, items: &'a [T]) -> &'a T {
    &items[rng.random_range(0..items.len())]
}

fn pool_const(rng: &mut ChaCha8Rng, cfg: &GenConfig) -> Term {
    Term::constant(pick(rng, &cfg.pool).clone())
}

fn small_coeff(rng: &mut ChaCha8Rng) -> Rat {
    match rng.random_range(0..6u8) {
        0 => Rat::from_int(2),
        1 => Rat::from_int(-2),
        2 => Rat::new(1, 2),
        3 => Rat::from_int(-1),
        _ => Rat::one(),
    }
}

fn gen_term(rng: &mut ChaCha8Rng, cfg: &GenConfig, vars: &[VarId], model: ModelId) -> Result<Term> {
    if vars.is_empty() {
        return Ok(pool_const(rng, cfg));
    }
    match model {
        ModelId::Dlo => Ok(if rng.random_bool(0.5) {
            Term::var(*pick(rng, vars))
        } else {
            pool_const(rng, cfg)
        }),
        _ => {
            let shape = rng.random_range(0..6u8);
            let v = *pick(rng, vars);
            match shape {
                0 => Ok(Term::var(v)),
                1 => Ok(pool_const(rng, cfg)),
                2 => Term::var(v).add(&pool_const(rng, cfg), model),
                3 => {
                    let w = *pick(rng, vars);
                    Term::var(v).sub(&Term::var(w), model)
                }
                4 => Term::scaled_var(small_coeff(rng), v).add(&pool_const(rng, cfg), model),
                _ => {
                    let w = *pick(rng, vars);
                    Term::scaled_var(small_coeff(rng), v).add(&Term::var(w), model)
                }
            }
        }
    }
}

fn gen_atom(rng: &mut ChaCha8Rng, cfg: &GenConfig, vars: &[VarId], model: ModelId) -> Result<Atom> {
    let class_levels = model.class_levels();
    if class_levels > 0 && rng.random_bool(0.4) {
        let k = rng.random_range(1..=class_levels);
        let t = gen_term(rng, cfg, vars, model)?;
        return Ok(Atom::InU(k, t));
    }
    let a = gen_term(rng, cfg, vars, model)?;
    let b = gen_term(rng, cfg, vars, model)?;
    Ok(if rng.random_bool(0.8) { Atom::Less(a, b) } else { Atom::Eq(a, b) })
}

fn gen_node(
    rng: &mut ChaCha8Rng,
    cfg: &GenConfig,
    vars: &[VarId],
    model: ModelId,
    depth: u8,
) -> Result<Formula> {
    let connective_weight = 3u32;
    let total = cfg.atom_weight + if depth == 0 { 0 } else { connective_weight };
    if rng.random_range(0..total) < cfg.atom_weight {
        return Ok(Formula::Atom(gen_atom(rng, cfg, vars, model)?));
    }
    match rng.random_range(0..4u8) {
        0 => Ok(Formula::not(gen_node(rng, cfg, vars, model, depth - 1)?)),
        1 | 2 => {
            let n = rng.random_range(2..=3usize);
            let parts = (0..n)
                .map(|_| gen_node(rng, cfg, vars, model, depth - 1))
                .collect::<Result<Vec<_>>>()?;
            Ok(Formula::and(parts))
        }
        _ => {
            let n = rng.random_range(2..=3usize);
            let parts = (0..n)
                .map(|_| gen_node(rng, cfg, vars, model, depth - 1))
                .collect::<Result<Vec<_>>>()?;
            Ok(Formula::or(parts))
        }
    }
}

/// Quantifier-free formula over `x1..x_arity`, deterministic per
/// `(cfg.seed, index)`.
pub fn gen_formula_at(cfg: &GenConfig, arity: u8, model: ModelId, index: u64) -> Result<Formula> {
    let mut rng = rng_for(cfg, index);
    let vars: Vec<VarId> = (1..=arity as VarId).collect();
    let f = gen_node(&mut rng, cfg, &vars, model, cfg.max_depth)?;
    f.validate(model)?;
    Ok(f)
}

/// First formula of the stream; same `cfg` gives the same formula.
pub fn gen_formula(cfg: &GenConfig, arity: u8, model: ModelId) -> Result<Formula> {
    gen_formula_at(cfg, arity, model, 0)
}

/// One-quantifier instance: an existential over a conjunction of atoms that
/// all mention the bound variable, with `arity` free variables (0 gives a
/// sentence).
pub fn gen_exists(cfg: &GenConfig, arity: u8, model: ModelId, index: u64) -> Result<Formula> {
    let mut rng = rng_for(cfg, index.wrapping_add(1 << 32));
    let bound: VarId = BOUND_BASE;
    let mut vars: Vec<VarId> = (1..=arity as VarId).collect();
    vars.push(bound);
    let n = rng.random_range(2..=5usize);
    let mut parts = Vec::new();
    for _ in 0..n {
        // Bias the atoms toward mentioning the quantified variable.
        let atom = loop {
            let a = gen_atom(&mut rng, cfg, &vars, model)?;
            if a.terms().any(|t| t.mentions(bound)) || rng.random_bool(0.25) {
                break a;
            }
        };
        let f = Formula::Atom(atom);
        parts.push(if rng.random_bool(0.25) { Formula::not(f) } else { f });
    }
    Ok(Formula::exists(bound, Formula::and(parts)))
}

/// Fully concrete constraint set on one variable, for the oracle.
pub fn gen_constraints(cfg: &GenConfig, model: ModelId, index: u64) -> Vec<NormalizedLiteral> {
    let mut rng = rng_for(cfg, index.wrapping_add(1 << 33));
    let n = rng.random_range(1..=6usize);
    let class_levels = model.class_levels();
    (0..n)
        .map(|_| {
            let param = Term::constant(pick(&mut rng, &cfg.pool).clone());
            if class_levels > 0 && rng.random_bool(0.45) {
                let k = rng.random_range(1..=class_levels);
                if rng.random_bool(0.5) {
                    NormalizedLiteral::InClass(k, param)
                } else {
                    NormalizedLiteral::NotInClass(k, param)
                }
            } else {
                match rng.random_range(0..5u8) {
                    0 => NormalizedLiteral::Eq(param),
                    1 | 2 => NormalizedLiteral::Lt(param),
                    _ => NormalizedLiteral::Gt(param),
                }
            }
        })
        .collect()
}
