//! The three concrete structures and their elements.
//!
//! - [`ModelId::Dlo`]: `(Q, <)`, a dense linear order without endpoints.
//! - [`ModelId::Wom { m }`]: `Q^{m+1}` under the lexicographic order with
//!   addition, rational scaling and the convex subgroups
//!   `U_k = {0_{m+1-k}} × Q^k` for `1 ≤ k ≤ m`.
//! - [`ModelId::Concat { m }`]: `m` copies of `Q` in a row, separated by
//!   constants `c_1 < … < c_{m-1}`; addition is per-segment and collapses to
//!   `c_1` off the segment diagonals.
//!
//! All values are immutable; nothing here allocates global state.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::error::Error;
use crate::rat::Rat;
use crate::Result;

/// Hard cap on the structure parameter `m`; keeps cell counts desk-scale.
pub const MAX_M: u8 = 4;

/// Which concrete structure formulas and points live in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ModelId {
    Dlo,
    Wom { m: u8 },
    Concat { m: u8 },
}

impl ModelId {
    pub fn wom(m: u8) -> Result<Self> {
        if m == 0 || m > MAX_M {
            return Err(Error::Signature(format!("wom parameter m={m} out of range 1..={MAX_M}")));
        }
        Ok(ModelId::Wom { m })
    }

    pub fn concat(m: u8) -> Result<Self> {
        if m == 0 || m > MAX_M {
            return Err(Error::Signature(format!(
                "concat parameter m={m} out of range 1..={MAX_M}"
            )));
        }
        Ok(ModelId::Concat { m })
    }

    /// Parses `dlo`, `wom:m` or `concat:m`.
    pub fn parse(text: &str) -> Result<Self> {
        let bad = || Error::Signature(format!("unknown model `{text}`; expected dlo, wom:m or concat:m"));
        match text.split_once(':') {
            None if text == "dlo" => Ok(ModelId::Dlo),
            Some((kind, m)) => {
                let m: u8 = m.parse().map_err(|_| bad())?;
                match kind {
                    "wom" => ModelId::wom(m),
                    "concat" => ModelId::concat(m),
                    _ => Err(bad()),
                }
            }
            None => Err(bad()),
        }
    }

    /// Number of named convex subgroups (`wom`) or one less than the number
    /// of segments (`concat`); zero for `dlo`.
    pub fn class_levels(&self) -> u8 {
        match self {
            ModelId::Dlo => 0,
            ModelId::Wom { m } => *m,
            ModelId::Concat { m: _ } => 0,
        }
    }

    /// Vector width of `wom` elements.
    pub fn vector_len(&self) -> Option<usize> {
        match self {
            ModelId::Wom { m } => Some(*m as usize + 1),
            _ => None,
        }
    }
}

impl fmt::Display for ModelId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelId::Dlo => write!(f, "dlo"),
            ModelId::Wom { m } => write!(f, "wom:{m}"),
            ModelId::Concat { m } => write!(f, "concat:{m}"),
        }
    }
}

/// A point of `Q^{m+1}` under the lexicographic order.
///
/// The derived `Ord` is coordinatewise-lexicographic, which agrees with the
/// model order for vectors of equal width.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LexVector(pub Vec<Rat>);

impl LexVector {
    pub fn zero(len: usize) -> Self {
        LexVector(vec![Rat::zero(); len])
    }

    /// Unit vector with `1` in coordinate `m+1-k` (1-indexed): an element of
    /// `U_{k+1} \ U_k`, so `unit(0)` is the smallest-scale unit and
    /// `unit(m)` lies beyond every named subgroup.
    pub fn unit(k: u8, m: u8) -> Self {
        let len = m as usize + 1;
        let mut v = vec![Rat::zero(); len];
        v[(m - k) as usize] = Rat::one();
        LexVector(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add(&self, other: &LexVector) -> Result<LexVector> {
        check_len(self, other)?;
        Ok(LexVector(
            self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect(),
        ))
    }

    pub fn sub(&self, other: &LexVector) -> Result<LexVector> {
        check_len(self, other)?;
        Ok(LexVector(
            self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect(),
        ))
    }

    pub fn scale(&self, q: &Rat) -> LexVector {
        LexVector(self.0.iter().map(|a| a * q).collect())
    }

    /// Membership in `U_k = {0_{m+1-k}} × Q^k`. `U_0` is the trivial group,
    /// and `k > m` is the whole space.
    pub fn in_subgroup(&self, k: u8) -> bool {
        let len = self.0.len();
        let zeros = len.saturating_sub(k as usize);
        self.0[..zeros].iter().all(|c| c.is_zero())
    }
}

fn check_len(a: &LexVector, b: &LexVector) -> Result<()> {
    if a.len() != b.len() {
        Err(Error::Arity(format!("vector widths differ: {} vs {}", a.len(), b.len())))
    } else {
        Ok(())
    }
}

/// Lexicographic comparison; errors on width mismatch.
pub fn lex_compare(a: &LexVector, b: &LexVector) -> Result<Ordering> {
    check_len(a, b)?;
    for (x, y) in a.0.iter().zip(&b.0) {
        match x.cmp(y) {
            Ordering::Equal => continue,
            ord => return Ok(ord),
        }
    }
    Ok(Ordering::Equal)
}

/// Least `k ≥ 0` with `b - a ∈ U_k`, where `U_0 = {0}`; returns `m+1` when
/// the difference lies outside every named subgroup. `0` iff `a = b`.
pub fn sep_level(a: &LexVector, b: &LexVector) -> Result<u8> {
    check_len(a, b)?;
    let len = a.len(); // m + 1
    for (i, (x, y)) in a.0.iter().zip(&b.0).enumerate() {
        if x != y {
            // First differing coordinate (0-indexed i) admits b-a into U_k
            // exactly for k > len-1-i.
            return Ok((len - i) as u8);
        }
    }
    Ok(0)
}

impl fmt::Display for LexVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for LexVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// An element of the concatenated model: a point `(i:q)` of segment
/// `i ∈ 1..=m` or the separator `c_j`, `j ∈ 1..=m-1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum ConcatElem {
    Seg(u8, Rat),
    Sep(u8),
}

impl PartialOrd for ConcatElem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

// Ord agrees with the model order on the glued line.
impl Ord for ConcatElem {
    fn cmp(&self, other: &Self) -> Ordering {
        concat_compare(self, other)
    }
}

impl ConcatElem {
    pub fn validate(&self, m: u8) -> Result<()> {
        match self {
            ConcatElem::Seg(i, _) if *i >= 1 && *i <= m => Ok(()),
            ConcatElem::Seg(i, _) => {
                Err(Error::Signature(format!("segment index {i} out of range 1..={m}")))
            }
            ConcatElem::Sep(j) if m >= 2 && *j >= 1 && *j <= m - 1 => Ok(()),
            ConcatElem::Sep(j) => Err(Error::Signature(format!(
                "separator c{j} does not exist in concat:{m}"
            ))),
        }
    }

    /// Position on the glued line: segment `i` sits at `2i-1`, separator
    /// `c_j` at `2j`. Total order is (position, then in-segment value).
    fn position(&self) -> u8 {
        match self {
            ConcatElem::Seg(i, _) => 2 * i - 1,
            ConcatElem::Sep(j) => 2 * j,
        }
    }
}

pub fn concat_compare(a: &ConcatElem, b: &ConcatElem) -> Ordering {
    match a.position().cmp(&b.position()) {
        Ordering::Equal => match (a, b) {
            (ConcatElem::Seg(_, p), ConcatElem::Seg(_, q)) => p.cmp(q),
            _ => Ordering::Equal,
        },
        ord => ord,
    }
}

/// Totalized addition: within one segment it is the usual `Q` addition;
/// every other combination yields the interpretation of `c_1`. For `m = 1`
/// no separator exists and the off-diagonal clause is never semantically
/// reachable; it is totalized to `(1:0)`.
pub fn concat_add(a: &ConcatElem, b: &ConcatElem, m: u8) -> ConcatElem {
    match (a, b) {
        (ConcatElem::Seg(i, p), ConcatElem::Seg(j, q)) if i == j => {
            ConcatElem::Seg(*i, p + q)
        }
        _ if m >= 2 => ConcatElem::Sep(1),
        _ => ConcatElem::Seg(1, Rat::zero()),
    }
}

/// Scaling `λ_q`: multiplies within a segment, sends separators to `c_1`.
pub fn concat_scale(a: &ConcatElem, q: &Rat, m: u8) -> ConcatElem {
    match a {
        ConcatElem::Seg(i, p) => ConcatElem::Seg(*i, p * q),
        ConcatElem::Sep(_) if m >= 2 => ConcatElem::Sep(1),
        ConcatElem::Sep(_) => ConcatElem::Seg(1, Rat::zero()),
    }
}

impl fmt::Display for ConcatElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConcatElem::Seg(i, q) => write!(f, "({i}:{q})"),
            ConcatElem::Sep(j) => write!(f, "c{j}"),
        }
    }
}

impl fmt::Debug for ConcatElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A point of whichever model is in play.
///
/// The derived `Ord` is purely syntactic (variant order first); semantic
/// comparisons go through [`Element::compare`], which rejects cross-model
/// pairs.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Element {
    Rat(Rat),
    Lex(LexVector),
    Concat(ConcatElem),
}

impl Element {
    pub fn validate(&self, model: ModelId) -> Result<()> {
        match (self, model) {
            (Element::Rat(_), ModelId::Dlo) => Ok(()),
            (Element::Lex(v), ModelId::Wom { m }) => {
                if v.len() == m as usize + 1 {
                    Ok(())
                } else {
                    Err(Error::Arity(format!(
                        "vector width {} does not match wom:{m} (need {})",
                        v.len(),
                        m + 1
                    )))
                }
            }
            (Element::Concat(e), ModelId::Concat { m }) => e.validate(m),
            _ => Err(Error::Signature(format!("element {self} does not belong to {model}"))),
        }
    }

    pub fn compare(&self, other: &Element) -> Result<Ordering> {
        match (self, other) {
            (Element::Rat(a), Element::Rat(b)) => Ok(a.cmp(b)),
            (Element::Lex(a), Element::Lex(b)) => lex_compare(a, b),
            (Element::Concat(a), Element::Concat(b)) => Ok(concat_compare(a, b)),
            _ => Err(Error::Signature(String::from("comparing elements of different models"))),
        }
    }

    pub fn as_lex(&self) -> Result<&LexVector> {
        match self {
            Element::Lex(v) => Ok(v),
            _ => Err(Error::Signature(String::from("expected a lexicographic vector"))),
        }
    }

    pub fn as_rat(&self) -> Result<&Rat> {
        match self {
            Element::Rat(q) => Ok(q),
            _ => Err(Error::Signature(String::from("expected a rational"))),
        }
    }

    pub fn as_concat(&self) -> Result<&ConcatElem> {
        match self {
            Element::Concat(e) => Ok(e),
            _ => Err(Error::Signature(String::from("expected a concatenation element"))),
        }
    }

    /// Additive identity where one exists; `concat` has none globally, so
    /// there this is the zero of segment 1 (only used as a scratch origin).
    pub fn zero_of(model: ModelId) -> Element {
        match model {
            ModelId::Dlo => Element::Rat(Rat::zero()),
            ModelId::Wom { m } => Element::Lex(LexVector::zero(m as usize + 1)),
            ModelId::Concat { .. } => Element::Concat(ConcatElem::Seg(1, Rat::zero())),
        }
    }

    /// `self + other` in the model's group operation.
    pub fn add(&self, other: &Element, model: ModelId) -> Result<Element> {
        match (self, other, model) {
            (Element::Rat(a), Element::Rat(b), ModelId::Dlo) => Ok(Element::Rat(a + b)),
            (Element::Lex(a), Element::Lex(b), ModelId::Wom { .. }) => {
                Ok(Element::Lex(a.add(b)?))
            }
            (Element::Concat(a), Element::Concat(b), ModelId::Concat { m }) => {
                Ok(Element::Concat(concat_add(a, b, m)))
            }
            _ => Err(Error::Signature(String::from("addition outside the model"))),
        }
    }

    /// `λ_q(self)`.
    pub fn scale(&self, q: &Rat, model: ModelId) -> Result<Element> {
        match (self, model) {
            (Element::Rat(a), ModelId::Dlo) => Ok(Element::Rat(a * q)),
            (Element::Lex(a), ModelId::Wom { .. }) => Ok(Element::Lex(a.scale(q))),
            (Element::Concat(a), ModelId::Concat { m }) => {
                Ok(Element::Concat(concat_scale(a, q, m)))
            }
            _ => Err(Error::Signature(String::from("scaling outside the model"))),
        }
    }

    /// Separation level of two points: for `wom` the least `k` with the
    /// difference in `U_k`; for the other models only `0` (equal) or `1`.
    pub fn sep_level(&self, other: &Element, model: ModelId) -> Result<u8> {
        match (self, other, model) {
            (Element::Lex(a), Element::Lex(b), ModelId::Wom { .. }) => sep_level(a, b),
            _ => Ok(if self == other { 0 } else { 1 }),
        }
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Rat(q) => write!(f, "{q}"),
            Element::Lex(v) => write!(f, "{v}"),
            Element::Concat(e) => write!(f, "{e}"),
        }
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(coords: &[i64]) -> LexVector {
        LexVector(coords.iter().map(|&c| Rat::from_int(c)).collect())
    }

    #[test]
    fn lex_compare_basics() {
        assert_eq!(lex_compare(&v(&[0, 0, 0]), &v(&[0, 0, 0])).unwrap(), Ordering::Equal);
        // Second coordinate decides.
        assert_eq!(lex_compare(&v(&[0, 1, -5]), &v(&[0, 0, 100])).unwrap(), Ordering::Greater);
        let half = LexVector(vec![Rat::new(1, 2), Rat::zero(), Rat::zero()]);
        assert_eq!(lex_compare(&half, &v(&[0, 9, 9])).unwrap(), Ordering::Greater);
        assert!(lex_compare(&v(&[0, 0]), &v(&[0, 0, 0])).is_err());
    }

    #[test]
    fn sep_level_matches_subgroup_membership_oracle() {
        // Oracle: direct membership of b-a in each U_k.
        let m = 2u8;
        let cases = [
            (v(&[0, 0, 0]), v(&[0, 0, 0]), 0u8),
            (v(&[0, 0, 0]), v(&[0, 1, 5]), 2),
            (v(&[0, 0, 0]), v(&[3, 0, 0]), 3),
            (v(&[0, 0, 0]), v(&[0, 0, 7]), 1),
        ];
        for (a, b, want) in cases {
            let got = sep_level(&a, &b).unwrap();
            assert_eq!(got, want);
            let diff = b.sub(&a).unwrap();
            for k in 0..=m + 1 {
                let in_uk = if k == 0 { diff == LexVector::zero(3) } else { diff.in_subgroup(k) };
                assert_eq!(in_uk, k >= got, "U_{k} membership disagrees at level {got}");
            }
        }
    }

    #[test]
    fn units_sit_between_subgroups() {
        let m = 2;
        for k in 0..=m {
            let u = LexVector::unit(k, m);
            assert!(u.in_subgroup(k + 1));
            assert!(!u.in_subgroup(k));
        }
    }

    #[test]
    fn concat_order_and_addition() {
        let m = 2;
        let a = ConcatElem::Seg(1, Rat::from_int(7));
        let b = ConcatElem::Seg(2, Rat::from_int(-100));
        let c1 = ConcatElem::Sep(1);
        assert_eq!(concat_compare(&a, &c1), Ordering::Less);
        assert_eq!(concat_compare(&c1, &b), Ordering::Less);
        assert_eq!(concat_compare(&a, &b), Ordering::Less);

        // Same segment adds pointwise.
        assert_eq!(
            concat_add(&ConcatElem::Seg(2, Rat::new(1, 2)), &ConcatElem::Seg(2, Rat::new(1, 3)), m),
            ConcatElem::Seg(2, Rat::new(5, 6))
        );
        // Anything else collapses to c1.
        assert_eq!(concat_add(&a, &b, m), ConcatElem::Sep(1));
        assert_eq!(concat_add(&a, &c1, m), ConcatElem::Sep(1));
        // Identity inside a segment.
        let z = ConcatElem::Seg(1, Rat::zero());
        assert_eq!(concat_add(&z, &z, m), z);
        // m = 1 totalization clause.
        assert_eq!(
            concat_add(&ConcatElem::Seg(1, Rat::one()), &ConcatElem::Seg(1, Rat::one()), 1),
            ConcatElem::Seg(1, Rat::from_int(2))
        );
    }

    #[test]
    fn model_parsing() {
        assert_eq!(ModelId::parse("dlo").unwrap(), ModelId::Dlo);
        assert_eq!(ModelId::parse("wom:2").unwrap(), ModelId::Wom { m: 2 });
        assert_eq!(ModelId::parse("concat:3").unwrap(), ModelId::Concat { m: 3 });
        assert!(ModelId::parse("wom:0").is_err());
        assert!(ModelId::parse("wom:9").is_err());
        assert!(ModelId::parse("qqq").is_err());
    }
}
