//! Recursive-descent parser for the concrete syntax.
//!
//! ```text
//! formula := or
//! or      := and ( '|' and )*
//! and     := unary ( '&' unary )*
//! unary   := '!' unary | ('E'|'A') ident '.' formula | primary
//! primary := '(' formula ')' | 'true' | 'false' | atom
//! atom    := term ('<'|'='|'>') term | 'U'k '(' term ')'
//! term    := addend (('+'|'-') addend)*
//! addend  := ['-'] ( rat ['*' var] | var | constant )
//! ```
//!
//! Quantifier scope extends to the right; `!` binds tighter than `&`, which
//! binds tighter than `|`. Constants are model-specific: bare rationals under
//! `dlo`, bracketed vectors `[q1,...,q_{m+1}]` under `wom:m`, segment points
//! `(i:q)` and separators `c1..c_{m-1}` under `concat:m`. Free variables are
//! positional (`x1`, `x2`, …); any other identifier must be bound by an
//! enclosing quantifier and is alpha-renamed away from the positional range.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use super::{Atom, Formula, Term, VarId, BOUND_BASE};
use crate::error::Error;
use crate::model::{ConcatElem, Element, LexVector, ModelId};
use crate::rat::Rat;
use crate::Result;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Int(String),
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Dot,
    Colon,
    Less,
    Greater,
    Equals,
    Bang,
    Amp,
    Pipe,
    Plus,
    Minus,
    Star,
    Slash,
}

struct Lexer<'a> {
    src: &'a str,
    toks: Vec<(Tok, usize)>,
}

fn lex(src: &str) -> Result<Vec<(Tok, usize)>> {
    let bytes = src.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        let pos = i;
        match b {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'(' => toks.push((Tok::LParen, pos)),
            b')' => toks.push((Tok::RParen, pos)),
            b'[' => toks.push((Tok::LBracket, pos)),
            b']' => toks.push((Tok::RBracket, pos)),
            b',' => toks.push((Tok::Comma, pos)),
            b'.' => toks.push((Tok::Dot, pos)),
            b':' => toks.push((Tok::Colon, pos)),
            b'<' => toks.push((Tok::Less, pos)),
            b'>' => toks.push((Tok::Greater, pos)),
            b'=' => toks.push((Tok::Equals, pos)),
            b'!' => toks.push((Tok::Bang, pos)),
            b'&' => toks.push((Tok::Amp, pos)),
            b'|' => toks.push((Tok::Pipe, pos)),
            b'+' => toks.push((Tok::Plus, pos)),
            b'-' => toks.push((Tok::Minus, pos)),
            b'*' => toks.push((Tok::Star, pos)),
            b'/' => toks.push((Tok::Slash, pos)),
            b'0'..=b'9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                toks.push((Tok::Int(src[start..i].to_string()), pos));
                continue;
            }
            b'a'..=b'z' | b'A'..=b'Z' | b'_' => {
                let start = i;
                while i < bytes.len()
                    && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                toks.push((Tok::Ident(src[start..i].to_string()), pos));
                continue;
            }
            other => {
                return Err(Error::Syntax {
                    pos,
                    msg: format!("unexpected character `{}`", other as char),
                })
            }
        }
        i += 1;
    }
    Ok(toks)
}

struct Parser<'a> {
    lexer: Lexer<'a>,
    at: usize,
    model: ModelId,
    /// Lexical scope of quantifier-bound names, innermost last.
    scope: Vec<(String, VarId)>,
    next_bound: VarId,
}

/// Parses `text` as a formula over `model`, rejecting constructs outside the
/// model's signature. Bound variables are renamed into a range disjoint from
/// the positional variables.
pub fn parse(text: &str, model: ModelId) -> Result<Formula> {
    let toks = lex(text)?;
    let mut p = Parser {
        lexer: Lexer { src: text, toks },
        at: 0,
        model,
        scope: Vec::new(),
        next_bound: BOUND_BASE,
    };
    let f = p.formula()?;
    if p.at != p.lexer.toks.len() {
        return Err(p.err_here("trailing input"));
    }
    f.validate(model)?;
    Ok(f)
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.lexer.toks.get(self.at).map(|(t, _)| t)
    }

    fn peek_n(&self, n: usize) -> Option<&Tok> {
        self.lexer.toks.get(self.at + n).map(|(t, _)| t)
    }

    fn pos(&self) -> usize {
        self.lexer
            .toks
            .get(self.at)
            .map(|(_, p)| *p)
            .unwrap_or(self.lexer.src.len())
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.lexer.toks.get(self.at).map(|(t, _)| t.clone());
        if t.is_some() {
            self.at += 1;
        }
        t
    }

    fn err_here(&self, msg: &str) -> Error {
        Error::Syntax { pos: self.pos(), msg: msg.to_string() }
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<()> {
        if self.peek() == Some(&want) {
            self.at += 1;
            Ok(())
        } else {
            Err(self.err_here(what))
        }
    }

    fn formula(&mut self) -> Result<Formula> {
        let mut parts = alloc::vec![self.and_level()?];
        while self.peek() == Some(&Tok::Pipe) {
            self.at += 1;
            parts.push(self.and_level()?);
        }
        Ok(Formula::or(parts))
    }

    fn and_level(&mut self) -> Result<Formula> {
        let mut parts = alloc::vec![self.unary()?];
        while self.peek() == Some(&Tok::Amp) {
            self.at += 1;
            parts.push(self.unary()?);
        }
        Ok(Formula::and(parts))
    }

    fn unary(&mut self) -> Result<Formula> {
        match self.peek() {
            Some(Tok::Bang) => {
                self.at += 1;
                Ok(Formula::not(self.unary()?))
            }
            Some(Tok::Ident(id)) if (id == "E" || id == "A") => {
                let forall = id == "A";
                self.at += 1;
                let name = match self.bump() {
                    Some(Tok::Ident(n)) => n,
                    _ => return Err(self.err_here("expected a variable name after quantifier")),
                };
                if parse_positional(&name).is_some() {
                    return Err(self.err_here(
                        "quantified variables may not use the positional x<k> names",
                    ));
                }
                self.expect(Tok::Dot, "expected `.` after quantified variable")?;
                let v = self.next_bound;
                self.next_bound += 1;
                self.scope.push((name, v));
                let body = self.formula()?;
                self.scope.pop();
                Ok(if forall { Formula::forall(v, body) } else { Formula::exists(v, body) })
            }
            _ => self.primary(),
        }
    }

    fn primary(&mut self) -> Result<Formula> {
        match self.peek() {
            Some(Tok::Ident(id)) if id == "true" => {
                self.at += 1;
                Ok(Formula::True)
            }
            Some(Tok::Ident(id)) if id == "false" => {
                self.at += 1;
                Ok(Formula::False)
            }
            Some(Tok::Ident(id)) if is_u_pred(id) => self.atom_formula(),
            Some(Tok::LParen) if !self.lparen_opens_concat_const() => {
                self.at += 1;
                let f = self.formula()?;
                self.expect(Tok::RParen, "expected `)`")?;
                Ok(f)
            }
            _ => self.atom_formula(),
        }
    }

    /// `(` INT `:` … is a segment-point constant, not a parenthesized
    /// formula.
    fn lparen_opens_concat_const(&self) -> bool {
        matches!(
            (self.peek_n(1), self.peek_n(2)),
            (Some(Tok::Int(_)), Some(Tok::Colon))
        ) || matches!(
            (self.peek_n(1), self.peek_n(2), self.peek_n(3)),
            (Some(Tok::Minus), Some(Tok::Int(_)), Some(Tok::Colon))
        )
    }

    fn atom_formula(&mut self) -> Result<Formula> {
        if let Some(Tok::Ident(id)) = self.peek() {
            if let Some(k) = u_pred_index(id) {
                self.at += 1;
                self.expect(Tok::LParen, "expected `(` after U predicate")?;
                let t = self.term()?;
                self.expect(Tok::RParen, "expected `)` closing U predicate")?;
                let atom = Atom::InU(k, t);
                atom.validate(self.model)?;
                return Ok(Formula::Atom(atom));
            }
        }
        let lhs = self.term()?;
        let op = self.bump().ok_or_else(|| self.err_here("expected `<`, `=` or `>`"))?;
        let rhs = self.term()?;
        let atom = match op {
            Tok::Less => Atom::Less(lhs, rhs),
            Tok::Greater => Atom::Less(rhs, lhs),
            Tok::Equals => Atom::Eq(lhs, rhs),
            _ => return Err(self.err_here("expected `<`, `=` or `>` between terms")),
        };
        atom.validate(self.model)?;
        Ok(Formula::Atom(atom))
    }

    fn term(&mut self) -> Result<Term> {
        let mut acc = self.addend()?;
        loop {
            let negate = match self.peek() {
                Some(Tok::Plus) => false,
                Some(Tok::Minus) => true,
                _ => break,
            };
            self.at += 1;
            let mut rhs = self.addend()?;
            if negate {
                rhs = rhs.scale(&-Rat::one(), self.model)?;
            }
            acc = acc.add(&rhs, self.model)?;
        }
        Ok(acc)
    }

    fn addend(&mut self) -> Result<Term> {
        if self.peek() == Some(&Tok::Minus) {
            self.at += 1;
            let t = self.addend()?;
            return t.scale(&-Rat::one(), self.model);
        }
        match self.peek().cloned() {
            Some(Tok::Int(_)) => {
                let q = self.rational()?;
                if self.peek() == Some(&Tok::Star) {
                    self.at += 1;
                    let v = self.variable()?;
                    Ok(Term::scaled_var(q, v))
                } else if self.model == ModelId::Dlo {
                    Ok(Term::constant(Element::Rat(q)))
                } else {
                    Err(self.err_here("bare rational constants exist only under dlo"))
                }
            }
            Some(Tok::LBracket) => self.vector_const(),
            Some(Tok::LParen) => self.segment_const(),
            Some(Tok::Ident(id)) => {
                let in_scope = self.scope.iter().any(|(n, _)| *n == id);
                match separator_index(&id) {
                    Some(j) if !in_scope && matches!(self.model, ModelId::Concat { .. }) => {
                        self.at += 1;
                        let elem = Element::Concat(ConcatElem::Sep(j));
                        elem.validate(self.model)
                            .map_err(|e| Error::Signature(e.to_string()))?;
                        Ok(Term::constant(elem))
                    }
                    _ => Ok(Term::var(self.variable()?)),
                }
            }
            _ => Err(self.err_here("expected a term")),
        }
    }

    fn variable(&mut self) -> Result<VarId> {
        match self.bump() {
            Some(Tok::Ident(name)) => {
                if let Some(idx) = parse_positional(&name) {
                    Ok(idx)
                } else if let Some((_, v)) =
                    self.scope.iter().rev().find(|(n, _)| *n == name)
                {
                    Ok(*v)
                } else {
                    self.at -= 1;
                    Err(self.err_here(&format!(
                        "unknown identifier `{name}` (free variables are x1, x2, …)"
                    )))
                }
            }
            _ => {
                self.at -= 1;
                Err(self.err_here("expected a variable"))
            }
        }
    }

    fn rational(&mut self) -> Result<Rat> {
        let numer = match self.bump() {
            Some(Tok::Int(s)) => s,
            _ => {
                self.at -= 1;
                return Err(self.err_here("expected a number"));
            }
        };
        let mut text = numer;
        if self.peek() == Some(&Tok::Slash) {
            self.at += 1;
            match self.bump() {
                Some(Tok::Int(d)) => {
                    text.push('/');
                    text.push_str(&d);
                }
                _ => {
                    self.at -= 1;
                    return Err(self.err_here("expected a denominator"));
                }
            }
        }
        let pos = self.pos();
        Rat::parse(&text).map_err(|_| Error::Syntax { pos, msg: "bad rational".to_string() })
    }

    fn signed_rational(&mut self) -> Result<Rat> {
        if self.peek() == Some(&Tok::Minus) {
            self.at += 1;
            Ok(-self.rational()?)
        } else {
            self.rational()
        }
    }

    fn vector_const(&mut self) -> Result<Term> {
        let pos = self.pos();
        self.expect(Tok::LBracket, "expected `[`")?;
        let mut coords = Vec::new();
        loop {
            coords.push(self.signed_rational()?);
            match self.bump() {
                Some(Tok::Comma) => continue,
                Some(Tok::RBracket) => break,
                _ => {
                    self.at -= 1;
                    return Err(self.err_here("expected `,` or `]` in vector"));
                }
            }
        }
        let elem = Element::Lex(LexVector(coords));
        elem.validate(self.model)
            .map_err(|e| Error::Syntax { pos, msg: e.to_string() })?;
        Ok(Term::constant(elem))
    }

    fn segment_const(&mut self) -> Result<Term> {
        let pos = self.pos();
        self.expect(Tok::LParen, "expected `(`")?;
        let neg = if self.peek() == Some(&Tok::Minus) {
            self.at += 1;
            true
        } else {
            false
        };
        let seg = match self.bump() {
            Some(Tok::Int(s)) if !neg => s
                .parse::<u8>()
                .map_err(|_| Error::Syntax { pos, msg: "segment index too large".to_string() })?,
            _ => {
                return Err(Error::Syntax {
                    pos,
                    msg: "expected `(segment:value)`".to_string(),
                })
            }
        };
        self.expect(Tok::Colon, "expected `:` in segment constant")?;
        let value = self.signed_rational()?;
        self.expect(Tok::RParen, "expected `)` closing segment constant")?;
        let elem = Element::Concat(ConcatElem::Seg(seg, value));
        elem.validate(self.model)
            .map_err(|e| Error::Syntax { pos, msg: e.to_string() })?;
        Ok(Term::constant(elem))
    }
}

/// `x<digits>` with a positive index.
fn parse_positional(name: &str) -> Option<VarId> {
    let rest = name.strip_prefix('x')?;
    if rest.is_empty() || !rest.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    let idx: VarId = rest.parse().ok()?;
    (idx >= 1 && idx < BOUND_BASE).then_some(idx)
}

fn is_u_pred(name: &str) -> bool {
    u_pred_index(name).is_some()
}

/// `U<digits>`.
fn u_pred_index(name: &str) -> Option<u8> {
    let rest = name.strip_prefix('U')?;
    if rest.is_empty() || !rest.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    rest.parse().ok()
}

/// `c<digits>`; only meaningful under `concat`.
fn separator_index(name: &str) -> Option<u8> {
    let rest = name.strip_prefix('c')?;
    if rest.is_empty() || !rest.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    rest.parse().ok()
}
