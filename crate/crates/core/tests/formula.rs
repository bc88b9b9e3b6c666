//! Parser, printer, evaluator and normal-form behavior.

use std::collections::BTreeMap;

use orddim::budget::Budget;
use orddim::formula::{
    alpha_eq, eval, eval_closed, parse, simplify, swap_formula, to_dnf, Assignment, Formula,
};
use orddim::model::{ConcatElem, Element, LexVector, ModelId};
use orddim::Rat;

use proptest::prelude::*;

fn dlo() -> ModelId {
    ModelId::Dlo
}

fn wom2() -> ModelId {
    ModelId::Wom { m: 2 }
}

fn concat2() -> ModelId {
    ModelId::Concat { m: 2 }
}

fn lex(coords: &[i64]) -> Element {
    Element::Lex(LexVector(coords.iter().map(|&c| Rat::from_int(c)).collect()))
}

fn rat(q: i64) -> Element {
    Element::Rat(Rat::from_int(q))
}

fn asg(pairs: &[(u32, Element)]) -> Assignment {
    pairs.iter().cloned().collect::<BTreeMap<_, _>>()
}

#[test]
fn parses_quantified_dlo_formula() {
    let f = parse("E y. x1 < y & y < x2", dlo()).unwrap();
    match &f {
        Formula::Exists(_, body) => match &**body {
            Formula::And(parts) => assert_eq!(parts.len(), 2),
            other => panic!("expected conjunction, got {other}"),
        },
        other => panic!("expected existential, got {other}"),
    }
}

#[test]
fn parses_class_atom_with_vector_constant() {
    let f = parse("U1(x1 - [0,0,1])", wom2()).unwrap();
    assert_eq!(f.to_string(), "U1(x1 + [0,0,-1])");
}

#[test]
fn rejects_out_of_range_class_predicate() {
    let err = parse("U3(x1)", wom2()).unwrap_err();
    assert!(matches!(err, orddim::Error::Signature(_)), "got {err:?}");
}

#[test]
fn rejects_addition_under_dlo() {
    assert!(parse("x1 + x2 < x1", dlo()).is_err());
    assert!(parse("2*x1 < x2", dlo()).is_err());
}

#[test]
fn rejects_unbound_identifiers() {
    assert!(parse("y < x1", dlo()).is_err());
    assert!(parse("E x1. x1 < x2", dlo()).is_err());
}

#[test]
fn syntax_errors_carry_positions() {
    match parse("x1 < ", dlo()) {
        Err(orddim::Error::Syntax { pos, .. }) => assert_eq!(pos, 5),
        other => panic!("expected syntax error, got {other:?}"),
    }
}

#[test]
fn eval_class_membership() {
    let f = parse("U1(x1)", wom2()).unwrap();
    assert!(eval(&f, &asg(&[(1, lex(&[0, 0, 7]))]), wom2()).unwrap());
    let g = parse("U2(x1)", wom2()).unwrap();
    assert!(!eval(&g, &asg(&[(1, lex(&[1, 0, 0]))]), wom2()).unwrap());
}

#[test]
fn eval_empty_interval_through_elimination() {
    let f = parse("E y. x1 < y & y < x2", dlo()).unwrap();
    let a = asg(&[(1, rat(0)), (2, rat(0))]);
    assert!(!eval(&f, &a, dlo()).unwrap());
    let b = asg(&[(1, rat(0)), (2, rat(1))]);
    assert!(eval(&f, &b, dlo()).unwrap());
}

#[test]
fn eval_concat_totalized_addition() {
    // x1 + x2 collapses to c1 off the diagonal.
    let f = parse("x1 + x2 = c1", concat2()).unwrap();
    let cross = asg(&[
        (1, Element::Concat(ConcatElem::Seg(1, Rat::from_int(7)))),
        (2, Element::Concat(ConcatElem::Seg(2, Rat::zero()))),
    ]);
    assert!(eval(&f, &cross, concat2()).unwrap());
    let same = asg(&[
        (1, Element::Concat(ConcatElem::Seg(1, Rat::from_int(7)))),
        (2, Element::Concat(ConcatElem::Seg(1, Rat::zero()))),
    ]);
    assert!(!eval(&f, &same, concat2()).unwrap());
}

#[test]
fn dnf_examples() {
    let budget = Budget::default();
    // De Morgan.
    let f = parse("!(x1 < x2 & x2 < x3)", dlo()).unwrap();
    let d = to_dnf(&f, &budget).unwrap();
    assert_eq!(d.to_string(), "!(x1 < x2) | !(x2 < x3)");
    // Fixed point.
    let g = parse("x1 < x2 | x2 < x3", dlo()).unwrap();
    assert_eq!(to_dnf(&g, &budget).unwrap(), g);
    // Distribution.
    let h = parse("(x1 < x2 | x2 < x1) & x1 < x3", dlo()).unwrap();
    let hd = to_dnf(&h, &budget).unwrap();
    assert_eq!(hd.to_string(), "x1 < x2 & x1 < x3 | x2 < x1 & x1 < x3");
}

#[test]
fn simplify_folds_ground_atoms() {
    let f = parse("[0,0,1] < [0,1,0] & x1 < x1", wom2()).unwrap();
    assert_eq!(simplify(&f, wom2()).unwrap(), Formula::False);
    let g = parse("[0,0,1] < [0,1,0] | x1 < x2", wom2()).unwrap();
    let s = simplify(&g, wom2()).unwrap();
    assert_eq!(s, Formula::True);
}

#[test]
fn swap_is_an_involution_on_membership() {
    let f = parse("x1 < x2", dlo()).unwrap();
    let sw = swap_formula(&f);
    let ab = asg(&[(1, rat(0)), (2, rat(5))]);
    let ba = asg(&[(1, rat(5)), (2, rat(0))]);
    assert!(eval(&f, &ab, dlo()).unwrap());
    assert!(eval(&sw, &ba, dlo()).unwrap());
    assert!(!eval(&sw, &ab, dlo()).unwrap());
}

#[test]
fn closed_sentences() {
    assert!(eval_closed(&parse("E u. u < (1:0)", concat2()).unwrap(), concat2()).unwrap());
    assert!(!eval_closed(&parse("E u. u < u", dlo()).unwrap(), dlo()).unwrap());
}

// ---- round-trip properties ----

fn arb_dlo_formula() -> impl Strategy<Value = String> {
    // Textual generation keeps the strategy decoupled from internal types.
    let term = prop_oneof![
        (1u32..=3).prop_map(|i| format!("x{i}")),
        (-3i64..=3).prop_map(|q| format!("{q}")),
    ];
    let atom = (term.clone(), prop_oneof![Just("<"), Just("="), Just(">")], term)
        .prop_map(|(a, op, b)| format!("{a} {op} {b}"));
    atom.prop_recursive(3, 24, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("({a}) & ({b})")),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("({a}) | ({b})")),
            inner.clone().prop_map(|a| format!("!({a})")),
        ]
    })
}

proptest! {
    #[test]
    fn print_parse_round_trip_dlo(src in arb_dlo_formula()) {
        let f = parse(&src, dlo()).unwrap();
        let printed = f.to_string();
        let g = parse(&printed, dlo()).unwrap();
        prop_assert_eq!(&f, &g, "printed as {}", printed);
    }
}

#[test]
fn print_parse_round_trip_wom_and_concat() {
    let samples_wom = [
        "U1(x1) & x2 < [0,1,0]",
        "2*x1 + -1/2*x2 + [1,0,3] < x3 | !(U2(x1 - x2))",
        "E y. U1(y - x1) & y < x1 + [0,0,1]",
        "A z. (z < x1 | x1 < z) | z = x1",
    ];
    for src in samples_wom {
        let f = parse(src, wom2()).unwrap();
        let g = parse(&f.to_string(), wom2()).unwrap();
        assert!(alpha_eq(&f, &g), "{src} -> {f} failed round trip");
    }
    let samples_concat = [
        "(1:1/2) < x1 & x1 < c1",
        "x1 + x2 = (2:0) | x1 = c1",
        "E w. w < x1 & c1 < w",
    ];
    for src in samples_concat {
        let f = parse(src, concat2()).unwrap();
        let g = parse(&f.to_string(), concat2()).unwrap();
        assert!(alpha_eq(&f, &g), "{src} -> {f} failed round trip");
    }
}

proptest! {
    #[test]
    fn dnf_preserves_eval(src in arb_dlo_formula(), vals in proptest::collection::vec(-5i64..=5, 3)) {
        let f = parse(&src, dlo()).unwrap();
        let d = to_dnf(&f, &Budget::default()).unwrap();
        let a = asg(&[(1, rat(vals[0])), (2, rat(vals[1])), (3, rat(vals[2]))]);
        prop_assert_eq!(eval(&f, &a, dlo()).unwrap(), eval(&d, &a, dlo()).unwrap());
    }

    #[test]
    fn simplify_preserves_eval(src in arb_dlo_formula(), vals in proptest::collection::vec(-5i64..=5, 3)) {
        let f = parse(&src, dlo()).unwrap();
        let s = simplify(&f, dlo()).unwrap();
        let a = asg(&[(1, rat(vals[0])), (2, rat(vals[1])), (3, rat(vals[2]))]);
        prop_assert_eq!(eval(&f, &a, dlo()).unwrap(), eval(&s, &a, dlo()).unwrap());
    }
}
