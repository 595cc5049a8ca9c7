use std::sync::Arc;

use super::*;
use crate::polyring::Field;

fn ring() -> Arc<Ring> {
    Ring::new(&["x", "y"], Field::Prime(32003)).unwrap()
}

fn ideal(r: &Arc<Ring>, gens: &[&str]) -> Ideal {
    Ideal::parse(r, gens).unwrap()
}

fn basis_strings(i: &Ideal) -> Vec<String> {
    i.basis().iter().map(|g| g.to_string()).collect()
}

#[test]
fn basis_examples() {
    let r = ring();
    assert_eq!(basis_strings(&ideal(&r, &["x"])), ["x"]);
    assert_eq!(basis_strings(&ideal(&r, &["x+y", "x-y"])), ["y", "x"]);
    assert_eq!(
        basis_strings(&ideal(&r, &["x^2", "x*y", "y^2"])),
        ["y^2", "x*y", "x^2"]
    );
    assert!(Ideal::zero(&r).basis().is_empty());
    assert!(ideal(&r, &["x", "x - 1"]).is_unit());
}

#[test]
fn normal_form_examples() {
    let r = ring();
    let p = |s| parse_poly(s, &r).unwrap();
    let g = MonomialOrder::Grevlex;
    assert!(normal_form(&p("x^2"), &ideal(&r, &["x"]), g).is_zero());
    assert_eq!(normal_form(&p("y"), &ideal(&r, &["x"]), g), p("y"));
    assert_eq!(normal_form(&p("x*y"), &ideal(&r, &["x^2", "y^2"]), g), p("x*y"));
}

#[test]
fn sum_product_power() {
    let r = ring();
    let s = ideal_op(&ideal(&r, &["x"]), &ideal(&r, &["y"]), IdealOp::Sum).unwrap();
    assert!(s.equals(&Ideal::maximal(&r)).unwrap());
    let p = ideal_op(&ideal(&r, &["x"]), &ideal(&r, &["y"]), IdealOp::Product).unwrap();
    assert!(p.equals(&ideal(&r, &["x*y"])).unwrap());
    let i = ideal(&r, &["x^2", "x*y", "y^2"]);
    let sq = i.product(&i).unwrap();
    assert!(sq.equals(&Ideal::maximal_power(&r, 4)).unwrap());

    let m = Ideal::maximal(&r);
    let cache = PowerCache::new(m.clone());
    assert!(ideal_power(&m, 0, &cache).unwrap().is_unit());
    assert!(ideal_power(&m, 2, &cache)
        .unwrap()
        .equals(&ideal(&r, &["x^2", "x*y", "y^2"]))
        .unwrap());
    let other = Ideal::maximal(&r);
    assert!(ideal_power(&other, 2, &cache).is_err());
    let icache = PowerCache::new(i.clone());
    assert!(ideal_power(&i, 2, &icache)
        .unwrap()
        .equals(&Ideal::maximal_power(&r, 4))
        .unwrap());
}

#[test]
fn intersection_examples() {
    let r = ring();
    let xy = intersect(&ideal(&r, &["x"]), &ideal(&r, &["y"])).unwrap();
    assert!(xy.equals(&ideal(&r, &["x*y"])).unwrap());
    let a = ideal(&r, &["x^2 + y^3", "x*y - y"]);
    assert!(intersect(&a, &a).unwrap().equals(&a).unwrap());
    let c = intersect(&ideal(&r, &["x^2", "x*y"]), &ideal(&r, &["y"])).unwrap();
    assert!(c.equals(&ideal(&r, &["x*y"])).unwrap());
}

#[test]
fn saturation_examples() {
    let r = ring();
    let b = Ideal::parse(&r, &["x^2 - x", "y"]).unwrap();
    let x = parse_poly("x", &r).unwrap();
    let y = parse_poly("y", &r).unwrap();
    let expect = Ideal::parse(&r, &["x - 1", "y"]).unwrap();
    assert!(b.saturate(&x).unwrap().equals(&expect).unwrap());
    assert!(b.saturate(&y).unwrap().is_unit());
    let c = Ideal::parse(&r, &["x^2", "x*y"]).unwrap();
    assert!(c.saturate(&x).unwrap().is_unit());
    assert!(c.saturate(&y).unwrap().equals(&Ideal::parse(&r, &["x"]).unwrap()).unwrap());
}

#[test]
fn colon_examples() {
    let r = ring();
    let p = |s| parse_poly(s, &r).unwrap();
    assert!(colon(&ideal(&r, &["x^2"]), &p("x"))
        .unwrap()
        .equals(&ideal(&r, &["x"]))
        .unwrap());
    assert!(colon(&ideal(&r, &["x^2", "x*y"]), &p("x"))
        .unwrap()
        .equals(&ideal(&r, &["x", "y"]))
        .unwrap());
    let a = ideal(&r, &["x^3 - y", "y^2"]);
    assert!(colon(&a, &p("1")).unwrap().equals(&a).unwrap());
    assert!(colon(&a, &Polynomial::zero(&r)).is_err());
    // non-monomial: (x(x - 1), y) : (x - 1) = (x, y)
    assert!(colon(&ideal(&r, &["x^2 - x", "y"]), &p("x - 1"))
        .unwrap()
        .equals(&Ideal::maximal(&r))
        .unwrap());
}

#[test]
fn equality_examples() {
    let r = ring();
    assert!(ideal_equal(&ideal(&r, &["x", "y"]), &ideal(&r, &["x+y", "x-y"])).unwrap());
    assert!(!ideal_equal(&ideal(&r, &["x"]), &ideal(&r, &["x^2"])).unwrap());
    let j = ideal(&r, &["x^2", "y^2"]);
    let m2 = Ideal::maximal_power(&r, 2);
    assert!(ideal_equal(&Ideal::maximal_power(&r, 4), &j.product(&m2).unwrap()).unwrap());
    let other = Ring::new(&["x", "y"], Field::Prime(7)).unwrap();
    assert!(ideal_equal(&Ideal::maximal(&r), &Ideal::maximal(&other)).is_err());
}

#[test]
fn dimension_examples() {
    let r = ring();
    assert_eq!(krull_dimension(&Ideal::zero(&r)).unwrap(), 2);
    assert_eq!(krull_dimension(&ideal(&r, &["y^2 - x^5"])).unwrap(), 1);
    assert_eq!(krull_dimension(&Ideal::maximal(&r)).unwrap(), 0);
    assert!(matches!(
        krull_dimension(&Ideal::unit(&r)),
        Err(Error::UnitIdeal)
    ));
}

#[test]
fn truncated_basis_matches_plain() {
    let r = ring();
    let a = ideal(&r, &["x^2 + 3*x*y^2 + y^5", "x*y + y^4 - 2*x^3"]);
    for t in [3, 5, 8] {
        let fast = a.plus_maximal_power(t);
        let plain: Vec<Polynomial> = fast.gens().to_vec();
        let slow = buchberger::reduced_groebner_basis(&r, &plain, MonomialOrder::Grevlex, None);
        assert_eq!(*fast.basis(), slow, "t = {t}");
    }
}

#[test]
fn basis_is_canonical_across_orders_of_input() {
    let r = ring();
    let a = ideal(&r, &["x^3 - y^2", "x*y^2 - x + y"]);
    let b = ideal(&r, &["x*y^2 - x + y", "x^3 - y^2 + (x*y^2 - x + y)"]);
    assert_eq!(*a.basis(), *b.basis());
    assert_eq!(
        *a.groebner_basis(MonomialOrder::Lex),
        *b.groebner_basis(MonomialOrder::Lex)
    );
}
