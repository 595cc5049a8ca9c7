//! Exact scalars, monomials, monomial orders and sparse polynomials.

mod field;
mod monomial;
mod parse;
mod poly;

pub use field::{Field, Scalar, DEFAULT_PRIME, SMALL_PRIME_WARNING};
pub use monomial::{Monomial, MonomialOrder};
pub use parse::parse_poly;
pub use poly::{poly_arith, ArithOp, Polynomial, Ring, Term};

pub(crate) use poly::same_ring;

/// Leading term of `f` under `ord` (re-sorting when `f` is stored under another order).
pub fn leading_term(f: &Polynomial, ord: MonomialOrder) -> Result<(Monomial, Scalar), crate::Error> {
    let g = f.reorder(ord);
    let (m, c) = g.leading_term()?;
    Ok((m.clone(), c.clone()))
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use proptest::prelude::*;

    use super::*;

    fn ring() -> Arc<Ring> {
        Ring::new(&["x", "y", "z"], Field::Prime(32003)).unwrap()
    }

    fn p(s: &str, r: &Arc<Ring>) -> Polynomial {
        parse_poly(s, r).unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        let q = Ring::new(&["x", "y"], Field::Rational).unwrap();
        let a = p("x + y", &q);
        let b = p("x - y", &q);
        assert_eq!(poly_arith(&a, &b, ArithOp::Add).unwrap(), p("2*x", &q));
        assert_eq!(poly_arith(&a, &b, ArithOp::Mul).unwrap(), p("x^2 - y^2", &q));
        assert_eq!(poly_arith(&a, &Polynomial::zero(&q), ArithOp::Add).unwrap(), a);
        let other = Ring::new(&["x", "y"], Field::Prime(7)).unwrap();
        assert!(matches!(
            poly_arith(&a, &p("x", &other), ArithOp::Sub),
            Err(crate::Error::RingMismatch)
        ));
    }

    #[test]
    fn leading_terms() {
        let r = Ring::new(&["x", "y"], Field::Prime(32003)).unwrap();
        let lt = |s: &str, o| leading_term(&p(s, &r), o).unwrap().0;
        assert_eq!(lt("x^2*y + x*y^2", MonomialOrder::Grevlex), Monomial::new([2, 1]));
        assert_eq!(lt("x + y^2", MonomialOrder::Lex), Monomial::new([1, 0]));
        assert_eq!(lt("x + y^2", MonomialOrder::Grevlex), Monomial::new([0, 2]));
        assert!(leading_term(&Polynomial::zero(&r), MonomialOrder::Grevlex).is_err());
    }

    fn arb_poly() -> impl Strategy<Value = Vec<(u32, u32, u32, i64)>> {
        prop::collection::vec((0u32..4, 0u32..4, 0u32..3, -40i64..40), 0..6)
    }

    fn build(r: &Arc<Ring>, spec: &[(u32, u32, u32, i64)], ord: MonomialOrder) -> Polynomial {
        let f = r.field();
        Polynomial::from_terms(
            r,
            ord,
            spec.iter()
                .map(|(a, b, c, k)| (Monomial::new([*a, *b, *c]), f.from_i64(*k))),
        )
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            let r = ring();
            let (a, b, c) = (
                build(&r, &a, MonomialOrder::Grevlex),
                build(&r, &b, MonomialOrder::Grevlex),
                build(&r, &c, MonomialOrder::Grevlex),
            );
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            prop_assert_eq!(a.add(&b), b.add(&a));
            prop_assert!(a.sub(&a).is_zero());
        }

        #[test]
        fn leading_term_is_multiplicative(a in arb_poly(), b in arb_poly(), lex in any::<bool>()) {
            let r = ring();
            let ord = if lex { MonomialOrder::Lex } else { MonomialOrder::Grevlex };
            let (a, b) = (build(&r, &a, ord), build(&r, &b, ord));
            prop_assume!(!a.is_zero() && !b.is_zero());
            let (ma, ca) = leading_term(&a, ord).unwrap();
            let (mb, cb) = leading_term(&b, ord).unwrap();
            let (m, c) = leading_term(&a.mul(&b), ord).unwrap();
            prop_assert_eq!(m, ma.mul(&mb));
            prop_assert_eq!(c, r.field().mul(&ca, &cb));
        }

        #[test]
        fn print_parse_round_trip(a in arb_poly()) {
            let r = ring();
            let f = build(&r, &a, MonomialOrder::Grevlex);
            prop_assert_eq!(parse_poly(&f.to_string(), &r).unwrap(), f);
        }
    }
}
