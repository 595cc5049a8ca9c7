use std::sync::Arc;

use proptest::prelude::*;

use formring_core::filtration::{module_length, CyclicModule, HilbertFiltration};
use formring_core::groebner::Ideal;
use formring_core::hilbert::{hilbert_coefficients, DEFAULT_N_CAP};
use formring_core::locallen::{colength, is_m_primary, local_length, LengthSchedule};
use formring_core::polyring::{parse_poly, Field, Monomial, Polynomial, Ring};
use formring_oracle::fit::binomial_basis_coefficients;
use formring_oracle::monomial::MonomialIdeal;

fn ring() -> Arc<Ring> {
    Ring::new(&["x", "y"], Field::Prime(32003)).unwrap()
}

fn to_ideal(r: &Arc<Ring>, m: &MonomialIdeal) -> Ideal {
    let gens = m
        .gens()
        .iter()
        .map(|e| Polynomial::monomial(r, Monomial::new(e.iter().copied())))
        .collect();
    Ideal::new(r, gens).unwrap()
}

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases: std::env::var("PROPTEST_CASES").ok().and_then(|v| v.parse().ok()).unwrap_or(cases),
        failure_persistence: None,
        ..ProptestConfig::default()
    }
}

/// Proper monomial ideals in two variables, m-primary when `primary` is set.
fn monomial_ideal(primary: bool) -> impl Strategy<Value = MonomialIdeal> {
    let mixed = prop::collection::vec((0u32..5, 0u32..5), 0..4);
    (1u32..6, 1u32..6, mixed, any::<bool>()).prop_map(move |(a, b, extra, drop_y)| {
        let mut gens = vec![vec![a, 0]];
        if primary || !drop_y {
            gens.push(vec![0, b]);
        }
        gens.extend(extra.into_iter().filter(|p| *p != (0, 0)).map(|(i, j)| vec![i, j]));
        MonomialIdeal::new(2, gens)
    })
}

proptest! {
    #![proptest_config(config(48))]

    #[test]
    fn colength_matches_oracle(m in monomial_ideal(false)) {
        let r = ring();
        let i = to_ideal(&r, &m);
        prop_assert_eq!(is_m_primary(&i), m.dimension() == 0);
        prop_assert_eq!(colength(&i).ok(), m.colength());
    }

    #[test]
    fn ideal_operations_match_oracle(a in monomial_ideal(true), b in monomial_ideal(true), i in 0u32..3, j in 0u32..3) {
        let r = ring();
        let (ia, ib) = (to_ideal(&r, &a), to_ideal(&r, &b));
        prop_assert_eq!(colength(&ia.sum(&ib).unwrap()).ok(), a.sum(&b).colength());
        prop_assert_eq!(colength(&ia.product(&ib).unwrap()).ok(), a.product(&b).colength());
        prop_assert_eq!(colength(&ia.intersect(&ib).unwrap()).ok(), a.intersect(&b).colength());
        let mono = Polynomial::monomial(&r, Monomial::new([i, j]));
        prop_assert_eq!(colength(&ia.colon(&mono).unwrap()).ok(), a.colon(&[i, j]).colength());
    }

    #[test]
    fn powers_match_oracle(m in monomial_ideal(true)) {
        let r = ring();
        let f = HilbertFiltration::adic(to_ideal(&r, &m), CyclicModule::free(&r)).unwrap();
        for n in 1..=3u32 {
            prop_assert_eq!(module_length(&f, n as usize).unwrap(), m.power(n).colength().unwrap());
        }
    }

    #[test]
    fn lengths_are_additive(m in monomial_ideal(true), c in 1i64..50) {
        // A = I + J ⊇ B = I ⊇ C = I J, with J = (x^2 + c x y, y^2) m-primary for every c
        let r = ring();
        let i = to_ideal(&r, &m);
        let j = Ideal::new(&r, vec![
            parse_poly(&format!("x^2 + {c}*x*y"), &r).unwrap(),
            parse_poly("y^2", &r).unwrap(),
        ]).unwrap();
        let a = i.sum(&j).unwrap();
        let prod = i.product(&j).unwrap();
        let s = LengthSchedule::default();
        let ab = local_length(&a, &i, s).unwrap().length;
        let bc = local_length(&i, &prod, s).unwrap().length;
        let ac = local_length(&a, &prod, s).unwrap().length;
        prop_assert_eq!(ab + bc, ac);
    }
}

proptest! {
    #![proptest_config(config(12))]

    #[test]
    fn coefficients_match_oracle_fit(m in monomial_ideal(true)) {
        let r = ring();
        let f = HilbertFiltration::adic(to_ideal(&r, &m), CyclicModule::free(&r)).unwrap();
        let e = hilbert_coefficients(&f, DEFAULT_N_CAP).unwrap();
        let ns: Vec<i64> = (8..=12).collect();
        let hs: Vec<i64> = ns.iter().map(|n| m.power(*n as u32).colength().unwrap() as i64).collect();
        prop_assert_eq!(binomial_basis_coefficients(&ns, &hs, 2).unwrap(), e.e);
    }
}
