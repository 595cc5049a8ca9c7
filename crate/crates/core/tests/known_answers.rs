use formring_core::certify::{certify_depth, Verdict};
use formring_core::filtration::{CyclicModule, HilbertFiltration};
use formring_core::groebner::Ideal;
use formring_core::hilbert::{check_shift, ej_series, hilbert_coefficients, DEFAULT_N_CAP};
use formring_core::polyring::{Field, Ring};
use formring_core::reduction::{default_n_bound, find_reduction, DEFAULT_ATTEMPTS};
use formring_oracle::fit::binomial_basis_coefficients;
use formring_oracle::monomial::MonomialIdeal;

struct Expected {
    gens: &'static [&'static str],
    exps: &'static [[u32; 2]],
    e: [i64; 3],
    r: usize,
    s_cm: i64,
    s_hm: i64,
    verdict: Verdict,
}

fn check(x: &Expected) {
    let ring = Ring::new(&["x", "y"], Field::Prime(32003)).unwrap();
    let f = HilbertFiltration::adic(Ideal::parse(&ring, x.gens).unwrap(), CyclicModule::free(&ring)).unwrap();
    let e = hilbert_coefficients(&f, DEFAULT_N_CAP).unwrap();
    let rd = find_reduction(&f, 7, default_n_bound(&f), DEFAULT_ATTEMPTS).unwrap();
    let cert = certify_depth(&f, &rd, &e).unwrap();
    let ej = ej_series(&f, &rd.j, DEFAULT_N_CAP).unwrap();

    let m = MonomialIdeal::new(2, x.exps.iter().map(|g| g.to_vec()));
    let ns: Vec<i64> = (6..=10).collect();
    let hs: Vec<i64> = ns.iter().map(|n| m.power(*n as u32).colength().unwrap() as i64).collect();
    assert_eq!(binomial_basis_coefficients(&ns, &hs, 2).unwrap(), e.e, "{:?}", x.gens);

    assert_eq!(e.e, x.e, "{:?}", x.gens);
    assert_eq!(rd.r, x.r, "{:?}", x.gens);
    assert_eq!((cert.sums.s_cm, cert.sums.s_hm), (x.s_cm, x.s_hm), "{:?}", x.gens);
    assert_eq!(cert.verdict, x.verdict, "{:?}", x.gens);
    assert!(check_shift(&e, &ej).passed(), "{:?}", x.gens);
}

#[test]
fn fixture_c() {
    check(&Expected {
        gens: &["x^4", "x^3*y", "x*y^3", "y^4"],
        exps: &[[4, 0], [3, 1], [1, 3], [0, 4]],
        e: [16, 6, 0],
        r: 2,
        s_cm: 5,
        s_hm: 7,
        verdict: Verdict::DepthLessThanDMinus1,
    });
}

#[test]
fn cohen_macaulay_monomial_ideals() {
    check(&Expected {
        gens: &["x^5", "x^2*y", "y^3"],
        exps: &[[5, 0], [2, 1], [0, 3]],
        e: [11, 2, 0],
        r: 1,
        s_cm: 2,
        s_hm: 2,
        verdict: Verdict::CohenMacaulay,
    });
    check(&Expected {
        gens: &["x^4", "x^3*y^2", "x*y^3", "y^5"],
        exps: &[[4, 0], [3, 2], [1, 3], [0, 5]],
        e: [17, 4, 0],
        r: 1,
        s_cm: 4,
        s_hm: 4,
        verdict: Verdict::CohenMacaulay,
    });
    check(&Expected {
        gens: &["x^3", "y^2"],
        exps: &[[3, 0], [0, 2]],
        e: [6, 0, 0],
        r: 0,
        s_cm: 0,
        s_hm: 0,
        verdict: Verdict::CohenMacaulay,
    });
}

#[test]
fn cusp_module() {
    let ring = Ring::new(&["x", "y"], Field::Prime(32003)).unwrap();
    let k = Ideal::parse(&ring, &["y^2 - x^3"]).unwrap();
    let f = HilbertFiltration::adic(Ideal::maximal(&ring), CyclicModule::new(k, true).unwrap()).unwrap();
    let e = hilbert_coefficients(&f, DEFAULT_N_CAP).unwrap();
    assert_eq!(e.e, vec![2, 1]);
    let rd = find_reduction(&f, 7, default_n_bound(&f), DEFAULT_ATTEMPTS).unwrap();
    let cert = certify_depth(&f, &rd, &e).unwrap();
    assert_eq!(cert.verdict, Verdict::CohenMacaulay);
    assert_eq!(rd.r, 1);
}
