//! Hilbert functions, their polynomials in the binomial basis, and the
//! series `n -> λ(I_n M / J^n M)`.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::Error;
use crate::filtration::{module_length, HilbertFiltration};
use crate::groebner::{Ideal, PowerCache};
use crate::locallen::{away_from_origin, local_colength_split};

pub const DEFAULT_N_CAP: usize = 40;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HilbertCoefficients {
    pub d: usize,
    pub e: Vec<i64>,
    /// Least sampled `n` from which the polynomial matches.
    pub postulation: usize,
    /// `H(0), ..., H(n_max)`.
    pub samples: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EJSeries {
    /// `λ(I_n M / J^n M)` for `n = 1, 2, ...`.
    pub values: Vec<i64>,
    /// Coefficients of the degree `d - 1` polynomial; empty for `d = 0`.
    pub coefficients: Vec<i64>,
}

impl EJSeries {
    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| *v == 0)
    }
}

/// Generalized binomial `C(m, k)` for any integer `m`.
fn binom(m: i128, k: usize) -> i128 {
    let mut acc: i128 = 1;
    for i in 0..k as i128 {
        acc = acc * (m - i) / (i + 1);
    }
    acc
}

/// `Σ (-1)^i e_i C(n + deg - 1 - i, deg - i)`.
pub fn binomial_basis_value(e: &[i64], n: i64) -> i64 {
    let deg = e.len() as i128 - 1;
    e.iter()
        .enumerate()
        .map(|(i, ei)| {
            let sign = if i % 2 == 0 { 1 } else { -1 };
            sign * *ei as i128 * binom(n as i128 + deg - 1 - i as i128, (deg - i as i128) as usize)
        })
        .sum::<i128>() as i64
}

/// `k`-th forward difference of `v` ending at the last entry.
fn top_difference(v: &[i128], k: usize) -> i128 {
    let mut w: Vec<i128> = v[v.len() - k - 1..].to_vec();
    for _ in 0..k {
        w = w.windows(2).map(|p| p[1] - p[0]).collect();
    }
    w[0]
}

/// Coefficients of the degree-`deg` polynomial through `values` at
/// consecutive `n = n0, n0 + 1, ...`, peeled off one binomial at a time.
/// `None` if the window is not polynomial of that degree.
fn peel(values: &[i64], n0: i64, deg: usize) -> Option<Vec<i64>> {
    if values.len() < deg + 1 {
        return None;
    }
    let mut rest: Vec<i128> = values.iter().map(|v| *v as i128).collect();
    let mut e = Vec::with_capacity(deg + 1);
    for i in 0..=deg {
        let k = deg - i;
        let sign: i128 = if i % 2 == 0 { 1 } else { -1 };
        let ei = sign * top_difference(&rest, k);
        for (j, r) in rest.iter_mut().enumerate() {
            *r -= sign * ei * binom(n0 as i128 + j as i128 + deg as i128 - 1 - i as i128, k);
        }
        e.push(i64::try_from(ei).ok()?);
    }
    rest.iter().all(|r| *r == 0).then_some(e)
}

struct Fit {
    e: Vec<i64>,
    postulation: usize,
    samples: Vec<i64>,
}

/// Samples `h(n)` for `n = first..` with growing range until the top
/// `deg + 2` values of the `deg`-th difference agree, fits, and confirms
/// the fit on two further points.
fn sample_and_fit<H>(first: usize, deg: usize, n_cap: usize, h: H) -> Result<Fit, Error>
where
    H: Fn(usize) -> Result<i64, Error> + Sync,
{
    let window = 2 * deg + 2;
    let mut n_max = (first + 2 * deg + 4).min(n_cap.saturating_sub(2)).max(first + window - 1);
    let mut samples: Vec<i64> = Vec::new();
    loop {
        let have = first + samples.len();
        let fresh: Vec<i64> = (have..=n_max + 2)
            .into_par_iter()
            .map(&h)
            .collect::<Result<_, _>>()?;
        samples.extend(fresh);
        let body = &samples[..=n_max - first];
        let top = &body[body.len() - window..];
        let n_top = (n_max + 1 - window) as i64;
        if let Some(e) = peel(top, n_top, deg) {
            let extra_ok = (1..=2).all(|k| {
                binomial_basis_value(&e, (n_max + k) as i64) == samples[n_max + k - first]
            });
            if extra_ok {
                let mut postulation = n_max + 2;
                while postulation > first
                    && binomial_basis_value(&e, postulation as i64 - 1) == samples[postulation - 1 - first]
                {
                    postulation -= 1;
                }
                return Ok(Fit {
                    e,
                    postulation,
                    samples,
                });
            }
        }
        if n_max + 2 >= n_cap {
            return Err(Error::NoPolynomialFit { n_cap, samples });
        }
        n_max = (2 * n_max).min(n_cap - 2);
    }
}

/// `e_0, ..., e_d` of `F` on `M`, sampling `H(n) = λ(M / I_n M)` up to `n_cap`.
pub fn hilbert_coefficients(f: &HilbertFiltration, n_cap: usize) -> Result<HilbertCoefficients, Error> {
    let d = f.dim();
    let fit = sample_and_fit(0, d, n_cap, |n| module_length(f, n).map(|v| v as i64))?;
    if fit.e[0] < 1 {
        return Err(Error::Inconsistent(format!(
            "multiplicity {} is not positive",
            fit.e[0]
        )));
    }
    Ok(HilbertCoefficients {
        d,
        e: fit.e,
        postulation: fit.postulation,
        samples: fit.samples,
    })
}

/// The series `λ(I_n M / J^n M)` and its degree `d - 1` coefficients.
///
/// For `M = R` and zero-dimensional `J = Q ∩ Q'` with `Q` at the origin,
/// `J^n : m^∞ = (J : m^∞)^n`, so the part of `R/J^n` away from the origin
/// comes from powers of a single saturation.
pub fn ej_series(f: &HilbertFiltration, j: &Ideal, n_cap: usize) -> Result<EJSeries, Error> {
    let d = f.dim();
    if d == 0 {
        return Err(Error::Precondition("the module has dimension 0".into()));
    }
    let powers = PowerCache::new(j.clone());
    let away = if f.module().is_free() && j.is_zero_dimensional() {
        let a = away_from_origin(j)?;
        (!a.is_unit()).then(|| PowerCache::new(a))
    } else {
        None
    };
    let term = |n: usize| -> Result<i64, Error> {
        let jn = f.module().extend(&powers.power(n));
        let v = match &away {
            Some(a) => {
                let local = local_colength_split(&jn, &a.power(n))? as i64;
                local - module_length(f, n)? as i64
            }
            None => f.length(&f.module_ideal(n), &jn)? as i64,
        };
        if v < 0 {
            return Err(Error::Inconsistent(format!(
                "negative length {v} for I_n M / J^n M at n = {n}"
            )));
        }
        Ok(v)
    };
    let fit = sample_and_fit(1, d - 1, n_cap, term)?;
    Ok(EJSeries {
        values: fit.samples,
        coefficients: fit.e,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShiftReport {
    /// `(i, e_i(F), e_{i-1}(E_J))` for `1 <= i <= d`.
    pub shifted: Vec<(usize, i64, i64)>,
    pub shift_holds: bool,
    pub e1: i64,
    pub e0_ej: i64,
    pub e1_holds: bool,
    pub ej_nonzero: bool,
    pub positivity_holds: bool,
}

impl ShiftReport {
    pub fn passed(&self) -> bool {
        self.shift_holds && self.e1_holds && self.positivity_holds
    }
}

/// Compares the coefficients of `F` with those of the `E_J` series.
pub fn check_shift(e: &HilbertCoefficients, ej: &EJSeries) -> ShiftReport {
    let shifted: Vec<(usize, i64, i64)> = (1..=e.d)
        .map(|i| (i, e.e[i], ej.coefficients.get(i - 1).copied().unwrap_or(0)))
        .collect();
    let shift_holds = shifted.iter().all(|(_, a, b)| a == b);
    let e1 = e.e.get(1).copied().unwrap_or(0);
    let e0_ej = ej.coefficients.first().copied().unwrap_or(0);
    let ej_nonzero = !ej.is_zero();
    ShiftReport {
        shifted,
        shift_holds,
        e1,
        e0_ej,
        e1_holds: e1 == e0_ej,
        ej_nonzero,
        positivity_holds: !ej_nonzero || e1 > 0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::filtration::CyclicModule;
    use crate::polyring::{Field, Ring};

    #[test]
    fn peels_known_polynomials() {
        let v: Vec<i64> = (3..9).map(|n| n * (2 * n + 1)).collect();
        assert_eq!(peel(&v, 3, 2), Some(vec![4, 1, 0]));
        let v: Vec<i64> = (1..5).map(|n| 2 * n - 1).collect();
        assert_eq!(peel(&v, 1, 1), Some(vec![2, 1]));
        assert_eq!(peel(&[1, 3, 6, 10], 1, 1), None);
        assert_eq!(peel(&[5, 5, 5], 1, 0), Some(vec![5]));
        assert_eq!(binomial_basis_value(&[4, 1, 0], 3), 21);
    }

    #[test]
    fn fixture_a() {
        let r = Ring::new(&["x", "y"], Field::Prime(32003)).unwrap();
        let i = Ideal::parse(&r, &["x^2", "x*y", "y^2"]).unwrap();
        let f = HilbertFiltration::adic(i, CyclicModule::free(&r)).unwrap();
        let h = hilbert_coefficients(&f, DEFAULT_N_CAP).unwrap();
        assert_eq!(h.e, vec![4, 1, 0]);
        for (n, v) in h.samples.iter().enumerate() {
            assert_eq!(*v, (n * (2 * n + 1)) as i64);
        }
        let j = Ideal::parse(&r, &["x^2", "y^2"]).unwrap();
        let s = ej_series(&f, &j, DEFAULT_N_CAP).unwrap();
        assert_eq!(&s.values[..3], &[1, 2, 3]);
        assert_eq!(s.coefficients, vec![1, 0]);
        assert!(check_shift(&h, &s).passed());
    }

    #[test]
    fn fixture_b() {
        let r = Ring::new(&["x", "y"], Field::Prime(32003)).unwrap();
        let k = Ideal::parse(&r, &["y^2 - x^5"]).unwrap();
        let f = HilbertFiltration::adic(Ideal::maximal(&r), CyclicModule::new(k, true).unwrap()).unwrap();
        let h = hilbert_coefficients(&f, DEFAULT_N_CAP).unwrap();
        assert_eq!(h.e, vec![2, 1]);
        assert_eq!(&h.samples[1..6], &[1, 3, 5, 7, 9]);
        let j = Ideal::parse(&r, &["x"]).unwrap();
        let s = ej_series(&f, &j, DEFAULT_N_CAP).unwrap();
        assert_eq!(&s.values[..3], &[1, 1, 1]);
        assert_eq!(s.coefficients, vec![1]);
    }

    #[test]
    fn trivial_series() {
        let r = Ring::new(&["x", "y"], Field::Prime(32003)).unwrap();
        let i = Ideal::parse(&r, &["x^2", "y^3"]).unwrap();
        let f = HilbertFiltration::adic(i.clone(), CyclicModule::free(&r)).unwrap();
        let h = hilbert_coefficients(&f, DEFAULT_N_CAP).unwrap();
        assert_eq!(h.e, vec![6, 0, 0]);
        let s = ej_series(&f, &i, DEFAULT_N_CAP).unwrap();
        assert!(s.is_zero());
        let rep = check_shift(&h, &s);
        assert!(rep.passed() && rep.e1 == 0);
    }
}
