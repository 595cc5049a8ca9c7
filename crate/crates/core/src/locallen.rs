//! Lengths at the maximal ideal `m = (x_1, ..., x_m)` of the origin.
//!
//! Globally `R/A` may have components away from the origin. For
//! zero-dimensional ideals these are split off by saturation. Otherwise a
//! length at `m` is read off from `R/(A + m^T)` for `T` large enough; the
//! truncation is certified once `m^(T-1) ⊆ B + m^T`, which by Nakayama's
//! lemma gives `m^(T-1) ⊆ B_m`.

use serde::Serialize;

use crate::error::Error;
use crate::groebner::{monomials_of_degree, Ideal};
use crate::polyring::{Monomial, MonomialOrder, Polynomial};

/// Truncation schedule for [`local_length`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LengthSchedule {
    pub t_max: u32,
}

impl Default for LengthSchedule {
    fn default() -> Self {
        LengthSchedule { t_max: 256 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct LocalLengthResult {
    pub length: u64,
    /// Truncation exponent of the accepted value; 0 when no truncation was needed.
    pub t_used: u32,
    /// The last two truncation exponents gave the same value.
    pub stabilized: bool,
    /// The value is proven: either by saturation or by a certified truncation.
    pub exact: bool,
}

/// Number of monomials outside the monomial ideal generated by `leads`,
/// or `None` if infinite.
pub(crate) fn count_standard(leads: &[Vec<u32>], nvars: usize) -> Option<u64> {
    if leads.iter().any(|g| g.iter().all(|e| *e == 0)) {
        return Some(0);
    }
    if nvars == 0 {
        return Some(1);
    }
    if nvars == 1 {
        return leads.iter().map(|g| g[0] as u64).min();
    }
    // split on the exponent of the first variable
    let mut cuts: Vec<u32> = leads.iter().map(|g| g[0]).collect();
    cuts.sort_unstable();
    cuts.dedup();
    let bound = leads
        .iter()
        .filter(|g| g[1..].iter().all(|e| *e == 0))
        .map(|g| g[0])
        .min()?;
    if cuts[0] > 0 {
        // below the smallest cut nothing restricts the other variables
        return None;
    }
    let mut total = 0u64;
    for (k, &lo) in cuts.iter().enumerate() {
        if lo >= bound {
            break;
        }
        let hi = cuts.get(k + 1).copied().unwrap_or(bound).min(bound);
        let slice: Vec<Vec<u32>> = leads
            .iter()
            .filter(|g| g[0] <= lo)
            .map(|g| g[1..].to_vec())
            .collect();
        total += count_standard(&slice, nvars - 1)? * (hi - lo) as u64;
    }
    Some(total)
}

fn standard_count(a: &Ideal) -> Option<u64> {
    let leads: Vec<Vec<u32>> = a
        .lead_monomials(MonomialOrder::Grevlex)
        .iter()
        .map(|m| m.exponents().to_vec())
        .collect();
    if leads.is_empty() {
        return None;
    }
    count_standard(&leads, a.ring().nvars())
}

/// `dim_k R/A`, the number of standard monomials.
pub fn colength(a: &Ideal) -> Result<u64, Error> {
    standard_count(a).ok_or_else(|| Error::NotZeroDimensional(a.to_string()))
}

fn is_homogeneous(a: &Ideal) -> bool {
    a.gens()
        .iter()
        .all(|g| g.is_zero() || g.total_degree() == g.low_degree())
}

/// `x^e` modulo `a`, by repeated squaring of normal forms.
fn power_normal_form(a: &Ideal, x: &Polynomial, e: u64) -> Polynomial {
    let order = MonomialOrder::Grevlex;
    let mut acc = a.normal_form(&Polynomial::one(a.ring()), order);
    let mut base = a.normal_form(x, order);
    let mut e = e;
    while e > 0 && !acc.is_zero() {
        if e & 1 == 1 {
            acc = a.normal_form(&acc.mul(&base), order);
        }
        e >>= 1;
        if e > 0 {
            base = a.normal_form(&base.mul(&base), order);
        }
    }
    acc
}

/// Whether `V(A) = {origin}`, i.e. `A` is m-primary in the polynomial ring
/// itself and not only after localizing.
pub fn is_m_primary(a: &Ideal) -> bool {
    if a.is_unit() {
        return false;
    }
    let Some(len) = standard_count(a) else {
        return false;
    };
    if is_homogeneous(a) {
        return true;
    }
    // each variable is nilpotent of index at most dim R/A
    (0..a.ring().nvars()).all(|i| power_normal_form(a, &Polynomial::var(a.ring(), i), len).is_zero())
}

/// Whether every monomial of degree `t - 1` lies in `b + m^t`.
fn certifies(b_trunc: &Ideal, t: u32) -> bool {
    if t == 0 {
        return true;
    }
    let ring = b_trunc.ring();
    monomials_of_degree(ring.nvars(), t - 1)
        .into_iter()
        .all(|m: Monomial| b_trunc.contains(&Polynomial::monomial(ring, m)))
}

/// Whether `A_m` is a proper m-primary ideal of the local ring at the origin.
pub fn is_locally_m_primary(a: &Ideal, schedule: LengthSchedule) -> bool {
    if a.gens().iter().any(|g| g.low_degree() == Some(0)) {
        return false;
    }
    if a.is_zero_dimensional() {
        return true;
    }
    let mut t = a.max_degree().max(1) + 1;
    loop {
        if certifies(&a.plus_maximal_power(t), t) {
            return true;
        }
        if t >= schedule.t_max {
            return false;
        }
        t = (t * 2).min(schedule.t_max);
    }
}

/// `λ(R_m / A_m)` for a globally zero-dimensional `A`. The part of `R/A`
/// supported away from the origin is `R/(A : m^∞)` with
/// `A : m^∞ = ∩_i (A : x_i^∞)`, and colengths of intersections follow from
/// `λ(R/(P ∩ Q)) = λ(R/P) + λ(R/Q) - λ(R/(P + Q))`.
fn origin_part(a: &Ideal) -> Result<u64, Error> {
    let total = colength(a)?;
    if total == 0 || is_homogeneous(a) {
        return Ok(total);
    }
    let ring = a.ring();
    let sats = (0..ring.nvars())
        .map(|i| a.saturate(&Polynomial::var(ring, i)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(total - intersection_colength(&sats)?)
}

/// `A : m^∞`, the intersection of the primary components of `A` away from
/// the origin (the unit ideal when there are none).
pub fn away_from_origin(a: &Ideal) -> Result<Ideal, Error> {
    let ring = a.ring();
    let mut away = Ideal::unit(ring);
    for i in 0..ring.nvars() {
        let sat = a.saturate(&Polynomial::var(ring, i))?;
        away = if away.is_unit() {
            sat
        } else if sat.is_unit() {
            away
        } else {
            away.intersect(&sat)?
        };
    }
    Ok(away)
}

/// `λ(R_m / B_m)` for a zero-dimensional `B` whose saturation `B : m^∞`
/// is already known.
pub fn local_colength_split(b: &Ideal, away: &Ideal) -> Result<u64, Error> {
    let total = colength(b)?;
    let rest = colength(away)?;
    total.checked_sub(rest).ok_or_else(|| {
        Error::Precondition("the saturation is larger than the ideal's quotient".into())
    })
}

/// `λ(R / ∩ P_i)` by inclusion-exclusion over the nonempty subsets.
fn intersection_colength(ps: &[Ideal]) -> Result<u64, Error> {
    let live: Vec<&Ideal> = ps.iter().filter(|p| !p.is_unit()).collect();
    let mut total: i64 = 0;
    for mask in 1u32..(1 << live.len()) {
        let mut sum: Option<Ideal> = None;
        for (k, p) in live.iter().enumerate() {
            if mask & (1 << k) != 0 {
                sum = Some(match sum {
                    None => (*p).clone(),
                    Some(s) => s.sum(p)?,
                });
            }
        }
        let c = colength(&sum.expect("nonempty subset"))? as i64;
        total += if mask.count_ones() % 2 == 1 { c } else { -c };
    }
    Ok(total as u64)
}

/// `λ((A/B)_m)` for `B ⊆ A`.
pub fn local_length(a: &Ideal, b: &Ideal, schedule: LengthSchedule) -> Result<LocalLengthResult, Error> {
    if !crate::polyring::same_ring(a.ring(), b.ring()) {
        return Err(Error::RingMismatch);
    }
    if b.is_zero_dimensional() {
        let cb = origin_part(b)?;
        let ca = origin_part(a)?;
        return finish(cb, ca, 0, false, true);
    }
    let maxdeg = a.max_degree().max(b.max_degree());
    let fallback_from = 2 * maxdeg + 2;
    let mut t = (maxdeg + 1).max(2);
    let mut values: Vec<i64> = Vec::new();
    loop {
        let bt = b.plus_maximal_power(t);
        let at = a.plus_maximal_power(t);
        let cb = colength(&bt)?;
        let ca = colength(&at)?;
        let v = cb as i64 - ca as i64;
        let stabilized = values.last() == Some(&v);
        values.push(v);
        if certifies(&bt, t) {
            return finish(cb, ca, t, stabilized, true);
        }
        if stabilized && t >= fallback_from * 2 {
            return finish(cb, ca, t, true, false);
        }
        if t >= schedule.t_max {
            return Err(Error::NotStabilized {
                t_max: schedule.t_max,
                values,
            });
        }
        t = (t * 2).min(schedule.t_max);
    }
}

fn finish(cb: u64, ca: u64, t: u32, stabilized: bool, exact: bool) -> Result<LocalLengthResult, Error> {
    if ca > cb {
        return Err(Error::Precondition(
            "second ideal is not contained in the first".into(),
        ));
    }
    Ok(LocalLengthResult {
        length: cb - ca,
        t_used: t,
        stabilized,
        exact,
    })
}

/// `λ(R_m / B_m)`.
pub fn local_colength(b: &Ideal, schedule: LengthSchedule) -> Result<LocalLengthResult, Error> {
    local_length(&Ideal::unit(b.ring()), b, schedule)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{Field, Ring};
    use std::sync::Arc;

    fn ring() -> Arc<crate::polyring::Ring> {
        Ring::new(&["x", "y"], Field::Prime(32003)).unwrap()
    }

    #[test]
    fn colength_examples() {
        let r = ring();
        assert_eq!(colength(&Ideal::parse(&r, &["x", "y"]).unwrap()).unwrap(), 1);
        assert_eq!(colength(&Ideal::parse(&r, &["x^2", "y^3"]).unwrap()).unwrap(), 6);
        assert_eq!(colength(&Ideal::maximal_power(&r, 4)).unwrap(), 10);
        assert!(matches!(
            colength(&Ideal::parse(&r, &["x"]).unwrap()),
            Err(Error::NotZeroDimensional(_))
        ));
        assert_eq!(colength(&Ideal::unit(&r)).unwrap(), 0);
    }

    #[test]
    fn standard_counts() {
        assert_eq!(count_standard(&[vec![2, 0], vec![1, 1], vec![0, 3]], 2), Some(4));
        assert_eq!(count_standard(&[vec![1, 1]], 2), None);
        assert_eq!(count_standard(&[vec![0, 2, 0], vec![3, 0, 0], vec![0, 0, 1]], 3), Some(6));
    }

    #[test]
    fn m_primary_examples() {
        let r = ring();
        assert!(is_m_primary(&Ideal::parse(&r, &["x^2", "y^3"]).unwrap()));
        assert!(!is_m_primary(&Ideal::parse(&r, &["x"]).unwrap()));
        assert!(is_m_primary(&Ideal::parse(&r, &["x", "y", "y^2 - x^5"]).unwrap()));
        // zero-dimensional, but with a root at (1, 0)
        assert!(!is_m_primary(&Ideal::parse(&r, &["x^2 - x", "y"]).unwrap()));
        let s = LengthSchedule { t_max: 32 };
        assert!(is_locally_m_primary(&Ideal::parse(&r, &["x^2 - x", "y"]).unwrap(), s));
        assert!(is_locally_m_primary(&Ideal::parse(&r, &["x*y - x", "y*y - y"]).unwrap(), s));
        assert!(!is_locally_m_primary(&Ideal::parse(&r, &["x*y"]).unwrap(), s));
        assert!(!is_locally_m_primary(&Ideal::parse(&r, &["x + 1", "y"]).unwrap(), s));
    }

    #[test]
    fn local_length_examples() {
        let r = ring();
        let s = LengthSchedule::default();
        let i = Ideal::parse(&r, &["x^2", "x*y", "y^2"]).unwrap();
        let j = Ideal::parse(&r, &["x^2", "y^2"]).unwrap();
        assert_eq!(local_length(&i, &j, s).unwrap().length, 1);
        assert_eq!(local_length(&i, &i, s).unwrap().length, 0);
        let ji = j.product(&i).unwrap();
        let m4 = Ideal::maximal_power(&r, 4);
        assert_eq!(local_length(&m4, &ji, s).unwrap().length, 0);
    }

    #[test]
    fn localizes_away_other_points() {
        let r = ring();
        let s = LengthSchedule::default();
        // (x^2 - x, y) = (x, y) ∩ (x - 1, y)
        let b = Ideal::parse(&r, &["x^2 - x", "y"]).unwrap();
        let res = local_colength(&b, s).unwrap();
        assert_eq!(res.length, 1);
        assert!(res.exact);
        // (x - y^2 - x^3, y^3) localizes to (x - y^2, y^3), colength 3
        let b = Ideal::parse(&r, &["x - y^2 - x^3", "y^3"]).unwrap();
        assert_eq!(local_colength(&b, s).unwrap().length, 3);
        let a = Ideal::parse(&r, &["x - y^2 - x^3", "y^2"]).unwrap();
        assert_eq!(local_length(&a, &b, s).unwrap().length, 1);
    }

    #[test]
    fn split_colength_of_powers() {
        let r = ring();
        let j = Ideal::parse(&r, &["x^3 + 2*y^2 + x*y", "3*x^3 + y^2"]).unwrap();
        let away = away_from_origin(&j).unwrap();
        let mut jn = Ideal::unit(&r);
        let mut an = Ideal::unit(&r);
        for _ in 0..3 {
            jn = jn.product(&j).unwrap();
            an = an.product(&away).unwrap();
            let direct = local_colength(&jn, LengthSchedule::default()).unwrap().length;
            assert_eq!(local_colength_split(&jn, &an).unwrap(), direct);
        }
    }

    #[test]
    fn non_primary_quotient_falls_back() {
        let r = ring();
        // (x)/(x^2, x*y) is one-dimensional, but B is not m-primary
        let a = Ideal::parse(&r, &["x"]).unwrap();
        let b = Ideal::parse(&r, &["x^2", "x*y"]).unwrap();
        let res = local_length(&a, &b, LengthSchedule::default()).unwrap();
        assert_eq!(res.length, 1);
        assert!(!res.exact && res.stabilized);
    }
}
