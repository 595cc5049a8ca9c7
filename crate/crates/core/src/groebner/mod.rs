//! Ideals with cached reduced Gröbner bases and the derived ideal operations.

mod buchberger;

use std::fmt;
use std::sync::{Arc, Mutex, RwLock};

use crate::error::Error;
use crate::polyring::{parse_poly, same_ring, Monomial, MonomialOrder, Polynomial, Ring};

pub(crate) use buchberger::monomials_of_degree;

/// An ideal of a polynomial ring given by generators.
///
/// Cheap to clone; clones share the basis cache. The generator list is never
/// empty, the zero ideal is stored as `[0]`.
#[derive(Clone)]
pub struct Ideal {
    inner: Arc<Inner>,
}

struct Inner {
    ring: Arc<Ring>,
    gens: Vec<Polynomial>,
    /// Set when the generators include every monomial of this degree.
    m_power: Option<u32>,
    bases: RwLock<Vec<(MonomialOrder, Arc<Vec<Polynomial>>)>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IdealOp {
    Sum,
    Product,
}

/// Applies `op` to two ideals of the same ring.
pub fn ideal_op(a: &Ideal, b: &Ideal, op: IdealOp) -> Result<Ideal, Error> {
    match op {
        IdealOp::Sum => a.sum(b),
        IdealOp::Product => a.product(b),
    }
}

impl Ideal {
    pub fn new(ring: &Arc<Ring>, gens: Vec<Polynomial>) -> Result<Ideal, Error> {
        if gens.iter().any(|g| !same_ring(g.ring(), ring)) {
            return Err(Error::RingMismatch);
        }
        Ok(Self::build(ring, gens, None))
    }

    fn build(ring: &Arc<Ring>, gens: Vec<Polynomial>, m_power: Option<u32>) -> Ideal {
        let mut uniq: Vec<Polynomial> = Vec::with_capacity(gens.len());
        for g in gens {
            if !g.is_zero() && !uniq.contains(&g) {
                uniq.push(g);
            }
        }
        if uniq.is_empty() {
            uniq.push(Polynomial::zero(ring));
        }
        Ideal {
            inner: Arc::new(Inner {
                ring: ring.clone(),
                gens: uniq,
                m_power,
                bases: RwLock::new(Vec::new()),
            }),
        }
    }

    /// Parses each string in the polynomial grammar.
    pub fn parse<S: AsRef<str>>(ring: &Arc<Ring>, gens: &[S]) -> Result<Ideal, Error> {
        let polys = gens
            .iter()
            .map(|s| parse_poly(s.as_ref(), ring))
            .collect::<Result<Vec<_>, _>>()?;
        Ideal::new(ring, polys)
    }

    pub fn zero(ring: &Arc<Ring>) -> Ideal {
        Self::build(ring, Vec::new(), None)
    }

    pub fn unit(ring: &Arc<Ring>) -> Ideal {
        Self::build(ring, vec![Polynomial::one(ring)], None)
    }

    /// The maximal ideal at the origin, `(x_1, ..., x_m)`.
    pub fn maximal(ring: &Arc<Ring>) -> Ideal {
        let gens = (0..ring.nvars()).map(|i| Polynomial::var(ring, i)).collect();
        Self::build(ring, gens, None)
    }

    /// `m^t`, generated by all monomials of degree `t`.
    pub fn maximal_power(ring: &Arc<Ring>, t: u32) -> Ideal {
        let gens = monomials_of_degree(ring.nvars(), t)
            .into_iter()
            .map(|m| Polynomial::monomial(ring, m))
            .collect();
        Self::build(ring, gens, Some(t))
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.inner.ring
    }

    pub fn gens(&self) -> &[Polynomial] {
        &self.inner.gens
    }

    pub fn is_zero(&self) -> bool {
        self.inner.gens.len() == 1 && self.inner.gens[0].is_zero()
    }

    /// True when every generator is a monomial (the zero ideal counts).
    pub fn is_monomial(&self) -> bool {
        self.inner.gens.iter().all(|g| g.len() <= 1)
    }

    /// Largest total degree among the generators.
    pub fn max_degree(&self) -> u32 {
        self.inner
            .gens
            .iter()
            .filter_map(|g| g.total_degree())
            .max()
            .unwrap_or(0)
    }

    fn check_ring(&self, other: &Ideal) -> Result<(), Error> {
        if same_ring(self.ring(), other.ring()) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    /// Reduced Gröbner basis under `order`, computed once and cached.
    /// Empty for the zero ideal.
    pub fn groebner_basis(&self, order: MonomialOrder) -> Arc<Vec<Polynomial>> {
        if let Some((_, b)) = self
            .inner
            .bases
            .read()
            .expect("basis cache poisoned")
            .iter()
            .find(|(o, _)| *o == order)
        {
            return b.clone();
        }
        let trunc = self.inner.m_power.filter(|_| order.is_graded());
        let basis = Arc::new(buchberger::reduced_groebner_basis(
            self.ring(),
            &self.inner.gens,
            order,
            trunc,
        ));
        let mut cache = self.inner.bases.write().expect("basis cache poisoned");
        if let Some((_, b)) = cache.iter().find(|(o, _)| *o == order) {
            return b.clone();
        }
        cache.push((order, basis.clone()));
        basis
    }

    /// Reduced grevlex basis.
    pub fn basis(&self) -> Arc<Vec<Polynomial>> {
        self.groebner_basis(MonomialOrder::Grevlex)
    }

    /// Leading monomials of the reduced basis under `order`.
    pub fn lead_monomials(&self, order: MonomialOrder) -> Vec<Monomial> {
        self.groebner_basis(order)
            .iter()
            .map(|g| g.leading_monomial().expect("nonzero").clone())
            .collect()
    }

    pub fn is_unit(&self) -> bool {
        let b = self.basis();
        b.len() == 1 && b[0].is_unit()
    }

    pub fn normal_form(&self, f: &Polynomial, order: MonomialOrder) -> Polynomial {
        let basis = self.groebner_basis(order);
        let refs: Vec<&Polynomial> = basis.iter().collect();
        buchberger::reduce(f, &refs, order, None)
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        f.is_zero() || self.normal_form(f, MonomialOrder::Grevlex).is_zero()
    }

    pub fn is_subset_of(&self, other: &Ideal) -> bool {
        self.gens().iter().all(|g| other.contains(g))
    }

    /// Same generated ideal (membership both ways).
    pub fn equals(&self, other: &Ideal) -> Result<bool, Error> {
        self.check_ring(other)?;
        Ok(self.is_subset_of(other) && other.is_subset_of(self))
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal, Error> {
        self.check_ring(other)?;
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.is_zero() {
            return Ok(other.clone());
        }
        let gens = self.gens().iter().chain(other.gens()).cloned().collect();
        let m_power = match (self.inner.m_power, other.inner.m_power) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        Ok(Self::build(self.ring(), gens, m_power))
    }

    /// `self + m^t`.
    pub fn plus_maximal_power(&self, t: u32) -> Ideal {
        self.sum(&Ideal::maximal_power(self.ring(), t))
            .expect("same ring")
    }

    /// Pairwise products of generators.
    pub fn product(&self, other: &Ideal) -> Result<Ideal, Error> {
        self.check_ring(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Ideal::zero(self.ring()));
        }
        let mut gens = Vec::with_capacity(self.gens().len() * other.gens().len());
        for a in self.gens() {
            for b in other.gens() {
                gens.push(a.mul(b));
            }
        }
        let out = Self::build(self.ring(), gens, None);
        if out.is_monomial() {
            Ok(out.minimalized())
        } else {
            Ok(out)
        }
    }

    /// Drops monomial generators divisible by other generators.
    fn minimalized(&self) -> Ideal {
        debug_assert!(self.is_monomial());
        let monos: Vec<&Monomial> = self
            .gens()
            .iter()
            .filter_map(|g| g.leading_monomial())
            .collect();
        let mut keep: Vec<Polynomial> = Vec::new();
        for (i, g) in self.gens().iter().enumerate() {
            let Some(m) = g.leading_monomial() else { continue };
            let redundant = monos
                .iter()
                .enumerate()
                .any(|(j, o)| j != i && o.divides(m) && (*o != m || j < i));
            if !redundant {
                keep.push(g.monic());
            }
        }
        Self::build(self.ring(), keep, self.inner.m_power)
    }

    /// The same ideal with its reduced grevlex basis as generators.
    pub fn compact(&self) -> Ideal {
        let basis = self.basis();
        let gens = if basis.is_empty() {
            vec![Polynomial::zero(self.ring())]
        } else {
            basis.to_vec()
        };
        let out = Self::build(self.ring(), gens, self.inner.m_power);
        out.inner
            .bases
            .write()
            .expect("basis cache poisoned")
            .push((MonomialOrder::Grevlex, basis));
        out
    }

    /// Intersection by elimination of an auxiliary variable from
    /// `t*A + (1-t)*B`.
    pub fn intersect(&self, other: &Ideal) -> Result<Ideal, Error> {
        self.check_ring(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Ideal::zero(self.ring()));
        }
        let ring = self.ring();
        let ext = ring.with_leading_vars(&["t"]);
        let ord = MonomialOrder::Elimination(1);
        let t = Polynomial::var(&ext, 0).reorder(ord);
        let one_minus_t = Polynomial::one(&ext).reorder(ord).sub(&t);
        let mut gens = Vec::new();
        for a in self.gens() {
            gens.push(t.mul(&a.lift_into(&ext, 1, ord)));
        }
        for b in other.gens() {
            gens.push(one_minus_t.mul(&b.lift_into(&ext, 1, ord)));
        }
        let basis = buchberger::reduced_groebner_basis(&ext, &gens, ord, None);
        let kept: Vec<Polynomial> = basis
            .iter()
            .filter(|g| !g.involves_first(1))
            .map(|g| g.drop_into(ring, 1, MonomialOrder::Grevlex))
            .collect();
        Ok(Self::build(ring, kept, None))
    }

    /// `(self : f^∞)`, eliminating `t` from `self + (1 - t f)`.
    pub fn saturate(&self, f: &Polynomial) -> Result<Ideal, Error> {
        if !same_ring(self.ring(), f.ring()) {
            return Err(Error::RingMismatch);
        }
        if f.is_zero() {
            return Err(Error::Precondition("saturation by the zero polynomial".into()));
        }
        let ring = self.ring();
        let ext = ring.with_leading_vars(&["t"]);
        let ord = MonomialOrder::Elimination(1);
        let t = Polynomial::var(&ext, 0).reorder(ord);
        let mut gens: Vec<Polynomial> = self.gens().iter().map(|g| g.lift_into(&ext, 1, ord)).collect();
        gens.push(Polynomial::one(&ext).reorder(ord).sub(&t.mul(&f.lift_into(&ext, 1, ord))));
        let basis = buchberger::reduced_groebner_basis(&ext, &gens, ord, None);
        let kept: Vec<Polynomial> = basis
            .iter()
            .filter(|g| !g.involves_first(1))
            .map(|g| g.drop_into(ring, 1, MonomialOrder::Grevlex))
            .collect();
        Ok(Self::build(ring, kept, None))
    }

    /// `(self : f) = { g : g f ∈ self }`, computed from `self ∩ (f)`.
    pub fn colon(&self, f: &Polynomial) -> Result<Ideal, Error> {
        if !same_ring(self.ring(), f.ring()) {
            return Err(Error::RingMismatch);
        }
        if f.is_zero() {
            return Err(Error::Precondition("colon by the zero polynomial".into()));
        }
        if f.is_unit() {
            return Ok(self.clone());
        }
        let principal = Ideal::new(self.ring(), vec![f.clone()])?;
        let meet = self.intersect(&principal)?;
        let gens = meet
            .gens()
            .iter()
            .map(|g| {
                exact_quotient(g, f).ok_or_else(|| {
                    Error::Inconsistent(format!("{g} in (f) but not divisible by {f}"))
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self::build(self.ring(), gens, None))
    }

    /// Dimension of `R / self`: the largest set of variables independent
    /// modulo the grevlex lead-term ideal.
    pub fn krull_dimension(&self) -> Result<usize, Error> {
        if self.is_unit() {
            return Err(Error::UnitIdeal);
        }
        let n = self.ring().nvars();
        let leads = self.lead_monomials(MonomialOrder::Grevlex);
        let supports: Vec<u64> = leads
            .iter()
            .map(|m| {
                m.exponents()
                    .iter()
                    .enumerate()
                    .filter(|(_, e)| **e > 0)
                    .fold(0u64, |acc, (i, _)| acc | (1 << i))
            })
            .collect();
        let best = (0u64..(1u64 << n))
            .filter(|s| supports.iter().all(|sup| sup & !s != 0))
            .map(|s| s.count_ones() as usize)
            .max()
            .unwrap_or(0);
        Ok(best)
    }

    /// Whether the grevlex lead-term ideal contains a pure power of every
    /// variable, i.e. `R / self` is a finite-dimensional vector space.
    pub fn is_zero_dimensional(&self) -> bool {
        let n = self.ring().nvars();
        let mut seen = vec![false; n];
        for m in self.lead_monomials(MonomialOrder::Grevlex) {
            if m.is_one() {
                return true;
            }
            if let Some(i) = m.pure_power_of() {
                seen[i] = true;
            }
        }
        seen.into_iter().all(|s| s)
    }
}

/// `g / f` when `f` divides `g` exactly.
pub(crate) fn exact_quotient(g: &Polynomial, f: &Polynomial) -> Option<Polynomial> {
    let order = MonomialOrder::Grevlex;
    let f = f.reorder(order);
    let field = f.ring().field();
    let (flm, flc) = f.leading_term().ok()?;
    let inv = field.inv(flc)?;
    let mut rest = g.reorder(order);
    let mut quot: Vec<(Monomial, crate::polyring::Scalar)> = Vec::new();
    while let Ok((lm, lc)) = rest.leading_term() {
        let q = flm.quotient_of(lm)?;
        let c = field.mul(lc, &inv);
        rest = rest.sub(&f.mul_term(&q, &c));
        quot.push((q, c));
    }
    Some(Polynomial::from_terms(g.ring(), order, quot))
}

/// `A == B` as ideals.
pub fn ideal_equal(a: &Ideal, b: &Ideal) -> Result<bool, Error> {
    a.equals(b)
}

/// Memoized powers of a fixed ideal. Entry `n` holds `I^n`.
pub struct PowerCache {
    base: Ideal,
    powers: Mutex<Vec<Ideal>>,
}

impl PowerCache {
    pub fn new(base: Ideal) -> Self {
        let unit = Ideal::unit(base.ring());
        PowerCache {
            powers: Mutex::new(vec![unit, base.clone()]),
            base,
        }
    }

    pub fn base(&self) -> &Ideal {
        &self.base
    }

    pub fn power(&self, n: usize) -> Ideal {
        let mut powers = self.powers.lock().expect("power cache poisoned");
        while powers.len() <= n {
            let prev = powers.last().expect("non-empty").clone();
            let next = prev.product(&self.base).expect("same ring");
            powers.push(next);
        }
        powers[n].clone()
    }
}

/// `I^n` through the shared power table of `I`.
pub fn ideal_power(ideal: &Ideal, n: usize, cache: &PowerCache) -> Result<Ideal, Error> {
    if !Arc::ptr_eq(&ideal.inner, &cache.base.inner) {
        return Err(Error::Precondition(
            "power cache belongs to a different ideal".into(),
        ));
    }
    Ok(cache.power(n))
}

/// Reduced grevlex (or other) basis of an ideal.
pub fn groebner_basis(ideal: &Ideal, order: MonomialOrder) -> Vec<Polynomial> {
    ideal.groebner_basis(order).to_vec()
}

pub fn normal_form(f: &Polynomial, ideal: &Ideal, order: MonomialOrder) -> Polynomial {
    ideal.normal_form(f, order)
}

pub fn intersect(a: &Ideal, b: &Ideal) -> Result<Ideal, Error> {
    a.intersect(b)
}

pub fn colon(a: &Ideal, f: &Polynomial) -> Result<Ideal, Error> {
    a.colon(f)
}

pub fn krull_dimension(a: &Ideal) -> Result<usize, Error> {
    a.krull_dimension()
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, g) in self.gens().iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal{self}")
    }
}

#[cfg(test)]
mod tests;
