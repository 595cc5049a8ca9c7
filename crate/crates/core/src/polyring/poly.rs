use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use super::field::{Field, Scalar};
use super::monomial::{Monomial, MonomialOrder};
use crate::error::Error;

/// Ring descriptor: variable names (ranked in declaration order) and field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ring {
    vars: Vec<String>,
    field: Field,
}

impl Ring {
    pub fn new<S: AsRef<str>>(vars: &[S], field: Field) -> Result<Arc<Ring>, Error> {
        if vars.is_empty() {
            return Err(Error::InvalidRing("a ring needs at least one variable".into()));
        }
        let vars: Vec<String> = vars.iter().map(|v| v.as_ref().to_string()).collect();
        for (i, v) in vars.iter().enumerate() {
            let mut chars = v.chars();
            let ok = chars.next().is_some_and(|c| c.is_ascii_alphabetic())
                && chars.all(|c| c.is_ascii_alphanumeric());
            if !ok {
                return Err(Error::InvalidRing(format!("bad variable name {v:?}")));
            }
            if vars[..i].contains(v) {
                return Err(Error::InvalidRing(format!("duplicate variable {v}")));
            }
        }
        Ok(Arc::new(Ring { vars, field }))
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// The same ring with extra variables placed before the existing ones.
    pub(crate) fn with_leading_vars(&self, names: &[&str]) -> Arc<Ring> {
        let mut vars: Vec<String> = Vec::with_capacity(names.len() + self.vars.len());
        for n in names {
            let mut name = n.to_string();
            while self.vars.contains(&name) || vars.contains(&name) {
                name.push('0');
            }
            vars.push(name);
        }
        vars.extend(self.vars.iter().cloned());
        Arc::new(Ring {
            vars,
            field: self.field,
        })
    }
}

pub(crate) fn same_ring(a: &Arc<Ring>, b: &Arc<Ring>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

pub type Term = (Monomial, Scalar);

/// Sparse polynomial with terms sorted in descending order under `order`.
///
/// Never stores zero coefficients. Immutable once built.
#[derive(Clone, Debug)]
pub struct Polynomial {
    ring: Arc<Ring>,
    order: MonomialOrder,
    terms: Vec<Term>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

/// Checked arithmetic. Fails when the operands live in different rings.
pub fn poly_arith(a: &Polynomial, b: &Polynomial, op: ArithOp) -> Result<Polynomial, Error> {
    if !same_ring(&a.ring, &b.ring) {
        return Err(Error::RingMismatch);
    }
    Ok(match op {
        ArithOp::Add => a.add(b),
        ArithOp::Sub => a.sub(b),
        ArithOp::Mul => a.mul(b),
    })
}

impl Polynomial {
    pub fn zero(ring: &Arc<Ring>) -> Self {
        Polynomial {
            ring: ring.clone(),
            order: MonomialOrder::default(),
            terms: Vec::new(),
        }
    }

    pub fn constant(ring: &Arc<Ring>, c: Scalar) -> Self {
        Self::from_terms(ring, MonomialOrder::default(), [(Monomial::one(ring.nvars()), c)])
    }

    pub fn one(ring: &Arc<Ring>) -> Self {
        Self::constant(ring, ring.field().one())
    }

    pub fn var(ring: &Arc<Ring>, i: usize) -> Self {
        Self::monomial(ring, Monomial::var(ring.nvars(), i, 1))
    }

    pub fn monomial(ring: &Arc<Ring>, m: Monomial) -> Self {
        Polynomial {
            ring: ring.clone(),
            order: MonomialOrder::default(),
            terms: vec![(m, ring.field().one())],
        }
    }

    /// Builds a polynomial from arbitrary terms, combining duplicates.
    pub fn from_terms(
        ring: &Arc<Ring>,
        order: MonomialOrder,
        terms: impl IntoIterator<Item = Term>,
    ) -> Self {
        let field = ring.field();
        let mut acc: HashMap<Monomial, Scalar> = HashMap::new();
        for (m, c) in terms {
            debug_assert_eq!(m.nvars(), ring.nvars());
            match acc.get_mut(&m) {
                Some(v) => *v = field.add(v, &c),
                None => {
                    acc.insert(m, c);
                }
            }
        }
        let mut terms: Vec<Term> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        Polynomial {
            ring: ring.clone(),
            order,
            terms,
        }
    }

    /// Wraps terms that are already sorted under `order` with no zeros.
    pub(crate) fn from_sorted(ring: &Arc<Ring>, order: MonomialOrder, terms: Vec<Term>) -> Self {
        debug_assert!(terms.windows(2).all(|w| order.cmp(&w[0].0, &w[1].0) == Ordering::Greater));
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        Polynomial {
            ring: ring.clone(),
            order,
            terms,
        }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<Term> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Nonzero constant.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// Leading term under the polynomial's own order.
    pub fn leading_term(&self) -> Result<(&Monomial, &Scalar), Error> {
        self.terms
            .first()
            .map(|(m, c)| (m, c))
            .ok_or(Error::ZeroPolynomial)
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|(m, _)| m)
    }

    pub fn leading_coefficient(&self) -> Option<&Scalar> {
        self.terms.first().map(|(_, c)| c)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    /// Lowest total degree of a term (the order of the polynomial at the origin).
    pub fn low_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).min()
    }

    /// Re-sorts the terms under another monomial order.
    pub fn reorder(&self, order: MonomialOrder) -> Polynomial {
        if order == self.order {
            return self.clone();
        }
        let mut terms = self.terms.clone();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        Polynomial {
            ring: self.ring.clone(),
            order,
            terms,
        }
    }

    fn field(&self) -> Field {
        self.ring.field()
    }

    pub fn neg(&self) -> Polynomial {
        let f = self.field();
        Polynomial {
            ring: self.ring.clone(),
            order: self.order,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), f.neg(c))).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring).reorder(self.order);
        }
        let f = self.field();
        Polynomial {
            ring: self.ring.clone(),
            order: self.order,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), f.mul(a, c))).collect(),
        }
    }

    /// Scales to leading coefficient one.
    pub fn monic(&self) -> Polynomial {
        match self.leading_coefficient() {
            Some(c) if !c.is_one() => {
                let inv = self.field().inv(c).expect("nonzero leading coefficient");
                self.scale(&inv)
            }
            _ => self.clone(),
        }
    }

    /// `c * m * self`.
    pub fn mul_term(&self, m: &Monomial, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring).reorder(self.order);
        }
        let f = self.field();
        Polynomial {
            ring: self.ring.clone(),
            order: self.order,
            terms: self
                .terms
                .iter()
                .map(|(u, a)| (u.mul(m), f.mul(a, c)))
                .collect(),
        }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.combine(other, true)
    }

    fn combine(&self, other: &Polynomial, subtract: bool) -> Polynomial {
        debug_assert!(same_ring(&self.ring, &other.ring));
        let other = if other.order == self.order {
            std::borrow::Cow::Borrowed(other)
        } else {
            std::borrow::Cow::Owned(other.reorder(self.order))
        };
        let f = self.field();
        let ord = self.order;
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match ord.cmp(&a[i].0, &b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if subtract { f.neg(&b[j].1) } else { b[j].1.clone() };
                    out.push((b[j].0.clone(), c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if subtract {
                        f.sub(&a[i].1, &b[j].1)
                    } else {
                        f.add(&a[i].1, &b[j].1)
                    };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        for t in &b[j..] {
            let c = if subtract { f.neg(&t.1) } else { t.1.clone() };
            out.push((t.0.clone(), c));
        }
        Polynomial {
            ring: self.ring.clone(),
            order: ord,
            terms: out,
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        debug_assert!(same_ring(&self.ring, &other.ring));
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero(&self.ring).reorder(self.order);
        }
        if other.len() == 1 {
            let (m, c) = &other.terms[0];
            return self.mul_term(m, c);
        }
        if self.len() == 1 {
            let (m, c) = &self.terms[0];
            return other.reorder(self.order).mul_term(m, c);
        }
        let f = self.field();
        let products = self.terms.iter().flat_map(|(m1, c1)| {
            other
                .terms
                .iter()
                .map(move |(m2, c2)| (m1.mul(m2), f.mul(c1, c2)))
        });
        Polynomial::from_terms(&self.ring, self.order, products)
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one(&self.ring).reorder(self.order);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Drops all terms of total degree `>= bound`.
    pub fn truncate_degree(&self, bound: u32) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            order: self.order,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() < bound)
                .cloned()
                .collect(),
        }
    }

    /// Moves the polynomial into `ring`, which must have `k` extra leading variables.
    pub(crate) fn lift_into(&self, ring: &Arc<Ring>, k: usize, order: MonomialOrder) -> Polynomial {
        Polynomial::from_terms(
            ring,
            order,
            self.terms.iter().map(|(m, c)| (m.prepend_zeros(k), c.clone())),
        )
    }

    /// Inverse of [`lift_into`]; every term must be free of the first `k` variables.
    pub(crate) fn drop_into(&self, ring: &Arc<Ring>, k: usize, order: MonomialOrder) -> Polynomial {
        Polynomial::from_terms(
            ring,
            order,
            self.terms.iter().map(|(m, c)| (m.drop_leading(k), c.clone())),
        )
    }

    pub(crate) fn involves_first(&self, k: usize) -> bool {
        self.terms
            .iter()
            .any(|(m, _)| m.exponents()[..k].iter().any(|e| *e > 0))
    }
}

impl PartialEq for Polynomial {
    /// Equality of the underlying polynomials; the storage order is ignored.
    fn eq(&self, other: &Self) -> bool {
        if !same_ring(&self.ring, &other.ring) || self.terms.len() != other.terms.len() {
            return false;
        }
        if self.order == other.order {
            self.terms == other.terms
        } else {
            self.terms == other.reorder(self.order).terms
        }
    }
}

impl Eq for Polynomial {}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let field = self.field();
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let (neg, mag) = c.signed_parts(field);
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let mut factors: Vec<String> = Vec::new();
            if mag != "1" || m.is_one() {
                factors.push(mag);
            }
            for (i, e) in m.exponents().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.ring.vars[i].clone()),
                    _ => factors.push(format!("{}^{}", self.ring.vars[i], e)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl std::ops::Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        Polynomial::add(self, rhs)
    }
}

impl std::ops::Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        Polynomial::sub(self, rhs)
    }
}

impl std::ops::Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        Polynomial::mul(self, rhs)
    }
}

impl std::ops::Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::neg(self)
    }
}
