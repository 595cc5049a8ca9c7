use std::cmp::Ordering;

use smallvec::SmallVec;

/// Exponent vector of a monomial, with its total degree cached.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: SmallVec<[u32; 4]>,
    degree: u32,
}

impl Monomial {
    pub fn new(exps: impl IntoIterator<Item = u32>) -> Self {
        let exps: SmallVec<[u32; 4]> = exps.into_iter().collect();
        let degree = exps.iter().sum();
        Monomial { exps, degree }
    }

    pub fn one(nvars: usize) -> Self {
        Monomial {
            exps: SmallVec::from_elem(0, nvars),
            degree: 0,
        }
    }

    pub fn var(nvars: usize, i: usize, e: u32) -> Self {
        let mut m = Monomial::one(nvars);
        m.exps[i] = e;
        m.degree = e;
        m
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.degree <= other.degree && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self` when `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        Some(Monomial {
            exps: other.exps.iter().zip(&self.exps).map(|(b, a)| b - a).collect(),
            degree: other.degree - self.degree,
        })
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
            degree: self.degree + other.degree,
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial::new(self.exps.iter().zip(&other.exps).map(|(a, b)| *a.max(b)))
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial::new(self.exps.iter().zip(&other.exps).map(|(a, b)| *a.min(b)))
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// The variable index if this is a pure power `x_i^e` with `e >= 1`.
    pub fn pure_power_of(&self) -> Option<usize> {
        let mut found = None;
        for (i, e) in self.exps.iter().enumerate() {
            if *e > 0 {
                if found.is_some() {
                    return None;
                }
                found = Some(i);
            }
        }
        found
    }

    /// Same exponents with `k` zero exponents prepended.
    pub(crate) fn prepend_zeros(&self, k: usize) -> Monomial {
        let mut exps: SmallVec<[u32; 4]> = SmallVec::from_elem(0, k);
        exps.extend_from_slice(&self.exps);
        Monomial {
            exps,
            degree: self.degree,
        }
    }

    /// Drops the first `k` exponents, which must be zero.
    pub(crate) fn drop_leading(&self, k: usize) -> Monomial {
        debug_assert!(self.exps[..k].iter().all(|e| *e == 0));
        Monomial {
            exps: self.exps[k..].iter().copied().collect(),
            degree: self.degree,
        }
    }
}

/// Monomial orders. Variables are ranked in declaration order (`x_1 > x_2 > ...`).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    /// Graded reverse lexicographic.
    #[default]
    Grevlex,
    Lex,
    /// Block order: grevlex on the first `k` variables, ties broken by grevlex
    /// on the rest. Eliminates the first block.
    Elimination(usize),
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Grevlex => grevlex(&a.exps, a.degree, &b.exps, b.degree),
            MonomialOrder::Lex => a.exps.cmp(&b.exps),
            MonomialOrder::Elimination(k) => {
                let k = *k;
                let (a1, a2) = a.exps.split_at(k);
                let (b1, b2) = b.exps.split_at(k);
                let da: u32 = a1.iter().sum();
                let db: u32 = b1.iter().sum();
                grevlex(a1, da, b1, db)
                    .then_with(|| grevlex(a2, a.degree - da, b2, b.degree - db))
            }
        }
    }

    /// Whether the order refines total degree.
    pub fn is_graded(&self) -> bool {
        matches!(self, MonomialOrder::Grevlex)
    }
}

fn grevlex(a: &[u32], da: u32, b: &[u32], db: u32) -> Ordering {
    da.cmp(&db).then_with(|| {
        for (x, y) in a.iter().rev().zip(b.iter().rev()) {
            if x != y {
                // smaller exponent in the last differing variable wins
                return y.cmp(x);
            }
        }
        Ordering::Equal
    })
}
