//! Buchberger's algorithm with the normal selection strategy and the
//! Gebauer–Möller installation of the product and chain criteria.

use std::cmp::Ordering;
use std::sync::Arc;

use crate::polyring::{Field, Monomial, MonomialOrder, Polynomial, Ring, Scalar, Term};

/// `p - c * m * g` for monic `g` whose shifted leading term cancels `p[0]`.
fn sub_multiple(
    field: Field,
    order: MonomialOrder,
    p: &[Term],
    c: &Scalar,
    m: &Monomial,
    g: &[Term],
) -> Vec<Term> {
    // p[0] cancels against c*m*g[0]
    let a = &p[1..];
    let b = &g[1..];
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    let mut bj: Option<Monomial> = b.first().map(|t| t.0.mul(m));
    while i < a.len() {
        let Some(bm) = bj.as_ref() else { break };
        match order.cmp(&a[i].0, bm) {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Less => {
                let v = field.neg(&field.mul(c, &b[j].1));
                out.push((bm.clone(), v));
                j += 1;
                bj = b.get(j).map(|t| t.0.mul(m));
            }
            Ordering::Equal => {
                let v = field.sub(&a[i].1, &field.mul(c, &b[j].1));
                if !v.is_zero() {
                    out.push((a[i].0.clone(), v));
                }
                i += 1;
                j += 1;
                bj = b.get(j).map(|t| t.0.mul(m));
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    while j < b.len() {
        let v = field.neg(&field.mul(c, &b[j].1));
        out.push((b[j].0.mul(m), v));
        j += 1;
    }
    out
}

/// Full reduction of `f` by a list of monic polynomials sorted under `order`.
///
/// With `trunc = Some(t)` every term of total degree `>= t` is discarded,
/// which is reduction by the monomials of `m^t`. Only valid for graded orders.
pub(crate) fn reduce(
    f: &Polynomial,
    basis: &[&Polynomial],
    order: MonomialOrder,
    trunc: Option<u32>,
) -> Polynomial {
    let ring = f.ring().clone();
    let field = ring.field();
    let mut p: Vec<Term> = f.reorder(order).into_terms();
    if let Some(t) = trunc {
        p.retain(|(m, _)| m.degree() < t);
    }
    let mut rem: Vec<Term> = Vec::new();
    let mut start = 0;
    while start < p.len() {
        let (lm, lc) = (&p[start].0, &p[start].1);
        let divisor = basis.iter().find_map(|g| {
            let glm = g.leading_monomial().expect("nonzero basis element");
            glm.quotient_of(lm).map(|q| (q, *g))
        });
        match divisor {
            Some((q, g)) => {
                let c = lc.clone();
                let mut next = sub_multiple(field, order, &p[start..], &c, &q, g.terms());
                if let Some(t) = trunc {
                    next.retain(|(m, _)| m.degree() < t);
                }
                p = next;
                start = 0;
            }
            None => {
                rem.push(p[start].clone());
                start += 1;
            }
        }
    }
    Polynomial::from_sorted(&ring, order, rem)
}

enum Partner {
    Poly(usize),
    /// The monomial `lcm` of `m^t`, implicit in truncated mode.
    Cutoff,
}

struct Pair {
    i: usize,
    partner: Partner,
    lcm: Monomial,
}

impl Pair {
    fn key(&self) -> (usize, usize) {
        match self.partner {
            Partner::Poly(j) => (j, self.i),
            Partner::Cutoff => (usize::MAX, self.i),
        }
    }
}

struct Engine {
    order: MonomialOrder,
    trunc: Option<u32>,
    polys: Vec<Polynomial>,
    active: Vec<bool>,
    pairs: Vec<Pair>,
}

impl Engine {
    fn lead(&self, i: usize) -> &Monomial {
        self.polys[i].leading_monomial().expect("nonzero")
    }

    fn active_basis(&self) -> Vec<&Polynomial> {
        self.polys
            .iter()
            .zip(&self.active)
            .filter(|(_, a)| **a)
            .map(|(p, _)| p)
            .collect()
    }

    fn install(&mut self, h: Polynomial) {
        let hi = self.polys.len();
        self.polys.push(h);
        self.active.push(true);
        let lh = self.lead(hi).clone();

        // candidate pairs with every active element
        let mut cands: Vec<(usize, Monomial, bool)> = (0..hi)
            .filter(|&g| self.active[g])
            .map(|g| {
                let lg = self.lead(g);
                (g, lh.lcm(lg), lh.is_coprime(lg))
            })
            .collect();
        // chain criterion among the new pairs: drop (h,g1) if some other
        // (h,g2) has an lcm properly dividing lcm(h,g1), or an equal lcm with
        // a smaller index; coprime pairs only serve to eliminate others
        let mut keep = vec![true; cands.len()];
        for a in 0..cands.len() {
            for b in 0..cands.len() {
                if a == b || !keep[b] {
                    continue;
                }
                let (la, lb) = (&cands[a].1, &cands[b].1);
                if lb.divides(la) && (lb != la || b < a) {
                    keep[a] = false;
                    break;
                }
            }
        }
        let fresh: Vec<Pair> = cands
            .drain(..)
            .zip(keep)
            .filter(|((_, _, coprime), k)| *k && !*coprime)
            .map(|((g, lcm, _), _)| Pair {
                i: hi,
                partner: Partner::Poly(g),
                lcm,
            })
            .collect();

        // chain criterion against the old pairs
        let polys = &self.polys;
        let lead = |i: usize| polys[i].leading_monomial().expect("nonzero");
        self.pairs.retain(|p| {
            let Partner::Poly(j) = p.partner else {
                return true;
            };
            if !lh.divides(&p.lcm) {
                return true;
            }
            let l1 = lh.lcm(lead(p.i));
            let l2 = lh.lcm(lead(j));
            l1 == p.lcm || l2 == p.lcm
        });
        self.pairs.extend(fresh);

        if let Some(t) = self.trunc {
            let dh = lh.degree();
            debug_assert!(dh < t);
            for u in monomials_of_degree(lh.nvars(), t - dh) {
                let lcm = u.mul(&lh);
                self.pairs.push(Pair {
                    i: hi,
                    partner: Partner::Cutoff,
                    lcm,
                });
            }
        }

        for g in 0..hi {
            if self.active[g] && lh.divides(self.lead(g)) {
                self.active[g] = false;
            }
        }
    }

    fn pop_pair(&mut self) -> Option<Pair> {
        if self.pairs.is_empty() {
            return None;
        }
        let order = self.order;
        let mut best = 0;
        for k in 1..self.pairs.len() {
            let (a, b) = (&self.pairs[k], &self.pairs[best]);
            let c = order
                .cmp(&a.lcm, &b.lcm)
                .then_with(|| a.key().cmp(&b.key()));
            if c == Ordering::Less {
                best = k;
            }
        }
        Some(self.pairs.swap_remove(best))
    }

    fn s_polynomial(&self, p: &Pair) -> Polynomial {
        let f = &self.polys[p.i];
        let one = f.ring().field().one();
        let uf = self.lead(p.i).quotient_of(&p.lcm).expect("lcm");
        match &p.partner {
            // both monic
            Partner::Poly(j) => {
                let ug = self.lead(*j).quotient_of(&p.lcm).expect("lcm");
                f.mul_term(&uf, &one).sub(&self.polys[*j].mul_term(&ug, &one))
            }
            // the leading term lands in m^t and is truncated away
            Partner::Cutoff => f.mul_term(&uf, &one),
        }
    }
}

/// Reduced Gröbner basis of the ideal generated by `gens`, monic and sorted
/// by increasing leading monomial. The zero ideal yields an empty list.
pub(crate) fn reduced_groebner_basis(
    ring: &Arc<Ring>,
    gens: &[Polynomial],
    order: MonomialOrder,
    trunc: Option<u32>,
) -> Vec<Polynomial> {
    debug_assert!(trunc.is_none() || order.is_graded());
    let mut eng = Engine {
        order,
        trunc,
        polys: Vec::new(),
        active: Vec::new(),
        pairs: Vec::new(),
    };

    let mut input: Vec<Polynomial> = gens
        .iter()
        .map(|g| g.reorder(order))
        .filter(|g| !g.is_zero())
        .collect();
    if let Some(t) = trunc {
        input = input
            .into_iter()
            .map(|g| g.truncate_degree(t))
            .filter(|g| !g.is_zero())
            .collect();
        if t == 0 {
            return vec![Polynomial::one(ring).reorder(order)];
        }
    }
    // smaller leading terms first keeps early reductions cheap
    input.sort_by(|a, b| {
        order.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap())
    });
    for f in input {
        if f.is_unit() {
            return vec![Polynomial::one(ring).reorder(order)];
        }
        let h = reduce(&f, &eng.active_basis(), order, eng.trunc);
        if h.is_zero() {
            continue;
        }
        if h.is_unit() {
            return vec![Polynomial::one(ring).reorder(order)];
        }
        eng.install(h.monic());
    }

    while let Some(pair) = eng.pop_pair() {
        let s = eng.s_polynomial(&pair);
        let h = reduce(&s, &eng.active_basis(), order, eng.trunc);
        if h.is_zero() {
            continue;
        }
        if h.is_unit() {
            return vec![Polynomial::one(ring).reorder(order)];
        }
        eng.install(h.monic());
    }

    let mut basis: Vec<Polynomial> = eng.active_basis().into_iter().cloned().collect();
    if let Some(t) = trunc {
        let leads: Vec<Monomial> = basis
            .iter()
            .map(|g| g.leading_monomial().expect("nonzero").clone())
            .collect();
        for m in monomials_of_degree(ring.nvars(), t) {
            if !leads.iter().any(|l| l.divides(&m)) {
                basis.push(Polynomial::monomial(ring, m).reorder(order));
            }
        }
    }
    interreduce(basis, order, trunc)
}

/// Turns a minimal Gröbner basis into the reduced one.
fn interreduce(mut basis: Vec<Polynomial>, order: MonomialOrder, trunc: Option<u32>) -> Vec<Polynomial> {
    basis.sort_by(|a, b| order.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
    let mut out: Vec<Polynomial> = Vec::with_capacity(basis.len());
    for k in 0..basis.len() {
        let g = &basis[k];
        let (lm, _) = g.leading_term().expect("nonzero");
        let others: Vec<&Polynomial> = basis
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != k)
            .map(|(_, p)| p)
            .collect();
        let tail = Polynomial::from_sorted(g.ring(), order, g.terms()[1..].to_vec());
        let tail = reduce(&tail, &others, order, trunc);
        let mut terms = Vec::with_capacity(tail.len() + 1);
        terms.push((lm.clone(), g.ring().field().one()));
        terms.extend(tail.into_terms());
        out.push(Polynomial::from_sorted(g.ring(), order, terms));
    }
    out
}

/// All monomials of total degree `d` in `n` variables.
pub(crate) fn monomials_of_degree(n: usize, d: u32) -> Vec<Monomial> {
    fn rec(n: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if prefix.len() + 1 == n {
            prefix.push(d);
            out.push(Monomial::new(prefix.iter().copied()));
            prefix.pop();
            return;
        }
        for e in (0..=d).rev() {
            prefix.push(e);
            rec(n, d - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, d, &mut Vec::with_capacity(n), &mut out);
    out
}
