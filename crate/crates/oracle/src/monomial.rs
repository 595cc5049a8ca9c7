//! Monomial ideals through componentwise arithmetic on exponent vectors.

use std::collections::BTreeSet;

pub type Exps = Vec<u32>;

/// A monomial ideal stored by its minimal generators (sorted, deduplicated).
/// An empty generator list is the zero ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialIdeal {
    nvars: usize,
    gens: Vec<Exps>,
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

impl MonomialIdeal {
    pub fn new(nvars: usize, gens: impl IntoIterator<Item = Exps>) -> Self {
        let all: BTreeSet<Exps> = gens.into_iter().collect();
        let all: Vec<Exps> = all.into_iter().collect();
        let gens = all
            .iter()
            .filter(|g| !all.iter().any(|h| h != *g && divides(h, g)))
            .cloned()
            .collect();
        MonomialIdeal { nvars, gens }
    }

    pub fn unit(nvars: usize) -> Self {
        MonomialIdeal::new(nvars, [vec![0; nvars]])
    }

    /// All monomials of degree `d`.
    pub fn maximal_power(nvars: usize, d: u32) -> Self {
        fn rec(n: usize, d: u32, pre: &mut Exps, out: &mut Vec<Exps>) {
            if pre.len() + 1 == n {
                pre.push(d);
                out.push(pre.clone());
                pre.pop();
                return;
            }
            for e in 0..=d {
                pre.push(e);
                rec(n, d - e, pre, out);
                pre.pop();
            }
        }
        let mut out = Vec::new();
        rec(nvars, d, &mut Vec::new(), &mut out);
        MonomialIdeal::new(nvars, out)
    }

    pub fn gens(&self) -> &[Exps] {
        &self.gens
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn contains(&self, m: &[u32]) -> bool {
        self.gens.iter().any(|g| divides(g, m))
    }

    pub fn sum(&self, other: &Self) -> Self {
        MonomialIdeal::new(self.nvars, self.gens.iter().chain(&other.gens).cloned())
    }

    pub fn product(&self, other: &Self) -> Self {
        let mut out = Vec::new();
        for a in &self.gens {
            for b in &other.gens {
                out.push(a.iter().zip(b).map(|(x, y)| x + y).collect());
            }
        }
        MonomialIdeal::new(self.nvars, out)
    }

    pub fn power(&self, n: u32) -> Self {
        let mut acc = MonomialIdeal::unit(self.nvars);
        for _ in 0..n {
            acc = acc.product(self);
        }
        acc
    }

    /// Intersection: pairwise componentwise maxima.
    pub fn intersect(&self, other: &Self) -> Self {
        let mut out = Vec::new();
        for a in &self.gens {
            for b in &other.gens {
                out.push(a.iter().zip(b).map(|(x, y)| *x.max(y)).collect());
            }
        }
        MonomialIdeal::new(self.nvars, out)
    }

    /// Colon by a monomial: componentwise truncated differences.
    pub fn colon(&self, m: &[u32]) -> Self {
        MonomialIdeal::new(
            self.nvars,
            self.gens
                .iter()
                .map(|g| g.iter().zip(m).map(|(a, b)| a.saturating_sub(*b)).collect()),
        )
    }

    /// Pure-power exponents, one per variable, when the ideal is m-primary.
    fn box_bounds(&self) -> Option<Vec<u32>> {
        (0..self.nvars)
            .map(|i| {
                self.gens
                    .iter()
                    .filter(|g| g.iter().enumerate().all(|(j, e)| j == i || *e == 0))
                    .map(|g| g[i])
                    .min()
            })
            .collect()
    }

    /// Number of monomials outside the ideal, by enumeration of the box
    /// spanned by the pure powers. `None` when the quotient is infinite.
    pub fn colength(&self) -> Option<u64> {
        let bounds = self.box_bounds()?;
        let mut count = 0u64;
        let mut cur = vec![0u32; self.nvars];
        loop {
            if !self.contains(&cur) {
                count += 1;
            }
            let mut i = 0;
            loop {
                if i == self.nvars {
                    return Some(count);
                }
                cur[i] += 1;
                if cur[i] < bounds[i] {
                    break;
                }
                cur[i] = 0;
                i += 1;
            }
        }
    }

    /// Largest set of variables no generator is supported in.
    pub fn dimension(&self) -> usize {
        (0u32..(1 << self.nvars))
            .filter(|s| {
                self.gens
                    .iter()
                    .all(|g| g.iter().enumerate().any(|(i, e)| *e > 0 && s & (1 << i) == 0))
            })
            .map(|s| s.count_ones() as usize)
            .max()
            .unwrap_or(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn colengths() {
        let m4 = MonomialIdeal::maximal_power(2, 4);
        assert_eq!(m4.colength(), Some(10));
        let b = MonomialIdeal::new(2, [vec![2, 0], vec![0, 3]]);
        assert_eq!(b.colength(), Some(6));
        assert_eq!(MonomialIdeal::new(2, [vec![1, 0]]).colength(), None);
    }

    #[test]
    fn operations() {
        let i = MonomialIdeal::new(2, [vec![2, 0], vec![1, 1], vec![0, 2]]);
        assert_eq!(i.power(2), MonomialIdeal::maximal_power(2, 4));
        let a = MonomialIdeal::new(2, [vec![2, 0], vec![1, 1]]);
        let y = MonomialIdeal::new(2, [vec![0, 1]]);
        assert_eq!(a.intersect(&y), MonomialIdeal::new(2, [vec![1, 1]]));
        assert_eq!(a.colon(&[1, 0]), MonomialIdeal::new(2, [vec![1, 0], vec![0, 1]]));
        assert_eq!(MonomialIdeal::new(2, [vec![0, 2]]).dimension(), 1);
        assert_eq!(b_dim(), 0);
    }

    fn b_dim() -> usize {
        MonomialIdeal::new(2, [vec![1, 0], vec![0, 1]]).dimension()
    }
}
