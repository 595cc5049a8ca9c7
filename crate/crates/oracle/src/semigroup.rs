//! The semigroup ring `k[[t^a, t^b]] = k[[x, y]] / (y^a - x^b)` with
//! `x = t^a`, `y = t^b`, and its monomial ideals as sets of valuations.
//!
//! Every ideal used here is generated by monomials in `t`, so it is the span
//! of `t^s` over a semigroup ideal `E ⊆ S`, and lengths of quotients are
//! cardinalities of set differences.

use std::collections::BTreeSet;

/// Numerical semigroup generated by two coprime integers `a < b`.
#[derive(Clone, Debug)]
pub struct TwoGenerated {
    a: u32,
    b: u32,
}

fn gcd(mut a: u32, mut b: u32) -> u32 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl TwoGenerated {
    pub fn new(a: u32, b: u32) -> Option<Self> {
        (a >= 2 && a < b && gcd(a, b) == 1).then_some(TwoGenerated { a, b })
    }

    pub fn a(&self) -> u32 {
        self.a
    }

    pub fn b(&self) -> u32 {
        self.b
    }

    /// Conductor `(a-1)(b-1)`: every integer from here on is in the semigroup.
    pub fn conductor(&self) -> u32 {
        (self.a - 1) * (self.b - 1)
    }

    pub fn contains(&self, s: u32) -> bool {
        (0..=s / self.a).any(|i| (s - i * self.a) % self.b == 0)
    }

    pub fn gaps(&self) -> Vec<u32> {
        (0..self.conductor()).filter(|s| !self.contains(*s)).collect()
    }

    /// Valuations of the generators `x^i y^(n-i)` of `m^n`.
    pub fn maximal_power_valuations(&self, n: u32) -> Vec<u32> {
        (0..=n).map(|i| i * self.a + (n - i) * self.b).collect()
    }

    /// Semigroup ideal `V + S`, listed below `bound`.
    pub fn ideal(&self, gens: &[u32], bound: u32) -> BTreeSet<u32> {
        (0..bound)
            .filter(|s| gens.iter().any(|g| *s >= *g && self.contains(s - g)))
            .collect()
    }

    /// A bound past which every ideal generated in valuations `<= top` is full.
    fn bound(&self, top: u32) -> u32 {
        top + self.conductor() + 1
    }

    /// `λ(M / m^n M)`.
    pub fn hilbert(&self, n: u32) -> u64 {
        let gens = self.maximal_power_valuations(n);
        let bound = self.bound(*gens.iter().max().unwrap());
        let whole = self.ideal(&[0], bound);
        let e = self.ideal(&gens, bound);
        (whole.len() - e.len()) as u64
    }

    /// The d = 1 length tables for `I = m`, `J = (x) = (t^a)`, for `n = 1..=n_max`:
    /// `(alpha_n, beta_n, gamma_n)` with
    /// `alpha_n = λ(I^n M / J^n M)`,
    /// `beta_n = λ((I^n M ∩ J M) / J I^(n-1) M)`,
    /// `gamma_n = λ(I^n M / (I^n M ∩ J M))`.
    pub fn alpha_beta_gamma(&self, n_max: u32) -> Vec<(u64, u64, u64)> {
        let bound = self.bound(n_max * self.b + self.a);
        let j = self.ideal(&[self.a], bound);
        (1..=n_max)
            .map(|n| {
                let i_n = self.ideal(&self.maximal_power_valuations(n), bound);
                let j_n = self.ideal(&[n * self.a], bound);
                let prev: Vec<u32> = self
                    .maximal_power_valuations(n - 1)
                    .iter()
                    .map(|v| v + self.a)
                    .collect();
                let j_i_prev = self.ideal(&prev, bound);
                let meet: BTreeSet<u32> = i_n.intersection(&j).copied().collect();
                let alpha = i_n.difference(&j_n).count() as u64;
                let beta = meet.difference(&j_i_prev).count() as u64;
                let gamma = i_n.difference(&meet).count() as u64;
                (alpha, beta, gamma)
            })
            .collect()
    }

    /// `λ(I^n M / J I^(n-1) M)` for `n = 1..=n_max`.
    pub fn hm_terms(&self, n_max: u32) -> Vec<u64> {
        self.alpha_beta_gamma(n_max)
            .iter()
            .map(|(_, b, g)| b + g)
            .collect()
    }

    /// `λ((I^n M + J M) / J M)` for `n = 1..=n_max`.
    pub fn cm_terms(&self, n_max: u32) -> Vec<u64> {
        self.alpha_beta_gamma(n_max).iter().map(|(_, _, g)| *g).collect()
    }

    /// Least `n` with `J I^n M = I^(n+1) M`.
    pub fn reduction_number(&self) -> u32 {
        let mut n = 0;
        loop {
            let bound = self.bound((n + 1) * self.b + self.a);
            let next = self.ideal(&self.maximal_power_valuations(n + 1), bound);
            let shifted: Vec<u32> = self
                .maximal_power_valuations(n)
                .iter()
                .map(|v| v + self.a)
                .collect();
            if self.ideal(&shifted, bound) == next {
                return n;
            }
            n += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_five() {
        let s = TwoGenerated::new(2, 5).unwrap();
        assert_eq!(s.gaps(), vec![1, 3]);
        let h: Vec<u64> = (1..=5).map(|n| s.hilbert(n)).collect();
        assert_eq!(h, vec![1, 3, 5, 7, 9]);
        assert_eq!(s.alpha_beta_gamma(2), vec![(1, 0, 1), (1, 0, 0)]);
        assert_eq!(s.reduction_number(), 1);
    }

    #[test]
    fn rejects_non_coprime() {
        assert!(TwoGenerated::new(2, 4).is_none());
        assert!(TwoGenerated::new(3, 2).is_none());
    }
}
