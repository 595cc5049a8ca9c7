//! Hilbert coefficients by solving a rational linear system.

use num_rational::Ratio;
use num_traits::Zero;

use crate::binomial;

type Q = Ratio<i128>;

/// Generalized binomial `C(m, k)` as a polynomial in `m` (any integer `m`).
fn binom_poly(m: i64, k: i64) -> Q {
    let mut acc = Q::from_integer(1);
    for i in 0..k {
        acc = acc * Q::from_integer((m - i) as i128) / Q::from_integer((i + 1) as i128);
    }
    acc
}

/// Solves `values[n] = sum_i (-1)^i e_i C(n + d - 1 - i, d - i)` for
/// `e_0..e_d`, using the sample points `ns` (at least `d + 1` of them,
/// all at or beyond the postulation number). Returns `None` when the
/// system is singular or the solution is not integral.
pub fn binomial_basis_coefficients(ns: &[i64], values: &[i64], d: usize) -> Option<Vec<i64>> {
    let k = d + 1;
    if ns.len() < k || ns.len() != values.len() {
        return None;
    }
    // use the first d+1 points, Gauss-Jordan over Q
    let mut a: Vec<Vec<Q>> = (0..k)
        .map(|r| {
            let n = ns[r];
            let mut row: Vec<Q> = (0..k)
                .map(|i| {
                    let sign = if i % 2 == 0 { 1 } else { -1 };
                    binom_poly(n + d as i64 - 1 - i as i64, (d - i) as i64)
                        * Q::from_integer(sign)
                })
                .collect();
            row.push(Q::from_integer(values[r] as i128));
            row
        })
        .collect();
    for col in 0..k {
        let piv = (col..k).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        let p = a[col][col];
        for c in col..=k {
            a[col][c] = a[col][c] / p;
        }
        for r in 0..k {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col];
                for c in col..=k {
                    let v = a[col][c] * f;
                    a[r][c] = a[r][c] - v;
                }
            }
        }
    }
    let sol: Vec<Q> = (0..k).map(|r| a[r][k]).collect();
    if sol.iter().any(|q| !q.is_integer()) {
        return None;
    }
    let e: Vec<i64> = sol.iter().map(|q| q.to_integer() as i64).collect();
    // the remaining points must agree
    for (n, v) in ns.iter().zip(values).skip(k) {
        if evaluate(&e, *n) != *v {
            return None;
        }
    }
    Some(e)
}

/// Value of the Hilbert polynomial with coefficients `e` at `n`.
pub fn evaluate(e: &[i64], n: i64) -> i64 {
    let d = e.len() as i64 - 1;
    let mut acc = Q::zero();
    for (i, ei) in e.iter().enumerate() {
        let sign = if i % 2 == 0 { 1 } else { -1 };
        acc = acc
            + binom_poly(n + d - 1 - i as i64, d - i as i64) * Q::from_integer((*ei * sign) as i128);
    }
    debug_assert!(acc.is_integer());
    acc.to_integer() as i64
}

/// `C(e0, 2) * C(e0 - 1, i)`.
pub fn degree_bound(e0: i64, i: i64) -> i64 {
    binomial(e0, 2) * binomial(e0 - 1, i)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_fixture_a() {
        // H(n) = n(2n+1)
        let ns: Vec<i64> = (3..8).collect();
        let vs: Vec<i64> = ns.iter().map(|n| n * (2 * n + 1)).collect();
        assert_eq!(binomial_basis_coefficients(&ns, &vs, 2), Some(vec![4, 1, 0]));
    }

    #[test]
    fn recovers_one_dimensional() {
        let ns: Vec<i64> = (1..6).collect();
        let vs: Vec<i64> = ns.iter().map(|n| 2 * n - 1).collect();
        assert_eq!(binomial_basis_coefficients(&ns, &vs, 1), Some(vec![2, 1]));
        assert_eq!(evaluate(&[2, 1], 10), 19);
    }

    #[test]
    fn rejects_inconsistent_tail() {
        let ns = [1, 2, 3];
        let vs = [1, 3, 6];
        assert_eq!(binomial_basis_coefficients(&ns, &vs, 1), None);
    }
}
