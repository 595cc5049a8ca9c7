//! Reference computations that never touch a Gröbner basis.
//!
//! * [`monomial`]: monomial ideals as sets of exponent vectors.
//! * [`semigroup`]: the numerical semigroup ring `k[[t^a, t^b]]` and its
//!   monomial ideals as sets of valuations.
//! * [`fit`]: Hilbert polynomial coefficients by exact rational linear algebra.

pub mod fit;
pub mod monomial;
pub mod semigroup;

/// Binomial coefficient `C(n, k)` for `n >= 0`; zero when `k > n`.
pub fn binomial(n: i64, k: i64) -> i64 {
    if k < 0 || n < 0 || k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: i128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as i128 / (i + 1) as i128;
    }
    acc as i64
}
