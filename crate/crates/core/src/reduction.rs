//! Minimal reductions `J ⊆ I_1` with `d` generic generators, reduction
//! numbers, and a bounded test for superficial elements.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::Error;
use crate::filtration::HilbertFiltration;
use crate::groebner::Ideal;
use crate::polyring::{Field, Polynomial, SMALL_PRIME_WARNING};

pub const DEFAULT_ATTEMPTS: usize = 8;

/// `3 * (number of generators of I_1) + 5`.
pub fn default_n_bound(f: &HilbertFiltration) -> usize {
    3 * f.first().gens().len() + 5
}

#[derive(Clone, Debug)]
pub struct ReductionData {
    pub j: Ideal,
    pub r: usize,
    /// Largest `n` at which `J I_n M = I_{n+1} M` was checked.
    pub verified_at: usize,
    /// `None` when `J` was supplied rather than sampled.
    pub seed: Option<u64>,
    pub attempts: usize,
}

impl Serialize for ReductionData {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let gens: Vec<String> = self.j.gens().iter().map(|g| g.to_string()).collect();
        let mut st = s.serialize_struct("ReductionData", 5)?;
        st.serialize_field("j", &gens)?;
        st.serialize_field("r", &self.r)?;
        st.serialize_field("verified_at", &self.verified_at)?;
        st.serialize_field("seed", &self.seed)?;
        st.serialize_field("attempts", &self.attempts)?;
        st.end()
    }
}

/// `λ(I_{n+1} M / J I_n M) == 0`.
fn equality_at(f: &HilbertFiltration, j: &Ideal, n: usize) -> Result<bool, Error> {
    let jin = f.module().extend(&j.product(&f.ideal(n))?);
    Ok(f.length(&f.module_ideal(n + 1), &jin)? == 0)
}

/// Least `r <= n_bound` such that `J I_m M = I_{m+1} M` for every `m` from
/// `r` up to the end of the filtration table, after which the equality
/// propagates.
fn least_reduction_index(f: &HilbertFiltration, j: &Ideal, n_bound: usize) -> Result<Option<(usize, usize)>, Error> {
    let g = match f.kind() {
        crate::filtration::FiltrationKind::Adic(_) => 0,
        crate::filtration::FiltrationKind::Table(t) => t.len(),
    };
    let mut holds: Vec<bool> = Vec::new();
    for n in 0..=n_bound.max(g) {
        holds.push(equality_at(f, j, n)?);
        let hit = (0..=n.min(n_bound)).find(|&r| (r..=r.max(g)).all(|m| holds.get(m) == Some(&true)));
        if let Some(r) = hit {
            return Ok(Some((r, n)));
        }
    }
    Ok(None)
}

fn random_combination(gens: &[Polynomial], field: Field, rng: &mut ChaCha8Rng) -> Polynomial {
    let ring = gens[0].ring();
    gens.iter().fold(Polynomial::zero(ring), |acc, g| {
        acc.add(&g.scale(&field.random_nonzero(rng)))
    })
}

/// Samples `J` from `d` random combinations of the generators of `I_1`
/// until one is verified as a reduction.
pub fn find_reduction(
    f: &HilbertFiltration,
    seed: u64,
    n_bound: usize,
    attempts_max: usize,
) -> Result<ReductionData, Error> {
    let d = f.dim();
    let field = f.ring().field();
    if let Field::Prime(p) = field {
        if p < SMALL_PRIME_WARNING {
            f.warn(format!("characteristic {p} is small; random reductions may fail"));
        }
    }
    let gens: Vec<Polynomial> = f.first().gens().to_vec();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut last = String::new();
    for attempt in 1..=attempts_max {
        let jgens: Vec<Polynomial> = (0..d).map(|_| random_combination(&gens, field, &mut rng)).collect();
        let j = Ideal::new(f.ring(), jgens)?;
        if let Some((r, verified_at)) = least_reduction_index(f, &j, n_bound)? {
            return Ok(ReductionData {
                j,
                r,
                verified_at,
                seed: Some(seed),
                attempts: attempt,
            });
        }
        last = format!("last candidate {j} fails J I_n M = I_(n+1) M for n <= {n_bound}");
    }
    Err(Error::ReductionNotFound {
        attempts: attempts_max,
        diagnostics: last,
    })
}

/// Verifies a supplied `J ⊆ I_1` and computes its reduction number.
pub fn reduction_with(f: &HilbertFiltration, j: Ideal, n_bound: usize) -> Result<ReductionData, Error> {
    if !j.is_subset_of(&f.module_ideal(1)) {
        return Err(Error::Precondition(format!("{j} is not contained in I_1")));
    }
    match least_reduction_index(f, &j, n_bound)? {
        Some((r, verified_at)) => Ok(ReductionData {
            j,
            r,
            verified_at,
            seed: None,
            attempts: 0,
        }),
        None => Err(Error::ReductionNotFound {
            attempts: 0,
            diagnostics: format!("{j} is not a reduction up to n = {n_bound}"),
        }),
    }
}

/// The reduction number of `F` with respect to `J`.
pub fn reduction_number(f: &HilbertFiltration, j: &Ideal, n_bound: usize) -> Result<usize, Error> {
    reduction_with(f, j.clone(), n_bound).map(|rd| rd.r)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SuperficialBounds {
    pub c_max: usize,
    pub n_max: usize,
    pub j_max: usize,
}

impl Default for SuperficialBounds {
    fn default() -> Self {
        SuperficialBounds {
            c_max: 2,
            n_max: 4,
            j_max: 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum Superficiality {
    /// No violation for any `c < n <= n_max`, `j <= j_max` at this `c`.
    Pass { c: usize },
    /// `(I_{n+j} M : x^j) ∩ I_c M ≠ I_n M` at the largest `c` tried.
    Fail { c: usize, n: usize, j: usize },
    Inconclusive,
}

/// Bounded check of `(I_{n+j} M : x^j) ∩ I_c M = I_n M` for `n > c`.
pub fn is_superficial(
    x: &Polynomial,
    f: &HilbertFiltration,
    bounds: SuperficialBounds,
) -> Result<Superficiality, Error> {
    if !f.module_ideal(1).contains(x) {
        return Err(Error::Precondition(format!("{x} is not in I_1")));
    }
    if f.module_ideal(2).contains(x) {
        return Err(Error::Precondition(format!("{x} lies in I_2")));
    }
    let mut witness = None;
    for c in 0..=bounds.c_max {
        if c + 1 > bounds.n_max || bounds.j_max == 0 {
            break;
        }
        witness = None;
        'search: for n in c + 1..=bounds.n_max {
            for j in 1..=bounds.j_max {
                let colon = f.module_ideal(n + j).colon(&x.pow(j as u32))?;
                let lhs = colon.intersect(&f.module_ideal(c))?;
                let rhs = f.module_ideal(n);
                if f.length(&lhs, &rhs)? != 0 {
                    witness = Some((c, n, j));
                    break 'search;
                }
            }
        }
        if witness.is_none() {
            return Ok(Superficiality::Pass { c });
        }
    }
    match witness {
        Some((c, n, j)) => Ok(Superficiality::Fail { c, n, j }),
        None => Ok(Superficiality::Inconclusive),
    }
}
