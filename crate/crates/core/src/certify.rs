//! Depth certificates for the associated graded module from two length
//! sums, the one-dimensional α/β/γ tables, and coefficient bounds.

use serde::Serialize;

use crate::error::Error;
use crate::filtration::HilbertFiltration;
use crate::groebner::PowerCache;
use crate::hilbert::HilbertCoefficients;
use crate::reduction::ReductionData;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Verdict {
    DepthLessThanDMinus1,
    DepthAtLeastDMinus1,
    CohenMacaulay,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HmSums {
    pub s_hm: i64,
    pub s_cm: i64,
    /// `λ(I_n M / J I_{n-1} M)` for `n = 1..=r+1`.
    pub hm_terms: Vec<i64>,
    /// `λ((I_n M + J M) / J M)` for `n = 1..=r+1`.
    pub cm_terms: Vec<i64>,
}

/// Both length sums over `n = 1..=r`; the `r + 1` terms must vanish.
pub fn hm_sums(f: &HilbertFiltration, rd: &ReductionData) -> Result<HmSums, Error> {
    let module = f.module();
    let jm = module.extend(&rd.j);
    let mut hm_terms = Vec::with_capacity(rd.r + 1);
    let mut cm_terms = Vec::with_capacity(rd.r + 1);
    for n in 1..=rd.r + 1 {
        let in_m = f.module_ideal(n);
        let j_prev = module.extend(&rd.j.product(&f.ideal(n - 1))?);
        hm_terms.push(f.length(&in_m, &j_prev)? as i64);
        cm_terms.push(f.length(&in_m.sum(&jm)?, &jm)? as i64);
    }
    if hm_terms[rd.r] != 0 || cm_terms[rd.r] != 0 {
        return Err(Error::Inconsistent(format!(
            "terms at n = r + 1 = {} do not vanish: {} and {}",
            rd.r + 1,
            hm_terms[rd.r],
            cm_terms[rd.r]
        )));
    }
    Ok(HmSums {
        s_hm: hm_terms.iter().sum(),
        s_cm: cm_terms.iter().sum(),
        hm_terms,
        cm_terms,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct DepthCertificate {
    pub e: HilbertCoefficients,
    pub reduction: ReductionData,
    pub sums: HmSums,
    pub verdict: Verdict,
    pub cm_assumed: bool,
}

/// Compares `e_1` with both sums. Requires `M` to be Cohen-Macaulay.
pub fn certify_depth(
    f: &HilbertFiltration,
    rd: &ReductionData,
    e: &HilbertCoefficients,
) -> Result<DepthCertificate, Error> {
    if !f.module().cm_assumed() {
        return Err(Error::Refused(
            "the module is not asserted to be Cohen-Macaulay".into(),
        ));
    }
    let sums = hm_sums(f, rd)?;
    let e1 = e.e.get(1).copied().unwrap_or(0);
    if sums.s_cm > e1 || e1 > sums.s_hm {
        return Err(Error::Inconsistent(format!(
            "expected S_CM <= e_1 <= S_HM, got {} <= {} <= {}",
            sums.s_cm, e1, sums.s_hm
        )));
    }
    let verdict = if e1 == sums.s_cm {
        if e1 != sums.s_hm {
            return Err(Error::Inconsistent(format!(
                "e_1 = S_CM = {e1} but S_HM = {}",
                sums.s_hm
            )));
        }
        Verdict::CohenMacaulay
    } else if e1 == sums.s_hm {
        Verdict::DepthAtLeastDMinus1
    } else {
        Verdict::DepthLessThanDMinus1
    };
    Ok(DepthCertificate {
        e: e.clone(),
        reduction: rd.clone(),
        sums,
        verdict,
        cm_assumed: true,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlphaBetaGamma {
    pub alpha: Vec<i64>,
    pub beta: Vec<i64>,
    pub gamma: Vec<i64>,
    /// `α_n = Σ_{i <= n} (β_i + γ_i)` for every listed `n`.
    pub telescopes: bool,
}

/// The tables for `n = 1..=r+1` in dimension one.
pub fn alpha_beta_gamma(f: &HilbertFiltration, rd: &ReductionData) -> Result<AlphaBetaGamma, Error> {
    if f.dim() != 1 {
        return Err(Error::Precondition(format!(
            "the α/β/γ tables need d = 1, got d = {}",
            f.dim()
        )));
    }
    let module = f.module();
    let jm = module.extend(&rd.j);
    let jpow = PowerCache::new(rd.j.clone());
    let (mut alpha, mut beta, mut gamma) = (Vec::new(), Vec::new(), Vec::new());
    for n in 1..=rd.r + 1 {
        let in_m = f.module_ideal(n);
        let meet = in_m.intersect(&jm)?;
        let j_prev = module.extend(&rd.j.product(&f.ideal(n - 1))?);
        alpha.push(f.length(&in_m, &module.extend(&jpow.power(n)))? as i64);
        beta.push(f.length(&meet, &j_prev)? as i64);
        gamma.push(f.length(&in_m, &meet)? as i64);
    }
    let mut acc = 0;
    let telescopes = (0..alpha.len()).all(|k| {
        acc += beta[k] + gamma[k];
        alpha[k] == acc
    });
    Ok(AlphaBetaGamma {
        alpha,
        beta,
        gamma,
        telescopes,
    })
}

/// `C(n, k)`, zero outside `0 <= k <= n`.
pub fn binomial(n: i64, k: i64) -> i64 {
    if k < 0 || n < 0 || k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1i128, |acc, i| acc * (n - i) as i128 / (i + 1) as i128) as i64
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Comparison {
    pub i: usize,
    pub value: i64,
    pub bound: i64,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundsReport {
    /// `e_i <= C(e_0, 2) C(e_0 - 1, i)`.
    pub coefficient_bounds: Vec<Comparison>,
    /// `e_1 <= C(e_0, 2)`.
    pub e1_bound: Comparison,
    /// `r <= e_0 - 1`.
    pub reduction_bound: Comparison,
    /// `e_i` against `Σ_{n >= i} C(n - 1, i - 1) λ(I_n M / J I_{n-1} M)`.
    pub reconstruction: Vec<Comparison>,
    /// Hypotheses were not met and the run was forced.
    pub informational: bool,
}

impl BoundsReport {
    pub fn passed(&self) -> bool {
        self.coefficient_bounds.iter().all(|c| c.holds)
            && self.e1_bound.holds
            && self.reduction_bound.holds
            && self.reconstruction.iter().all(|c| c.holds)
    }
}

fn compare_le(i: usize, value: i64, bound: i64) -> Comparison {
    Comparison {
        i,
        value,
        bound,
        holds: value <= bound,
    }
}

/// Coefficient bounds for adic filtrations whose associated graded module
/// has depth at least `d - 1`. With `force` the hypotheses are only recorded.
pub fn check_bounds(f: &HilbertFiltration, cert: &DepthCertificate, force: bool) -> Result<BoundsReport, Error> {
    let mut unmet = Vec::new();
    if cert.verdict < Verdict::DepthAtLeastDMinus1 {
        unmet.push("the associated graded module has depth below d - 1");
    }
    if !f.is_adic() {
        unmet.push("the bounds are stated for adic filtrations");
    }
    if !unmet.is_empty() && !force {
        return Err(Error::Refused(unmet.join("; ")));
    }
    let e = &cert.e.e;
    let e0 = e[0];
    let d = cert.e.d;
    let coefficient_bounds = (1..=d)
        .map(|i| compare_le(i, e[i], binomial(e0, 2) * binomial(e0 - 1, i as i64)))
        .collect();
    let e1_bound = compare_le(1, e.get(1).copied().unwrap_or(0), binomial(e0, 2));
    let reduction_bound = compare_le(0, cert.reduction.r as i64, e0 - 1);
    let terms = &cert.sums.hm_terms;
    let reconstruction = (1..=d)
        .map(|i| {
            let sum: i64 = (i..=terms.len())
                .map(|n| binomial(n as i64 - 1, i as i64 - 1) * terms[n - 1])
                .sum();
            Comparison {
                i,
                value: e[i],
                bound: sum,
                holds: e[i] == sum,
            }
        })
        .collect();
    Ok(BoundsReport {
        coefficient_bounds,
        e1_bound,
        reduction_bound,
        reconstruction,
        informational: !unmet.is_empty(),
    })
}
