//! Hilbert filtrations `F = {I_n}` on a cyclic module `M = R/K`.
//!
//! A submodule `I M` of `R/K` is represented by the ideal `I + K`, so every
//! length below is a local length of a quotient of ideals containing `K`.

use std::collections::HashMap;
use std::sync::Mutex;

use serde::Serialize;

use crate::error::Error;
use crate::groebner::{Ideal, PowerCache};
use crate::locallen::{is_locally_m_primary, local_length, LengthSchedule, LocalLengthResult};

/// `M = R/K` with `d = dim R/K`.
#[derive(Clone, Debug)]
pub struct CyclicModule {
    k: Ideal,
    d: usize,
    cm_assumed: bool,
}

impl CyclicModule {
    pub fn new(k: Ideal, cm_assumed: bool) -> Result<Self, Error> {
        let d = k.krull_dimension()?;
        if d == 0 {
            return Err(Error::Precondition(
                "the module has dimension 0".into(),
            ));
        }
        Ok(CyclicModule { k, d, cm_assumed })
    }

    /// `M = R`, which is Cohen-Macaulay.
    pub fn free(ring: &std::sync::Arc<crate::polyring::Ring>) -> Self {
        CyclicModule {
            k: Ideal::zero(ring),
            d: ring.nvars(),
            cm_assumed: true,
        }
    }

    pub fn k(&self) -> &Ideal {
        &self.k
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn cm_assumed(&self) -> bool {
        self.cm_assumed
    }

    pub fn is_free(&self) -> bool {
        self.k.is_zero()
    }

    /// The ideal `A + K` representing `A M`.
    pub fn extend(&self, a: &Ideal) -> Ideal {
        if self.is_free() {
            a.clone()
        } else {
            a.sum(&self.k).expect("same ring")
        }
    }
}

#[derive(Clone, Debug)]
pub enum FiltrationKind {
    /// `I_n = I^n`.
    Adic(Ideal),
    /// `I_1, ..., I_g`, continued by `I_{g+k} = I_1^k I_g`.
    Table(Vec<Ideal>),
}

pub struct HilbertFiltration {
    kind: FiltrationKind,
    module: CyclicModule,
    powers: PowerCache,
    schedule: LengthSchedule,
    ideals: Mutex<HashMap<usize, Ideal>>,
    module_ideals: Mutex<HashMap<usize, Ideal>>,
    lengths: Mutex<HashMap<usize, u64>>,
    warnings: Mutex<Vec<String>>,
}

impl HilbertFiltration {
    pub fn new(kind: FiltrationKind, module: CyclicModule) -> Result<Self, Error> {
        let i1 = match &kind {
            FiltrationKind::Adic(i) => i.clone(),
            FiltrationKind::Table(t) => t
                .first()
                .cloned()
                .ok_or_else(|| Error::Precondition("empty filtration table".into()))?,
        };
        if !crate::polyring::same_ring(i1.ring(), module.k().ring()) {
            return Err(Error::RingMismatch);
        }
        if let FiltrationKind::Table(t) = &kind {
            if t.iter().any(|i| !crate::polyring::same_ring(i.ring(), i1.ring())) {
                return Err(Error::RingMismatch);
            }
        }
        Ok(HilbertFiltration {
            kind,
            module,
            powers: PowerCache::new(i1),
            schedule: LengthSchedule::default(),
            ideals: Mutex::new(HashMap::new()),
            module_ideals: Mutex::new(HashMap::new()),
            lengths: Mutex::new(HashMap::new()),
            warnings: Mutex::new(Vec::new()),
        })
    }

    pub fn adic(i: Ideal, module: CyclicModule) -> Result<Self, Error> {
        Self::new(FiltrationKind::Adic(i), module)
    }

    pub fn table(ideals: Vec<Ideal>, module: CyclicModule) -> Result<Self, Error> {
        Self::new(FiltrationKind::Table(ideals), module)
    }

    pub fn with_schedule(mut self, schedule: LengthSchedule) -> Self {
        self.schedule = schedule;
        self
    }

    pub fn kind(&self) -> &FiltrationKind {
        &self.kind
    }

    pub fn is_adic(&self) -> bool {
        matches!(self.kind, FiltrationKind::Adic(_))
    }

    pub fn module(&self) -> &CyclicModule {
        &self.module
    }

    pub fn dim(&self) -> usize {
        self.module.dim()
    }

    pub fn schedule(&self) -> LengthSchedule {
        self.schedule
    }

    pub fn first(&self) -> &Ideal {
        self.powers.base()
    }

    pub fn ring(&self) -> &std::sync::Arc<crate::polyring::Ring> {
        self.first().ring()
    }

    /// `I_n`, memoized.
    pub fn ideal(&self, n: usize) -> Ideal {
        if let Some(i) = self.ideals.lock().expect("memo poisoned").get(&n) {
            return i.clone();
        }
        let out = match &self.kind {
            _ if n == 0 => Ideal::unit(self.ring()),
            FiltrationKind::Adic(_) => self.powers.power(n),
            FiltrationKind::Table(t) if n <= t.len() => t[n - 1].clone(),
            FiltrationKind::Table(t) => {
                let g = t.len();
                self.powers
                    .power(n - g)
                    .product(&t[g - 1])
                    .expect("same ring")
            }
        };
        self.ideals
            .lock()
            .expect("memo poisoned")
            .entry(n)
            .or_insert(out)
            .clone()
    }

    /// The ideal `I_n + K` representing `I_n M`, memoized.
    pub fn module_ideal(&self, n: usize) -> Ideal {
        if let Some(i) = self.module_ideals.lock().expect("memo poisoned").get(&n) {
            return i.clone();
        }
        let out = self.module.extend(&self.ideal(n));
        self.module_ideals
            .lock()
            .expect("memo poisoned")
            .entry(n)
            .or_insert(out)
            .clone()
    }

    /// `λ((A/B)_m)` under this filtration's schedule; uncertified values are
    /// recorded as warnings.
    pub fn length(&self, a: &Ideal, b: &Ideal) -> Result<u64, Error> {
        let res: LocalLengthResult = local_length(a, b, self.schedule)?;
        if !res.exact {
            self.warn(format!(
                "length {} accepted by stabilization at T = {} without certificate",
                res.length, res.t_used
            ));
        }
        Ok(res.length)
    }

    pub fn warn(&self, msg: String) {
        let mut w = self.warnings.lock().expect("warnings poisoned");
        if !w.contains(&msg) {
            w.push(msg);
        }
    }

    pub fn warnings(&self) -> Vec<String> {
        self.warnings.lock().expect("warnings poisoned").clone()
    }
}

/// `I_n` of the filtration.
pub fn filtration_ideal(f: &HilbertFiltration, n: usize) -> Ideal {
    f.ideal(n)
}

/// `λ(M / I_n M)`, memoized.
pub fn module_length(f: &HilbertFiltration, n: usize) -> Result<u64, Error> {
    if n == 0 {
        return Ok(0);
    }
    if let Some(v) = f.lengths.lock().expect("memo poisoned").get(&n) {
        return Ok(*v);
    }
    let unit = Ideal::unit(f.ring());
    let v = f.length(&unit, &f.module_ideal(n))?;
    f.lengths.lock().expect("memo poisoned").insert(n, v);
    Ok(v)
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    /// `n` with `I_{n+1} M ⊄ I_n M`.
    pub descending_failures: Vec<usize>,
    /// `(a, b)` with `I_a I_b M ⊄ I_{a+b} M`.
    pub multiplicative_failures: Vec<(usize, usize)>,
    /// `I_1 M` has finite colength in `M` at the origin.
    pub m_primary: bool,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.m_primary && self.descending_failures.is_empty() && self.multiplicative_failures.is_empty()
    }
}

/// Checks the filtration axioms for all indices up to `n_check`.
pub fn validate(f: &HilbertFiltration, n_check: usize) -> ValidationReport {
    let mut report = ValidationReport {
        m_primary: is_locally_m_primary(&f.module_ideal(1), f.schedule()),
        ..Default::default()
    };
    for n in 1..n_check {
        if !f.ideal(n + 1).is_subset_of(&f.module_ideal(n)) {
            report.descending_failures.push(n);
        }
    }
    for a in 1..n_check {
        for b in a..=(n_check - a) {
            let prod = f.ideal(a).product(&f.ideal(b)).expect("same ring");
            if !prod.is_subset_of(&f.module_ideal(a + b)) {
                report.multiplicative_failures.push((a, b));
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{Field, Ring};

    fn ring() -> std::sync::Arc<Ring> {
        Ring::new(&["x", "y"], Field::Prime(32003)).unwrap()
    }

    #[test]
    fn ideals_of_filtrations() {
        let r = ring();
        let m = Ideal::maximal(&r);
        let f = HilbertFiltration::adic(m.clone(), CyclicModule::free(&r)).unwrap();
        assert!(f.ideal(2).equals(&Ideal::parse(&r, &["x^2", "x*y", "y^2"]).unwrap()).unwrap());
        assert!(f.ideal(0).is_unit());
        let sq = Ideal::parse(&r, &["x^2", "y^2"]).unwrap();
        let t = HilbertFiltration::table(vec![m.clone(), sq.clone()], CyclicModule::free(&r)).unwrap();
        assert!(t.ideal(3).equals(&m.product(&sq).unwrap()).unwrap());
        assert!(t.ideal(0).is_unit());
    }

    #[test]
    fn validation_reports() {
        let r = ring();
        let m = Ideal::maximal(&r);
        let f = HilbertFiltration::adic(m.clone(), CyclicModule::free(&r)).unwrap();
        assert!(validate(&f, 4).passed());

        let x3 = Ideal::parse(&r, &["x^3"]).unwrap();
        let t = HilbertFiltration::table(vec![m, x3], CyclicModule::free(&r)).unwrap();
        let rep = validate(&t, 3);
        assert!(rep.descending_failures.is_empty());
        assert!(rep.multiplicative_failures.contains(&(1, 1)));

        let x = Ideal::parse(&r, &["x"]).unwrap();
        let f = HilbertFiltration::adic(x, CyclicModule::free(&r)).unwrap();
        assert!(!validate(&f, 2).m_primary);
    }

    #[test]
    fn module_lengths() {
        let r = ring();
        let i = Ideal::parse(&r, &["x^2", "x*y", "y^2"]).unwrap();
        let f = HilbertFiltration::adic(i, CyclicModule::free(&r)).unwrap();
        assert_eq!(module_length(&f, 1).unwrap(), 3);
        assert_eq!(module_length(&f, 0).unwrap(), 0);

        let k = Ideal::parse(&r, &["y^2 - x^5"]).unwrap();
        let module = CyclicModule::new(k, true).unwrap();
        assert_eq!(module.dim(), 1);
        let f = HilbertFiltration::adic(Ideal::maximal(&r), module).unwrap();
        assert_eq!(module_length(&f, 2).unwrap(), 3);
    }

    #[test]
    fn cold_and_warm_agree() {
        let r = ring();
        let i = Ideal::parse(&r, &["x^3", "x*y", "y^2"]).unwrap();
        let f = HilbertFiltration::adic(i.clone(), CyclicModule::free(&r)).unwrap();
        let cold = module_length(&f, 3).unwrap();
        let warm = module_length(&f, 3).unwrap();
        let g = HilbertFiltration::adic(i, CyclicModule::free(&r)).unwrap();
        assert_eq!(cold, warm);
        assert_eq!(cold, module_length(&g, 3).unwrap());
    }
}
