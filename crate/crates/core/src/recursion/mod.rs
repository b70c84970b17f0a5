//! The level-by-level recursion `τ^(p) = (1/p) W_α(s) τ^(p−1)`, connected
//! free energies, extraction of individual intersection numbers, and the
//! Virasoro and translation checks.

mod extract;
mod verify;

pub use extract::{intersection_number, IntersectionQuery, IntersectionResult, Status};
pub use verify::{
    kappa_shifts, translated_levels, verify_dual, verify_translation, verify_virasoro,
    verify_virasoro_levels, DualFailure, DualReport, TranslationFailure, TranslationReport,
    VirasoroFailure, VirasoroReport,
};

use alloc::vec;
use alloc::vec::Vec;

use crate::cutjoin::{assemble_w, default_z_max, CutJoinOperator, SeriesData};
use crate::{Alpha, Caps, Error, GradedPoly, Rational, Result};

/// One coefficient `τ^(p)` of the topological expansion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TauLevel {
    pub alpha: Alpha,
    pub level: usize,
    pub value: GradedPoly,
    pub s_degree_cap: u32,
}

impl TauLevel {
    /// Total degree every monomial of this level carries.
    pub fn degree(&self) -> u32 {
        (self.alpha.weight() as usize * self.level) as u32
    }

    pub fn is_homogeneous(&self) -> bool {
        self.value.is_homogeneous(self.degree())
    }
}

/// Levels `0..=P` of the expansion, exact through a weighted `s`-degree cap.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TauTable {
    alpha: Alpha,
    s_degree_cap: u32,
    levels: Vec<GradedPoly>,
}

impl TauTable {
    /// The table holding only `τ^(0) = 1`.
    pub fn new(alpha: Alpha, s_degree_cap: u32) -> Self {
        let caps = Caps::s_degree(s_degree_cap);
        TauTable {
            alpha,
            s_degree_cap,
            levels: vec![GradedPoly::one().with_caps(caps)],
        }
    }

    /// Rebuilds a table from stored levels; level 0 must be `1` and every
    /// level must be homogeneous of the expected degree.
    pub fn from_levels(alpha: Alpha, s_degree_cap: u32, levels: Vec<GradedPoly>) -> Result<Self> {
        if levels.first() != Some(&GradedPoly::one()) {
            return Err(Error::Parse("level 0 must be the constant 1".into()));
        }
        let caps = Caps::s_degree(s_degree_cap);
        for (p, v) in levels.iter().enumerate() {
            let d = alpha.weight() as u32 * p as u32;
            if !v.is_homogeneous(d) {
                return Err(Error::Parse(alloc::format!(
                    "level {p} is not homogeneous of degree {d}"
                )));
            }
            if v.max_s_degree() > s_degree_cap {
                return Err(Error::Parse(alloc::format!(
                    "level {p} exceeds s-degree {s_degree_cap}"
                )));
            }
        }
        let levels = levels.into_iter().map(|v| v.with_caps(caps)).collect();
        Ok(TauTable {
            alpha,
            s_degree_cap,
            levels,
        })
    }

    /// `τ^(0), …, τ^(P)`.
    pub fn compute(alpha: Alpha, max_level: usize, s_degree_cap: u32) -> Result<Self> {
        let mut t = TauTable::new(alpha, s_degree_cap);
        t.extend_to(max_level)?;
        Ok(t)
    }

    /// As [`TauTable::compute`], with the series behind the operator carried
    /// `z_pad` orders further than needed.
    pub fn compute_padded(
        alpha: Alpha,
        max_level: usize,
        s_degree_cap: u32,
        z_pad: i64,
    ) -> Result<Self> {
        let mut t = TauTable::new(alpha, s_degree_cap);
        let caps = Caps::s_degree(s_degree_cap);
        let data = SeriesData::new(alpha, default_z_max(alpha, max_level) + z_pad, caps)?;
        let w = CutJoinOperator::from_series(&data, max_level)?;
        t.extend_with(&w, max_level)?;
        Ok(t)
    }

    fn extend_with(&mut self, w: &CutJoinOperator, max_level: usize) -> Result<()> {
        while self.max_level() < max_level {
            let p = self.levels.len();
            let next = w
                .apply(&self.levels[p - 1])?
                .scale(&Rational::new(1, p as i64));
            self.levels.push(next);
        }
        Ok(())
    }

    /// Computes missing levels up to `max_level`.
    pub fn extend_to(&mut self, max_level: usize) -> Result<()> {
        if max_level <= self.max_level() {
            return Ok(());
        }
        let w = assemble_w(self.alpha, max_level, self.s_degree_cap)?;
        self.extend_with(&w, max_level)
    }

    pub fn alpha(&self) -> Alpha {
        self.alpha
    }

    pub fn s_degree_cap(&self) -> u32 {
        self.s_degree_cap
    }

    pub fn max_level(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn level(&self, p: usize) -> Result<&GradedPoly> {
        self.levels.get(p).ok_or(Error::LevelNotComputed {
            requested: p,
            available: self.max_level(),
        })
    }

    pub fn levels(&self) -> &[GradedPoly] {
        &self.levels
    }

    pub fn tau_levels(&self) -> Vec<TauLevel> {
        self.levels
            .iter()
            .enumerate()
            .map(|(level, value)| TauLevel {
                alpha: self.alpha,
                level,
                value: value.clone(),
                s_degree_cap: self.s_degree_cap,
            })
            .collect()
    }

    /// Drops `s`-terms above `cap`.
    pub fn restrict_s_degree(&self, cap: u32) -> TauTable {
        let cap = cap.min(self.s_degree_cap);
        let caps = Caps::s_degree(cap);
        TauTable {
            alpha: self.alpha,
            s_degree_cap: cap,
            levels: self.levels.iter().map(|v| v.truncate(caps)).collect(),
        }
    }

    pub fn free_energy(&self) -> Vec<GradedPoly> {
        free_energy(&self.levels)
    }
}

/// Connected parts `F^(p)` of `τ = exp(Σ ħ^p F^(p))`, from
/// `p τ^(p) = Σ_{j=1}^{p} j F^(j) τ^(p−j)`. Entry 0 is zero.
pub fn free_energy(levels: &[GradedPoly]) -> Vec<GradedPoly> {
    let mut f: Vec<GradedPoly> = Vec::with_capacity(levels.len());
    if levels.is_empty() {
        return f;
    }
    let caps = levels[0].caps();
    f.push(GradedPoly::zero().with_caps(caps));
    for p in 1..levels.len() {
        let mut acc = levels[p].clone();
        let inv_p = Rational::new(1, p as i64);
        for j in 1..p {
            let prod = f[j].poly_mul(&levels[p - j], caps);
            acc.add_scaled(&prod, &(Rational::from_int(-(j as i64)) * &inv_p));
        }
        f.push(acc);
    }
    f
}

/// Inverse of [`free_energy`]: levels of `exp(Σ ħ^p F^(p))`.
pub fn exponentiate(f: &[GradedPoly]) -> Vec<GradedPoly> {
    let mut tau: Vec<GradedPoly> = Vec::with_capacity(f.len());
    if f.is_empty() {
        return tau;
    }
    let caps = f[0].caps();
    tau.push(GradedPoly::one().with_caps(caps));
    for p in 1..f.len() {
        let mut acc = GradedPoly::zero().with_caps(caps);
        let inv_p = Rational::new(1, p as i64);
        for j in 1..=p {
            let prod = f[j].poly_mul(&tau[p - j], caps);
            acc.add_scaled(&prod, &(Rational::from_int(j as i64) * &inv_p));
        }
        tau.push(acc);
    }
    tau
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> GradedPoly {
        s.parse().unwrap()
    }

    #[test]
    fn first_levels_theta() {
        let t = TauTable::compute(Alpha::Theta, 2, 0).unwrap();
        assert_eq!(t.level(1).unwrap(), &p("1/8*t1"));
        assert_eq!(t.level(2).unwrap(), &p("9/128*t1^2"));
        let f = t.free_energy();
        assert_eq!(f[1], p("1/8*t1"));
        assert_eq!(f[2], p("1/16*t1^2"));
    }

    #[test]
    fn first_level_psi() {
        let t = TauTable::compute(Alpha::Psi, 1, 0).unwrap();
        assert_eq!(t.level(1).unwrap(), &p("1/6*t1^3 + 1/8*t3"));
    }

    #[test]
    fn levels_are_homogeneous() {
        for alpha in Alpha::ALL {
            let t = TauTable::compute(alpha, 4, 2).unwrap();
            assert!(t.tau_levels().iter().all(TauLevel::is_homogeneous));
            let d = alpha.weight() as u32;
            for (p, fp) in t.free_energy().iter().enumerate() {
                assert!(fp.is_homogeneous(d * p as u32));
            }
        }
    }

    #[test]
    fn incremental_extension_matches_direct() {
        let mut a = TauTable::compute(Alpha::Psi, 2, 2).unwrap();
        a.extend_to(4).unwrap();
        assert_eq!(a, TauTable::compute(Alpha::Psi, 4, 2).unwrap());
    }

    #[test]
    fn padding_changes_nothing() {
        let a = TauTable::compute(Alpha::Theta, 3, 2).unwrap();
        assert_eq!(a, TauTable::compute_padded(Alpha::Theta, 3, 2, 10).unwrap());
    }

    #[test]
    fn missing_level_is_reported() {
        let t = TauTable::compute(Alpha::Theta, 1, 0).unwrap();
        assert!(matches!(
            t.level(3),
            Err(Error::LevelNotComputed {
                requested: 3,
                available: 1
            })
        ));
    }

    #[test]
    fn from_levels_rejects_inhomogeneous() {
        let bad = vec![GradedPoly::one(), p("t1 + t3")];
        assert!(TauTable::from_levels(Alpha::Theta, 0, bad).is_err());
    }

    proptest! {
        #[test]
        fn log_exp_round_trip(c in proptest::collection::vec(-5i64..5, 6)) {
            let f = vec![
                GradedPoly::zero(),
                p("t1").scale(&Rational::from_int(c[0])).poly_add(&p("s1").scale(&Rational::from_int(c[1]))),
                p("t1^2").scale(&Rational::from_int(c[2])).poly_add(&p("t1*s1").scale(&Rational::from_int(c[3]))),
                p("t3 + t1^3").scale(&Rational::from_int(c[4])),
                p("t1^4 + s2").scale(&Rational::from_int(c[5])),
            ];
            let tau = exponentiate(&f);
            prop_assert_eq!(free_energy(&tau), f);
        }
    }
}
