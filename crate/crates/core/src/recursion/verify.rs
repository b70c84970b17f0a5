use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::TauTable;
use crate::arith::double_factorial;
use crate::cutjoin::{apply_lo, apply_w_dressed, assemble_w, RhoTable};
use crate::poly::{translate_t, TranslationShifts};
use crate::series::{build_f, elementary_q};
use crate::{Alpha, Caps, GradedPoly, Monomial, Rational, Result};

/// First nonzero residual of a Virasoro constraint.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VirasoroFailure {
    pub k: i64,
    pub level: usize,
    pub monomial: Monomial,
    pub residual: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VirasoroReport {
    pub alpha: Alpha,
    pub max_level: usize,
    pub k_range: (i64, i64),
    pub checks: usize,
    pub failure: Option<VirasoroFailure>,
}

impl VirasoroReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// Largest `k` whose constraint can be nonzero on levels up to `max_level`.
fn k_max(alpha: Alpha, max_level: usize) -> i64 {
    (alpha.weight() * max_level as i64 + 1) / 2 + 1
}

/// Checks `(½ L_{2k} − ½ ħ^{−1} ∂/∂t_{2k+1+2α} + δ_{k,0}/16) τ = 0` at
/// `s = 0` for levels `0..P−1` and `−α ≤ k ≤ k_max`.
pub fn verify_virasoro(alpha: Alpha, max_level: usize) -> Result<VirasoroReport> {
    let table = TauTable::compute(alpha, max_level, 0)?;
    verify_virasoro_levels(alpha, table.levels())
}

/// Same check on caller-supplied levels.
pub fn verify_virasoro_levels(alpha: Alpha, levels: &[GradedPoly]) -> Result<VirasoroReport> {
    let max_level = levels.len().saturating_sub(1);
    let a = alpha.value();
    let k_hi = k_max(alpha, max_level);
    let half = Rational::new(1, 2);
    let mut checks = 0;
    for p in 0..max_level {
        for k in -a..=k_hi {
            let mut r = apply_lo(2 * k, &levels[p])?.scale(&half);
            let d = levels[p + 1].d_dt((2 * k + 1 + 2 * a) as u32)?;
            r.add_scaled(&d, &-half.clone());
            if k == 0 {
                r.add_scaled(&levels[p], &Rational::new(1, 16));
            }
            checks += 1;
            let first = r.iter().next().map(|(m, c)| (m.clone(), c.clone()));
            if let Some((m, c)) = first {
                return Ok(VirasoroReport {
                    alpha,
                    max_level,
                    k_range: (-a, k_hi),
                    checks,
                    failure: Some(VirasoroFailure {
                        k,
                        level: p,
                        monomial: m,
                        residual: c,
                    }),
                });
            }
        }
    }
    Ok(VirasoroReport {
        alpha,
        max_level,
        k_range: (-a, k_hi),
        checks,
        failure: None,
    })
}

/// First disagreement between translated and directly computed levels.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TranslationFailure {
    pub level: usize,
    pub monomial: Monomial,
    pub translated: Rational,
    pub direct: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TranslationReport {
    pub alpha: Alpha,
    pub max_level: usize,
    pub s_degree_cap: u32,
    pub levels_checked: usize,
    pub terms_compared: usize,
    pub failure: Option<TranslationFailure>,
}

impl TranslationReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// Shifts `t_{2k+1} ↦ t_{2k+1} + q_{k−α}(s)/(ħ (2k+1)!!)` for `k > α`, as far
/// as the `s`-degree cap can see.
pub fn kappa_shifts(alpha: Alpha, s_degree_cap: u32) -> Result<TranslationShifts> {
    let caps = Caps::s_degree(s_degree_cap);
    let q = elementary_q(s_degree_cap as usize, caps);
    let a = alpha.value();
    let mut map = BTreeMap::new();
    for j in 1..=s_degree_cap as i64 {
        let k = j + a;
        let idx = 2 * k + 1;
        let c = q[j as usize].scale(&double_factorial(idx)?.recip());
        if !c.is_zero() {
            map.insert(idx as u32, c);
        }
    }
    TranslationShifts::new(alpha, map)
}

/// Levels `0..=P` of the κ-deformed expansion obtained by translating the
/// undeformed one, which is computed through level `P + D`.
pub fn translated_levels(
    alpha: Alpha,
    max_level: usize,
    s_degree_cap: u32,
) -> Result<Vec<GradedPoly>> {
    let d = s_degree_cap as usize;
    let base = TauTable::compute(alpha, max_level + d, 0)?;
    let shifts = kappa_shifts(alpha, s_degree_cap)?;
    let caps = Caps::s_degree(s_degree_cap);
    let mut out: Vec<GradedPoly> = (0..=max_level)
        .map(|_| GradedPoly::zero().with_caps(caps))
        .collect();
    for (p, v) in base.levels().iter().enumerate() {
        for (order, poly) in translate_t(&v.clone().with_caps(caps), &shifts, p as i64) {
            if order >= 0 && (order as usize) <= max_level {
                out[order as usize] = out[order as usize].poly_add(&poly);
            }
        }
    }
    Ok(out)
}

/// Compares the translated undeformed expansion with the recursion run
/// with generic `s`, level by level and term by term.
pub fn verify_translation(
    alpha: Alpha,
    max_level: usize,
    s_degree_cap: u32,
) -> Result<TranslationReport> {
    let translated = translated_levels(alpha, max_level, s_degree_cap)?;
    let direct = TauTable::compute(alpha, max_level, s_degree_cap)?;
    let mut terms_compared = 0;
    for (p, lhs) in translated.iter().enumerate() {
        let rhs = direct.level(p)?;
        let diff = lhs - rhs;
        terms_compared += lhs.len().max(rhs.len());
        let first = diff.iter().next().map(|(m, _)| m.clone());
        if let Some(m) = first {
            return Ok(TranslationReport {
                alpha,
                max_level,
                s_degree_cap,
                levels_checked: p + 1,
                terms_compared,
                failure: Some(TranslationFailure {
                    level: p,
                    translated: lhs.coeff_of(&m),
                    direct: rhs.coeff_of(&m),
                    monomial: m,
                }),
            });
        }
    }
    Ok(TranslationReport {
        alpha,
        max_level,
        s_degree_cap,
        levels_checked: translated.len(),
        terms_compared,
        failure: None,
    })
}

/// First input on which the two constructions of the operator differ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualFailure {
    pub level: usize,
    pub monomial: Monomial,
    pub factored: Rational,
    pub dressed: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualReport {
    pub alpha: Alpha,
    pub max_level: usize,
    pub s_degree_cap: u32,
    pub levels_checked: usize,
    pub terms_compared: usize,
    pub failure: Option<DualFailure>,
}

impl DualReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// Applies the residue-coefficient operator and the dressed-current
/// operator to `τ^(p)` for `p ≤ P` and compares the images.
pub fn verify_dual(alpha: Alpha, max_level: usize, s_degree_cap: u32) -> Result<DualReport> {
    let caps = Caps::s_degree(s_degree_cap);
    let table = TauTable::compute(alpha, max_level, s_degree_cap)?;
    let w = assemble_w(alpha, max_level + 1, s_degree_cap)?;
    let top = alpha.weight() * max_level as i64 + 2 * alpha.value() + 2;
    let lowest = -(2 * top + 2 * alpha.value() + 3);
    let z_max = 2 * (top - lowest) + 10;
    let f = build_f(alpha, z_max, caps)?;
    let rho = RhoTable::new(&f, lowest, top, caps)?;
    let mut terms_compared = 0;
    for (p, tau) in table.levels().iter().enumerate() {
        let lhs = w.apply(tau)?;
        let rhs = apply_w_dressed(alpha, &rho, tau, caps)?;
        terms_compared += lhs.len().max(rhs.len());
        let diff = &lhs - &rhs;
        let first = diff.iter().next().map(|(m, _)| m.clone());
        if let Some(m) = first {
            return Ok(DualReport {
                alpha,
                max_level,
                s_degree_cap,
                levels_checked: p + 1,
                terms_compared,
                failure: Some(DualFailure {
                    level: p,
                    factored: lhs.coeff_of(&m),
                    dressed: rhs.coeff_of(&m),
                    monomial: m,
                }),
            });
        }
    }
    Ok(DualReport {
        alpha,
        max_level,
        s_degree_cap,
        levels_checked: table.levels().len(),
        terms_compared,
        failure: None,
    })
}
