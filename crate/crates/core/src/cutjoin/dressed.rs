use alloc::collections::BTreeMap;

use super::apply_j;
use crate::series::ParamSeries;
use crate::{Alpha, Caps, GradedPoly, Rational, Result};

/// Coefficients `ρ[k, j] = [z^j] f^k` of the dressed currents
/// `J̃_k = Σ_{j ≥ k} ρ[k, j] J_j`.
#[derive(Clone, Debug)]
pub struct RhoTable {
    powers: BTreeMap<i64, ParamSeries>,
    caps: Caps,
}

impl RhoTable {
    /// Tabulates `f^k` for odd `k` in `min_k..=max_k`.
    pub fn new(f: &ParamSeries, min_k: i64, max_k: i64, caps: Caps) -> Result<Self> {
        let mut powers = BTreeMap::new();
        let mut k = min_k;
        while k <= max_k {
            if k % 2 != 0 {
                powers.insert(k, f.power_laurent(k)?.with_caps(caps));
            }
            k += 1;
        }
        Ok(RhoTable { powers, caps })
    }

    pub fn rho(&self, k: i64, j: i64) -> Result<GradedPoly> {
        match self.powers.get(&k) {
            Some(s) => s.coeff(j),
            None => Err(crate::Error::InvalidIndex {
                what: "dressed current",
                index: k,
            }),
        }
    }

    /// `J̃_k · p`.
    pub fn apply(&self, k: i64, p: &GradedPoly) -> Result<GradedPoly> {
        let top = p.max_t_index() as i64;
        let mut out = GradedPoly::zero().with_caps(p.caps().meet(self.caps));
        let mut j = k;
        while j <= top.max(-1) {
            if j != 0 {
                let c = self.rho(k, j)?;
                if !c.is_zero() {
                    out = out.poly_add(&apply_j(j, p)?.mul_s_poly(&c));
                }
            }
            j += 2;
        }
        Ok(out)
    }
}

/// The deformed cut-and-join operator written with dressed currents and
/// applied to `p`. Independent of the residue-coefficient form.
pub fn apply_w_dressed(
    alpha: Alpha,
    rho: &RhoTable,
    p: &GradedPoly,
    caps: Caps,
) -> Result<GradedPoly> {
    let p = p.truncate(p.caps().meet(caps));
    let a = alpha.value();
    let top = p.max_t_index() as i64;
    let mut acc = GradedPoly::zero().with_caps(p.caps());

    // J̃_{−k} J̃_{−m} J̃_{k+m−1−2α}
    let mut k = 1;
    while k <= top + 2 * a {
        let mut m = 1;
        while k + m - 1 - 2 * a <= top {
            let c = k + m - 1 - 2 * a;
            if c >= 1 {
                let x = rho.apply(c, &p)?;
                if !x.is_zero() {
                    let y = rho.apply(-m, &x)?;
                    acc = acc.poly_add(&rho.apply(-k, &y)?);
                }
            }
            m += 2;
        }
        k += 2;
    }

    // ½ J̃_{−k−m−1−2α} J̃_k J̃_m
    let half = Rational::new(1, 2);
    let mut m = 1;
    while m <= top {
        let x = rho.apply(m, &p)?;
        if !x.is_zero() {
            let mut k = 1;
            while k <= top {
                let y = rho.apply(k, &x)?;
                if !y.is_zero() {
                    acc = acc.poly_add(&rho.apply(-k - m - 1 - 2 * a, &y)?.scale(&half));
                }
                k += 2;
            }
        }
        m += 2;
    }

    let extra = match alpha {
        Alpha::Theta => rho.apply(-1, &p)?.scale(&Rational::new(1, 8)),
        Alpha::Psi => {
            let once = rho.apply(-1, &p)?;
            let thrice = rho.apply(-1, &rho.apply(-1, &once)?)?;
            thrice
                .scale(&Rational::new(1, 6))
                .poly_add(&rho.apply(-3, &p)?.scale(&Rational::new(1, 24)))
        }
    };
    Ok(acc
        .scale(&Rational::new(1, alpha.weight()))
        .poly_add(&extra)
        .truncate(p.caps()))
}
