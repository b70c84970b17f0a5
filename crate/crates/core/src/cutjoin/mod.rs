//! Current modes `J_k`, the odd-current Virasoro modes `L^o_n`, and the
//! deformed cut-and-join operators built from them.

mod coeffs;
mod dressed;
mod operator;
mod terms;

pub use coeffs::{CoefficientLabel, CoefficientTable, SeriesData};
pub use dressed::{apply_w_dressed, RhoTable};
pub use operator::{
    assemble_w, default_z_max, truncation_bounds, CutJoinOperator, FactoredTerm, TruncationBounds,
};
pub use terms::{apply_terms, normal_order, undeformed_terms, OperatorTerm};

use crate::{Error, GradedPoly, Monomial, Rational, Result};

/// `J_k`: `∂/∂t_k` for `k > 0`, multiplication by `|k|·t_{|k|}` for `k < 0`,
/// and zero for `k = 0`.
pub fn apply_j(k: i64, p: &GradedPoly) -> Result<GradedPoly> {
    if k % 2 == 0 {
        if k == 0 {
            return Ok(GradedPoly::zero().with_caps(p.caps()));
        }
        return Err(Error::InvalidIndex {
            what: "current mode",
            index: k,
        });
    }
    if k > 0 {
        p.d_dt(k as u32)
    } else {
        p.mul_t((-k) as u32)
    }
}

/// `L^o_n = ½ Σ_{a+b=n, a,b odd} :J_a J_b:` with zero normal-ordering
/// constant.
///
/// Works monomial by monomial, so only the finitely many pairs `(a, b)`
/// that act on `p` are visited.
pub fn apply_lo(n: i64, p: &GradedPoly) -> Result<GradedPoly> {
    if n % 2 != 0 {
        return Err(Error::InvalidIndex {
            what: "odd-current Virasoro mode",
            index: n,
        });
    }
    let half = Rational::new(1, 2);
    let mut out = GradedPoly::zero().with_caps(p.caps());
    for (m, c) in p.iter() {
        let support: alloc::vec::Vec<(u32, u32)> = m.t_part().collect();
        // Two annihilators: ½ Σ ∂_a ∂_b over ordered pairs.
        for &(a, ea) in &support {
            let b = n - a as i64;
            if b <= 0 {
                continue;
            }
            let b = b as u32;
            let eb = if b == a {
                ea.saturating_sub(1)
            } else {
                m.t_exp(b)
            };
            if eb == 0 {
                continue;
            }
            let once = m.with_t_exp(a, ea - 1);
            let twice = once.with_t_exp(b, once.t_exp(b) - 1);
            out.add_term(twice, c * &half * Rational::from_int((ea * eb) as i64));
        }
        // One creator, one annihilator: Σ_{b − c = n} c t_c ∂_b.
        for &(b, eb) in &support {
            let cr = b as i64 - n;
            if cr <= 0 {
                continue;
            }
            let cr = cr as u32;
            let lowered = m.with_t_exp(b, eb - 1);
            let raised = lowered.with_t_exp(cr, lowered.t_exp(cr) + 1);
            out.add_term(raised, c * Rational::from_int(eb as i64 * cr as i64));
        }
        // Two creators: ½ Σ_{c+d=−n} c d t_c t_d.
        if n < 0 {
            let total = (-n) as u32;
            let mut a = 1;
            while a < total {
                let b = total - a;
                let prod = Monomial::t(a).mul(&Monomial::t(b));
                out.add_term(m.mul(&prod), c * &half * Rational::from_int((a * b) as i64));
                a += 2;
            }
        }
    }
    Ok(out)
}
