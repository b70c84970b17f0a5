use alloc::vec;
use alloc::vec::Vec;

use super::ParamSeries;
use crate::arith::double_factorial;
use crate::{Alpha, Caps, GradedPoly, Rational, Result};

/// `q_1, …, q_{max_j}` from `1 − exp(−Σ s_i z^i) = Σ q_j z^j`.
///
/// The returned vector is indexed so that `q[j]` is `q_j`; `q[0]` is zero.
pub fn elementary_q(max_j: usize, caps: Caps) -> Vec<GradedPoly> {
    // e = exp(a) with a = −Σ s_i z^i obeys n e_n = Σ_{i=1}^{n} i a_i e_{n−i}.
    let mut e: Vec<GradedPoly> = vec![GradedPoly::one().with_caps(caps)];
    for n in 1..=max_j {
        let mut acc = GradedPoly::zero().with_caps(caps);
        for i in 1..=n {
            let a_i = GradedPoly::s(i as u32).with_caps(caps);
            if a_i.is_zero() {
                continue;
            }
            acc.add_scaled(
                &a_i.poly_mul(&e[n - i], caps),
                &Rational::from_int(-(i as i64)),
            );
        }
        e.push(acc.scale(&Rational::new(1, n as i64)));
    }
    e.iter()
        .enumerate()
        .map(|(j, p)| if j == 0 { GradedPoly::zero() } else { -p })
        .collect()
}

/// `v^α(z) = Σ_{k≥1} q_k z^{2k+2α+1} / (2k+2α+1)!!`, known through `z^{z_max}`.
pub fn build_v(alpha: Alpha, z_max: i64, caps: Caps) -> Result<ParamSeries> {
    let a = alpha.value();
    let max_k = ((z_max - 2 * a - 1) / 2).max(0) as usize;
    let q = elementary_q(max_k, caps);
    let mut coeffs = vec![GradedPoly::zero(); (z_max + 1).max(0) as usize];
    for (k, qk) in q.iter().enumerate().skip(1) {
        let n = 2 * k as i64 + 2 * a + 1;
        if n > z_max {
            break;
        }
        coeffs[n as usize] = qk.scale(&double_factorial(n)?.recip());
    }
    Ok(ParamSeries::from_coeffs(0, coeffs))
}

/// The odd series `f_α ∈ z + z·ℚ[s][[z²]]` with
/// `f_α^{2α+1} = z^{2α+1} − (2α+1)·v^α(z)`, known through `z^{z_max}`.
///
/// Computed as `z·(1 − (2α+1) v^α / z^{2α+1})^{1/(2α+1)}` with the binomial
/// series.
pub fn build_f(alpha: Alpha, z_max: i64, caps: Caps) -> Result<ParamSeries> {
    let w = alpha.weight();
    let v = build_v(alpha, z_max + w - 1, caps)?;
    let u = v.shift(-w).scale_rational(&Rational::from_int(-w));
    let u = u.plus_part()?;
    let root = ParamSeries::binomial_power(&u, &Rational::new(1, w))?;
    Ok(root.shift(1).with_caps(caps))
}
