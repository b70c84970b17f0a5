use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;

use crate::arith::{bernoulli_at_half, euler_number, factorial};
use crate::cutjoin::SeriesData;
use crate::series::build_f;
use crate::{Alpha, Caps, Error, GradedPoly, Rational, Result};

/// Polynomial in `q²`, keyed by the power of `q²`.
pub type QPoly = BTreeMap<u32, Rational>;

/// Sets `s_k = s δ_{k,1}` and rewrites `s = −q²/2`.
pub fn specialize_q(p: &GradedPoly) -> Result<QPoly> {
    let mut out = QPoly::new();
    let minus_half = Rational::new(-1, 2);
    for (m, c) in p.iter() {
        if m.t_count() != 0 {
            return Err(Error::SeriesShape("expected a polynomial in s only"));
        }
        if m.s_part().any(|(j, _)| j != 1) {
            continue;
        }
        let e = m.s_exp(1);
        *out.entry(e).or_default() += &(c * minus_half.pow(e as i32));
    }
    out.retain(|_, c| !c.is_zero());
    Ok(out)
}

fn single(power: u32, c: Rational) -> QPoly {
    let mut q = QPoly::new();
    if !c.is_zero() {
        q.insert(power, c);
    }
    q
}

fn pow2(e: u32) -> Rational {
    Rational::from_int(2).pow(e as i32)
}

/// Closed forms at `s_k = s δ_{k,1}` for one index `m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedForm {
    pub alpha: Alpha,
    pub m: i64,
    /// `A_m`.
    pub a: QPoly,
    /// `C_m`; only known in closed form for the Θ family.
    pub c: Option<QPoly>,
    /// `A_{m−1,m}`; only for the Θ family and `m ≥ 1`.
    pub a_off: Option<QPoly>,
}

/// Closed forms in Euler numbers and Bernoulli polynomials at `1/2`:
///
/// * `A⁰_m = −q^{2m} E_{2m+2}/(2m+1)!`
/// * `C⁰_m = (2q)^{2m+2} B_{2m+2}(1/2)/(8 (2m+2)!)`, for `m ≥ −1`
/// * `A⁰_{m−1,m} = −q^{2m}/(2m)! (2^{4m} B_{2m}(1/2) + E_{2m+2}/(2m+1))`
/// * `A¹_m = −12 (2q)^{2m} B_{2m+2}(1/2)/(2m+1)!`
pub fn closed_form_coeffs(alpha: Alpha, m: i64) -> Result<ClosedForm> {
    if m < 0 {
        return Err(Error::InvalidIndex {
            what: "closed-form index",
            index: m,
        });
    }
    let mu = m as u32;
    match alpha {
        Alpha::Theta => {
            let a = -euler_number(2 * m + 2)? / factorial(2 * m as u64 + 1);
            let c = pow2(2 * mu + 2) * bernoulli_at_half(2 * mu + 2)
                / (Rational::from_int(8) * factorial(2 * m as u64 + 2));
            let a_off = if m >= 1 {
                let inner = pow2(4 * mu) * bernoulli_at_half(2 * mu)
                    + euler_number(2 * m + 2)? / Rational::from_int(2 * m + 1);
                Some(single(mu, -inner / factorial(2 * m as u64)))
            } else {
                None
            };
            Ok(ClosedForm {
                alpha,
                m,
                a: single(mu, a),
                c: Some(single(mu + 1, c)),
                a_off,
            })
        }
        Alpha::Psi => {
            let a = Rational::from_int(-12) * pow2(2 * mu) * bernoulli_at_half(2 * mu + 2)
                / factorial(2 * m as u64 + 1);
            Ok(ClosedForm {
                alpha,
                m,
                a: single(mu, a),
                c: None,
                a_off: None,
            })
        }
    }
}

/// `C⁰_{−1} = 1/8`, the one closed-form value below `m = 0`.
fn c_theta_minus_one() -> QPoly {
    single(0, Rational::new(1, 8))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosedFormReport {
    pub checks: usize,
    pub failure: Option<String>,
}

impl ClosedFormReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }

    fn check(&mut self, what: impl FnOnce() -> String, got: &QPoly, want: &QPoly) {
        self.checks += 1;
        if self.failure.is_none() && got != want {
            self.failure = Some(format!(
                "{}: got {:?}, expected {:?}",
                what(),
                render(got),
                render(want)
            ));
        }
    }
}

fn render(q: &QPoly) -> String {
    if q.is_empty() {
        return "0".into();
    }
    let parts: alloc::vec::Vec<String> =
        q.iter().map(|(e, c)| format!("{c}*q^{}", 2 * e)).collect();
    parts.join(" + ")
}

fn s_only_caps(d: u32) -> Caps {
    Caps::s_degree(d)
}

/// Compares the generic residue coefficients, specialized at
/// `s_k = s δ_{k,1}`, with the closed forms for `0 ≤ m ≤ max_m`.
pub fn check_coefficient_closed_forms(alpha: Alpha, max_m: i64) -> Result<ClosedFormReport> {
    let cap = (max_m + 2) as u32;
    let z_max = 4 * max_m + 4 * alpha.weight() + 12;
    let data = SeriesData::new(alpha, z_max, s_only_caps(cap))?;
    let mut report = ClosedFormReport {
        checks: 0,
        failure: None,
    };
    if alpha == Alpha::Theta {
        let got = specialize_q(&data.coeff_c(-1)?)?;
        report.check(|| "C_-1".into(), &got, &c_theta_minus_one());
    }
    for m in 0..=max_m {
        let want = closed_form_coeffs(alpha, m)?;
        let got = specialize_q(&data.coeff_a_diagonal(m)?)?;
        report.check(|| format!("A_{m}"), &got, &want.a);
        if let Some(c) = &want.c {
            let got = specialize_q(&data.coeff_c(m)?)?;
            report.check(|| format!("C_{m}"), &got, c);
        }
        if let Some(a_off) = &want.a_off {
            let got = specialize_q(&data.coeff_a_general(m - 1, m)?)?;
            report.check(|| format!("A_{{{},{m}}}", m - 1), &got, a_off);
        }
    }
    Ok(report)
}

/// `[z^{2k+1}] f₀ = q^{2k}/(2k+1)!` at `s_k = s δ_{k,1}`, that is
/// `f₀ = sinh(qz)/q`.
pub fn check_f0_closed_form(z_max: i64) -> Result<ClosedFormReport> {
    let cap = (z_max / 2 + 1) as u32;
    let f = build_f(Alpha::Theta, z_max, s_only_caps(cap))?;
    let mut report = ClosedFormReport {
        checks: 0,
        failure: None,
    };
    let mut n = 1;
    while n <= z_max {
        let k = (n - 1) / 2;
        let got = specialize_q(&f.coeff(n)?)?;
        let want = single(k as u32, factorial(n as u64).recip());
        report.check(|| format!("[z^{n}] f0"), &got, &want);
        n += 2;
    }
    Ok(report)
}

/// `[z^{2k+1}] f₁³ = 6k q^{2k−2}/(2k+1)!` for `k ≥ 1` and `1` at `k = 0`,
/// that is `f₁³ = 3 (qz cosh(qz) − sinh(qz))/q³`.
pub fn check_f1_closed_form(z_max: i64) -> Result<ClosedFormReport> {
    let cap = (z_max / 2 + 1) as u32;
    let f = build_f(Alpha::Psi, z_max, s_only_caps(cap))?;
    let cube = f.mul(&f).mul(&f).with_caps(s_only_caps(cap));
    let mut report = ClosedFormReport {
        checks: 0,
        failure: None,
    };
    let mut n = 3;
    while n <= z_max + 2 {
        let k = (n - 1) / 2;
        let got = specialize_q(&cube.coeff(n)?)?;
        let want = single(
            (k - 1) as u32,
            Rational::from_int(6 * k) / factorial(n as u64),
        );
        report.check(|| format!("[z^{n}] f1^3"), &got, &want);
        n += 2;
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(e: u32, n: i64, d: i64) -> QPoly {
        single(e, Rational::new(n, d))
    }

    #[test]
    fn worked_values() {
        let c = closed_form_coeffs(Alpha::Theta, 1).unwrap();
        assert_eq!(c.a, q(1, -5, 6));
        assert_eq!(c.c, Some(q(2, 7, 2880)));
        assert_eq!(c.a_off, Some(q(1, -1, 6)));
        assert_eq!(closed_form_coeffs(Alpha::Psi, 0).unwrap().a, q(0, 1, 1));
    }

    #[test]
    fn specialization() {
        let p: GradedPoly = "7/720*s1^2 + 1/120*s2".parse().unwrap();
        assert_eq!(specialize_q(&p).unwrap(), q(2, 7, 2880));
    }

    #[test]
    fn generic_coefficients_match_closed_forms() {
        for alpha in Alpha::ALL {
            let r = check_coefficient_closed_forms(alpha, 6).unwrap();
            assert!(r.passed(), "{:?}", r.failure);
        }
    }

    #[test]
    fn f_series_match_closed_forms() {
        let r = check_f0_closed_form(15).unwrap();
        assert!(r.passed() && r.checks == 8, "{r:?}");
        let r = check_f1_closed_form(15).unwrap();
        assert!(r.passed(), "{r:?}");
    }
}
