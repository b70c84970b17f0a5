use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use crate::series::{build_f, invert_composition, ParamSeries};
use crate::{Alpha, Caps, Error, GradedPoly, Rational, Result};

/// The series `f_α`, its inverse `h_α` and derivatives, shared by every
/// residue coefficient.
#[derive(Clone, Debug)]
pub struct SeriesData {
    pub alpha: Alpha,
    pub caps: Caps,
    pub f: ParamSeries,
    pub h: ParamSeries,
    df: ParamSeries,
    dh: ParamSeries,
}

impl SeriesData {
    /// Builds `f_α` through `z^{z_max}` with coefficients truncated to `caps`.
    pub fn new(alpha: Alpha, z_max: i64, caps: Caps) -> Result<Self> {
        let f = build_f(alpha, z_max, caps)?;
        let h = invert_composition(&f)?;
        let df = f.derivative_z();
        let dh = h.derivative_z();
        Ok(SeriesData {
            alpha,
            caps,
            f,
            h,
            df,
            dh,
        })
    }

    /// `A^α_{k,m} = res z^{1−2α} (h′ h^{2k−2m})₊ h′² h^{2α−2k−2}`.
    pub fn coeff_a_general(&self, k: i64, m: i64) -> Result<GradedPoly> {
        let a = self.alpha.value();
        let inner = self
            .dh
            .mul(&self.h.power_laurent(2 * k - 2 * m)?)
            .plus_part()?;
        let outer = self
            .dh
            .mul(&self.dh)
            .mul(&self.h.power_laurent(2 * a - 2 * k - 2)?);
        Ok(inner
            .shift(1 - 2 * a)
            .mul(&outer)
            .residue()?
            .truncate(self.caps))
    }

    /// `A^α_m = res z^{2α−2m−2} / (f′² f^{2α−1})`, the value of `A^α_{k,m}`
    /// for every `k ≥ m`.
    pub fn coeff_a_diagonal(&self, m: i64) -> Result<GradedPoly> {
        let a = self.alpha.value();
        let denom = self.df.mul(&self.df).mul(&self.f.power_laurent(2 * a - 1)?);
        let g = denom.power_laurent(-1)?.shift(2 * a - 2 * m - 2);
        Ok(g.residue()?.truncate(self.caps))
    }

    /// `A^α_{k,m}`; for `k ≥ m` both residue formulas are evaluated and must
    /// agree.
    pub fn coeff_a(&self, k: i64, m: i64) -> Result<GradedPoly> {
        let general = self.coeff_a_general(k, m)?;
        if k >= m {
            let diag = self.coeff_a_diagonal(m)?;
            if diag != general {
                return Err(Error::CrossCheck(format!(
                    "A_{{{k},{m}}}: general residue {general} differs from diagonal residue {diag}"
                )));
            }
        }
        Ok(general)
    }

    /// `C^α_k = ⅛ res 1/(f^{2α+1} z^{2k+2}) + δ_{α,1} (s₁/30) res 1/(f z^{2k+2})`.
    pub fn coeff_c(&self, k: i64) -> Result<GradedPoly> {
        let w = self.alpha.weight();
        let main = self
            .f
            .power_laurent(-w)?
            .shift(-2 * k - 2)
            .residue()?
            .scale(&Rational::new(1, 8));
        let mut total = main;
        if self.alpha == Alpha::Psi {
            let extra = self.f.power_laurent(-1)?.shift(-2 * k - 2).residue()?;
            let s1 = GradedPoly::s(1).scale(&Rational::new(1, 30));
            total = total.poly_add(&extra.poly_mul(&s1, self.caps));
        }
        Ok(total.truncate(self.caps))
    }
}

/// Name of one operator coefficient.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum CoefficientLabel {
    /// `A_m`, the common value of `A_{k,m}` for `k ≥ m`.
    Diagonal(i64),
    /// `A_{k,m}` with `k < m`.
    OffDiagonal(i64, i64),
    /// `C_k`.
    Linear(i64),
}

impl core::fmt::Display for CoefficientLabel {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            CoefficientLabel::Diagonal(m) => write!(f, "A_{m}"),
            CoefficientLabel::OffDiagonal(k, m) => write!(f, "A_{k},{m}"),
            CoefficientLabel::Linear(k) => write!(f, "C_{k}"),
        }
    }
}

/// Residue coefficients `A_{k,m}` and `C_k` for one α, exact up to the
/// `s`-degree cap of the series they were computed from.
#[derive(Clone, Debug)]
pub struct CoefficientTable {
    pub alpha: Alpha,
    pub caps: Caps,
    pub a: BTreeMap<(i64, i64), GradedPoly>,
    pub c: BTreeMap<i64, GradedPoly>,
}

impl CoefficientTable {
    /// `A_{k,m}` for `0 ≤ k ≤ max_k`, `0 ≤ m ≤ max_m` and `C_k` for
    /// `−α−1 ≤ k ≤ max_c`.
    pub fn compute(data: &SeriesData, max_k: i64, max_m: i64, max_c: i64) -> Result<Self> {
        let mut a = BTreeMap::new();
        let mut diag = BTreeMap::new();
        for m in 0..=max_m {
            if max_k >= m {
                diag.insert(m, data.coeff_a(m, m)?);
            }
        }
        for k in 0..=max_k {
            for m in 0..=max_m {
                let v = if k > m {
                    diag[&m].clone()
                } else {
                    data.coeff_a(k, m)?
                };
                a.insert((k, m), v);
            }
        }
        let mut c = BTreeMap::new();
        for k in (-data.alpha.value() - 1)..=max_c {
            c.insert(k, data.coeff_c(k)?);
        }
        Ok(CoefficientTable {
            alpha: data.alpha,
            caps: data.caps,
            a,
            c,
        })
    }

    /// Every coefficient of weighted `s`-degree at most `order`: `A_m`,
    /// `A_{k,m}` for `k < m`, and `C_k`.
    pub fn up_to_order(alpha: Alpha, order: u32) -> Result<Vec<(CoefficientLabel, GradedPoly)>> {
        let n = order as i64;
        let data = SeriesData::new(alpha, 4 * n + 4 * alpha.value() + 12, Caps::s_degree(order))?;
        let mut rows = Vec::new();
        for m in 0..=n {
            rows.push((CoefficientLabel::Diagonal(m), data.coeff_a(m, m)?));
        }
        for m in 1..=n {
            for k in 0..m {
                rows.push((CoefficientLabel::OffDiagonal(k, m), data.coeff_a(k, m)?));
            }
        }
        let a = alpha.value();
        for k in (-a - 1)..=(n - a - 1) {
            rows.push((CoefficientLabel::Linear(k), data.coeff_c(k)?));
        }
        Ok(rows)
    }

    pub fn a(&self, k: i64, m: i64) -> Option<&GradedPoly> {
        self.a.get(&(k, m))
    }

    pub fn c(&self, k: i64) -> Option<&GradedPoly> {
        self.c.get(&k)
    }
}
