//! Truncated Laurent series in one variable `z` whose coefficients are
//! polynomials in the `s`-variables.
//!
//! A series knows exactly which coefficients it knows: the window
//! `low..valid_to` of exponents. Every operation propagates that window
//! pessimistically, so asking for a coefficient outside it is an error
//! instead of a silently wrong value.

mod build;
mod reversion;

pub use build::{build_f, build_v, elementary_q};
pub use reversion::{compose, invert_composition, invert_lagrange};

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::arith::binomial;
use crate::{Caps, Error, GradedPoly, Rational, Result};

/// Parity of the exponents carrying nonzero coefficients.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
    Mixed,
}

impl Parity {
    fn of_exponent(n: i64) -> Parity {
        if n.rem_euclid(2) == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    fn times(self, other: Parity) -> Parity {
        match (self, other) {
            (Parity::Mixed, _) | (_, Parity::Mixed) => Parity::Mixed,
            (a, b) if a == b => Parity::Even,
            _ => Parity::Odd,
        }
    }

    fn join(self, other: Parity) -> Parity {
        if self == other {
            self
        } else {
            Parity::Mixed
        }
    }

    fn flip(self) -> Parity {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
            Parity::Mixed => Parity::Mixed,
        }
    }

    fn allows(self, n: i64) -> bool {
        self == Parity::Mixed || self == Parity::of_exponent(n)
    }
}

/// `Σ_{low ≤ n < valid_to} c_n z^n + O(z^valid_to)`.
#[derive(Clone, PartialEq, Eq)]
pub struct ParamSeries {
    low: i64,
    coeffs: Vec<GradedPoly>,
    parity: Parity,
}

impl ParamSeries {
    /// Series with coefficients `coeffs[i]` at `z^{low+i}`, known exactly
    /// below `low + coeffs.len()`.
    pub fn from_coeffs(low: i64, coeffs: Vec<GradedPoly>) -> Self {
        let mut parity = None;
        for (i, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                let p = Parity::of_exponent(low + i as i64);
                parity = Some(parity.map_or(p, |q: Parity| q.join(p)));
            }
        }
        ParamSeries {
            low,
            coeffs,
            parity: parity.unwrap_or(Parity::Even),
        }
        .with_parity_hint()
    }

    fn with_parity_hint(mut self) -> Self {
        // The zero series is compatible with either parity; call it odd only
        // if that is what the data says.
        if self.coeffs.iter().all(GradedPoly::is_zero) {
            self.parity = Parity::Mixed;
        }
        self
    }

    /// Zero, known below `valid_to`.
    pub fn zero(valid_to: i64) -> Self {
        ParamSeries {
            low: valid_to,
            coeffs: Vec::new(),
            parity: Parity::Mixed,
        }
    }

    /// `c·z^n`, known below `valid_to`.
    pub fn monomial(n: i64, c: GradedPoly, valid_to: i64) -> Self {
        if n >= valid_to {
            return ParamSeries::zero(valid_to);
        }
        let mut coeffs = vec![GradedPoly::zero(); (valid_to - n) as usize];
        coeffs[0] = c;
        ParamSeries::from_coeffs(n, coeffs)
    }

    /// The series `z`, known below `valid_to`.
    pub fn z(valid_to: i64) -> Self {
        ParamSeries::monomial(1, GradedPoly::one(), valid_to)
    }

    pub fn low(&self) -> i64 {
        self.low
    }

    /// Exclusive upper end of the known window.
    pub fn valid_to(&self) -> i64 {
        self.low + self.coeffs.len() as i64
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    /// Coefficient of `z^n`.
    pub fn coeff(&self, n: i64) -> Result<GradedPoly> {
        if n >= self.valid_to() {
            return Err(Error::Truncation {
                needed: n,
                valid_to: self.valid_to(),
            });
        }
        if n < self.low {
            return Ok(GradedPoly::zero());
        }
        Ok(self.coeffs[(n - self.low) as usize].clone())
    }

    fn coeff_ref(&self, n: i64) -> Option<&GradedPoly> {
        if n < self.low || n >= self.valid_to() {
            None
        } else {
            Some(&self.coeffs[(n - self.low) as usize])
        }
    }

    /// Lowest exponent with a nonzero coefficient, if any is known.
    pub fn order(&self) -> Option<i64> {
        self.coeffs
            .iter()
            .position(|c| !c.is_zero())
            .map(|i| self.low + i as i64)
    }

    /// Drops leading zero coefficients so `low` is the true order.
    fn normalized(mut self) -> Self {
        let lead = self
            .coeffs
            .iter()
            .position(|c| !c.is_zero())
            .unwrap_or(self.coeffs.len());
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.low += lead as i64;
        }
        self
    }

    /// Forgets every coefficient at or above `valid_to`.
    pub fn truncate(mut self, valid_to: i64) -> Self {
        if valid_to <= self.low {
            return ParamSeries::zero(valid_to.min(self.valid_to()));
        }
        let keep = (valid_to - self.low) as usize;
        self.coeffs.truncate(keep);
        self
    }

    /// Checks that coefficients of the wrong parity vanish.
    pub fn check_parity(&self) -> bool {
        self.coeffs
            .iter()
            .enumerate()
            .all(|(i, c)| c.is_zero() || self.parity.allows(self.low + i as i64))
    }

    /// Applies `f` to every coefficient.
    pub fn map_coeffs(&self, mut f: impl FnMut(&GradedPoly) -> GradedPoly) -> ParamSeries {
        ParamSeries::from_coeffs(self.low, self.coeffs.iter().map(&mut f).collect())
    }

    /// Truncates every coefficient to the given caps.
    pub fn with_caps(&self, caps: Caps) -> ParamSeries {
        self.map_coeffs(|c| c.truncate(caps))
    }

    pub fn add(&self, other: &ParamSeries) -> ParamSeries {
        let low = self.low.min(other.low);
        let hi = self.valid_to().min(other.valid_to());
        let coeffs = (low..hi.max(low))
            .map(|n| match (self.coeff_ref(n), other.coeff_ref(n)) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => GradedPoly::zero(),
            })
            .collect();
        ParamSeries::from_coeffs(low, coeffs).normalized()
    }

    pub fn neg(&self) -> ParamSeries {
        self.map_coeffs(|c| -c)
    }

    pub fn sub(&self, other: &ParamSeries) -> ParamSeries {
        self.add(&other.neg())
    }

    /// Multiplies by an `s`-polynomial.
    pub fn scale(&self, c: &GradedPoly) -> ParamSeries {
        self.map_coeffs(|x| x.poly_mul(c, Caps::NONE))
    }

    pub fn scale_rational(&self, c: &Rational) -> ParamSeries {
        self.map_coeffs(|x| x.scale(c))
    }

    /// Multiplies by `z^k`.
    pub fn shift(&self, k: i64) -> ParamSeries {
        ParamSeries {
            low: self.low + k,
            coeffs: self.coeffs.clone(),
            parity: if k % 2 == 0 {
                self.parity
            } else {
                self.parity.flip()
            },
        }
    }

    pub fn mul(&self, other: &ParamSeries) -> ParamSeries {
        let a = self.clone().normalized();
        let b = other.clone().normalized();
        let low = a.low + b.low;
        let hi = (a.low + b.valid_to()).min(b.low + a.valid_to());
        if hi <= low {
            return ParamSeries::zero(hi);
        }
        let len = (hi - low) as usize;
        let mut coeffs = vec![GradedPoly::zero(); len];
        for (i, ca) in a.coeffs.iter().enumerate().take(len) {
            if ca.is_zero() {
                continue;
            }
            for (j, cb) in b.coeffs.iter().enumerate().take(len - i) {
                if !cb.is_zero() {
                    let prod = ca.poly_mul(cb, Caps::NONE);
                    coeffs[i + j] = coeffs[i + j].poly_add(&prod);
                }
            }
        }
        let parity = a.parity.times(b.parity);
        ParamSeries {
            low,
            coeffs,
            parity,
        }
    }

    /// `d/dz`, with the window shrinking by one.
    pub fn derivative_z(&self) -> ParamSeries {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c.scale(&Rational::from_int(self.low + i as i64)))
            .collect();
        ParamSeries {
            low: self.low - 1,
            coeffs,
            parity: self.parity.flip(),
        }
        .normalized()
    }

    /// `Σ_{n ≥ 0} c_n z^n`.
    pub fn plus_part(&self) -> Result<ParamSeries> {
        if self.valid_to() < 0 {
            return Err(Error::Truncation {
                needed: 0,
                valid_to: self.valid_to(),
            });
        }
        if self.low >= 0 {
            return Ok(self.clone());
        }
        let skip = (-self.low) as usize;
        let coeffs = self.coeffs[skip..].to_vec();
        Ok(ParamSeries {
            low: 0,
            coeffs,
            parity: self.parity,
        })
    }

    /// The coefficient of `z^{-1}`.
    pub fn residue(&self) -> Result<GradedPoly> {
        self.coeff(-1)
    }

    /// Leading coefficient, required to be a nonzero rational constant.
    fn unit_leading(&self) -> Result<(i64, Rational)> {
        let order = self
            .order()
            .ok_or(Error::SeriesShape("series is zero within its window"))?;
        let lead = self.coeff(order)?;
        if lead.len() != 1 || !lead.iter().next().unwrap().0.is_one() {
            return Err(Error::SeriesShape(
                "leading coefficient is not a nonzero constant",
            ));
        }
        Ok((order, lead.constant_term()))
    }

    /// `self^r` for rational `r`, computed by the power recurrence
    /// `n g_0 h_n = Σ_{i=1}^{n} ((r+1)i − n) g_i h_{n−i}`.
    ///
    /// The series must have a nonzero constant leading coefficient; for
    /// non-integer `r` it must also be 1 and the order must be 0.
    pub fn pow_rational(&self, r: &Rational) -> Result<ParamSeries> {
        let (order, lead) = self.unit_leading()?;
        if !r.is_integer() && (order != 0 || !lead.is_one()) {
            return Err(Error::SeriesShape(
                "fractional power needs a series 1 + O(z)",
            ));
        }
        let g: Vec<GradedPoly> = (order..self.valid_to())
            .map(|n| self.coeff(n).unwrap())
            .collect();
        let len = g.len();
        let mut h: Vec<GradedPoly> = Vec::with_capacity(len);
        let h0 = if r.is_integer() {
            let e = i32::try_from(r.numer().clone())
                .map_err(|_| Error::SeriesShape("exponent too large"))?;
            lead.pow(e)
        } else {
            Rational::one()
        };
        h.push(GradedPoly::constant(h0));
        let rp1 = r + Rational::one();
        let inv_lead = lead.recip();
        for n in 1..len {
            let mut acc = GradedPoly::zero();
            for i in 1..=n {
                if g[i].is_zero() || h[n - i].is_zero() {
                    continue;
                }
                let w = &rp1 * Rational::from_int(i as i64) - Rational::from_int(n as i64);
                if w.is_zero() {
                    continue;
                }
                acc.add_scaled(&g[i].poly_mul(&h[n - i], Caps::NONE), &w);
            }
            h.push(acc.scale(&(&inv_lead / Rational::from_int(n as i64))));
        }
        let shift = if order == 0 {
            0
        } else {
            let e = i64::try_from(r.numer().clone())
                .map_err(|_| Error::SeriesShape("exponent too large"))?;
            order * e
        };
        Ok(ParamSeries::from_coeffs(shift, h))
    }

    /// `self^k` for an integer `k`, as a Laurent series.
    pub fn power_laurent(&self, k: i64) -> Result<ParamSeries> {
        if k == 0 {
            return Ok(ParamSeries::monomial(
                0,
                GradedPoly::one(),
                self.relative_precision(),
            ));
        }
        if k < 0 && self.order().is_none() {
            return Err(Error::SeriesShape(
                "negative power of a series with vanishing leading term",
            ));
        }
        self.pow_rational(&Rational::from_int(k))
    }

    /// Number of known coefficients starting at the leading term.
    pub fn relative_precision(&self) -> i64 {
        match self.order() {
            Some(o) => self.valid_to() - o,
            None => 0,
        }
    }

    /// `(1 + u)^r` by the binomial series, for `u = O(z)`.
    pub fn binomial_power(u: &ParamSeries, r: &Rational) -> Result<ParamSeries> {
        let u_order = u.order().unwrap_or(u.valid_to());
        if u_order < 1 {
            return Err(Error::SeriesShape("binomial series needs u = O(z)"));
        }
        let hi = u.valid_to().max(0);
        let mut total = ParamSeries::monomial(0, GradedPoly::one(), hi);
        let mut power = total.clone();
        let mut n = 1u32;
        loop {
            power = power.mul(u).truncate(hi);
            if power.order().is_none() {
                break;
            }
            total = total.add(&power.scale_rational(&binomial(r, n)));
            n += 1;
        }
        Ok(total.truncate(hi))
    }

    /// Substitutes `s_j ↦ values(j)` into every coefficient.
    pub fn eval_s(&self, mut values: impl FnMut(u32) -> Rational) -> ParamSeries {
        self.map_coeffs(|c| c.eval_s(&mut values))
    }
}

impl fmt::Debug for ParamSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "({c})*z^{}", self.low + i as i64)?;
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(z^{})", self.valid_to())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(n: i64, d: i64) -> GradedPoly {
        GradedPoly::constant(Rational::new(n, d))
    }

    fn s1() -> GradedPoly {
        GradedPoly::s(1)
    }

    #[test]
    fn residue_examples() {
        let inv = ParamSeries::monomial(-1, GradedPoly::one(), 5);
        assert_eq!(inv.residue().unwrap(), GradedPoly::one());
        let sq = ParamSeries::monomial(2, GradedPoly::one(), 5);
        assert!(sq.residue().unwrap().is_zero());
        let mixed = ParamSeries::monomial(-1, s1(), 5).add(&ParamSeries::z(5));
        assert_eq!(mixed.residue().unwrap(), s1());
        let high = ParamSeries::monomial(3, GradedPoly::one(), 5).shift(-10);
        assert!(ParamSeries::zero(-3).residue().is_err());
        assert!(high.residue().is_err());
        let known = ParamSeries::monomial(-7, GradedPoly::one(), 2);
        assert!(known.residue().unwrap().is_zero());
    }

    #[test]
    fn plus_part_examples() {
        let g = ParamSeries::from_coeffs(-1, alloc::vec![c(1, 1), c(1, 1), c(1, 1)]);
        let p = g.plus_part().unwrap();
        assert_eq!(p.coeff(0).unwrap(), c(1, 1));
        assert_eq!(p.coeff(1).unwrap(), c(1, 1));
        assert!(p.coeff(-1).unwrap().is_zero());
        let reg = ParamSeries::z(4);
        assert_eq!(reg.plus_part().unwrap(), reg);
        let neg = ParamSeries::monomial(-3, GradedPoly::one(), 4);
        assert!(neg.plus_part().unwrap().order().is_none());
    }

    #[test]
    fn derivative_examples() {
        let z = ParamSeries::z(6);
        let dz = z.derivative_z();
        assert_eq!(dz.coeff(0).unwrap(), GradedPoly::one());
        assert_eq!(dz.valid_to(), 5);
        let f = z.add(&ParamSeries::monomial(
            3,
            s1().scale(&Rational::new(-1, 3)),
            6,
        ));
        let df = f.derivative_z();
        assert_eq!(df.coeff(2).unwrap(), -&s1());
        assert_eq!(f.parity(), Parity::Odd);
        assert_eq!(df.parity(), Parity::Even);
        assert!(df.check_parity());
    }

    #[test]
    fn window_propagation() {
        let a = ParamSeries::z(5);
        let b = ParamSeries::monomial(-2, GradedPoly::one(), 3);
        let p = a.mul(&b);
        assert_eq!(p.low(), -1);
        assert_eq!(p.valid_to(), 3);
        assert!(p.coeff(3).is_err());
    }

    #[test]
    fn power_zero_and_negative() {
        let f = ParamSeries::z(9).add(&ParamSeries::monomial(
            3,
            s1().scale(&Rational::new(-1, 3)),
            9,
        ));
        let one = f.power_laurent(0).unwrap();
        assert_eq!(one.coeff(0).unwrap(), GradedPoly::one());
        let inv = f.power_laurent(-1).unwrap();
        assert_eq!(inv.coeff(-1).unwrap(), GradedPoly::one());
        assert_eq!(inv.coeff(1).unwrap(), s1().scale(&Rational::new(1, 3)));
        assert!(ParamSeries::zero(4).power_laurent(-1).is_err());
    }

    #[test]
    fn binomial_series_matches_integer_power() {
        let u = ParamSeries::monomial(2, s1(), 12);
        let cube = ParamSeries::binomial_power(&u, &Rational::from_int(3)).unwrap();
        let direct = u
            .add(&ParamSeries::monomial(0, GradedPoly::one(), 12))
            .power_laurent(3)
            .unwrap();
        assert_eq!(cube, direct);
    }
}
