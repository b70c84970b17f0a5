//! Sparse graded polynomials over ℚ in the odd variables `t_1, t_3, …` and
//! the parameters `s_1, s_2, …`, graded by `deg t_k = k`, `deg s_j = 2j`.

mod text;
mod translate;

pub use translate::{shift_map, translate_t, TranslationShifts};

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::ops::{Add, Mul, Neg, Sub};

use crate::{Error, Rational, Result};

/// Largest variable index and exponent a monomial can hold.
pub const MAX_INDEX: u32 = u16::MAX as u32;
pub const MAX_EXPONENT: u32 = u16::MAX as u32;

/// A product of powers of odd `t`-variables and `s`-variables.
///
/// Both parts are kept sorted by index with strictly positive exponents.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    t: Vec<(u16, u16)>,
    s: Vec<(u16, u16)>,
}

fn pack(what: &'static str, v: u32) -> Result<u16> {
    u16::try_from(v).map_err(|_| Error::Overflow {
        what,
        value: v as u64,
    })
}

fn bump(e: u16, by: u16) -> u16 {
    e.checked_add(by).expect("monomial exponent overflow")
}

fn merge(a: &[(u16, u16)], b: &[(u16, u16)]) -> Vec<(u16, u16)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            Ordering::Equal => {
                out.push((a[i].0, bump(a[i].1, b[j].1)));
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

fn set_exp(part: &mut Vec<(u16, u16)>, index: u16, exp: u16) {
    match part.binary_search_by_key(&index, |&(i, _)| i) {
        Ok(pos) if exp == 0 => {
            part.remove(pos);
        }
        Ok(pos) => part[pos].1 = exp,
        Err(_) if exp == 0 => {}
        Err(pos) => part.insert(pos, (index, exp)),
    }
}

fn get_exp(part: &[(u16, u16)], index: u32) -> u32 {
    if index > MAX_INDEX {
        return 0;
    }
    match part.binary_search_by_key(&(index as u16), |&(i, _)| i) {
        Ok(pos) => part[pos].1 as u32,
        Err(_) => 0,
    }
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    /// Builds a monomial from `(index, exponent)` pairs. Zero exponents are
    /// dropped and repeated indices are multiplied together.
    pub fn new(t: &[(u32, u32)], s: &[(u32, u32)]) -> Result<Self> {
        let mut m = Monomial::one();
        for &(k, e) in t {
            check_odd(k)?;
            let cur = get_exp(&m.t, k);
            set_exp(&mut m.t, pack("t index", k)?, pack("exponent", cur + e)?);
        }
        for &(j, e) in s {
            if j == 0 {
                return Err(Error::InvalidIndex {
                    what: "s variable",
                    index: 0,
                });
            }
            let cur = get_exp(&m.s, j);
            set_exp(&mut m.s, pack("s index", j)?, pack("exponent", cur + e)?);
        }
        Ok(m)
    }

    /// The single variable `t_k`. Panics unless `k` is odd and in range.
    pub fn t(k: u32) -> Self {
        Monomial::new(&[(k, 1)], &[]).expect("t index must be odd")
    }

    /// The single variable `s_j`. Panics unless `j ≥ 1` and in range.
    pub fn s(j: u32) -> Self {
        Monomial::new(&[], &[(j, 1)]).expect("s index must be positive")
    }

    pub fn is_one(&self) -> bool {
        self.t.is_empty() && self.s.is_empty()
    }

    /// Graded degree `Σ k·exp(t_k) + Σ 2j·exp(s_j)`.
    pub fn degree(&self) -> u32 {
        self.t_degree() + 2 * self.s_degree()
    }

    /// `Σ k·exp(t_k)`.
    pub fn t_degree(&self) -> u32 {
        self.t.iter().map(|&(k, e)| k as u32 * e as u32).sum()
    }

    /// Weighted `s`-degree `Σ j·exp(s_j)`, i.e. half the graded degree of
    /// the `s`-part.
    pub fn s_degree(&self) -> u32 {
        self.s.iter().map(|&(j, e)| j as u32 * e as u32).sum()
    }

    /// Number of `t`-factors counted with multiplicity.
    pub fn t_count(&self) -> u32 {
        self.t.iter().map(|&(_, e)| e as u32).sum()
    }

    pub fn t_exp(&self, k: u32) -> u32 {
        get_exp(&self.t, k)
    }

    pub fn s_exp(&self, j: u32) -> u32 {
        get_exp(&self.s, j)
    }

    pub fn t_part(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.t.iter().map(|&(k, e)| (k as u32, e as u32))
    }

    pub fn s_part(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.s.iter().map(|&(j, e)| (j as u32, e as u32))
    }

    /// The monomial with the `t`-part removed.
    pub fn s_only(&self) -> Monomial {
        Monomial {
            t: Vec::new(),
            s: self.s.clone(),
        }
    }

    /// The monomial with the `s`-part removed.
    pub fn t_only(&self) -> Monomial {
        Monomial {
            t: self.t.clone(),
            s: Vec::new(),
        }
    }

    pub fn max_t_index(&self) -> u32 {
        self.t.last().map_or(0, |&(k, _)| k as u32)
    }

    /// Replaces the exponent of `t_k`. Panics if `k` is out of range.
    pub fn with_t_exp(&self, k: u32, e: u32) -> Monomial {
        let mut m = self.clone();
        set_exp(
            &mut m.t,
            pack("t index", k).unwrap(),
            pack("exponent", e).unwrap(),
        );
        m
    }

    /// Replaces the exponent of `s_j`. Panics if `j` is out of range.
    pub fn with_s_exp(&self, j: u32, e: u32) -> Monomial {
        let mut m = self.clone();
        set_exp(
            &mut m.s,
            pack("s index", j).unwrap(),
            pack("exponent", e).unwrap(),
        );
        m
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            t: merge(&self.t, &other.t),
            s: merge(&self.s, &other.s),
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.t.cmp(&other.t))
            .then_with(|| self.s.cmp(&other.s))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn check_odd(k: u32) -> Result<()> {
    if k.is_multiple_of(2) {
        Err(Error::InvalidIndex {
            what: "odd t variable",
            index: k as i64,
        })
    } else {
        Ok(())
    }
}

/// Truncation bounds carried by a polynomial. `None` means unbounded.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Caps {
    /// Bound on the graded degree.
    pub degree: Option<u32>,
    /// Bound on the weighted `s`-degree.
    pub s_degree: Option<u32>,
}

fn min_opt(a: Option<u32>, b: Option<u32>) -> Option<u32> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

impl Caps {
    pub const NONE: Caps = Caps {
        degree: None,
        s_degree: None,
    };

    pub fn s_degree(d: u32) -> Caps {
        Caps {
            degree: None,
            s_degree: Some(d),
        }
    }

    pub fn degree(d: u32) -> Caps {
        Caps {
            degree: Some(d),
            s_degree: None,
        }
    }

    pub fn meet(self, other: Caps) -> Caps {
        Caps {
            degree: min_opt(self.degree, other.degree),
            s_degree: min_opt(self.s_degree, other.s_degree),
        }
    }

    pub fn admits(&self, m: &Monomial) -> bool {
        self.degree.is_none_or(|d| m.degree() <= d)
            && self.s_degree.is_none_or(|d| m.s_degree() <= d)
    }
}

/// A polynomial as a sorted map from monomials to nonzero coefficients.
///
/// Equality compares terms only; the caps are truncation metadata.
#[derive(Clone, Default)]
pub struct GradedPoly {
    terms: BTreeMap<Monomial, Rational>,
    caps: Caps,
}

impl GradedPoly {
    pub fn zero() -> Self {
        GradedPoly::default()
    }

    pub fn one() -> Self {
        GradedPoly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        GradedPoly::term(Monomial::one(), c)
    }

    pub fn term(m: Monomial, c: Rational) -> Self {
        let mut p = GradedPoly::zero();
        p.add_term(m, c);
        p
    }

    /// `t_k`.
    pub fn t(k: u32) -> Self {
        GradedPoly::term(Monomial::t(k), Rational::one())
    }

    /// `s_j`.
    pub fn s(j: u32) -> Self {
        GradedPoly::term(Monomial::s(j), Rational::one())
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rational)>>(terms: I) -> Self {
        let mut p = GradedPoly::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    /// Sets the caps and drops every monomial they exclude.
    pub fn with_caps(mut self, caps: Caps) -> Self {
        self.caps = caps;
        self.terms.retain(|m, _| caps.admits(m));
        self
    }

    pub fn caps(&self) -> Caps {
        self.caps
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical (graded-lex) order.
    pub fn iter(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Monomial, Rational)> {
        self.terms.into_iter()
    }

    /// Adds `c·m` in place, respecting the caps and pruning zeros.
    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() || !self.caps.admits(&m) {
            return;
        }
        match self.terms.entry(m) {
            alloc::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Adds `factor·other` in place.
    pub fn add_scaled(&mut self, other: &GradedPoly, factor: &Rational) {
        if factor.is_zero() {
            return;
        }
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c * factor);
        }
    }

    /// Exact coefficient of `m`, zero when absent.
    pub fn coeff_of(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// The constant term.
    pub fn constant_term(&self) -> Rational {
        self.coeff_of(&Monomial::one())
    }

    pub fn scale(&self, factor: &Rational) -> GradedPoly {
        let mut out = GradedPoly {
            terms: BTreeMap::new(),
            caps: self.caps,
        };
        out.add_scaled(self, factor);
        out
    }

    /// Sum; the caps of the result are the meet of the operands' caps.
    pub fn poly_add(&self, other: &GradedPoly) -> GradedPoly {
        let caps = self.caps.meet(other.caps);
        let mut out = self.clone().with_caps(caps);
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    /// Product truncated to the meet of both operands' caps and `extra`.
    pub fn poly_mul(&self, other: &GradedPoly, extra: Caps) -> GradedPoly {
        let caps = self.caps.meet(other.caps).meet(extra);
        let mut out = GradedPoly {
            terms: BTreeMap::new(),
            caps,
        };
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                if caps.admits(&m) {
                    out.add_term(m, ca * cb);
                }
            }
        }
        out
    }

    /// Multiplies every term by the monomial `m` with coefficient `c`.
    pub fn mul_monomial(&self, m: &Monomial, c: &Rational) -> GradedPoly {
        let mut out = GradedPoly {
            terms: BTreeMap::new(),
            caps: self.caps,
        };
        for (ma, ca) in &self.terms {
            out.add_term(ma.mul(m), ca * c);
        }
        out
    }

    /// `∂p/∂t_k`.
    pub fn d_dt(&self, k: u32) -> Result<GradedPoly> {
        check_odd(k)?;
        let mut out = GradedPoly {
            terms: BTreeMap::new(),
            caps: self.caps,
        };
        for (m, c) in &self.terms {
            let e = m.t_exp(k);
            if e > 0 {
                out.add_term(m.with_t_exp(k, e - 1), c * Rational::from_int(e as i64));
            }
        }
        Ok(out)
    }

    /// `k·t_k·p`, the action of the creation mode `J_{-k}`.
    pub fn mul_t(&self, k: u32) -> Result<GradedPoly> {
        check_odd(k)?;
        let factor = Rational::from_int(k as i64);
        Ok(self.mul_monomial(&Monomial::t(k), &factor))
    }

    /// Drops every term above the given caps and records them.
    pub fn truncate(&self, caps: Caps) -> GradedPoly {
        self.clone().with_caps(self.caps.meet(caps))
    }

    /// Whether every monomial has graded degree exactly `d`.
    pub fn is_homogeneous(&self, d: u32) -> bool {
        self.terms.keys().all(|m| m.degree() == d)
    }

    /// Whether every monomial has weighted `s`-degree exactly `d`.
    pub fn is_s_homogeneous(&self, d: u32) -> bool {
        self.terms.keys().all(|m| m.s_degree() == d)
    }

    pub fn max_t_index(&self) -> u32 {
        self.terms
            .keys()
            .map(Monomial::max_t_index)
            .max()
            .unwrap_or(0)
    }

    pub fn max_s_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::s_degree).max().unwrap_or(0)
    }

    /// Keeps only the terms satisfying `pred`.
    pub fn filter(&self, mut pred: impl FnMut(&Monomial) -> bool) -> GradedPoly {
        GradedPoly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| pred(m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
            caps: self.caps,
        }
    }

    /// Substitutes `s_j ↦ values(j)` for every `s`-variable, leaving `t` alone.
    pub fn eval_s(&self, mut values: impl FnMut(u32) -> Rational) -> GradedPoly {
        let mut out = GradedPoly {
            terms: BTreeMap::new(),
            caps: Caps {
                s_degree: None,
                ..self.caps
            },
        };
        for (m, c) in &self.terms {
            let mut c = c.clone();
            for (j, e) in m.s_part() {
                c = c * values(j).pow(e as i32);
                if c.is_zero() {
                    break;
                }
            }
            out.add_term(m.t_only(), c);
        }
        out
    }

    /// Multiplies by a polynomial in `s` only (no caps of its own beyond
    /// those of `self`).
    pub fn mul_s_poly(&self, coeff: &GradedPoly) -> GradedPoly {
        let mut out = GradedPoly {
            terms: BTreeMap::new(),
            caps: self.caps,
        };
        for (mc, cc) in &coeff.terms {
            for (m, c) in &self.terms {
                let prod = m.mul(mc);
                if out.caps.admits(&prod) {
                    out.add_term(prod, c * cc);
                }
            }
        }
        out
    }
}

impl PartialEq for GradedPoly {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl Eq for GradedPoly {}

impl From<Monomial> for GradedPoly {
    fn from(m: Monomial) -> Self {
        GradedPoly::term(m, Rational::one())
    }
}

impl Add for &GradedPoly {
    type Output = GradedPoly;
    fn add(self, rhs: &GradedPoly) -> GradedPoly {
        self.poly_add(rhs)
    }
}

impl Sub for &GradedPoly {
    type Output = GradedPoly;
    fn sub(self, rhs: &GradedPoly) -> GradedPoly {
        let mut out = self.clone().with_caps(self.caps.meet(rhs.caps));
        out.add_scaled(rhs, &Rational::from_int(-1));
        out
    }
}

impl Neg for &GradedPoly {
    type Output = GradedPoly;
    fn neg(self) -> GradedPoly {
        self.scale(&Rational::from_int(-1))
    }
}

impl Mul for &GradedPoly {
    type Output = GradedPoly;
    fn mul(self, rhs: &GradedPoly) -> GradedPoly {
        self.poly_mul(rhs, Caps::NONE)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn t(k: u32) -> GradedPoly {
        GradedPoly::t(k)
    }

    fn s(j: u32) -> GradedPoly {
        GradedPoly::s(j)
    }

    #[test]
    fn addition_examples() {
        assert!((&t(1) + &(-&t(1))).is_zero());
        assert_eq!(
            &t(1).scale(&r(1, 8)) + &t(1).scale(&r(1, 8)),
            t(1).scale(&r(1, 4))
        );
        let a = &s(1) * &t(3);
        let b = &t(3) * &s(1);
        let sum = &a + &b;
        assert_eq!(sum.len(), 1);
        assert_eq!(
            sum.coeff_of(&Monomial::new(&[(3, 1)], &[(1, 1)]).unwrap()),
            r(2, 1)
        );
    }

    #[test]
    fn multiplication_examples() {
        let sq = &t(1) * &t(1);
        assert_eq!(sq.iter().next().unwrap().0.degree(), 2);
        let st = &s(1) * &t(3);
        assert_eq!(st.iter().next().unwrap().0.degree(), 5);
        let capped = (&t(1) * &t(1)).poly_mul(&t(3), Caps::degree(3));
        assert!(capped.is_zero());
    }

    #[test]
    fn add_uses_meet_of_caps() {
        let a = (&t(1) * &t(3)).with_caps(Caps::degree(10));
        let b = t(1).with_caps(Caps::degree(2));
        let sum = &a + &b;
        assert_eq!(sum.caps().degree, Some(2));
        assert_eq!(sum, t(1).with_caps(Caps::degree(2)));
    }

    #[test]
    fn derivative_examples() {
        let cube = (&(&t(1) * &t(1)) * &t(1)).scale(&r(1, 6));
        assert_eq!(cube.d_dt(1).unwrap(), (&t(1) * &t(1)).scale(&r(1, 2)));
        assert!(t(1).d_dt(3).unwrap().is_zero());
        let mixed = &(&s(1) * &t(1)) * &t(3);
        assert_eq!(mixed.d_dt(1).unwrap(), &s(1) * &t(3));
        assert!(t(1).d_dt(2).is_err());
    }

    #[test]
    fn creation_examples() {
        assert_eq!(GradedPoly::one().mul_t(1).unwrap(), t(1));
        assert_eq!(GradedPoly::one().mul_t(3).unwrap(), t(3).scale(&r(3, 1)));
        assert_eq!(t(1).mul_t(1).unwrap(), &t(1) * &t(1));
        assert!(t(1).mul_t(4).is_err());
    }

    #[test]
    fn coefficient_lookup() {
        let p = &(&(&t(1) * &t(1)) * &t(1)).scale(&r(1, 6)) + &t(3).scale(&r(1, 24));
        assert_eq!(p.coeff_of(&Monomial::t(3)), r(1, 24));
        assert_eq!(
            GradedPoly::zero().coeff_of(&Monomial::t(1)),
            Rational::zero()
        );
        let st = &s(1) * &t(1);
        assert_eq!(
            st.coeff_of(&Monomial::new(&[(1, 1)], &[(1, 1)]).unwrap()),
            r(1, 1)
        );
    }

    #[test]
    fn monomial_validation() {
        assert!(Monomial::new(&[(2, 1)], &[]).is_err());
        assert!(Monomial::new(&[], &[(0, 1)]).is_err());
        assert!(Monomial::new(&[(201, 64)], &[(201, 64)]).is_ok());
        assert!(matches!(
            Monomial::new(&[(1, 70_000)], &[]),
            Err(Error::Overflow { .. })
        ));
        let m = Monomial::new(&[(3, 1), (1, 2), (3, 1)], &[(2, 1)]).unwrap();
        assert_eq!(m.t_exp(3), 2);
        assert_eq!(m.degree(), 2 + 6 + 4);
        assert_eq!(m.s_degree(), 2);
    }

    #[test]
    #[should_panic(expected = "overflow")]
    fn exponent_overflow_is_fatal() {
        let m = Monomial::new(&[(1, 60_000)], &[]).unwrap();
        let _ = m.mul(&m);
    }

    fn arb_poly() -> impl Strategy<Value = GradedPoly> {
        proptest::collection::vec((0u32..3, 0u32..3, 0u32..2, 0u32..2, -5i64..5), 0..6).prop_map(
            |v| {
                GradedPoly::from_terms(v.into_iter().map(|(a, b, c, d, n)| {
                    (
                        Monomial::new(&[(1, a), (3, b)], &[(1, c), (2, d)]).unwrap(),
                        Rational::new(n, 3),
                    )
                }))
            },
        )
    }

    proptest! {
        #[test]
        fn mul_commutative_associative(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            let cap = Caps::degree(12);
            prop_assert_eq!(a.poly_mul(&b, cap), b.poly_mul(&a, cap));
            prop_assert_eq!(
                a.poly_mul(&b, cap).poly_mul(&c, cap),
                a.poly_mul(&b.poly_mul(&c, cap), cap)
            );
        }

        #[test]
        fn heisenberg_commutator(p in arb_poly(), k in prop_oneof![Just(1u32), Just(3), Just(5)]) {
            // [J_k, J_{-k}] = k
            let lhs = &p.mul_t(k).unwrap().d_dt(k).unwrap() - &p.d_dt(k).unwrap().mul_t(k).unwrap();
            prop_assert_eq!(lhs, p.scale(&Rational::from_int(k as i64)));
        }
    }
}
