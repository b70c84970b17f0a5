use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::GradedPoly;
use crate::arith::binomial;
use crate::{Alpha, Error, Rational, Result};

/// Constant shifts `t_i ↦ t_i + c_i/ħ`, with `c_i` polynomials in `s`.
#[derive(Clone, Debug, Default)]
pub struct TranslationShifts {
    shifts: BTreeMap<u32, GradedPoly>,
}

impl TranslationShifts {
    /// Shifts for the given family. Only `t_{2k+1}` with `k > α` may move.
    pub fn new(alpha: Alpha, shifts: BTreeMap<u32, GradedPoly>) -> Result<Self> {
        let lowest = 2 * alpha.value() as u32 + 3;
        for &i in shifts.keys() {
            if i % 2 == 0 || i < lowest {
                return Err(Error::ForbiddenShift(i));
            }
        }
        Ok(TranslationShifts::unguarded(shifts))
    }

    /// Shifts without the index guard; only odd indices are checked.
    pub fn unguarded(shifts: BTreeMap<u32, GradedPoly>) -> Self {
        let shifts = shifts
            .into_iter()
            .filter(|(i, c)| i % 2 == 1 && !c.is_zero())
            .collect();
        TranslationShifts { shifts }
    }

    pub fn get(&self, index: u32) -> Option<&GradedPoly> {
        self.shifts.get(&index)
    }

    pub fn is_empty(&self) -> bool {
        self.shifts.is_empty()
    }
}

/// Substitutes `t_i ↦ t_i + c_i/ħ` into `p`, which sits at ħ-order `order`.
///
/// Every term produced by `j` substitutions lands at order `order − j`. The
/// result maps each order to its polynomial; terms are truncated by the caps
/// of `p`.
pub fn translate_t(
    p: &GradedPoly,
    shifts: &TranslationShifts,
    order: i64,
) -> BTreeMap<i64, GradedPoly> {
    let caps = p.caps();
    let mut out: BTreeMap<i64, GradedPoly> = BTreeMap::new();
    for (m, c) in p.iter() {
        // (index, exponent, shift) for every shifted variable present in m.
        let moving: Vec<(u32, u32, &GradedPoly)> = m
            .t_part()
            .filter_map(|(k, e)| shifts.get(k).map(|c| (k, e, c)))
            .collect();
        let base = GradedPoly::term(m.clone(), c.clone()).with_caps(caps);
        expand(&moving, base, 0, order, &mut out);
    }
    out.retain(|_, q| !q.is_zero());
    out
}

fn expand(
    moving: &[(u32, u32, &GradedPoly)],
    acc: GradedPoly,
    used: i64,
    order: i64,
    out: &mut BTreeMap<i64, GradedPoly>,
) {
    if acc.is_zero() {
        return;
    }
    let Some((&(k, e, shift), rest)) = moving.split_first() else {
        let slot = out
            .entry(order - used)
            .or_insert_with(|| GradedPoly::zero().with_caps(acc.caps()));
        *slot = slot.poly_add(&acc);
        return;
    };
    let top = Rational::from_int(e as i64);
    let mut power = GradedPoly::one();
    for j in 0..=e {
        // C(e, j) t_k^{e-j} c^j
        let reduced: GradedPoly = GradedPoly::from_terms(
            acc.iter()
                .map(|(m, c)| (m.with_t_exp(k, m.t_exp(k) - j), c * binomial(&top, j))),
        )
        .with_caps(acc.caps());
        let term = reduced.mul_s_poly(&power);
        expand(rest, term, used + j as i64, order, out);
        if j < e {
            power = power.poly_mul(shift, acc.caps());
            if power.is_zero() {
                break;
            }
        }
    }
}

/// Convenience for building a shift map from `(index, value)` pairs.
pub fn shift_map<I: IntoIterator<Item = (u32, GradedPoly)>>(it: I) -> BTreeMap<u32, GradedPoly> {
    it.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{Caps, Monomial};

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn zero_shift_is_identity() {
        let p: GradedPoly = "1/6*t1^3 + 1/8*t3 + t5*t1".parse().unwrap();
        let out = translate_t(&p, &TranslationShifts::default(), 4);
        assert_eq!(out.len(), 1);
        assert_eq!(out[&4], p);
    }

    #[test]
    fn guard_rejects_low_indices() {
        let c = GradedPoly::s(1);
        assert!(TranslationShifts::new(Alpha::Psi, shift_map([(3, c.clone())])).is_err());
        assert!(TranslationShifts::new(Alpha::Psi, shift_map([(5, c.clone())])).is_ok());
        assert!(TranslationShifts::new(Alpha::Theta, shift_map([(1, c.clone())])).is_err());
        assert!(TranslationShifts::new(Alpha::Theta, shift_map([(3, c.clone())])).is_ok());
        assert!(TranslationShifts::new(Alpha::Theta, shift_map([(4, c)])).is_err());
    }

    #[test]
    fn shift_of_t3_in_theta_family() {
        // t3 ↦ t3 + s1/(3 ħ): the term t3/24 gives s1/72 one order lower.
        let p: GradedPoly = "1/6*t1^3 + 1/24*t3".parse().unwrap();
        let shifts = TranslationShifts::new(
            Alpha::Theta,
            shift_map([(3, GradedPoly::s(1).scale(&r(1, 3)))]),
        )
        .unwrap();
        let out = translate_t(&p, &shifts, 1);
        assert_eq!(out[&1], p);
        assert_eq!(out[&0], GradedPoly::s(1).scale(&r(1, 72)));
    }

    #[test]
    fn binomial_expansion_unguarded() {
        let p: GradedPoly = "1/6*t1^3".parse().unwrap();
        let c = GradedPoly::s(1);
        let out = translate_t(&p, &TranslationShifts::unguarded(shift_map([(1, c)])), 3);
        assert_eq!(out[&3].to_string(), "1/6*t1^3");
        assert_eq!(out[&2].to_string(), "1/2*t1^2*s1");
        assert_eq!(out[&1].to_string(), "1/2*t1*s1^2");
        assert_eq!(out[&0].to_string(), "1/6*s1^3");
    }

    #[test]
    fn respects_s_degree_cap() {
        let p = GradedPoly::from_terms([(Monomial::new(&[(5, 2)], &[]).unwrap(), r(1, 1))])
            .with_caps(Caps::s_degree(1));
        let out = translate_t(
            &p,
            &TranslationShifts::unguarded(shift_map([(5, GradedPoly::s(1))])),
            2,
        );
        assert_eq!(out.len(), 2);
        assert_eq!(out[&1].to_string(), "2*t5*s1");
    }
}
