//! The κ₁ specialization `s_k = 2π² δ_{k,1}`, (super) Weil–Petersson volume
//! polynomials, and the closed forms of the operator coefficients at
//! `s_k = s δ_{k,1}`.

mod closed;

pub use closed::{
    check_coefficient_closed_forms, check_f0_closed_form, check_f1_closed_form, closed_form_coeffs,
    specialize_q, ClosedForm, ClosedFormReport, QPoly,
};

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::arith::{double_factorial, factorial};
use crate::recursion::{free_energy, TauTable};
use crate::{Alpha, Error, GradedPoly, Monomial, Rational, Result};

/// A polynomial in the formal symbol `π²` with `t`-polynomial coefficients,
/// keyed by the power of `π²`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Pi2Poly {
    pub terms: BTreeMap<u32, GradedPoly>,
}

/// Sets `s_1 = 2π²` and every other `s_k` to zero.
pub fn specialize_kappa1(p: &GradedPoly) -> Pi2Poly {
    let mut terms: BTreeMap<u32, GradedPoly> = BTreeMap::new();
    for (m, c) in p.iter() {
        if m.s_part().any(|(j, _)| j != 1) {
            continue;
        }
        let e = m.s_exp(1);
        let c = c * Rational::from_int(2).pow(e as i32);
        terms.entry(e).or_default().add_term(m.t_only(), c);
    }
    terms.retain(|_, v| !v.is_zero());
    Pi2Poly { terms }
}

impl fmt::Display for Pi2Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (e, p) in &self.terms {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match e {
                0 => write!(f, "({p})")?,
                1 => write!(f, "pi2*({p})")?,
                _ => write!(f, "pi2^{e}*({p})")?,
            }
        }
        Ok(())
    }
}

/// `V^α_{g,n}(L_1, …, L_n)` as a polynomial in `π²` and `L_i²`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VolumePolynomial {
    pub alpha: Alpha,
    pub genus: u32,
    pub n: u32,
    /// `(π² exponent, [exponent of L_i²])` to coefficient.
    pub terms: BTreeMap<(u32, Vec<u32>), Rational>,
}

impl VolumePolynomial {
    pub fn coeff(&self, pi2: u32, l2: &[u32]) -> Rational {
        self.terms
            .get(&(pi2, l2.to_vec()))
            .cloned()
            .unwrap_or_default()
    }

    /// Value at `π² = 0`, `L = 0`.
    pub fn constant_term(&self) -> Rational {
        self.coeff(0, &vec![0; self.n as usize])
    }

    /// Invariant under every permutation of the boundary lengths.
    pub fn is_symmetric(&self) -> bool {
        self.terms.iter().all(|((e, ls), c)| {
            let mut perm = ls.clone();
            perm.sort_unstable();
            let mut ok = true;
            for_each_distinct_permutation(&mut perm, |p| ok &= &self.coeff(*e, p) == c);
            ok
        })
    }

    /// Every term has `π²`-degree plus `L²`-degree equal to `d`.
    pub fn is_homogeneous(&self, d: u32) -> bool {
        self.terms
            .keys()
            .all(|(e, ls)| e + ls.iter().sum::<u32>() == d)
    }

    /// Complex dimension of the integrand: `3g−3+n` for ψ classes and
    /// `g−1` once the Θ class is inserted.
    pub fn expected_degree(&self) -> u32 {
        let (g, n) = (self.genus as i64, self.n as i64);
        let d = match self.alpha {
            Alpha::Psi => 3 * g - 3 + n,
            Alpha::Theta => g - 1,
        };
        d.max(0) as u32
    }
}

impl fmt::Display for VolumePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut keys: Vec<_> = self.terms.iter().collect();
        keys.sort_by(|(a, _), (b, _)| {
            let da = a.0 + a.1.iter().sum::<u32>();
            let db = b.0 + b.1.iter().sum::<u32>();
            db.cmp(&da)
                .then_with(|| b.1.cmp(&a.1))
                .then_with(|| a.0.cmp(&b.0))
        });
        for (i, ((e, ls), c)) in keys.into_iter().enumerate() {
            let mut factors: Vec<alloc::string::String> = Vec::new();
            for (j, &l) in ls.iter().enumerate() {
                match l {
                    0 => {}
                    1 => factors.push(alloc::format!("L{}sq", j + 1)),
                    _ => factors.push(alloc::format!("L{}sq^{l}", j + 1)),
                }
            }
            match e {
                0 => {}
                1 => factors.push("pi2".into()),
                _ => factors.push(alloc::format!("pi2^{e}")),
            }
            let neg = c.is_negative();
            if i > 0 {
                f.write_str(if neg { " - " } else { " + " })?;
            } else if neg {
                f.write_str("-")?;
            }
            let a = c.abs();
            if factors.is_empty() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{a}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

fn for_each_distinct_permutation(v: &mut [u32], mut visit: impl FnMut(&[u32])) {
    v.sort_unstable();
    loop {
        visit(v);
        let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
            return;
        };
        let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).unwrap();
        v.swap(i - 1, j);
        v[i..].reverse();
    }
}

/// Level of `(g, n)`, or an error for unstable pairs.
pub fn volume_level(genus: u32, n: u32) -> Result<usize> {
    let p = 2 * genus as i64 - 2 + n as i64;
    if n == 0 || p <= 0 {
        return Err(Error::InvalidIndex {
            what: "unstable (g, n)",
            index: p,
        });
    }
    Ok(p as usize)
}

/// `V^α_{g,n} = Σ ⟨κ_1^m τ_{a_1}⋯τ_{a_n}⟩ (2π²)^m/m! ∏ L_i^{2a_i}/(2^{a_i} a_i!)`,
/// summed over ordered tuples `(a_1, …, a_n)`.
///
/// `table` must reach level `2g−2+n` and `s`-degree `dim`; the κ₁ insertions
/// beyond that cap would be silently lost otherwise.
pub fn volume_polynomial(table: &TauTable, genus: u32, n: u32) -> Result<VolumePolynomial> {
    let alpha = table.alpha();
    let level = volume_level(genus, n)?;
    if level > table.max_level() {
        return Err(Error::LevelNotComputed {
            requested: level,
            available: table.max_level(),
        });
    }
    let mut vol = VolumePolynomial {
        alpha,
        genus,
        n,
        terms: BTreeMap::new(),
    };
    let need = vol.expected_degree();
    if need > table.s_degree_cap() {
        return Err(Error::SDegreeNotComputed {
            requested: need,
            available: table.s_degree_cap(),
        });
    }
    let f = free_energy(&table.levels()[..=level])
        .pop()
        .unwrap_or_default();
    for (e, poly) in specialize_kappa1(&f).terms {
        for (m, c) in poly.iter() {
            if m.t_count() != n {
                continue;
            }
            add_symmetrized(&mut vol, e, m, c)?;
        }
    }
    vol.terms.retain(|_, c| !c.is_zero());
    Ok(vol)
}

/// Adds the contribution of `c·(2π²)^e·∏ t_{2a+1}` spread over all
/// orderings of the insertions.
fn add_symmetrized(vol: &mut VolumePolynomial, e: u32, m: &Monomial, c: &Rational) -> Result<()> {
    let mut a: Vec<u32> = Vec::new();
    let mut weight = c.clone();
    for (idx, mult) in m.t_part() {
        let ai = (idx - 1) / 2;
        weight *= &factorial(mult as u64);
        for _ in 0..mult {
            a.push(ai);
            weight = weight / double_factorial(idx as i64)?;
        }
    }
    for_each_distinct_permutation(&mut a, |perm| {
        let mut coeff = weight.clone();
        for &ai in perm {
            coeff = coeff / (Rational::from_int(2).pow(ai as i32) * factorial(ai as u64));
        }
        *vol.terms.entry((e, perm.to_vec())).or_default() += &coeff;
    });
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kappa1_substitution() {
        let p: GradedPoly = "s2*t1 + s1*t1 + s1^2".parse().unwrap();
        assert_eq!(specialize_kappa1(&p).to_string(), "pi2*(2*t1) + pi2^2*(4)");
    }

    #[test]
    fn one_bordered_torus() {
        let t = TauTable::compute(Alpha::Psi, 1, 1).unwrap();
        let v = volume_polynomial(&t, 1, 1).unwrap();
        assert_eq!(v.to_string(), "1/48*L1sq + 1/12*pi2");
    }

    #[test]
    fn pants_and_four_holed_sphere() {
        let t = TauTable::compute(Alpha::Psi, 2, 1).unwrap();
        assert_eq!(volume_polynomial(&t, 0, 3).unwrap().to_string(), "1");
        let v = volume_polynomial(&t, 0, 4).unwrap();
        assert_eq!(
            v.to_string(),
            "1/2*L1sq + 1/2*L2sq + 1/2*L3sq + 1/2*L4sq + 2*pi2"
        );
        assert!(v.is_symmetric());
    }

    #[test]
    fn super_volume_of_one_bordered_torus() {
        let t = TauTable::compute(Alpha::Theta, 1, 0).unwrap();
        assert_eq!(volume_polynomial(&t, 1, 1).unwrap().to_string(), "1/8");
    }

    #[test]
    fn permutations_are_distinct() {
        let mut seen = Vec::new();
        for_each_distinct_permutation(&mut [1, 0, 1], |p| seen.push(p.to_vec()));
        assert_eq!(seen, vec![vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0]]);
    }

    #[test]
    fn unstable_pairs_rejected() {
        let t = TauTable::compute(Alpha::Psi, 2, 1).unwrap();
        assert!(volume_polynomial(&t, 0, 2).is_err());
    }
}
