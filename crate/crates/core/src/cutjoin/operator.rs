use alloc::vec;
use alloc::vec::Vec;

use super::coeffs::{CoefficientTable, SeriesData};
use super::terms::{merge_terms, normal_order, OperatorTerm};
use super::{apply_j, apply_lo};
use crate::{Alpha, Caps, Error, GradedPoly, Rational, Result};

/// `coeff · J_current · L^o_virasoro`, kept factored; `L^o` is expanded
/// against the argument when the term is applied.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactoredTerm {
    pub coeff: GradedPoly,
    pub current: i64,
    pub virasoro: i64,
}

/// Summation ranges that can contribute at a given recursion level.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TruncationBounds {
    /// Largest `k` in the `A_{k,m} J_{2m−2k−1} L^o_{2k−2α}` sum.
    pub max_k: i64,
    /// Largest `m` in the same sum.
    pub max_m: i64,
    /// Largest `k` in the `C_k J_{2k+1}` sum.
    pub max_c: i64,
}

/// Bounds for producing level `level` from level `level − 1`:
/// `k ≤ ⌊w(p−1)/2⌋ + α`, `m ≤ ⌊(w(p−1)+1)/2⌋ + α`, `k_C ≤ ⌊(w(p−1)−1)/2⌋`
/// with `w = 2α + 1`.
pub fn truncation_bounds(alpha: Alpha, level: usize) -> TruncationBounds {
    let a = alpha.value();
    let d = alpha.weight() * (level as i64 - 1);
    TruncationBounds {
        max_k: d.div_euclid(2) + a,
        max_m: (d + 1).div_euclid(2) + a,
        max_c: (d - 1).div_euclid(2),
    }
}

/// The deformed cut-and-join operator in residue-coefficient form,
///
/// `W_α(s) = (1/(2α+1)) (Σ A_{k,m} J_{2m−2k−1} L^o_{2k−2α} + Σ C_k J_{2k+1})`,
///
/// restricted to the terms that can act on inputs up to `level − 1`.
#[derive(Clone, Debug)]
pub struct CutJoinOperator {
    pub alpha: Alpha,
    pub level: usize,
    pub caps: Caps,
    pub factored: Vec<FactoredTerm>,
    /// `(coeff, j)` for `coeff · J_j`.
    pub linear: Vec<(GradedPoly, i64)>,
}

/// Default `z`-truncation for an operator valid through `level`.
pub fn default_z_max(alpha: Alpha, level: usize) -> i64 {
    2 * alpha.weight() * level as i64 + 4 * alpha.value() + 10
}

/// Assembles the operator that produces every level up to `level`, exact
/// through weighted `s`-degree `s_degree`.
pub fn assemble_w(alpha: Alpha, level: usize, s_degree: u32) -> Result<CutJoinOperator> {
    let caps = Caps::s_degree(s_degree);
    let data = SeriesData::new(alpha, default_z_max(alpha, level), caps)?;
    CutJoinOperator::from_series(&data, level)
}

impl CutJoinOperator {
    pub fn from_series(data: &SeriesData, level: usize) -> Result<Self> {
        let level = level.max(1);
        let b = truncation_bounds(data.alpha, level);
        let cap = data.caps.s_degree.map_or(i64::MAX, |d| d as i64);
        let max_m = b.max_m.min(cap);
        let max_c = b.max_c.min(cap - data.alpha.value() - 1);
        let table = CoefficientTable::compute(data, b.max_k, max_m, max_c)?;
        Ok(CutJoinOperator::from_table(&table, level))
    }

    pub fn from_table(table: &CoefficientTable, level: usize) -> Self {
        let alpha = table.alpha;
        let a = alpha.value();
        let norm = Rational::new(1, alpha.weight());
        let factored = table
            .a
            .iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(&(k, m), c)| FactoredTerm {
                coeff: c.scale(&norm),
                current: 2 * m - 2 * k - 1,
                virasoro: 2 * k - 2 * a,
            })
            .collect();
        let linear = table
            .c
            .iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(&k, c)| (c.scale(&norm), 2 * k + 1))
            .collect();
        CutJoinOperator {
            alpha,
            level,
            caps: table.caps,
            factored,
            linear,
        }
    }

    /// Largest input degree the operator is complete for.
    pub fn max_input_degree(&self) -> u32 {
        (self.alpha.weight() * (self.level as i64 - 1)).max(0) as u32
    }

    /// `W_α(s)·p`, truncated to the operator's caps.
    pub fn apply(&self, p: &GradedPoly) -> Result<GradedPoly> {
        let max = self.max_input_degree();
        if let Some(deg) = p.iter().map(|(m, _)| m.degree()).max() {
            if deg > max {
                return Err(Error::OperatorValidity {
                    degree: deg,
                    max_degree: max,
                });
            }
        }
        let caps = p.caps().meet(self.caps);
        let p = p.truncate(caps);
        let mut out = GradedPoly::zero().with_caps(caps);
        let mut lo_cache: Vec<(i64, GradedPoly)> = Vec::new();
        for term in &self.factored {
            let lo = match lo_cache.iter().find(|(n, _)| *n == term.virasoro) {
                Some((_, v)) => v.clone(),
                None => {
                    let v = apply_lo(term.virasoro, &p)?;
                    lo_cache.push((term.virasoro, v.clone()));
                    v
                }
            };
            if lo.is_zero() {
                continue;
            }
            let img = apply_j(term.current, &lo)?;
            out = out.poly_add(&img.mul_s_poly(&term.coeff));
        }
        for (c, j) in &self.linear {
            let img = apply_j(*j, &p)?;
            out = out.poly_add(&img.mul_s_poly(c));
        }
        Ok(out)
    }

    /// Expands every term into normal-ordered monomial operators, keeping
    /// those whose mode indices are all at most `max_index` in absolute
    /// value. Terms are merged and sorted.
    pub fn expand_terms(&self, max_index: u32) -> Vec<OperatorTerm> {
        let bound = max_index as i64;
        let mut out = Vec::new();
        let half = GradedPoly::constant(Rational::new(1, 2));
        for term in &self.factored {
            if term.current.abs() > bound {
                continue;
            }
            let coeff = term.coeff.poly_mul(&half, Caps::NONE);
            let mut a = -bound - (bound + 1) % 2;
            while a <= bound {
                let b = term.virasoro - a;
                if b.abs() <= bound && b % 2 != 0 && a % 2 != 0 {
                    let word = vec![term.current, a.min(b), a.max(b)];
                    out.extend(normal_order(&word, &coeff));
                }
                a += 1;
            }
        }
        for (c, j) in &self.linear {
            if j.abs() <= bound {
                out.extend(normal_order(&[*j], c));
            }
        }
        merge_terms(out)
    }
}

#[cfg(test)]
mod tests {
    use super::super::terms::{apply_terms, undeformed_terms};
    use super::*;

    #[test]
    fn truncation_bound_values() {
        let b = truncation_bounds(Alpha::Theta, 1);
        assert_eq!((b.max_k, b.max_m, b.max_c), (0, 0, -1));
        let b = truncation_bounds(Alpha::Psi, 1);
        assert_eq!((b.max_k, b.max_m, b.max_c), (1, 1, -1));
        let b = truncation_bounds(Alpha::Psi, 3);
        assert_eq!((b.max_k, b.max_m, b.max_c), (4, 4, 2));
    }

    #[test]
    fn vacuum_action() {
        let w0 = assemble_w(Alpha::Theta, 1, 3).unwrap();
        assert_eq!(w0.apply(&GradedPoly::one()).unwrap().to_string(), "1/8*t1");
        let w1 = assemble_w(Alpha::Psi, 1, 0).unwrap();
        assert_eq!(
            w1.apply(&GradedPoly::one()).unwrap().to_string(),
            "1/6*t1^3 + 1/8*t3"
        );
        let w1 = assemble_w(Alpha::Psi, 1, 3).unwrap();
        assert_eq!(
            w1.apply(&GradedPoly::one()).unwrap().to_string(),
            "1/24*t1*s1 + 1/6*t1^3 + 1/8*t3"
        );
    }

    #[test]
    fn s_linear_term_at_second_level() {
        let w = assemble_w(Alpha::Theta, 2, 1).unwrap();
        assert!(w
            .linear
            .iter()
            .any(|(c, j)| *j == 1 && c.to_string() == "1/24*s1"));
    }

    #[test]
    fn undeformed_expansion_matches_differential_form() {
        for alpha in Alpha::ALL {
            let w = assemble_w(alpha, 6, 0).unwrap();
            assert_eq!(
                w.expand_terms(3),
                undeformed_terms(alpha, 3),
                "alpha {alpha}"
            );
        }
    }

    #[test]
    fn undeformed_action_matches_differential_form() {
        let samples = [
            "1", "t1", "t1^2", "t3", "t1^3", "t1*t3", "t5", "t1^4", "t1^2*t3", "t3^2", "t1*t5",
            "t7",
        ];
        for alpha in Alpha::ALL {
            let w = assemble_w(alpha, 5, 0).unwrap();
            let terms = undeformed_terms(alpha, 40);
            for src in samples {
                let p: GradedPoly = src.parse().unwrap();
                if p.iter().any(|(m, _)| m.degree() > w.max_input_degree()) {
                    continue;
                }
                let lhs = w.apply(&p).unwrap();
                let rhs = apply_terms(&terms, &p, Caps::NONE).unwrap();
                assert_eq!(lhs, rhs, "alpha {alpha} on {src}");
            }
        }
    }

    #[test]
    fn rejects_inputs_beyond_validity() {
        let w = assemble_w(Alpha::Theta, 2, 0).unwrap();
        let too_big: GradedPoly = "t1^2".parse().unwrap();
        assert!(matches!(
            w.apply(&too_big),
            Err(Error::OperatorValidity { .. })
        ));
    }

    #[test]
    fn linearity() {
        let w = assemble_w(Alpha::Psi, 3, 2).unwrap();
        let a: GradedPoly = "t1^2*t3 + 2*s1*t1 + t5".parse().unwrap();
        let b: GradedPoly = "t1^3 - t3*s1".parse().unwrap();
        let lhs = w.apply(&(&a + &b)).unwrap();
        let rhs = &w.apply(&a).unwrap() + &w.apply(&b).unwrap();
        assert_eq!(lhs, rhs);
    }
}
