use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::{Alpha, Caps, GradedPoly, Monomial, Rational, Result};

/// One normal-ordered summand `coeff · Π J_{−c} · Π J_a`: the annihilators
/// `J_a = ∂/∂t_a` act first, then the creators multiply by `c·t_c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperatorTerm {
    pub coeff: GradedPoly,
    pub creations: Vec<u32>,
    pub annihilations: Vec<u32>,
}

impl OperatorTerm {
    pub fn new(coeff: GradedPoly, mut creations: Vec<u32>, mut annihilations: Vec<u32>) -> Self {
        creations.sort_unstable();
        annihilations.sort_unstable();
        OperatorTerm {
            coeff,
            creations,
            annihilations,
        }
    }

    pub fn apply(&self, p: &GradedPoly) -> Result<GradedPoly> {
        let mut cur = p.clone();
        for &a in &self.annihilations {
            cur = cur.d_dt(a)?;
        }
        if cur.is_zero() {
            return Ok(cur);
        }
        let mut factor = Rational::one();
        let mut mono = Monomial::one();
        for &c in &self.creations {
            factor = factor * Rational::from_int(c as i64);
            mono = mono.mul(&Monomial::t(c));
        }
        Ok(cur.mul_monomial(&mono, &factor).mul_s_poly(&self.coeff))
    }

    pub fn max_index(&self) -> u32 {
        self.creations
            .iter()
            .chain(&self.annihilations)
            .copied()
            .max()
            .unwrap_or(0)
    }
}

/// Rewrites the word `J_{w_0} J_{w_1} ⋯` (rightmost acts first) as a sum of
/// normal-ordered terms using `[J_a, J_b] = a δ_{a,−b}`.
pub fn normal_order(word: &[i64], coeff: &GradedPoly) -> Vec<OperatorTerm> {
    let mut pending = vec![(Rational::one(), word.to_vec())];
    let mut done = Vec::new();
    while let Some((c, w)) = pending.pop() {
        if w.contains(&0) {
            continue;
        }
        match w.windows(2).position(|p| p[0] > 0 && p[1] < 0) {
            Some(i) => {
                let (a, b) = (w[i], w[i + 1]);
                let mut swapped = w.clone();
                swapped.swap(i, i + 1);
                pending.push((c.clone(), swapped));
                if a == -b {
                    let mut contracted = w.clone();
                    contracted.drain(i..i + 2);
                    pending.push((c * Rational::from_int(a), contracted));
                }
            }
            None => {
                let creations = w.iter().filter(|&&x| x < 0).map(|&x| (-x) as u32).collect();
                let annihilations = w.iter().filter(|&&x| x > 0).map(|&x| x as u32).collect();
                done.push(OperatorTerm::new(coeff.scale(&c), creations, annihilations));
            }
        }
    }
    merge_terms(done)
}

/// Collects terms with equal mode content and drops zeros. The output is
/// sorted by (creations, annihilations).
pub fn merge_terms(terms: Vec<OperatorTerm>) -> Vec<OperatorTerm> {
    let mut acc: BTreeMap<(Vec<u32>, Vec<u32>), GradedPoly> = BTreeMap::new();
    for t in terms {
        let slot = acc
            .entry((t.creations, t.annihilations))
            .or_insert_with(GradedPoly::zero);
        *slot = slot.poly_add(&t.coeff);
    }
    acc.into_iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|((cr, an), c)| OperatorTerm {
            coeff: c,
            creations: cr,
            annihilations: an,
        })
        .collect()
}

/// The undeformed cut-and-join operator written out term by term from its
/// differential-operator form, keeping terms whose indices are all at most
/// `max_index`.
pub fn undeformed_terms(alpha: Alpha, max_index: u32) -> Vec<OperatorTerm> {
    let shift = 2 * alpha.value() as u32;
    let third = Rational::new(1, alpha.weight());
    let c = |r: Rational| GradedPoly::constant(r * &third);
    let mut out = Vec::new();
    for k in (1..=max_index).step_by(2) {
        for m in (1..=max_index).step_by(2) {
            // k m t_k t_m ∂_{k+m−1−2α}
            if k + m > 1 + shift && k + m - 1 - shift <= max_index {
                out.push(OperatorTerm::new(
                    c(Rational::one()),
                    vec![k, m],
                    vec![k + m - 1 - shift],
                ));
            }
            // ½ (k+m+1+2α) t_{k+m+1+2α} ∂_k ∂_m
            if k + m + 1 + shift <= max_index {
                out.push(OperatorTerm::new(
                    c(Rational::new(1, 2)),
                    vec![k + m + 1 + shift],
                    vec![k, m],
                ));
            }
        }
    }
    match alpha {
        Alpha::Theta => out.push(OperatorTerm::new(
            GradedPoly::constant(Rational::new(1, 8)),
            vec![1],
            vec![],
        )),
        Alpha::Psi => {
            out.push(OperatorTerm::new(
                GradedPoly::constant(Rational::new(1, 6)),
                vec![1, 1, 1],
                vec![],
            ));
            if max_index >= 3 {
                out.push(OperatorTerm::new(
                    GradedPoly::constant(Rational::new(1, 24)),
                    vec![3],
                    vec![],
                ));
            }
        }
    }
    merge_terms(out)
}

/// Applies a list of terms, truncating to `caps`.
pub fn apply_terms(terms: &[OperatorTerm], p: &GradedPoly, caps: Caps) -> Result<GradedPoly> {
    let mut out = GradedPoly::zero().with_caps(p.caps().meet(caps));
    for t in terms {
        let img = t.apply(p)?;
        out = out.poly_add(&img);
    }
    Ok(out)
}
