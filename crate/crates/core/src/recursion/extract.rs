use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use super::TauTable;
use crate::arith::{double_factorial, factorial};
use crate::{Alpha, Error, GradedPoly, Monomial, Rational, Result};

/// `⟨κ_{b_1}⋯κ_{b_m} τ_{a_1}⋯τ_{a_n}⟩_g`, with the genus left implicit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionQuery {
    pub alpha: Alpha,
    pub psi: Vec<u32>,
    pub kappa: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    /// The dimension constraint has no admissible genus; the number is 0.
    DimensionMismatch(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionResult {
    pub value: Rational,
    pub genus: Option<u32>,
    pub level: Option<usize>,
    pub status: Status,
}

impl IntersectionQuery {
    pub fn new(alpha: Alpha, psi: Vec<u32>, kappa: Vec<u32>) -> Result<Self> {
        if psi.is_empty() && kappa.is_empty() {
            return Err(Error::InvalidIndex {
                what: "empty intersection query",
                index: 0,
            });
        }
        if let Some(&b) = kappa.iter().find(|&&b| b == 0) {
            return Err(Error::InvalidIndex {
                what: "kappa index",
                index: b as i64,
            });
        }
        Ok(IntersectionQuery { alpha, psi, kappa })
    }

    pub fn n(&self) -> u32 {
        self.psi.len() as u32
    }

    /// Weighted `s`-degree of the κ insertions.
    pub fn kappa_degree(&self) -> u32 {
        self.kappa.iter().sum()
    }

    /// Genus and level fixed by the dimension constraint, or the reason none
    /// exists.
    pub fn genus(&self) -> core::result::Result<(u32, usize), String> {
        let total: i64 =
            self.psi.iter().map(|&a| a as i64).sum::<i64>() + self.kappa_degree() as i64;
        let n = self.n() as i64;
        let g = match self.alpha {
            Alpha::Theta => total + 1,
            Alpha::Psi => {
                let num = total + 3 - n;
                if num < 0 || num % 3 != 0 {
                    return Err(alloc::format!(
                        "degree {total} with {n} points admits no integer genus"
                    ));
                }
                num / 3
            }
        };
        let level = 2 * g - 2 + n;
        if level <= 0 {
            return Err(alloc::format!("genus {g} with {n} points is unstable"));
        }
        Ok((g as u32, level as usize))
    }

    /// The monomial `∏ t_{2a_i+1} ∏ s_{b_j}` and the factor turning its
    /// coefficient in `F` into the intersection number.
    pub fn monomial_and_factor(&self) -> Result<(Monomial, Rational)> {
        let mut t: BTreeMap<u32, u32> = BTreeMap::new();
        let mut factor = Rational::one();
        for &a in &self.psi {
            *t.entry(2 * a + 1).or_default() += 1;
            factor = factor / double_factorial(2 * a as i64 + 1)?;
        }
        let mut s: BTreeMap<u32, u32> = BTreeMap::new();
        for &b in &self.kappa {
            *s.entry(b).or_default() += 1;
        }
        for &c in t.values().chain(s.values()) {
            factor *= &factorial(c as u64);
        }
        let t: Vec<(u32, u32)> = t.into_iter().collect();
        let s: Vec<(u32, u32)> = s.into_iter().collect();
        Ok((Monomial::new(&t, &s)?, factor))
    }
}

/// Reads one intersection number from the free energies of `table`.
pub fn intersection_number(q: &IntersectionQuery, table: &TauTable) -> Result<IntersectionResult> {
    let (g, level) = match q.genus() {
        Ok(v) => v,
        Err(reason) => {
            return Ok(IntersectionResult {
                value: Rational::zero(),
                genus: None,
                level: None,
                status: Status::DimensionMismatch(reason),
            })
        }
    };
    if q.alpha != table.alpha() {
        return Err(Error::InvalidAlpha(q.alpha.value() as u8));
    }
    if level > table.max_level() {
        return Err(Error::LevelNotComputed {
            requested: level,
            available: table.max_level(),
        });
    }
    if q.kappa_degree() > table.s_degree_cap() {
        return Err(Error::SDegreeNotComputed {
            requested: q.kappa_degree(),
            available: table.s_degree_cap(),
        });
    }
    let (mono, factor) = q.monomial_and_factor()?;
    let f = connected_level(table, level);
    Ok(IntersectionResult {
        value: f.coeff_of(&mono) * factor,
        genus: Some(g),
        level: Some(level),
        status: Status::Ok,
    })
}

fn connected_level(table: &TauTable, level: usize) -> GradedPoly {
    super::free_energy(&table.levels()[..=level])
        .pop()
        .unwrap_or_default()
}
