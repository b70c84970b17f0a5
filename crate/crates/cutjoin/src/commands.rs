//! The computations behind each subcommand, returning renderable results.

use anyhow::{bail, Result};
use cutjoin_core::cutjoin::CoefficientTable;
use cutjoin_core::recursion::{
    intersection_number, verify_dual, verify_translation, verify_virasoro, IntersectionQuery,
    IntersectionResult, Status, TauTable,
};
use cutjoin_core::volumes::{
    check_coefficient_closed_forms, check_f0_closed_form, check_f1_closed_form, volume_level,
    volume_polynomial, VolumePolynomial,
};
use cutjoin_core::{Alpha, GradedPoly};
use serde_json::{json, Map, Value};

use crate::cache::Cache;
use crate::report::{csv_field, poly_json, rational_json, Render};

/// Levels `0..=level` at `s`-degree cap `cap`, served from the cache when a
/// stored entry covers them and computed in memory otherwise. Never writes.
pub fn obtain_table(
    cache: Option<&Cache>,
    alpha: Alpha,
    level: usize,
    cap: u32,
    max_level: Option<usize>,
) -> Result<TauTable> {
    if let Some(max) = max_level {
        if max < level {
            bail!("this query needs level {level} but --max-level is {max}; rerun with --max-level {level} or higher");
        }
    }
    if let Some(cache) = cache {
        if let Some(t) = cache.find_covering(alpha, level, cap)? {
            return Ok(t);
        }
    }
    Ok(TauTable::compute(alpha, level, cap)?)
}

pub struct CoeffsOutput {
    pub alpha: Alpha,
    pub order: u32,
    pub rows: Vec<(String, GradedPoly)>,
}

pub fn coeffs(alpha: Alpha, order: u32) -> Result<CoeffsOutput> {
    let rows = CoefficientTable::up_to_order(alpha, order)?
        .into_iter()
        .map(|(label, p)| (label.to_string(), p))
        .collect();
    Ok(CoeffsOutput { alpha, order, rows })
}

impl Render for CoeffsOutput {
    fn kind(&self) -> &'static str {
        "coeffs"
    }

    fn text(&self) -> String {
        let width = self.rows.iter().map(|(l, _)| l.len()).max().unwrap_or(0);
        self.rows
            .iter()
            .map(|(l, p)| format!("{l:<width$} = {p}\n"))
            .collect()
    }

    fn csv(&self) -> String {
        let mut out = String::from("alpha,coefficient,value\n");
        for (l, p) in &self.rows {
            out.push_str(&format!(
                "{},{},{}\n",
                self.alpha.value(),
                csv_field(l),
                csv_field(&p.to_string())
            ));
        }
        out
    }

    fn json_body(&self) -> Value {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|(l, p)| json!({ "name": l, "value": poly_json(p), "text": p.to_string() }))
            .collect();
        json!({ "alpha": self.alpha.value(), "order": self.order, "coefficients": rows })
    }
}

pub struct TauOutput {
    pub alpha: Alpha,
    pub s_degree_cap: u32,
    pub free_energy: bool,
    pub levels: Vec<(usize, GradedPoly)>,
}

/// Computes (or extends) the cached levels and selects what to print.
pub fn tau(
    cache: Option<&Cache>,
    alpha: Alpha,
    max_level: usize,
    s_degree_cap: u32,
    only: Option<usize>,
    free_energy: bool,
) -> Result<TauOutput> {
    if let Some(p) = only {
        if p > max_level {
            bail!("--level {p} exceeds --max-level {max_level}");
        }
    }
    let table = match cache {
        Some(c) => c.ensure(alpha, max_level, s_degree_cap)?,
        None => TauTable::compute(alpha, max_level, s_degree_cap)?,
    };
    let table = if table.max_level() > max_level {
        TauTable::from_levels(alpha, s_degree_cap, table.levels()[..=max_level].to_vec())?
    } else {
        table
    };
    let polys = if free_energy {
        table.free_energy()
    } else {
        table.levels().to_vec()
    };
    let levels = polys
        .into_iter()
        .enumerate()
        .filter(|(p, _)| only.is_none_or(|o| o == *p))
        .collect();
    Ok(TauOutput {
        alpha,
        s_degree_cap,
        free_energy,
        levels,
    })
}

impl Render for TauOutput {
    fn kind(&self) -> &'static str {
        "tau"
    }

    fn text(&self) -> String {
        let name = if self.free_energy { "F" } else { "tau" };
        self.levels
            .iter()
            .map(|(p, v)| format!("{name}^({p}) = {v}\n"))
            .collect()
    }

    fn csv(&self) -> String {
        let mut out = String::from("alpha,level,monomial,coeff\n");
        for (p, v) in &self.levels {
            for (m, c) in v.iter() {
                out.push_str(&format!(
                    "{},{p},{},{c}\n",
                    self.alpha.value(),
                    csv_field(&m.to_string())
                ));
            }
        }
        out
    }

    fn json_body(&self) -> Value {
        let levels: Vec<Value> = self
            .levels
            .iter()
            .map(|(p, v)| json!({ "level": p, "terms": poly_json(v) }))
            .collect();
        json!({
            "alpha": self.alpha.value(),
            "s_degree_cap": self.s_degree_cap,
            "quantity": if self.free_energy { "free_energy" } else { "tau" },
            "levels": levels,
        })
    }
}

pub struct IntersectOutput {
    pub query: IntersectionQuery,
    pub result: IntersectionResult,
}

impl IntersectOutput {
    fn bracket(&self) -> String {
        let mut parts: Vec<String> = self
            .query
            .kappa
            .iter()
            .map(|b| format!("kappa_{b}"))
            .collect();
        parts.extend(self.query.psi.iter().map(|a| format!("tau_{a}")));
        let theta = if self.query.alpha == Alpha::Theta {
            "Theta "
        } else {
            ""
        };
        format!("<{theta}{}>", parts.join(" "))
    }

    /// Both sides of the dimension constraint, when a genus exists.
    fn dimensions(&self) -> Option<(i64, i64)> {
        let g = self.result.genus? as i64;
        let n = self.query.n() as i64;
        let lhs = self.query.psi.iter().map(|&a| a as i64).sum::<i64>()
            + self.query.kappa_degree() as i64
            + (1 - self.query.alpha.value()) * (2 * g - 2 + n);
        Some((lhs, 3 * g - 3 + n))
    }

    fn status(&self) -> (&'static str, String) {
        match &self.result.status {
            Status::Ok => ("ok", String::new()),
            Status::DimensionMismatch(r) => ("dimension_mismatch", r.clone()),
        }
    }
}

pub fn intersect(
    cache: Option<&Cache>,
    alpha: Alpha,
    psi: Vec<u32>,
    kappa: Vec<u32>,
    genus: Option<u32>,
    max_level: Option<usize>,
) -> Result<IntersectOutput> {
    let query = IntersectionQuery::new(alpha, psi, kappa)?;
    let (g, level) = query.genus().unwrap_or_default();
    if let (Some(asked), Ok(_)) = (genus, query.genus()) {
        if asked != g {
            let result = IntersectionResult {
                value: cutjoin_core::Rational::zero(),
                genus: None,
                level: None,
                status: Status::DimensionMismatch(format!("degree forces genus {g}, not {asked}")),
            };
            return Ok(IntersectOutput { query, result });
        }
    }
    let result = if level == 0 {
        intersection_number(&query, &TauTable::new(alpha, 0))?
    } else {
        let table = obtain_table(cache, alpha, level, query.kappa_degree(), max_level)?;
        intersection_number(&query, &table)?
    };
    Ok(IntersectOutput { query, result })
}

impl Render for IntersectOutput {
    fn kind(&self) -> &'static str {
        "intersect"
    }

    fn text(&self) -> String {
        let (status, reason) = self.status();
        let mut out = format!("{} = {}\n", self.bracket(), self.result.value);
        match self.result.genus {
            Some(g) => out.push_str(&format!("genus = {g}\n")),
            None => out.push_str("genus = none\n"),
        }
        if let Some((lhs, rhs)) = self.dimensions() {
            out.push_str(&format!("dimension check: {lhs} = {rhs}\n"));
        }
        out.push_str(&format!("status = {status}"));
        if !reason.is_empty() {
            out.push_str(&format!(" ({reason})"));
        }
        out.push('\n');
        out
    }

    fn csv(&self) -> String {
        let (status, _) = self.status();
        let join = |v: &[u32]| v.iter().map(u32::to_string).collect::<Vec<_>>().join(" ");
        format!(
            "alpha,psi,kappa,genus,value,status\n{},{},{},{},{},{}\n",
            self.query.alpha.value(),
            join(&self.query.psi),
            join(&self.query.kappa),
            self.result.genus.map_or(String::new(), |g| g.to_string()),
            self.result.value,
            status
        )
    }

    fn json_body(&self) -> Value {
        let (status, reason) = self.status();
        let dims = self
            .dimensions()
            .map(|(l, r)| json!({ "integrand": l, "moduli": r }));
        json!({
            "alpha": self.query.alpha.value(),
            "psi": self.query.psi,
            "kappa": self.query.kappa,
            "genus": self.result.genus,
            "level": self.result.level,
            "value": rational_json(&self.result.value),
            "dimension": dims,
            "status": status,
            "reason": reason,
        })
    }
}

pub struct VolumeOutput {
    pub volume: VolumePolynomial,
}

pub fn volume(
    cache: Option<&Cache>,
    alpha: Alpha,
    genus: u32,
    n: u32,
    max_level: Option<usize>,
) -> Result<VolumeOutput> {
    let level = volume_level(genus, n)?;
    let cap = VolumePolynomial {
        alpha,
        genus,
        n,
        terms: Default::default(),
    }
    .expected_degree();
    let table = obtain_table(cache, alpha, level, cap, max_level)?;
    Ok(VolumeOutput {
        volume: volume_polynomial(&table, genus, n)?,
    })
}

impl VolumeOutput {
    fn variables(&self) -> Vec<String> {
        let mut v = vec!["pi2".to_string()];
        v.extend((1..=self.volume.n).map(|i| format!("L{i}sq")));
        v
    }
}

impl Render for VolumeOutput {
    fn kind(&self) -> &'static str {
        "volume"
    }

    fn text(&self) -> String {
        let v = &self.volume;
        let name = if v.alpha == Alpha::Theta {
            "Vsuper"
        } else {
            "V"
        };
        format!("{name}_{{{},{}}} = {}\n", v.genus, v.n, v)
    }

    fn csv(&self) -> String {
        let mut out = self.variables().join(",");
        out.push_str(",coeff\n");
        for ((e, ls), c) in &self.volume.terms {
            let mut row = vec![e.to_string()];
            row.extend(ls.iter().map(u32::to_string));
            row.push(c.to_string());
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }

    fn json_body(&self) -> Value {
        let names = self.variables();
        let terms: Vec<Value> = self
            .volume
            .terms
            .iter()
            .map(|((e, ls), c)| {
                let mut exps = Map::new();
                exps.insert(names[0].clone(), json!(e));
                for (i, l) in ls.iter().enumerate() {
                    exps.insert(names[i + 1].clone(), json!(l));
                }
                json!({ "exponents": exps, "coeff": rational_json(c) })
            })
            .collect();
        json!({
            "alpha": self.volume.alpha.value(),
            "genus": self.volume.genus,
            "n": self.volume.n,
            "variables": names,
            "terms": terms,
            "text": self.volume.to_string(),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    Virasoro,
    Translation,
    Dual,
    Closedform,
}

/// One checked family of identities.
pub struct SuiteEntry {
    pub name: String,
    pub params: Value,
    pub checks: usize,
    pub failure: Option<String>,
}

pub struct VerifyOutput {
    pub suite: Suite,
    pub entries: Vec<SuiteEntry>,
}

impl VerifyOutput {
    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.failure.is_none())
    }
}

pub struct VerifyParams {
    pub alphas: Vec<Alpha>,
    pub max_level: Option<usize>,
    pub s_degree: Option<u32>,
    pub max_m: Option<i64>,
}

pub fn verify(suite: Suite, params: &VerifyParams) -> Result<VerifyOutput> {
    let mut entries = Vec::new();
    for &alpha in &params.alphas {
        let a = alpha.value();
        match suite {
            Suite::Virasoro => {
                let p = params
                    .max_level
                    .unwrap_or(if alpha == Alpha::Psi { 6 } else { 8 });
                let r = verify_virasoro(alpha, p)?;
                entries.push(SuiteEntry {
                    name: format!("virasoro alpha={a}"),
                    params: json!({ "alpha": a, "max_level": p, "k_min": r.k_range.0, "k_max": r.k_range.1 }),
                    checks: r.checks,
                    failure: r.failure.map(|f| {
                        format!("k={} level={} monomial {} residual {}", f.k, f.level, f.monomial, f.residual)
                    }),
                });
            }
            Suite::Translation => {
                let p = params.max_level.unwrap_or(3);
                let d = params.s_degree.unwrap_or(3);
                let r = verify_translation(alpha, p, d)?;
                entries.push(SuiteEntry {
                    name: format!("translation alpha={a}"),
                    params: json!({ "alpha": a, "max_level": p, "s_degree": d }),
                    checks: r.terms_compared,
                    failure: r.failure.map(|f| {
                        format!(
                            "level {} monomial {}: translated {} direct {}",
                            f.level, f.monomial, f.translated, f.direct
                        )
                    }),
                });
            }
            Suite::Dual => {
                let p = params.max_level.unwrap_or(3);
                let d = params.s_degree.unwrap_or(3);
                let r = verify_dual(alpha, p, d)?;
                entries.push(SuiteEntry {
                    name: format!("dual alpha={a}"),
                    params: json!({ "alpha": a, "max_level": p, "s_degree": d }),
                    checks: r.terms_compared,
                    failure: r.failure.map(|f| {
                        format!(
                            "level {} monomial {}: factored {} dressed {}",
                            f.level, f.monomial, f.factored, f.dressed
                        )
                    }),
                });
            }
            Suite::Closedform => {
                let m = params.max_m.unwrap_or(6);
                let r = check_coefficient_closed_forms(alpha, m)?;
                entries.push(SuiteEntry {
                    name: format!("coefficients alpha={a}"),
                    params: json!({ "alpha": a, "max_m": m }),
                    checks: r.checks,
                    failure: r.failure,
                });
                let z_max = (2 * m + 9).max(9);
                let r = match alpha {
                    Alpha::Theta => check_f0_closed_form(z_max)?,
                    Alpha::Psi => check_f1_closed_form(z_max)?,
                };
                entries.push(SuiteEntry {
                    name: format!("series alpha={a}"),
                    params: json!({ "alpha": a, "z_max": z_max }),
                    checks: r.checks,
                    failure: r.failure,
                });
            }
        }
    }
    Ok(VerifyOutput { suite, entries })
}

impl Render for VerifyOutput {
    fn kind(&self) -> &'static str {
        "verify"
    }

    fn text(&self) -> String {
        let mut out = String::new();
        for e in &self.entries {
            match &e.failure {
                None => out.push_str(&format!("PASS {} ({} checks)\n", e.name, e.checks)),
                Some(f) => out.push_str(&format!("FAIL {}: {f}\n", e.name)),
            }
        }
        out
    }

    fn csv(&self) -> String {
        let mut out = String::from("name,passed,checks,failure\n");
        for e in &self.entries {
            out.push_str(&format!(
                "{},{},{},{}\n",
                csv_field(&e.name),
                e.failure.is_none(),
                e.checks,
                csv_field(e.failure.as_deref().unwrap_or(""))
            ));
        }
        out
    }

    fn json_body(&self) -> Value {
        let entries: Vec<Value> = self
            .entries
            .iter()
            .map(|e| {
                json!({
                    "name": e.name,
                    "params": e.params,
                    "passed": e.failure.is_none(),
                    "checks": e.checks,
                    "failure": e.failure,
                })
            })
            .collect();
        let suite = match self.suite {
            Suite::Virasoro => "virasoro",
            Suite::Translation => "translation",
            Suite::Dual => "dual",
            Suite::Closedform => "closedform",
        };
        json!({ "suite": suite, "passed": self.passed(), "entries": entries })
    }
}
