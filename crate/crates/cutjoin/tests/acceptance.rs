//! Acceptance criteria, one line per criterion. Every comparison is exact.

use std::process::ExitCode;
use std::time::Instant;

use cutjoin::cache::{Cache, Lookup};
use cutjoin_core::cutjoin::{default_z_max, SeriesData};
use cutjoin_core::recursion::{
    intersection_number, verify_dual, verify_translation, verify_virasoro, IntersectionQuery,
    TauTable,
};
use cutjoin_core::series::build_f;
use cutjoin_core::volumes::{
    check_coefficient_closed_forms, check_f0_closed_form, check_f1_closed_form,
};
use cutjoin_core::{Alpha, Caps, GradedPoly, Rational};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

struct Row {
    alpha: Alpha,
    label: String,
    value: GradedPoly,
}

fn rows(text: &str) -> Vec<Row> {
    text.lines()
        .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
        .map(|l| {
            let (head, value) = l.split_once(" = ").unwrap();
            let (alpha, label) = head.split_once(' ').unwrap();
            Row {
                alpha: Alpha::from_u8(alpha.parse().unwrap()).unwrap(),
                label: label.to_string(),
                value: value.parse().unwrap(),
            }
        })
        .collect()
}

const COEFFICIENTS: &str = include_str!("../../core/tests/data/coefficients.txt");
const PRINTED: &str = include_str!("../../core/tests/data/series.txt");

fn table_value(data: &SeriesData, label: &str) -> Result<GradedPoly, String> {
    let idx: Vec<i64> = label[2..].split(',').map(|x| x.parse().unwrap()).collect();
    let r = match (&label[..1], idx.as_slice()) {
        ("A", [m]) => data.coeff_a(*m, *m),
        ("A", [k, m]) => data.coeff_a(*k, *m),
        ("C", [k]) => data.coeff_c(*k),
        _ => return Err(format!("bad label {label}")),
    };
    r.map_err(|e| e.to_string())
}

/// Reference coefficients recomputed from series carried to `z_max` at cap `cap`,
/// compared after truncation to s-degree 5.
fn coefficient_check(z_pad: i64, cap_pad: u32) -> Outcome {
    let table = rows(COEFFICIENTS);
    let mut n = 0;
    for alpha in Alpha::ALL {
        let data = SeriesData::new(alpha, 40 + z_pad, Caps::s_degree(5 + cap_pad))
            .map_err(|e| e.to_string())?;
        for row in table.iter().filter(|r| r.alpha == alpha) {
            let got = table_value(&data, &row.label)?.truncate(Caps::s_degree(5));
            if got != row.value {
                return Err(format!(
                    "alpha {alpha} {}: got {got}, expected {}",
                    row.label, row.value
                ));
            }
            n += 1;
        }
    }
    Ok(format!("{n} coefficient polynomials"))
}

fn criterion_1() -> Outcome {
    coefficient_check(0, 0)
}

fn criterion_2() -> Outcome {
    let table = rows(PRINTED);
    let mut n = 0;
    for alpha in Alpha::ALL {
        let f = build_f(alpha, 9, Caps::NONE).map_err(|e| e.to_string())?;
        for row in table.iter().filter(|r| r.alpha == alpha) {
            let k: i64 = row.label.parse().unwrap();
            let got = f.coeff(k).map_err(|e| e.to_string())?;
            if got != row.value {
                return Err(format!(
                    "f_{alpha} z^{k}: got {got}, expected {}",
                    row.value
                ));
            }
            n += got.len();
        }
    }
    Ok(format!("{n} s-monomials through z^9"))
}

fn criterion_3() -> Outcome {
    let mut terms = 0;
    for alpha in Alpha::ALL {
        let r = verify_dual(alpha, 3, 3).map_err(|e| e.to_string())?;
        if let Some(f) = r.failure {
            return Err(format!(
                "alpha {alpha} level {} at {}: {} vs {}",
                f.level, f.monomial, f.factored, f.dressed
            ));
        }
        terms += r.terms_compared;
    }
    Ok(format!("p <= 3, s-degree 3, {terms} terms"))
}

fn criterion_4() -> Outcome {
    let mut checks = 0;
    for (alpha, p) in [(Alpha::Psi, 6), (Alpha::Theta, 8)] {
        let r = verify_virasoro(alpha, p).map_err(|e| e.to_string())?;
        if let Some(f) = r.failure {
            return Err(format!(
                "alpha {alpha} k {} level {} at {}: {}",
                f.k, f.level, f.monomial, f.residual
            ));
        }
        checks += r.checks;
    }
    Ok(format!("{checks} (k, p) constraints"))
}

fn criterion_5() -> Outcome {
    let mut terms = 0;
    for alpha in Alpha::ALL {
        let r = verify_translation(alpha, 3, 3).map_err(|e| e.to_string())?;
        if let Some(f) = r.failure {
            return Err(format!(
                "alpha {alpha} level {} at {}: {} vs {}",
                f.level, f.monomial, f.translated, f.direct
            ));
        }
        terms += r.terms_compared;
    }
    Ok(format!("levels <= 3, s-degree 3, {terms} terms"))
}

fn criterion_6() -> Outcome {
    let mut checks = 0;
    for alpha in Alpha::ALL {
        let r = check_coefficient_closed_forms(alpha, 6).map_err(|e| e.to_string())?;
        if let Some(f) = r.failure {
            return Err(f);
        }
        checks += r.checks;
    }
    for r in [check_f0_closed_form(15), check_f1_closed_form(15)] {
        let r = r.map_err(|e| e.to_string())?;
        if let Some(f) = r.failure {
            return Err(f);
        }
        checks += r.checks;
    }
    Ok(format!("{checks} identities, m <= 6"))
}

struct Classical {
    kw: TauTable,
    bgw: TauTable,
}

impl Classical {
    fn compute(z_pad: i64, cap: u32) -> Result<Self, String> {
        let kw = TauTable::compute_padded(Alpha::Psi, 2, cap, z_pad).map_err(|e| e.to_string())?;
        let bgw =
            TauTable::compute_padded(Alpha::Theta, 2, cap, z_pad).map_err(|e| e.to_string())?;
        Ok(Classical { kw, bgw })
    }

    fn values(&self) -> Result<Vec<(String, String)>, String> {
        let num = |alpha, psi: &[u32], t: &TauTable| -> Result<Rational, String> {
            let q =
                IntersectionQuery::new(alpha, psi.to_vec(), vec![]).map_err(|e| e.to_string())?;
            Ok(intersection_number(&q, t).map_err(|e| e.to_string())?.value)
        };
        let f2 = self.bgw.free_energy()[2].truncate(Caps::s_degree(0));
        Ok(vec![
            (
                "<tau_0^3>_0".into(),
                num(Alpha::Psi, &[0, 0, 0], &self.kw)?.to_string(),
            ),
            (
                "<tau_1>_1".into(),
                num(Alpha::Psi, &[1], &self.kw)?.to_string(),
            ),
            (
                "<Theta tau_0>_1".into(),
                num(Alpha::Theta, &[0], &self.bgw)?.to_string(),
            ),
            ("F^(2) at s=0".into(), f2.to_string()),
        ])
    }
}

const CLASSICAL: [&str; 4] = ["1", "1/24", "1/8", "1/16*t1^2"];

fn criterion_7() -> Outcome {
    let values = Classical::compute(0, 1)?.values()?;
    for ((name, got), want) in values.iter().zip(CLASSICAL) {
        if got != want {
            return Err(format!("{name} = {got}, expected {want}"));
        }
    }
    Ok(values
        .iter()
        .map(|(n, v)| format!("{n} = {v}"))
        .collect::<Vec<_>>()
        .join(", "))
}

fn criterion_8() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let cache = Cache::new(dir.path());
    let mut levels = 0;
    for alpha in Alpha::ALL {
        for (p, d) in [(2, 1), (4, 2)] {
            cache.ensure(alpha, p, d).map_err(|e| e.to_string())?;
        }
        for d in [1, 2] {
            let Lookup::Hit(t) = cache.load(alpha, d).map_err(|e| e.to_string())? else {
                return Err(format!("alpha {alpha} cap {d} did not reload"));
            };
            for lvl in t.tau_levels() {
                if !lvl.is_homogeneous() {
                    return Err(format!(
                        "alpha {alpha} level {} not of degree {}",
                        lvl.level,
                        lvl.degree()
                    ));
                }
                levels += 1;
            }
        }
    }
    Ok(format!(
        "{levels} cached levels, each checked on write and on reload"
    ))
}

fn criterion_9() -> Outcome {
    coefficient_check(10, 1).map_err(|e| format!("coefficients: {e}"))?;
    let base = Classical::compute(0, 1)?.values()?;
    let wide = Classical::compute(10, 2)?.values()?;
    if base != wide {
        return Err(format!("classical values moved: {base:?} vs {wide:?}"));
    }
    for alpha in Alpha::ALL {
        for (p, d) in [(3usize, 3u32), (if alpha == Alpha::Psi { 6 } else { 8 }, 0)] {
            let a = TauTable::compute(alpha, p, d).map_err(|e| e.to_string())?;
            let b = TauTable::compute_padded(alpha, p, d + 1, 10).map_err(|e| e.to_string())?;
            if a != b.restrict_s_degree(d) {
                return Err(format!(
                    "alpha {alpha} levels to {p} at s-degree {d} changed"
                ));
            }
        }
    }
    let z = default_z_max(Alpha::Psi, 3);
    Ok(format!(
        "z_max +10 (e.g. {z} -> {}), s-degree cap +1: no value changed",
        z + 10
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("reference coefficient tables", criterion_1),
        ("f_0, f_1 expansions", criterion_2),
        ("dual construction of the operator", criterion_3),
        ("Virasoro constraints", criterion_4),
        ("translation identity", criterion_5),
        ("Euler/Bernoulli closed forms", criterion_6),
        ("classical values", criterion_7),
        ("homogeneity on cache writes", criterion_8),
        ("truncation stability", criterion_9),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let ms = start.elapsed().as_millis();
        match outcome {
            Ok(detail) => println!("PASS [{}] {name}: {detail} ({ms} ms)", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL [{}] {name}: {why} ({ms} ms)", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
