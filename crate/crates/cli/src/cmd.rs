use std::io::Write;
use std::process::ExitCode;

use num_complex::Complex;
use pf_spectra::dd::{cdd, to_c64};
use pf_spectra::dynamics::{escape_bound_check, find_centers, find_cycles, CenterConfig, CenterRecord, CycleConfig};
use pf_spectra::equidist::{run_equidistribution, AnchorSpec};
use pf_spectra::gleason::{build_tower, certify_poonen_all, certify_simple_roots, degree_check, reassembly_check};
use pf_spectra::output::{annulus_svg, centers_csv, scatter_svg, spectrum_csv, spectrum_rows, CenterRow, Series};
use pf_spectra::spectrum::{
    build_matrix_explicit, build_matrix_residues, charpoly_root_distance, derivative_identity_check, survey as run_survey,
    SpectrumConfig, SpectrumResult,
};
use pf_spectra::units::{certify, cost_estimate, crosscheck_numeric};
use pf_spectra::{Error, C64};
use serde_json::{json, Value};

use crate::Global;

const MATRIX_TOL: f64 = 1e-8;

pub enum Failure {
    Checks(Vec<Value>),
    Core(Error),
    Usage(String),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

type CmdResult = Result<(), Failure>;

/// Prints the failure as one JSON line on stderr and maps it to an exit code.
pub fn report_failure(command: &str, f: Failure) -> ExitCode {
    let (code, body) = match f {
        Failure::Checks(v) => (1, json!({"status": "fail", "command": command, "failures": v})),
        Failure::Usage(msg) => (2, json!({"status": "error", "command": command, "kind": "usage", "message": msg})),
        Failure::Io(msg) => (5, json!({"status": "error", "command": command, "kind": "io", "message": msg})),
        Failure::Core(e) => {
            let (code, kind) = match &e {
                Error::InvalidInput(_) | Error::UnsupportedAnchor(_) | Error::ExceedsExactCeiling { .. } => (2, "usage"),
                Error::InvariantViolation(_) => (1, "check"),
                e if e.is_exact() => (4, "exact"),
                _ => (3, "numeric"),
            };
            (code, json!({"status": "error", "command": command, "kind": kind, "message": e.to_string()}))
        }
    };
    eprintln!("{body}");
    ExitCode::from(code)
}

pub fn init_threads(flag: Option<usize>) -> CmdResult {
    let n = match flag {
        Some(n) => Some(n),
        None => match std::env::var("PF_SPECTRA_THREADS") {
            Ok(s) => Some(
                s.trim()
                    .parse::<usize>()
                    .map_err(|_| Failure::Usage(format!("PF_SPECTRA_THREADS must be a positive integer, got {s:?}")))?,
            ),
            Err(_) => None,
        },
    };
    if let Some(n) = n {
        if n == 0 {
            return Err(Failure::Usage("thread count must be positive".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Failure::Usage(e.to_string()))?;
    }
    Ok(())
}

/// `3,5,8-10` → `[3, 5, 8, 9, 10]`.
pub fn parse_periods(s: &str) -> Result<Vec<usize>, String> {
    let mut out = Vec::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        if let Some((a, b)) = part.split_once('-') {
            let a: usize = a.trim().parse().map_err(|_| format!("bad range start in {part:?}"))?;
            let b: usize = b.trim().parse().map_err(|_| format!("bad range end in {part:?}"))?;
            if a > b {
                return Err(format!("empty range {part:?}"));
            }
            out.extend(a..=b);
        } else {
            out.push(part.parse().map_err(|_| format!("bad period {part:?}"))?);
        }
    }
    if out.is_empty() || out.contains(&0) {
        return Err("periods must be positive".into());
    }
    Ok(out)
}

/// Accepts `re`, `re,im`, `bi` and `a±bi`.
pub fn parse_complex(s: &str) -> Result<Complex<f64>, String> {
    let s = s.trim().replace(' ', "");
    let bad = || format!("cannot parse {s:?} as a complex number");
    if let Some((a, b)) = s.split_once(',') {
        return Ok(Complex::new(a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?));
    }
    let Some(body) = s.strip_suffix('i') else {
        return Ok(Complex::new(s.parse().map_err(|_| bad())?, 0.0));
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let imag = |t: &str| -> Result<f64, String> {
        match t {
            "" | "+" => Ok(1.0),
            "-" => Ok(-1.0),
            t => t.parse().map_err(|_| bad()),
        }
    };
    match split {
        Some(k) => Ok(Complex::new(body[..k].parse().map_err(|_| bad())?, imag(&body[k..])?)),
        None => Ok(Complex::new(0.0, imag(body)?)),
    }
}

fn periods(g: &Global) -> Result<Vec<usize>, Failure> {
    match (&g.periods, g.period) {
        (Some(_), Some(_)) => Err(Failure::Usage("give either --period or --periods".into())),
        (Some(p), None) => parse_periods(p).map_err(Failure::Usage),
        (None, Some(0)) => Err(Failure::Usage("period must be positive".into())),
        (None, Some(m)) => Ok(vec![m]),
        (None, None) => Err(Failure::Usage("missing --period or --periods".into())),
    }
}

fn spectrum_config(g: &Global) -> Result<SpectrumConfig, Failure> {
    match g.precision {
        None | Some(53) | Some(106) => Ok(SpectrumConfig { precision_bits: g.precision, ..Default::default() }),
        Some(b) if b < 53 => Err(Failure::Usage(format!("precision must be at least 53 bits, got {b}"))),
        Some(b) => Err(Failure::Usage(format!("precision above 106 bits is not supported, got {b}"))),
    }
}

fn wants_json(g: &Global) -> bool {
    g.json || matches!(g.out.as_deref(), Some(o) if o == "json" || o.ends_with(".json"))
}

fn write_artifact(g: &Global, text: &str) -> CmdResult {
    match g.out.as_deref() {
        None | Some("csv") | Some("json") => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
        }
        Some(path) => std::fs::write(path, text)?,
    }
    Ok(())
}

fn write_json(g: &Global, v: &Value) -> CmdResult {
    let mut s = serde_json::to_string_pretty(v).map_err(|e| Failure::Io(e.to_string()))?;
    s.push('\n');
    write_artifact(g, &s)
}

fn write_svg(g: &Global, svg: impl FnOnce() -> String) -> CmdResult {
    if let Some(path) = &g.svg {
        std::fs::write(path, svg())?;
    }
    Ok(())
}

#[derive(Default)]
struct Checks(Vec<Value>);

impl Checks {
    fn check(&mut self, ok: bool, name: &str, detail: Value) {
        if !ok {
            self.0.push(json!({"check": name, "detail": detail}));
        }
    }

    fn finish(self) -> CmdResult {
        if self.0.is_empty() {
            Ok(())
        } else {
            Err(Failure::Checks(self.0))
        }
    }
}

fn c_json(z: C64) -> Value {
    json!([z.re, z.im])
}

pub fn gleason(g: &Global, max_period: usize, certify_all: bool) -> CmdResult {
    if max_period == 0 {
        return Err(Failure::Usage("--max-period must be positive".into()));
    }
    let tower = build_tower(g.degree, max_period)?;
    let mut checks = Checks::default();
    let table = degree_check(&tower)?;
    let reassembly = reassembly_check(&tower);
    checks.check(reassembly, "reassembly", json!("product of H_d over d | n differs from G_n"));
    let h: Vec<Value> = (1..=max_period).map(|m| json!({"m": m, "coeffs": tower.h(m)})).collect();
    let mut out = json!({
        "degree": g.degree,
        "max_period": max_period,
        "degree_table": table,
        "reassembly": reassembly,
        "h": h,
    });
    if certify_all {
        let simple = (1..=max_period)
            .map(|n| certify_simple_roots(&tower, n))
            .collect::<Result<Vec<_>, _>>()?;
        for c in simple.iter().filter(|c| !c.pass) {
            checks.check(false, "simple_roots", json!({"n": c.n, "resultant_mod_d": c.resultant_mod_d.to_string()}));
        }
        let poonen = certify_poonen_all(&tower)?;
        for c in poonen.iter().filter(|c| !c.pass) {
            checks.check(false, "poonen", json!({"m": c.m, "n": c.n, "resultant": c.resultant.to_string()}));
        }
        out["simple_roots"] = json!(simple);
        out["poonen"] = json!(poonen);
    }
    write_json(g, &out)?;
    checks.finish()
}

fn enumerate(g: &Global, ps: &[usize]) -> Result<Vec<CenterRecord>, Failure> {
    let cfg = CenterConfig::default();
    let mut all = Vec::new();
    for &m in ps {
        all.extend(find_centers(g.degree, m, &cfg)?);
    }
    Ok(all)
}

pub fn centers(g: &Global) -> CmdResult {
    let ps = periods(g)?;
    let cfg = CenterConfig::default();
    let records = enumerate(g, &ps)?;
    let mut checks = Checks::default();
    for r in &records {
        checks.check(
            r.newton_residual <= cfg.tol_residual,
            "residual",
            json!({"m": r.period, "c": c_json(r.c64()), "residual": r.newton_residual}),
        );
        checks.check(escape_bound_check(r, cfg.tol_bound), "escape_bound", json!({"m": r.period, "c": c_json(r.c64())}));
    }
    if wants_json(g) {
        let rows: Vec<CenterRow> = records.iter().map(CenterRow::new).collect();
        write_json(g, &json!(rows))?;
    } else {
        write_artifact(g, &centers_csv(&records))?;
    }
    checks.finish()
}

fn survey_checks(records: &[CenterRecord], spectra: &[SpectrumResult], checks: &mut Checks) -> Result<(), Failure> {
    for (r, s) in records.iter().zip(spectra) {
        if !s.gap_ok {
            let radii: Vec<f64> = s.values().iter().map(|l| l.norm()).collect();
            checks.check(false, "spectral_gap", json!({"m": r.period, "c": c_json(r.c64()), "abs_lambda": radii}));
        }
        let id = derivative_identity_check(r, s)?;
        checks.check(id.pass, "derivative_identity", json!({"m": r.period, "c": c_json(r.c64()), "relative": id.relative}));
    }
    Ok(())
}

pub fn survey(g: &Global) -> CmdResult {
    let ps = periods(g)?;
    let cfg = spectrum_config(g)?;
    let mut checks = Checks::default();
    let mut spectra = Vec::new();
    for &m in &ps {
        if m < 2 {
            eprintln!("note: m = {m} has dim Q_f = 0, spectrum is empty");
            continue;
        }
        let records = enumerate(g, &[m])?;
        let s = run_survey(&records, &cfg)?;
        survey_checks(&records, &s, &mut checks)?;
        spectra.extend(s);
    }
    if wants_json(g) {
        write_json(g, &json!(spectrum_rows(&spectra)))?;
    } else {
        write_artifact(g, &spectrum_csv(&spectra))?;
    }
    write_svg(g, || annulus_svg(g.degree, &spectra))?;
    checks.finish()
}

pub fn certify_units(g: &Global, crosscheck: bool) -> CmdResult {
    let ps = periods(g)?;
    let mut checks = Checks::default();
    let mut out = Vec::new();
    for &m in &ps {
        if m < 3 {
            return Err(Failure::Usage(format!("unit certificates need m >= 3, got {m}")));
        }
        eprintln!("cost (D={}, m={m}): {}", g.degree, cost_estimate(g.degree, m));
        let tower = build_tower(g.degree, m)?;
        let cert = certify(&tower, m, g.force)?;
        checks.check(
            cert.pass(),
            "unit_certificate",
            json!({
                "m": m,
                "constant_ok": cert.constant_ok,
                "leading_ok": cert.leading_ok,
                "degree_ok": cert.degree_ok,
                "factorization_ok": cert.factorization_ok,
            }),
        );
        let mut entry = json!({"certificate": cert});
        if crosscheck {
            let records = enumerate(g, &[m])?;
            let spectra = run_survey(&records, &spectrum_config(g)?)?;
            let x = crosscheck_numeric(&cert, &spectra)?;
            checks.check(x.pass, "crosscheck", json!({"m": m, "distance": x.distance}));
            entry["crosscheck"] = json!(x);
        }
        out.push(entry);
    }
    let v = if out.len() == 1 { out.pop().unwrap() } else { Value::Array(out) };
    write_json(g, &v)?;
    checks.finish()
}

/// Period of the critical point under `z^D + c`, if it returns within 256 steps.
fn critical_period(degree: u32, c: C64) -> Option<usize> {
    let mut z = C64::new(0.0, 0.0);
    for k in 1..=256 {
        z = z.powu(degree) + c;
        if z.norm() <= 1e-10 {
            return Some(k);
        }
        if z.norm() > 1e6 {
            return None;
        }
    }
    None
}

pub fn cycles(g: &Global, c: C64, n_max: usize) -> CmdResult {
    if n_max == 0 {
        return Err(Failure::Usage("--n-max must be positive".into()));
    }
    let cycles = find_cycles(g.degree, cdd(c), n_max, &CycleConfig::default())?;
    let mut checks = Checks::default();
    let pcf = critical_period(g.degree, c).is_some();
    let lower = 1.0 / (2.0 * g.degree as f64);
    let rows: Vec<Value> = cycles
        .iter()
        .map(|cy| {
            if pcf {
                for l in &cy.eigenvalues {
                    let r = l.norm();
                    checks.check(
                        r >= lower - 1e-12 && r < 1.0,
                        "lambda_bound",
                        json!({"period": cy.period, "lambda": c_json(*l), "abs": r}),
                    );
                }
            }
            json!({
                "period": cy.period,
                "points": cy.points.iter().map(|&z| c_json(z)).collect::<Vec<_>>(),
                "multiplier": c_json(cy.multiplier),
                "postcritical": cy.postcritical,
                "eigenvalues": cy.eigenvalues.iter().map(|&z| c_json(z)).collect::<Vec<_>>(),
            })
        })
        .collect();
    write_json(g, &json!({"degree": g.degree, "c": c_json(c), "n_max": n_max, "bound_checked": pcf, "cycles": rows}))?;
    checks.finish()
}

pub fn equidist(g: &Global, anchor: C64, modes: usize) -> CmdResult {
    let ps = match periods(g) {
        Ok(p) => p,
        Err(_) if g.periods.is_none() && g.period.is_none() => vec![12, 16, 20, 24],
        Err(e) => return Err(e),
    };
    let spec = AnchorSpec::new(g.degree, anchor)?;
    let run = run_equidistribution(&spec, &ps, &CenterConfig::default(), &spectrum_config(g)?, modes)?;
    let mut checks = Checks::default();
    checks.check(
        run.report.pass,
        "equidistribution_trend",
        json!({"moment_slope": run.report.moment_slope, "radial_slope": run.report.radial_slope}),
    );
    let centers: Vec<CenterRow> = run.centers.iter().map(CenterRow::new).collect();
    let moments: Vec<Value> = run
        .measures
        .iter()
        .map(|(m, e)| {
            let mk: Vec<Value> = e.moments.iter().map(|(k, v)| json!({"k": k, "m_k": c_json(*v)})).collect();
            json!({"period": m, "moments": mk})
        })
        .collect();
    let out = json!({
        "anchor": {
            "degree": spec.degree,
            "c0": c_json(to_c64(spec.c0)),
            "beta0": c_json(spec.beta0),
            "multiplier": c_json(spec.multiplier),
            "preperiod": spec.preperiod,
        },
        "centers": centers,
        "report": run.report,
        "moments": moments,
    });
    write_json(g, &out)?;
    write_svg(g, || {
        let series: Vec<Series> = run
            .measures
            .iter()
            .map(|(m, e)| Series { label: format!("m = {m}"), points: &e.samples })
            .collect();
        scatter_svg("ν = μλ by period", &series, &[(1.0, "|ν| = 1")], 1.3)
    })?;
    checks.finish()
}

pub fn matrix(g: &Global, index: Option<usize>) -> CmdResult {
    let ps = periods(g)?;
    let cfg = spectrum_config(g)?;
    let mut checks = Checks::default();
    let mut rows = Vec::new();
    for &m in &ps {
        if m < 3 {
            return Err(Failure::Usage(format!("matrix comparison needs m >= 3, got {m}")));
        }
        let mut records = enumerate(g, &[m])?;
        if let Some(i) = index {
            if i >= records.len() {
                return Err(Failure::Usage(format!("index {i} out of range, period {m} has {} centers", records.len())));
            }
            records = vec![records.swap_remove(i)];
        }
        let spectra = run_survey(&records, &cfg)?;
        for (r, s) in records.iter().zip(&spectra) {
            let explicit = build_matrix_explicit(r);
            let residue = build_matrix_residues(g.degree, r.c64(), &explicit.labels, &cfg)?;
            let diff = explicit.max_diff(&residue);
            let dist = charpoly_root_distance(&residue, g.degree, &s.values())?;
            checks.check(diff <= MATRIX_TOL, "matrix_entries", json!({"m": m, "c": c_json(r.c64()), "max_diff": diff}));
            checks.check(dist <= MATRIX_TOL, "charpoly_roots", json!({"m": m, "c": c_json(r.c64()), "distance": dist}));
            let mut row = json!({"m": m, "c": c_json(r.c64()), "max_diff": diff, "charpoly_distance": dist});
            if index.is_some() {
                let grid = |a: &pf_spectra::spectrum::PushforwardMatrix| -> Vec<Vec<Value>> {
                    a.entries.iter().map(|r| r.iter().map(|&z| c_json(z)).collect()).collect()
                };
                row["explicit"] = json!(grid(&explicit));
                row["residue"] = json!(grid(&residue));
            }
            rows.push(row);
        }
    }
    write_json(g, &json!(rows))?;
    checks.finish()
}
