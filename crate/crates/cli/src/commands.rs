use std::fs;
use std::path::Path;

use anyhow::Context;
use serde_json::json;
use toric_basic::corpus;
use toric_basic::equivalence::{search_isomorphism, verify_isomorphism, IsoOptions};
use toric_basic::exec::Execution;
use toric_basic::facering::{
    betti_string, face_ring_quotient, koszul_table, linear_ideal, ring_presentation, FaceRingError,
};
use toric_basic::fan::{validate_marked_fan, MarkedFan, Mode, ValidateOptions, ValidationReport};
use toric_basic::format::{
    fan_to_json, matrix_strings, parse_fan, realization_to_json, RealizationFile,
};
use toric_basic::realize::{real_quotient_data, realize_moment_angle};

use crate::output::{emit, table, Outcome, FAILED, INPUT, OK};
use crate::Global;

fn load(path: &Path) -> Result<MarkedFan, String> {
    let text = fs::read_to_string(path).map_err(|e| e.to_string())?;
    parse_fan(&text).map_err(|e| e.to_string())
}

fn options(g: &Global) -> ValidateOptions {
    ValidateOptions {
        mode: g.mode.into(),
        seed: g.seed,
        samples: ValidateOptions::default().samples,
        execution: execution(g),
    }
}

fn execution(g: &Global) -> Execution {
    if g.jobs == 1 {
        Execution::Sequential
    } else {
        Execution::Parallel
    }
}

/// Runs `f` on a pool of `g.jobs` threads when parallelism is compiled in.
fn in_pool<R: Send>(g: &Global, f: impl FnOnce() -> R + Send) -> R {
    #[cfg(feature = "parallel")]
    if let Ok(pool) = rayon::ThreadPoolBuilder::new().num_threads(g.jobs).build() {
        return pool.install(f);
    }
    let _ = g;
    f()
}

/// Loads each file and applies `f`, in parallel, keeping input order.
fn per_file<F>(g: &Global, files: &[std::path::PathBuf], f: F) -> Vec<Outcome>
where
    F: Fn(&str, &MarkedFan) -> Outcome + Sync + Send,
{
    let prefix = files.len() > 1;
    in_pool(g, || {
        toric_basic::exec::map(execution(g), files, |path| {
            let name = path.display().to_string();
            match load(path) {
                Ok(fan) => {
                    let mut o = f(&name, &fan);
                    if prefix && !o.text.is_empty() && !o.text.starts_with(&name) {
                        o.text = format!("{name}:\n{}", o.text);
                    }
                    o
                }
                Err(e) => Outcome::input_error(&name, e),
            }
        })
    })
}

fn first_failure(report: &ValidationReport) -> Option<String> {
    report
        .failures()
        .first()
        .map(|c| format!("{}: {}", c.name, c.witness.clone().unwrap_or_default()))
}

fn invalid(file: &str, report: &ValidationReport) -> Outcome {
    let why = first_failure(report).unwrap_or_default();
    Outcome::new(
        FAILED,
        json!({ "file": file, "valid": false, "checks": report.checks }),
        format!("invalid fan: {why}\n"),
    )
}

pub fn validate(g: &Global, files: &[std::path::PathBuf]) -> u8 {
    let opts = options(g);
    let outcomes = per_file(g, files, |file, fan| {
        let report = validate_marked_fan(fan, &opts);
        let rows: Vec<(String, String)> = report
            .checks
            .iter()
            .map(|c| {
                let verdict = match &c.witness {
                    None => "pass".to_string(),
                    Some(w) => format!("FAIL  {w}"),
                };
                (c.name.clone(), verdict)
            })
            .collect();
        let mut text = format!("{}\n", if report.passed() { "valid" } else { "invalid" });
        text.push_str(&table(&rows));
        for n in &report.notes {
            text.push_str(&format!("  note: {n}\n"));
        }
        let mode = if opts.mode == Mode::Exact {
            "exact"
        } else {
            "fast"
        };
        Outcome::new(
            if report.passed() { OK } else { FAILED },
            json!({
                "file": file,
                "valid": report.passed(),
                "mode": mode,
                "seed": opts.seed,
                "checks": report.checks,
                "notes": report.notes,
            }),
            text,
        )
    });
    emit(g, "validate", outcomes)
}

fn ring_error(file: &str, e: FaceRingError) -> Outcome {
    Outcome::new(
        FAILED,
        json!({ "file": file, "error": e.to_string() }),
        format!("{e}\n"),
    )
}

pub fn betti(
    g: &Global,
    files: &[std::path::PathBuf],
    ring: bool,
    cup: bool,
    debug_hvector: bool,
) -> u8 {
    let opts = options(g);
    let outcomes = per_file(g, files, |file, fan| {
        let report = validate_marked_fan(fan, &opts);
        if !report.passed() {
            return invalid(file, &report);
        }
        let quotient = match face_ring_quotient(fan) {
            Ok(q) => q,
            Err(e) => return ring_error(file, e),
        };
        let betti = &quotient.hilbert;
        let mut text = format!("{}\n", betti_string(betti));
        let mut record = json!({
            "file": file,
            "betti": betti,
            "degrees": (0..betti.len()).map(|k| 2 * k).collect::<Vec<_>>(),
        });
        if debug_hvector {
            let h = fan.complex().h_vector(fan.dim()).unwrap_or_default();
            text.push_str(&format!(
                "h-vector: {}\n",
                h.iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            ));
            record["h_vector"] = json!(h);
        }
        if ring {
            match ring_presentation(fan) {
                Ok(p) => {
                    text.push_str(&p.to_string());
                    record["presentation"] = json!(p);
                }
                Err(e) => return ring_error(file, e),
            }
        }
        if cup {
            let rows = quotient.cup_product_table().rows();
            text.push_str("products:\n");
            let width = rows
                .iter()
                .map(|[x, y, _]| x.len() + y.len() + 3)
                .max()
                .unwrap_or(0);
            for [x, y, p] in &rows {
                let lhs = format!("{x} * {y}");
                text.push_str(&format!("  {lhs:<width$} = {p}\n"));
            }
            record["products"] = json!(rows);
        }
        Outcome::new(OK, record, text)
    });
    emit(g, "betti", outcomes)
}

pub fn iso(g: &Global, first: &Path, second: &Path) -> u8 {
    let opts = options(g);
    let (n1, n2) = (first.display().to_string(), second.display().to_string());
    let outcome = in_pool(g, || {
        let (f1, f2) = match (load(first), load(second)) {
            (Ok(a), Ok(b)) => (a, b),
            (Err(e), _) => return Outcome::input_error(&n1, e),
            (_, Err(e)) => return Outcome::input_error(&n2, e),
        };
        for (name, fan) in [(&n1, &f1), (&n2, &f2)] {
            let report = validate_marked_fan(fan, &opts);
            if !report.passed() {
                let mut o = invalid(name, &report);
                o.text = format!("{name}: {}", o.text);
                return o;
            }
        }
        let search = search_isomorphism(
            &f1,
            &f2,
            &IsoOptions {
                prefilter: true,
                execution: execution(g),
            },
        );
        let mut record = json!({
            "first": n1,
            "second": n2,
            "isomorphic": search.witness.is_some(),
            "p_equivalent": search.witness.is_some(),
            "transversely_equivalent": search.witness.is_some(),
            "candidates_checked": search.candidates,
            "fingerprints_differ": search.fingerprints_differ,
            "note": "ghost vertices are ignored",
        });
        let mut text = String::new();
        match &search.witness {
            Some(w) => {
                if let Err(e) = verify_isomorphism(&f1, &f2, w) {
                    return Outcome::new(
                        FAILED,
                        json!({ "error": e }),
                        format!("witness failed re-verification: {e}\n"),
                    );
                }
                let sigma: Vec<Option<usize>> = w.sigma.iter().map(|s| s.map(|v| v + 1)).collect();
                let sigma_text: Vec<String> = sigma
                    .iter()
                    .enumerate()
                    .filter_map(|(i, s)| s.map(|t| format!("{}->{t}", i + 1)))
                    .collect();
                let phi = matrix_strings(&w.phi.row_vectors());
                text.push_str("isomorphic\n");
                text.push_str(&format!("  sigma: {}\n", sigma_text.join(" ")));
                let rows: Vec<String> = phi.iter().map(|r| format!("[{}]", r.join(", "))).collect();
                text.push_str(&format!("  phi:   [{}]\n", rows.join(", ")));
                text.push_str("  p-equivalent\n  canonical foliations transversely equivalent\n");
                record["sigma"] = json!(sigma);
                record["phi"] = json!(phi);
            }
            None => {
                text.push_str("not isomorphic\n");
                if search.fingerprints_differ {
                    text.push_str("  invariants differ\n");
                } else {
                    text.push_str(&format!(
                        "  no witness among {} complex isomorphisms\n",
                        search.candidates
                    ));
                }
            }
        }
        Outcome::new(OK, record, text)
    });
    emit(g, "iso", vec![outcome])
}

pub fn realize(g: &Global, file: &Path, out: Option<&Path>) -> u8 {
    let opts = options(g);
    let name = file.display().to_string();
    let outcome = in_pool(g, || {
        let fan = match load(file) {
            Ok(f) => f,
            Err(e) => return Outcome::input_error(&name, e),
        };
        let r = match realize_moment_angle(&fan, &opts) {
            Ok(r) => r,
            Err(e) => {
                return Outcome::new(
                    FAILED,
                    json!({ "file": name, "error": e.to_string() }),
                    format!("{e}\n"),
                )
            }
        };
        let data = RealizationFile::from_realization(&r);
        if let Some(path) = out {
            if let Err(e) = fs::write(path, realization_to_json(&r)) {
                return Outcome::input_error(&path.display().to_string(), e.to_string());
            }
        }
        let quotient = real_quotient_data(&fan);
        let mut rows = vec![
            ("m".to_string(), r.m.to_string()),
            ("n".to_string(), fan.dim().to_string()),
            ("padding".to_string(), r.padding.len().to_string()),
            ("kernel".to_string(), r.kernel.len().to_string()),
            ("pairs".to_string(), r.pairing.len().to_string()),
            ("rational".to_string(), r.rational.to_string()),
        ];
        rows.extend(
            r.report
                .checks
                .iter()
                .map(|c| (c.name.clone(), "pass".to_string())),
        );
        let mut text = table(&rows);
        text.push_str("  round trip: induced marked fan is isomorphic to the input\n");
        text.push_str(&format!("  {}\n", quotient.note));
        Outcome::new(
            OK,
            json!({
                "file": name,
                "realization": data,
                "checks": r.report.checks,
                "round_trip": true,
                "note": quotient.note,
            }),
            text,
        )
    });
    emit(g, "realize", vec![outcome])
}

pub fn koszul(g: &Global, files: &[std::path::PathBuf], max_degree: Option<usize>) -> u8 {
    let opts = options(g);
    let outcomes = per_file(g, files, |file, fan| {
        let report = validate_marked_fan(fan, &opts);
        if !report.passed() {
            return invalid(file, &report);
        }
        if let Err(e) = face_ring_quotient(fan) {
            return ring_error(file, e);
        }
        let lsop = match linear_ideal(fan) {
            Ok(l) => l,
            Err(e) => return ring_error(file, e),
        };
        let top = max_degree.unwrap_or(fan.dim());
        let t = koszul_table(fan.complex(), &lsop, top, execution(g));
        let width = t
            .entries
            .iter()
            .flatten()
            .map(|d| d.to_string().len())
            .max()
            .unwrap_or(1)
            .max(3);
        let mut text = format!("{:<5}", "");
        for k in 0..=top {
            text.push_str(&format!(" {:>width$}", format!("k={k}")));
        }
        text.push('\n');
        for (i, row) in t.entries.iter().enumerate() {
            text.push_str(&format!("{:<5}", format!("i={i}")));
            for d in row {
                text.push_str(&format!(" {d:>width$}"));
            }
            text.push('\n');
        }
        let bad = t.higher_nonzero();
        for (i, k, d) in &bad {
            text.push_str(&format!(
                "CONSISTENCY FAILURE: H_{i} in degree {k} has dimension {d}\n"
            ));
        }
        Outcome::new(
            if bad.is_empty() { OK } else { FAILED },
            json!({ "file": file, "table": t, "higher_vanish": bad.is_empty() }),
            text,
        )
    });
    emit(g, "koszul", outcomes)
}

fn write_corpus(dir: &Path) -> anyhow::Result<Vec<String>> {
    let bad = dir.join("invalid");
    fs::create_dir_all(&bad).with_context(|| format!("creating {}", bad.display()))?;
    let mut written = Vec::new();
    let entries = corpus::valid()
        .into_iter()
        .map(|e| (dir.join(format!("{}.fan", e.name)), e.fan));
    let fixtures = corpus::invalid()
        .into_iter()
        .map(|e| (bad.join(format!("{}.fan", e.name)), e.fan));
    for (path, fan) in entries.chain(fixtures) {
        fs::write(&path, fan_to_json(&fan))
            .with_context(|| format!("writing {}", path.display()))?;
        written.push(path.display().to_string());
    }
    Ok(written)
}

pub fn corpus(g: &Global, dir: &Path) -> u8 {
    let outcome = match write_corpus(dir) {
        Ok(files) => {
            let text = files.iter().map(|f| format!("{f}\n")).collect();
            Outcome::new(OK, json!({ "written": files }), text)
        }
        Err(e) => Outcome::new(
            INPUT,
            json!({ "error": format!("{e:#}") }),
            format!("error: {e:#}\n"),
        ),
    };
    emit(g, "corpus", vec![outcome])
}
