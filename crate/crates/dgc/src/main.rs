use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use dgc::config::work_limit_from_env;
use dgc::curve_file::parse_curve_file;
use dgc::experiment::{run_experiment, ExperimentConfig};
use dgc::instance::{random_instances, InstanceSpec};
use dgc::regression::RegressionFile;
use dgc::report::{render_text, write_csv};
use dgc::scan::exhaustive_bad_primes;
use dgc_core::detmethod::{
    aux_polynomial, bezout_check, verify_padic_divisibility, AuxMode, AuxOptions, DeterminantInstance,
};
use dgc_core::geometry::{
    affine_reduce_curve, find_projection_center, infer_curve_degree, verify_count_relation, ProjectionOptions,
};
use dgc_core::irreducibility::{bad_primes, badness_value, BadnessOptions, BadnessValue};
use dgc_core::pointcount::{check_schwarz_zippel, enumerate_affine, enumerate_projective};
use dgc_core::poly::parse_poly;
use dgc_core::witness::{build_witness, verify_affine_lower_bound, verify_projective_lower_bound};
use dgc_core::{IntPoly, ProjPoint, WorkLimit};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "dgc", version, about = "Counting rational points of bounded height on curves and surfaces")]
struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Count points of height at most B on f = 0.
    Count {
        #[arg(long)]
        poly: String,
        /// Comma-separated variable names.
        #[arg(long)]
        vars: Option<String>,
        #[arg(long)]
        bound: u64,
        /// Count integer points in [-B, B]^n instead of projective points.
        #[arg(long)]
        affine: bool,
        /// List the points.
        #[arg(long)]
        points: bool,
    },
    /// Minimal-degree auxiliary polynomial through the points of height at most B.
    Auxpoly {
        #[arg(long)]
        poly: String,
        #[arg(long)]
        vars: Option<String>,
        #[arg(long)]
        bound: u64,
        #[arg(long)]
        affine: bool,
        #[arg(long)]
        max_degree: Option<u32>,
    },
    /// Primes above 27 d^4 where a bivariate f stops being absolutely irreducible.
    Badness {
        #[arg(long)]
        poly: String,
        #[arg(long)]
        vars: Option<String>,
        /// Trial-division bound when factoring the candidate product.
        #[arg(long, default_value_t = 1_000_000)]
        trial_limit: u64,
        /// Also test every prime up to this limit and compare.
        #[arg(long)]
        scan_limit: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Build a curve with many small integral points and check the lower bounds.
    Witness {
        #[arg(long)]
        degree: u32,
        #[arg(long, default_value_t = 2)]
        nvars: usize,
        #[arg(long, value_enum)]
        verify: Option<Verify>,
    },
    /// Project a space curve to a plane curve and check the count relation.
    Project {
        #[arg(long)]
        curve: PathBuf,
        #[arg(long)]
        bound: u64,
        #[arg(long)]
        height_cap: Option<u64>,
    },
    /// Check p-adic divisibility of interpolation determinants.
    PadicCheck {
        /// Ternary form; without it, random instances are generated.
        #[arg(long)]
        poly: Option<String>,
        #[arg(long)]
        prime: Option<u64>,
        /// Points as `a:b:c;d:e:f;...`.
        #[arg(long)]
        points: Option<String>,
        /// Forms separated by `;`.
        #[arg(long)]
        forms: Option<String>,
        #[arg(long, default_value_t = 20)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run an experiment described by a key-value config file.
    Experiment {
        #[arg(long)]
        config: PathBuf,
        /// Compare aggregates with the values frozen in this file.
        #[arg(long)]
        regression: Option<PathBuf>,
        /// Overwrite this experiment's entries in the regression file.
        #[arg(long, requires = "regression")]
        update_regression: bool,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Verify {
    Projective,
    Affine,
    Both,
}

/// Bad usage or input; exit status 2. Failed checks are reported through the
/// `bool` of a successful outcome and give exit status 1.
enum Failure {
    Input(String),
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Input(e.to_string())
    }
}

type Outcome = Result<(Value, String, bool), Failure>;

fn vars_for(spec: &Option<String>, default: &[&str]) -> Vec<String> {
    match spec {
        Some(s) => s.split(',').map(|v| v.trim().to_string()).collect(),
        None => default.iter().map(|s| s.to_string()).collect(),
    }
}

fn show(f: &IntPoly, vars: &[String]) -> String {
    f.display(vars).to_string()
}

fn count(poly: &str, vars: &Option<String>, bound: u64, affine: bool, list: bool, limit: WorkLimit) -> Outcome {
    let vars = vars_for(vars, if affine { &["x", "y"] } else { &["x0", "x1", "x2"] });
    let f = parse_poly(poly, &vars)?;
    let res = if affine { enumerate_affine(&f, bound, limit, list)? } else { enumerate_projective(&f, bound, limit, list)? };
    let mut v = json!({ "poly": show(&f, &vars), "bound": bound, "mode": if affine { "affine" } else { "projective" }, "count": res.count });
    let mut text = format!("N = {} at B = {}\n", res.count, bound);
    let mut ok = true;
    if affine {
        let sz = check_schwarz_zippel(&f, bound, limit)?;
        v["schwarz_zippel_bound"] = json!(sz.bound.to_string());
        v["schwarz_zippel_ok"] = json!(sz.holds);
        text += &format!("Schwarz-Zippel bound {} ({})\n", sz.bound, if sz.holds { "holds" } else { "VIOLATED" });
        ok = sz.holds;
    }
    if let Some(pts) = res.points {
        for p in &pts {
            text += &format!("{p:?}\n");
        }
        v["points"] = json!(pts);
    }
    Ok((v, text, ok))
}

fn auxpoly(poly: &str, vars: &Option<String>, bound: u64, affine: bool, max_degree: Option<u32>, limit: WorkLimit) -> Outcome {
    let vars = vars_for(vars, if affine { &["x", "y"] } else { &["x0", "x1", "x2"] });
    let f = parse_poly(poly, &vars)?;
    let mode = if affine { AuxMode::Affine } else { AuxMode::Projective };
    let cert = aux_polynomial(&f, bound, mode, &AuxOptions { max_degree, limit })?;
    let bez = bezout_check(&cert).ok();
    let v = json!({
        "poly": show(&f, &vars), "bound": bound, "points": cert.s_points(), "degree": cert.degree,
        "g": show(&cert.g, &vars), "bezout_bound": cert.bezout_bound, "bezout_ok": bez,
    });
    let text = format!(
        "N = {}, minimal degree M = {}\ng = {}\nBezout: {}\n",
        cert.s_points(),
        cert.degree,
        show(&cert.g, &vars),
        match (bez, cert.bezout_bound) {
            (Some(ok), Some(b)) => format!("{} <= {} {}", cert.s_points(), b, if ok { "holds" } else { "VIOLATED" }),
            _ => "not applicable".into(),
        }
    );
    Ok((v, text, bez != Some(false)))
}

fn badness(poly: &str, vars: &Option<String>, trial_limit: u64, scan: Option<u64>, seed: u64) -> Outcome {
    let vars = vars_for(vars, &["x", "y"]);
    let f = parse_poly(poly, &vars)?;
    let rep = bad_primes(&f, &BadnessOptions { trial_limit, seed, ..Default::default() })?;
    let value = badness_value(&rep);
    let b = match &value {
        BadnessValue::Zero => 0.0,
        v => v.value(),
    };
    let mut v = json!({
        "poly": show(&f, &vars), "degree": rep.d, "threshold": rep.threshold,
        "absolutely_irreducible": rep.absolutely_irreducible, "candidate_primes": rep.candidate_primes,
        "unfactored": rep.unfactored.as_ref().map(|u| u.to_string()), "bad_primes": rep.bad_primes, "badness": b,
    });
    let mut text = format!(
        "absolutely irreducible: {}\nbad primes above {}: {:?}\nb(f) = {}\n",
        rep.absolutely_irreducible, rep.threshold, rep.bad_primes, b
    );
    if let Some(u) = &rep.unfactored {
        text += &format!("unfactored cofactor: {u}\n");
    }
    let mut ok = true;
    if let (Some(hi), true) = (scan, rep.absolutely_irreducible) {
        let scanned = exhaustive_bad_primes(&f, rep.threshold, hi)?;
        let found: Vec<u64> = rep.bad_primes.iter().copied().filter(|&p| p <= hi).collect();
        ok = scanned == found;
        v["scan_limit"] = json!(hi);
        v["scan_bad_primes"] = json!(scanned);
        v["scan_agrees"] = json!(ok);
        text += &format!("scan up to {hi}: {:?} ({})\n", scanned, if ok { "agrees" } else { "DISAGREES" });
    }
    Ok((v, text, ok))
}

fn witness(d: u32, n: usize, verify: Option<Verify>, limit: WorkLimit) -> Outcome {
    let mut v = json!({ "degree": d, "nvars": n });
    let mut text = String::new();
    let mut ok = true;
    let w = if d >= 2 { Some(build_witness(d, n)?) } else { None };
    if let Some(w) = &w {
        let vars: Vec<String> = if n == 2 { vec!["x".into(), "y".into()] } else { (1..=n).map(|i| format!("x{i}")).collect() };
        v["poly"] = json!(show(&w.f, &vars));
        v["grid"] = json!([w.grid_low, w.grid_radius]);
        v["bound"] = json!(w.bound);
        v["grid_points"] = json!(w.claimed_count);
        v["newton_edge"] = json!(w.newton_ok);
        text += &format!(
            "f = {}\nvanishes on [{}, {}]^{}, {} grid points, B = {}\n",
            show(&w.f, &vars),
            w.grid_low,
            w.grid_radius,
            n,
            w.claimed_count,
            w.bound
        );
        ok &= w.newton_ok != Some(false);
    }
    let verify = verify.unwrap_or(if n == 2 { Verify::Both } else { Verify::Projective });
    if n == 2 && matches!(verify, Verify::Projective | Verify::Both) {
        let r = verify_projective_lower_bound(d, limit)?;
        text += &format!("projective: N = {} at B = {}, need >= {:.4}{} -> {}\n", r.count, r.bound, r.required,
            r.grid_required.map_or(String::new(), |g| format!(" and >= {g}")), if r.pass { "pass" } else { "FAIL" });
        v["projective"] = json!({ "bound": r.bound, "count": r.count, "required": r.required, "grid_required": r.grid_required, "pass": r.pass });
        ok &= r.pass;
    }
    if n == 2 && d >= 3 && matches!(verify, Verify::Affine | Verify::Both) {
        let r = verify_affine_lower_bound(w.as_ref().expect("d >= 3"), limit)?;
        text += &format!("affine: N = {} at B = {}, need >= {:.4} -> {}\n", r.count, r.bound, r.required, if r.pass { "pass" } else { "FAIL" });
        v["affine"] = json!({ "bound": r.bound, "count": r.count, "required": r.required, "pass": r.pass });
        ok &= r.pass;
    }
    if n != 2 && verify == Verify::Affine {
        return Err(Failure::Input("lower-bound checks need --nvars 2".into()));
    }
    Ok((v, text, ok))
}

fn project(path: &PathBuf, bound: u64, cap: Option<u64>, limit: WorkLimit) -> Outcome {
    let cf = parse_curve_file(&std::fs::read_to_string(path)?)?;
    let [g1, g2] = &cf.generators;
    let opts = ProjectionOptions { height_cap: cap, limit, ..Default::default() };
    if cf.is_projective() {
        let d = match cf.degree {
            Some(d) => d,
            None => infer_curve_degree(g1, g2)?,
        };
        let r = find_projection_center(g1, g2, d, &opts)?;
        let rel = verify_count_relation(g1, g2, &r, bound, &opts)?;
        let plane_vars: Vec<String> = {
            let k = r.setup.dropped_coordinates().expect("coordinate form")[0];
            cf.vars.iter().enumerate().filter(|&(i, _)| i != k).map(|(_, s)| s.clone()).collect()
        };
        let v = json!({
            "degree": d, "centers": r.setup.centers.iter().map(ProjPoint::coords).collect::<Vec<_>>(),
            "forms": r.setup.forms, "b1": r.setup.b1, "b2": r.setup.b2, "inflation": r.setup.inflation.to_string(),
            "image": show(&r.image, &plane_vars), "multiplicity": r.multiplicity, "candidates_tried": r.candidates_tried,
            "relation": {
                "bound": bound, "source_count": rel.source_count, "distinct_images": rel.distinct_images,
                "exact_image_count": rel.exact_image_count, "audits_passed": rel.audits_passed,
                "images_on_curve": rel.images_on_curve, "d_squared": rel.d_squared, "holds": rel.holds,
            },
        });
        let text = format!(
            "center {:?} (tried {}), form {:?}, inflation {}\nimage: {} = 0 (degree {})\nN(X, {}) = {} <= {} + {}: {}\n",
            r.setup.centers[0].coords(),
            r.candidates_tried,
            r.setup.forms[0],
            r.setup.inflation,
            show(&r.image, &plane_vars),
            d,
            bound,
            rel.source_count,
            rel.exact_image_count.map_or(format!("{} (distinct images)", rel.distinct_images), |c| c.to_string()),
            rel.d_squared,
            if rel.holds { "holds" } else { "FAILS" }
        );
        Ok((v, text, rel.holds))
    } else {
        let d = cf.degree.ok_or_else(|| Failure::Input("affine curve files need a `degree = d` line".into()))?;
        let r = affine_reduce_curve(g1, g2, d, bound, &opts)?;
        let rel = &r.relation;
        let plane_vars = vec!["u".to_string(), "v".to_string()];
        let v = json!({
            "degree": d, "direction": r.direction, "pivot": r.pivot, "image": show(&r.image, &plane_vars),
            "multiplicity": r.multiplicity, "inflation": rel.inflation.to_string(), "direct_inflation": r.direct_inflation,
            "notes": r.notes,
            "relation": {
                "bound": bound, "source_count": rel.source_count, "distinct_images": rel.distinct_images,
                "exact_image_count": rel.exact_image_count, "audits_passed": rel.audits_passed,
                "images_on_curve": rel.images_on_curve, "d_squared": rel.d_squared, "holds": rel.holds,
            },
        });
        let text = format!(
            "direction {:?}, inflation {} (direct {})\nimage: {} = 0\nN_aff(X, {}) = {} <= {} + {}: {}\n",
            r.direction,
            rel.inflation,
            r.direct_inflation,
            show(&r.image, &plane_vars),
            bound,
            rel.source_count,
            rel.exact_image_count.map_or(format!("{} (distinct images)", rel.distinct_images), |c| c.to_string()),
            rel.d_squared,
            if rel.holds { "holds" } else { "FAILS" }
        );
        Ok((v, text, rel.holds))
    }
}

fn parse_points(s: &str) -> Result<Vec<ProjPoint>, Failure> {
    s.split(';')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|p| {
            let c: Vec<i64> = p.split(':').map(|x| x.trim().parse()).collect::<Result<_, _>>()?;
            Ok(ProjPoint::new(c)?)
        })
        .collect()
}

fn padic(args: (Option<String>, Option<u64>, Option<String>, Option<String>), count: usize, seed: u64) -> Outcome {
    let vars = ["x0", "x1", "x2"];
    let instances = match args {
        (None, None, None, None) => random_instances(count, seed, &InstanceSpec::default()),
        (Some(poly), Some(p), Some(points), Some(forms)) => vec![DeterminantInstance {
            p,
            f: parse_poly(&poly, &vars)?,
            points: parse_points(&points)?,
            forms: forms.split(';').map(|g| parse_poly(g.trim(), &vars)).collect::<Result<_, _>>()?,
        }],
        _ => return Err(Failure::Input("give all of --poly, --prime, --points, --forms, or none".into())),
    };
    let mut rows = Vec::new();
    let mut text = String::new();
    let mut ok = true;
    for (i, inst) in instances.iter().enumerate() {
        let r = verify_padic_divisibility(inst)?;
        ok &= r.pass;
        text += &format!(
            "#{i}: p = {}, s = {}, mu = {}, v_p(det) = {}, A(s) = {} -> {}\n",
            inst.p,
            r.s,
            r.mu,
            r.valuation.map_or("inf".into(), |v| v.to_string()),
            r.predicted,
            if r.pass { "pass" } else { "FAIL" }
        );
        rows.push(json!({
            "p": inst.p, "f": show(&inst.f, &vars.map(String::from)), "s": r.s, "mu": r.mu,
            "det": r.det.to_string(), "valuation": r.valuation, "predicted": r.predicted, "pass": r.pass,
        }));
    }
    Ok((json!({ "instances": rows, "pass": ok }), text, ok))
}

fn experiment(config: &PathBuf, regression: &Option<PathBuf>, update: bool, csv: &Option<PathBuf>, limit: WorkLimit) -> Outcome {
    let cfg = ExperimentConfig::parse(&std::fs::read_to_string(config)?)?;
    let mut rep = run_experiment(&cfg, limit)?;
    if let Some(path) = regression {
        let mut frozen = match std::fs::read_to_string(path) {
            Ok(t) => RegressionFile::parse(&t)?,
            Err(e) if update && e.kind() == std::io::ErrorKind::NotFound => RegressionFile::default(),
            Err(e) => return Err(e.into()),
        };
        if update {
            frozen.set_prefix(cfg.kind.name(), &rep.aggregate);
            std::fs::write(path, frozen.render())?;
        }
        rep.check_regression(&frozen);
    }
    if let Some(path) = csv {
        write_csv(&rep, std::fs::File::create(path)?)?;
    }
    Ok((serde_json::to_value(&rep)?, render_text(&rep), rep.pass))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let limit = match work_limit_from_env() {
        Ok(l) => l,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let outcome = match cli.cmd {
        Cmd::Count { poly, vars, bound, affine, points } => count(&poly, &vars, bound, affine, points, limit),
        Cmd::Auxpoly { poly, vars, bound, affine, max_degree } => auxpoly(&poly, &vars, bound, affine, max_degree, limit),
        Cmd::Badness { poly, vars, trial_limit, scan_limit, seed } => badness(&poly, &vars, trial_limit, scan_limit, seed),
        Cmd::Witness { degree, nvars, verify } => witness(degree, nvars, verify, limit),
        Cmd::Project { curve, bound, height_cap } => project(&curve, bound, height_cap, limit),
        Cmd::PadicCheck { poly, prime, points, forms, count, seed } => padic((poly, prime, points, forms), count, seed),
        Cmd::Experiment { config, regression, update_regression, csv } => {
            experiment(&config, &regression, update_regression, &csv, limit)
        }
    };
    match outcome {
        Ok((v, text, ok)) => {
            if cli.json {
                println!("{}", serde_json::to_string_pretty(&v).expect("serializable"));
            } else {
                print!("{text}");
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
