//! Batch front end. Every command reads JSON inputs, writes a JSON (or
//! DOT) report into the output directory and returns an exit status:
//! 0 when all checks pass, 1 when a check fails (a counterexample file is
//! written next to the report), 2 when an input cannot be read or built.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::banach::{dualball_pullback_check, is_internal_pushout_banach, norm_identity_at, pushout_banach, BanachPushout};
use crate::boolean::{
    is_internal_pushout, posex_witness, pushout, FiniteBoolAlg, PushoutSquare, PushoutVerdict, Subalgebra,
};
use crate::error::{Error, Result};
use crate::geometry::{unit, Vector};
use crate::io::dot;
use crate::io::json::{
    from_qs, parse, to_pretty, to_qs, AlgebraLit, EmbeddingLit, LinearEmbeddingLit, PolytopeLit, SpaceLit,
    SubalgebraLit, Q, SCHEMA,
};
use crate::suites::{run_suite, SuiteConfig};
use crate::tower::banach::{banach_back_and_forth, BanachIsoOutcome};
use crate::tower::boolean::{back_and_forth, pointed_back_and_forth, BoolTower};
use crate::tower::{build_tower, Tower, TowerSpec};

#[derive(Clone, Debug, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Push-out of two Boolean embeddings, or an internal push-out / posex check
    PushoutBool { input: PathBuf },
    /// Push-out of two isometric embeddings, or an internal push-out check
    PushoutBanach { input: PathBuf },
    /// Build a tower and verify every step
    TowerBuild { input: PathBuf },
    /// Back-and-forth between the tops of two towers
    TowerIso {
        left: PathBuf,
        right: PathBuf,
        /// Designated atoms `P:Q` of the left and right tops
        #[arg(long, value_parser = parse_point)]
        point: Option<(usize, usize)>,
        /// Candidate budget for the Banach search
        #[arg(long, default_value_t = 100_000)]
        budget: usize,
    },
    /// Run a seeded property suite
    CheckProps { suite: String },
    /// Graphviz for a square or tower; V/H form for a space's dual ball
    Export { input: PathBuf },
}

fn parse_point(s: &str) -> std::result::Result<(usize, usize), String> {
    let (p, q) = s.split_once(':').ok_or("expected P:Q")?;
    Ok((p.trim().parse().map_err(|_| "bad P")?, q.trim().parse().map_err(|_| "bad Q")?))
}

fn positive(s: &str) -> std::result::Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be positive".into()),
        Ok(n) => Ok(n),
        Err(e) => Err(e.to_string()),
    }
}

#[derive(Clone, Debug, Parser)]
#[command(name = "amalgam", version, about = "Exact amalgamation of finite Boolean algebras and polytopal spaces")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, default_value_t = 100, value_parser = positive)]
    pub instances: usize,
    #[arg(long, global = true, default_value_t = 8, value_parser = positive)]
    pub max_atoms: usize,
    #[arg(long, global = true, default_value_t = 3, value_parser = positive)]
    pub max_dim: usize,
    #[arg(long, global = true, default_value_t = 12, value_parser = positive)]
    pub max_gens: usize,
    /// Directory for reports
    #[arg(long, global = true, default_value = ".")]
    pub out: PathBuf,
}

impl RunConfig {
    fn suite_config(&self) -> SuiteConfig {
        SuiteConfig {
            seed: self.seed,
            instances: self.instances,
            max_atoms: self.max_atoms,
            max_dim: self.max_dim,
            max_gens: self.max_gens,
        }
    }
}

/// What a run did.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunOutcome {
    pub status: i32,
    pub files: Vec<PathBuf>,
    /// One-line summary for the terminal.
    pub message: String,
}

/// Parses `args` (program name first), runs, and returns the exit status.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cfg = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let out = run(&cfg);
    if out.status == 0 {
        println!("{}", out.message);
    } else {
        eprintln!("{}", out.message);
    }
    for f in &out.files {
        println!("wrote {}", f.display());
    }
    out.status
}

pub fn run(cfg: &RunConfig) -> RunOutcome {
    match dispatch(cfg) {
        Ok(o) => o,
        Err(e) => RunOutcome {
            status: 2,
            files: Vec::new(),
            message: format!("error: {e}"),
        },
    }
}

/// A report and, when a check failed, the counterexample.
struct Done {
    name: String,
    report: String,
    counterexample: Option<String>,
    summary: String,
}

fn dispatch(cfg: &RunConfig) -> Result<RunOutcome> {
    let done = match &cfg.command {
        Command::PushoutBool { input } => pushout_bool(input)?,
        Command::PushoutBanach { input } => pushout_banach_cmd(input)?,
        Command::TowerBuild { input } => tower_build(input)?,
        Command::TowerIso {
            left,
            right,
            point,
            budget,
        } => tower_iso(left, right, *point, *budget)?,
        Command::CheckProps { suite } => check_props(suite, &cfg.suite_config())?,
        Command::Export { input } => export(input)?,
    };
    fs::create_dir_all(&cfg.out).map_err(|e| io_error(&cfg.out, e))?;
    let mut files = Vec::new();
    let path = cfg.out.join(&done.name);
    fs::write(&path, &done.report).map_err(|e| io_error(&path, e))?;
    files.push(path);
    let status = match &done.counterexample {
        Some(c) => {
            let stem = done.name.rsplit_once('.').map_or(done.name.as_str(), |(s, _)| s);
            let path = cfg.out.join(format!("{stem}.counterexample.json"));
            fs::write(&path, c).map_err(|e| io_error(&path, e))?;
            files.push(path);
            1
        }
        None => 0,
    };
    Ok(RunOutcome {
        status,
        files,
        message: done.summary,
    })
}

fn io_error(path: &Path, e: std::io::Error) -> Error {
    Error::Parse {
        location: path.display().to_string(),
        message: e.to_string(),
    }
}

fn read(path: &Path) -> Result<(String, String)> {
    let text = fs::read_to_string(path).map_err(|e| io_error(path, e))?;
    Ok((path.display().to_string(), text))
}

/// Top-level keys of a JSON object, after a syntax check.
fn keys(src: &str, text: &str) -> Result<Vec<String>> {
    let v: Value = parse(src, text)?;
    Ok(v.as_object().map(|o| o.keys().cloned().collect()).unwrap_or_default())
}

fn has(keys: &[String], k: &str) -> bool {
    keys.iter().any(|x| x == k)
}

fn shape_error(src: &str, expected: &str) -> Error {
    Error::Parse {
        location: format!("{src}:1:1"),
        message: format!("unrecognised input; expected {expected}"),
    }
}

// ---- Boolean push-outs ----

#[derive(Deserialize)]
struct BoolConstruct {
    u: EmbeddingLit,
    v: EmbeddingLit,
}

#[derive(Deserialize)]
struct BoolInternal {
    b: AlgebraLit,
    s: SubalgebraLit,
    a: SubalgebraLit,
}

#[derive(Deserialize)]
struct BoolPosex {
    b: AlgebraLit,
    a: SubalgebraLit,
    q: Vec<Vec<String>>,
}

#[derive(Serialize)]
struct InterpolantRow {
    a: Vec<String>,
    s: Vec<String>,
    r: Vec<String>,
}

fn interpolant_rows(b: &FiniteBoolAlg, s: &Subalgebra, a: &Subalgebra) -> Result<Vec<InterpolantRow>> {
    Ok(crate::boolean::interpolant_table(b.len(), s, a)?
        .into_iter()
        .map(|row| InterpolantRow {
            a: b.labels_of(row.a),
            s: b.labels_of(row.s),
            r: b.labels_of(row.r),
        })
        .collect())
}

fn verdict_json(b: &FiniteBoolAlg, v: &PushoutVerdict) -> Value {
    let pair = |p: Option<(crate::boolean::AtomSet, crate::boolean::AtomSet)>| {
        p.map(|(x, y)| json!({ "a": b.labels_of(x), "s": b.labels_of(y) }))
    };
    json!({
        "holds": v.holds(),
        "intersection": SubalgebraLit::of(b, &v.intersection),
        "generation_gap": v.generation_gap.map(|(i, j)| [b.atoms()[i].clone(), b.atoms()[j].clone()]),
        "disjoint_violation": pair(v.disjoint_violation),
        "order_violation": pair(v.order_violation),
    })
}

fn square_json(sq: &PushoutSquare) -> Result<Value> {
    let b = sq.b();
    let verdict = sq.verdict();
    let interpolants = if verdict.holds() {
        Some(interpolant_rows(b, &sq.s_image(), &sq.a_image())?)
    } else {
        None
    };
    Ok(json!({
        "b": AlgebraLit::of(b),
        "r_to_s": EmbeddingLit::of(&sq.r_to_s),
        "r_to_a": EmbeddingLit::of(&sq.r_to_a),
        "s_to_b": EmbeddingLit::of(&sq.s_to_b),
        "a_to_b": EmbeddingLit::of(&sq.a_to_b),
        "commutes": sq.commutes(),
        "verdict": verdict_json(b, &verdict),
        "interpolants": interpolants,
    }))
}

fn report(command: &str, mode: &str, body: Value) -> String {
    to_pretty(&json!({ "schema": SCHEMA, "command": command, "mode": mode, "result": body }))
}

fn pushout_bool(input: &Path) -> Result<Done> {
    let (src, text) = read(input)?;
    let k = keys(&src, &text)?;
    let name = "pushout-bool.json".to_string();
    if has(&k, "u") {
        let c: BoolConstruct = parse(&src, &text)?;
        let sq = pushout(&c.u.build()?, &c.v.build()?)?;
        let body = square_json(&sq)?;
        let ok = sq.is_pushout_diagram();
        Ok(Done {
            summary: format!("push-out with {} atoms", sq.b().len()),
            counterexample: (!ok).then(|| to_pretty(&body)),
            report: report("pushout-bool", "construct", body),
            name,
        })
    } else if has(&k, "q") {
        let c: BoolPosex = parse(&src, &text)?;
        let b = c.b.build()?;
        let a = c.a.build(&b)?;
        let q = c.q.iter().map(|e| b.element(e.iter().map(String::as_str))).collect::<Result<Vec<_>>>()?;
        let w = posex_witness(&b, &a, &q)?;
        let body = json!({
            "s": SubalgebraLit::of(&b, &w.s),
            "iterations": w.iterations,
            "verdict": verdict_json(&b, &w.verdict),
        });
        let ok = w.verdict.holds();
        Ok(Done {
            summary: format!("posex witness with {} blocks after {} rounds", w.s.num_blocks(), w.iterations),
            counterexample: (!ok).then(|| to_pretty(&body)),
            report: report("pushout-bool", "posex", body),
            name,
        })
    } else if has(&k, "b") {
        let c: BoolInternal = parse(&src, &text)?;
        let b = c.b.build()?;
        let (s, a) = (c.s.build(&b)?, c.a.build(&b)?);
        let v = is_internal_pushout(&b, &s, &a)?;
        let mut body = verdict_json(&b, &v);
        if v.holds() {
            body["interpolants"] = serde_json::to_value(interpolant_rows(&b, &s, &a)?).expect("rows serialize");
        }
        Ok(Done {
            summary: format!("internal push-out: {}", v.holds()),
            counterexample: (!v.holds()).then(|| to_pretty(&body)),
            report: report("pushout-bool", "internal", body),
            name,
        })
    } else {
        Err(shape_error(&src, "{u, v}, {b, s, a} or {b, a, q}"))
    }
}

// ---- Banach push-outs ----

#[derive(Deserialize)]
struct BanachConstruct {
    u: LinearEmbeddingLit,
    v: LinearEmbeddingLit,
}

#[derive(Deserialize)]
struct BanachInternal {
    y: SpaceLit,
    s_basis: Vec<Vec<Q>>,
    x_basis: Vec<Vec<Q>>,
}

fn qs(vs: &[Vector]) -> Vec<Vec<Q>> {
    vs.iter().map(|v| to_qs(v)).collect()
}

fn banach_square_json(po: &BanachPushout) -> Result<Value> {
    let verdict = po.verdict()?;
    let s_basis = po.s_to_y.columns();
    let x_basis = po.x_to_y.columns();
    // the norm identity at each pair of basis vectors, with its LP minimizer
    let mut identities = Vec::new();
    for i in 0..s_basis.len() {
        for j in 0..x_basis.len() {
            identities.push(norm_identity_at(
                po.y(),
                &s_basis,
                &x_basis,
                &unit(s_basis.len(), i),
                &unit(x_basis.len(), j),
            )?);
        }
    }
    Ok(json!({
        "y": SpaceLit::of(po.y()),
        "r_to_s": LinearEmbeddingLit::of(&po.r_to_s),
        "r_to_x": LinearEmbeddingLit::of(&po.r_to_x),
        "s_to_y": LinearEmbeddingLit::of(&po.s_to_y),
        "x_to_y": LinearEmbeddingLit::of(&po.x_to_y),
        "commutes": po.commutes(),
        "internal_pushout": verdict.holds(),
        "dual_ball_pullback": dualball_pullback_check(po)?,
        "witness": verdict.witness,
        "norm_identities": identities,
    }))
}

fn pushout_banach_cmd(input: &Path) -> Result<Done> {
    let (src, text) = read(input)?;
    let k = keys(&src, &text)?;
    let name = "pushout-banach.json".to_string();
    if has(&k, "u") {
        let c: BanachConstruct = parse(&src, &text)?;
        let po = pushout_banach(&c.u.build()?, &c.v.build()?)?;
        let body = banach_square_json(&po)?;
        let ok = body["internal_pushout"] == json!(true) && body["dual_ball_pullback"] == json!(true);
        Ok(Done {
            summary: format!("push-out of dimension {}", po.y().dim()),
            counterexample: (!ok).then(|| to_pretty(&body)),
            report: report("pushout-banach", "construct", body),
            name,
        })
    } else if has(&k, "y") {
        let c: BanachInternal = parse(&src, &text)?;
        let y = c.y.build()?;
        let s: Vec<Vector> = c.s_basis.iter().map(|v| from_qs(v)).collect();
        let x: Vec<Vector> = c.x_basis.iter().map(|v| from_qs(v)).collect();
        let v = is_internal_pushout_banach(&y, &s, &x)?;
        let body = json!({
            "holds": v.holds(),
            "span_gap": v.span_gap.as_deref().map(to_qs),
            "intersection": qs(&v.intersection),
            "witness": v.witness,
        });
        Ok(Done {
            summary: format!("internal push-out: {}", v.holds()),
            counterexample: (!v.holds()).then(|| to_pretty(&body)),
            report: report("pushout-banach", "internal", body),
            name,
        })
    } else {
        Err(shape_error(&src, "{u, v} or {y, s_basis, x_basis}"))
    }
}

// ---- towers ----

fn read_tower(path: &Path) -> Result<Tower> {
    let (src, text) = read(path)?;
    build_tower(&parse::<TowerSpec>(&src, &text)?)
}

fn bool_tower_json(t: &BoolTower) -> Value {
    let top = t.top();
    json!({
        "top": AlgebraLit::of(top),
        "s_images": (0..t.len()).map(|a| SubalgebraLit::of(top, t.s_image(a))).collect::<Vec<_>>(),
        "r_images": (0..t.len()).map(|a| SubalgebraLit::of(top, t.r_image(a))).collect::<Vec<_>>(),
    })
}

fn tower_build(input: &Path) -> Result<Done> {
    let t = read_tower(input)?;
    let (verified, detail) = match &t {
        Tower::Boolean(b) => (b.verify(), bool_tower_json(b)),
        Tower::Banach(b) => (
            b.verify()?,
            json!({
                "top": SpaceLit::of(b.top()),
                "s_images": (0..b.len()).map(|a| qs(&b.s_image(a))).collect::<Vec<_>>(),
                "r_images": (0..b.len()).map(|a| qs(&b.r_image(a))).collect::<Vec<_>>(),
            }),
        ),
    };
    let body = json!({
        "kind": t.kind(),
        "steps": t.len(),
        "stage_sizes": t.stage_sizes(),
        "verified": verified,
        "tower": detail,
    });
    Ok(Done {
        name: "tower-build.json".into(),
        summary: format!("{} tower with stage sizes {:?}", t.kind(), t.stage_sizes()),
        counterexample: (!verified).then(|| to_pretty(&body)),
        report: report("tower-build", t.kind(), body),
    })
}

fn tower_iso(left: &Path, right: &Path, point: Option<(usize, usize)>, budget: usize) -> Result<Done> {
    let (l, r) = (read_tower(left)?, read_tower(right)?);
    let (body, ok) = match (&l, &r) {
        (Tower::Boolean(a), Tower::Boolean(b)) => {
            let run = match point {
                Some((p, q)) => pointed_back_and_forth(a, p, b, q)?,
                None => back_and_forth(a, b)?,
            };
            let iso = run.iso.as_ref().map(|f| {
                let (lt, rt) = (a.top().atoms(), b.top().atoms());
                f.atom_map()
                    .iter()
                    .enumerate()
                    .map(|(t, &s)| (rt[t].clone(), lt[s].clone()))
                    .collect::<std::collections::BTreeMap<_, _>>()
            });
            (json!({ "isomorphism": iso, "point": point, "transcript": run.transcript }), run.iso.is_some())
        }
        (Tower::Banach(a), Tower::Banach(b)) => match banach_back_and_forth(a, b, budget)? {
            BanachIsoOutcome::Isometry(f) => (
                json!({ "isometry": { "status": "isometry", "matrix": qs(&f.matrix().rows) } }),
                true,
            ),
            BanachIsoOutcome::Failure { stage, reason } => (
                json!({ "isometry": { "status": "failure", "stage": stage, "reason": reason } }),
                false,
            ),
        },
        _ => return Err(crate::error::domain("towers are of different kinds")),
    };
    Ok(Done {
        name: "tower-iso.json".into(),
        summary: format!("back-and-forth {}", if ok { "succeeded" } else { "failed" }),
        counterexample: (!ok).then(|| to_pretty(&body)),
        report: report("tower-iso", l.kind(), body),
    })
}

// ---- suites ----

fn check_props(suite: &str, cfg: &SuiteConfig) -> Result<Done> {
    let r = run_suite(suite, cfg)?;
    let counterexample = (!r.passed()).then(|| to_pretty(&r.failures));
    Ok(Done {
        name: format!("check-props-{suite}.json"),
        summary: format!("{suite}: {} violations", r.violations),
        report: to_pretty(&r),
        counterexample,
    })
}

// ---- export ----

fn export(input: &Path) -> Result<Done> {
    let (src, text) = read(input)?;
    let k = keys(&src, &text)?;
    let stem = input.file_stem().map_or("export".into(), |s| s.to_string_lossy().into_owned());
    let (ext, body) = if has(&k, "kind") {
        let t = build_tower(&parse::<TowerSpec>(&src, &text)?)?;
        let d = match &t {
            Tower::Boolean(b) => dot::bool_tower(b),
            Tower::Banach(b) => dot::banach_tower(b),
        };
        ("dot", d)
    } else if has(&k, "u") {
        let v: Value = parse(&src, &text)?;
        if v["u"].get("matrix").is_some() {
            let c: BanachConstruct = parse(&src, &text)?;
            ("dot", dot::banach_square(&pushout_banach(&c.u.build()?, &c.v.build()?)?))
        } else {
            let c: BoolConstruct = parse(&src, &text)?;
            ("dot", dot::bool_square(&pushout(&c.u.build()?, &c.v.build()?)?))
        }
    } else if has(&k, "b") && has(&k, "s") {
        let c: BoolInternal = parse(&src, &text)?;
        let b = c.b.build()?;
        let sq = PushoutSquare::from_subalgebras(&b, &c.s.build(&b)?, &c.a.build(&b)?)?;
        ("dot", dot::bool_square(&sq))
    } else if has(&k, "dual_gens") {
        let s: SpaceLit = parse(&src, &text)?;
        let x = s.build()?;
        ("json", to_pretty(&PolytopeLit::of(x.dual_ball()?)))
    } else {
        return Err(shape_error(&src, "a tower spec, a square input or a space"));
    };
    Ok(Done {
        name: format!("{stem}.{ext}"),
        summary: format!("exported {stem}.{ext}"),
        report: body,
        counterexample: None,
    })
}
