use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::Rational64;
use serde_json::{json, Map, Value};

use implodekit::basicaffine::{embed_su_n, v_sigma_stabilizer_dim};
use implodekit::chamber::{enumerate_faces, face_of_pairings, face_relations, star};
use implodekit::implosion::{classify_smoothness, implode_equivalent_su_n, universal_strata};
use implodekit::numgeom::check_rng;
use implodekit::quantization::{
    cut_polytope, lr_coefficients_type_a, partition_to_weight, rr_implosion, tensor_decompose,
    weight_to_partition,
};
use implodekit::report::{self, character_entries, envelope};
use implodekit::su::{random_su, CMatrix, C64};
use implodekit::suites::{run_suite, special_unitary_size, Suite};
use implodekit::{Face, GroupPointSUn, RootDatum, Smoothness, Weight, WeylCap};

#[derive(Parser)]
#[command(name = "implodekit", version, about = "Imploded cross-sections from root data")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Group label (A2, B3:adjoint, SU3, SO3, U2, T1) or a root-datum JSON file.
    #[arg(long, default_value = "A2")]
    group: String,
    #[arg(long, env = "IMPLODEKIT_SEED", default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 200)]
    count: usize,
    /// Overrides the tolerance of every residual check.
    #[arg(long)]
    tolerance: Option<f64>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Ranks, Cartan matrix, lattices and Weyl group data.
    DescribeGroup(Common),
    /// Faces of the Weyl chamber with their order and stars.
    Faces(Common),
    /// Strata of the universal imploded cross-section.
    Strata(Common),
    /// Smooth, orbifold and singular faces.
    SmoothLocus(Common),
    /// Image of `(k, λ)` in the basic affine model (SU(n) only).
    Embed {
        #[command(flatten)]
        common: Common,
        /// Coroot pairings of λ, e.g. "1,0.5".
        #[arg(long)]
        lambda: String,
        /// `identity`, `random` (seeded) or a JSON matrix of [re,im] pairs.
        #[arg(long, default_value = "identity")]
        k: String,
    },
    /// Seeded numerical verification suite.
    Verify {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        suite: String,
    },
    /// Tensor product decomposition, e.g. --tensor "1,0 x 0,1".
    Quantize {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        tensor: String,
    },
    /// N-invariants of the quantization of a product of coadjoint orbits,
    /// e.g. --orbits "1,0; 0,1".
    ImplodeQuantize {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        orbits: String,
    },
    /// Points of a list lying in the cut `λ0 + closure(τ)`.
    CutPolytope {
        #[command(flatten)]
        common: Common,
        /// Points separated by ';', coordinates by ',', rationals as "p/q".
        #[arg(long)]
        points: String,
        #[arg(long)]
        lambda0: String,
        /// Vanishing simple roots of τ, e.g. "0,1"; empty for the open chamber.
        #[arg(long, default_value = "")]
        face: String,
    },
    /// Whether two points of `Φ^{-1}(t*_+)` in `T*SU(n)` are identified.
    Equivalent {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        lambda: String,
        /// JSON matrix of [re,im] pairs, or `identity`.
        #[arg(long)]
        k1: String,
        #[arg(long)]
        k2: String,
    },
}

struct Outcome {
    report: Value,
    text: String,
    ok: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let common = match &cli.command {
        Command::DescribeGroup(c)
        | Command::Faces(c)
        | Command::Strata(c)
        | Command::SmoothLocus(c) => c.clone(),
        Command::Embed { common, .. }
        | Command::Verify { common, .. }
        | Command::Quantize { common, .. }
        | Command::ImplodeQuantize { common, .. }
        | Command::CutPolytope { common, .. }
        | Command::Equivalent { common, .. } => common.clone(),
    };
    let outcome = match run(&cli.command, &common) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    let body = match common.format {
        Format::Json => report::render(&outcome.report),
        Format::Text => outcome.text,
    };
    let written = match &common.output {
        Some(path) => fs::write(path, &body).with_context(|| format!("writing {}", path.display())),
        None => std::io::stdout()
            .write_all(body.as_bytes())
            .context("writing stdout"),
    };
    if let Err(e) = written {
        eprintln!("error: {e:#}");
        return ExitCode::from(2);
    }
    if outcome.ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn load_group(label: &str) -> anyhow::Result<RootDatum> {
    if label.ends_with(".json") || std::path::Path::new(label).is_file() {
        let text = fs::read_to_string(label).with_context(|| format!("reading {label}"))?;
        return Ok(RootDatum::from_json(&text)?);
    }
    Ok(implodekit::parse_group(label)?)
}

fn parse_list<T: std::str::FromStr>(s: &str) -> anyhow::Result<Vec<T>>
where
    T::Err: std::fmt::Display,
{
    let s = s.trim().trim_start_matches('(').trim_end_matches(')');
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|x| {
            x.trim()
                .parse::<T>()
                .map_err(|e| anyhow!("cannot parse `{}`: {e}", x.trim()))
        })
        .collect()
}

fn parse_weight(d: &RootDatum, s: &str) -> anyhow::Result<Weight> {
    let w = Weight::new(parse_list::<i64>(s)?);
    d.check_weight(&w)?;
    Ok(w)
}

fn parse_matrix(s: &str, n: usize) -> anyhow::Result<CMatrix> {
    if s.trim() == "identity" {
        return Ok(CMatrix::identity(n, n));
    }
    let rows: Vec<Vec<[f64; 2]>> =
        serde_json::from_str(s).context("matrix must be JSON rows of [re, im] pairs")?;
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        bail!("matrix must be {n}x{n}");
    }
    Ok(CMatrix::from_fn(n, n, |i, j| C64::new(rows[i][j][0], rows[i][j][1])))
}

fn su_size(d: &RootDatum) -> anyhow::Result<usize> {
    special_unitary_size(d).ok_or_else(|| anyhow!("{} is not SU(n)", d.name()))
}

fn json_obj(v: Value) -> Map<String, Value> {
    match v {
        Value::Object(m) => m,
        _ => Map::new(),
    }
}

fn smoothness_text(s: &Smoothness) -> String {
    match s {
        Smoothness::Smooth(k) => format!("smooth({k})"),
        Smoothness::OrbifoldOnly(m) => format!("orbifold-only({m})"),
        Smoothness::Singular => "singular".into(),
    }
}

fn run(cmd: &Command, c: &Common) -> anyhow::Result<Outcome> {
    if c.count == 0 {
        bail!("--count must be at least 1");
    }
    if let Some(t) = c.tolerance {
        if t.is_nan() || t <= 0.0 {
            bail!("--tolerance must be positive");
        }
    }
    let d = load_group(&c.group)?;
    match cmd {
        Command::DescribeGroup(_) => describe(&d),
        Command::Faces(_) => faces(&d),
        Command::Strata(_) => strata(&d),
        Command::SmoothLocus(_) => smooth_locus(&d),
        Command::Embed { lambda, k, .. } => embed(&d, c, lambda, k),
        Command::Verify { suite, .. } => verify(&d, c, suite),
        Command::Quantize { tensor, .. } => quantize(&d, tensor),
        Command::ImplodeQuantize { orbits, .. } => implode_quantize(&d, orbits),
        Command::CutPolytope {
            points,
            lambda0,
            face,
            ..
        } => cut(&d, points, lambda0, face),
        Command::Equivalent { lambda, k1, k2, .. } => equivalent(&d, lambda, k1, k2),
    }
}

fn describe(d: &RootDatum) -> anyhow::Result<Outcome> {
    let all: Vec<usize> = (0..d.rank_ss()).collect();
    let weight_coords: Vec<Vec<String>> = d
        .weight_coords()
        .iter()
        .map(|r| r.iter().map(ToString::to_string).collect())
        .collect();
    let weyl_order = d.weyl_group_order(WeylCap::default())?;
    let report = envelope(json_obj(json!({
        "group": d.name(),
        "semisimple_rank": d.rank_ss(),
        "central_rank": d.central_rank(),
        "dim": d.dim_group(),
        "cartan": d.cartan(),
        "coroot_coords": d.coroot_coords(),
        "weight_coords": weight_coords,
        "positive_roots": d.positive_roots(),
        "rho": d.rho().coeffs,
        "weyl_group_order": weyl_order,
        "simply_connected": d.is_simply_connected(),
        "fundamental_group_order": d.levi_fundamental_group_order(&all)?,
    })));
    let text = format!(
        "{}: semisimple rank {}, central rank {}, dim {}, |W| = {}, {} positive roots\n",
        d.name(),
        d.rank_ss(),
        d.central_rank(),
        d.dim_group(),
        weyl_order,
        d.positive_roots().len()
    );
    Ok(Outcome { report, text, ok: true })
}

fn faces(d: &RootDatum) -> anyhow::Result<Outcome> {
    let order = face_relations(d);
    let mut entries = Vec::new();
    let mut text = String::new();
    for f in &order.faces {
        let star_faces = star(d, f);
        entries.push(json!({
            "face": f,
            "star": star_faces,
        }));
        text.push_str(&format!(
            "{f} dim {} star {}\n",
            f.dim,
            star_faces.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
        ));
    }
    let leq: Vec<Value> = order
        .leq
        .iter()
        .map(|&(i, j)| json!([order.faces[i].to_string(), order.faces[j].to_string()]))
        .collect();
    let report = envelope(json_obj(json!({
        "group": d.name(),
        "faces": entries,
        "leq": leq,
    })));
    Ok(Outcome { report, text, ok: true })
}

fn strata(d: &RootDatum) -> anyhow::Result<Outcome> {
    let strata = universal_strata(d)?;
    let mut text = String::new();
    for s in &strata {
        text.push_str(&format!(
            "{} real dim {} {} {} closure {}\n",
            s.face,
            s.real_dim,
            s.orbit_type.label,
            smoothness_text(&s.smoothness),
            s.closure_preds
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(" ")
        ));
    }
    Ok(Outcome {
        report: report::strata_report(d, &strata)?,
        text,
        ok: true,
    })
}

fn smooth_locus(d: &RootDatum) -> anyhow::Result<Outcome> {
    let mut entries = Vec::new();
    let mut text = String::new();
    let mut singular = Vec::new();
    for f in enumerate_faces(d) {
        let s = classify_smoothness(d, &f)?;
        if s == Smoothness::Singular {
            singular.push(f.clone());
        }
        let mut entry = json!({ "face": f, "smoothness": s });
        if let Some(n) = special_unitary_size(d) {
            entry["stabilizer"] = report::to_value(&v_sigma_stabilizer_dim(n, &f)?)?;
        }
        text.push_str(&format!("{f} {}\n", smoothness_text(&s)));
        entries.push(entry);
    }
    let report = envelope(json_obj(json!({
        "group": d.name(),
        "faces": entries,
        "singular_faces": singular,
    })));
    Ok(Outcome { report, text, ok: true })
}

fn embed(d: &RootDatum, c: &Common, lambda: &str, k: &str) -> anyhow::Result<Outcome> {
    let n = su_size(d)?;
    let pairings = parse_list::<f64>(lambda)?;
    let k = if k.trim() == "random" {
        random_su(n, &mut check_rng(c.seed, 0))
    } else {
        parse_matrix(k, n)?
    };
    let v = embed_su_n(&k, &pairings)?;
    let face = face_of_pairings(d, &pairings)?;
    let report = envelope(json_obj(json!({
        "group": d.name(),
        "lambda": pairings,
        "face": face,
        "point": report::embedded_point(&v),
        "norm": report::round_sig(v.norm()),
    })));
    let mut text = format!("face {face} norm {:.11e}\n", v.norm());
    for (p, m) in v.modules.iter().enumerate() {
        let coords: Vec<String> = m.iter().map(|z| format!("{:.11e}{:+.11e}i", z.re, z.im)).collect();
        text.push_str(&format!("module {}: {}\n", p + 1, coords.join(" ")));
    }
    Ok(Outcome { report, text, ok: true })
}

fn verify(d: &RootDatum, c: &Common, suite: &str) -> anyhow::Result<Outcome> {
    let suite: Suite = suite.parse()?;
    let checks = run_suite(suite, d, c.seed, c.count, c.tolerance)?;
    let ok = checks.iter().all(|v| v.pass);
    let mut text = String::new();
    for v in &checks {
        text.push_str(&format!(
            "{} {} max_residual {:.11e} tolerance {:.3e}",
            if v.pass { "PASS" } else { "FAIL" },
            v.check_name,
            v.max_residual,
            v.tolerance
        ));
        if let (Some(m), Some(t)) = (v.min_value, v.threshold) {
            text.push_str(&format!(" min_value {m:.11e} threshold {t:.3e}"));
        }
        text.push('\n');
    }
    Ok(Outcome {
        report: report::verification_report(d.name(), suite.name(), &checks)?,
        text,
        ok,
    })
}

fn character_text<'a>(entries: impl IntoIterator<Item = (&'a Vec<i64>, &'a i64)>) -> String {
    let parts: Vec<String> = entries
        .into_iter()
        .map(|(w, m)| {
            let w: Vec<String> = w.iter().map(ToString::to_string).collect();
            format!("({}):{m}", w.join(","))
        })
        .collect();
    format!("{{{}}}\n", parts.join(","))
}

fn quantize(d: &RootDatum, tensor: &str) -> anyhow::Result<Outcome> {
    let factors: Vec<&str> = tensor.split(['x', '⊗']).collect();
    if factors.len() != 2 {
        bail!("--tensor expects two weights separated by `x`");
    }
    let lambda = parse_weight(d, factors[0])?;
    let mu = parse_weight(d, factors[1])?;
    let v = tensor_decompose(d, &lambda, &mu)?;
    let report = envelope(json_obj(json!({
        "group": d.name(),
        "lambda": lambda.coeffs,
        "mu": mu.coeffs,
        "decomposition": character_entries(v.iter()),
    })));
    Ok(Outcome {
        report,
        text: character_text(v.iter()),
        ok: true,
    })
}

fn implode_quantize(d: &RootDatum, orbits: &str) -> anyhow::Result<Outcome> {
    let weights = orbits
        .split(';')
        .filter(|s| !s.trim().is_empty())
        .map(|s| parse_weight(d, s))
        .collect::<anyhow::Result<Vec<_>>>()?;
    let t = rr_implosion(d, &weights)?;
    let mut body = json_obj(json!({
        "group": d.name(),
        "orbits": weights.iter().map(|w| w.coeffs.clone()).collect::<Vec<_>>(),
        "n_invariants": character_entries(t.iter()),
    }));
    let mut ok = true;
    if let (Some(n), [a, b]) = (special_unitary_size(d), weights.as_slice()) {
        let lr = lr_coefficients_type_a(n, &weight_to_partition(&a.coeffs), &weight_to_partition(&b.coeffs))?;
        let mut expected = std::collections::BTreeMap::new();
        for (nu, m) in lr {
            *expected.entry(partition_to_weight(n, &nu)?).or_insert(0i64) += m as i64;
        }
        let agrees = expected == *t.as_map();
        ok = agrees;
        body.insert("lr_agrees".into(), json!(agrees));
    }
    Ok(Outcome {
        report: envelope(body),
        text: character_text(t.iter()),
        ok,
    })
}

fn cut(d: &RootDatum, points: &str, lambda0: &str, face: &str) -> anyhow::Result<Outcome> {
    let pts = points
        .split(';')
        .filter(|s| !s.trim().is_empty())
        .map(parse_list::<Rational64>)
        .collect::<anyhow::Result<Vec<_>>>()?;
    let lambda0 = parse_list::<Rational64>(lambda0)?;
    let tau = Face::new(d, parse_list::<usize>(face.trim_matches(|c| c == '{' || c == '}'))?)?;
    if lambda0.len() != d.rank_ss() {
        bail!("lambda0 needs {} coordinates", d.rank_ss());
    }
    let kept = cut_polytope(&pts, &lambda0, &tau)?;
    let show = |p: &Vec<Rational64>| p.iter().map(ToString::to_string).collect::<Vec<_>>();
    let kept_s: Vec<Vec<String>> = kept.iter().map(show).collect();
    let report = envelope(json_obj(json!({
        "group": d.name(),
        "face": tau,
        "lambda0": show(&lambda0),
        "points": kept_s,
    })));
    let text = kept_s
        .iter()
        .map(|p| format!("({})\n", p.join(",")))
        .collect();
    Ok(Outcome { report, text, ok: true })
}

fn equivalent(d: &RootDatum, lambda: &str, k1: &str, k2: &str) -> anyhow::Result<Outcome> {
    let n = su_size(d)?;
    let w = parse_weight(d, lambda)?;
    let m1 = GroupPointSUn::new(parse_matrix(k1, n)?, w.clone())?;
    let m2 = GroupPointSUn::new(parse_matrix(k2, n)?, w)?;
    let eq = implode_equivalent_su_n(&m1, &m2)?;
    let report = envelope(json_obj(json!({
        "group": d.name(),
        "equivalent": eq,
    })));
    Ok(Outcome {
        report,
        text: format!("{eq}\n"),
        ok: true,
    })
}
