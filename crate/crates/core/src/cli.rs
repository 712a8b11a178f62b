//! The `pbent` command line.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::construct::ternary_example::{self, Reading};
use crate::construct::manifest::Manifest;
use crate::construct::{verify_no_pu, monomial, MonomialKind};
use crate::error::{Error, Result};
use crate::gf::{default_field, make_field};
use crate::pfunc::ptt::Ptt;
use crate::pfunc::{Space, VPFunc};
use crate::pu::search_u_sets;
use crate::spectral::{classify_components, VectorialReport};

pub const EXIT_HOLDS: i32 = 0;
pub const EXIT_FAILS: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "pbent", version, about = "Vectorial p-ary bent function construction and verification")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SpaceKind {
    Field,
    Tuple,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReadingArg {
    Both,
    UConsistent,
    Literal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MonomialArg {
    Square,
    Kasami,
    Power,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum NegativeKind {
    Square,
    Kasami,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classify every component of a truth table.
    Analyze {
        #[arg(long = "in")]
        input: PathBuf,
        /// `all` or a comma-separated list of λ indices.
        #[arg(long, default_value = "all")]
        components: String,
        /// Write the JSON report to a file (`-` or no value: stdout).
        #[arg(long, num_args = 0..=1, default_missing_value = "-")]
        json: Option<String>,
        /// Domain modulus, constant term first (default: least irreducible).
        #[arg(long, value_delimiter = ',')]
        modulus_n: Option<Vec<u32>>,
        #[arg(long, value_delimiter = ',')]
        modulus_m: Option<Vec<u32>>,
        #[arg(long, value_enum, default_value = "field")]
        domain: SpaceKind,
        #[arg(long, value_enum, default_value = "field")]
        codomain: SpaceKind,
    },
    /// Build a function from a recipe manifest.
    Build {
        #[arg(long)]
        recipe: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        no_verify: bool,
        #[arg(long, num_args = 0..=1, default_missing_value = "-")]
        json: Option<String>,
    },
    /// Build and classify the ternary (8, 4) example.
    ReproduceExample {
        #[arg(long, value_enum, default_value = "both")]
        reading: ReadingArg,
        #[arg(long, num_args = 0..=1, default_missing_value = "-")]
        json: Option<String>,
    },
    /// List admissible U for the duals of G.
    SearchPu {
        #[arg(long, conflicts_with = "monomial")]
        recipe: Option<PathBuf>,
        #[arg(long, value_enum, requires = "p", requires = "m")]
        monomial: Option<MonomialArg>,
        #[arg(long)]
        p: Option<u32>,
        /// Extension degree (n for square and power, m for Kasami).
        #[arg(long)]
        m: Option<usize>,
        /// Exponent for `--monomial power`.
        #[arg(long)]
        d: Option<u64>,
        #[arg(long, default_value_t = 1)]
        t: usize,
        #[arg(long, default_value_t = 16)]
        limit: usize,
        #[arg(long, num_args = 0..=1, default_missing_value = "-")]
        json: Option<String>,
    },
    /// Certify that no nonzero u gives (P_U) for a monomial.
    Negative {
        #[arg(long, value_enum)]
        kind: NegativeKind,
        #[arg(long)]
        p: u32,
        /// n for square, m for Kasami.
        #[arg(long)]
        m: usize,
        #[arg(long, num_args = 0..=1, default_missing_value = "-")]
        json: Option<String>,
    },
}

/// Sizes the global rayon pool from `PBENT_THREADS`, if set.
pub fn init_threads() {
    if let Some(n) = std::env::var("PBENT_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}

/// Parses arguments and runs; returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_HOLDS };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::PreconditionFailed(_) | Error::HNotPlateaued | Error::PostVerificationFailed(_) => {
                    EXIT_FAILS
                }
                _ => EXIT_INPUT,
            }
        }
    }
}

fn execute(cmd: Command) -> Result<i32> {
    match cmd {
        Command::Analyze {
            input,
            components,
            json,
            modulus_n,
            modulus_m,
            domain,
            codomain,
        } => analyze(&input, &components, json, modulus_n, modulus_m, domain, codomain),
        Command::Build {
            recipe,
            out,
            no_verify,
            json,
        } => build(&recipe, &out, !no_verify, json),
        Command::ReproduceExample { reading, json } => reproduce(reading, json),
        Command::SearchPu {
            recipe,
            monomial,
            p,
            m,
            d,
            t,
            limit,
            json,
        } => search(recipe, monomial, p, m, d, t, limit, json),
        Command::Negative { kind, p, m, json } => negative(kind, p, m, json),
    }
}

fn provenance(input: &[u8], seed: Option<u64>, start: Instant) -> Value {
    json!({
        "tool": "pbent",
        "version": env!("CARGO_PKG_VERSION"),
        "input_sha256": format!("{:x}", Sha256::digest(input)),
        "seed": seed,
        "elapsed_ms": start.elapsed().as_millis() as u64,
    })
}

fn emit_json(target: &Option<String>, value: &Value) -> Result<()> {
    let Some(target) = target else { return Ok(()) };
    let text = serde_json::to_string_pretty(value)?;
    if target == "-" {
        println!("{text}");
    } else {
        std::fs::write(target, text + "\n")?;
    }
    Ok(())
}

fn space_for(p: u32, n: usize, kind: SpaceKind, modulus: Option<Vec<u32>>) -> Result<Arc<Space>> {
    match (kind, modulus) {
        (SpaceKind::Tuple, _) => Space::tuple(p, n),
        (SpaceKind::Field, Some(f)) => {
            let spec = make_field(p, &f)?;
            if spec.degree() != n {
                return Err(Error::InvalidModulus(format!("degree {} but the file says {n}", spec.degree())));
            }
            Ok(Space::field(&spec))
        }
        (SpaceKind::Field, None) => Ok(Space::field(&default_field(p, n)?)),
    }
}

fn parse_components(spec: &str, size: u32) -> Result<Vec<u32>> {
    if spec == "all" {
        return Ok((1..size).collect());
    }
    spec.split(',')
        .map(|s| {
            let l: u32 = s
                .trim()
                .parse()
                .map_err(|_| Error::InvalidArgument(format!("bad component index {s:?}")))?;
            if l == 0 || l >= size {
                return Err(Error::InvalidArgument(format!("component {l} outside 1..{size}")));
            }
            Ok(l)
        })
        .collect()
}

/// One line per component and a verdict line.
pub fn render_report(r: &VectorialReport) -> String {
    let mut s = format!("p={} n={} m={}\n", r.p, r.n, r.m);
    for c in &r.components {
        let reg = &c.regularity;
        let kind = if reg.weakly_regular {
            "weakly-regular-bent"
        } else if reg.bent {
            "bent"
        } else {
            "not-bent"
        };
        let eps = reg.epsilon.map_or("-".into(), |e| format!("{e:+}"));
        let z = reg.z.map_or("-", |z| z.as_str());
        let amp = c.amplitude.map_or("-".into(), |a| a.to_string());
        let _ = writeln!(s, "lambda={} {kind} eps={eps} z={z} amplitude={amp}", c.lambda_index);
    }
    let verdict = if r.vectorial_weakly_regular {
        "vectorial weakly regular bent"
    } else if r.vectorial_bent {
        "vectorial bent, not weakly regular"
    } else if r.plateaued {
        "not bent (plateaued)"
    } else {
        "not bent"
    };
    let _ = writeln!(
        s,
        "{}/{} components weakly regular bent: {verdict}",
        r.weakly_regular_count(),
        r.components.len()
    );
    s
}

#[allow(clippy::too_many_arguments)]
fn analyze(
    input: &Path,
    components: &str,
    json_out: Option<String>,
    modulus_n: Option<Vec<u32>>,
    modulus_m: Option<Vec<u32>>,
    domain: SpaceKind,
    codomain: SpaceKind,
) -> Result<i32> {
    let start = Instant::now();
    let bytes = std::fs::read(input)?;
    let text = String::from_utf8(bytes.clone())
        .map_err(|_| Error::Parse { line: 1, msg: "not UTF-8".into() })?;
    let ptt = Ptt::parse(&text)?;
    let dom = space_for(ptt.p, ptt.n, domain, modulus_n)?;
    let cod = space_for(ptt.p, ptt.m, codomain, modulus_m)?;
    let f = ptt.to_vpfunc(&dom, &cod)?;
    let lambdas = parse_components(components, cod.size())?;
    let report = classify_components(&f, &lambdas)?;
    print!("{}", render_report(&report));
    let mut v = report.to_json();
    v["provenance"] = provenance(&bytes, None, start);
    emit_json(&json_out, &v)?;
    Ok(if report.vectorial_weakly_regular { EXIT_HOLDS } else { EXIT_FAILS })
}

fn build(recipe: &Path, out: &Path, verify: bool, json_out: Option<String>) -> Result<i32> {
    let start = Instant::now();
    let bytes = std::fs::read(recipe)?;
    let text = String::from_utf8(bytes.clone()).map_err(|_| Error::InvalidManifest("not UTF-8".into()))?;
    let manifest = Manifest::parse(&text)?;
    let built = manifest.build(verify)?;
    Ptt::from_vpfunc(&built.f).write(out)?;
    println!("wrote {}", out.display());
    let mut v = match &built.report {
        Some(r) => {
            print!("{}", render_report(r));
            r.to_json()
        }
        None => json!({ "verified": false }),
    };
    v["provenance"] = provenance(&bytes, manifest.seed, start);
    emit_json(&json_out, &v)?;
    let holds = built
        .report
        .as_ref()
        .is_none_or(|r| if manifest.plateau_parts.is_some() { r.plateaued } else { r.vectorial_weakly_regular });
    Ok(if holds { EXIT_HOLDS } else { EXIT_FAILS })
}

fn reproduce(reading: ReadingArg, json_out: Option<String>) -> Result<i32> {
    let start = Instant::now();
    let setup = ternary_example::setup()?;
    let readings: &[Reading] = match reading {
        ReadingArg::Both => &[Reading::UConsistent, Reading::Literal],
        ReadingArg::UConsistent => &[Reading::UConsistent],
        ReadingArg::Literal => &[Reading::Literal],
    };
    let mut all_ok = true;
    let mut out = serde_json::Map::new();
    let mut reports = Vec::new();
    for &r in readings {
        let t0 = Instant::now();
        let (report, ok) = match ternary_example::build(&setup, r) {
            Ok(c) => {
                let rep = c.report.expect("verified");
                (rep, true)
            }
            Err(Error::PostVerificationFailed(msg)) => {
                // classify anyway so the failure is visible per component
                eprintln!("{}: {msg}", r.name());
                let rec = setup.recipe(r)?;
                let f = rec.g.add(&rec.lifted_h()?)?;
                (crate::spectral::vectorial_classify(&f)?, false)
            }
            Err(e) => return Err(e),
        };
        let ms = t0.elapsed().as_millis() as u64;
        println!("reading: {} U={:?}", r.name(), setup.u(r));
        print!("{}", render_report(&report));
        println!(
            "{}/{} components weakly regular bent ({} reading, {} ms)",
            report.weakly_regular_count(),
            report.components.len(),
            r.name(),
            ms
        );
        all_ok &= ok && report.vectorial_weakly_regular;
        let mut v = report.to_json();
        v["U"] = json!(setup.u(r));
        v["elapsed_ms"] = json!(ms);
        out.insert(r.name().into(), v);
        reports.push(report);
    }
    if let [a, b] = reports.as_slice() {
        let differ: Vec<u32> = a
            .components
            .iter()
            .zip(&b.components)
            .filter(|(x, y)| {
                (x.regularity.weakly_regular, x.regularity.epsilon) != (y.regularity.weakly_regular, y.regularity.epsilon)
            })
            .map(|(x, _)| x.lambda_index)
            .collect();
        if differ.is_empty() {
            println!("readings agree on every component");
        } else {
            println!("readings differ at lambda {differ:?}");
        }
        out.insert("readings_differ_at".into(), json!(differ));
    }
    let mut v = Value::Object(out);
    v["provenance"] = provenance(b"ternary_example", None, start);
    emit_json(&json_out, &v)?;
    println!("total {} ms", start.elapsed().as_millis());
    Ok(if all_ok { EXIT_HOLDS } else { EXIT_FAILS })
}

fn monomial_kind(kind: MonomialArg, p: u32, m: usize, d: Option<u64>) -> Result<MonomialKind> {
    Ok(match kind {
        MonomialArg::Square => MonomialKind::Square { p, n: m },
        MonomialArg::Kasami => MonomialKind::Kasami { p, m },
        MonomialArg::Power => MonomialKind::Power {
            p,
            n: m,
            d: d.ok_or_else(|| Error::InvalidArgument("--monomial power needs --d".into()))?,
        },
    })
}

#[allow(clippy::too_many_arguments)]
fn search(
    recipe: Option<PathBuf>,
    mono: Option<MonomialArg>,
    p: Option<u32>,
    m: Option<usize>,
    d: Option<u64>,
    t: usize,
    limit: usize,
    json_out: Option<String>,
) -> Result<i32> {
    let start = Instant::now();
    let (g, input, seed): (VPFunc, Vec<u8>, Option<u64>) = match (recipe, mono) {
        (Some(path), None) => {
            let bytes = std::fs::read(&path)?;
            let text = String::from_utf8(bytes.clone()).map_err(|_| Error::InvalidManifest("not UTF-8".into()))?;
            let man = Manifest::parse(&text)?;
            (man.g()?, bytes, man.seed)
        }
        (None, Some(kind)) => {
            let (p, m) = (p.expect("required by clap"), m.expect("required by clap"));
            let k = monomial_kind(kind, p, m, d)?;
            let label = serde_json::to_vec(&k)?;
            (monomial(k)?, label, None)
        }
        _ => return Err(Error::InvalidArgument("give --recipe or --monomial".into())),
    };
    let sets = search_u_sets(&g, t, limit)?;
    for u in &sets {
        println!("U = {u:?}");
    }
    println!("{} admissible set(s) of size {t} (limit {limit})", sets.len());
    let v = json!({
        "t": t,
        "limit": limit,
        "admissible": sets,
        "provenance": provenance(&input, seed, start),
    });
    emit_json(&json_out, &v)?;
    Ok(EXIT_HOLDS)
}

fn negative(kind: NegativeKind, p: u32, m: usize, json_out: Option<String>) -> Result<i32> {
    let start = Instant::now();
    let k = match kind {
        NegativeKind::Square => MonomialKind::Square { p, n: m },
        NegativeKind::Kasami => MonomialKind::Kasami { p, m },
    };
    let size = k.domain_size().unwrap_or(u64::MAX);
    if size > crate::construct::NEGATIVE_LIMIT {
        return Err(Error::TooLarge {
            size,
            limit: crate::construct::NEGATIVE_LIMIT,
        });
    }
    let report = verify_no_pu(&monomial(k)?)?;
    for (u, l) in &report.rejected {
        println!("u={u} rejected at lambda={l}");
    }
    for u in &report.admissible {
        println!("u={u} admissible");
    }
    if report.is_empty() {
        println!(
            "admissible set empty ({}/{} rejected)",
            report.rejected.len(),
            report.checked
        );
    } else {
        println!("admissible set NOT empty ({} admissible)", report.admissible.len());
    }
    let label = serde_json::to_vec(&k)?;
    let v = json!({
        "monomial": k,
        "checked": report.checked,
        "rejected": report.rejected,
        "admissible": report.admissible,
        "provenance": provenance(&label, None, start),
    });
    emit_json(&json_out, &v)?;
    Ok(if report.is_empty() { EXIT_HOLDS } else { EXIT_FAILS })
}
