//! `pedigree`: construct, compare, reconstruct and count pedigrees.
//!
//! Exit codes: 0 success, 2 invalid input, 3 failed verification, 4 search
//! budget exhausted, 5 reconstruction undetermined.

mod figures;
mod manifest;

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use pedigree_core::counterexample::{
    build_counterexample, genderize, hypomorphism_witness, CounterexampleError, Orderings,
};
use pedigree_core::enumeration::{
    bounded_gap_lower_m, bounds_m, bounds_n, brute_count_n, site_bound, CensusOptions, CountBounds,
    EnumError,
};
use pedigree_core::io::{
    pedigree_from_json, pedigree_to_dot, pedigree_to_json, FormatError, PedigreeJson,
};
use pedigree_core::isomorphism::{
    deck, find_isomorphism, hypomorphism_report, verify_isomorphism, IsoError, LabelledIsomorphism,
    SearchLimit,
};
use pedigree_core::reconstruction::{
    brute_reconstructibility, reconstruct, DeckOfPedigrees, ProbeOutcome, Reconstruction,
    ReconstructionError, Universe,
};
use pedigree_core::Pedigree;

use manifest::OutputDir;

#[derive(Parser)]
#[command(name = "pedigree", version, about = "Pedigree reconstruction toolkit")]
struct Cli {
    /// Node budget for each canonical labelling search.
    #[arg(long, global = true, default_value_t = SearchLimit::DEFAULT_NODES)]
    node_limit: u64,
    /// Seed for randomised steps.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build and check the non-reconstructible pair for `n`.
    Counterexample {
        #[arg(long)]
        n: usize,
        /// Digit ordering for one tree, as `i:a,b,..`; repeatable.
        #[arg(long = "ordering")]
        orderings: Vec<String>,
        /// Duplicate every vertex into a male and a female copy.
        #[arg(long)]
        genderize: bool,
        #[arg(long)]
        out: PathBuf,
    },
    /// Compare two pedigrees and their `r`-decks.
    Verify {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        json: bool,
    },
    /// Canonical codes of every `r`-card.
    Deck {
        pedigree: PathBuf,
        #[arg(long)]
        r: usize,
    },
    /// The `n - 1` cards as full pedigrees.
    Cards {
        pedigree: PathBuf,
        /// Renumber each card's vertices at random (see `--seed`).
        #[arg(long)]
        shuffle: bool,
    },
    /// Rebuild a pedigree from its `n - 1` cards.
    Reconstruct {
        #[arg(long)]
        deck: PathBuf,
    },
    /// Search small pedigrees for one sharing the `r`-deck.
    Probe {
        #[arg(long)]
        pedigree: PathBuf,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        max_vertices: usize,
    },
    /// Bounds on the number of pedigrees and the implied site counts.
    Bounds {
        #[arg(long, value_enum)]
        model: Model,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        t: Option<usize>,
    },
    /// Exact count of discrete generation pedigrees by exhaustion.
    Census {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        strict_population: bool,
    },
    /// Write the DOT figure fixtures.
    Figures {
        #[arg(long, default_value = "docs/figures")]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Model {
    Discrete,
    General,
    Gap,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn invalid(message: impl ToString) -> Self {
        Failure {
            code: 2,
            message: message.to_string(),
        }
    }

    fn verification(message: impl ToString) -> Self {
        Failure {
            code: 3,
            message: message.to_string(),
        }
    }
}

impl From<IsoError> for Failure {
    fn from(e: IsoError) -> Self {
        let code = if matches!(e, IsoError::ResourceLimit { .. }) {
            4
        } else {
            2
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<EnumError> for Failure {
    fn from(e: EnumError) -> Self {
        match e {
            EnumError::ResourceLimit { .. } => Failure {
                code: 4,
                message: e.to_string(),
            },
            EnumError::Iso(e) => e.into(),
            other => Failure::invalid(other),
        }
    }
}

impl From<ReconstructionError> for Failure {
    fn from(e: ReconstructionError) -> Self {
        match e {
            ReconstructionError::Iso(e) => e.into(),
            other => Failure::invalid(other),
        }
    }
}

impl From<CounterexampleError> for Failure {
    fn from(e: CounterexampleError) -> Self {
        Failure::invalid(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::invalid(e)
    }
}

type Outcome = Result<(), Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::invalid(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<Pedigree, Failure> {
    pedigree_from_json(&read(path)?)
        .map_err(|e: FormatError| Failure::invalid(format!("{}: {e}", path.display())))
}

fn print_json(v: &impl serde::Serialize) {
    println!(
        "{}",
        serde_json::to_string_pretty(v).expect("output serializes")
    );
}

fn parse_orderings(n: usize, specs: &[String]) -> Result<Option<Orderings>, Failure> {
    if specs.is_empty() {
        return Ok(None);
    }
    let mut orderings = Orderings::ascending(n);
    for spec in specs {
        let bad = || Failure::invalid(format!("ordering {spec:?} is not of the form i:a,b,.."));
        let (i, rest) = spec.split_once(':').ok_or_else(bad)?;
        let i: usize = i.trim().parse().map_err(|_| bad())?;
        if !(1..=n).contains(&i) {
            return Err(Failure::invalid(format!(
                "tree index {i} is outside 1..={n}"
            )));
        }
        let digits = rest
            .split(',')
            .map(|d| d.trim().parse::<usize>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| bad())?;
        orderings = orderings.with(i, digits);
    }
    Ok(Some(orderings))
}

fn map_json(m: &LabelledIsomorphism) -> Value {
    Value::Object(
        m.0.iter()
            .map(|(v, w)| (v.0.to_string(), json!(w.0)))
            .collect(),
    )
}

fn cmd_counterexample(
    n: usize,
    specs: &[String],
    gendered: bool,
    out: &Path,
    limit: SearchLimit,
) -> Outcome {
    let orderings = parse_orderings(n, specs)?;
    let ce = build_counterexample(n, orderings)?;
    let (g, h) = (&ce.t.hypergraph, &ce.u.hypergraph);
    let (gt, gu) = if gendered {
        (
            Some(genderize(&ce.t.pedigree)),
            Some(genderize(&ce.u.pedigree)),
        )
    } else {
        (None, None)
    };
    let (t, u) = match (&gt, &gu) {
        (Some(a), Some(b)) => (&a.pedigree, &b.pedigree),
        _ => (&ce.t.pedigree, &ce.u.pedigree),
    };

    if find_isomorphism(t, u, limit)?.is_some() {
        return Err(Failure::verification("T and U are isomorphic"));
    }
    let mut witnesses = serde_json::Map::new();
    for j in 1..=n {
        let labels = ce.card_labels(j);
        let a = t.sub_pedigree(&labels).expect("labels are extant");
        let b = u.sub_pedigree(&labels).expect("labels are extant");
        let mut pi = hypomorphism_witness(&ce, j)?;
        if let (Some(x), Some(y)) = (&gt, &gu) {
            pi = x.lift(y, &pi).restrict(&a);
        }
        if !verify_isomorphism(&a, &b, &pi) {
            return Err(Failure::verification(format!(
                "the witness for the card without x{j} fails"
            )));
        }
        witnesses.insert(format!("x{j}"), map_json(&pi));
    }
    if let (Some(x), Some(y)) = (&gt, &gu) {
        if !x.genders.is_valid_for(t) || !y.genders.is_valid_for(u) {
            return Err(Failure::verification("gender labelling is invalid"));
        }
    }

    let mut parameters = BTreeMap::new();
    parameters.insert("n".into(), json!(n));
    parameters.insert(
        "orderings".into(),
        json!((1..=n)
            .map(|i| ce.orderings.get(i).to_vec())
            .collect::<Vec<_>>()),
    );
    parameters.insert("genderize".into(), json!(gendered));
    let mut dir = OutputDir::new("counterexample", parameters);
    dir.add("T.json", pedigree_to_json(t));
    dir.add("U.json", pedigree_to_json(u));
    dir.add(
        "hypergraphs.txt",
        format!("{}\n{}", g.to_text("g"), h.to_text("h")),
    );
    let mut w = serde_json::to_string_pretty(&witnesses).expect("witnesses serialize");
    w.push('\n');
    dir.add("witnesses.json", w);
    dir.add("T.dot", pedigree_to_dot(t, "T"));
    dir.add("U.dot", pedigree_to_dot(u, "U"));
    if let (Some(x), Some(y)) = (&gt, &gu) {
        let mut s = serde_json::to_string_pretty(&json!({ "T": x.genders.0, "U": y.genders.0 }))
            .expect("genders");
        s.push('\n');
        dir.add("genders.json", s);
    }
    dir.write(out)?;
    println!(
        "wrote {} (T: {} vertices, U: {} vertices)",
        out.display(),
        t.vertex_count(),
        u.vertex_count()
    );
    Ok(())
}

fn cmd_verify(a: &Path, b: &Path, r: usize, as_json: bool, limit: SearchLimit) -> Outcome {
    let (p, q) = (load(a)?, load(b)?);
    let iso = find_isomorphism(&p, &q, limit)?;
    let report = hypomorphism_report(&p, &q, r, limit)?;
    let hypomorphic = report.iter().all(|v| v.isomorphic());
    if as_json {
        let cards: Vec<Value> = report
            .iter()
            .map(|v| json!({ "subset": v.subset.key(), "isomorphic": v.isomorphic(), "witness": v.witness.as_ref().map(map_json) }))
            .collect();
        print_json(&json!({
            "r": r,
            "isomorphic": iso.is_some(),
            "hypomorphic": hypomorphic,
            "witness": iso.as_ref().map(map_json),
            "cards": cards,
        }));
    } else {
        println!("isomorphic: {}", iso.is_some());
        println!("{r}-hypomorphic: {hypomorphic}");
        for v in &report {
            println!(
                "  {{{}}}: {}",
                v.subset.key(),
                if v.isomorphic() {
                    "isomorphic"
                } else {
                    "differs"
                }
            );
        }
    }
    Ok(())
}

fn cmd_reconstruct(path: &Path) -> Outcome {
    let d = DeckOfPedigrees::from_json(&read(path)?)?;
    match reconstruct(&d)? {
        Reconstruction::Reconstructed { pedigree, method } => {
            eprintln!(
                "reconstructed by {}",
                serde_json::to_value(method)
                    .expect("method")
                    .as_str()
                    .unwrap_or("")
            );
            print!("{}", pedigree_to_json(&pedigree));
            Ok(())
        }
        Reconstruction::Undetermined { reason } => Err(Failure {
            code: 5,
            message: format!("undetermined: {reason}"),
        }),
    }
}

fn cmd_probe(path: &Path, r: usize, max_vertices: usize, limit: SearchLimit) -> Outcome {
    let p = load(path)?;
    match brute_reconstructibility(&p, r, Universe::Exhaustive { max_vertices }, limit)? {
        ProbeOutcome::Reconstructible { candidates } => {
            print_json(&json!({ "result": "reconstructible", "candidates": candidates }))
        }
        ProbeOutcome::CounterpartFound(q) => print_json(
            &json!({ "result": "counterpart", "pedigree": serde_json::to_value(PedigreeJson(&q)).expect("pedigree") }),
        ),
    }
    Ok(())
}

fn bounds_json(b: &CountBounds, n: usize) -> Result<Value, Failure> {
    let one = BigRational::from_integer(1.into());
    let sites = match &b.lower {
        Some(l) if *l >= one => Some(site_bound(l, n)?),
        _ => None,
    };
    let mut v = serde_json::to_value(b).expect("bounds serialize");
    v["site_bound"] = serde_json::to_value(sites).expect("site bound serializes");
    Ok(v)
}

fn cmd_bounds(model: Model, n: usize, d: usize, t: Option<usize>) -> Outcome {
    let b = match (model, t) {
        (Model::Discrete, None) => bounds_n(n, d)?,
        (Model::General, None) => bounds_m(n, d)?,
        (Model::Gap, Some(t)) => {
            let lower = bounded_gap_lower_m(n, d, t)?;
            CountBounds {
                lower: Some(lower),
                ..bounds_m(n, d)?
            }
        }
        (Model::Gap, None) => return Err(Failure::invalid("--model gap needs --t")),
        (_, Some(_)) => return Err(Failure::invalid("--t only applies to --model gap")),
    };
    let mut v = bounds_json(&b, n)?;
    if let (Some(t), Some(s)) = (t, v.get_mut("site_bound").and_then(Value::as_object_mut)) {
        s.insert("t".into(), json!(t));
    }
    if let Some(s) = v.get_mut("site_bound").and_then(Value::as_object_mut) {
        s.insert("d".into(), json!(d));
    }
    print_json(&v);
    Ok(())
}

fn cmd_census(n: usize, d: usize, strict: bool, limit: SearchLimit) -> Outcome {
    let options = CensusOptions {
        strict_population: strict,
        limit,
        ..CensusOptions::default()
    };
    let exact = brute_count_n(n, d, options)?;
    let b = bounds_n(n, d)?.with_exact(exact.clone());
    let verdict = if b.is_consistent() {
        "within-bounds"
    } else {
        "outside-bounds"
    };
    print_json(&json!({
        "n": n,
        "d": d,
        "strict_population": strict,
        "exact": exact.to_string(),
        "lower": b.lower.as_ref().map(ToString::to_string),
        "upper": b.upper.to_string(),
        "verdict": verdict,
    }));
    if b.is_consistent() {
        Ok(())
    } else {
        Err(Failure::verification("exact count lies outside the bounds"))
    }
}

fn cmd_figures(out: &Path) -> Outcome {
    let mut dir = OutputDir::new("figures", BTreeMap::new());
    for (name, text) in figures::figures()? {
        dir.add(&name, text);
    }
    dir.write(out)?;
    println!("wrote {}", out.display());
    Ok(())
}

fn run(cli: Cli) -> Outcome {
    let limit = SearchLimit::nodes(cli.node_limit);
    match cli.command {
        Command::Counterexample {
            n,
            orderings,
            genderize,
            out,
        } => cmd_counterexample(n, &orderings, genderize, &out, limit),
        Command::Verify { a, b, r, json } => cmd_verify(&a, &b, r, json, limit),
        Command::Deck { pedigree, r } => {
            print!("{}", deck(&load(&pedigree)?, r, limit)?.to_json());
            Ok(())
        }
        Command::Cards { pedigree, shuffle } => {
            let p = load(&pedigree)?;
            let d = if shuffle {
                DeckOfPedigrees::from_pedigree_shuffled(
                    &p,
                    &mut ChaCha8Rng::seed_from_u64(cli.seed),
                )
            } else {
                DeckOfPedigrees::from_pedigree(&p)
            };
            print!("{}", d.to_json());
            Ok(())
        }
        Command::Reconstruct { deck } => cmd_reconstruct(&deck),
        Command::Probe {
            pedigree,
            r,
            max_vertices,
        } => cmd_probe(&pedigree, r, max_vertices, limit),
        Command::Bounds { model, n, d, t } => cmd_bounds(model, n, d, t),
        Command::Census {
            n,
            d,
            strict_population,
        } => cmd_census(n, d, strict_population, limit),
        Command::Figures { out } => cmd_figures(&out),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
