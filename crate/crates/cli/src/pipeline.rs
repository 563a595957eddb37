use std::path::PathBuf;

use clap::Args;
use geolocal::chainmap::{verify_chain_map, ChainMap, ChainMapCheck};
use geolocal::code::{
    is_reasonable_full, minimalize_code, parameters, CodeFile, CodeParameters, ReasonableReport,
    ValidationReport,
};
use geolocal::complex::{DummyPolicy, SquareSubspaceComplex};
use geolocal::embed::{
    choose_l, embed_heuristic, verify_embedding, EmbeddingReport, LayoutOptions,
};
use geolocal::subdivide::{check_l, subdivide_with, SizeStats, SubdividedComplex};
use geolocal::{CssCode, Error, Limits};
use serde::Serialize;

use crate::expansion::{s_output, t_output, ExpansionOutput};
use crate::{emit, parse_distance, read_json, CodeSource, Failure};

pub const REPORT_SCHEMA: &str = "geolocal.report/1";

#[derive(Args)]
pub struct PipelineArgs {
    #[command(flatten)]
    source: CodeSource,
    #[arg(long = "D", default_value_t = 3)]
    d: usize,
    /// Subdivision size; chosen from `--c` when absent.
    #[arg(long = "L")]
    l: Option<usize>,
    #[arg(long, default_value_t = 1.0)]
    c: f64,
    #[arg(long, default_value = "all")]
    dummy: DummyPolicy,
    /// `exact` or `bounded:W`.
    #[arg(long, default_value = "exact")]
    distance: String,
    /// Fail unless the embedding locality is at most this.
    #[arg(long)]
    a_max: Option<f64>,
    /// Fail unless the embedding density is at most this.
    #[arg(long)]
    b_max: Option<usize>,
    /// Output directory (created if missing).
    #[arg(short, long)]
    out: PathBuf,
}

/// A measurement that may have been refused by a size limit.
#[derive(Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Measured<T> {
    Value(T),
    Skipped(String),
}

fn measured<T>(r: Result<T, Error>) -> Result<Measured<T>, Error> {
    match r {
        Ok(v) => Ok(Measured::Value(v)),
        Err(e @ Error::Threshold { .. }) => Ok(Measured::Skipped(e.to_string())),
        Err(e) => Err(e),
    }
}

#[derive(Serialize)]
struct ComplexSummary {
    full_faces: usize,
    dummy_faces: usize,
    links_connected: bool,
}

#[derive(Serialize)]
struct Parameters {
    original: Measured<CodeParameters>,
    subdivided: Measured<CodeParameters>,
}

#[derive(Serialize)]
struct Expansion {
    s_level0: Measured<ExpansionOutput>,
    s_level1: Measured<ExpansionOutput>,
    t_level0: Measured<ExpansionOutput>,
}

#[derive(Serialize)]
struct Report {
    schema: &'static str,
    name: String,
    #[serde(rename = "D")]
    d: usize,
    #[serde(rename = "L")]
    l: usize,
    dummy: DummyPolicy,
    validation: ValidationReport,
    minimalized_changed: bool,
    reasonable: ReasonableReport,
    complex: ComplexSummary,
    k: usize,
    k_l: usize,
    n_l: usize,
    commutation: bool,
    dimension_preserved: bool,
    chain_map: ChainMapCheck,
    size_bounds: SizeStats,
    reload_consistent: bool,
    embedding: EmbeddingReport,
    parameters: Parameters,
    expansion: Expansion,
    failed: Vec<&'static str>,
}

fn expansion(sub: &SubdividedComplex, limits: &Limits) -> Result<Expansion, Error> {
    let code = sub.code();
    let s = |level| -> Result<Measured<ExpansionOutput>, Error> {
        if code.m_x() == 0 {
            return Ok(Measured::Skipped("no X checks".into()));
        }
        measured(s_output(sub, 0, level, limits))
    };
    let t = if code.n() == 0 {
        Measured::Skipped("no qubits".into())
    } else {
        measured(t_output(sub, 0, limits))?
    };
    Ok(Expansion {
        s_level0: s(0)?,
        s_level1: s(1)?,
        t_level0: t,
    })
}

pub fn run(args: &PipelineArgs, limits: &Limits) -> Result<(), Failure> {
    if args.d < 3 {
        return Err(Error::Argument(format!("D must be ≥ 3, got {}", args.d)).into());
    }
    let method = parse_distance(&args.distance)?;
    let input = args.source.load()?;
    let validation = input.validate();
    input.require_commuting()?;

    std::fs::create_dir_all(&args.out).map_err(Error::from)?;
    let path = |name: &str| args.out.join(name);

    let code = minimalize_code(&input, limits)?;
    let minimalized_changed = code.a_x() != input.a_x() || code.a_z() != input.a_z();
    emit(&CodeFile::from_code(&code), Some(&path("code.json")))?;
    let reasonable = is_reasonable_full(&code, limits)?;

    let cx = SquareSubspaceComplex::build(&code, args.dummy)?;
    emit(&cx.to_file(), Some(&path("complex.json")))?;
    let l = match args.l {
        Some(l) => {
            check_l(l)?;
            l
        }
        None => choose_l(&cx, args.d, args.c)?,
    };

    let sub = subdivide_with(&cx, l, limits.exec)?;
    let code_l = sub.extract_code()?;
    let commutation = code_l.validate().commutes;
    emit(&CodeFile::from_code(&code_l), Some(&path("code_L.json")))?;
    let reloaded: CodeFile = read_json(&path("code_L.json"))?;
    let reloaded = reloaded.to_code()?;
    let reload_consistent = reloaded.a_x() == code_l.a_x()
        && reloaded.a_z() == code_l.a_z()
        && reloaded.validate().commutes;

    let map = ChainMap::build(&sub);
    let chain_map = verify_chain_map(&code, &code_l, &map)?;
    emit(&map.to_file(), Some(&path("chainmap.json")))?;

    let emb = embed_heuristic(&sub, LayoutOptions::new(args.d))?;
    emit(&emb, Some(&path("embedding.json")))?;
    let embedding = verify_embedding(
        &sub,
        &emb,
        args.a_max.unwrap_or(emb.a),
        args.b_max.unwrap_or(emb.b),
    )?;

    let k = code.dimension();
    let k_l = code_l.dimension();
    let size_bounds = sub.stats();
    let params = |c: &CssCode| measured(parameters(c, method, limits));
    let parameters = Parameters {
        original: params(&code)?,
        subdivided: params(&code_l)?,
    };

    let mut failed = Vec::new();
    for (ok, name) in [
        (commutation, "commutation"),
        (k == k_l, "dimension"),
        (chain_map.holds(), "chain map"),
        (size_bounds.all_hold(), "size bounds"),
        (reload_consistent, "reload"),
        (embedding.pass, "embedding"),
    ] {
        if !ok {
            failed.push(name);
        }
    }
    let report = Report {
        schema: REPORT_SCHEMA,
        name: code.name.clone(),
        d: args.d,
        l,
        dummy: args.dummy,
        validation,
        minimalized_changed,
        reasonable,
        complex: ComplexSummary {
            full_faces: cx.full_face_count(),
            dummy_faces: cx.dummy_face_count(),
            links_connected: cx.disconnected_links().is_empty(),
        },
        k,
        k_l,
        n_l: code_l.n(),
        commutation,
        dimension_preserved: k == k_l,
        chain_map,
        size_bounds,
        reload_consistent,
        embedding,
        parameters,
        expansion: expansion(&sub, limits)?,
        failed: failed.clone(),
    };
    emit(&report, Some(&path("report.json")))?;
    if failed.is_empty() {
        println!("{}", args.out.display());
        Ok(())
    } else {
        Err(Error::Invariant(format!("verification failed: {}", failed.join(", "))).into())
    }
}
