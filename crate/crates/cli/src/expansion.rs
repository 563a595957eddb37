use std::collections::BTreeMap;

use clap::{Args, ValueEnum};
use geolocal::code::read_code;
use geolocal::complex::{DummyPolicy, SquareSubspaceComplex};
use geolocal::expansion::{
    build_local_s, build_local_t, check_small_set_expansion, functional_constants,
    local_coboundary_expansion, small_set_profile, GraphWithBoundary, LocalComplex,
};
use geolocal::subdivide::{subdivide_with, SubdividedComplex};
use geolocal::{CssCode, Error, Limits, Ratio};
use serde::Serialize;

use crate::{emit, Failure};

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Object {
    /// Qubit region: a star of repetition chains.
    T,
    /// X-check region with its seam.
    S,
    /// A bare generalized repetition graph.
    Rep,
    /// Small-set expansion of a whole code.
    SmallSet,
}

#[derive(Args)]
pub struct ExpansionArgs {
    #[arg(long, value_enum)]
    object: Object,
    /// Code to subdivide (`T`, `S`) or to measure (`small-set`). Without it
    /// `T` and `rep` use a bare star and `S` a single square face.
    #[arg(long)]
    code: Option<std::path::PathBuf>,
    #[arg(long = "L", default_value_t = 3)]
    l: usize,
    /// Qubit (`T`) or X check (`S`).
    #[arg(long, default_value_t = 0)]
    vertex: usize,
    /// Branch count of a bare star.
    #[arg(long, default_value_t = 2)]
    branches: usize,
    /// Which branch ends of a bare star carry boundary, e.g. `1,0,1`;
    /// all of them by default.
    #[arg(long, value_delimiter = ',')]
    ends: Option<Vec<u8>>,
    /// Level for `S` (0 or 1).
    #[arg(long, default_value_t = 1)]
    level: usize,
    /// Fraction of qubits for `small-set`; the largest α with positive β
    /// when absent.
    #[arg(long)]
    alpha: Option<Ratio>,
    #[arg(long, default_value = "all")]
    dummy: DummyPolicy,
}

/// A lower bound on one measured constant.
#[derive(Clone, Copy, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Bound {
    AtLeast(Ratio),
    Positive,
}

impl Bound {
    fn holds(self, v: Ratio) -> bool {
        match self {
            Bound::AtLeast(b) => v >= b,
            Bound::Positive => v > Ratio::ZERO,
        }
    }
}

#[derive(Serialize)]
pub struct ExpansionOutput {
    pub object: Object,
    #[serde(rename = "L", skip_serializing_if = "Option::is_none")]
    pub l: Option<usize>,
    pub measured: BTreeMap<&'static str, Ratio>,
    pub bound: BTreeMap<&'static str, Bound>,
    pub pass: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl ExpansionOutput {
    fn new(object: Object, l: Option<usize>) -> Self {
        Self {
            object,
            l,
            measured: BTreeMap::new(),
            bound: BTreeMap::new(),
            pass: true,
            notes: Vec::new(),
        }
    }

    fn finish(mut self) -> Self {
        self.pass = self
            .bound
            .iter()
            .all(|(k, b)| self.measured.get(k).is_some_and(|&v| b.holds(v)));
        self
    }
}

fn ratio(n: usize, d: usize) -> Ratio {
    Ratio::new(n as u64, d as u64)
}

/// Level-0 constants of a graph: functional constants and `(β0, η0)`.
fn level_zero(
    out: &mut ExpansionOutput,
    graph: &GraphWithBoundary,
    y: &LocalComplex,
    limits: &Limits,
) -> Result<(), Error> {
    let k = functional_constants(graph, limits)?;
    out.measured.insert("C", k.c);
    out.measured.insert("C_boundary", k.c_boundary);
    let e = local_coboundary_expansion(y, 0, limits)?;
    let (beta, eta) = e
        .frontier
        .summary(Ratio::integer(1))
        .expect("nonempty frontier");
    out.measured.insert("beta_0", beta);
    out.measured.insert("eta_0", eta);
    Ok(())
}

pub fn star_output(
    l: usize,
    ends: &[bool],
    limits: &Limits,
    object: Object,
) -> Result<ExpansionOutput, Error> {
    let graph = GraphWithBoundary::repetition(l, ends)?;
    let mut out = ExpansionOutput::new(object, Some(l));
    level_zero(&mut out, &graph, &LocalComplex::from_graph(&graph), limits)?;
    add_repetition_bounds(&mut out, l);
    Ok(out.finish())
}

fn add_repetition_bounds(out: &mut ExpansionOutput, l: usize) {
    out.bound.insert("C", Bound::AtLeast(ratio(1, l)));
    out.bound.insert("C_boundary", Bound::AtLeast(ratio(1, l)));
    out.bound.insert("beta_0", Bound::AtLeast(ratio(2, l)));
    out.bound.insert("eta_0", Bound::AtLeast(Ratio::integer(1)));
}

pub fn t_output(
    sub: &SubdividedComplex,
    q: usize,
    limits: &Limits,
) -> Result<ExpansionOutput, Error> {
    let t = build_local_t(sub, q)?;
    let mut out = ExpansionOutput::new(Object::T, Some(sub.l()));
    level_zero(&mut out, &t.graph, &t.complex, limits)?;
    add_repetition_bounds(&mut out, sub.l());
    out.notes
        .push(format!("qubit {q}, {} branches", t.branches));
    Ok(out.finish())
}

pub fn s_output(
    sub: &SubdividedComplex,
    x: usize,
    level: usize,
    limits: &Limits,
) -> Result<ExpansionOutput, Error> {
    let s = build_local_s(sub, x)?;
    let l = sub.l();
    let mut out = ExpansionOutput::new(Object::S, Some(l));
    out.notes.extend(s.warning.clone());
    out.notes.push(format!(
        "X check {x}, {} branches, {} faces",
        s.branches, s.faces
    ));
    match level {
        0 => {
            let delta = sub.code().delta_max().max(1);
            let k = functional_constants(&s.graph, limits)?;
            out.measured.insert("C", k.c);
            out.measured.insert("C_boundary", k.c_boundary);
            out.bound
                .insert("C", Bound::AtLeast(ratio(1, 2 * delta.pow(3) * l)));
            let e = local_coboundary_expansion(&s.complex, 0, limits)?;
            let (beta, eta) = e.frontier.corners[e.frontier.corners.len() - 1];
            out.measured.insert("beta_0", beta);
            out.measured.insert("eta_0", eta);
            out.bound.insert("beta_0", Bound::Positive);
            out.bound.insert("eta_0", Bound::Positive);
        }
        1 => {
            let eta_bound = ratio(l - 1, 4 * l);
            let e = local_coboundary_expansion(&s.complex, 1, limits)?;
            let (beta, eta) = e.frontier.summary(eta_bound).expect("nonempty frontier");
            out.measured.insert("beta_1", beta);
            out.measured.insert("eta_1", eta);
            out.bound.insert("beta_1", Bound::AtLeast(ratio(2, 3 * l)));
            out.bound.insert("eta_1", Bound::AtLeast(eta_bound));
        }
        other => {
            return Err(Error::Argument(format!(
                "level must be 0 or 1, got {other}"
            )))
        }
    }
    Ok(out.finish())
}

fn small_set_output(
    code: &CssCode,
    alpha: Option<Ratio>,
    limits: &Limits,
) -> Result<ExpansionOutput, Error> {
    let n = code.n();
    let alpha = match alpha {
        Some(a) => a,
        None => ratio(small_set_profile(code, n, limits)?.best_weight(), n.max(1)),
    };
    let r = check_small_set_expansion(code, alpha, limits)?;
    let mut out = ExpansionOutput::new(Object::SmallSet, None);
    out.measured.insert("alpha", alpha);
    if let Some(&(beta, gamma)) = r.frontier.corners.last() {
        out.measured.insert("beta", beta);
        out.measured.insert("gamma", gamma);
    }
    out.bound.insert("beta", Bound::Positive);
    if let Some(w) = &r.witness {
        out.notes.push(format!(
            "chain {w:?} has no coboundary energy and is not a coboundary"
        ));
    }
    Ok(out.finish())
}

fn single_face() -> CssCode {
    CssCode::from_supports("square", 2, &[vec![0, 1]], &[vec![0, 1]]).expect("valid code")
}

fn subdivided(
    code: &CssCode,
    dummy: DummyPolicy,
    l: usize,
    limits: &Limits,
) -> Result<SubdividedComplex, Error> {
    code.require_commuting()?;
    let cx = SquareSubspaceComplex::build(code, dummy)?;
    subdivide_with(&cx, l, limits.exec)
}

pub fn run(args: &ExpansionArgs, limits: &Limits) -> Result<(), Failure> {
    let code = args.code.as_deref().map(read_code).transpose()?;
    let out = match (args.object, code) {
        (Object::Rep, _) | (Object::T, None) => {
            let ends: Vec<bool> = match &args.ends {
                Some(e) => e.iter().map(|&b| b != 0).collect(),
                None => vec![true; args.branches],
            };
            star_output(args.l, &ends, limits, args.object)?
        }
        (Object::T, Some(code)) => t_output(
            &subdivided(&code, args.dummy, args.l, limits)?,
            args.vertex,
            limits,
        )?,
        (Object::S, code) => {
            let (code, dummy) = match code {
                Some(code) => (code, args.dummy),
                None => (single_face(), DummyPolicy::None),
            };
            s_output(
                &subdivided(&code, dummy, args.l, limits)?,
                args.vertex,
                args.level,
                limits,
            )?
        }
        (Object::SmallSet, Some(code)) => {
            code.require_commuting()?;
            small_set_output(&code, args.alpha, limits)?
        }
        (Object::SmallSet, None) => {
            return Err(Error::Argument("small-set needs --code".into()).into())
        }
    };
    emit(&out, None)?;
    Ok(())
}
