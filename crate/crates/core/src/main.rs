//! `cbc-lab` command line.
//!
//! Exit codes: 0 success / holds, 1 violation or counterexample found,
//! 2 input or precondition error.

use std::fs;
use std::io::{self, Read, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use cbc_lab::audit::{
    charge_ledger_thm1, charge_ledger_thm2, degree_sum_no_adjacent_triangles, degree_sum_no_c4_c5, edge_bound_no_c4,
    face_edge_inequality, no_counterexample_profile, AuditRow, ChargeLedger, FaceEdgeVariant, ProfileOutcome,
};
use cbc_lab::classes::{classify, Theorem};
use cbc_lab::coloring::{cbc_number_with_witness, solve_k, verify, CircularColoring, Verdict};
use cbc_lab::constructive::color_theorem;
use cbc_lab::io::{format_backbone, parse_backbone, parse_rotation, read_graph6_lines, to_graph6};
use cbc_lab::planar::{PlaneGraph, RotationSystem};
use cbc_lab::workbench::{
    enumerate_up_to, hunt_lines, random_planar, report_line, sample_backbone, BackboneSpec, Filters, Generator,
    HuntConfig, HuntTarget, SampleKind,
};
use cbc_lab::{BackbonePair, Error, Graph};

#[derive(Parser)]
#[command(name = "cbc-lab", version, about = "Circular backbone colorings of planar graphs")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Common {
    /// Backbone separation
    #[arg(long, global = true, default_value_t = 2)]
    q: u32,
    /// Number of colors
    #[arg(long, global = true)]
    k: Option<u32>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// graph6 file, one graph per line; `-` reads stdin
    #[arg(long, global = true)]
    input: Option<String>,
    /// Backbone file: one `u v` edge per line
    #[arg(long, global = true)]
    backbone: Option<String>,
    /// Rotation system file (JSON)
    #[arg(long, global = true)]
    embedding: Option<String>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Cmd {
    /// Exact search: a coloring with `--k` colors, or CBC_q when `--k` is absent
    Solve,
    /// Check a coloring file (JSON coloring, or whitespace-separated colors with `--k`)
    Verify {
        #[arg(long)]
        coloring: String,
    },
    /// Constructive coloring following one of the three theorems
    Color {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
        theorem: u8,
    },
    /// Graph class report
    Class,
    /// Counting inequalities, charge ledgers and the degree-profile search
    Audit {
        #[arg(long, value_enum)]
        lemma: Lemma,
        /// Theorem for `--lemma profile`
        #[arg(long, default_value_t = 1)]
        theorem: u8,
        /// Largest order for `--lemma profile`
        #[arg(long, default_value_t = 8)]
        n_max: usize,
    },
    /// Generate graphs or backbones
    Gen {
        #[command(subcommand)]
        what: GenCmd,
    },
    /// Search for instances exceeding a bound
    Hunt {
        #[arg(long, value_enum)]
        target: TargetArg,
        /// Exhaustive over connected in-class graphs up to this order
        #[arg(long, conflicts_with = "random")]
        exhaustive: Option<usize>,
        /// Number of random graphs
        #[arg(long)]
        random: Option<usize>,
        #[arg(long, default_value_t = 5)]
        n_min: usize,
        #[arg(long, default_value_t = 12)]
        n_max: usize,
        /// Backbones sampled per graph (default depends on the target)
        #[arg(long)]
        per_graph: Option<usize>,
        #[arg(long, default_value_t = 100_000)]
        max_instances: usize,
        /// Largest order on which exact CBC and BBC are computed
        #[arg(long, default_value_t = 9)]
        exact_max_n: usize,
        /// Print only the summary line
        #[arg(long)]
        summary_only: bool,
    },
}

#[derive(Subcommand)]
enum GenCmd {
    /// All graphs on `n` vertices passing the filters, up to isomorphism
    Enum {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        filters: FilterArgs,
    },
    /// A random planar graph with `m` edges
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[command(flatten)]
        filters: FilterArgs,
        #[arg(long, default_value_t = 20)]
        retries: usize,
    },
    /// A random backbone of the input graph
    Backbone {
        #[arg(long, value_enum)]
        kind: KindArg,
    },
}

#[derive(Args)]
struct FilterArgs {
    #[arg(long)]
    planar: bool,
    #[arg(long)]
    c4_free: bool,
    #[arg(long)]
    c5_free: bool,
    #[arg(long)]
    connected: bool,
    #[arg(long, default_value_t = 0)]
    min_degree: usize,
    #[arg(long)]
    no_adjacent_3faces: bool,
}

impl FilterArgs {
    fn filters(&self) -> Filters {
        Filters {
            planar: self.planar || self.no_adjacent_3faces,
            c4_free: self.c4_free,
            c5_free: self.c5_free,
            connected: self.connected,
            min_degree: self.min_degree,
            no_adjacent_3faces: self.no_adjacent_3faces,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Lemma {
    /// Degree sum, no 4- or 5-cycles
    #[value(name = "degree_sum_c4c5")]
    DegreeSumC4C5,
    /// Degree sum, no adjacent 3-faces
    #[value(name = "degree_sum_triangles")]
    DegreeSumTriangles,
    /// Edge bound, no 4-cycles
    #[value(name = "edge_bound_c4")]
    EdgeBoundC4,
    /// 3 f3 + f4 <= m + gamma, no adjacent 3-faces
    #[value(name = "face_edge_triangles")]
    FaceEdgeTriangles,
    /// 3 f3 + f5 <= m + gamma, no 4-cycles
    #[value(name = "face_edge_c4")]
    FaceEdgeC4,
    /// Charge ledger for matching backbones without 4- and 5-cycles
    #[value(name = "ledger_thm1")]
    LedgerThm1,
    /// Charge ledger for matching backbones without adjacent 3-faces
    #[value(name = "ledger_thm2")]
    LedgerThm2,
    /// Degree-profile search over small graphs
    Profile,
}

#[derive(Clone, Copy, ValueEnum)]
enum TargetArg {
    Thm1,
    Thm2,
    Thm3,
    Conj2,
    Conj3,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Matching,
    LinearForest,
    SpanningTree,
}

/// Exit status carried out of a subcommand.
enum Status {
    Ok,
    Found,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Status::Ok) => ExitCode::SUCCESS,
        Ok(Status::Found) => ExitCode::from(1),
        Err(e) => {
            eprintln!("cbc-lab: {e}");
            ExitCode::from(2)
        }
    }
}

fn read_text(path: &str) -> Result<String, Error> {
    if path == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        Ok(fs::read_to_string(path)?)
    }
}

impl Common {
    fn graphs(&self) -> Result<Vec<Graph>, Error> {
        let path = self.input.as_deref().ok_or_else(|| Error::Parse("--input is required".into()))?;
        let gs = read_graph6_lines(&read_text(path)?)?;
        if gs.is_empty() {
            return Err(Error::Parse("input holds no graphs".into()));
        }
        Ok(gs)
    }

    fn pairs(&self) -> Result<Vec<BackbonePair>, Error> {
        let edges = match &self.backbone {
            Some(path) => Some(parse_backbone(&read_text(path)?)?),
            None => None,
        };
        self.graphs()?
            .into_iter()
            .map(|g| match &edges {
                Some(e) => BackbonePair::new(g, e),
                None => Ok(BackbonePair::plain(g)),
            })
            .collect()
    }

    fn rotation(&self, g: &Graph) -> Result<Option<RotationSystem>, Error> {
        match &self.embedding {
            Some(path) => Ok(Some(parse_rotation(&read_text(path)?, g)?)),
            None => Ok(None),
        }
    }

    fn emit<T: Serialize>(
        &self,
        out: &mut impl Write,
        record: &str,
        body: &T,
        text: impl FnOnce() -> String,
    ) -> io::Result<()> {
        match self.format {
            Format::Json => writeln!(out, "{}", report_line(record, body)),
            Format::Text => writeln!(out, "{}", text()),
        }
    }
}

#[derive(Serialize)]
struct SolveOut {
    instance: usize,
    graph6: String,
    q: u32,
    k: Option<u32>,
    colors: Option<Vec<u32>>,
}

#[derive(Serialize)]
struct AuditOut<'a> {
    instance: usize,
    #[serde(flatten)]
    row: &'a AuditRow,
}

#[derive(Serialize)]
struct LedgerOut<'a> {
    instance: usize,
    conserved: bool,
    negatives: usize,
    #[serde(flatten)]
    ledger: &'a ChargeLedger,
}

fn run(cli: &Cli) -> Result<Status, Error> {
    let c = &cli.common;
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let mut status = Status::Ok;
    match &cli.cmd {
        Cmd::Solve => {
            for (i, p) in c.pairs()?.iter().enumerate() {
                let (k, colors) = match c.k {
                    Some(k) => (Some(k), solve_k(p, c.q, k)?.and_then(|col| col.as_total())),
                    None => {
                        let (k, col) = cbc_number_with_witness(p, c.q)?;
                        (Some(k), col.as_total())
                    }
                };
                if colors.is_none() {
                    status = Status::Found;
                }
                let body = SolveOut { instance: i, graph6: to_graph6(p.graph()), q: c.q, k, colors };
                c.emit(&mut out, "solve", &body, || match &body.colors {
                    Some(col) => format!("{} k={} colors={:?}", body.graph6, k.unwrap(), col),
                    None => format!("{} k={} unsatisfiable", body.graph6, k.unwrap()),
                })?;
            }
        }
        Cmd::Verify { coloring } => {
            let text = read_text(coloring)?;
            let col: CircularColoring = if text.trim_start().starts_with('{') {
                serde_json::from_str(&text)?
            } else {
                let k = c.k.ok_or_else(|| Error::Parse("--k is required for a plain color list".into()))?;
                let colors = text
                    .split_whitespace()
                    .map(|t| t.parse().map_err(|_| Error::Parse(format!("bad color {t:?}"))))
                    .collect::<Result<Vec<u32>, Error>>()?;
                CircularColoring::total(c.q, k, colors)
            };
            for (i, p) in c.pairs()?.iter().enumerate() {
                let v = verify(p, &col)?;
                if !v.is_valid() {
                    status = Status::Found;
                }
                #[derive(Serialize)]
                struct VerifyOut<'a> {
                    instance: usize,
                    #[serde(flatten)]
                    verdict: &'a Verdict,
                }
                c.emit(&mut out, "verify", &VerifyOut { instance: i, verdict: &v }, || format!("{v:?}"))?;
            }
        }
        Cmd::Color { theorem } => {
            let t = Theorem::from_number(*theorem).expect("clap range");
            for (i, p) in c.pairs()?.iter().enumerate() {
                let rot = c.rotation(p.graph())?;
                match color_theorem(p, t, rot.as_ref()) {
                    Ok(cert) => {
                        #[derive(Serialize)]
                        struct ColorOut<'a> {
                            instance: usize,
                            #[serde(flatten)]
                            cert: &'a cbc_lab::constructive::ColoringCertificate,
                        }
                        c.emit(&mut out, "certificate", &ColorOut { instance: i, cert: &cert }, || {
                            format!(
                                "k={} colors={:?} steps={}",
                                cert.k,
                                cert.coloring.as_total().unwrap_or_default(),
                                cert.log.len()
                            )
                        })?;
                    }
                    Err(Error::ProofGap(w)) => {
                        status = Status::Found;
                        c.emit(&mut out, "proof_gap", &*w, || w.to_string())?;
                    }
                    Err(e) => return Err(e),
                }
            }
        }
        Cmd::Class => {
            for p in c.pairs()? {
                let rot = c.rotation(p.graph())?;
                let r = classify(&p, rot.as_ref())?;
                c.emit(&mut out, "class", &r, || format!("{r:?}"))?;
            }
        }
        Cmd::Audit { lemma, theorem, n_max } => {
            if let Lemma::Profile = lemma {
                let t = Theorem::from_number(*theorem).ok_or_else(|| Error::Parse(format!("theorem {theorem}")))?;
                let res = no_counterexample_profile(t, *n_max)?;
                if matches!(res, ProfileOutcome::Witness { .. }) {
                    status = Status::Found;
                }
                c.emit(&mut out, "profile", &res, || format!("{res:?}"))?;
                return Ok(status);
            }
            for (i, p) in c.pairs()?.iter().enumerate() {
                let pg = match c.rotation(p.graph())? {
                    Some(rs) => PlaneGraph::with_rotation(p.graph().clone(), rs)?,
                    None => PlaneGraph::embed(p.graph())?,
                };
                let row = match lemma {
                    Lemma::DegreeSumC4C5 => degree_sum_no_c4_c5(&pg)?,
                    Lemma::DegreeSumTriangles => degree_sum_no_adjacent_triangles(&pg)?,
                    Lemma::EdgeBoundC4 => edge_bound_no_c4(&pg)?,
                    Lemma::FaceEdgeTriangles => face_edge_inequality(&pg, FaceEdgeVariant::NoAdjacentTriangles)?,
                    Lemma::FaceEdgeC4 => face_edge_inequality(&pg, FaceEdgeVariant::NoC4)?,
                    Lemma::LedgerThm1 | Lemma::LedgerThm2 => {
                        let l = if matches!(lemma, Lemma::LedgerThm1) {
                            charge_ledger_thm1(&pg, p)?
                        } else {
                            charge_ledger_thm2(&pg, p)?
                        };
                        if !l.is_conserved() {
                            status = Status::Found;
                        }
                        let neg = l.negatives();
                        let body =
                            LedgerOut { instance: i, conserved: l.is_conserved(), negatives: neg.len(), ledger: &l };
                        c.emit(&mut out, "ledger", &body, || {
                            let fin: Vec<String> = l.stages.last().unwrap().iter().map(ToString::to_string).collect();
                            format!("conserved={} final=[{}] negatives={:?}", l.is_conserved(), fin.join(", "), neg)
                        })?;
                        continue;
                    }
                    Lemma::Profile => unreachable!(),
                };
                if !row.holds() {
                    status = Status::Found;
                }
                c.emit(&mut out, "audit", &AuditOut { instance: i, row: &row }, || {
                    format!("{}: {} <= {} slack {} {:?}", row.lemma, row.lhs, row.rhs, row.slack, row.verdict)
                })?;
            }
        }
        Cmd::Gen { what } => match what {
            GenCmd::Enum { n, filters } => {
                let f = filters.filters();
                for g in enumerate_up_to(*n, &f)?.into_iter().filter(|g| g.n() == *n) {
                    writeln!(out, "{}", to_graph6(&g))?;
                }
            }
            GenCmd::Random { n, m, filters, retries } => {
                let g = random_planar(*n, *m, &filters.filters(), c.seed, *retries)?;
                writeln!(out, "{}", to_graph6(&g))?;
            }
            GenCmd::Backbone { kind } => {
                let kind = match kind {
                    KindArg::Matching => SampleKind::Matching,
                    KindArg::LinearForest => SampleKind::LinearForest,
                    KindArg::SpanningTree => SampleKind::SpanningTree,
                };
                let g = c.graphs()?.remove(0);
                let p = sample_backbone(&g, kind, c.seed)?;
                write!(out, "{}", format_backbone(p.backbone()))?;
            }
        },
        Cmd::Hunt { target, exhaustive, random, n_min, n_max, per_graph, max_instances, exact_max_n, summary_only } => {
            let target = match target {
                TargetArg::Thm1 => HuntTarget::Thm1Bound,
                TargetArg::Thm2 => HuntTarget::Thm2Bound,
                TargetArg::Thm3 => HuntTarget::Thm3Bound,
                TargetArg::Conj2 => HuntTarget::Conj2TreeBound,
                TargetArg::Conj3 => HuntTarget::Conj3SteinbergBound,
            };
            let generator = match (exhaustive, random, &c.input) {
                (Some(n), _, _) => Generator::Exhaustive { n_min: 1, n_max: *n },
                (None, Some(count), _) => Generator::Random { count: *count, n_min: *n_min, n_max: *n_max },
                (None, None, Some(_)) => Generator::Given { graphs: c.graphs()? },
                (None, None, None) => return Err(Error::Parse("pass --exhaustive, --random or --input".into())),
            };
            let mut cfg = HuntConfig::new(target, generator, c.seed);
            cfg.max_instances = *max_instances;
            cfg.exact_max_n = *exact_max_n;
            if let (Some(per), BackboneSpec::Sampled { kind, .. }) = (per_graph, cfg.backbones) {
                cfg.backbones = BackboneSpec::Sampled { kind, per_graph: *per };
            }
            let (lines, summary) = hunt_lines(&cfg)?;
            if summary.violations > 0 {
                status = Status::Found;
            }
            match c.format {
                Format::Json if *summary_only => writeln!(out, "{}", lines.last().unwrap())?,
                Format::Json => {
                    for l in &lines {
                        writeln!(out, "{l}")?;
                    }
                }
                Format::Text => writeln!(
                    out,
                    "instances={} violations={} max_cbc={:?} tight={} fallbacks={}",
                    summary.instances,
                    summary.violations,
                    summary.max_cbc,
                    summary.tight.len(),
                    summary.fallbacks
                )?,
            }
        }
    }
    Ok(status)
}
