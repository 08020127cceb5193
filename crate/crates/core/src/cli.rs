//! Command-line front end. [`dispatch`] parses arguments, runs one
//! subcommand and returns the rendered output with an exit code, so the
//! binary is a thin wrapper and every command is testable in-process.

use std::io::BufRead;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::acceptance;
use crate::boundary::{
    build_classifying_algebra, build_double, charge_conjugation_automorphism, correlator_space_dim,
    enumerate_boundary_conditions, find_fusion_automorphisms, BoundaryInsertion, BulkInsertion, LabelledSurface,
    Orientation,
};
use crate::config::{Tolerances, DEFAULT_AUTOMORPHISM_SEARCH_CAP, DEFAULT_WEYL_ORDER_CAP, WEYL_CAP_ENV};
use crate::currents::find_simple_currents;
use crate::error::{Error, Result};
use crate::fusion::{build_fusion_ring, verlinde_rank};
use crate::modular::ModularData;
use crate::orbit::{build_current_family, decompose, SjPhase};
use crate::spectrum::SpectrumJson;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Pretty,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PhaseArg {
    KacPeterson,
    VacuumRowPositive,
}

impl From<PhaseArg> for SjPhase {
    fn from(p: PhaseArg) -> Self {
        match p {
            PhaseArg::KacPeterson => SjPhase::KacPeterson,
            PhaseArg::VacuumRowPositive => SjPhase::VacuumRowPositive,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "verlinde", version, about = "Modular data, Verlinde ranks, simple-current sub-bundles and boundary conditions of WZW models")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub global: GlobalArgs,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    #[arg(long, value_enum, default_value = "json", global = true)]
    pub format: Format,
    /// Largest Weyl group order that will be enumerated.
    #[arg(long, env = WEYL_CAP_ENV, default_value_t = DEFAULT_WEYL_ORDER_CAP, global = true)]
    pub weyl_cap: u64,
    #[arg(long, default_value_t = Tolerances::default().num, global = true)]
    pub tol_num: f64,
    #[arg(long, default_value_t = Tolerances::default().modular, global = true)]
    pub tol_mod: f64,
    #[arg(long, default_value_t = Tolerances::default().int, global = true)]
    pub tol_int: f64,
}

#[derive(Debug, Args)]
pub struct Theory {
    /// Simple Lie algebra, e.g. A2, E6.
    pub algebra: String,
    /// Positive integer level (also accepted as `--level`).
    #[arg(required_unless_present = "level_flag")]
    pub level: Option<u32>,
    #[arg(long = "level", conflicts_with = "level")]
    pub level_flag: Option<u32>,
}

impl Theory {
    fn level(&self) -> u32 {
        self.level.or(self.level_flag).expect("clap enforces a level")
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Integrable labels, conformal weights and central charge.
    Spectrum(Theory),
    /// Modular S matrix, T diagonal and the residuals of their identities.
    Smatrix(Theory),
    /// Fusion product of two labels; `--batch` reads JSON lines `{"a": "1,0", "b": "0,1"}`.
    Fuse {
        #[command(flatten)]
        theory: Theory,
        /// Two labels separated by `;`.
        #[arg(long, value_delimiter = ';')]
        labels: Vec<String>,
        #[arg(long, conflicts_with = "labels")]
        batch: Option<std::path::PathBuf>,
    },
    /// Verlinde rank of the bundle of conformal blocks.
    Rank {
        #[command(flatten)]
        theory: Theory,
        #[arg(long, default_value_t = 0)]
        genus: u32,
        /// Insertion labels separated by `;`, each a comma-separated Dynkin vector.
        #[arg(long, value_delimiter = ';')]
        labels: Vec<String>,
    },
    /// Simple currents, their diagram automorphisms and orbit Lie algebras.
    Currents {
        #[command(flatten)]
        theory: Theory,
        #[arg(long, value_enum, default_value = "kac-peterson")]
        phase: PhaseArg,
    },
    /// Decomposition of a conformal-block bundle under the simple-current tuple group.
    Subbundles {
        #[command(flatten)]
        theory: Theory,
        #[arg(long, default_value_t = 0)]
        genus: u32,
        #[arg(long, value_delimiter = ';')]
        labels: Vec<String>,
        #[arg(long, value_enum, default_value = "kac-peterson")]
        phase: PhaseArg,
    },
    /// Double of a labelled surface and the dimension of its correlator space.
    Double {
        #[command(flatten)]
        theory: Theory,
        /// Surface as JSON, or `@path` to read it from a file.
        #[arg(long)]
        surface: String,
    },
    /// Fusion automorphisms and Cardy boundary conditions.
    Boundary(Theory),
    /// Run the acceptance criteria.
    Selftest,
}

/// The resolved configuration echoed by every subcommand.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub algebra: Option<String>,
    pub level: Option<u32>,
    pub weyl_order_cap: u64,
    pub tolerances: Tolerances,
    pub format: Format,
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        self.tolerances.validate()?;
        if self.weyl_order_cap == 0 {
            return Err(Error::InvalidConfig("Weyl order cap must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// A computed result together with an optional table for CSV output.
struct Report {
    body: Value,
    table: Option<(Vec<String>, Vec<Vec<String>>)>,
    /// Exit code 1 with output still printed, for results that signal a failed check.
    failed: bool,
}

impl Report {
    fn new(body: Value) -> Self {
        Report { body, table: None, failed: false }
    }

    fn with_table(mut self, header: &[&str], rows: Vec<Vec<String>>) -> Self {
        self.table = Some((header.iter().map(|s| s.to_string()).collect(), rows));
        self
    }
}

#[derive(Debug, Deserialize)]
struct SurfaceInput {
    genus: u32,
    boundaries: u32,
    #[serde(default)]
    bulk: Vec<BulkInput>,
    #[serde(default)]
    boundary_insertions: Vec<BoundaryInput>,
    #[serde(default = "default_true")]
    orientable: bool,
}

fn default_true() -> bool {
    true
}

#[derive(Debug, Deserialize)]
struct BulkInput {
    label: String,
    #[serde(rename = "or", default = "default_orientation")]
    orientation: Orientation,
}

fn default_orientation() -> Orientation {
    Orientation::Plus
}

#[derive(Debug, Deserialize)]
struct BoundaryInput {
    label: String,
    component: usize,
}

pub fn dispatch<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: 2, stdout: String::new(), stderr: rendered }
            } else {
                Outcome { code: 0, stdout: rendered, stderr: String::new() }
            };
        }
    };
    let (algebra, level) = match &cli.command {
        Command::Spectrum(t) | Command::Smatrix(t) | Command::Boundary(t) => (Some(t.algebra.clone()), Some(t.level())),
        Command::Fuse { theory, .. }
        | Command::Rank { theory, .. }
        | Command::Currents { theory, .. }
        | Command::Subbundles { theory, .. }
        | Command::Double { theory, .. } => (Some(theory.algebra.clone()), Some(theory.level())),
        Command::Selftest => (None, None),
    };
    let config = RunConfig {
        algebra,
        level,
        weyl_order_cap: cli.global.weyl_cap,
        tolerances: Tolerances { num: cli.global.tol_num, modular: cli.global.tol_mod, int: cli.global.tol_int },
        format: cli.global.format,
    };
    if let Err(e) = config.validate() {
        return Outcome { code: 2, stdout: String::new(), stderr: format!("error: {e}\n") };
    }
    match run(&cli.command, &config) {
        Ok(reports) => {
            let failed = reports.iter().any(|r| r.failed);
            let stdout = reports.iter().map(|r| render(r, &config)).collect::<Vec<_>>().join("");
            Outcome { code: i32::from(failed), stdout, stderr: String::new() }
        }
        Err(e) => {
            let body = json!({ "error": e.to_string(), "metadata": metadata(&config) });
            Outcome { code: 1, stdout: String::new(), stderr: format!("{}\n", serde_json::to_string(&body).expect("json")) }
        }
    }
}

fn metadata(config: &RunConfig) -> Value {
    json!({ "schema_version": SCHEMA_VERSION, "config": config })
}

fn render(report: &Report, config: &RunConfig) -> String {
    let mut body = match &report.body {
        Value::Object(map) => map.clone(),
        other => Map::from_iter([("result".to_string(), other.clone())]),
    };
    body.insert("metadata".into(), metadata(config));
    let value = Value::Object(body);
    match config.format {
        Format::Json => format!("{}\n", serde_json::to_string(&value).expect("json")),
        Format::Pretty => format!("{}\n", serde_json::to_string_pretty(&value).expect("json")),
        Format::Csv => render_csv(report, &value),
    }
}

fn render_csv(report: &Report, value: &Value) -> String {
    let mut writer = csv::Writer::from_writer(Vec::new());
    match &report.table {
        Some((header, rows)) => {
            writer.write_record(header).expect("in-memory csv");
            for row in rows {
                writer.write_record(row).expect("in-memory csv");
            }
        }
        None => {
            writer.write_record(["key", "value"]).expect("in-memory csv");
            if let Value::Object(map) = value {
                for (k, v) in map.iter().filter(|(k, _)| k.as_str() != "metadata") {
                    let cell = match v {
                        Value::String(s) => s.clone(),
                        other => other.to_string(),
                    };
                    writer.write_record([k.as_str(), cell.as_str()]).expect("in-memory csv");
                }
            }
        }
    }
    String::from_utf8(writer.into_inner().expect("in-memory csv")).expect("utf-8")
}

fn build_theory(config: &RunConfig) -> Result<ModularData> {
    let algebra = config.algebra.as_deref().expect("theory subcommand");
    ModularData::build(algebra.parse()?, config.level.expect("theory subcommand"), config.weyl_order_cap, config.tolerances)
}

fn parse_labels(md: &ModularData, raw: &[String]) -> Result<Vec<usize>> {
    raw.iter().filter(|s| !s.trim().is_empty()).map(|s| md.spectrum.parse_label(s)).collect()
}

fn complex(z: Complex64) -> Value {
    json!([z.re, z.im])
}

fn run(command: &Command, config: &RunConfig) -> Result<Vec<Report>> {
    match command {
        Command::Spectrum(_) => {
            let md = build_theory(config)?;
            let sp = SpectrumJson::from(&md.spectrum);
            let rows = (0..md.len())
                .map(|i| vec![i.to_string(), md.spectrum.label_string(i), md.spectrum.delta(i).to_string()])
                .collect();
            Ok(vec![Report::new(serde_json::to_value(sp).expect("json")).with_table(&["index", "label", "delta"], rows)])
        }
        Command::Smatrix(_) => {
            let md = build_theory(config)?;
            let labels: Vec<String> = (0..md.len()).map(|i| md.spectrum.label_string(i)).collect();
            let s: Vec<Vec<Value>> = md.s.iter().map(|row| row.iter().map(|&z| complex(z)).collect()).collect();
            let t: Vec<Value> = md.t.iter().map(|&z| complex(z)).collect();
            let mut rows = Vec::new();
            for (i, row) in md.s.iter().enumerate() {
                for (j, z) in row.iter().enumerate() {
                    rows.push(vec![labels[i].clone(), labels[j].clone(), z.re.to_string(), z.im.to_string()]);
                }
            }
            let body = json!({
                "labels": labels,
                "s": s,
                "t": t,
                "conjugation": md.conjugation,
                "residuals": md.residuals(),
            });
            Ok(vec![Report::new(body).with_table(&["row", "col", "re", "im"], rows)])
        }
        Command::Fuse { labels, batch, .. } => {
            let md = build_theory(config)?;
            let ring = build_fusion_ring(&md)?;
            let fuse = |a: &str, b: &str| -> Result<Report> {
                let (ia, ib) = (md.spectrum.parse_label(a)?, md.spectrum.parse_label(b)?);
                let product = ring.product(ia, ib);
                let rows = product.iter().map(|&(c, n)| vec![md.spectrum.label_string(c), n.to_string()]).collect();
                let terms: Vec<Value> = product
                    .iter()
                    .map(|&(c, n)| json!({ "label": md.spectrum.label_string(c), "multiplicity": n }))
                    .collect();
                Ok(Report::new(json!({ "a": md.spectrum.label_string(ia), "b": md.spectrum.label_string(ib), "product": terms }))
                    .with_table(&["label", "multiplicity"], rows))
            };
            match batch {
                Some(path) => {
                    #[derive(Deserialize)]
                    struct Pair {
                        a: String,
                        b: String,
                    }
                    let file = std::fs::File::open(path).map_err(|e| Error::InvalidConfig(format!("{}: {e}", path.display())))?;
                    std::io::BufReader::new(file)
                        .lines()
                        .map(|line| line.map_err(|e| Error::InvalidConfig(e.to_string())))
                        .filter(|line| line.as_ref().map_or(true, |l| !l.trim().is_empty()))
                        .map(|line| {
                            let pair: Pair = serde_json::from_str(&line?).map_err(|e| Error::InvalidConfig(format!("batch line: {e}")))?;
                            fuse(&pair.a, &pair.b)
                        })
                        .collect()
                }
                None => match labels.as_slice() {
                    [a, b] => Ok(vec![fuse(a, b)?]),
                    _ => Err(Error::InvalidConfig("fuse needs exactly two labels, e.g. --labels \"1,0;0,1\"".into())),
                },
            }
        }
        Command::Rank { genus, labels, .. } => {
            let md = build_theory(config)?;
            let idx = parse_labels(&md, labels)?;
            let rank = verlinde_rank(&md, &idx, *genus)?;
            let shown: Vec<String> = idx.iter().map(|&i| md.spectrum.label_string(i)).collect();
            Ok(vec![Report::new(json!({ "rank": rank, "genus": genus, "labels": shown }))])
        }
        Command::Currents { phase, .. } => {
            let md = build_theory(config)?;
            let ring = build_fusion_ring(&md)?;
            let group = find_simple_currents(&ring, &md)?;
            let family = build_current_family(&md, &group, config.weyl_order_cap, (*phase).into())?;
            let name = |i: usize| md.spectrum.label_string(i);
            let mut rows = Vec::new();
            let currents: Vec<Value> = group
                .elements
                .iter()
                .map(|&j| {
                    let order = group.order_of(j).expect("element of the group");
                    let orbit = family.orbit_data.get(&j);
                    let fixed: Vec<String> = orbit.map_or_else(Vec::new, |o| o.fixed_points.iter().map(|&f| name(f)).collect());
                    let folded = orbit.map(|o| o.classification.to_string());
                    rows.push(vec![name(j), order.to_string(), folded.clone().unwrap_or_default(), fixed.join(" ")]);
                    let sj = family.sj.get(&j).filter(|_| j != md.vacuum()).map(|m| {
                        m.matrix.iter().map(|row| row.iter().map(|&z| complex(z)).collect::<Vec<_>>()).collect::<Vec<_>>()
                    });
                    json!({
                        "current": name(j),
                        "order": order,
                        "action": group.action[group.position(j).expect("element")].iter().map(|&m| name(m)).collect::<Vec<_>>(),
                        "automorphism": orbit.map(|o| o.automorphism.permutation.clone()),
                        "orbits": orbit.map(|o| o.orbits.clone()),
                        "folded_cartan": orbit.map(|o| o.folded_cartan.clone()),
                        "orbit_algebra": folded,
                        "induced_level": orbit.and_then(|o| o.induced_level),
                        "fixed_points": fixed,
                        "s_j": sj,
                        "realized": !family.unrealized.contains(&j),
                    })
                })
                .collect();
            let body = json!({ "group_invariants": group.abstract_group().invariants(), "currents": currents });
            Ok(vec![Report::new(body).with_table(&["current", "order", "orbit_algebra", "fixed_points"], rows)])
        }
        Command::Subbundles { genus, labels, phase, .. } => {
            let md = build_theory(config)?;
            let ring = build_fusion_ring(&md)?;
            let group = find_simple_currents(&ring, &md)?;
            let family = build_current_family(&md, &group, config.weyl_order_cap, (*phase).into())?;
            let idx = parse_labels(&md, labels)?;
            let d = decompose(&md, &group, &family, &idx, *genus)?;
            let tol = config.tolerances.int;
            let integral = d.is_integral(tol);
            let ranks: Vec<Value> = d
                .values
                .iter()
                .enumerate()
                .map(|(character_id, z)| {
                    let rank = crate::fusion::extract_count(*z, tol).ok();
                    json!({ "character_id": character_id, "rank": rank, "value": complex(*z) })
                })
                .collect();
            let rows = d
                .values
                .iter()
                .enumerate()
                .map(|(i, z)| vec![i.to_string(), z.re.to_string(), z.im.to_string()])
                .collect();
            let tuples: Vec<Vec<String>> = d.tuples.iter().map(|t| t.iter().map(|&j| md.spectrum.label_string(j)).collect()).collect();
            let body = json!({
                "total_rank": d.total_rank,
                "group_order": d.tuples.len(),
                "ranks": ranks,
                "tuples": tuples,
                "traces": d.traces.iter().map(|&z| complex(z)).collect::<Vec<_>>(),
                "integral": integral,
                "max_residual": d.max_residual,
                "sum_residual": d.sum_residual,
                "status": if *genus > 0 { "conjectural" } else { "established" },
            });
            let mut report = Report::new(body).with_table(&["character_id", "re", "im"], rows);
            report.failed = !integral;
            Ok(vec![report])
        }
        Command::Double { surface, .. } => {
            let md = build_theory(config)?;
            let raw = match surface.strip_prefix('@') {
                Some(path) => std::fs::read_to_string(path).map_err(|e| Error::InvalidConfig(format!("{path}: {e}")))?,
                None => surface.clone(),
            };
            let input: SurfaceInput = serde_json::from_str(&raw).map_err(|e| Error::InvalidSurface(e.to_string()))?;
            let x = LabelledSurface {
                genus: input.genus,
                boundary_components: input.boundaries,
                bulk: input
                    .bulk
                    .iter()
                    .map(|b| Ok(BulkInsertion { label: md.spectrum.parse_label(&b.label)?, orientation: b.orientation }))
                    .collect::<Result<_>>()?,
                boundary_insertions: input
                    .boundary_insertions
                    .iter()
                    .map(|b| Ok(BoundaryInsertion { label: md.spectrum.parse_label(&b.label)?, component: b.component }))
                    .collect::<Result<_>>()?,
                orientable: input.orientable,
            };
            let omega = charge_conjugation_automorphism(&md);
            let double = build_double(&x, &omega)?;
            let dimension = correlator_space_dim(&x, &omega, &md)?;
            let components: Vec<Vec<String>> = double
                .component_labels
                .iter()
                .map(|c| c.iter().map(|&l| md.spectrum.label_string(l)).collect())
                .collect();
            Ok(vec![Report::new(json!({
                "genus": double.genus,
                "connected_components": double.connected_components,
                "component_labels": components,
                "correlator_dimension": dimension,
            }))])
        }
        Command::Boundary(_) => {
            let md = build_theory(config)?;
            let ring = build_fusion_ring(&md)?;
            let automorphisms = match find_fusion_automorphisms(&ring, &md, DEFAULT_AUTOMORPHISM_SEARCH_CAP) {
                Ok(found) => Some(found.into_iter().map(|w| w.permutation).collect::<Vec<_>>()),
                Err(Error::SearchSpaceTooLarge { .. }) => None,
                Err(e) => return Err(e),
            };
            let conj = charge_conjugation_automorphism(&md);
            let ca = build_classifying_algebra(&ring, &conj)?;
            let bcs = enumerate_boundary_conditions(&ca, &md)?;
            let rows = bcs
                .iter()
                .flat_map(|b| {
                    b.reflection
                        .iter()
                        .enumerate()
                        .map(|(l, z)| vec![md.spectrum.label_string(b.name), md.spectrum.label_string(l), z.re.to_string(), z.im.to_string()])
                        .collect::<Vec<_>>()
                })
                .collect();
            let conditions: Vec<Value> = bcs
                .iter()
                .map(|b| {
                    json!({
                        "name": md.spectrum.label_string(b.name),
                        "reflection": b.reflection.iter().map(|&z| complex(z)).collect::<Vec<_>>(),
                        "residual": b.residual,
                    })
                })
                .collect();
            let body = json!({
                "fusion_automorphisms": automorphisms,
                "count": bcs.len(),
                "boundary_conditions": conditions,
            });
            Ok(vec![Report::new(body).with_table(&["boundary", "label", "re", "im"], rows)])
        }
        Command::Selftest => {
            let reports = acceptance::run_all();
            let passed = reports.iter().all(|r| r.passed);
            let rows = reports
                .iter()
                .map(|r| vec![r.id.to_string(), r.title.to_string(), r.passed.to_string(), r.detail.clone()])
                .collect();
            let mut report = Report::new(json!({ "passed": passed, "criteria": reports }))
                .with_table(&["criterion", "title", "passed", "detail"], rows);
            report.failed = !passed;
            Ok(vec![report])
        }
    }
}
