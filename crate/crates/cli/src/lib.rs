//! `pathtri` command-line front end.
//!
//! Every command writes a [`schema::ReportFile`] with a command-specific
//! payload, to `--output` when given and to standard output otherwise.
//! Exit status is 0 on success, 1 on a geometric or topological error and 2
//! on I/O, schema or usage errors.

pub mod error;
pub mod schema;
pub mod svg;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use pathtri_core::collapse::{
    collapse_cone_to_path_triangle, collapse_sphere, elementary_collapse_sequence, replay,
    CollapseTrace, ConeSpec, ElementaryStep, SphereSpec,
};
use pathtri_core::cycles::{hull_cycle, triangle_cycles, validate_cycle, PathCycle};
use pathtri_core::geometry::{PathTriangle, Point2, TriangleKind, VertexId};
use pathtri_core::nerve::{
    check_good_cover, maximal_nucleus_complex, nerve_at, nerve_census, Nerve,
};
use pathtri_core::presentation::{
    build_homotopy_system, present_triangulation, realize_system, Carrier, CarrierRealization,
    Presentation,
};
use pathtri_core::triangulation::{
    path_class_triangulate, triangulate, Triangulation, TriangulationConfig,
};

pub use error::CliError;
use schema::{pt, pts, Fixed, Pt, ReportFile, TriangulationDoc};

/// Environment variable overriding the class-representative seed.
pub const SEED_VAR: &str = "PATHTRI_SEED";

#[derive(Debug, Parser)]
#[command(
    name = "pathtri",
    version,
    about = "Path triangulations of planar point sets"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Output {
    /// Report file; standard output when omitted.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct TriInput {
    /// Triangulation report written by `triangulate`.
    #[arg(long)]
    input: PathBuf,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Delaunay path triangulation of a point set.
    Triangulate {
        /// Point set: {"points": [[x, y], ...], "labels": [...]}.
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        output: Output,
        #[arg(long)]
        svg: Option<PathBuf>,
        /// Samples per edge path.
        #[arg(long, default_value_t = 16)]
        samples: usize,
        /// Fibers per path triangle.
        #[arg(long, default_value_t = 1000)]
        fibers: usize,
        /// Representatives per path class; adds a `classes` table.
        #[arg(long)]
        class_reps: Option<usize>,
    },
    /// Triangle boundary cycles and the hull cycle.
    Cycles {
        #[command(flatten)]
        input: TriInput,
        #[command(flatten)]
        output: Output,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Free-group presentation, or the full homotopy system.
    Present {
        #[command(flatten)]
        input: TriInput,
        #[command(flatten)]
        output: Output,
        /// Generator vertex; the maximal nucleus when omitted.
        #[arg(long)]
        generator: Option<usize>,
        /// Emit the homotopy system and its realization report.
        #[arg(long, conflicts_with = "generator")]
        system: bool,
    },
    /// Nerve census, one nerve, or the maximal nucleus complex.
    Nerve {
        #[command(flatten)]
        input: TriInput,
        #[command(flatten)]
        output: Output,
        #[arg(long, conflicts_with = "mnc")]
        vertex: Option<usize>,
        #[arg(long)]
        mnc: bool,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Good-cover check.
    CoverCheck {
        #[command(flatten)]
        input: TriInput,
        #[command(flatten)]
        output: Output,
    },
    /// Cone collapse onto a path triangle.
    CollapseCone {
        /// Apex as `x,y`.
        #[arg(long, value_parser = parse_reals::<2>, allow_hyphen_values = true)]
        apex: [f64; 2],
        /// Base chord as `x1,y1,x2,y2`.
        #[arg(long, value_parser = parse_reals::<4>, allow_hyphen_values = true)]
        base: [f64; 4],
        #[arg(long)]
        fibers: usize,
        #[arg(long, default_value_t = 2)]
        samples: usize,
        #[command(flatten)]
        output: Output,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Sphere collapse onto a round path triangle.
    CollapseSphere {
        /// Center as `x,y`.
        #[arg(long, value_parser = parse_reals::<2>, allow_hyphen_values = true)]
        center: [f64; 2],
        #[arg(long)]
        radius: f64,
        /// Vertex angles in degrees, `a1,a2,a3`.
        #[arg(long, value_parser = parse_reals::<3>, allow_hyphen_values = true)]
        angles: [f64; 3],
        #[arg(long)]
        fibers: usize,
        #[arg(long, default_value_t = 16)]
        samples: usize,
        #[command(flatten)]
        output: Output,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Elementary collapse sequence down to one vertex.
    CollapseSeq {
        #[command(flatten)]
        input: TriInput,
        #[command(flatten)]
        output: Output,
    },
}

fn parse_reals<const N: usize>(s: &str) -> Result<[f64; N], String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != N {
        return Err(format!(
            "expected {N} comma-separated numbers, got {}",
            parts.len()
        ));
    }
    let mut out = [0.0; N];
    for (slot, part) in out.iter_mut().zip(parts) {
        *slot = part.trim().parse().map_err(|e| format!("`{part}`: {e}"))?;
    }
    Ok(out)
}

/// Runs the CLI on `args` (program name first) and returns the exit status.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };
    match execute(cli.command, stdout) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

fn seed() -> Result<u64, CliError> {
    match std::env::var(SEED_VAR) {
        Ok(s) => s.trim().parse().map_err(|_| {
            CliError::Usage(format!("{SEED_VAR} must be an unsigned integer, got `{s}`"))
        }),
        Err(_) => Ok(TriangulationConfig::default().seed),
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn emit<P: Serialize>(
    command: &str,
    payload: P,
    output: &Output,
    stdout: &mut dyn Write,
) -> Result<(), CliError> {
    let text = schema::to_json(&ReportFile::new(command, payload))?;
    match &output.output {
        Some(path) => write_file(path, &text),
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|source| CliError::Io {
                path: PathBuf::from("<stdout>"),
                source,
            }),
    }
}

fn load(input: &TriInput) -> Result<Triangulation, CliError> {
    let report: ReportFile<TriangulationDoc> =
        schema::from_json("triangulation", &read(&input.input)?)?;
    if report.schema_version != schema::SCHEMA_VERSION {
        return Err(CliError::schema(
            "schema_version",
            format!("unsupported version `{}`", report.schema_version),
        ));
    }
    if report.command != "triangulate" {
        return Err(CliError::schema(
            "command",
            format!("expected a triangulate report, got `{}`", report.command),
        ));
    }
    report.payload.to_triangulation()
}

fn vertex(t: &Triangulation, id: usize) -> Result<VertexId, CliError> {
    let v = VertexId(id);
    if t.contains_vertex(v) {
        Ok(v)
    } else {
        Err(pathtri_core::Error::UnknownVertex(v).into())
    }
}

fn execute(command: Command, stdout: &mut dyn Write) -> Result<(), CliError> {
    match command {
        Command::Triangulate {
            input,
            output,
            svg,
            samples,
            fibers,
            class_reps,
        } => {
            let file: schema::PointSetFile = schema::from_json("points", &read(&input)?)?;
            file.check()?;
            let config = TriangulationConfig {
                samples,
                fibers,
                seed: seed()?,
            };
            let points = file.points();
            let t = triangulate(&points, &config)?;
            let mut doc = TriangulationDoc::new(&t, samples, fibers);
            doc.labels = file.labels.clone();
            if let Some(r) = class_reps {
                let ct = path_class_triangulate(&points, r, &config)?;
                doc = doc.with_classes(&ct, config.seed);
            }
            if let Some(path) = svg {
                let mnc = maximal_nucleus_complex(&t).nucleus;
                write_file(&path, &svg::triangulation(&t, &[mnc]))?;
            }
            emit("triangulate", doc, &output, stdout)
        }
        Command::Cycles { input, output, svg } => {
            let t = load(&input)?;
            let mut cycles: Vec<(CycleDoc, PathCycle)> = triangle_cycles(&t)
                .into_iter()
                .enumerate()
                .map(|(i, c)| (CycleDoc::new("triangle", Some(i), &c), c))
                .collect();
            let hull = hull_cycle(&t).ok();
            if let Some(c) = &hull {
                cycles.push((CycleDoc::new("hull", None, c), c.clone()));
            }
            if let Some(path) = svg {
                let drawn: Vec<PathCycle> = hull.into_iter().collect();
                write_file(&path, &svg::cycles(&t, &drawn))?;
            }
            let payload = CyclesDoc {
                count: cycles.len(),
                cycles: cycles.into_iter().map(|(d, _)| d).collect(),
            };
            emit("cycles", payload, &output, stdout)
        }
        Command::Present {
            input,
            output,
            generator,
            system,
        } => {
            let t = load(&input)?;
            if system {
                let s = build_homotopy_system(&t)?;
                let r = realize_system(&s)?;
                let payload = SystemDoc {
                    full: PresentationDoc::new(s.full()),
                    stars: s.stars().iter().map(PresentationDoc::new).collect(),
                    realization: RealizationDoc {
                        full: (&r.full).into(),
                        stars: r.stars.iter().map(Into::into).collect(),
                    },
                };
                emit("present", payload, &output, stdout)
            } else {
                let g = match generator {
                    Some(id) => vertex(&t, id)?,
                    None => maximal_nucleus_complex(&t).nucleus,
                };
                let p = present_triangulation(&t, g)?;
                p.check()?;
                emit("present", PresentationDoc::new(&p), &output, stdout)
            }
        }
        Command::Nerve {
            input,
            output,
            vertex: v,
            mnc,
            svg,
        } => {
            let t = load(&input)?;
            let (nerves, mnc_nucleus) = if let Some(id) = v {
                (vec![nerve_at(&t, vertex(&t, id)?)?], None)
            } else if mnc {
                let m = maximal_nucleus_complex(&t);
                let nucleus = m.nucleus;
                (vec![m], Some(nucleus.0))
            } else {
                (
                    nerve_census(&t),
                    Some(maximal_nucleus_complex(&t).nucleus.0),
                )
            };
            if let Some(path) = svg {
                write_file(&path, &svg::nerves(&t, &nerves))?;
            }
            let payload = NervesDoc {
                count: nerves.len(),
                mnc: mnc_nucleus,
                nerves: nerves.iter().map(|n| NerveDoc::new(&t, n)).collect(),
            };
            emit("nerve", payload, &output, stdout)
        }
        Command::CoverCheck { input, output } => {
            let t = load(&input)?;
            let r = check_good_cover(&t);
            let payload = CoverDoc {
                covers: r.covers,
                intersections_ok: r.intersections_ok,
                good_cover: r.is_good_cover(),
                nerve_count: r.nerve_count,
                witness: r.witness.map(|(i, j)| [i, j]),
                triangle_area: Fixed(r.triangle_area),
                hull_area: Fixed(r.hull_area),
                uncovered_samples: r.uncovered_samples,
                global_intersection: r.global_intersection.iter().map(|v| v.0).collect(),
            };
            emit("cover-check", payload, &output, stdout)
        }
        Command::CollapseCone {
            apex,
            base,
            fibers,
            samples,
            output,
            svg,
        } => {
            let spec = ConeSpec::new(
                Point2::new(apex[0], apex[1]),
                Point2::new(base[0], base[1]),
                Point2::new(base[2], base[3]),
            )?;
            let (trace, _) = collapse_cone_to_path_triangle(&spec, fibers, samples)?;
            if let Some(path) = svg {
                write_file(&path, &svg::collapse(&trace))?;
            }
            emit(
                "collapse-cone",
                TraceDoc::new(&trace, None),
                &output,
                stdout,
            )
        }
        Command::CollapseSphere {
            center,
            radius,
            angles,
            fibers,
            samples,
            output,
            svg,
        } => {
            let center = Point2::new(center[0], center[1]);
            let spec = SphereSpec::from_angles(center, radius, angles)?;
            let (trace, _) = collapse_sphere(&spec, fibers, samples)?;
            if let Some(path) = svg {
                write_file(&path, &svg::collapse(&trace))?;
            }
            let circle = CircleDoc {
                center: pt(center),
                radius: Fixed(radius),
            };
            emit(
                "collapse-sphere",
                TraceDoc::new(&trace, Some(circle)),
                &output,
                stdout,
            )
        }
        Command::CollapseSeq { input, output } => {
            let t = load(&input)?;
            let seq = elementary_collapse_sequence(&t)?;
            let states = replay(&t, &seq)?;
            let payload = SequenceDoc {
                terminal: seq.terminal.0,
                stages: states.len(),
                steps: seq.steps.iter().map(StepDoc::from).collect(),
            };
            emit("collapse-seq", payload, &output, stdout)
        }
    }
}

#[derive(Serialize)]
struct CycleDoc {
    kind: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    triangle: Option<usize>,
    length: usize,
    vertices: Vec<usize>,
    valid: bool,
}

impl CycleDoc {
    fn new(kind: &'static str, triangle: Option<usize>, c: &PathCycle) -> Self {
        CycleDoc {
            kind,
            triangle,
            length: c.len(),
            vertices: c.vertices().iter().map(|v| v.0).collect(),
            valid: validate_cycle(c).is_ok(),
        }
    }
}

#[derive(Serialize)]
struct CyclesDoc {
    count: usize,
    cycles: Vec<CycleDoc>,
}

#[derive(Serialize)]
struct TermDoc {
    coeff: i64,
    generator: usize,
}

#[derive(Serialize)]
struct RelationDoc {
    vertex: usize,
    word: Vec<TermDoc>,
}

#[derive(Serialize)]
struct PresentationDoc {
    carrier: &'static str,
    basis: Vec<usize>,
    vertex_count: usize,
    triangle_count: usize,
    relations: Vec<RelationDoc>,
}

impl PresentationDoc {
    fn new(p: &Presentation) -> Self {
        let (carrier, triangle_count) = match p.carrier() {
            Carrier::Cycle(_) => ("cycle", 0),
            Carrier::Complex(s) => ("complex", s.triangles.len()),
        };
        PresentationDoc {
            carrier,
            basis: p.basis().iter().map(|v| v.0).collect(),
            vertex_count: p.relations().len(),
            triangle_count,
            relations: p
                .relations()
                .iter()
                .map(|(v, w)| RelationDoc {
                    vertex: v.0,
                    word: w
                        .iter()
                        .map(|t| TermDoc {
                            coeff: t.coeff,
                            generator: t.generator.0,
                        })
                        .collect(),
                })
                .collect(),
        }
    }
}

#[derive(Serialize)]
struct CarrierRealizationDoc {
    generator: usize,
    vertices_hit: usize,
    cycles_recovered: usize,
}

impl From<&CarrierRealization> for CarrierRealizationDoc {
    fn from(r: &CarrierRealization) -> Self {
        CarrierRealizationDoc {
            generator: r.generator.0,
            vertices_hit: r.vertices_hit,
            cycles_recovered: r.cycles_recovered,
        }
    }
}

#[derive(Serialize)]
struct RealizationDoc {
    full: CarrierRealizationDoc,
    stars: Vec<CarrierRealizationDoc>,
}

#[derive(Serialize)]
struct SystemDoc {
    full: PresentationDoc,
    stars: Vec<PresentationDoc>,
    realization: RealizationDoc,
}

#[derive(Serialize)]
struct NerveDoc {
    nucleus: usize,
    count: usize,
    triangles: Vec<usize>,
    common_vertices: Vec<usize>,
}

impl NerveDoc {
    fn new(t: &Triangulation, n: &Nerve) -> Self {
        NerveDoc {
            nucleus: n.nucleus.0,
            count: n.len(),
            triangles: n.triangles.clone(),
            common_vertices: n.common_vertices(t).iter().map(|v| v.0).collect(),
        }
    }
}

#[derive(Serialize)]
struct NervesDoc {
    count: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    mnc: Option<usize>,
    nerves: Vec<NerveDoc>,
}

#[derive(Serialize)]
struct CoverDoc {
    covers: bool,
    intersections_ok: bool,
    good_cover: bool,
    nerve_count: usize,
    witness: Option<[usize; 2]>,
    triangle_area: Fixed,
    hull_area: Fixed,
    uncovered_samples: usize,
    global_intersection: Vec<usize>,
}

#[derive(Serialize)]
struct PathDoc {
    start: usize,
    end: usize,
    samples: Vec<Pt>,
}

#[derive(Serialize)]
struct FiberDoc {
    station: Fixed,
    start: Pt,
    end: Pt,
}

#[derive(Serialize)]
struct CircleDoc {
    center: Pt,
    radius: Fixed,
}

#[derive(Serialize)]
struct TraceDoc {
    kind: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    circle: Option<CircleDoc>,
    fiber_count: usize,
    hausdorff_bound: Fixed,
    residual: Vec<PathDoc>,
    fibers: Vec<FiberDoc>,
}

impl TraceDoc {
    fn new(trace: &CollapseTrace, circle: Option<CircleDoc>) -> Self {
        let residual: &PathTriangle = trace.residual();
        TraceDoc {
            kind: match residual.kind() {
                TriangleKind::Straight => "straight",
                TriangleKind::Round => "round",
            },
            circle,
            fiber_count: trace.fibers().len(),
            hausdorff_bound: Fixed(trace.hausdorff_bound()),
            residual: residual
                .paths()
                .iter()
                .map(|p| PathDoc {
                    start: p.start().0,
                    end: p.end().0,
                    samples: pts(p.samples()),
                })
                .collect(),
            fibers: trace
                .fibers()
                .iter()
                .map(|f| FiberDoc {
                    station: Fixed(f.station),
                    start: pt(f.start),
                    end: pt(f.end),
                })
                .collect(),
        }
    }
}

#[derive(Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum StepDoc {
    Face {
        stage: usize,
        free_edge: [usize; 2],
        triangle: usize,
    },
    Edge {
        stage: usize,
        edge: [usize; 2],
        vertex: usize,
    },
}

impl From<&ElementaryStep> for StepDoc {
    fn from(s: &ElementaryStep) -> Self {
        match *s {
            ElementaryStep::Face {
                stage,
                free_edge,
                triangle,
            } => StepDoc::Face {
                stage,
                free_edge: [free_edge.lo().0, free_edge.hi().0],
                triangle,
            },
            ElementaryStep::Edge {
                stage,
                edge,
                vertex,
            } => StepDoc::Edge {
                stage,
                edge: [edge.lo().0, edge.hi().0],
                vertex: vertex.0,
            },
        }
    }
}

#[derive(Serialize)]
struct SequenceDoc {
    terminal: usize,
    /// Complexes `K_0 .. K_n`, the input included.
    stages: usize,
    steps: Vec<StepDoc>,
}
