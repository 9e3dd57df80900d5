//! `surfcut`: command-line access to triangulations, gradings, cuts and the
//! global dimension test.
//!
//! Exit codes: 0 on success, 1 on a negative verdict (global dimension above
//! 2, no cut, gradings not shown equivalent, no isomorphism), 2 on input
//! errors.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use serde_json::{json, Value};

use surfcut::compare::{compare, Certificate, Verdict};
use surfcut::complexes::{CwComplex, Variant};
use surfcut::curves::{Curve, GradedTriangulation};
use surfcut::cuts::{cut_exists, enumerate_cuts, EdgeKind, MatchingGraph};
use surfcut::document::Document;
use surfcut::gldim::{construct_good_pair, CutAlgebra};
use surfcut::quiver::graded_isomorphic;
use surfcut::{build, MarkedSurface, SurfaceQuiver, Triangulation};

#[derive(Parser)]
#[command(name = "surfcut", version, about = "Graded triangulations, cuts and surface cut algebras")]
struct Cli {
    /// Output style.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Seed for randomized commands.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Largest quiver the isomorphism search accepts.
    #[arg(long, global = true, default_value_t = 16)]
    max_vertices: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Machine,
}

#[derive(Clone, Copy, ValueEnum)]
enum ComplexKind {
    /// `C_•(τ)` built on `Q(τ)`.
    Reduced,
    /// `Ĉ_•(τ)` built on the quiver with all corner arrows.
    Unreduced,
    /// The cellular complex of `X_τ`.
    Cw,
}

#[derive(Args)]
struct SurfaceArgs {
    #[arg(long, default_value_t = 0)]
    genus: u32,
    /// Marked points per boundary component, comma separated.
    #[arg(long, value_delimiter = ',')]
    boundary: Vec<u32>,
    #[arg(long, default_value_t = 0)]
    punctures: u32,
}

impl SurfaceArgs {
    fn surface(&self) -> MarkedSurface {
        MarkedSurface::new(self.genus, self.boundary.clone(), self.punctures)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Checks a document and summarises its triangulation.
    Validate { doc: PathBuf },
    /// Lists the vertices, arrows and cycles of the quiver.
    Quiver {
        doc: PathBuf,
        /// Show the quiver with every corner arrow.
        #[arg(long)]
        unreduced: bool,
    },
    /// Integer homology of one of the chain complexes.
    Homology {
        doc: PathBuf,
        #[arg(long, default_value_t = 1)]
        degree: usize,
        #[arg(long, value_enum, default_value_t = ComplexKind::Reduced)]
        complex: ComplexKind,
    },
    /// Admissible cuts and the matching graph.
    Cuts {
        doc: PathBuf,
        /// Print only the number of cuts.
        #[arg(long)]
        count: bool,
    },
    /// Projective shapes and the global dimension test for the document's cut.
    Gldim { doc: PathBuf },
    /// Graded flips at the given arcs, in order; prints the new document.
    Flip {
        doc: PathBuf,
        #[arg(long = "arc", required = true)]
        arcs: Vec<String>,
    },
    /// Value of the grading on a closed curve.
    Invariant {
        doc: PathBuf,
        /// Crossed arc ids, comma separated; defaults to the document's curve.
        #[arg(long, value_delimiter = ',')]
        curve: Option<Vec<String>>,
    },
    /// Decides equivalence of two graded triangulations under a certificate.
    Compare {
        first: PathBuf,
        second: PathBuf,
        /// Flip sequence from the first triangulation to the second.
        #[arg(long, value_delimiter = ',', conflicts_with = "isomorphism")]
        flips: Option<Vec<String>>,
        /// JSON map from arc ids of the first quiver to arc ids of the second.
        #[arg(long)]
        isomorphism: Option<PathBuf>,
    },
    /// Searches for a graded isomorphism between the two quivers.
    Isomorphic { first: PathBuf, second: PathBuf },
    /// Builds a triangulation and cut whose cut algebra has global dimension at most 2.
    Construct {
        #[command(flatten)]
        surface: SurfaceArgs,
    },
    /// A random triangulation of a surface.
    Random {
        #[command(flatten)]
        surface: SurfaceArgs,
        #[arg(long, default_value_t = 2)]
        min_valency: usize,
        #[arg(long, default_value_t = 50)]
        flips: usize,
    },
}

/// What a command prints, in both styles, and its exit code.
struct Output {
    text: String,
    machine: Value,
    code: u8,
}

impl Output {
    fn ok(text: String, machine: Value) -> Self {
        Self { text, machine, code: 0 }
    }

    fn verdict(text: String, machine: Value, positive: bool) -> Self {
        Self { text, machine, code: if positive { 0 } else { 1 } }
    }

    fn document(doc: &Document) -> Self {
        let machine = serde_json::to_value(doc).expect("documents always serialize");
        Self::ok(doc.to_json(), machine)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            match cli.format {
                Format::Text => println!("{}", out.text.trim_end()),
                Format::Machine => println!("{}", out.machine),
            }
            ExitCode::from(out.code)
        }
        Err(e) => {
            match cli.format {
                Format::Text => eprintln!("error: {e:#}"),
                Format::Machine => println!("{}", json!({ "error": format!("{e:#}") })),
            }
            ExitCode::from(2)
        }
    }
}

fn read(path: &Path) -> Result<Document> {
    let text = if path == Path::new("-") {
        std::io::read_to_string(std::io::stdin())?
    } else {
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?
    };
    Ok(Document::parse(&text)?)
}

fn run(cli: &Cli) -> Result<Output> {
    match &cli.command {
        Command::Validate { doc } => validate(&read(doc)?),
        Command::Quiver { doc, unreduced } => quiver(&read(doc)?, *unreduced),
        Command::Homology { doc, degree, complex } => homology(&read(doc)?, *degree, *complex),
        Command::Cuts { doc, count } => cuts(&read(doc)?, *count),
        Command::Gldim { doc } => gldim(&read(doc)?),
        Command::Flip { doc, arcs } => flip(&read(doc)?, arcs),
        Command::Invariant { doc, curve } => invariant(&read(doc)?, curve.as_deref()),
        Command::Compare { first, second, flips, isomorphism } => {
            let certificate = match (flips, isomorphism) {
                (Some(f), _) => Certificate::FlipSequence(f.clone()),
                (None, Some(path)) => {
                    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
                    let map: BTreeMap<String, String> =
                        serde_json::from_str(&text).context("isomorphism certificate")?;
                    Certificate::Isomorphism(map)
                }
                (None, None) => Certificate::SameTriangulation,
            };
            compare_docs(&read(first)?, &read(second)?, &certificate)
        }
        Command::Isomorphic { first, second } => isomorphic(&read(first)?, &read(second)?, cli.max_vertices),
        Command::Construct { surface } => {
            let (t, cut) = construct_good_pair(&surface.surface())?;
            let sq = SurfaceQuiver::new(&t)?;
            Ok(Output::document(&Document::from_triangulation(&t, Some(&cut.degrees(&sq)))?))
        }
        Command::Random { surface, min_valency, flips } => {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(cli.seed);
            let base = build::triangulate(&surface.surface())?;
            let start = build::random_flips(&base, *flips, 2, &mut rng);
            let t = build::random_with_valency(&start, *min_valency, 10_000, &mut rng)
                .ok_or_else(|| anyhow!("no triangulation with valency at least {min_valency} found"))?;
            Ok(Output::document(&Document::from_triangulation(&t, None)?))
        }
    }
}

fn validate(doc: &Document) -> Result<Output> {
    let t = doc.triangulation()?;
    let valencies: Vec<usize> = t.vertex_structure().punctures().map(|(_, p)| p.valency).collect();
    let mut machine = json!({
        "valid": true,
        "surface": doc.surface,
        "arcs": t.arcs().len(),
        "triangles": t.triangles().len(),
        "puncture_valencies": valencies,
    });
    let mut text = format!(
        "valid triangulation of {}\narcs: {}\ntriangles: {}\npuncture valencies: {:?}\n",
        doc.surface,
        t.arcs().len(),
        t.triangles().len(),
        valencies
    );
    if doc.grading.is_some() {
        let g = doc.graded()?;
        let cut = surfcut::cuts::check_cut(&g.quiver, &g.degrees).is_ok();
        machine["degree_one"] = json!(g.is_degree_one());
        machine["admissible_cut"] = json!(cut);
        text += &format!("degree-1 grading: {}\nadmissible cut: {}\n", g.is_degree_one(), cut);
    }
    Ok(Output::ok(text, machine))
}

fn quiver(doc: &Document, unreduced: bool) -> Result<Output> {
    let t = doc.triangulation()?;
    let sq = SurfaceQuiver::new(&t)?;
    let degrees = match doc.grading {
        Some(_) => doc.degrees(&sq)?,
        None => vec![0; sq.reduced.arrows.len()],
    };
    let (q, cycles, degrees) = if unreduced {
        (&sq.full, &sq.full_cycles, sq.extend_grading(&degrees))
    } else {
        (&sq.reduced, &sq.cycles, degrees)
    };
    let arrows: Vec<Value> = q
        .arrows
        .iter()
        .zip(&degrees)
        .map(|(a, d)| json!({"name": a.name, "tail": q.vertices[a.tail], "head": q.vertices[a.head], "degree": d}))
        .collect();
    let cycle_names: Vec<Vec<&str>> =
        cycles.iter().map(|c| c.arrows.iter().map(|&a| q.arrows[a].name.as_str()).collect()).collect();
    let mut text = format!("vertices: {}\narrows:\n", q.vertices.join(" "));
    for (a, d) in q.arrows.iter().zip(&degrees) {
        text += &format!("  {}: {} -> {} (degree {d})\n", a.name, q.vertices[a.tail], q.vertices[a.head]);
    }
    text += "cycles:\n";
    for c in &cycle_names {
        text += &format!("  {}\n", c.join(" "));
    }
    Ok(Output::ok(text, json!({"vertices": q.vertices, "arrows": arrows, "cycles": cycle_names})))
}

fn homology(doc: &Document, degree: usize, kind: ComplexKind) -> Result<Output> {
    let t = doc.triangulation()?;
    let sq = SurfaceQuiver::new(&t)?;
    let complex = match kind {
        ComplexKind::Reduced => sq.chain_complex(Variant::Reduced),
        ComplexKind::Unreduced => sq.chain_complex(Variant::Unreduced),
        ComplexKind::Cw => CwComplex::new(&t, &sq).complex,
    };
    let h = complex.homology(degree)?;
    let torsion: Vec<String> = h.torsion.iter().map(|x| x.to_string()).collect();
    let text = format!(
        "H_{degree}: rank {}, torsion {}",
        h.rank,
        if torsion.is_empty() { "none".to_string() } else { torsion.join(", ") }
    );
    Ok(Output::ok(text, json!({"degree": degree, "rank": h.rank, "torsion": torsion})))
}

fn cuts(doc: &Document, count: bool) -> Result<Output> {
    let t = doc.triangulation()?;
    let sq = SurfaceQuiver::new(&t)?;
    let all = enumerate_cuts(&sq);
    if count {
        return Ok(Output::verdict(all.len().to_string(), json!({"count": all.len()}), !all.is_empty()));
    }
    let names: Vec<Vec<&str>> =
        all.iter().map(|c| c.arrows.iter().map(|&a| sq.reduced.arrows[a].name.as_str()).collect()).collect();
    let mut text = format!("{} admissible cuts\n", all.len());
    for n in &names {
        text += &format!("  {{{}}}\n", n.join(", "));
    }
    let mut machine = json!({"count": all.len(), "cuts": names});
    if let Ok(g) = MatchingGraph::new(&t, &sq) {
        let sizes = json!({
            "white": g.whites.len(), "black": g.blacks.len(), "grey": g.greys.len(),
            "e_edges": g.count(EdgeKind::E), "f_edges": g.count(EdgeKind::F),
        });
        text += &format!(
            "matching graph: {} white, {} black, {} grey; {} E edges, {} F edges\n",
            g.whites.len(),
            g.blacks.len(),
            g.greys.len(),
            g.count(EdgeKind::E),
            g.count(EdgeKind::F)
        );
        let exists = cut_exists(&t)?.is_some();
        text += &format!("cut detected from matchings: {exists}\n");
        machine["matching_graph"] = sizes;
        machine["cut_exists"] = json!(exists);
    }
    Ok(Output::verdict(text, machine, !all.is_empty()))
}

fn gldim(doc: &Document) -> Result<Output> {
    let g = doc.graded()?;
    let alg = CutAlgebra::from_degrees(&g.triangulation, &g.degrees)?;
    let report = alg.report()?;
    let ok = report.iter().all(|r| !r.pd_ge_3);
    let mut text = String::from("arc  shape  pd>=3\n");
    for r in &report {
        text += &format!("{:<4} {:<6} {}\n", r.arc, format!("{:?}", r.shape), r.pd_ge_3);
    }
    text += &format!("global dimension at most 2: {ok}\n");
    Ok(Output::verdict(text, json!({"arcs": report, "gldim_le_2": ok}), ok))
}

fn flip(doc: &Document, arcs: &[String]) -> Result<Output> {
    let g = doc.graded()?;
    let ids = arcs
        .iter()
        .map(|id| g.triangulation.edge_by_id(id).ok_or_else(|| anyhow!("unknown arc `{id}`")))
        .collect::<Result<Vec<_>>>()?;
    let moved = g.transport(&ids)?;
    Ok(Output::document(&Document::from_triangulation(&moved.triangulation, Some(&moved.degrees))?))
}

fn invariant(doc: &Document, arcs: Option<&[String]>) -> Result<Output> {
    let g = doc.graded()?;
    let curve = match arcs {
        Some(ids) => curve_from_ids(&g.triangulation, ids)?,
        None => doc.curve(&g.triangulation)?.ok_or_else(|| anyhow!("document has no curve; pass --curve"))?,
    };
    let value = g.evaluate(&curve)?;
    Ok(Output::ok(format!("value on curve: {value}"), json!({"value": value})))
}

fn curve_from_ids(t: &Triangulation, ids: &[String]) -> Result<Curve> {
    let arcs = ids
        .iter()
        .map(|id| t.edge_by_id(id).filter(|&e| t.is_arc(e)).ok_or_else(|| anyhow!("unknown arc `{id}`")))
        .collect::<Result<Vec<_>>>()?;
    Ok(Curve::from_arcs(&arcs))
}

fn compare_docs(first: &Document, second: &Document, certificate: &Certificate) -> Result<Output> {
    let (g1, g2) = (first.graded()?, second.graded()?);
    let c = compare(&g1, &g2, certificate)?;
    let verdict = match c.verdict {
        Verdict::Equivalent => "equivalent",
        Verdict::InequivalentUnderCertificate => "inequivalent-under-certificate",
        Verdict::Unknown => "unknown",
    };
    let mut text = format!("verdict: {verdict}\n");
    if !c.class.is_empty() {
        text += &format!("class on H1 basis: {:?}\n", c.class);
    }
    let machine = serde_json::to_value(&c)?;
    Ok(Output::verdict(text, machine, c.verdict == Verdict::Equivalent))
}

fn graded_or_plain(doc: &Document) -> Result<GradedTriangulation> {
    if doc.grading.is_some() {
        return Ok(doc.graded()?);
    }
    let t = doc.triangulation()?;
    let n = SurfaceQuiver::new(&t)?.reduced.arrows.len();
    Ok(GradedTriangulation::new(t, vec![0; n])?)
}

fn isomorphic(first: &Document, second: &Document, max_vertices: usize) -> Result<Output> {
    let (g1, g2) = (graded_or_plain(first)?, graded_or_plain(second)?);
    let (q1, q2) = (g1.quiver.graded(&g1.degrees), g2.quiver.graded(&g2.degrees));
    let Some(phi) = graded_isomorphic(&q1, &q2, max_vertices)? else {
        return Ok(Output::verdict("no graded isomorphism".into(), json!({"isomorphism": null}), false));
    };
    let map: BTreeMap<&str, &str> =
        phi.iter().enumerate().map(|(v, &w)| (q1.vertices[v].as_str(), q2.vertices[w].as_str())).collect();
    if map.len() != phi.len() {
        bail!("vertex names are not unique");
    }
    let text = map.iter().map(|(a, b)| format!("{a} -> {b}")).collect::<Vec<_>>().join("\n");
    Ok(Output::ok(text, json!({"isomorphism": map})))
}
