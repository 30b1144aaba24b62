use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use vertexlab::bs_pairs::tvir_bs;
use vertexlab::checks::{self, Report};
use vertexlab::cy_vertex::{
    cy_vertex_mirror, cy_vertex_mirror_orbifold, cy_vertex_topological, grpp_series, rpp_series, Chamber,
};
use vertexlab::json;
use vertexlab::partitions::{MultiPartition, Partition};
use vertexlab::qm_components::{
    enumerate_components, enumerate_components_in, fixed_term_dim, tvir_quasimap, tvir_quasimap_normalized, Filter,
    HookLabeling,
};
use vertexlab::quiver_geom::{
    diagram, instanton_quiver_data, m_hook, quiver_data_orbifold, quiver_data_resolved, tangent_quiver,
};
use vertexlab::{Error, Result};

/// Torus-fixed combinatorics of BS pairs on A_{m-1} × C and quasimaps to
/// Hilbert schemes of points.
#[derive(Parser)]
#[command(name = "vertexlab", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Order of the cyclic group Γ = Z/m
    #[arg(short, long, global = true)]
    m: Option<usize>,
    /// Partitions as JSON, e.g. '[[2,1],[]]'
    #[arg(long, global = true)]
    legs: Option<String>,
    /// Truncation order of series
    #[arg(long, global = true, default_value_t = 6, allow_negative_numbers = true)]
    order: i64,
    /// Label window [-B, B]
    #[arg(long, global = true, default_value_t = 2, allow_negative_numbers = true)]
    bound: i64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Space {
    /// Fixed point of Hilb(A_{m-1}) labeled by m partitions
    Resolved,
    /// Fixed point of Hilb([C²/Γ]) labeled by one uniformly colored partition
    Orbifold,
    /// Fixed point of the rank-r instanton moduli space
    Instanton,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ChamberArg {
    Minus,
    Plus,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum VertexKind {
    Topological,
    Mirror,
    Rpp,
    Grpp,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Correspondence,
    Crc,
    Gansner,
    All,
}

#[derive(Subcommand)]
enum Command {
    /// Quiver data and tangent character at a fixed point
    Tangent {
        #[arg(long, value_enum, default_value_t = Space::Resolved)]
        space: Space,
        #[command(flatten)]
        common: Common,
    },
    /// The m-hook V^(a) at the origin of chart a
    Mhook {
        /// Chart index a in 0..m
        #[arg(long, default_value_t = 0)]
        leg: usize,
        #[command(flatten)]
        common: Common,
    },
    /// m-core and m-quotient of a partition
    Quotient {
        #[command(flatten)]
        common: Common,
    },
    /// Fixed quasimap components over a target, by degree labeling
    Components {
        /// Include unstable monotone labelings
        #[arg(long)]
        all: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Virtual tangent characters of one labeling on both sides
    Tvir {
        /// Degrees per hook and color as JSON, e.g. '[[0,1],[1,1]]'; zero if omitted
        #[arg(long)]
        labels: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Calabi–Yau-limit vertex series
    CyVertex {
        #[arg(value_enum)]
        kind: VertexKind,
        #[arg(long, value_enum, default_value_t = ChamberArg::Minus)]
        chamber: ChamberArg,
        /// Mirror over the orbifold variables z_0, …, z_{m-1}
        #[arg(long)]
        orbifold: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Verification sweeps; exit 1 if any assertion fails
    Check {
        #[arg(value_enum)]
        suite: Suite,
        /// Largest target size swept
        #[arg(long)]
        size: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
}

struct Output {
    kind: &'static str,
    json: Value,
    text: String,
    failed: bool,
}

impl Output {
    fn new(kind: &'static str, json: Value, text: String) -> Self {
        Output {
            kind,
            json,
            text,
            failed: false,
        }
    }
}

fn usage(msg: impl Into<String>) -> Error {
    Error::Invalid(msg.into())
}

impl Common {
    fn m(&self) -> Result<usize> {
        match self.m {
            Some(0) => Err(usage("-m must be at least 1")),
            Some(m) => Ok(m),
            None => Err(usage("-m is required")),
        }
    }

    fn legs(&self) -> Result<MultiPartition> {
        let s = self.legs.as_deref().ok_or_else(|| usage("--legs is required"))?;
        json::parse_multipartition(s)
    }

    /// `--legs` with exactly `m` partitions.
    fn target(&self) -> Result<MultiPartition> {
        let (m, l) = (self.m()?, self.legs()?);
        if l.m() != m {
            return Err(usage(format!("--legs has {} partitions but m = {m}", l.m())));
        }
        Ok(l)
    }

    /// `--legs` holding a single partition.
    fn partition(&self) -> Result<Partition> {
        let l = self.legs()?;
        match l.legs() {
            [p] => Ok(p.clone()),
            _ => Err(usage("--legs must hold exactly one partition here")),
        }
    }

    fn order(&self) -> Result<i64> {
        if self.order < 0 {
            return Err(usage("--order must be non-negative"));
        }
        Ok(self.order)
    }

    fn bound(&self) -> Result<i64> {
        if self.bound < 0 {
            return Err(usage("--bound must be non-negative"));
        }
        Ok(self.bound)
    }
}

fn tangent(space: Space, c: &Common) -> Result<Output> {
    let (q, label) = match space {
        Space::Resolved => {
            let l = c.target()?;
            (quiver_data_resolved(&l).0, json::multipartition(&l))
        }
        Space::Orbifold => {
            let p = c.partition()?;
            (quiver_data_orbifold(&p, c.m()?)?, json::partition(&p))
        }
        Space::Instanton => {
            let l = c.legs()?;
            (instanton_quiver_data(l.legs()), json::multipartition(&l))
        }
    };
    let t = tangent_quiver(&q);
    let text = format!("{}\nT = {t}\ndim = {}", q.diagram(), t.rank());
    Ok(Output::new(
        "tangent",
        json!({"label": label, "quiver": json::quiver_data(&q), "tangent": json::character(&t), "dim": t.rank()}),
        text,
    ))
}

fn mhook(a: usize, c: &Common) -> Result<Output> {
    let m = c.m()?;
    let h = m_hook(a, m)?;
    Ok(Output::new(
        "mhook",
        json!({"m": m, "leg": a, "character": json::character(&h)}),
        format!("{}\n{h}", diagram(&h)),
    ))
}

fn quotient(c: &Common) -> Result<Output> {
    let (m, p) = (c.m()?, c.partition()?);
    let (core, q) = (p.m_core(m), p.m_quotient(m));
    Ok(Output::new(
        "quotient",
        json!({
            "m": m,
            "partition": json::partition(&p),
            "core": json::partition(&core),
            "quotient": json::multipartition(&q),
        }),
        format!("core {core}\nquotient {q}"),
    ))
}

fn describe(l: &HookLabeling) -> String {
    let v = json::labeling(l);
    format!(
        "labels {:?} degree {} class {} vdim {}",
        l.hook_vectors(),
        v["degree"],
        v["curve_class"],
        v["vdim"]
    )
}

fn components(all: bool, c: &Common) -> Result<Output> {
    let (t, b) = (c.target()?, c.bound()?);
    let ls = if all {
        enumerate_components_in(&t, -b, b, Filter::All)
    } else {
        enumerate_components(&t, b)
    };
    let text = std::iter::once(format!("{} components of {t} with labels in [-{b}, {b}]", ls.len()))
        .chain(ls.iter().map(describe))
        .collect::<Vec<_>>()
        .join("\n");
    Ok(Output::new(
        "components",
        json!({"target": json::multipartition(&t), "bound": b, "components": ls.iter().map(json::labeling).collect::<Vec<_>>()}),
        text,
    ))
}

fn parse_labels(s: &str) -> Result<Vec<Vec<i64>>> {
    serde_json::from_str(s).map_err(|e| usage(format!("labels: {e}")))
}

fn tvir(labels: Option<&str>, c: &Common) -> Result<Output> {
    let t = c.target()?;
    let l = match labels {
        Some(s) => HookLabeling::new(&t, &parse_labels(s)?)?,
        None => HookLabeling::zero(&t),
    };
    let (qm, bs, norm) = (tvir_quasimap(&l), tvir_bs(&l), tvir_quasimap_normalized(&l));
    let text = format!(
        "{}\nquasimaps  {qm}\nBS pairs   {bs}\nnormalized {norm}\nagree {} fixed part {}",
        describe(&l),
        qm == bs,
        fixed_term_dim(&l)
    );
    Ok(Output::new(
        "tvir",
        json!({
            "labeling": json::labeling(&l),
            "quasimap": json::character(&qm),
            "bs": json::character(&bs),
            "normalized": json::character(&norm),
            "agree": qm == bs,
        }),
        text,
    ))
}

fn cy_vertex(kind: VertexKind, chamber: ChamberArg, orbifold: bool, c: &Common) -> Result<Output> {
    let n = c.order()?;
    let chamber = match chamber {
        ChamberArg::Minus => Chamber::Minus,
        ChamberArg::Plus => Chamber::Plus,
    };
    let (label, s) = match kind {
        VertexKind::Topological => {
            let t = c.target()?;
            (json::multipartition(&t), cy_vertex_topological(&t, n)?)
        }
        VertexKind::Mirror if orbifold => {
            let t = c.target()?;
            (json::multipartition(&t), cy_vertex_mirror_orbifold(&t, chamber, n)?)
        }
        VertexKind::Mirror => {
            let t = c.target()?;
            (json::multipartition(&t), cy_vertex_mirror(&t, chamber, n)?)
        }
        VertexKind::Rpp => {
            let p = c.partition()?;
            (json::partition(&p), rpp_series(&p, c.m()?, n)?)
        }
        VertexKind::Grpp => {
            let t = c.target()?;
            (json::multipartition(&t), grpp_series(&t, n)?)
        }
    };
    Ok(Output::new(
        "series",
        json!({"label": label, "series": json::series(&s)}),
        s.to_string(),
    ))
}

fn check(suite: Suite, size: Option<usize>, c: &Common) -> Result<Output> {
    let ms: Vec<usize> = match c.m {
        Some(0) => return Err(usage("-m must be at least 1")),
        Some(m) => vec![m],
        None => vec![1, 2, 3],
    };
    let reports: Vec<Report> = match suite {
        Suite::Correspondence => {
            let (n, b) = (size.unwrap_or(2), c.bound()?);
            vec![
                checks::tvir_correspondence(&ms, n, b),
                checks::stability_correspondence(&ms, n, b),
                checks::curve_class_translation(&ms, n, b),
            ]
        }
        Suite::Crc => {
            let n = size.unwrap_or(6);
            vec![
                checks::crc(&ms, n, c.order()?),
                checks::orbifold_identity(&ms, n, c.order()?),
            ]
        }
        Suite::Gansner => vec![checks::gansner(size.unwrap_or(6), c.order()?)],
        Suite::All => checks::acceptance(),
    };
    let failed = reports.iter().any(|r| !r.passed());
    let text = reports.iter().map(|r| r.to_string()).collect::<Vec<_>>().join("\n");
    Ok(Output {
        kind: "check",
        json: json!({"passed": !failed, "reports": reports.iter().map(json::report).collect::<Vec<_>>()}),
        text,
        failed,
    })
}

fn run(cmd: &Command) -> Result<(Output, Format)> {
    let out = match cmd {
        Command::Tangent { space, common } => (tangent(*space, common)?, common.format),
        Command::Mhook { leg, common } => (mhook(*leg, common)?, common.format),
        Command::Quotient { common } => (quotient(common)?, common.format),
        Command::Components { all, common } => (components(*all, common)?, common.format),
        Command::Tvir { labels, common } => (tvir(labels.as_deref(), common)?, common.format),
        Command::CyVertex {
            kind,
            chamber,
            orbifold,
            common,
        } => (cy_vertex(*kind, *chamber, *orbifold, common)?, common.format),
        Command::Check { suite, size, common } => (check(*suite, *size, common)?, common.format),
    };
    Ok(out)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.command) {
        Ok((out, format)) => {
            match format {
                Format::Json => println!("{}", json::envelope(out.kind, out.json)),
                Format::Text => println!("{}", out.text),
            }
            if out.failed {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("vertexlab: {e}");
            ExitCode::from(2)
        }
    }
}
