//! Command-line front end.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::bounds::{self, emit, EngineConfig, Fact, Group, Quantity, Report, Session, Space};
use crate::cohomology_ring::{build_ring, cup_length, zcl, GradedRing, RingSpec, ZclBudget, DEFAULT_MAX_RING_VERTICES};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::fixtures;
use crate::moment_angle::{MomentAngleProfile, DEFAULT_MAX_SUBSET_VERTICES};
use crate::orbit::{ActionSpec, GAction, OrbitBudget, DEFAULT_MAX_GROUP_ORDER, DEFAULT_MAX_SUBGROUPS};
use crate::simplicial::{reduced_cohomology, SimplicialComplex};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_BUDGET: i32 = 2;
pub const EXIT_INCONSISTENT: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "eqtc", about = "Equivariant and invariant topological complexity toolkit", disable_version_flag = true)]
pub struct Cli {
    /// Print the version and the inference rule registry.
    #[arg(short = 'V', long)]
    pub version: bool,
    #[command(subcommand)]
    pub command: Option<Command>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Simplicial statistics and reduced cohomology.
    AnalyzeComplex(ComplexArgs),
    /// Invariants of the moment-angle complex Z_K.
    MomentAngle(ComplexArgs),
    /// The ring H^*(Z_K) (or a ring given as JSON): basis, products, cup length, zcl.
    Ring(RingArgs),
    /// Orbit diagram of a finite simplicial action.
    Orbit(OrbitArgs),
    /// Saturate a facts file and report intervals.
    Bounds(BoundsArgs),
    /// End to end: complex (and optional action) to saturated intervals.
    Report(ReportArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutFormat {
    Markdown,
    Json,
    Dot,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Coefficient field: Q or F<p> for a prime p <= 97.
    #[arg(long, default_value = "Q", value_parser = parse_field)]
    pub field: Field,
    #[arg(long, value_enum, default_value = "markdown")]
    pub out: OutFormat,
    /// Largest vertex count for the subset enumeration behind Z_K Betti numbers.
    #[arg(long, default_value_t = DEFAULT_MAX_SUBSET_VERTICES)]
    pub max_vertices: usize,
    /// Largest vertex count for building H^*(Z_K).
    #[arg(long, default_value_t = DEFAULT_MAX_RING_VERTICES)]
    pub max_ring_vertices: usize,
    /// Largest ring dimension for the 2-fold zero-divisor computation.
    #[arg(long, default_value_t = ZclBudget::default().max_dim_square)]
    pub max_square_dim: usize,
    /// Largest dim^n for n-fold zero-divisor computations, n >= 3.
    #[arg(long, default_value_t = ZclBudget::default().max_tensor_dim)]
    pub max_tensor_dim: usize,
}

impl Common {
    fn zcl_budget(&self) -> ZclBudget {
        ZclBudget {
            max_dim_square: self.max_square_dim,
            max_tensor_dim: self.max_tensor_dim,
        }
    }
}

#[derive(Debug, Args)]
pub struct ComplexArgs {
    /// Complex file (JSON or facet list), or `fixture:<name>`.
    pub input: String,
    #[command(flatten)]
    pub common: Common,
    /// Also write the emitted facts to this file.
    #[arg(long)]
    pub facts_out: Option<PathBuf>,
    #[arg(long, default_value_t = bounds::DEFAULT_MAX_N)]
    pub max_n: usize,
}

#[derive(Debug, Args)]
pub struct RingArgs {
    /// Complex file, ring JSON (`{"basis": ..}`), or `fixture:<name>`.
    pub input: String,
    #[command(flatten)]
    pub common: Common,
    #[arg(long, default_value_t = bounds::DEFAULT_MAX_N)]
    pub max_n: usize,
    #[arg(long)]
    pub facts_out: Option<PathBuf>,
    /// Space name for emitted zcl facts.
    #[arg(long, default_value = emit::ZK)]
    pub space: String,
}

#[derive(Debug, Args)]
pub struct ActionArgs {
    /// Treat empty fixed sets as failing G-connectivity.
    #[arg(long)]
    pub strict_g_connected: bool,
    #[arg(long, default_value_t = DEFAULT_MAX_GROUP_ORDER)]
    pub max_group_order: usize,
    #[arg(long, default_value_t = DEFAULT_MAX_SUBGROUPS)]
    pub max_subgroups: usize,
    /// Name of the space in emitted facts.
    #[arg(long, default_value = "X")]
    pub space: String,
    /// Name of the group in emitted facts.
    #[arg(long, default_value = "G")]
    pub group: String,
}

impl ActionArgs {
    fn budget(&self) -> OrbitBudget {
        OrbitBudget {
            max_group_order: self.max_group_order,
            max_subgroups: self.max_subgroups,
        }
    }

    fn names(&self) -> Result<(Space, Group)> {
        Ok((self.space.parse()?, self.group.parse()?))
    }
}

#[derive(Debug, Args)]
pub struct OrbitArgs {
    /// Action JSON `{"generators": .., "complex": ..}`, or `fixture:<name>`.
    pub input: String,
    #[command(flatten)]
    pub action: ActionArgs,
    #[arg(long, value_enum, default_value = "markdown")]
    pub out: OutFormat,
    #[arg(long)]
    pub facts_out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct EngineArgs {
    /// Enable the sharpened bound zcl + 1 <= TC_n.
    #[arg(long)]
    pub sharp_zcl: bool,
    #[arg(long, default_value_t = bounds::DEFAULT_CEILING)]
    pub ceiling: u64,
    #[arg(long, default_value_t = bounds::DEFAULT_MAX_N)]
    pub max_n: usize,
    /// Print the derivation tree of a quantity (repeatable).
    #[arg(long)]
    pub explain: Vec<String>,
    /// Restrict the table to these quantities (repeatable).
    #[arg(long)]
    pub query: Vec<String>,
}

impl EngineArgs {
    fn config(&self) -> EngineConfig {
        EngineConfig {
            ceiling: self.ceiling,
            max_n: self.max_n,
            sharp_zcl: self.sharp_zcl,
        }
    }
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    /// Facts files (JSON lists of judgments).
    pub facts: Vec<PathBuf>,
    /// Add moment-angle facts for this complex.
    #[arg(long)]
    pub complex: Option<String>,
    /// Add orbit facts for this action.
    #[arg(long)]
    pub action: Option<String>,
    #[command(flatten)]
    pub engine: EngineArgs,
    #[command(flatten)]
    pub action_args: ActionArgs,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    /// Complex file or `fixture:<name>`.
    pub input: String,
    /// Optional action file or `fixture:<name>`.
    #[arg(long)]
    pub action: Option<String>,
    /// Extra facts files.
    #[arg(long)]
    pub facts: Vec<PathBuf>,
    #[command(flatten)]
    pub engine: EngineArgs,
    #[command(flatten)]
    pub action_args: ActionArgs,
    #[command(flatten)]
    pub common: Common,
}

fn parse_field(s: &str) -> std::result::Result<Field, String> {
    Field::parse(s).map_err(|e| e.to_string())
}

/// Output of one invocation.
#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn exit_code(e: &Error) -> i32 {
    if e.is_budget() {
        EXIT_BUDGET
    } else {
        EXIT_INPUT
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(cli),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            if code == EXIT_OK {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            }
        }
    }
}

pub fn run(cli: Cli) -> Outcome {
    if cli.version {
        return Outcome {
            code: EXIT_OK,
            stdout: version_text(),
            stderr: String::new(),
        };
    }
    let Some(command) = cli.command else {
        return Outcome {
            code: EXIT_INPUT,
            stdout: String::new(),
            stderr: "no subcommand given; see --help\n".into(),
        };
    };
    match dispatch(command) {
        Ok((stdout, consistent)) => Outcome {
            code: if consistent { EXIT_OK } else { EXIT_INCONSISTENT },
            stdout,
            stderr: if consistent {
                String::new()
            } else {
                "inconsistent bounds: see the Inconsistencies section\n".into()
            },
        },
        Err(e) => Outcome {
            code: exit_code(&e),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

pub fn version_text() -> String {
    let mut out = format!("eqtc {}\n\nrules:\n", env!("CARGO_PKG_VERSION"));
    for line in bounds::registry() {
        out.push_str("  ");
        out.push_str(&line);
        out.push('\n');
    }
    out
}

fn dispatch(command: Command) -> Result<(String, bool)> {
    match command {
        Command::AnalyzeComplex(a) => analyze_complex(&a).map(|s| (s, true)),
        Command::MomentAngle(a) => moment_angle(&a).map(|s| (s, true)),
        Command::Ring(a) => ring(&a).map(|s| (s, true)),
        Command::Orbit(a) => orbit(&a).map(|s| (s, true)),
        Command::Bounds(a) => bounds_command(&a),
        Command::Report(a) => report(&a),
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display()))))
}

fn load_complex(input: &str) -> Result<SimplicialComplex> {
    if let Some(name) = input.strip_prefix("fixture:") {
        return fixtures::complex(name).ok_or_else(|| Error::Complex(format!("no fixture complex named '{name}'")));
    }
    SimplicialComplex::from_source(&read(Path::new(input))?)
}

fn load_action(input: &str, budget: OrbitBudget) -> Result<GAction> {
    let spec: ActionSpec = match input.strip_prefix("fixture:") {
        Some(name) => fixtures::action(name).ok_or_else(|| Error::Orbit(format!("no fixture action named '{name}'")))?,
        None => serde_json::from_str(&read(Path::new(input))?)?,
    };
    GAction::from_spec(spec, budget)
}

fn write_facts(path: &Option<PathBuf>, facts: &[Fact]) -> Result<()> {
    if let Some(p) = path {
        fs::write(p, bounds::facts_to_json(facts)? + "\n")?;
    }
    Ok(())
}

fn to_json<T: Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

fn join<T: ToString>(items: &[T]) -> String {
    items.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

fn analyze_complex(a: &ComplexArgs) -> Result<String> {
    let k = load_complex(&a.input)?;
    let h = reduced_cohomology(&k, a.common.field);
    let ranks: Vec<(isize, usize)> = h.ranks().into_iter().filter(|&(_, r)| r > 0).collect();
    match a.common.out {
        OutFormat::Json => to_json(&json!({
            "complex": k,
            "field": a.common.field,
            "dim": k.dim(),
            "f_vector": k.f_vector(),
            "ghost_vertices": k.ghost_vertices(),
            "euler_characteristic": k.euler_characteristic(),
            "components": k.realized_components().len(),
            "reduced_cohomology": ranks.iter().map(|&(l, r)| json!({"degree": l, "rank": r})).collect::<Vec<_>>(),
        })),
        OutFormat::Markdown => {
            let mut out = String::from("# Simplicial complex\n\n");
            let _ = writeln!(out, "- complex: `{k}`");
            let _ = writeln!(out, "- m = {}, dim = {}", k.m(), k.dim());
            let _ = writeln!(out, "- f-vector: ({})", join(&k.f_vector()));
            let _ = writeln!(out, "- ghost vertices: [{}]", join(&k.ghost_vertices()));
            let _ = writeln!(out, "- Euler characteristic: {}", k.euler_characteristic());
            let _ = writeln!(out, "- path components: {}", k.realized_components().len());
            let _ = writeln!(out, "\n## Reduced cohomology over {}\n", a.common.field);
            if ranks.is_empty() {
                out.push_str("all groups vanish\n");
            }
            for (l, r) in ranks {
                let _ = writeln!(out, "- H~^{l}: rank {r}");
            }
            Ok(out)
        }
        OutFormat::Dot => Err(Error::Complex("dot output is only available for orbit diagrams".into())),
    }
}

fn moment_angle(a: &ComplexArgs) -> Result<String> {
    let k = load_complex(&a.input)?;
    let profile = MomentAngleProfile::compute(&k, a.common.field, a.common.max_vertices)?;
    if a.facts_out.is_some() {
        let facts = emit::moment_angle_facts(&k, a.common.field, a.max_n, &a.common.zcl_budget())?;
        write_facts(&a.facts_out, &facts)?;
    }
    match a.common.out {
        OutFormat::Json => to_json(&profile),
        OutFormat::Markdown => Ok(profile.to_markdown()),
        OutFormat::Dot => Err(Error::MomentAngle("dot output is only available for orbit diagrams".into())),
    }
}

fn load_ring(input: &str, common: &Common) -> Result<GradedRing> {
    if !input.starts_with("fixture:") {
        let text = read(Path::new(input))?;
        let value: serde_json::Value = if text.trim_start().starts_with('{') {
            serde_json::from_str(&text)?
        } else {
            serde_json::Value::Null
        };
        if value.get("basis").is_some() {
            return serde_json::from_value::<RingSpec>(value)?.build();
        }
    }
    build_ring(&load_complex(input)?, common.field, common.max_ring_vertices)
}

#[derive(Serialize)]
struct RingSummary {
    ring: RingSpec,
    poincare_series: Vec<usize>,
    cup_length: usize,
    zcl: Vec<ZclEntry>,
}

#[derive(Serialize)]
struct ZclEntry {
    n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    value: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    skipped: Option<String>,
}

fn ring(a: &RingArgs) -> Result<String> {
    let ring = load_ring(&a.input, &a.common)?;
    let budget = a.common.zcl_budget();
    let mut entries = Vec::new();
    if ring.is_connected() {
        for n in 2..=a.max_n.max(2) {
            match zcl(&ring, n, &budget) {
                Ok(v) => entries.push(ZclEntry { n, value: Some(v), skipped: None }),
                Err(e) if e.is_budget() => entries.push(ZclEntry { n, value: None, skipped: Some(e.to_string()) }),
                Err(e) => return Err(e),
            }
        }
    }
    if a.facts_out.is_some() {
        let facts = emit::ring_facts("cohomology_ring", &ring, &a.space.parse()?, a.max_n, &budget)?;
        write_facts(&a.facts_out, &facts)?;
    }
    let summary = RingSummary {
        ring: RingSpec::from_ring(&ring),
        poincare_series: ring.poincare_series(),
        cup_length: cup_length(&ring),
        zcl: entries,
    };
    match a.common.out {
        OutFormat::Json => to_json(&summary),
        OutFormat::Markdown => {
            let mut out = String::from("# Cohomology ring\n\n");
            out.push_str(&ring.to_markdown());
            let _ = writeln!(out, "\n## Invariants\n");
            let _ = writeln!(out, "- Poincare series: ({})", join(&summary.poincare_series));
            let _ = writeln!(out, "- cup length: {}", summary.cup_length);
            if !ring.is_connected() {
                out.push_str("- zcl: undefined (ring is not connected)\n");
            }
            for z in &summary.zcl {
                match (&z.value, &z.skipped) {
                    (Some(v), _) => {
                        let _ = writeln!(out, "- zcl_{} = {v}", z.n);
                    }
                    (None, Some(why)) => {
                        let _ = writeln!(out, "- zcl_{}: skipped ({why})", z.n);
                    }
                    _ => {}
                }
            }
            Ok(out)
        }
        OutFormat::Dot => Err(Error::Ring("dot output is only available for orbit diagrams".into())),
    }
}

fn orbit(a: &OrbitArgs) -> Result<String> {
    let action = load_action(&a.input, a.action.budget())?;
    let (space, group) = a.action.names()?;
    let strict = a.action.strict_g_connected;
    let diagram = action.orbit_classes()?;
    let conn = action.g_connectivity(strict)?;
    let facts = emit::orbit_facts(&action, strict, &space, &group)?;
    write_facts(&a.facts_out, &facts)?;
    let minimal = diagram.minimal_count();
    let infinite = minimal > 1;
    let invariant_note = format!("TC^{{{group},n}}({space}) = inf for every n >= 2 ({minimal} minimal orbit classes)");
    let quotient = action.quotient_complex();
    match a.out {
        OutFormat::Dot => {
            let mut out = diagram.to_dot();
            if infinite {
                let _ = writeln!(out, "// {invariant_note}");
            }
            Ok(out)
        }
        OutFormat::Json => to_json(&json!({
            "group_order": action.group().order(),
            "subdivisions": action.subdivisions(),
            "diagram": diagram,
            "minimal_classes": minimal,
            "g_connectivity": conn,
            "free": action.is_free(),
            "one_orbit_type": action.one_orbit_type(),
            "invariant_tc_infinite": infinite,
            "quotient": quotient.as_ref().ok().map(|q| json!({"complex": q.complex, "subdivisions": q.subdivisions})),
            "facts": facts.iter().map(bounds::FactEntry::from_fact).collect::<Vec<_>>(),
        })),
        OutFormat::Markdown => {
            let mut out = String::from("# Orbit analysis\n\n");
            let _ = writeln!(out, "- complex: `{}`", action.complex());
            let _ = writeln!(out, "- group order: {}", action.group().order());
            let _ = writeln!(out, "- subdivisions for regularity: {}", action.subdivisions());
            let _ = writeln!(out, "- {group}-connected: {}", conn.connected);
            if let Some(w) = &conn.nonempty_disconnected {
                let _ = writeln!(out, "- nonempty disconnected fixed set for the subgroup of order {}", w.len());
            }
            let _ = writeln!(out, "- free: {}", action.is_free());
            let _ = writeln!(out, "- one orbit type: {}", action.one_orbit_type());
            let _ = writeln!(out, "- minimal orbit classes: {minimal}");
            match &quotient {
                Ok(q) => {
                    let _ = writeln!(
                        out,
                        "- quotient: `{}` (after {} extra subdivisions)",
                        q.complex, q.subdivisions
                    );
                }
                Err(e) => {
                    let _ = writeln!(out, "- quotient: unavailable ({e})");
                }
            }
            if infinite {
                let _ = writeln!(out, "- {invariant_note}");
            }
            out.push_str("\n## Orbit classes\n\n| class | representative | isotropy order | orbits | minimal |\n|---|---|---|---|---|\n");
            for (i, c) in diagram.classes.iter().enumerate() {
                let _ = writeln!(
                    out,
                    "| {i} | {:?} | {} | {} | {} |",
                    c.representative, c.isotropy_order, c.orbit_count, c.minimal
                );
            }
            out.push_str("\n## Diagram\n\n```dot\n");
            out.push_str(&diagram.to_dot());
            out.push_str("```\n");
            Ok(out)
        }
    }
}

fn engine_session(
    engine: &EngineArgs,
    common: &Common,
    files: &[PathBuf],
    complex: Option<&SimplicialComplex>,
    action: Option<(&GAction, &ActionArgs)>,
) -> Result<Session> {
    let mut session = Session::new(engine.config());
    let budget = common.zcl_budget();
    if let Some(k) = complex {
        session.assert_all(emit::moment_angle_facts(k, common.field, engine.max_n, &budget)?);
    }
    if let Some((act, args)) = action {
        let (space, group) = args.names()?;
        session.assert_all(emit::orbit_facts(act, args.strict_g_connected, &space, &group)?);
    }
    for f in files {
        session.assert_all(bounds::load_facts(&read(f)?, engine.max_n, &budget)?);
    }
    for q in &engine.query {
        session.query(q.parse::<Quantity>()?);
    }
    let explain = engine.explain.iter().map(|q| q.parse::<Quantity>()).collect::<Result<Vec<_>>>()?;
    session.saturate();
    for q in explain {
        session.query(q);
    }
    Ok(session)
}

fn render_bounds(session: &Session, engine: &EngineArgs, out_format: OutFormat) -> Result<(String, bool)> {
    let report = Report::build(session);
    let explanations: Vec<_> = engine
        .explain
        .iter()
        .map(|q| q.parse::<Quantity>().map(|q| session.explain(&q)))
        .collect::<Result<_>>()?;
    let consistent = report.is_consistent();
    let text = match out_format {
        OutFormat::Json => to_json(&json!({ "report": report, "explanations": explanations }))?,
        OutFormat::Markdown => {
            let mut out = report.to_markdown();
            for e in &explanations {
                out.push_str("\n## Derivation\n\n```\n");
                out.push_str(&e.to_text());
                out.push_str("```\n");
            }
            out
        }
        OutFormat::Dot => return Err(Error::Bounds("dot output is only available for orbit diagrams".into())),
    };
    Ok((text, consistent))
}

fn bounds_command(a: &BoundsArgs) -> Result<(String, bool)> {
    let complex = a.complex.as_deref().map(load_complex).transpose()?;
    let action = a
        .action
        .as_deref()
        .map(|p| load_action(p, a.action_args.budget()))
        .transpose()?;
    let session = engine_session(
        &a.engine,
        &a.common,
        &a.facts,
        complex.as_ref(),
        action.as_ref().map(|x| (x, &a.action_args)),
    )?;
    render_bounds(&session, &a.engine, a.common.out)
}

fn report(a: &ReportArgs) -> Result<(String, bool)> {
    let k = load_complex(&a.input)?;
    let profile = MomentAngleProfile::compute(&k, a.common.field, a.common.max_vertices)?;
    let action = a
        .action
        .as_deref()
        .map(|p| load_action(p, a.action_args.budget()))
        .transpose()?;
    let session = engine_session(
        &a.engine,
        &a.common,
        &a.facts,
        Some(&k),
        action.as_ref().map(|x| (x, &a.action_args)),
    )?;
    let (bounds_text, consistent) = render_bounds(&session, &a.engine, a.common.out)?;
    let text = match a.common.out {
        OutFormat::Json => {
            let bounds_value: serde_json::Value = serde_json::from_str(&bounds_text)?;
            to_json(&json!({ "moment_angle": profile, "bounds": bounds_value }))?
        }
        _ => format!("{}\n{}", profile.to_markdown(), bounds_text),
    };
    Ok((text, consistent))
}
