//! The `regshacl` command line: `validate`, `gap` and `inspect`.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::gap::{diagnose, explain, AlternativeDiagnosis, Gap, GapReport};
use crate::rdf::{Iri, PrefixMap, Term};
use crate::shapes::{compile_graph, Constraint, Shape, ShapeId, ShapeKind, ShapesGraph, Target};
use crate::turtle::{parse, serialize, Document};
use crate::validate::{report_to_graph, validate, ValidationReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExitStatus {
    pub code: i32,
}

impl ExitStatus {
    pub const CONFORMS: ExitStatus = ExitStatus { code: 0 };
    pub const VIOLATIONS: ExitStatus = ExitStatus { code: 1 };
    pub const INPUT_ERROR: ExitStatus = ExitStatus { code: 2 };
    pub const USAGE_ERROR: ExitStatus = ExitStatus { code: 3 };
}

#[derive(Debug, Parser)]
#[command(name = "regshacl", version, about = "Validate RDF data against SHACL shapes and diagnose missing requirements")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, clap::Args)]
struct Inputs {
    /// Shapes file(s) in Turtle; repeatable.
    #[arg(long = "shapes", required = true, num_args = 1..)]
    shapes: Vec<PathBuf>,
    /// Data file(s) in Turtle; repeatable. Omitted means an empty graph.
    #[arg(long = "data", num_args = 1..)]
    data: Vec<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Validate data against shapes and print the report.
    Validate {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        format: ReportFormat,
        /// Write the report to this file instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List which requirements of a shape a node does not meet.
    Gap {
        #[command(flatten)]
        inputs: Inputs,
        /// Node to diagnose, as a prefixed name or <IRI>.
        #[arg(long)]
        focus: String,
        /// Shape to diagnose against, as a prefixed name or <IRI>.
        #[arg(long)]
        shape: String,
        #[arg(long, value_enum, default_value_t = GapFormat::Text)]
        format: GapFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the compiled shapes.
    Inspect {
        /// Shapes file(s) in Turtle; repeatable.
        #[arg(long = "shapes", required = true, num_args = 1..)]
        shapes: Vec<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ReportFormat {
    Turtle,
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum GapFormat {
    Json,
    Text,
}

/// A failure that ends the command with a diagnostic.
struct Failure {
    status: ExitStatus,
    message: String,
}

fn input_error(message: impl Into<String>) -> Failure {
    Failure { status: ExitStatus::INPUT_ERROR, message: message.into() }
}

fn usage_error(message: impl Into<String>) -> Failure {
    Failure { status: ExitStatus::USAGE_ERROR, message: message.into() }
}

/// Runs the command line `args` (including the program name), writing the
/// report to `stdout` and diagnostics to `stderr`.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> ExitStatus
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = stderr.write_all(text.as_bytes());
                ExitStatus::USAGE_ERROR
            } else {
                let _ = stdout.write_all(text.as_bytes());
                ExitStatus::CONFORMS
            };
        }
    };
    let outcome = match cli.command {
        Command::Validate { inputs, format, out } => cmd_validate(&inputs, format).and_then(|r| emit(r, out, stdout)),
        Command::Gap { inputs, focus, shape, format, out } => {
            cmd_gap(&inputs, &focus, &shape, format).and_then(|r| emit(r, out, stdout))
        }
        Command::Inspect { shapes, out } => cmd_inspect(&shapes).and_then(|r| emit(r, out, stdout)),
    };
    match outcome {
        Ok(status) => status,
        Err(failure) => {
            let _ = writeln!(stderr, "error: {}", failure.message);
            failure.status
        }
    }
}

fn emit((status, text): (ExitStatus, String), out: Option<PathBuf>, stdout: &mut dyn Write) -> Result<ExitStatus, Failure> {
    match out {
        Some(path) => fs::write(&path, text).map_err(|e| input_error(format!("{}: {e}", path.display())))?,
        None => stdout.write_all(text.as_bytes()).map_err(|e| input_error(format!("writing output: {e}")))?,
    }
    Ok(status)
}

fn read_document(path: &Path) -> Result<Document, Failure> {
    let text = fs::read_to_string(path).map_err(|e| input_error(format!("{}: {e}", path.display())))?;
    parse(&text).map_err(|e| input_error(format!("{}:{}:{}: {}: {}", path.display(), e.line, e.column, e.kind, e.message)))
}

struct Loaded {
    docs: Vec<Document>,
    merged: Document,
}

fn load_all(paths: &[PathBuf]) -> Result<Loaded, Failure> {
    let mut docs = Vec::new();
    let mut merged = Document::default();
    for path in paths {
        let doc = read_document(path)?;
        merged.merge(&doc);
        docs.push(doc);
    }
    Ok(Loaded { docs, merged })
}

fn compile(shapes: &Loaded) -> Result<ShapesGraph, Failure> {
    compile_graph(&shapes.merged.graph).map_err(|e| input_error(format!("shapes: {e}")))
}

fn cmd_validate(inputs: &Inputs, format: ReportFormat) -> Result<(ExitStatus, String), Failure> {
    let shapes_docs = load_all(&inputs.shapes)?;
    let data_docs = load_all(&inputs.data)?;
    let shapes = compile(&shapes_docs)?;
    let report = validate(&shapes, &data_docs.merged.graph);
    let status = if report.conforms { ExitStatus::CONFORMS } else { ExitStatus::VIOLATIONS };
    let mut prefixes = data_docs.merged.prefixes.clone();
    for (p, ns) in shapes_docs.merged.prefixes.iter() {
        if prefixes.get(p).is_none() {
            prefixes.insert(p, ns.clone());
        }
    }
    let text = match format {
        ReportFormat::Turtle => {
            let mut doc = report_to_graph(&report);
            for (p, ns) in prefixes.iter() {
                if doc.prefixes.get(p).is_none() {
                    doc.prefixes.insert(p, ns.clone());
                }
            }
            serialize(&doc)
        }
        ReportFormat::Json => to_json(&report),
        ReportFormat::Text => render_report(&report, &prefixes),
    };
    Ok((status, text))
}

fn cmd_gap(inputs: &Inputs, focus: &str, shape: &str, format: GapFormat) -> Result<(ExitStatus, String), Failure> {
    let shapes_docs = load_all(&inputs.shapes)?;
    let data_docs = load_all(&inputs.data)?;
    let shapes = compile(&shapes_docs)?;
    let all_docs: Vec<&Document> = shapes_docs.docs.iter().chain(&data_docs.docs).collect();
    let focus = Term::Iri(resolve_arg(focus, &all_docs)?);
    let shape = ShapeId::new(Term::Iri(resolve_arg(shape, &all_docs)?));
    let report = diagnose(&shapes, &data_docs.merged.graph, &shape, &focus).map_err(|e| input_error(e.to_string()))?;
    let status = if report.conforms { ExitStatus::CONFORMS } else { ExitStatus::VIOLATIONS };
    let mut prefixes = shapes_docs.merged.prefixes.clone();
    for (p, ns) in data_docs.merged.prefixes.iter() {
        if prefixes.get(p).is_none() {
            prefixes.insert(p, ns.clone());
        }
    }
    let text = match format {
        GapFormat::Json => to_json(&report),
        GapFormat::Text => render_gap(&report, &prefixes),
    };
    Ok((status, text))
}

fn cmd_inspect(paths: &[PathBuf]) -> Result<(ExitStatus, String), Failure> {
    let docs = load_all(paths)?;
    let shapes = compile(&docs)?;
    Ok((ExitStatus::CONFORMS, render_shapes(&shapes, &docs.merged.prefixes)))
}

/// Expands a command-line name: `<iri>`, an absolute IRI, or a prefixed
/// name declared in the input documents.
fn resolve_arg(name: &str, docs: &[&Document]) -> Result<Iri, Failure> {
    if let Some(inner) = name.strip_prefix('<').and_then(|n| n.strip_suffix('>')) {
        return Iri::new(inner).map_err(|e| usage_error(format!("{name}: {e}")));
    }
    if name.starts_with("_:") {
        return Err(usage_error(format!("{name}: blank nodes cannot be named on the command line")));
    }
    let Some((prefix, local)) = name.split_once(':') else {
        return Err(usage_error(format!("{name}: expected a prefixed name or <IRI>")));
    };
    if local.starts_with("//") {
        return Iri::new(name).map_err(|e| usage_error(format!("{name}: {e}")));
    }
    let mut namespace: Option<&Iri> = None;
    for doc in docs {
        if let Some(ns) = doc.prefixes.get(prefix) {
            match namespace {
                Some(seen) if seen != ns => {
                    return Err(usage_error(format!(
                        "{name}: prefix {prefix:?} is bound to both {seen} and {ns} in the inputs"
                    )))
                }
                _ => namespace = Some(ns),
            }
        }
    }
    let ns = namespace.ok_or_else(|| input_error(format!("{name}: prefix {prefix:?} is not declared in any input")))?;
    Iri::new(format!("{}{local}", ns.as_str())).map_err(|e| input_error(format!("{name}: {e}")))
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("report types serialize");
    text.push('\n');
    text
}

fn label(term: &Term, prefixes: &PrefixMap) -> String {
    match term {
        Term::Iri(iri) => iri_label(iri, prefixes),
        Term::Literal(lit) if lit.language().is_none() => {
            let quoted = Term::Literal(crate::rdf::Literal::string(lit.lexical())).to_string();
            if lit.datatype().as_str() == crate::vocab::xsd::STRING {
                quoted
            } else {
                format!("{quoted}^^{}", iri_label(lit.datatype(), prefixes))
            }
        }
        _ => term.to_string(),
    }
}

fn iri_label(iri: &Iri, prefixes: &PrefixMap) -> String {
    prefixes.compact(iri).unwrap_or_else(|| iri.to_string())
}

fn render_report(report: &ValidationReport, prefixes: &PrefixMap) -> String {
    let mut out = format!("conforms: {}\nresults: {}\n", report.conforms, report.results.len());
    for (i, r) in report.results.iter().enumerate() {
        out.push_str(&format!("\n{}. {} at {}\n", i + 1, r.source_constraint_component.name(), label(&r.focus_node, prefixes)));
        if let Some(path) = &r.result_path {
            out.push_str(&format!("   path: {}\n", iri_label(path, prefixes)));
        }
        if let Some(value) = &r.value {
            out.push_str(&format!("   value: {}\n", label(value, prefixes)));
        }
        out.push_str(&format!("   shape: {}\n", label(r.source_shape.term(), prefixes)));
        out.push_str(&format!("   message: {}\n", r.message));
    }
    out
}

fn render_gap(report: &GapReport, prefixes: &PrefixMap) -> String {
    let mut out = format!(
        "focus: {}\nshape: {}\nconforms: {}\n",
        label(&report.focus_node, prefixes),
        label(report.shape.term(), prefixes),
        report.conforms
    );
    if report.conforms {
        out.push_str("no gaps\n");
    }
    if !report.common_gaps.is_empty() {
        out.push_str("\ncommon gaps:\n");
        render_gaps(&report.common_gaps, 1, &mut out);
    }
    if !report.alternatives.is_empty() {
        out.push_str("\nalternatives, best first:\n");
        render_alternatives(&report.alternatives, 1, &mut out);
    }
    out
}

fn render_alternatives(alternatives: &[AlternativeDiagnosis], depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    for alt in alternatives {
        let order = alt.order_tag.as_ref().map(|o| format!(", order {o}")).unwrap_or_default();
        let n = alt.gaps.len();
        out.push_str(&format!(
            "{pad}alternative {}{order}: {n} gap{}, {} of {} requirements met\n",
            alt.branch_index + 1,
            if n == 1 { "" } else { "s" },
            alt.satisfied_count,
            alt.total_count
        ));
        render_gaps(&alt.gaps, depth + 1, out);
    }
}

fn render_gaps(gaps: &[Gap], depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    for gap in gaps {
        out.push_str(&format!("{pad}- {}\n", explain(gap)));
    }
}

fn render_shapes(shapes: &ShapesGraph, prefixes: &PrefixMap) -> String {
    let mut out = format!("{} shape{}\n", shapes.len(), if shapes.len() == 1 { "" } else { "s" });
    for shape in shapes.shapes() {
        render_shape(shape, prefixes, &mut out);
    }
    out
}

fn render_shape(shape: &Shape, prefixes: &PrefixMap, out: &mut String) {
    let kind = match shape.kind {
        ShapeKind::NodeShape => "NodeShape",
        ShapeKind::PropertyShape => "PropertyShape",
    };
    out.push_str(&format!("\n{} ({kind})\n", label(shape.id.term(), prefixes)));
    for target in &shape.targets {
        match target {
            Target::Class(c) => out.push_str(&format!("  target class {}\n", iri_label(c, prefixes))),
            Target::Node(n) => out.push_str(&format!("  target node {}\n", label(n, prefixes))),
        }
    }
    if let Some(path) = &shape.path {
        out.push_str(&format!("  path {}\n", iri_label(path, prefixes)));
    }
    if let Some(order) = &shape.order {
        out.push_str(&format!("  order {order}\n"));
    }
    for c in &shape.constraints {
        out.push_str(&format!("  {}\n", constraint_line(c, prefixes)));
    }
}

fn constraint_line(c: &Constraint, prefixes: &PrefixMap) -> String {
    let members: Vec<String> = c.references().iter().map(|m| label(m.term(), prefixes)).collect();
    match c {
        Constraint::And(_) | Constraint::Or(_) => format!("{}: {}", c.summary(), members.join(", ")),
        Constraint::Not(_) | Constraint::Property(_) | Constraint::Node(_) => {
            format!("{} {}", c.component().name(), members[0])
        }
        _ => c.summary(),
    }
}
