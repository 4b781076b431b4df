use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::thread;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use conley_surf::block::BlockError;
use conley_surf::builders::{self, BuildError, RecipeParams};
use conley_surf::conley::{self, ContinuationReport};
use conley_surf::{
    check_continuation, classify, ClassificationReport, ComponentSummary, ConleyError,
    IsolatingBlock, RegularizeError,
};

mod schematic;

#[derive(Parser)]
#[command(
    name = "conley-surf",
    version,
    about = "Conley index toolkit for isolating blocks of surface flows"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check every block invariant and list the violations
    Validate { file: PathBuf },
    /// Exit and entrance counts and the regularity obstruction
    Census {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Cut along spines until the block is regular
    Regularize {
        file: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        /// write the surgery trace as JSON
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Classify the isolated invariant set (regularizes first when needed)
    Classify {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        #[arg(long)]
        json: bool,
        /// worker threads for several files
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Cohomology of (N, N^o), the intersection form and the index it determines
    Ring {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// The block of the time-reversed flow
    Reverse {
        file: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Initial-section piece carried by each component of n⁻
    Sections { file: PathBuf },
    /// Compare the index with that of the reversed flow
    Duality { file: PathBuf },
    /// Admissible invariant sets when the block has no fixed points
    FixedPointFree { file: PathBuf },
    /// Report for a minimal invariant set
    Minimal { file: PathBuf },
    /// Check a continuation from K0 (one summary) to COMPS (an array of summaries)
    Continuation {
        k0: PathBuf,
        comps: PathBuf,
        #[arg(long)]
        shares_block: bool,
    },
    /// Write a named recipe, `random`, or `surface_repeller` as a block file
    Generate {
        name: String,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 500)]
        budget: usize,
        #[arg(long, default_value_t = 1)]
        genus: usize,
        #[arg(long, default_value_t = 0)]
        holes: usize,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Graphviz drawing of the labeled boundary
    Schematic {
        file: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
}

/// A failure reported as JSON on stderr with exit code 1.
struct Failure {
    kind: &'static str,
    message: String,
    details: Value,
}

impl Failure {
    fn new(kind: &'static str, message: impl Into<String>) -> Self {
        Self {
            kind,
            message: message.into(),
            details: Value::Null,
        }
    }

    fn with_details(mut self, details: Value) -> Self {
        self.details = details;
        self
    }
}

impl From<BlockError> for Failure {
    fn from(e: BlockError) -> Self {
        match &e {
            BlockError::InvalidBlock(report) => {
                Failure::new("invalid_block", e.to_string()).with_details(json!(report.violations))
            }
            BlockError::InvalidComplex(_) => Failure::new("invalid_complex", e.to_string()),
            BlockError::Format(_) => Failure::new("format", e.to_string()),
        }
    }
}

impl From<RegularizeError> for Failure {
    fn from(e: RegularizeError) -> Self {
        let kind = match &e {
            RegularizeError::Block(b) => return b.clone().into(),
            RegularizeError::UnknownSpine(_) => "unknown_spine",
            RegularizeError::DisconnectingCut(_) => "disconnecting_cut",
            RegularizeError::NotProperlyEmbedded(_) => "not_properly_embedded",
            RegularizeError::InconsistentCut { .. } => "inconsistent_cut",
            RegularizeError::InsufficientTransitData { .. } => "insufficient_transit_data",
        };
        Failure::new(kind, e.to_string())
    }
}

impl From<ConleyError> for Failure {
    fn from(e: ConleyError) -> Self {
        match e {
            ConleyError::Block(b) => b.into(),
            ConleyError::Regularize(r) => r.into(),
            ConleyError::InconsistentData(_) => Failure::new("inconsistent_data", e.to_string()),
            ConleyError::FixedPointForced { fp_index, disk } => {
                Failure::new("fixed_point_forced", e.to_string())
                    .with_details(json!({"fp_index": fp_index, "disk": disk}))
            }
            ConleyError::Homology(_) => Failure::new("homology", e.to_string()),
            ConleyError::Surface(_) => Failure::new("surface", e.to_string()),
        }
    }
}

impl From<BuildError> for Failure {
    fn from(e: BuildError) -> Self {
        let kind = match e {
            BuildError::UnknownRecipe(_) => "unknown_recipe",
            BuildError::BadParameters(_) => "bad_parameters",
        };
        Failure::new(kind, e.to_string())
    }
}

fn io_failure(path: &Path, e: io::Error) -> Failure {
    Failure::new("io", format!("{}: {e}", path.display()))
}

struct Style {
    color: bool,
}

impl Style {
    fn from_env() -> Self {
        Self {
            color: std::env::var("CONLEY_SURF_COLOR").as_deref() == Ok("1"),
        }
    }

    fn paint(&self, code: &str, text: &str) -> String {
        if self.color {
            format!("\x1b[{code}m{text}\x1b[0m")
        } else {
            text.to_string()
        }
    }

    fn key(&self, k: &str) -> String {
        self.paint("1", &format!("{k:<14}"))
    }

    fn verdict(&self, ok: bool, yes: &str, no: &str) -> String {
        if ok {
            self.paint("32", yes)
        } else {
            self.paint("31", no)
        }
    }
}

fn read_block(path: &Path) -> Result<IsolatingBlock, Failure> {
    let text = fs::read_to_string(path).map_err(|e| io_failure(path, e))?;
    Ok(IsolatingBlock::from_json(&text)?)
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = fs::read_to_string(path).map_err(|e| io_failure(path, e))?;
    serde_json::from_str(&text)
        .map_err(|e| Failure::new("format", format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| io_failure(path, e))
}

fn human_report(r: &ClassificationReport, s: &Style) -> String {
    let yes_no = |b: bool| if b { "yes" } else { "no" };
    let mut lines = vec![
        format!("{}{}", s.key("block"), r.name),
        format!("{}{}", s.key("case"), r.case),
        format!("{}{:?}", s.key("dynamics"), r.dynamics_type),
        format!("{}{}", s.key("index"), r.index_name),
        format!("{}{}", s.key("shape"), r.shape),
        format!("{}{}", s.key("β₁(K)"), r.beta1_k),
        format!("{}{} / {}", s.key("u / u_c"), r.u, r.u_c),
        format!(
            "{}{} ({})",
            s.key("fp index"),
            r.fp_index,
            s.verdict(
                !r.forces_fixed_point,
                "no fixed point forced",
                "forces a fixed point"
            )
        ),
        format!("{}{}", s.key("non-saddle"), yes_no(r.non_saddle)),
        format!("{}{}", s.key("surgery cuts"), r.surgery_cuts),
    ];
    if r.trivial_shape_with_fixed_point {
        lines.push(format!(
            "{}trivial shape, contains a fixed point",
            s.key("disk block")
        ));
    }
    if let Some(outcome) = &r.fixed_point_free_classification {
        let text = match outcome {
            conley::FixedPointFreeOutcome::Admissible(rep) => rep.candidates.join(" | "),
            conley::FixedPointFreeOutcome::FixedPointForced { fp_index, .. } => s.verdict(
                false,
                "",
                &format!("assertion refuted, fixed point forced (index {fp_index})"),
            ),
            conley::FixedPointFreeOutcome::Inconsistent { message } => {
                s.verdict(false, "", message)
            }
        };
        lines.push(format!("{}{}", s.key("no fixed pts"), text));
    }
    lines.join("\n")
}

fn classify_many(files: &[PathBuf], jobs: usize) -> Vec<Result<ClassificationReport, Failure>> {
    let work = |p: &PathBuf| read_block(p).and_then(|b| classify(&b).map_err(Failure::from));
    let jobs = jobs.max(1).min(files.len().max(1));
    if jobs == 1 {
        return files.iter().map(work).collect();
    }
    let chunk = files.len().div_ceil(jobs);
    thread::scope(|scope| {
        let handles: Vec<_> = files
            .chunks(chunk)
            .map(|part| scope.spawn(move || part.iter().map(work).collect::<Vec<_>>()))
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("classification worker"))
            .collect()
    })
}

fn continuation_text(r: &ContinuationReport, s: &Style) -> String {
    let mut lines = vec![format!(
        "{}{}",
        s.key("continuation"),
        s.verdict(r.passed, "consistent", "inconsistent")
    )];
    for v in &r.violations {
        lines.push(format!("  {:?}: {}", v.clause, v.message));
    }
    lines.join("\n")
}

fn run(cli: Cli, out: &mut impl Write) -> Result<(), Failure> {
    let style = Style::from_env();
    let emit = |out: &mut dyn Write, text: &str| {
        writeln!(out, "{text}").map_err(|e| Failure::new("io", e.to_string()))
    };
    match cli.command {
        Command::Validate { file } => {
            let b = read_block(&file)?;
            let report = b.validate();
            if report.is_valid() {
                emit(
                    out,
                    &format!("{}{}", style.key(&b.name), style.verdict(true, "valid", "")),
                )
            } else {
                for v in &report.violations {
                    emit(
                        out,
                        &format!("{:?} at {}: {}", v.kind, v.location, v.message),
                    )?;
                }
                Err(BlockError::InvalidBlock(report).into())
            }
        }
        Command::Census { file, json } => {
            let c = read_block(&file)?.census()?;
            if json {
                emit(
                    out,
                    &serde_json::to_string_pretty(&c).expect("census serializes"),
                )
            } else {
                emit(
                    out,
                    &format!(
                        "{}{}\n{}{}\n{}{}\n{}{}\n{}{}\n{}{}",
                        style.key("u"),
                        c.u,
                        style.key("u_c"),
                        c.u_c,
                        style.key("s"),
                        c.s,
                        style.key("s_c"),
                        c.s_c,
                        style.key("β₁(N)"),
                        c.beta1_n,
                        style.key("obstruction"),
                        c.obstruction
                    ),
                )
            }
        }
        Command::Regularize {
            file,
            output,
            trace,
        } => {
            let b = read_block(&file)?;
            let (r, t) = conley_surf::regularize(&b)?;
            write_file(&output, &r.to_json())?;
            if let Some(path) = trace {
                write_file(
                    &path,
                    &serde_json::to_string_pretty(&t).expect("trace serializes"),
                )?;
            }
            emit(
                out,
                &format!("{} cuts, wrote {}", t.len(), output.display()),
            )
        }
        Command::Classify { files, json, jobs } => {
            let results = classify_many(&files, jobs);
            let mut first_failure = None;
            for (path, result) in files.iter().zip(results) {
                match result {
                    Ok(r) if json => emit(out, &r.to_json())?,
                    Ok(r) => emit(out, &human_report(&r, &style))?,
                    Err(f) => {
                        let f = Failure {
                            message: format!("{}: {}", path.display(), f.message),
                            ..f
                        };
                        first_failure.get_or_insert(f);
                    }
                }
            }
            first_failure.map_or(Ok(()), Err)
        }
        Command::Ring { file, json } => {
            let b = read_block(&file)?;
            let ch = conley_surf::cohomology_index(&b)?;
            let form = conley::block_intersection_form(&b)?;
            let index = conley_surf::ring_classify(&ch, &form)?;
            if json {
                let v = json!({
                    "cohomology_index": ch,
                    "intersection_form": form,
                    "index": index,
                    "index_name": index.to_string(),
                });
                emit(
                    out,
                    &serde_json::to_string_pretty(&v).expect("ring report serializes"),
                )
            } else {
                let rows: Vec<String> = (0..form.matrix.rows())
                    .map(|i| {
                        (0..form.matrix.cols())
                            .map(|j| if form.matrix.get(i, j) { "1" } else { "0" })
                            .collect::<Vec<_>>()
                            .join(" ")
                    })
                    .collect();
                let kind = if ch.dim2 == 1 {
                    if form.has_self_square {
                        "nonorientable"
                    } else {
                        "orientable"
                    }
                } else {
                    "no surface summand"
                };
                emit(
                    out,
                    format!(
                        "{}{}\n{}{}\n{}{}\n{}{}\n{}{}\n{}\n{}",
                        style.key("CH*"),
                        ch,
                        style.key("rank"),
                        form.rank,
                        style.key("self-square"),
                        if form.has_self_square { "yes" } else { "no" },
                        style.key("surface"),
                        kind,
                        style.key("index"),
                        index,
                        style.paint("1", "form"),
                        rows.iter()
                            .map(|r| format!("  {r}"))
                            .collect::<Vec<_>>()
                            .join("\n")
                    )
                    .trim_end(),
                )
            }
        }
        Command::Reverse { file, output } => {
            let r = read_block(&file)?.reverse()?;
            write_file(&output, &r.to_json())?;
            emit(out, &format!("wrote {}", output.display()))
        }
        Command::Sections { file } => {
            let pieces = read_block(&file)?.section_census()?;
            if pieces.is_empty() {
                return emit(out, "no initial section (empty n⁻)");
            }
            for p in pieces {
                emit(out, &format!("{:<14}{:?}", p.kind.to_string(), p.vertices))?;
            }
            Ok(())
        }
        Command::Duality { file } => {
            let d = conley_surf::duality_check(&read_block(&file)?)?;
            emit(
                out,
                &format!(
                    "{}{} / {}\n{}{:?} {}\n{}{:?} {}\n{}{}",
                    style.key("u_c / s_c"),
                    d.u_c,
                    d.s_c,
                    style.key("forward"),
                    d.forward,
                    d.forward_index,
                    style.key("reversed"),
                    d.backward,
                    d.backward_index,
                    style.key("duality"),
                    style.verdict(d.holds(), "holds", &d.violations.join("; "))
                ),
            )?;
            if d.holds() {
                Ok(())
            } else {
                Err(Failure::new("duality_violated", d.violations.join("; ")))
            }
        }
        Command::FixedPointFree { file } => {
            let r = conley_surf::classify_fixed_point_free(&read_block(&file)?)?;
            emit(
                out,
                &format!("{}{}", style.key("admissible"), r.candidates.join(" | ")),
            )
        }
        Command::Minimal { file } => {
            let text = conley_surf::minimal_report(&read_block(&file)?, true)?;
            emit(out, &text)
        }
        Command::Continuation {
            k0,
            comps,
            shares_block,
        } => {
            let k0: ComponentSummary = read_json(&k0)?;
            let comps: Vec<ComponentSummary> = read_json(&comps)?;
            let report = check_continuation(&k0, &comps, shares_block)?;
            emit(out, &continuation_text(&report, &style))?;
            if report.passed {
                Ok(())
            } else {
                Err(
                    Failure::new("not_a_continuation", "continuation check failed")
                        .with_details(json!(report)),
                )
            }
        }
        Command::Generate {
            name,
            seed,
            budget,
            genus,
            holes,
            output,
        } => {
            let params = RecipeParams {
                seed,
                budget,
                genus,
                holes,
            };
            let b = builders::build(&name, &params)?;
            write_file(&output, &b.to_json())?;
            emit(out, &format!("wrote {}", output.display()))
        }
        Command::Schematic { file, output } => {
            let b = read_block(&file)?;
            write_file(&output, &schematic::to_dot(&b))?;
            emit(out, &format!("wrote {}", output.display()))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut lock = stdout.lock();
    match run(cli, &mut lock) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            let _ = lock.flush();
            let err = json!({"error": f.kind, "message": f.message, "details": f.details});
            let _ = writeln!(io::stderr(), "{err}");
            ExitCode::from(1)
        }
    }
}
