//! Command-line front-end: load documents written in the text language,
//! run computation tasks against them, and report results as text or
//! versioned JSON.
//!
//! Exit codes: 0 when every requested task is ok, 2 when validation or a
//! task fails, 1 on usage errors (bad flags, unreadable files, unknown
//! names).

mod jobs;
mod report;
mod resolve;

use std::path::Path;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use cathedra::Caps;
use clap::{Parser, Subcommand};

use jobs::{execute, Job, Payload};
use report::ReportDoc;
use resolve::Shape;

/// A user-facing failure: either the request itself is malformed, or the
/// referenced content does not validate.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Validation(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Validation(m) => f.write_str(m),
        }
    }
}

#[derive(Parser)]
#[command(
    name = "cathedra",
    version,
    about = "Finite-category computations: limits, adjoints, presheaf structure"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Emit the machine-readable JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Cap on objects in constructed categories.
    #[arg(long, global = true)]
    max_objects: Option<usize>,
    /// Cap on morphisms in constructed categories.
    #[arg(long, global = true)]
    max_morphisms: Option<usize>,
    /// Cap on exhaustive-search candidates.
    #[arg(long, global = true)]
    max_enum: Option<usize>,
    /// Worker threads for running tasks (default 1).
    #[arg(long, global = true)]
    threads: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and validate documents.
    Check {
        #[arg(required = true)]
        files: Vec<String>,
    },
    /// Run the task declarations in documents.
    Task {
        #[arg(required = true)]
        files: Vec<String>,
    },
    /// Compute a limit in a category.
    Limit {
        /// Diagram shape (product, terminal, equalizer, pullback).
        #[arg(long, value_enum)]
        shape: Shape,
        /// Ambient category: built-in name, file, or file:NAME.
        #[arg(long = "in")]
        ambient: String,
        /// Object labels (product) or morphism labels (equalizer, pullback).
        args: Vec<String>,
    },
    /// Compute a colimit in a category.
    Colimit {
        /// Diagram shape (coproduct, initial, coequalizer, pushout).
        #[arg(long, value_enum)]
        shape: Shape,
        /// Ambient category: built-in name, file, or file:NAME.
        #[arg(long = "in")]
        ambient: String,
        /// Object labels (coproduct) or morphism labels (coequalizer, pushout).
        args: Vec<String>,
    },
    /// Synthesize left adjoints for functors declared in a document.
    Adjoint {
        file: String,
        /// A declared functor; defaults to every functor in the document.
        name: Option<String>,
    },
    /// Check the transformation-to-value bijection for declared presheaves.
    Yoneda {
        file: String,
        /// A declared presheaf; defaults to every presheaf in the document.
        name: Option<String>,
    },
    /// Present declared presheaves as colimits of representables.
    Density {
        file: String,
        /// A declared presheaf; defaults to every presheaf in the document.
        name: Option<String>,
    },
    /// Compute the subobject classifier of a category.
    Classifier {
        /// Built-in category name, file, or file:NAME.
        target: String,
    },
    /// Validate documents, run their tasks, and emit the JSON report.
    Report {
        #[arg(required = true)]
        files: Vec<String>,
    },
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                std::process::exit(0);
            }
            eprint!("{e}");
            std::process::exit(1);
        }
    };
    std::process::exit(run(cli));
}

fn run(cli: Cli) -> i32 {
    let mut caps = Caps::default().with_env_overrides();
    if let Some(v) = cli.max_objects {
        caps.max_objects = v;
    }
    if let Some(v) = cli.max_morphisms {
        caps.max_morphisms = v;
    }
    if let Some(v) = cli.max_enum {
        caps.max_enum = v;
    }
    let threads = cli.threads.unwrap_or(1).max(1);
    let force_json = matches!(cli.command, Command::Report { .. });

    let jobs = match build_jobs(&cli.command, &caps) {
        Ok(jobs) => jobs,
        Err(CliError::Usage(m)) => {
            eprintln!("error: {m}");
            return 1;
        }
        Err(CliError::Validation(m)) => {
            eprintln!("error: {m}");
            return 2;
        }
    };

    let doc = ReportDoc::new(run_jobs(&jobs, &caps, threads));
    let out = if cli.json || force_json {
        doc.to_json() + "\n"
    } else {
        doc.to_text()
    };
    // A closed pipe (e.g. piping into `head`) is not an error.
    use std::io::Write;
    if let Err(e) = std::io::stdout().write_all(out.as_bytes()) {
        if e.kind() != std::io::ErrorKind::BrokenPipe {
            eprintln!("error: cannot write report: {e}");
            return 2;
        }
    }
    if doc.all_ok() {
        0
    } else {
        2
    }
}

/// Check every path up front so a mistyped file is a usage error rather
/// than a failed task.
fn require_files(files: &[String]) -> Result<(), CliError> {
    for f in files {
        if !Path::new(f).is_file() {
            return Err(CliError::Usage(format!("`{f}` is not a readable file")));
        }
    }
    Ok(())
}

fn build_jobs(command: &Command, caps: &Caps) -> Result<Vec<Job>, CliError> {
    match command {
        Command::Check { files } => {
            require_files(files)?;
            Ok(files
                .iter()
                .map(|f| Job {
                    id: format!("check {f}"),
                    payload: Payload::CheckFile(f.clone()),
                })
                .collect())
        }
        Command::Task { files } => {
            require_files(files)?;
            Ok(file_tasks(files, caps, false))
        }
        Command::Report { files } => {
            require_files(files)?;
            Ok(file_tasks(files, caps, true))
        }
        Command::Limit {
            shape,
            ambient,
            args,
        } => Ok(vec![shape_job(*shape, true, ambient, args, caps)?]),
        Command::Colimit {
            shape,
            ambient,
            args,
        } => Ok(vec![shape_job(*shape, false, ambient, args, caps)?]),
        Command::Adjoint { file, name } => {
            require_files(std::slice::from_ref(file))?;
            let ws = resolve::load_file(file, caps)?;
            let chosen = select(&ws.functors, name, "functor", file)?;
            Ok(chosen
                .into_iter()
                .map(|(n, g)| Job {
                    id: format!("left-adjoint of {n}"),
                    payload: Payload::Request(catlang::WorkRequest::LeftAdjoint(g)),
                })
                .collect())
        }
        Command::Yoneda { file, name } => {
            require_files(std::slice::from_ref(file))?;
            let ws = resolve::load_file(file, caps)?;
            let chosen = select(&ws.presheaves, name, "presheaf", file)?;
            Ok(chosen
                .into_iter()
                .map(|(n, x)| Job {
                    id: format!("yoneda-check of {n}"),
                    payload: Payload::Request(catlang::WorkRequest::YonedaCheck(x)),
                })
                .collect())
        }
        Command::Density { file, name } => {
            require_files(std::slice::from_ref(file))?;
            let ws = resolve::load_file(file, caps)?;
            let chosen = select(&ws.presheaves, name, "presheaf", file)?;
            Ok(chosen
                .into_iter()
                .map(|(n, x)| Job {
                    id: format!("density of {n}"),
                    payload: Payload::Request(catlang::WorkRequest::Density(x)),
                })
                .collect())
        }
        Command::Classifier { target } => {
            let c = resolve::category(target, caps)?;
            Ok(vec![Job {
                id: format!("classifier of {}", c.name),
                payload: Payload::Request(catlang::WorkRequest::Classifier(c)),
            }])
        }
    }
}

/// Tasks declared in the given files, in declaration order; a file that
/// fails to elaborate contributes a failing check entry instead. With
/// `with_checks`, every file contributes its check entry first.
fn file_tasks(files: &[String], caps: &Caps, with_checks: bool) -> Vec<Job> {
    let mut jobs = Vec::new();
    for f in files {
        if with_checks {
            jobs.push(Job {
                id: format!("check {f}"),
                payload: Payload::CheckFile(f.clone()),
            });
        }
        match resolve::load_file(f, caps) {
            Ok(ws) => jobs.extend(ws.tasks.into_iter().map(Job::from)),
            Err(_) if with_checks => {} // the check entry reports it
            Err(_) => jobs.push(Job {
                id: format!("check {f}"),
                payload: Payload::CheckFile(f.clone()),
            }),
        }
    }
    jobs
}

fn select<T: Clone>(
    declared: &[(String, T)],
    name: &Option<String>,
    kind: &str,
    file: &str,
) -> Result<Vec<(String, T)>, CliError> {
    match name {
        Some(n) => declared
            .iter()
            .find(|(dn, _)| dn == n)
            .cloned()
            .map(|p| vec![p])
            .ok_or_else(|| {
                CliError::Usage(format!("`{file}` declares no {kind} named `{n}`"))
            }),
        None => {
            if declared.is_empty() {
                Err(CliError::Usage(format!("`{file}` declares no {kind}")))
            } else {
                Ok(declared.to_vec())
            }
        }
    }
}

fn shape_job(
    shape: Shape,
    limit_side: bool,
    ambient: &str,
    args: &[String],
    caps: &Caps,
) -> Result<Job, CliError> {
    if shape.is_limit_side() != limit_side {
        let (given, wanted) = if limit_side {
            ("limit", "colimit")
        } else {
            ("colimit", "limit")
        };
        return Err(CliError::Usage(format!(
            "shape `{}` belongs to `cathedra {wanted}`, not `cathedra {given}`",
            shape.keyword()
        )));
    }
    let amb = resolve::category(ambient, caps)?;
    let d = resolve::shape_diagram(shape, &amb, args)?;
    let request = if limit_side {
        catlang::WorkRequest::Limit(d)
    } else {
        catlang::WorkRequest::Colimit(d)
    };
    Ok(Job {
        id: format!(
            "{} {} in {}",
            if limit_side { "limit" } else { "colimit" },
            shape.keyword(),
            amb.name
        ),
        payload: Payload::Request(request),
    })
}

/// Run jobs on up to `threads` workers; the report keeps request order.
fn run_jobs(jobs: &[Job], caps: &Caps, threads: usize) -> Vec<report::TaskReport> {
    if threads <= 1 || jobs.len() <= 1 {
        return jobs.iter().map(|j| execute(j, caps)).collect();
    }
    let next = AtomicUsize::new(0);
    let slots: Vec<Mutex<Option<report::TaskReport>>> =
        jobs.iter().map(|_| Mutex::new(None)).collect();
    std::thread::scope(|scope| {
        for _ in 0..threads.min(jobs.len()) {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= jobs.len() {
                    break;
                }
                let done = execute(&jobs[i], caps);
                *slots[i].lock().expect("result slot") = Some(done);
            });
        }
    });
    slots
        .into_iter()
        .map(|m| {
            m.into_inner()
                .expect("result slot")
                .expect("every job ran")
        })
        .collect()
}
