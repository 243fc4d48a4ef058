//! `lpsem`: command-line access to reduction systems, model enumeration,
//! property checks and classification of ground normal logic programs.

use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use lpsem::corpus;
use lpsem::generate::{GeneratorConfig, ProgramGenerator};
use lpsem::properties::Classification;
use lpsem::report::{run, Request};
use lpsem::{parse_program, Evaluator, Limits, Program, SemanticsId};

#[derive(Parser, Debug)]
#[command(name = "lpsem", version, about = "Semantics and property checks for ground normal logic programs")]
struct Cli {
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Enumeration cap on the number of atoms.
    #[arg(long, global = true, default_value_t = Limits::default().max_atoms)]
    max_atoms: usize,

    /// Seed for `generate`.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Parse a program and print it back.
    Parse { file: PathBuf },
    /// Compute the remainder under a reduction system.
    Remainder {
        #[arg(long, default_value = "wfs")]
        system: String,
        file: PathBuf,
    },
    /// The well-founded model.
    Wfm { file: PathBuf },
    /// Rule layers and segment levels.
    Layers { file: PathBuf },
    /// The subprogram relevant to an atom.
    Relevant {
        #[arg(long)]
        atom: String,
        file: PathBuf,
    },
    /// Enumerate the models of a semantics.
    Models {
        #[arg(long)]
        semantics: String,
        /// Atoms added as facts first, comma separated.
        #[arg(long, value_delimiter = ',')]
        facts: Vec<String>,
        file: PathBuf,
    },
    /// The intersection of the positive parts of all models.
    Kernel {
        #[arg(long)]
        semantics: String,
        #[arg(long, value_delimiter = ',')]
        facts: Vec<String>,
        file: PathBuf,
    },
    /// Check one property on one program.
    Check {
        /// cm, cut, cumulativity, relevance, defectivity, excessiveness,
        /// irregularity or existence
        property: String,
        #[arg(long)]
        semantics: String,
        file: PathBuf,
    },
    /// Classify a semantics over a directory of `.lp` files, or over the
    /// embedded corpus when no directory is given.
    Classify {
        #[arg(long)]
        semantics: String,
        #[arg(long)]
        corpus: Option<PathBuf>,
    },
    /// List, print, dump or verify the embedded corpus.
    Corpus {
        /// Print this entry's program.
        name: Option<String>,
        /// Write every entry to `<dir>/<name>.lp`.
        #[arg(long)]
        dump: Option<PathBuf>,
        /// Run the stored expectations.
        #[arg(long)]
        verify: bool,
    },
    /// Print seeded random programs.
    Generate {
        #[arg(long, default_value_t = 5)]
        atoms: usize,
        #[arg(long, default_value_t = 6)]
        rules: usize,
        #[arg(long, default_value_t = 3)]
        max_body: usize,
        #[arg(long, default_value_t = 0.5)]
        negation: f64,
        #[arg(long, default_value_t = 1)]
        count: usize,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match execute(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn read_program(path: &Path) -> anyhow::Result<Program> {
    let text = if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).context("reading standard input")?;
        s
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?
    };
    parse_program(&text).with_context(|| format!("parsing {}", path.display()))
}

fn list(value: &Value) -> String {
    let items: Vec<&str> = value.as_array().into_iter().flatten().filter_map(Value::as_str).collect();
    format!("{{{}}}", items.join(", "))
}

fn lines(value: &Value) -> String {
    value.as_array().into_iter().flatten().filter_map(Value::as_str).map(|r| format!("{r}\n")).collect()
}

fn execute(cli: &Cli) -> anyhow::Result<String> {
    let ev = Evaluator::new(Limits::new(cli.max_atoms));
    let simple = |file: &PathBuf, request: Request| -> anyhow::Result<Value> {
        Ok(run(&ev, &read_program(file)?, &request)?)
    };
    let out = match &cli.command {
        Command::Parse { file } => {
            let v = simple(file, Request::new("parse"))?;
            if cli.json { v } else { return Ok(lines(&v["rules"])) }
        }
        Command::Remainder { system, file } => {
            let v = simple(file, Request { system: Some(system.clone()), ..Request::new("remainder") })?;
            if cli.json { v } else { return Ok(lines(&v["rules"])) }
        }
        Command::Wfm { file } => {
            let v = simple(file, Request::new("wfm"))?;
            if cli.json {
                v
            } else {
                return Ok(format!("true: {}\nfalse: {}\nundefined: {}\n", list(&v["true"]), list(&v["false"]), list(&v["undef"])));
            }
        }
        Command::Layers { file } => {
            let v = simple(file, Request::new("layers"))?;
            if cli.json {
                v
            } else {
                let mut s = String::new();
                for r in v["rules"].as_array().into_iter().flatten() {
                    s.push_str(&format!("{}\t{}\n", r["layer"], r["rule"].as_str().unwrap_or_default()));
                }
                let segments: Vec<String> =
                    v["segments"].as_array().into_iter().flatten().map(|t| t.to_string()).collect();
                s.push_str(&format!("segments: {}\n", segments.join(" ")));
                return Ok(s);
            }
        }
        Command::Relevant { atom, file } => {
            let v = simple(file, Request { atom: Some(atom.clone()), ..Request::new("relevant") })?;
            if cli.json { v } else { return Ok(lines(&v["rules"])) }
        }
        Command::Models { semantics, facts, file } => {
            let request = Request { semantics: Some(semantics.clone()), facts: facts.clone(), ..Request::new("models") };
            let v = simple(file, request)?;
            if cli.json {
                v
            } else {
                let models = v["models"].as_array().cloned().unwrap_or_default();
                if models.is_empty() {
                    return Ok("no models\n".into());
                }
                return Ok(models
                    .iter()
                    .map(|m| match m.get("affix") {
                        Some(h) => format!("{} affix {}\n", list(&m["positive"]), list(h)),
                        None => format!("{}\n", list(&m["positive"])),
                    })
                    .collect());
            }
        }
        Command::Kernel { semantics, facts, file } => {
            let request = Request { semantics: Some(semantics.clone()), facts: facts.clone(), ..Request::new("kernel") };
            let v = simple(file, request)?;
            if cli.json {
                v
            } else if v["kernel"].is_null() {
                return Ok("undefined (no models)\n".into());
            } else {
                return Ok(format!("{}\n", list(&v["kernel"])));
            }
        }
        Command::Check { property, semantics, file } => {
            let request = Request {
                semantics: Some(semantics.clone()),
                property: Some(property.clone()),
                ..Request::new("check")
            };
            let v = simple(file, request)?;
            if cli.json {
                v
            } else {
                let mut s = format!("{} under {}: {}\n", v["property"].as_str().unwrap_or_default(), semantics, v["verdict"].as_str().unwrap_or_default());
                if let Some(reason) = v["reason"].as_str() {
                    s.push_str(&format!("reason: {reason}\n"));
                }
                for w in v["witnesses"].as_array().into_iter().flatten() {
                    s.push_str(&format!("witness: {w}\n"));
                }
                for w in v["inapplicable"].as_array().into_iter().flatten() {
                    s.push_str(&format!("inapplicable: {w}\n"));
                }
                return Ok(s);
            }
        }
        Command::Classify { semantics, corpus: dir } => {
            let sem: SemanticsId = semantics.parse()?;
            let programs: Vec<(String, Program)> = match dir {
                Some(dir) => read_corpus_dir(dir)?,
                None => corpus::entries().into_iter().map(|e| (e.name.to_string(), e.program)).collect(),
            };
            let c = ev.classify_vector(programs.iter().map(|(n, p)| (n.as_str(), p)), sem)?;
            if cli.json { serde_json::to_value(&c)? } else { return Ok(describe(&c)) }
        }
        Command::Corpus { name, dump, verify } => return corpus_command(cli, &ev, name.as_deref(), dump.as_deref(), *verify),
        Command::Generate { atoms, rules, max_body, negation, count } => {
            let config = GeneratorConfig {
                atom_count: *atoms,
                rule_count: *rules,
                max_body: *max_body,
                negation_probability: *negation,
                seed: cli.seed,
            };
            if !(0.0..=1.0).contains(negation) || *atoms == 0 {
                bail!("--negation must lie in [0, 1] and --atoms must be positive");
            }
            let programs: Vec<Program> = ProgramGenerator::new(config).take(*count).collect();
            if cli.json {
                json!(programs)
            } else {
                return Ok(programs.iter().map(|p| p.to_string()).collect::<Vec<_>>().join("%\n"));
            }
        }
    };
    Ok(format!("{}\n", serde_json::to_string_pretty(&out)?))
}

fn read_corpus_dir(dir: &Path) -> anyhow::Result<Vec<(String, Program)>> {
    let mut files: Vec<PathBuf> = fs::read_dir(dir)
        .with_context(|| format!("reading {}", dir.display()))?
        .map(|e| e.map(|e| e.path()))
        .collect::<Result<_, _>>()?;
    files.retain(|p| p.extension().is_some_and(|x| x == "lp"));
    files.sort();
    files
        .iter()
        .map(|p| Ok((p.file_stem().unwrap_or_default().to_string_lossy().into_owned(), read_program(p)?)))
        .collect()
}

fn describe(c: &Classification) -> String {
    let mut s = format!("{}: {}", c.semantics, c.vector);
    match (c.row, c.excluded) {
        (_, Some(pattern)) => s.push_str(&format!(" (excluded combination: {pattern})")),
        (Some(row), None) => s.push_str(&format!(" (row {row})")),
        (None, None) => {}
    }
    s.push('\n');
    for e in &c.evidence {
        s.push_str(&format!("  {} failed on {} via {}\n", e.property, e.source, e.via.name()));
    }
    for name in &c.skipped {
        s.push_str(&format!("  skipped {name}: too many atoms\n"));
    }
    s
}

fn corpus_command(
    cli: &Cli,
    ev: &Evaluator,
    name: Option<&str>,
    dump: Option<&Path>,
    verify: bool,
) -> anyhow::Result<String> {
    if let Some(name) = name {
        let Some(entry) = corpus::entry(name) else { bail!("no corpus entry named `{name}`") };
        return Ok(if cli.json {
            format!("{}\n", serde_json::to_string_pretty(&json!({ "name": entry.name, "program": entry.program }))?)
        } else {
            entry.source.to_string()
        });
    }
    if let Some(dir) = dump {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        for entry in corpus::entries() {
            fs::write(dir.join(format!("{}.lp", entry.name)), entry.source)?;
        }
    }
    if verify {
        let checks = corpus::verify(ev);
        let failed: Vec<_> = checks.iter().filter(|c| !c.passed()).collect();
        return Ok(if cli.json {
            let failures: Vec<Value> = failed
                .iter()
                .map(|c| json!({ "entry": c.entry, "operation": c.expectation.request.operation, "expected": c.expectation.expected }))
                .collect();
            format!(
                "{}\n",
                serde_json::to_string_pretty(&json!({ "checked": checks.len(), "failed": failures }))?
            )
        } else {
            let mut s = format!("{} expectations, {} failed\n", checks.len(), failed.len());
            for c in failed {
                s.push_str(&format!("  {} {}: expected {}\n", c.entry, c.expectation.request.operation, c.expectation.expected));
            }
            s
        });
    }
    let entries = corpus::entries();
    Ok(if cli.json {
        let list: Vec<Value> = entries
            .iter()
            .map(|e| json!({ "name": e.name, "rules": e.program.len(), "expectations": e.expectations.len() }))
            .collect();
        format!("{}\n", serde_json::to_string_pretty(&list)?)
    } else {
        entries.iter().map(|e| format!("{}\t{} rules\n", e.name, e.program.len())).collect()
    })
}
