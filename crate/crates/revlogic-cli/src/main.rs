//! Command-line driver for the revlogic toolkit.
//!
//! Exit codes: 0 on success, 1 when a check fails or a file cannot be
//! processed, 2 on usage errors.

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use revlogic::circuit::Circuit;
use revlogic::compressor::{build_compressor, lemma_report, verify_compressor, CompressorCheck};
use revlogic::netlist;
use revlogic::quantum::verify_decomposition;
use revlogic::registry::GateRegistry;
use revlogic::report;
use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "revlogic",
    version,
    about = "Reversible-logic synthesis and verification toolkit"
)]
struct Cli {
    /// Load extra gate definitions from a gate-table file.
    #[arg(long, global = true, value_name = "FILE")]
    gates: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print a gate's full truth table.
    Truth {
        /// Gate name, e.g. INV0 or TG.
        gate: String,
    },
    /// Simulate a netlist on one input assignment.
    Sim {
        /// Netlist file.
        file: PathBuf,
        /// Input assignment as comma-separated NAME=bit pairs; repeatable.
        #[arg(long = "in", value_name = "NAME=BIT,...")]
        inputs: Vec<String>,
    },
    /// Check that a netlist is well formed and realizes a bijection.
    Verify {
        /// Netlist file.
        file: PathBuf,
    },
    /// Print a netlist's aggregate metrics.
    Metrics {
        /// Netlist file.
        file: PathBuf,
    },
    /// Generate circuits.
    #[command(subcommand)]
    Synth(SynthCommand),
    /// Exhaustively check the carry-save conservation identity.
    CheckCompressor {
        /// Netlist file.
        file: PathBuf,
        /// Number of operand inputs.
        #[arg(long)]
        n: u32,
    },
    /// Verify a primitive decomposition against a gate's truth table.
    Qcheck {
        /// Gate name to check against.
        gate: String,
        /// Decomposition file.
        #[arg(long, value_name = "FILE")]
        decomp: PathBuf,
        /// Amplitude tolerance.
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
    /// Print the comparison table for an n:2 compressor.
    Compare {
        /// Compressor size.
        #[arg(long)]
        n: u32,
        /// Output format.
        #[arg(long, value_enum, default_value_t = Format::Md)]
        format: Format,
        /// Measure this netlist instead of the generated circuit.
        #[arg(long, value_name = "FILE")]
        netlist: Option<PathBuf>,
    },
    /// Compare closed-form metric predictions against measured circuits.
    Predict {
        /// Smallest compressor size.
        #[arg(long, default_value_t = 4)]
        from: u32,
        /// Largest compressor size.
        #[arg(long, default_value_t = 12)]
        to: u32,
    },
    /// Gate registry utilities.
    #[command(subcommand)]
    Gates(GatesCommand),
}

#[derive(Subcommand)]
enum SynthCommand {
    /// Generate an n:2 compressor netlist.
    Compressor {
        /// Number of operand inputs (3..=14).
        #[arg(long)]
        n: u32,
        /// Output file; stdout when omitted.
        #[arg(short, long, value_name = "FILE")]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum GatesCommand {
    /// Dump the gate registry as a gate-table document.
    Export {
        /// Output file; stdout when omitted.
        #[arg(short, long, value_name = "FILE")]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Md,
    Csv,
}

fn main() -> ExitCode {
    // Die quietly when the consumer of our stdout goes away (e.g. `head`).
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    let mut registry = GateRegistry::with_builtins();
    if let Some(path) = &cli.gates {
        load_gates(&mut registry, path)?;
    }

    match cli.command {
        Command::Truth { gate } => {
            let gate = registry
                .lookup(&gate)
                .with_context(|| format!("cannot print truth table for `{gate}`"))?;
            let w = gate.width();
            println!(
                "{} width={} qc={} T={}",
                gate.name(),
                w,
                gate.quantum_cost(),
                gate.logic_cost()
            );
            for input in 0..1u32 << w {
                println!("{input:0w$b} -> {output:0w$b}", output = gate.apply(input));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Sim { file, inputs } => {
            let circuit = read_circuit(&file, &registry)?;
            let assignment = match parse_assignment(&inputs) {
                Ok(a) => a,
                Err(msg) => {
                    eprintln!("usage error: {msg}");
                    return Ok(ExitCode::from(2));
                }
            };
            let outcome = circuit
                .simulate(&assignment)
                .context("simulation rejected the assignment")?;
            let rendered: Vec<String> = outcome
                .outputs
                .iter()
                .map(|(name, bit)| format!("{name}={}", u8::from(*bit)))
                .collect();
            println!("{}", rendered.join(","));
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { file } => {
            let text = read_text(&file)?;
            let doc = match netlist::parse(&text, &registry) {
                Ok(doc) => doc,
                Err(err) => {
                    println!("{}: {err}", file.display());
                    return Ok(ExitCode::from(1));
                }
            };
            let report = doc.validate();
            if !report.is_clean() {
                for diag in &report.diagnostics {
                    match doc.locate(diag) {
                        Some(line) => println!("{}:{line}: {diag}", file.display()),
                        None => println!("{}: {diag}", file.display()),
                    }
                }
                return Ok(ExitCode::from(1));
            }
            let circuit = doc.into_circuit().expect("validated above");
            match circuit.full_permutation() {
                Ok(table) => {
                    println!("ok: valid, bijective on {} words", table.len());
                    Ok(ExitCode::SUCCESS)
                }
                Err(err) => {
                    println!("{}: valid, but {err}", file.display());
                    Ok(ExitCode::from(1))
                }
            }
        }
        Command::Metrics { file } => {
            let circuit = read_circuit(&file, &registry)?;
            println!("{}", circuit.metrics());
            Ok(ExitCode::SUCCESS)
        }
        Command::Synth(SynthCommand::Compressor { n, output }) => {
            let circuit = build_compressor(n)?;
            let text = netlist::emit(&circuit);
            write_output(output.as_deref(), &text)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::CheckCompressor { file, n } => {
            let circuit = read_circuit(&file, &registry)?;
            match verify_compressor(&circuit, n)? {
                CompressorCheck::Pass { assignments } => {
                    println!("ok: conservation holds over {assignments} assignments");
                    Ok(ExitCode::SUCCESS)
                }
                CompressorCheck::Fail(ce) => {
                    let inputs: Vec<String> = ce
                        .inputs
                        .iter()
                        .map(|(name, bit)| format!("{name}={}", u8::from(*bit)))
                        .collect();
                    println!(
                        "counterexample: {} gives {} set inputs but SUM+2*carries = {}",
                        inputs.join(","),
                        ce.input_weight,
                        ce.measured_weight
                    );
                    Ok(ExitCode::from(1))
                }
            }
        }
        Command::Qcheck { gate, decomp, tol } => {
            let gate = registry.lookup(&gate)?;
            let text = read_text(&decomp)?;
            let seq = netlist::parse_decomposition(&text)
                .with_context(|| format!("cannot parse {}", decomp.display()))?;
            let outcome = verify_decomposition(&seq, &gate, tol)?;
            match outcome.counterexample {
                None => {
                    println!(
                        "ok: realizes {} with cost {} (declared {})",
                        gate.name(),
                        seq.quantum_cost(),
                        gate.quantum_cost()
                    );
                    Ok(ExitCode::SUCCESS)
                }
                Some((input, failure)) => {
                    println!(
                        "mismatch on basis input {input:0w$b}: {failure}",
                        w = seq.width()
                    );
                    Ok(ExitCode::from(1))
                }
            }
        }
        Command::Compare {
            n,
            format,
            netlist: file,
        } => {
            let rows = match file {
                Some(path) => {
                    let circuit = read_circuit(&path, &registry)?;
                    report::comparison_table_for(n, &circuit)?
                }
                None => report::comparison_table(n)?,
            };
            let rendered = match format {
                Format::Md => report::render_markdown(&rows),
                Format::Csv => report::render_csv(&rows),
            };
            print!("{rendered}");
            Ok(ExitCode::SUCCESS)
        }
        Command::Predict { from, to } => {
            let report = lemma_report(from, to)?;
            println!("{report}");
            if report.all_match() {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::from(1))
            }
        }
        Command::Gates(GatesCommand::Export { output }) => {
            let text = netlist::emit_gate_table(&registry);
            write_output(output.as_deref(), &text)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn read_circuit(path: &Path, registry: &GateRegistry) -> Result<Circuit> {
    let text = read_text(path)?;
    let doc = netlist::parse(&text, registry)
        .with_context(|| format!("cannot parse {}", path.display()))?;
    doc.into_circuit()
        .map_err(|report| anyhow::anyhow!("{} is not well formed:\n{report}", path.display()))
}

fn load_gates(registry: &mut GateRegistry, path: &Path) -> Result<()> {
    let text = read_text(path)?;
    let gates = netlist::parse_gate_table(&text)
        .with_context(|| format!("cannot parse gate table {}", path.display()))?;
    for gate in gates {
        registry
            .register(gate)
            .with_context(|| format!("cannot load gate table {}", path.display()))?;
    }
    Ok(())
}

fn parse_assignment(args: &[String]) -> Result<BTreeMap<String, bool>, String> {
    let mut assignment = BTreeMap::new();
    for arg in args {
        for pair in arg.split(',').filter(|p| !p.is_empty()) {
            let (name, value) = pair
                .split_once('=')
                .ok_or_else(|| format!("expected NAME=bit, got `{pair}`"))?;
            let bit = match value.trim() {
                "0" => false,
                "1" => true,
                other => return Err(format!("expected 0 or 1 for `{name}`, got `{other}`")),
            };
            assignment.insert(name.trim().to_ascii_uppercase(), bit);
        }
    }
    Ok(assignment)
}

fn write_output(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(path) => {
            fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
