use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use treeconj_core::conjugacy::{PairCheck, PairVerdict};
use treeconj_core::harness::{
    read_pair_records, replay, run_sweep, Experiment, ReplayOutcome, SweepConfig, SweepMode,
};
use treeconj_core::notation::format_generator_list;
use treeconj_core::subgroup::{centralizer_in_kernel, Subgroup};
use treeconj_core::{markov_group, property_p, Depth, PairRecord, TreeAutomorphism};

const EXIT_COUNTEREXAMPLE: u8 = 2;

#[derive(Parser)]
#[command(name = "treeconj", version, about = "Kernel conjugacy of subgroups of binary tree automorphism groups")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Tree depth.
    #[arg(long = "n", global = true)]
    depth: Option<u8>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, default_value_t = 1000)]
    samples: usize,
    /// Worker threads for sweeps.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// File for machine records; for sweeps, the report root directory.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Jsonl,
}

#[derive(Subcommand)]
enum Command {
    /// Parse, convert and combine elements.
    Elem {
        /// Element in cycle, image-list or portrait-hex form.
        x: String,
        /// Second operand for binary operations.
        y: Option<String>,
        #[arg(long, value_enum, default_value_t = ElemOp::Show)]
        op: ElemOp,
    },
    /// Subgroup closure and structure.
    Group {
        #[arg(long)]
        gens: String,
        #[arg(long, value_enum, default_value_t = Show::Summary)]
        show: Show,
    },
    /// Elementwise and global kernel conjugacy of H into G.
    Conj {
        #[arg(long = "H")]
        h: String,
        #[arg(long = "G")]
        g: String,
    },
    /// The Markov group M_n.
    Markov,
    /// Run a sweep.
    Sweep {
        #[arg(value_enum)]
        experiment: ExperimentArg,
        #[arg(long)]
        exhaustive: bool,
        /// Restrict G to the Markov group.
        #[arg(long)]
        markov: bool,
        /// Key-value config file; flags given on the command line are ignored
        /// when this is set.
        #[arg(long)]
        config: Option<PathBuf>,
    },
    /// Re-run the pairs stored in a JSONL report.
    Replay { file: PathBuf },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ElemOp {
    Show,
    Multiply,
    Inverse,
    Conjugate,
    Commutator,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Show {
    Summary,
    Order,
    Elements,
    Frattini,
    Maximals,
    Centralizer,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ExperimentArg {
    Theorem,
    Conjecture,
    Lemmas,
}

impl Common {
    fn depth(&self) -> Result<Depth> {
        let n = self.depth.ok_or_else(|| anyhow!("--n is required"))?;
        Ok(Depth::new(n)?)
    }

    /// Prints text, or the machine lines when `--format jsonl`; machine lines
    /// also go to `--out` when given.
    fn emit(&self, text: &str, lines: &[serde_json::Value]) -> Result<()> {
        let machine: String = lines.iter().map(|l| format!("{l}\n")).collect();
        match self.format {
            Format::Text => print!("{text}"),
            Format::Jsonl => print!("{machine}"),
        }
        if let Some(path) = &self.out {
            std::fs::write(path, machine).with_context(|| format!("writing {}", path.display()))?;
        }
        Ok(())
    }
}

fn element_json(x: &TreeAutomorphism) -> serde_json::Value {
    let (v, s) = x.semidirect();
    json!({
        "depth": x.depth().get(),
        "cycles": x.to_cycle_string(),
        "list": x.to_list_string(),
        "portrait": x.to_portrait_hex(),
        "order": x.order(),
        "v": v.to_string(),
        "s": s.to_cycle_string(),
    })
}

fn elem(common: &Common, x: &str, y: Option<&str>, op: ElemOp) -> Result<u8> {
    let depth = common.depth()?;
    let x = TreeAutomorphism::parse(depth, x)?;
    let y = y.map(|s| TreeAutomorphism::parse(depth, s)).transpose()?;
    let need_y = || y.ok_or_else(|| anyhow!("this operation needs a second element"));
    let result = match op {
        ElemOp::Show => x,
        ElemOp::Multiply => x.multiply(&need_y()?)?,
        ElemOp::Inverse => x.inverse(),
        ElemOp::Conjugate => x.conjugate_by(&need_y()?)?,
        ElemOp::Commutator => x.commutator(&need_y()?),
    };
    let (v, s) = result.semidirect();
    let text = format!(
        "cycles    {}\nlist      {}\nportrait  {}\norder     {}\n(v, s)    ({}, {})\n",
        result.to_cycle_string(),
        result.to_list_string(),
        result.to_portrait_hex(),
        result.order(),
        v,
        s.to_cycle_string()
    );
    common.emit(&text, &[element_json(&result)])?;
    Ok(0)
}

fn group(common: &Common, gens: &str, show: Show) -> Result<u8> {
    let depth = common.depth()?;
    let g = Subgroup::parse(depth, gens)?;
    let listing = |s: &Subgroup| s.elements().iter().map(|x| x.to_cycle_string()).collect::<Vec<_>>();
    let (text, value) = match show {
        Show::Order => (format!("{}\n", g.order()), json!({ "order": g.order() })),
        Show::Elements => {
            let elems = listing(&g);
            (elems.join("\n") + "\n", json!({ "elements": elems }))
        }
        Show::Frattini => {
            let f = g.frattini();
            (
                format!(
                    "order {}  quotient rank {}\n<{}>\n",
                    f.phi.order(),
                    f.quotient_rank,
                    f.phi.generator_string()
                ),
                json!({
                    "order": f.phi.order(),
                    "quotient_rank": f.quotient_rank,
                    "generators": f.phi.generator_string(),
                }),
            )
        }
        Show::Maximals => {
            let maximals = g.maximal_subgroups()?;
            let text: String = maximals
                .iter()
                .map(|m| format!("order {}  <{}>\n", m.order(), m.generator_string()))
                .collect();
            let list: Vec<_> = maximals.iter().map(|m| m.generator_string()).collect();
            (text, json!({ "maximal_subgroups": list }))
        }
        Show::Centralizer => {
            let c = centralizer_in_kernel(depth, g.generators())?;
            let basis: Vec<_> = c.generators().iter().map(|x| x.to_cycle_string()).collect();
            (
                format!("order {}  <{}>\n", c.order(), format_generator_list(c.generators())),
                json!({ "order": c.order(), "generators": basis }),
            )
        }
        Show::Summary => {
            let record = g.to_record();
            let f = g.frattini();
            (
                format!(
                    "order                       {}\ntrivial kernel intersection {}\ntransitive element          {}\ncyclic                      {}\nfrattini order              {}\n",
                    record.order,
                    record.trivial_kernel_intersection,
                    record.transitive_element,
                    g.is_cyclic(),
                    f.phi.order()
                ),
                serde_json::to_value(&record)?,
            )
        }
    };
    common.emit(&text, &[value])?;
    Ok(0)
}

fn conj(common: &Common, h: &str, g: &str) -> Result<u8> {
    let depth = common.depth()?;
    let h = Subgroup::parse(depth, h)?;
    let g = Subgroup::parse(depth, g)?;
    let report = property_p(&h, &g)?;
    let verdict = if report.p_holds {
        PairVerdict::PHolds
    } else {
        PairVerdict::Counterexample
    };
    let witness = report
        .global
        .global_witness()
        .map(|b| b.to_automorphism().to_cycle_string());
    let record = PairRecord::new(
        &h,
        &g,
        &PairCheck {
            verdict,
            report: Some(report.clone()),
        },
    );
    let mut text = format!(
        "elementwise {}\nglobal      {}\np_holds     {}\n",
        report.is_elementwise(),
        report.is_global(),
        report.p_holds
    );
    if let Some(w) = &witness {
        text.push_str(&format!("witness     {w}\n"));
    }
    common.emit(&text, &[serde_json::to_value(&record)?])?;
    Ok(if report.p_holds { 0 } else { EXIT_COUNTEREXAMPLE })
}

fn markov(common: &Common) -> Result<u8> {
    let depth = common.depth()?;
    let spec = markov_group(depth)?;
    let gens: Vec<_> = spec.generators.iter().map(|x| x.to_cycle_string()).collect();
    let order = spec.order();
    let text = format!(
        "generators {}\norder      {}\n",
        gens.join(","),
        order.map_or("unknown (closure bound exceeded)".to_string(), |o| o.to_string())
    );
    common.emit(
        &text,
        &[json!({ "depth": depth.get(), "generators": gens, "order": order })],
    )?;
    Ok(0)
}

fn sweep(
    common: &Common,
    experiment: ExperimentArg,
    exhaustive: bool,
    markov: bool,
    config_path: Option<&PathBuf>,
) -> Result<u8> {
    let config = match config_path {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("reading {}", path.display()))?;
            SweepConfig::parse(&text)?
        }
        None => {
            let experiment = match experiment {
                ExperimentArg::Theorem => Experiment::Theorem,
                ExperimentArg::Conjecture => Experiment::Conjecture,
                ExperimentArg::Lemmas => Experiment::Lemmas,
            };
            let mut c = SweepConfig::new(experiment, common.depth()?.get());
            c.seed = common.seed;
            c.samples = common.samples;
            c.jobs = common.jobs;
            c.filter.markov_target = markov;
            if exhaustive {
                c.mode = SweepMode::Exhaustive;
            }
            c.validate()?;
            c
        }
    };
    let report = run_sweep(&config)?;
    match common.format {
        Format::Text => print!("{report}"),
        Format::Jsonl => print!("{}", report.to_jsonl()),
    }
    if let Some(root) = &common.out {
        let stamp = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        let path = report.write_to(root, stamp)?;
        eprintln!("report written to {}", path.display());
    }
    Ok(if report.has_counterexample() {
        EXIT_COUNTEREXAMPLE
    } else {
        0
    })
}

fn replay_file(common: &Common, file: &PathBuf) -> Result<u8> {
    let text =
        std::fs::read_to_string(file).with_context(|| format!("reading {}", file.display()))?;
    let records = read_pair_records(&text)?;
    if records.is_empty() {
        bail!("no pair records in {}", file.display());
    }
    let mut mismatches = 0;
    let mut counterexamples = 0;
    let mut lines = Vec::new();
    let mut out = String::new();
    for (i, record) in records.iter().enumerate() {
        let outcome = replay(record)?;
        if record.verdict == PairVerdict::Counterexample {
            counterexamples += 1;
        }
        let (status, problems) = match &outcome {
            ReplayOutcome::Match => ("match", Vec::new()),
            ReplayOutcome::Mismatch(p) => {
                mismatches += 1;
                ("mismatch", p.clone())
            }
        };
        out.push_str(&format!("record {}: {status}\n", i + 1));
        for p in &problems {
            out.push_str(&format!("  {p}\n"));
        }
        lines.push(json!({ "record": i + 1, "outcome": status, "problems": problems }));
    }
    out.push_str(&format!(
        "{} records, {mismatches} mismatches\n",
        records.len()
    ));
    common.emit(&out, &lines)?;
    Ok(if mismatches > 0 {
        1
    } else if counterexamples > 0 {
        EXIT_COUNTEREXAMPLE
    } else {
        0
    })
}

fn run(cli: &Cli) -> Result<u8> {
    let common = &cli.common;
    match &cli.command {
        Command::Elem { x, y, op } => elem(common, x, y.as_deref(), *op),
        Command::Group { gens, show } => group(common, gens, *show),
        Command::Conj { h, g } => conj(common, h, g),
        Command::Markov => markov(common),
        Command::Sweep {
            experiment,
            exhaustive,
            markov,
            config,
        } => sweep(common, *experiment, *exhaustive, *markov, config.as_ref()),
        Command::Replay { file } => replay_file(common, file),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
