//! Seeded, reproducible sweeps over subgroup pairs and lemma instances.
//!
//! Pairs are produced sequentially (enumeration order, or a ChaCha8 stream
//! seeded from the config) and evaluated on a rayon pool; results are
//! collected in input order, so output does not depend on the thread count.

pub mod lemmas;

use std::fmt;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::conjugacy::{
    check_faithful_equal_order, check_transitive, kernel_conjugate, Evidence, Exhaustion,
    Hypotheses, PairCheck, PairVerdict,
};
use crate::error::{Error, Result};
use crate::markov::markov_group;
use crate::subgroup::{enumerate_all_subgroups, random_subgroup_with, Subgroup};
use crate::tree::{Depth, KnVector, TreeAutomorphism};

pub use lemmas::{verify_lemma_suite, CheckStatus, CheckSummary};

/// Sweeps run at depth at most this; closures of random subgroups of `W_5`
/// routinely exceed the closure bound.
pub const MAX_SWEEP_DEPTH: u8 = 4;
pub const MAX_EXHAUSTIVE_DEPTH: u8 = 3;
/// Draws allowed per accepted sample before a sampler gives up.
const MAX_DRAWS: usize = 100_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Experiment {
    Theorem,
    Conjecture,
    Lemmas,
}

impl Experiment {
    pub fn name(self) -> &'static str {
        match self {
            Experiment::Theorem => "theorem",
            Experiment::Conjecture => "conjecture",
            Experiment::Lemmas => "lemmas",
        }
    }
}

impl FromStr for Experiment {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "theorem" => Ok(Experiment::Theorem),
            "conjecture" => Ok(Experiment::Conjecture),
            "lemmas" => Ok(Experiment::Lemmas),
            other => Err(Error::Config(format!("unknown experiment {other:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepMode {
    Exhaustive,
    Sampled,
}

impl FromStr for SweepMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exhaustive" => Ok(SweepMode::Exhaustive),
            "sampled" => Ok(SweepMode::Sampled),
            other => Err(Error::Config(format!("unknown mode {other:?}"))),
        }
    }
}

/// Which pairs a sweep visits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairFilter {
    pub require_equal_order: bool,
    pub require_trivial_kernel: bool,
    pub require_transitive: bool,
    /// Restrict `G` to the Markov group of the sweep depth.
    pub markov_target: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub experiment: Experiment,
    pub depth: u8,
    pub mode: SweepMode,
    pub samples: usize,
    pub seed: u64,
    pub filter: PairFilter,
    pub jobs: usize,
}

impl SweepConfig {
    /// Defaults for an experiment: the theorem sweep requires equal orders and
    /// a trivial kernel intersection, the conjecture sweep a transitive element.
    pub fn new(experiment: Experiment, depth: u8) -> SweepConfig {
        let filter = PairFilter {
            require_equal_order: experiment == Experiment::Theorem,
            require_trivial_kernel: experiment == Experiment::Theorem,
            require_transitive: experiment == Experiment::Conjecture,
            markov_target: false,
        };
        SweepConfig {
            experiment,
            depth,
            mode: if depth <= MAX_EXHAUSTIVE_DEPTH {
                SweepMode::Exhaustive
            } else {
                SweepMode::Sampled
            },
            samples: 1000,
            seed: 0,
            filter,
            jobs: 1,
        }
    }

    pub fn validate(&self) -> Result<()> {
        Depth::new(self.depth)?;
        if self.depth > MAX_SWEEP_DEPTH {
            return Err(Error::Config(format!(
                "sweeps support depth <= {MAX_SWEEP_DEPTH}, got {}",
                self.depth
            )));
        }
        if self.mode == SweepMode::Exhaustive && self.depth > MAX_EXHAUSTIVE_DEPTH {
            return Err(Error::TooDeepForEnumeration(self.depth));
        }
        if self.jobs == 0 {
            return Err(Error::Config("jobs must be at least 1".into()));
        }
        Ok(())
    }

    /// Parses `key = value` lines; `#` starts a comment. Keys not given keep
    /// the defaults of [`SweepConfig::new`] for the named experiment.
    pub fn parse(text: &str) -> Result<SweepConfig> {
        let mut pairs = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::Config(format!("line {}: expected key = value", lineno + 1))
            })?;
            pairs.push((key.trim().to_string(), value.trim().to_string()));
        }
        let lookup = |k: &str| pairs.iter().rev().find(|(key, _)| key == k).map(|(_, v)| v);
        let experiment: Experiment = lookup("experiment")
            .ok_or_else(|| Error::Config("missing key experiment".into()))?
            .parse()?;
        let depth: u8 = parse_value("depth", lookup("depth").map(String::as_str).unwrap_or(""))?;
        let mut config = SweepConfig::new(experiment, depth);
        for (key, value) in &pairs {
            match key.as_str() {
                "experiment" | "depth" => {}
                "mode" => config.mode = value.parse()?,
                "samples" => config.samples = parse_value(key, value)?,
                "seed" => config.seed = parse_value(key, value)?,
                "jobs" => config.jobs = parse_value(key, value)?,
                "require_equal_order" => config.filter.require_equal_order = parse_value(key, value)?,
                "require_trivial_kernel" => {
                    config.filter.require_trivial_kernel = parse_value(key, value)?
                }
                "require_transitive" => config.filter.require_transitive = parse_value(key, value)?,
                "markov_target" => config.filter.markov_target = parse_value(key, value)?,
                other => return Err(Error::Config(format!("unknown key {other:?}"))),
            }
        }
        config.validate()?;
        Ok(config)
    }

    pub fn to_text(&self) -> String {
        let mode = match self.mode {
            SweepMode::Exhaustive => "exhaustive",
            SweepMode::Sampled => "sampled",
        };
        format!(
            "experiment = {}\ndepth = {}\nmode = {mode}\nsamples = {}\nseed = {}\njobs = {}\n\
             require_equal_order = {}\nrequire_trivial_kernel = {}\nrequire_transitive = {}\n\
             markov_target = {}\n",
            self.experiment.name(),
            self.depth,
            self.samples,
            self.seed,
            self.jobs,
            self.filter.require_equal_order,
            self.filter.require_trivial_kernel,
            self.filter.require_transitive,
            self.filter.markov_target,
        )
    }

    pub(crate) fn depth_checked(&self) -> Result<Depth> {
        self.validate()?;
        Depth::new(self.depth)
    }

    pub(crate) fn pool(&self) -> Result<rayon::ThreadPool> {
        rayon::ThreadPoolBuilder::new()
            .num_threads(self.jobs)
            .build()
            .map_err(|e| Error::Config(e.to_string()))
    }
}

fn parse_value<T: FromStr>(key: &str, value: &str) -> Result<T> {
    value
        .parse()
        .map_err(|_| Error::Config(format!("bad value {value:?} for {key}")))
}

/// One evaluated pair, as written to a JSONL report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairRecord {
    pub depth: u8,
    pub h_gens: Vec<String>,
    pub g_gens: Vec<String>,
    pub flags: Hypotheses,
    /// `None` when the pair was vacuous and the deciders did not run.
    pub elementwise: Option<bool>,
    pub global: Option<bool>,
    pub p_holds: Option<bool>,
    pub verdict: PairVerdict,
    /// Global conjugator as a kernel bit string.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    /// Element of `H` with no elementwise witness.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub failure_element: Option<String>,
    /// Search space exhausted by a negative global verdict.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exhausted: Option<Exhaustion>,
}

impl PairRecord {
    pub fn new(h: &Subgroup, g: &Subgroup, check: &PairCheck) -> PairRecord {
        let gens = |s: &Subgroup| s.generators().iter().map(|x| x.to_cycle_string()).collect();
        let mut record = PairRecord {
            depth: h.depth().get(),
            h_gens: gens(h),
            g_gens: gens(g),
            flags: Hypotheses::of(h, g),
            elementwise: None,
            global: None,
            p_holds: None,
            verdict: check.verdict,
            witness: None,
            failure_element: None,
            exhausted: None,
        };
        if let Some(report) = &check.report {
            record.elementwise = Some(report.elementwise.verdict);
            record.global = Some(report.global.verdict);
            record.p_holds = Some(report.p_holds);
            match &report.global.evidence {
                Evidence::Conjugator(b) => record.witness = Some(b.bits().to_string()),
                Evidence::Exhausted(e) => record.exhausted = Some(*e),
                _ => {}
            }
            if let Evidence::NoWitness(x) = &report.elementwise.evidence {
                record.failure_element = Some(x.to_cycle_string());
            }
        }
        record
    }

    pub fn subgroups(&self) -> Result<(Subgroup, Subgroup)> {
        let depth = Depth::new(self.depth)?;
        let build = |gens: &[String]| -> Result<Subgroup> {
            let elems = gens
                .iter()
                .map(|g| TreeAutomorphism::parse(depth, g))
                .collect::<Result<Vec<_>>>()?;
            Subgroup::generate(depth, &elems)
        };
        Ok((build(&self.h_gens)?, build(&self.g_gens)?))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictCounts {
    #[serde(rename = "P_HOLDS")]
    pub p_holds: usize,
    #[serde(rename = "COUNTEREXAMPLE")]
    pub counterexample: usize,
    #[serde(rename = "VACUOUS")]
    pub vacuous: usize,
}

impl VerdictCounts {
    pub fn add(&mut self, verdict: PairVerdict) {
        match verdict {
            PairVerdict::PHolds => self.p_holds += 1,
            PairVerdict::Counterexample => self.counterexample += 1,
            PairVerdict::Vacuous => self.vacuous += 1,
        }
    }

    pub fn total(&self) -> usize {
        self.p_holds + self.counterexample + self.vacuous
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SweepReport {
    pub config: SweepConfig,
    pub counts: VerdictCounts,
    pub records: Vec<PairRecord>,
    pub checks: Vec<CheckSummary>,
    pub wall_time_ms: u64,
}

/// A line of a JSONL report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ReportLine {
    Header {
        config: SweepConfig,
        counts: VerdictCounts,
    },
    Pair(PairRecord),
    Check(CheckSummary),
}

#[derive(Serialize)]
struct Summary<'a> {
    config: &'a SweepConfig,
    counts: &'a VerdictCounts,
    checks: Vec<(&'a str, CheckStatus)>,
    counterexamples: usize,
    wall_time_ms: u64,
}

impl SweepReport {
    pub fn counterexamples(&self) -> impl Iterator<Item = &PairRecord> {
        self.records
            .iter()
            .filter(|r| r.verdict == PairVerdict::Counterexample)
    }

    pub fn has_counterexample(&self) -> bool {
        self.counts.counterexample > 0
    }

    /// Header line, then one line per pair record and per check. Contains no
    /// timing, so equal configs give equal bytes.
    pub fn to_jsonl(&self) -> String {
        let mut out = String::new();
        let mut push = |line: &ReportLine| {
            out.push_str(&serde_json::to_string(line).expect("plain data serializes"));
            out.push('\n');
        };
        push(&ReportLine::Header {
            config: self.config.clone(),
            counts: self.counts,
        });
        for r in &self.records {
            push(&ReportLine::Pair(r.clone()));
        }
        for c in &self.checks {
            push(&ReportLine::Check(c.clone()));
        }
        out
    }

    pub fn summary_json(&self) -> String {
        let summary = Summary {
            config: &self.config,
            counts: &self.counts,
            checks: self.checks.iter().map(|c| (c.name.as_str(), c.status)).collect(),
            counterexamples: self.counts.counterexample,
            wall_time_ms: self.wall_time_ms,
        };
        serde_json::to_string_pretty(&summary).expect("plain data serializes")
    }

    /// Writes `<root>/<experiment>/<timestamp>-<seed>.jsonl` and
    /// `<root>/<experiment>/summary.json`; returns the JSONL path.
    pub fn write_to(&self, root: &Path, timestamp: u64) -> Result<PathBuf> {
        let dir = root.join(self.config.experiment.name());
        std::fs::create_dir_all(&dir)?;
        let path = dir.join(format!("{timestamp}-{}.jsonl", self.config.seed));
        std::fs::File::create(&path)?.write_all(self.to_jsonl().as_bytes())?;
        std::fs::write(dir.join("summary.json"), self.summary_json() + "\n")?;
        Ok(path)
    }
}

impl fmt::Display for SweepReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = &self.config;
        writeln!(
            f,
            "{} sweep  depth={} mode={:?} seed={} jobs={}",
            c.experiment.name(),
            c.depth,
            c.mode,
            c.seed,
            c.jobs
        )?;
        writeln!(
            f,
            "P_HOLDS={} COUNTEREXAMPLE={} VACUOUS={}  ({} ms)",
            self.counts.p_holds, self.counts.counterexample, self.counts.vacuous, self.wall_time_ms
        )?;
        for check in &self.checks {
            writeln!(f, "  {check}")?;
        }
        for r in self.counterexamples() {
            writeln!(
                f,
                "  counterexample: H=<{}> G=<{}>",
                r.h_gens.join(","),
                r.g_gens.join(",")
            )?;
        }
        Ok(())
    }
}

/// Smallest sorted element list among the `K_n`-conjugates of `h`.
pub fn kernel_canonical_form(h: &Subgroup) -> Vec<TreeAutomorphism> {
    KnVector::all(h.depth())
        .map(|b| {
            let mut elems: Vec<_> = h.elements().iter().map(|x| kernel_conjugate(x, &b)).collect();
            elems.sort_unstable();
            elems
        })
        .min()
        .expect("K_n is nonempty")
}

/// One subgroup per `K_n`-conjugacy class: those equal to their own
/// canonical form. Input order is kept.
pub fn kernel_class_representatives<'a>(subgroups: &[&'a Subgroup]) -> Vec<&'a Subgroup> {
    subgroups
        .iter()
        .copied()
        .filter(|h| kernel_canonical_form(h) == h.elements())
        .collect()
}

fn pair_check(experiment: Experiment, h: &Subgroup, g: &Subgroup) -> Result<PairCheck> {
    match experiment {
        Experiment::Theorem => check_faithful_equal_order(h, g),
        Experiment::Conjecture => check_transitive(h, g),
        Experiment::Lemmas => Err(Error::Config("lemma suite has no pair check".into())),
    }
}

fn h_admissible(filter: &PairFilter, h: &Subgroup) -> bool {
    (!filter.require_trivial_kernel || h.has_trivial_kernel_intersection())
        && (!filter.require_transitive || h.contains_transitive())
}

fn exhaustive_pairs(config: &SweepConfig, depth: Depth) -> Result<Vec<(Subgroup, Subgroup)>> {
    let all = enumerate_all_subgroups(depth)?;
    let candidates: Vec<&Subgroup> = all.iter().filter(|h| h_admissible(&config.filter, h)).collect();
    let reps = kernel_class_representatives(&candidates);
    let targets: Vec<Subgroup> = if config.filter.markov_target {
        vec![markov_target(depth)?]
    } else {
        all.clone()
    };
    let mut pairs = Vec::new();
    for h in reps {
        for g in &targets {
            if !config.filter.require_equal_order || g.order() == h.order() {
                pairs.push((h.clone(), g.clone()));
            }
        }
    }
    Ok(pairs)
}

fn markov_target(depth: Depth) -> Result<Subgroup> {
    markov_group(depth)?
        .group
        .ok_or(Error::ClosureBound(crate::subgroup::DEFAULT_CLOSURE_BOUND))
}

/// A random subgroup with 1 to 3 generators, the first transitive when
/// asked. `None` when the closure passes `bound`.
fn draw_subgroup(
    depth: Depth,
    transitive: bool,
    bound: usize,
    rng: &mut ChaCha8Rng,
) -> Result<Option<Subgroup>> {
    let count = rng.gen_range(1..=3usize);
    let mut gens = Vec::with_capacity(count);
    if transitive {
        gens.push(TreeAutomorphism::random_transitive(depth, rng));
    }
    while gens.len() < count {
        gens.push(TreeAutomorphism::random(depth, rng));
    }
    match Subgroup::generate_bounded(depth, &gens, bound) {
        Ok(s) => Ok(Some(s)),
        Err(Error::ClosureBound(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

/// `<h_i^{a_i}>` over the generators of `h` with independent random `a_i`;
/// falls back to a conjugate of `h` when equal order is required and not
/// reached within a few draws.
fn twisted_copy(h: &Subgroup, equal_order: bool, rng: &mut ChaCha8Rng) -> Result<Subgroup> {
    let depth = h.depth();
    let random_kernel = |rng: &mut ChaCha8Rng| {
        let bits = rng.gen::<u64>() & ((1u64 << depth.kernel_rank()) - 1);
        KnVector::new(depth, crate::f2::F2Vector::from_bits(depth.kernel_rank(), bits))
            .expect("length 2^(n-1)")
    };
    for _ in 0..16 {
        let gens: Vec<_> = h
            .generators()
            .iter()
            .map(|x| kernel_conjugate(x, &random_kernel(rng)))
            .collect();
        let g = Subgroup::generate(depth, &gens)?;
        if !equal_order || g.order() == h.order() {
            return Ok(g);
        }
    }
    h.conjugate_by(&random_kernel(rng).to_automorphism())
}

fn sampled_pairs(config: &SweepConfig, depth: Depth) -> Result<Vec<(Subgroup, Subgroup)>> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let filter = &config.filter;
    let markov = if filter.markov_target {
        Some(markov_target(depth)?)
    } else {
        None
    };
    // A subgroup meeting K_n trivially embeds in W_{n-1}.
    let bound = if filter.require_trivial_kernel {
        1usize << (depth.leaves() / 2 - 1)
    } else {
        crate::subgroup::DEFAULT_CLOSURE_BOUND
    };
    let mut pairs = Vec::with_capacity(config.samples);
    for _ in 0..config.samples {
        let mut h = None;
        for _ in 0..MAX_DRAWS {
            if let Some(candidate) = draw_subgroup(depth, filter.require_transitive, bound, &mut rng)? {
                if h_admissible(filter, &candidate) {
                    h = Some(candidate);
                    break;
                }
            }
        }
        let h = h.ok_or_else(|| Error::Config("no admissible H found within the draw limit".into()))?;
        let g = if let Some(m) = &markov {
            m.clone()
        } else if filter.require_equal_order {
            twisted_copy(&h, true, &mut rng)?
        } else {
            match rng.gen_range(0..3u8) {
                0 => markov_target(depth)?,
                1 => twisted_copy(&h, false, &mut rng)?,
                _ => random_subgroup_with(depth, 3, &mut rng)?,
            }
        };
        pairs.push((h, g));
    }
    Ok(pairs)
}

/// The pairs a theorem or conjecture sweep will visit, in order.
pub fn sweep_pairs(config: &SweepConfig) -> Result<Vec<(Subgroup, Subgroup)>> {
    let depth = config.depth_checked()?;
    match config.mode {
        SweepMode::Exhaustive => exhaustive_pairs(config, depth),
        SweepMode::Sampled => sampled_pairs(config, depth),
    }
}

fn run_pair_sweep(config: &SweepConfig) -> Result<SweepReport> {
    let start = Instant::now();
    let pairs = sweep_pairs(config)?;
    let pool = config.pool()?;
    let experiment = config.experiment;
    let records: Vec<PairRecord> = pool.install(|| {
        pairs
            .par_iter()
            .map(|(h, g)| pair_check(experiment, h, g).map(|c| PairRecord::new(h, g, &c)))
            .collect::<Result<Vec<_>>>()
    })?;
    let mut counts = VerdictCounts::default();
    for r in &records {
        counts.add(r.verdict);
    }
    Ok(SweepReport {
        config: config.clone(),
        counts,
        records,
        checks: Vec::new(),
        wall_time_ms: start.elapsed().as_millis() as u64,
    })
}

/// Pairs with `|H| = |G|` and `H ∩ K_n = {id}`: elementwise conjugacy must
/// give global conjugacy.
pub fn sweep_theorem(config: &SweepConfig) -> Result<SweepReport> {
    if config.experiment != Experiment::Theorem {
        return Err(Error::Config("config is not for the theorem sweep".into()));
    }
    run_pair_sweep(config)
}

/// Pairs whose `H` contains a transitive element.
pub fn sweep_conjecture(config: &SweepConfig) -> Result<SweepReport> {
    if config.experiment != Experiment::Conjecture {
        return Err(Error::Config("config is not for the conjecture sweep".into()));
    }
    run_pair_sweep(config)
}

pub fn run_sweep(config: &SweepConfig) -> Result<SweepReport> {
    match config.experiment {
        Experiment::Theorem => sweep_theorem(config),
        Experiment::Conjecture => sweep_conjecture(config),
        Experiment::Lemmas => verify_lemma_suite(config),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ReplayOutcome {
    Match,
    Mismatch(Vec<String>),
}

/// Rebuilds the pair, re-runs the check the record's flags call for, and
/// compares every recorded field. A recorded global witness is re-verified
/// by direct conjugation.
pub fn replay(record: &PairRecord) -> Result<ReplayOutcome> {
    let (h, g) = record.subgroups()?;
    let experiment = if record.flags.faithful_equal_order() {
        Experiment::Theorem
    } else {
        Experiment::Conjecture
    };
    let fresh = PairRecord::new(&h, &g, &pair_check(experiment, &h, &g)?);
    let mut problems = Vec::new();
    if fresh.flags != record.flags {
        problems.push("hypothesis flags differ".to_string());
    }
    for (name, old, new) in [
        ("elementwise", record.elementwise, fresh.elementwise),
        ("global", record.global, fresh.global),
        ("p_holds", record.p_holds, fresh.p_holds),
    ] {
        if old.is_some() && old != new {
            problems.push(format!("{name}: recorded {old:?}, recomputed {new:?}"));
        }
    }
    if record.verdict != PairVerdict::Vacuous && record.verdict != fresh.verdict {
        problems.push(format!(
            "verdict: recorded {:?}, recomputed {:?}",
            record.verdict, fresh.verdict
        ));
    }
    if let Some(w) = &record.witness {
        let bits = w
            .parse()
            .map_err(|_| Error::Record(format!("bad witness {w:?}")))?;
        let b = KnVector::new(h.depth(), bits)?;
        if !h
            .generators()
            .iter()
            .all(|x| g.contains(&kernel_conjugate(x, &b)))
        {
            problems.push(format!("witness {w} does not conjugate H into G"));
        }
    }
    if let Some(x) = &record.failure_element {
        let x = TreeAutomorphism::parse(h.depth(), x)?;
        if !h.contains(&x) || KnVector::all(h.depth()).any(|u| g.contains(&kernel_conjugate(&x, &u)))
        {
            problems.push(format!("failure element {x} has a witness"));
        }
    }
    Ok(if problems.is_empty() {
        ReplayOutcome::Match
    } else {
        ReplayOutcome::Mismatch(problems)
    })
}

/// Reads pair records from a JSONL report, skipping header and check lines.
pub fn read_pair_records(text: &str) -> Result<Vec<PairRecord>> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let parsed: ReportLine = match serde_json::from_str(line) {
            Ok(l) => l,
            Err(_) => ReportLine::Pair(
                serde_json::from_str(line)
                    .map_err(|e| Error::Record(format!("line {}: {e}", i + 1)))?,
            ),
        };
        if let ReportLine::Pair(r) = parsed {
            out.push(r);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conjugacy::property_p;

    #[test]
    fn config_round_trip() {
        let mut c = SweepConfig::new(Experiment::Conjecture, 4);
        c.seed = 7;
        c.jobs = 3;
        c.filter.markov_target = true;
        assert_eq!(c.mode, SweepMode::Sampled);
        assert_eq!(SweepConfig::parse(&c.to_text()).unwrap(), c);
        let text = "# comment\nexperiment = theorem\ndepth = 2\nseed = 5 # trailing\n";
        let parsed = SweepConfig::parse(text).unwrap();
        assert_eq!(parsed.seed, 5);
        assert!(parsed.filter.require_trivial_kernel);
        assert!(SweepConfig::parse("experiment = theorem\ndepth = 4\nmode = exhaustive").is_err());
        assert!(SweepConfig::parse("experiment = theorem\ndepth = 2\ncolour = red").is_err());
        assert!(SweepConfig::parse("depth = 2").is_err());
    }

    #[test]
    fn kernel_conjugation_does_not_change_verdicts() {
        let d2 = Depth::new(2).unwrap();
        let all = enumerate_all_subgroups(d2).unwrap();
        for h in &all {
            for g in &all {
                let base = property_p(h, g).unwrap();
                for b in KnVector::all(d2) {
                    let hb = h.conjugate_by(&b.to_automorphism()).unwrap();
                    assert_eq!(kernel_canonical_form(&hb), kernel_canonical_form(h));
                    let r = property_p(&hb, g).unwrap();
                    assert_eq!(
                        (r.is_elementwise(), r.is_global()),
                        (base.is_elementwise(), base.is_global())
                    );
                }
            }
        }
    }

    #[test]
    fn small_sweeps() {
        for experiment in [Experiment::Theorem, Experiment::Conjecture] {
            let report = run_sweep(&SweepConfig::new(experiment, 2)).unwrap();
            assert_eq!(report.counts.counterexample, 0);
            assert!(report.counts.p_holds > 0);
        }
    }

    #[test]
    fn replay_detects_tampering() {
        let report = run_sweep(&SweepConfig::new(Experiment::Theorem, 2)).unwrap();
        let record = report
            .records
            .iter()
            .find(|r| r.witness.as_deref().is_some_and(|w| w != "00"))
            .expect("a nonzero global witness")
            .clone();
        assert_eq!(replay(&record).unwrap(), ReplayOutcome::Match);
        let line = serde_json::to_string(&record).unwrap();
        let back: PairRecord = serde_json::from_str(&line).unwrap();
        assert_eq!(back, record);
        let mut tampered = record.clone();
        tampered.witness = Some("00".into());
        assert!(matches!(replay(&tampered).unwrap(), ReplayOutcome::Mismatch(_)));
        let mut flipped = record;
        flipped.global = Some(false);
        assert!(matches!(replay(&flipped).unwrap(), ReplayOutcome::Mismatch(_)));
    }

    #[test]
    fn jsonl_reads_back() {
        let report = run_sweep(&SweepConfig::new(Experiment::Conjecture, 2)).unwrap();
        let records = read_pair_records(&report.to_jsonl()).unwrap();
        assert_eq!(records, report.records);
    }
}
