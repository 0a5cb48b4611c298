//! Instance checks for the auxiliary lemmas and propositions.
//!
//! Each check counts hypothesis-satisfying instances and violations. A check
//! with no instances at the given depth reports `Vacuous`, never `Pass`.

use std::collections::HashMap;
use std::fmt;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{sampled_pairs, Experiment, SweepConfig, SweepReport, VerdictCounts};
use crate::conjugacy::criteria::{
    centralizer_product_criterion, coset_constant_subspace, orbit_condition_check,
    solve_twisted_witness, twisted_condition_check, twisted_conjugation_residual,
    ConditionVerdict, CriterionOutcome,
};
use crate::conjugacy::{is_elementwise_conjugate, is_globally_conjugate, kernel_conjugate, Evidence};
use crate::error::{Error, Result};
use crate::f2::{self, fix_subspace, fix_subspace_of_set, F2AffineSet, F2Vector};
use crate::subgroup::{enumerate_all_subgroups, kernel_centralizer_space, random_subgroup_with, Subgroup};
use crate::tree::{Depth, KnVector, TreeAutomorphism};

pub const KERNEL_TRANSFER: &str = "kernel_transfer";
pub const SUBGROUP_TRANSFER: &str = "subgroup_transfer";
pub const MAXIMAL_PAIR_GENERATION: &str = "maximal_pair_generation";
pub const CENTRALIZER_PRODUCT: &str = "centralizer_product";
pub const CONJUGATOR_CENTRALIZES_FRATTINI: &str = "conjugator_centralizes_frattini";
pub const KERNEL_CENTRALIZER_EQUIVALENCE: &str = "kernel_centralizer_equivalence";
pub const PROJECTION_FRATTINI: &str = "projection_frattini";
pub const TWISTED_RESIDUAL: &str = "twisted_residual";
pub const ORBIT_CONDITIONS: &str = "orbit_conditions";
pub const TWISTED_CONDITIONS: &str = "twisted_conditions";
pub const TWISTED_CONDITIONS_HARVESTED: &str = "twisted_conditions_harvested";
pub const COSET_CONSTANT_SUBSPACE: &str = "coset_constant_subspace";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum CheckStatus {
    Pass,
    Fail,
    Vacuous,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckSummary {
    pub name: String,
    pub instances: usize,
    pub violations: usize,
    /// Candidates examined whose hypotheses failed.
    pub skipped: usize,
    pub status: CheckStatus,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub first_violation: Option<String>,
}

impl fmt::Display for CheckSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:<32} {:?}  instances={} violations={} skipped={}",
            self.name, self.status, self.instances, self.violations, self.skipped
        )?;
        if let Some(v) = &self.first_violation {
            write!(f, "  first: {v}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default)]
struct Tally {
    instances: usize,
    violations: usize,
    skipped: usize,
    first: Option<String>,
}

impl Tally {
    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.instances += 1;
        if !ok {
            self.violations += 1;
            if self.first.is_none() {
                self.first = Some(describe());
            }
        }
    }

    fn merge(&mut self, other: Tally) {
        self.instances += other.instances;
        self.violations += other.violations;
        self.skipped += other.skipped;
        if self.first.is_none() {
            self.first = other.first;
        }
    }

    fn summary(self, name: &str) -> CheckSummary {
        let status = if self.violations > 0 {
            CheckStatus::Fail
        } else if self.instances == 0 {
            CheckStatus::Vacuous
        } else {
            CheckStatus::Pass
        };
        CheckSummary {
            name: name.to_string(),
            instances: self.instances,
            violations: self.violations,
            skipped: self.skipped,
            status,
            first_violation: self.first,
        }
    }
}

fn gens(s: &Subgroup) -> String {
    format!("<{}>", s.generator_string())
}

fn random_kernel(depth: Depth, rng: &mut ChaCha8Rng) -> KnVector {
    let r = depth.kernel_rank();
    let bits = rng.gen::<u64>() & ((1u64 << r) - 1);
    KnVector::new(depth, F2Vector::from_bits(r, bits)).expect("length 2^(n-1)")
}

/// Kernel elements `b` with `S^b <= G`, in increasing order.
fn conjugators_into(s: &Subgroup, g: &Subgroup) -> Vec<KnVector> {
    KnVector::all(s.depth())
        .filter(|b| s.generators().iter().all(|x| g.contains(&kernel_conjugate(x, b))))
        .collect()
}

fn conjugate_subgroup(s: &Subgroup, b: &KnVector) -> Subgroup {
    s.conjugate_by(&b.to_automorphism()).expect("same depth")
}

/// Subgroups of `h` to try: all of them when the full list is at hand,
/// otherwise the cyclic and maximal ones.
fn subgroups_of(h: &Subgroup, all: Option<&[Subgroup]>) -> Vec<Subgroup> {
    match all {
        Some(list) => list.iter().filter(|s| s.is_subgroup_of(h)).cloned().collect(),
        None => {
            let mut out: Vec<Subgroup> = Vec::new();
            for x in h.elements() {
                let c = Subgroup::generate(h.depth(), &[*x]).expect("cyclic subgroup");
                if !out.contains(&c) {
                    out.push(c);
                }
            }
            if let Ok(max) = h.maximal_subgroups() {
                out.extend(max);
            }
            out
        }
    }
}

/// Tallies of the pair-based checks for one `(H, G)`.
#[derive(Default)]
struct PairTallies {
    kernel_transfer: Tally,
    subgroup_transfer: Tally,
    maximal_pair: Tally,
    centralizer_product: Tally,
    centralizes_frattini: Tally,
    residual: Tally,
    harvested: Tally,
}

impl PairTallies {
    fn merge(&mut self, o: PairTallies) {
        self.kernel_transfer.merge(o.kernel_transfer);
        self.subgroup_transfer.merge(o.subgroup_transfer);
        self.maximal_pair.merge(o.maximal_pair);
        self.centralizer_product.merge(o.centralizer_product);
        self.centralizes_frattini.merge(o.centralizes_frattini);
        self.residual.merge(o.residual);
        self.harvested.merge(o.harvested);
    }
}

/// Checks that take a pair `(H, G)` with `|H| = |G|` and `H ∩ K_n = {id}`.
fn pair_checks(h: &Subgroup, g: &Subgroup, all: Option<&[Subgroup]>) -> Result<PairTallies> {
    let mut t = PairTallies::default();
    let faithful = h.has_trivial_kernel_intersection() && h.order() == g.order();
    let cert = is_elementwise_conjugate(h, g)?;
    if !faithful || !cert.verdict {
        t.kernel_transfer.skipped += 1;
        t.subgroup_transfer.skipped += 1;
        return Ok(t);
    }
    let pair = || format!("H={} G={}", gens(h), gens(g));

    t.kernel_transfer
        .record(g.has_trivial_kernel_intersection(), pair);

    let Evidence::PerElement(witnesses) = &cert.evidence else {
        unreachable!("positive elementwise certificate")
    };
    let witness: HashMap<_, _> = witnesses.iter().copied().collect();
    for h1 in subgroups_of(h, all) {
        let conj: Vec<_> = h1
            .elements()
            .iter()
            .map(|x| kernel_conjugate(x, &witness[x]))
            .collect();
        let g1 = Subgroup::generate(h.depth(), &conj)?;
        let ok = g1.order() == h1.order()
            && g1.is_subgroup_of(g)
            && is_elementwise_conjugate(&h1, &g1)?.verdict;
        t.subgroup_transfer
            .record(ok, || format!("{} H1={}", pair(), gens(&h1)));
    }

    if h.is_cyclic() || g.is_cyclic() {
        return Ok(t);
    }
    let depth = h.depth();
    let maximals = h.maximal_subgroups()?;
    let phi_h = h.frattini().phi;
    let centralizer = kernel_centralizer_space(depth, phi_h.generators())?;
    let mut global_cache: HashMap<KnVector, bool> = HashMap::new();
    for (i, h1) in maximals.iter().enumerate() {
        for (j, h2) in maximals.iter().enumerate() {
            if i == j {
                continue;
            }
            let into1 = conjugators_into(h1, g);
            let into2 = conjugators_into(h2, g);
            if let (Some(a), Some(b)) = (into1.first(), into2.first()) {
                let mut both = conjugate_subgroup(h1, a).generators().to_vec();
                both.extend(conjugate_subgroup(h2, b).generators().iter().copied());
                let ok = Subgroup::generate(depth, &both)? == *g;
                t.maximal_pair.record(ok, || {
                    format!("{} H1={} H2={}", pair(), gens(h1), gens(h2))
                });
            }
            let Some(c) = into1.first() else { continue };
            // G' = G^c contains H1.
            let g_shift = conjugate_subgroup(g, c);
            let mut harvested = false;
            for a in conjugators_into(h2, &g_shift) {
                let mut both = h1.generators().to_vec();
                both.extend(conjugate_subgroup(h2, &a).generators().iter().copied());
                if Subgroup::generate(depth, &both)? != g_shift {
                    continue;
                }
                let describe = || format!("{} H1={} H2={} a={}", pair(), gens(h1), gens(h2), a.bits());
                t.centralizes_frattini
                    .record(centralizer.contains(a.bits()), describe);
                let global = *global_cache
                    .entry(*c)
                    .or_insert_with(|| is_globally_conjugate(h, &g_shift).map(|c| c.verdict).unwrap_or(false));
                match centralizer_product_criterion(h, &g_shift, h1, h2, &a)? {
                    CriterionOutcome::Decided(v) => t.centralizer_product.record(v == global, describe),
                    CriterionOutcome::Unmet(_) => t.centralizer_product.skipped += 1,
                }
                if !harvested {
                    harvested = true;
                    harvest_twisted(h, &g_shift, h1, h2, &a, &mut t)?;
                }
            }
        }
    }
    Ok(t)
}

/// Replays the inductive step on concrete data: `H_1 <= G`, `H_2^b <= G`,
/// `x` in `H_2 \ H_1`, and for each `h_i` in `H_1` a `c_i = (z_i, 1)` fixed
/// on `Phi(H)` with `h_i x^b = (h_i x)^{c_i}`. Feeds `X = pi(H_1)`,
/// `alpha = pi(x)`, `v = u` into the twisted-condition check.
fn harvest_twisted(
    h: &Subgroup,
    g: &Subgroup,
    h1: &Subgroup,
    h2: &Subgroup,
    b: &KnVector,
    t: &mut PairTallies,
) -> Result<()> {
    let depth = h.depth();
    let Some(x) = h2.elements().iter().find(|e| !h1.contains(e)) else {
        return Ok(());
    };
    let y = h.project();
    let y_phi = y.frattini().phi;
    let fixed_phi = fix_subspace_of_set(depth.parent().get(), y_phi.generators())?;
    let fixed = F2AffineSet::coset(F2Vector::zero(fixed_phi.ambient_len()), fixed_phi)?;
    let partners: HashMap<TreeAutomorphism, F2Vector> = g
        .elements()
        .iter()
        .map(|e| {
            let (w, s) = e.semidirect();
            (s, w)
        })
        .collect();
    let xb = kernel_conjugate(x, b);
    let mut z_of = HashMap::new();
    for hi in h1.elements() {
        let target = hi.compose(&xb);
        let (w, s) = hi.compose(x).semidirect();
        let Some(w2) = partners.get(&s) else {
            t.residual.skipped += 1;
            return Ok(());
        };
        let solutions = f2::solve_twisted(&s, &(w + *w2))?.intersect(&fixed)?;
        let Some(z) = solutions.representative() else {
            t.harvested.skipped += 1;
            return Ok(());
        };
        let c = KnVector::new(depth, z)?;
        let relation = kernel_conjugate(&hi.compose(x), &c) == target;
        let sides = twisted_conjugation_residual(hi, x, b, &c);
        t.residual.record(
            relation && matches!(sides, Ok((l, r)) if l == r),
            || format!("h={hi} x={x} b={} c={}", b.bits(), c.bits()),
        );
        z_of.insert(hi.project(), z);
    }

    let x_proj = h1.project();
    let alpha = x.project();
    let v = *b.bits();
    let ab_fix = |beta: &TreeAutomorphism, u: &F2Vector| {
        let ab = alpha.compose(beta);
        f2::permute_unchecked(&alpha, &v) + f2::permute_unchecked(&ab, &v)
            == *u + f2::permute_unchecked(&ab, u)
    };
    let mut witnesses = HashMap::new();
    for beta in x_proj.elements() {
        let literal = z_of.get(beta).copied().filter(|z| ab_fix(beta, z) && fixed.contains(z));
        let u = match literal {
            Some(z) => Some(z),
            None => solve_twisted_witness(&x_proj, &alpha, beta, &v)?,
        };
        match u {
            Some(u) => {
                witnesses.insert(*beta, u);
            }
            None => {
                t.harvested.skipped += 1;
                return Ok(());
            }
        }
    }
    match twisted_condition_check(&x_proj, &alpha, &v, &witnesses)? {
        ConditionVerdict::Vacuous(_) => t.harvested.skipped += 1,
        verdict => t.harvested.record(!verdict.is_violated(), || {
            format!("X={} alpha={alpha} v={v}", gens(&x_proj))
        }),
    }
    Ok(())
}

/// `x^a = x` exactly when `u` lies in `Fix(s)`.
fn kernel_centralizer_instances(depth: Depth, elements: &[TreeAutomorphism]) -> Tally {
    let mut t = Tally::default();
    for x in elements {
        let fix = fix_subspace(&x.project());
        for a in KnVector::all(depth) {
            let commutes = kernel_conjugate(x, &a) == *x;
            t.record(commutes == fix.contains(a.bits()), || format!("x={x} a={}", a.bits()));
        }
    }
    t
}

fn projection_frattini_instances(subgroups: &[Subgroup]) -> Tally {
    let mut t = Tally::default();
    for h in subgroups {
        if !h.has_trivial_kernel_intersection() {
            t.skipped += 1;
            continue;
        }
        let left = h.frattini().phi.project();
        let right = h.project().frattini().phi;
        t.record(left == right, || format!("H={}", gens(h)));
    }
    t
}

fn residual_instances(depth: Depth, samples: usize, rng: &mut ChaCha8Rng) -> Tally {
    let mut t = Tally::default();
    for _ in 0..samples {
        let x = TreeAutomorphism::random(depth, rng);
        let y = TreeAutomorphism::random(depth, rng);
        let a = random_kernel(depth, rng);
        let lhs = x.compose(&kernel_conjugate(&y, &a));
        let xy = x.compose(&y);
        let Some(b) = KnVector::all(depth).find(|b| kernel_conjugate(&xy, b) == lhs) else {
            t.skipped += 1;
            continue;
        };
        let ok = matches!(twisted_conjugation_residual(&x, &y, &a, &b), Ok((l, r)) if l == r);
        t.record(ok, || format!("x={x} y={y} a={} b={}", a.bits(), b.bits()));
    }
    t
}

/// Orbit-condition, twisted-condition and coset-constant checks for one
/// `(X, alpha)` over the given vectors.
fn vector_checks(
    x: &Subgroup,
    alpha: &TreeAutomorphism,
    vectors: &[F2Vector],
) -> Result<(Tally, Tally, Tally)> {
    let (mut orbit, mut twisted, mut coset) = (Tally::default(), Tally::default(), Tally::default());
    let m = x.depth().leaves();
    let mut y_gens = x.generators().to_vec();
    y_gens.push(*alpha);
    let y = Subgroup::generate(x.depth(), &y_gens)?;
    let phi_fixed = fix_subspace_of_set(x.depth().get(), y.frattini().phi.generators())?;
    let fix_x = fix_subspace_of_set(x.depth().get(), x.generators())?;
    let v_y = coset_constant_subspace(x, alpha)?;
    let describe = |v: &F2Vector| format!("X={} alpha={alpha} v={v}", gens(x));

    let mut coset_ok = v_y.is_subspace_of(&fix_subspace(alpha)) && v_y.is_subspace_of(&phi_fixed);
    let claim_space = v_y.sum(&fix_x)?;
    for v in vectors {
        debug_assert_eq!(v.len(), m);
        match orbit_condition_check(x, alpha, v)? {
            ConditionVerdict::Vacuous(_) => orbit.skipped += 1,
            verdict => {
                orbit.record(!verdict.is_violated(), || describe(v));
                coset_ok &= claim_space.contains(v);
            }
        }
        let mut witnesses = HashMap::new();
        for beta in x.elements() {
            if let Some(u) = solve_twisted_witness(x, alpha, beta, v)? {
                witnesses.insert(*beta, u);
            }
        }
        if witnesses.len() < x.order() {
            twisted.skipped += 1;
            continue;
        }
        match twisted_condition_check(x, alpha, v, &witnesses)? {
            ConditionVerdict::Vacuous(_) => twisted.skipped += 1,
            verdict => twisted.record(!verdict.is_violated(), || describe(v)),
        }
    }
    coset.record(coset_ok, || format!("X={} alpha={alpha}", gens(x)));
    Ok((orbit, twisted, coset))
}

/// `(X, alpha, vectors)` instances: every pair and every vector when
/// `2^n <= 4`, otherwise sampled pairs with all vectors fixed by `Phi(Y)`
/// (the others fail that hypothesis outright).
fn vector_instances(
    depth: Depth,
    subgroups: &[Subgroup],
    samples: usize,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<(Subgroup, TreeAutomorphism, Vec<F2Vector>)>> {
    let m = depth.leaves();
    let mut out = Vec::new();
    if depth.get() <= 2 {
        let everything: Vec<_> = F2Vector::all(m).collect();
        for x in subgroups {
            for alpha in TreeAutomorphism::all(depth) {
                if !x.contains(&alpha) {
                    out.push((x.clone(), alpha, everything.clone()));
                }
            }
        }
        return Ok(out);
    }
    let mut attempts = 0;
    while out.len() < samples && attempts < 100 * samples.max(1) {
        attempts += 1;
        let x = if subgroups.is_empty() {
            random_subgroup_with(depth, 3, rng)?
        } else {
            subgroups[rng.gen_range(0..subgroups.len())].clone()
        };
        let alpha = TreeAutomorphism::random(depth, rng);
        if x.contains(&alpha) {
            continue;
        }
        let mut y_gens = x.generators().to_vec();
        y_gens.push(alpha);
        let y = Subgroup::generate(depth, &y_gens)?;
        let fixed = fix_subspace_of_set(depth.get(), y.frattini().phi.generators())?;
        if fixed.dim() > 12 {
            continue;
        }
        out.push((x, alpha, fixed.elements().collect()));
    }
    Ok(out)
}

/// Runs every lemma and proposition check at the config depth.
///
/// Pair-based checks use every subgroup pair with `|H| = |G|` and
/// `H ∩ K_n = {id}` for depth at most 3, and the sampled theorem pairs above
/// that. Vector checks are exhaustive for depth at most 2 and sampled above.
pub fn verify_lemma_suite(config: &SweepConfig) -> Result<SweepReport> {
    if config.experiment != Experiment::Lemmas {
        return Err(Error::Config("config is not for the lemma suite".into()));
    }
    let start = Instant::now();
    let depth = config.depth_checked()?;
    let pool = config.pool()?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let exhaustive = depth.get() <= super::MAX_EXHAUSTIVE_DEPTH;

    let all = if exhaustive {
        Some(enumerate_all_subgroups(depth)?)
    } else {
        None
    };
    let pairs: Vec<(Subgroup, Subgroup)> = match &all {
        Some(list) => {
            let mut out = Vec::new();
            for h in list.iter().filter(|h| h.has_trivial_kernel_intersection()) {
                for g in list.iter().filter(|g| g.order() == h.order()) {
                    out.push((h.clone(), g.clone()));
                }
            }
            out
        }
        None => {
            let mut theorem = SweepConfig::new(Experiment::Theorem, depth.get());
            theorem.seed = config.seed;
            theorem.samples = config.samples;
            sampled_pairs(&theorem, depth)?
        }
    };
    let pair_results: Vec<PairTallies> = pool.install(|| {
        pairs
            .par_iter()
            .map(|(h, g)| pair_checks(h, g, all.as_deref()))
            .collect::<Result<Vec<_>>>()
    })?;
    let mut pt = PairTallies::default();
    for r in pair_results {
        pt.merge(r);
    }

    let kernel_elements: Vec<TreeAutomorphism> = if exhaustive {
        TreeAutomorphism::all(depth)
    } else {
        (0..config.samples)
            .map(|_| TreeAutomorphism::random(depth, &mut rng))
            .collect()
    };
    let centralizer = kernel_centralizer_instances(depth, &kernel_elements);

    let subgroup_pool: Vec<Subgroup> = match &all {
        Some(list) => list.clone(),
        None => (0..config.samples)
            .map(|_| random_subgroup_with(depth, 3, &mut rng))
            .collect::<Result<_>>()?,
    };
    let projection = projection_frattini_instances(&subgroup_pool);

    let mut residual = residual_instances(depth, config.samples, &mut rng);
    residual.merge(pt.residual);

    let instances = vector_instances(
        depth,
        all.as_deref().unwrap_or(&[]),
        config.samples,
        &mut rng,
    )?;
    let vector_results: Vec<(Tally, Tally, Tally)> = pool.install(|| {
        instances
            .par_iter()
            .map(|(x, alpha, vs)| vector_checks(x, alpha, vs))
            .collect::<Result<Vec<_>>>()
    })?;
    let (mut orbit, mut twisted, mut coset) = (Tally::default(), Tally::default(), Tally::default());
    for (o, t, c) in vector_results {
        orbit.merge(o);
        twisted.merge(t);
        coset.merge(c);
    }

    let checks = vec![
        pt.kernel_transfer.summary(KERNEL_TRANSFER),
        pt.subgroup_transfer.summary(SUBGROUP_TRANSFER),
        pt.maximal_pair.summary(MAXIMAL_PAIR_GENERATION),
        pt.centralizer_product.summary(CENTRALIZER_PRODUCT),
        pt.centralizes_frattini.summary(CONJUGATOR_CENTRALIZES_FRATTINI),
        centralizer.summary(KERNEL_CENTRALIZER_EQUIVALENCE),
        projection.summary(PROJECTION_FRATTINI),
        residual.summary(TWISTED_RESIDUAL),
        orbit.summary(ORBIT_CONDITIONS),
        twisted.summary(TWISTED_CONDITIONS),
        pt.harvested.summary(TWISTED_CONDITIONS_HARVESTED),
        coset.summary(COSET_CONSTANT_SUBSPACE),
    ];
    let mut counts = VerdictCounts::default();
    for c in &checks {
        counts.p_holds += c.instances - c.violations;
        counts.counterexample += c.violations;
        if c.status == CheckStatus::Vacuous {
            counts.vacuous += 1;
        }
    }
    Ok(SweepReport {
        config: config.clone(),
        counts,
        records: Vec::new(),
        checks,
        wall_time_ms: start.elapsed().as_millis() as u64,
    })
}
