//! Elementwise and global `K_n`-conjugacy of subgroups.
//!
//! `H` is elementwise `K_n`-conjugate into `G` when every `h` in `H` has some
//! `a` in `K_n` with `h^a` in `G`, and globally conjugate when one `b` works
//! for all of `H`. `P(H, G)` holds when the two notions agree.
//!
//! Conjugation by a kernel element is an involution (`K_n` is elementary
//! abelian), so `a h a^-1` and `a^-1 h a` coincide here.

pub mod criteria;

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::f2::{self, decompose, solve_twisted, F2AffineSet, F2Subspace, F2Vector};
use crate::subgroup::Subgroup;
use crate::tree::{KnVector, TreeAutomorphism};

fn check_depths(h: &Subgroup, g: &Subgroup) -> Result<()> {
    if h.depth() != g.depth() {
        return Err(Error::DepthMismatch {
            left: h.depth().get(),
            right: g.depth().get(),
        });
    }
    Ok(())
}

/// Per-`G` data for the linear-algebra witness search.
///
/// Writing `h = (w, t)`, a kernel element `(u, 1)` conjugates `h` to
/// `(u + w + t(u), t)`. That lands in `G` iff `w + w0 + (u + t(u))` lies in
/// the kernel part `V` of `G`, where `(w0, t)` is any element of `G` over `t`.
/// So a witness exists iff `w + w0` lies in `Im(I + t) + V`.
pub struct ConjugacyTarget<'a> {
    group: &'a Subgroup,
    kernel: F2Subspace,
    fibres: HashMap<TreeAutomorphism, F2Vector>,
}

impl<'a> ConjugacyTarget<'a> {
    pub fn new(group: &'a Subgroup) -> Self {
        let mut fibres = HashMap::new();
        for g in group.elements() {
            let (w, t) = g.semidirect();
            fibres.entry(t).or_insert(w);
        }
        ConjugacyTarget {
            group,
            kernel: group.kernel_subspace(),
            fibres,
        }
    }

    pub fn group(&self) -> &Subgroup {
        self.group
    }

    /// Some `u` with `h^(u,1)` in `G`, or `None`.
    pub fn witness(&self, h: &TreeAutomorphism) -> Option<KnVector> {
        if self.group.contains(h) {
            return Some(KnVector::zero(h.depth()));
        }
        let (w, t) = h.semidirect();
        let w0 = self.fibres.get(&t)?;
        let image = f2::twisted_image(&t);
        let (c, _) = decompose(&(w + *w0), &image, &self.kernel).ok()??;
        let u = solve_twisted(&t, &c)
            .ok()?
            .representative()
            .expect("c lies in the image of I + t");
        Some(KnVector::new(h.depth(), u).expect("length 2^(n-1)"))
    }
}

/// All `u` with `h^(u,1)` in `G`, as a union of cosets of `Fix(t)`: one
/// `solve_twisted(t, w + w')` per `g = (w', t)` in `G` sharing `h`'s
/// projection. Duplicate cosets are dropped.
pub fn elementwise_witnesses(h: &TreeAutomorphism, group: &Subgroup) -> Result<Vec<F2AffineSet>> {
    if h.depth() != group.depth() {
        return Err(Error::DepthMismatch {
            left: h.depth().get(),
            right: group.depth().get(),
        });
    }
    let (w, t) = h.semidirect();
    let mut out: Vec<F2AffineSet> = Vec::new();
    for g in group.elements() {
        let (w2, t2) = g.semidirect();
        if t2 != t {
            continue;
        }
        let set = solve_twisted(&t, &(w + w2))?;
        if !set.is_empty() && !out.contains(&set) {
            out.push(set);
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Mode {
    Elementwise,
    Global,
}

/// Which candidate set a negative global search exhausted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchSpace {
    /// All of `K_n`.
    Kernel,
    /// The coset of `C_{K_n}(Phi(H))` forced by matching `Phi(H)` inside `G`;
    /// only used when `|H| = |G|` and both meet `K_n` trivially.
    CentralizerCoset,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Exhaustion {
    pub space: SearchSpace,
    pub candidates: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Evidence {
    /// One witness per element of `H`.
    PerElement(Vec<(TreeAutomorphism, KnVector)>),
    /// A single conjugator for all of `H`.
    Conjugator(KnVector),
    /// An element of `H` with no witness.
    NoWitness(TreeAutomorphism),
    Exhausted(Exhaustion),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugacyCertificate {
    pub mode: Mode,
    pub verdict: bool,
    pub evidence: Evidence,
}

impl ConjugacyCertificate {
    /// Re-checks the certificate against `H` and `G` by direct conjugation.
    /// Negative certificates are re-checked by brute force over `K_n`.
    pub fn verify(&self, h: &Subgroup, g: &Subgroup) -> bool {
        if h.depth() != g.depth() {
            return false;
        }
        match (&self.mode, self.verdict, &self.evidence) {
            (Mode::Elementwise, true, Evidence::PerElement(pairs)) => {
                pairs.len() == h.order()
                    && pairs.iter().all(|(x, u)| {
                        h.contains(x) && u.depth() == h.depth() && g.contains(&kernel_conjugate(x, u))
                    })
                    && {
                        let mut xs: Vec<_> = pairs.iter().map(|(x, _)| *x).collect();
                        xs.sort_unstable();
                        xs == h.elements()
                    }
            }
            (Mode::Elementwise, false, Evidence::NoWitness(x)) => {
                h.contains(x)
                    && KnVector::all(h.depth()).all(|u| !g.contains(&kernel_conjugate(x, &u)))
            }
            (Mode::Global, true, Evidence::Conjugator(b)) => {
                b.depth() == h.depth()
                    && h.generators().iter().all(|x| g.contains(&kernel_conjugate(x, b)))
            }
            (Mode::Global, false, Evidence::Exhausted(_)) => KnVector::all(h.depth())
                .all(|b| !h.generators().iter().all(|x| g.contains(&kernel_conjugate(x, &b)))),
            _ => false,
        }
    }

    pub fn global_witness(&self) -> Option<KnVector> {
        match &self.evidence {
            Evidence::Conjugator(b) => Some(*b),
            _ => None,
        }
    }
}

/// `x^(u,1)`.
pub fn kernel_conjugate(x: &TreeAutomorphism, u: &KnVector) -> TreeAutomorphism {
    x.conjugate_unchecked(&u.to_automorphism())
}

pub fn is_elementwise_conjugate(h: &Subgroup, g: &Subgroup) -> Result<ConjugacyCertificate> {
    check_depths(h, g)?;
    let target = ConjugacyTarget::new(g);
    let mut witnesses = Vec::with_capacity(h.order());
    for x in h.elements() {
        match target.witness(x) {
            Some(u) => witnesses.push((*x, u)),
            None => {
                return Ok(ConjugacyCertificate {
                    mode: Mode::Elementwise,
                    verdict: false,
                    evidence: Evidence::NoWitness(*x),
                })
            }
        }
    }
    Ok(ConjugacyCertificate {
        mode: Mode::Elementwise,
        verdict: true,
        evidence: Evidence::PerElement(witnesses),
    })
}

/// Searches `K_n` for a single conjugator carrying the generators of `H`
/// into `G`.
///
/// With `|H| = |G|` and both meeting `K_n` trivially, any conjugator maps
/// `Phi(H)` onto `Phi(G)`, and each `phi` in `Phi(H)` has exactly one partner
/// in `G` over the same projection. The conjugators of each generator of
/// `Phi(H)` onto its partner form a coset of `Fix(pi_n(phi))`, so the
/// candidates shrink to a coset of `C_{K_n}(Phi(H))`, which is enumerated in
/// full. Otherwise the whole of `K_n` is enumerated.
pub fn is_globally_conjugate(h: &Subgroup, g: &Subgroup) -> Result<ConjugacyCertificate> {
    check_depths(h, g)?;
    let depth = h.depth();
    let prunable = h.order() == g.order()
        && h.has_trivial_kernel_intersection()
        && g.has_trivial_kernel_intersection();
    let (space, candidates): (SearchSpace, Vec<KnVector>) = if prunable {
        let coset = frattini_matching_coset(h, g)?;
        let mut members: Vec<_> = coset
            .elements()
            .into_iter()
            .map(|u| KnVector::new(depth, u).expect("length 2^(n-1)"))
            .collect();
        members.sort_unstable();
        (SearchSpace::CentralizerCoset, members)
    } else {
        (SearchSpace::Kernel, KnVector::all(depth).collect())
    };
    let count = candidates.len() as u64;
    for b in candidates {
        let kb = b.to_automorphism();
        if h
            .generators()
            .iter()
            .all(|x| g.contains(&x.conjugate_unchecked(&kb)))
        {
            return Ok(ConjugacyCertificate {
                mode: Mode::Global,
                verdict: true,
                evidence: Evidence::Conjugator(b),
            });
        }
    }
    Ok(ConjugacyCertificate {
        mode: Mode::Global,
        verdict: false,
        evidence: Evidence::Exhausted(Exhaustion {
            space,
            candidates: count,
        }),
    })
}

/// Conjugators sending every generator of `Phi(H)` to its unique partner in
/// `G`; requires `G ∩ K_n` trivial.
fn frattini_matching_coset(h: &Subgroup, g: &Subgroup) -> Result<F2AffineSet> {
    let depth = h.depth();
    let mut partners: HashMap<TreeAutomorphism, F2Vector> = HashMap::new();
    for y in g.elements() {
        let (w, t) = y.semidirect();
        partners.insert(t, w);
    }
    let phi = h.frattini().phi;
    let mut set = F2AffineSet::coset(
        F2Vector::zero(depth.kernel_rank()),
        F2Subspace::full(depth.kernel_rank()),
    )?;
    for x in phi.generators() {
        let (w, t) = x.semidirect();
        let Some(w2) = partners.get(&t) else {
            return Ok(F2AffineSet::Empty);
        };
        set = set.intersect(&solve_twisted(&t, &(w + *w2))?)?;
        if set.is_empty() {
            break;
        }
    }
    Ok(set)
}

/// Structural facts about a pair that the sweeps filter and report on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hypotheses {
    pub equal_order: bool,
    pub trivial_kernel_intersection: bool,
    pub cyclic: bool,
    pub transitive_element: bool,
}

impl Hypotheses {
    pub fn of(h: &Subgroup, g: &Subgroup) -> Hypotheses {
        Hypotheses {
            equal_order: h.order() == g.order(),
            trivial_kernel_intersection: h.has_trivial_kernel_intersection(),
            cyclic: h.is_cyclic(),
            transitive_element: h.contains_transitive(),
        }
    }

    /// `|H| = |G|` and `H ∩ K_n = {id}`.
    pub fn faithful_equal_order(&self) -> bool {
        self.equal_order && self.trivial_kernel_intersection
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropertyPReport {
    pub elementwise: ConjugacyCertificate,
    pub global: ConjugacyCertificate,
    pub p_holds: bool,
    pub hypotheses: Hypotheses,
}

impl PropertyPReport {
    pub fn is_elementwise(&self) -> bool {
        self.elementwise.verdict
    }

    pub fn is_global(&self) -> bool {
        self.global.verdict
    }
}

/// Runs both deciders on `(H, G)`.
pub fn property_p(h: &Subgroup, g: &Subgroup) -> Result<PropertyPReport> {
    let elementwise = is_elementwise_conjugate(h, g)?;
    let global = is_globally_conjugate(h, g)?;
    let p_holds = elementwise.verdict == global.verdict;
    Ok(PropertyPReport {
        elementwise,
        global,
        p_holds,
        hypotheses: Hypotheses::of(h, g),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum PairVerdict {
    PHolds,
    Counterexample,
    Vacuous,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairCheck {
    pub verdict: PairVerdict,
    pub report: Option<PropertyPReport>,
}

fn classify(report: PropertyPReport) -> PairCheck {
    let verdict = if report.p_holds {
        PairVerdict::PHolds
    } else {
        PairVerdict::Counterexample
    };
    PairCheck {
        verdict,
        report: Some(report),
    }
}

/// If `|H| = |G|` and `H ∩ K_n = {id}`, elementwise conjugacy must imply
/// global conjugacy. Pairs outside the hypotheses are vacuous.
pub fn check_faithful_equal_order(h: &Subgroup, g: &Subgroup) -> Result<PairCheck> {
    check_depths(h, g)?;
    if !Hypotheses::of(h, g).faithful_equal_order() {
        return Ok(PairCheck {
            verdict: PairVerdict::Vacuous,
            report: None,
        });
    }
    Ok(classify(property_p(h, g)?))
}

/// Conjectured: when `H` contains a transitive element, `P(H, G)` holds for
/// every `G`. Pairs whose `H` has no transitive element are vacuous.
pub fn check_transitive(h: &Subgroup, g: &Subgroup) -> Result<PairCheck> {
    check_depths(h, g)?;
    if !h.contains_transitive() {
        return Ok(PairCheck {
            verdict: PairVerdict::Vacuous,
            report: None,
        });
    }
    Ok(classify(property_p(h, g)?))
}
