//! Linear-algebra criteria behind the faithful-projection theorem, as
//! executable checks on concrete instances.
//!
//! Vectors here live in `F_2^{2^d}` for a subgroup of `W_d`; in the theorem
//! they are kernel vectors and `d` is one less than the tree depth.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::f2::{decompose, fix_subspace, fix_subspace_of_set, permute_unchecked, F2Subspace, F2Vector};
use crate::subgroup::Subgroup;
use crate::tree::{KnVector, TreeAutomorphism};

use super::{is_elementwise_conjugate, kernel_conjugate};

/// A hypothesis of one of the checks, named by what it asks for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Condition {
    NonCyclic,
    TrivialKernelIntersection,
    EqualOrder,
    ElementwiseConjugate,
    DistinctMaximalSubgroups,
    GeneratedByConjugatedPair,
    /// `v_i + v_{alpha(i)} = v_{beta(i)} + v_{beta alpha(i)}` for all `beta`
    /// in `X` and all `i`.
    SwapBalance,
    /// `v_i = v_j` whenever `i, j` share an `alpha`-orbit and a `beta`-orbit
    /// for some `beta` in `X`.
    OrbitConstancy,
    /// `v` is fixed by `Phi(Y)`.
    FrattiniFixed,
    /// Every `u^(beta)` is fixed by `Phi(Y)` and solves
    /// `alpha(v) + alpha beta(v) = u + alpha beta(u)`.
    TwistedWitnesses,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConditionVerdict {
    /// Some hypothesis failed; nothing is claimed.
    Vacuous(Vec<Condition>),
    /// Hypotheses hold and `v = alpha_part + x_part` with `alpha_part` in
    /// `Fix(alpha)` and `x_part` in `Fix(X)`.
    Holds {
        alpha_part: F2Vector,
        x_part: F2Vector,
    },
    /// Hypotheses hold but `v` is outside `Fix(alpha) + Fix(X)`.
    Violated,
}

impl ConditionVerdict {
    pub fn is_violated(&self) -> bool {
        matches!(self, ConditionVerdict::Violated)
    }

    pub fn is_vacuous(&self) -> bool {
        matches!(self, ConditionVerdict::Vacuous(_))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CriterionOutcome {
    Unmet(Vec<Condition>),
    /// Whether `a` lies in `C(H_1) C(x)` for some `x` in `H_2 \ H_1`.
    Decided(bool),
}

/// Decides whether `a` lies in `C_{K_n}(H_1) C_{K_n}(x)` for some `x` in
/// `H_2 \ H_1`, in vector form `u` in `Fix(pi(H_1)) + Fix(pi(x))`.
///
/// Under the listed hypotheses this is equivalent to `H` being globally
/// conjugate into `G`.
pub fn centralizer_product_criterion(
    h: &Subgroup,
    g: &Subgroup,
    h1: &Subgroup,
    h2: &Subgroup,
    a: &KnVector,
) -> Result<CriterionOutcome> {
    let depth = h.depth();
    for other in [g, h1, h2] {
        if other.depth() != depth {
            return Err(Error::DepthMismatch {
                left: depth.get(),
                right: other.depth().get(),
            });
        }
    }
    if a.depth() != depth {
        return Err(Error::DepthMismatch {
            left: depth.get(),
            right: a.depth().get(),
        });
    }
    let mut unmet = Vec::new();
    if h.is_cyclic() || g.is_cyclic() {
        unmet.push(Condition::NonCyclic);
    }
    if !h.has_trivial_kernel_intersection() {
        unmet.push(Condition::TrivialKernelIntersection);
    }
    if h.order() != g.order() {
        unmet.push(Condition::EqualOrder);
    }
    if !is_elementwise_conjugate(h, g)?.verdict {
        unmet.push(Condition::ElementwiseConjugate);
    }
    let maximal = |m: &Subgroup| m.is_subgroup_of(h) && 2 * m.order() == h.order();
    if h1 == h2 || !maximal(h1) || !maximal(h2) {
        unmet.push(Condition::DistinctMaximalSubgroups);
    }
    if unmet.is_empty() {
        let mut gens = h1.generators().to_vec();
        gens.extend(h2.generators().iter().map(|x| kernel_conjugate(x, a)));
        if Subgroup::generate(depth, &gens)? != *g {
            unmet.push(Condition::GeneratedByConjugatedPair);
        }
    }
    if !unmet.is_empty() {
        return Ok(CriterionOutcome::Unmet(unmet));
    }
    let parent = depth.parent().get();
    let h1_proj: Vec<_> = h1.generators().iter().map(|x| x.project()).collect();
    let fix_h1 = fix_subspace_of_set(parent, &h1_proj)?;
    let member = h2
        .elements()
        .iter()
        .filter(|x| !h1.contains(x))
        .any(|x| {
            let space = fix_h1.sum(&fix_subspace(&x.project())).expect("same length");
            space.contains(a.bits())
        });
    Ok(CriterionOutcome::Decided(member))
}

/// For `x y^a = (x y)^b`, returns `(s(u) + st(u), z + st(z))` where
/// `x = (v, s)`, `y = (w, t)`, `a = (u, 1)`, `b = (z, 1)`. The two sides agree
/// whenever the relation holds.
pub fn twisted_conjugation_residual(
    x: &TreeAutomorphism,
    y: &TreeAutomorphism,
    a: &KnVector,
    b: &KnVector,
) -> Result<(F2Vector, F2Vector)> {
    let depth = x.depth();
    for d in [y.depth(), a.depth(), b.depth()] {
        if d != depth {
            return Err(Error::DepthMismatch {
                left: depth.get(),
                right: d.get(),
            });
        }
    }
    let xy = x.compose(y);
    if x.compose(&kernel_conjugate(y, a)) != kernel_conjugate(&xy, b) {
        return Err(Error::Hypothesis(
            "x y^a differs from (x y)^b".to_string(),
        ));
    }
    let (_, s) = x.semidirect();
    let (_, t) = y.semidirect();
    let st = s.compose(&t);
    let u = a.bits();
    let z = b.bits();
    let left = permute_unchecked(&s, u) + permute_unchecked(&st, u);
    let right = *z + permute_unchecked(&st, z);
    Ok((left, right))
}

/// `Y = <X, alpha>` together with `Fix(Phi(Y))`.
struct Extension {
    y: Subgroup,
    frattini_fixed: F2Subspace,
}

fn extension(x: &Subgroup, alpha: &TreeAutomorphism) -> Result<Extension> {
    if alpha.depth() != x.depth() {
        return Err(Error::DepthMismatch {
            left: x.depth().get(),
            right: alpha.depth().get(),
        });
    }
    if x.contains(alpha) {
        return Err(Error::Hypothesis(format!("{alpha} lies in X")));
    }
    let mut gens = x.generators().to_vec();
    gens.push(*alpha);
    let y = Subgroup::generate(x.depth(), &gens)?;
    let phi = y.frattini().phi;
    let frattini_fixed = fix_subspace_of_set(x.depth().get(), phi.generators())?;
    Ok(Extension { y, frattini_fixed })
}

fn check_vector(x: &Subgroup, v: &F2Vector) -> Result<()> {
    let m = x.depth().leaves();
    if v.len() != m {
        return Err(Error::LengthMismatch {
            expected: m,
            actual: v.len(),
        });
    }
    Ok(())
}

fn conclude(x: &Subgroup, alpha: &TreeAutomorphism, v: &F2Vector) -> Result<ConditionVerdict> {
    let fix_x = fix_subspace_of_set(x.depth().get(), x.generators())?;
    Ok(match decompose(v, &fix_subspace(alpha), &fix_x)? {
        Some((alpha_part, x_part)) => ConditionVerdict::Holds { alpha_part, x_part },
        None => ConditionVerdict::Violated,
    })
}

/// Orbit-condition check: if `v` satisfies swap balance, orbit constancy and
/// is fixed by `Phi(Y)`, then `v` must lie in `Fix(alpha) + Fix(X)`.
pub fn orbit_condition_check(
    x: &Subgroup,
    alpha: &TreeAutomorphism,
    v: &F2Vector,
) -> Result<ConditionVerdict> {
    check_vector(x, v)?;
    let ext = extension(x, alpha)?;
    let m = x.depth().leaves();
    let mut unmet = Vec::new();

    let balanced = x.elements().iter().all(|beta| {
        let ba = beta.compose(alpha);
        (0..m).all(|i| {
            v.get(i) ^ v.get(alpha.image(i)) == v.get(beta.image(i)) ^ v.get(ba.image(i))
        })
    });
    if !balanced {
        unmet.push(Condition::SwapBalance);
    }

    let alpha_orbits = crate::tree::orbit_partition(m, std::slice::from_ref(alpha));
    let constant = x.elements().iter().all(|beta| {
        let beta_orbits = crate::tree::orbit_partition(m, std::slice::from_ref(beta));
        (0..m).all(|i| {
            (i + 1..m).all(|j| {
                alpha_orbits[i] != alpha_orbits[j]
                    || beta_orbits[i] != beta_orbits[j]
                    || v.get(i) == v.get(j)
            })
        })
    });
    if !constant {
        unmet.push(Condition::OrbitConstancy);
    }

    if !ext.frattini_fixed.contains(v) {
        unmet.push(Condition::FrattiniFixed);
    }
    if !unmet.is_empty() {
        return Ok(ConditionVerdict::Vacuous(unmet));
    }
    conclude(x, alpha, v)
}

/// Twisted-condition check: if every `beta` in `X` has a `u^(beta)` fixed by
/// `Phi(Y)` with `alpha(v) + alpha beta(v) = u + alpha beta(u)`, and `v` is
/// fixed by `Phi(Y)`, then `v` must lie in `Fix(alpha) + Fix(X)`.
///
/// `witnesses` must supply `u^(beta)` for every element `beta` of `X`.
pub fn twisted_condition_check(
    x: &Subgroup,
    alpha: &TreeAutomorphism,
    v: &F2Vector,
    witnesses: &HashMap<TreeAutomorphism, F2Vector>,
) -> Result<ConditionVerdict> {
    check_vector(x, v)?;
    let ext = extension(x, alpha)?;
    let mut unmet = Vec::new();
    let alpha_v = permute_unchecked(alpha, v);
    let mut twisted_ok = true;
    for beta in x.elements() {
        let u = witnesses
            .get(beta)
            .ok_or_else(|| Error::Hypothesis(format!("no witness vector for {beta}")))?;
        check_vector(x, u)?;
        let ab = alpha.compose(beta);
        let lhs = alpha_v + permute_unchecked(&ab, v);
        let rhs = *u + permute_unchecked(&ab, u);
        if lhs != rhs || !ext.frattini_fixed.contains(u) {
            twisted_ok = false;
        }
    }
    if !twisted_ok {
        unmet.push(Condition::TwistedWitnesses);
    }
    if !ext.frattini_fixed.contains(v) {
        unmet.push(Condition::FrattiniFixed);
    }
    if !unmet.is_empty() {
        return Ok(ConditionVerdict::Vacuous(unmet));
    }
    conclude(x, alpha, v)
}

/// Some `u` fixed by `Phi(<X, alpha>)` with
/// `alpha(v) + alpha beta(v) = u + alpha beta(u)`, if one exists.
pub fn solve_twisted_witness(
    x: &Subgroup,
    alpha: &TreeAutomorphism,
    beta: &TreeAutomorphism,
    v: &F2Vector,
) -> Result<Option<F2Vector>> {
    check_vector(x, v)?;
    let ext = extension(x, alpha)?;
    let ab = alpha.compose(beta);
    let rhs = permute_unchecked(alpha, v) + permute_unchecked(&ab, v);
    let solutions = crate::f2::solve_twisted(&ab, &rhs)?;
    let fixed = crate::f2::F2AffineSet::coset(F2Vector::zero(v.len()), ext.frattini_fixed)?;
    Ok(solutions.intersect(&fixed)?.representative())
}

/// Vectors constant on each class `{sigma(i_j) : sigma in A_t or alpha A_t}`,
/// where `i_j` runs over the smallest point of each `Y`-orbit and `A_t` over
/// the cosets of `Phi(Y)` in `X Phi(Y)`.
///
/// `X Phi(Y)` is an index-2 subgroup of `Y` not containing `alpha`, so the
/// classes pair each coset `A_t` with `alpha A_t`. Overlapping classes are
/// merged. Every member is fixed by `alpha` and by `Phi(Y)`.
pub fn coset_constant_subspace(x: &Subgroup, alpha: &TreeAutomorphism) -> Result<F2Subspace> {
    let ext = extension(x, alpha)?;
    let m = x.depth().leaves();
    let phi = ext.y.frattini().phi;
    let reps: Vec<usize> = {
        let orbits = crate::tree::orbit_partition(m, ext.y.generators());
        (0..m).filter(|&k| orbits[k] == k).collect()
    };

    let mut parent: Vec<usize> = (0..m).collect();
    fn find(parent: &mut [usize], mut k: usize) -> usize {
        while parent[k] != k {
            parent[k] = parent[parent[k]];
            k = parent[k];
        }
        k
    }
    let mut union = |a: usize, b: usize| {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra.max(rb)] = ra.min(rb);
        }
    };
    for sigma in ext.y.elements() {
        let shifted = alpha.compose(sigma);
        let coset_steps: Vec<_> = phi.generators().iter().map(|f| f.compose(sigma)).collect();
        for &i in &reps {
            let p = sigma.image(i);
            union(p, shifted.image(i));
            for step in &coset_steps {
                union(p, step.image(i));
            }
        }
    }
    let mut indicators = vec![0u64; m];
    for k in 0..m {
        let root = find(&mut parent, k);
        indicators[root] |= 1 << k;
    }
    F2Subspace::span(
        m,
        indicators
            .into_iter()
            .filter(|&b| b != 0)
            .map(|b| F2Vector::from_bits(m, b)),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::subgroup::enumerate_all_subgroups;
    use crate::tree::Depth;

    fn d(n: u8) -> Depth {
        Depth::new(n).unwrap()
    }

    fn perm(n: u8, s: &str) -> TreeAutomorphism {
        TreeAutomorphism::parse(d(n), s).unwrap()
    }

    fn v(s: &str) -> F2Vector {
        s.parse().unwrap()
    }

    /// Literal check of the coset-constancy definition over all of `F_2^m`.
    fn brute_coset_constant(x: &Subgroup, alpha: &TreeAutomorphism) -> Vec<F2Vector> {
        let mut gens = x.generators().to_vec();
        gens.push(*alpha);
        let y = Subgroup::generate(x.depth(), &gens).unwrap();
        let q = y.frattini_quotient();
        let m = x.depth().leaves();
        let orbits = crate::tree::orbit_partition(m, y.generators());
        let alpha_label = q.label_of(&y, alpha).unwrap();
        // pair label: coset label with the alpha coordinate folded away
        let pair_of = |s: &TreeAutomorphism| {
            let l = q.label_of(&y, s).unwrap();
            l.min(l ^ alpha_label)
        };
        F2Vector::all(m)
            .filter(|w| {
                (0..m).filter(|&i| orbits[i] == i).all(|i| {
                    y.elements().iter().all(|s1| {
                        y.elements().iter().all(|s2| {
                            pair_of(s1) != pair_of(s2) || w.get(s1.image(i)) == w.get(s2.image(i))
                        })
                    })
                })
            })
            .collect()
    }

    #[test]
    fn coset_constant_single_swap() {
        let x = Subgroup::trivial(d(1));
        let space = coset_constant_subspace(&x, &perm(1, "(1,2)")).unwrap();
        assert_eq!(space, F2Subspace::span(2, [v("11")]).unwrap());
        assert!(coset_constant_subspace(&x, &TreeAutomorphism::identity(d(1))).is_err());
    }

    #[test]
    fn coset_constant_matches_definition_on_w2() {
        for x in enumerate_all_subgroups(d(2)).unwrap() {
            for alpha in TreeAutomorphism::all(d(2)) {
                if x.contains(&alpha) {
                    continue;
                }
                let space = coset_constant_subspace(&x, &alpha).unwrap();
                let mut from_space: Vec<_> = space.elements().collect();
                from_space.sort_unstable();
                assert_eq!(from_space, brute_coset_constant(&x, &alpha));
                let mut gens = x.generators().to_vec();
                gens.push(alpha);
                let y = Subgroup::generate(d(2), &gens).unwrap();
                let fixed = fix_subspace_of_set(2, y.frattini().phi.generators()).unwrap();
                assert!(space.is_subspace_of(&fixed));
                assert!(space.is_subspace_of(&fix_subspace(&alpha)));
            }
        }
    }

    #[test]
    fn residual_examples() {
        let x = perm(3, "(1,5,3,7)(2,6,4,8)");
        let y = perm(3, "(1,3)(2,4)");
        let zero = KnVector::zero(d(3));
        let (l, r) = twisted_conjugation_residual(&x, &y, &zero, &zero).unwrap();
        assert!(l.is_zero() && r.is_zero());
        let a = KnVector::new(d(3), v("1000")).unwrap();
        assert!(twisted_conjugation_residual(&x, &y, &a, &zero).is_err());
    }

    #[test]
    fn orbit_condition_examples() {
        let x = Subgroup::parse(d(2), "(1,2)(3,4)").unwrap();
        let alpha = perm(2, "(1,3,2,4)");
        let verdict = orbit_condition_check(&x, &alpha, &v("0000")).unwrap();
        assert!(matches!(verdict, ConditionVerdict::Holds { .. }));
        for w in F2Vector::all(4) {
            let verdict = orbit_condition_check(&x, &alpha, &w).unwrap();
            assert!(!verdict.is_violated());
            if let ConditionVerdict::Holds { alpha_part, x_part } = verdict {
                assert_eq!(alpha_part + x_part, w);
                assert!(fix_subspace(&alpha).contains(&alpha_part));
            }
        }
        assert!(orbit_condition_check(&x, &perm(2, "(1,2)(3,4)"), &v("0000")).is_err());
    }

    #[test]
    fn twisted_condition_examples() {
        let x = Subgroup::parse(d(2), "(1,2)(3,4)").unwrap();
        let alpha = perm(2, "(1,3,2,4)");
        let zeros: HashMap<_, _> = x.elements().iter().map(|b| (*b, F2Vector::zero(4))).collect();
        let verdict = twisted_condition_check(&x, &alpha, &v("0000"), &zeros).unwrap();
        assert!(matches!(verdict, ConditionVerdict::Holds { .. }));
        assert!(twisted_condition_check(&x, &alpha, &v("0000"), &HashMap::new()).is_err());

        let verdict = twisted_condition_check(&x, &alpha, &v("1000"), &zeros).unwrap();
        match verdict {
            ConditionVerdict::Vacuous(c) => assert!(c.contains(&Condition::FrattiniFixed)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn twisted_witness_solver_satisfies_condition() {
        for x in enumerate_all_subgroups(d(2)).unwrap() {
            for alpha in TreeAutomorphism::all(d(2)) {
                if x.contains(&alpha) {
                    continue;
                }
                for w in F2Vector::all(4) {
                    let mut map = HashMap::new();
                    for beta in x.elements() {
                        if let Some(u) = solve_twisted_witness(&x, &alpha, beta, &w).unwrap() {
                            map.insert(*beta, u);
                        }
                    }
                    if map.len() == x.order() {
                        let verdict = twisted_condition_check(&x, &alpha, &w, &map).unwrap();
                        assert!(!verdict.is_violated());
                        if let ConditionVerdict::Vacuous(c) = verdict {
                            assert_eq!(c, vec![Condition::FrattiniFixed]);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn criterion_with_zero_conjugator() {
        let h = Subgroup::parse(d(3), "(1,5)(2,6)(3,7)(4,8),(1,3)(2,4)(5,7)(6,8)").unwrap();
        assert!(h.has_trivial_kernel_intersection());
        let maximals = h.maximal_subgroups().unwrap();
        let zero = KnVector::zero(d(3));
        let outcome =
            centralizer_product_criterion(&h, &h, &maximals[0], &maximals[1], &zero).unwrap();
        assert_eq!(outcome, CriterionOutcome::Decided(true));
        let outcome =
            centralizer_product_criterion(&h, &h, &maximals[0], &maximals[0], &zero).unwrap();
        assert_eq!(
            outcome,
            CriterionOutcome::Unmet(vec![Condition::DistinctMaximalSubgroups])
        );
    }
}
