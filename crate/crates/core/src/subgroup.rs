//! Finite subgroups of `W_n`, held as generators plus the full sorted element
//! list. Every subgroup here is a 2-group, which the Frattini machinery relies
//! on.

use std::collections::{HashMap, HashSet, VecDeque};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::f2::{self, F2Subspace, F2Vector};
use crate::notation::{format_generator_list, parse_generator_list};
use crate::tree::{standard_generator, Depth, KnVector, TreeAutomorphism};

pub const DEFAULT_CLOSURE_BOUND: usize = 1 << 20;

#[derive(Clone, Debug)]
pub struct Subgroup {
    depth: Depth,
    generators: Vec<TreeAutomorphism>,
    // sorted, canonical
    elements: Vec<TreeAutomorphism>,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.depth == other.depth && self.elements == other.elements
    }
}

impl Eq for Subgroup {}

impl std::hash::Hash for Subgroup {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.depth.hash(state);
        self.elements.hash(state);
    }
}

impl Subgroup {
    pub fn trivial(depth: Depth) -> Subgroup {
        Subgroup {
            depth,
            generators: Vec::new(),
            elements: vec![TreeAutomorphism::identity(depth)],
        }
    }

    pub fn generate(depth: Depth, generators: &[TreeAutomorphism]) -> Result<Subgroup> {
        Subgroup::generate_bounded(depth, generators, DEFAULT_CLOSURE_BOUND)
    }

    /// Breadth-first closure under right multiplication by the generators.
    pub fn generate_bounded(
        depth: Depth,
        generators: &[TreeAutomorphism],
        bound: usize,
    ) -> Result<Subgroup> {
        for g in generators {
            if g.depth() != depth {
                return Err(Error::DepthMismatch {
                    left: depth.get(),
                    right: g.depth().get(),
                });
            }
        }
        let id = TreeAutomorphism::identity(depth);
        let mut seen: HashSet<TreeAutomorphism> = HashSet::from([id]);
        let mut queue = VecDeque::from([id]);
        while let Some(x) = queue.pop_front() {
            for g in generators {
                let y = x.compose(g);
                if seen.insert(y) {
                    if seen.len() > bound {
                        return Err(Error::ClosureBound(bound));
                    }
                    queue.push_back(y);
                }
            }
        }
        let mut elements: Vec<_> = seen.into_iter().collect();
        elements.sort_unstable();
        Ok(Subgroup {
            depth,
            generators: generators.to_vec(),
            elements,
        })
    }

    /// Trusts the caller: `elements` must be a sorted subgroup generated by
    /// `generators`.
    pub(crate) fn from_parts(
        depth: Depth,
        generators: Vec<TreeAutomorphism>,
        mut elements: Vec<TreeAutomorphism>,
    ) -> Subgroup {
        elements.sort_unstable();
        elements.dedup();
        Subgroup {
            depth,
            generators,
            elements,
        }
    }

    /// All of `W_n`, generated by the standard generators.
    pub fn whole(depth: Depth) -> Result<Subgroup> {
        let gens: Vec<_> = (1..=depth.get() as usize)
            .map(|i| standard_generator(i, depth))
            .collect::<Result<_>>()?;
        Subgroup::generate(depth, &gens)
    }

    /// The bottom-level kernel `K_n`.
    pub fn kernel(depth: Depth) -> Subgroup {
        let m = depth.kernel_rank();
        let gens: Vec<_> = (0..m)
            .map(|j| {
                KnVector::new(depth, F2Vector::unit(m, j))
                    .expect("unit vector has kernel rank length")
                    .to_automorphism()
            })
            .collect();
        let elements = KnVector::all(depth).map(|u| u.to_automorphism()).collect();
        Subgroup::from_parts(depth, gens, elements)
    }

    pub fn depth(&self) -> Depth {
        self.depth
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[TreeAutomorphism] {
        &self.generators
    }

    pub fn elements(&self) -> &[TreeAutomorphism] {
        &self.elements
    }

    pub fn contains(&self, x: &TreeAutomorphism) -> bool {
        self.elements.binary_search(x).is_ok()
    }

    pub(crate) fn index_of(&self, x: &TreeAutomorphism) -> Option<usize> {
        self.elements.binary_search(x).ok()
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.depth == other.depth
            && self.order() <= other.order()
            && other.order().is_multiple_of(self.order())
            && self.generators.iter().all(|g| other.contains(g))
    }

    pub fn is_cyclic(&self) -> bool {
        let n = self.order() as u64;
        self.elements.iter().any(|x| x.order() == n)
    }

    pub fn contains_transitive(&self) -> bool {
        self.elements.iter().any(TreeAutomorphism::is_transitive)
    }

    /// `g H g^-1`.
    pub fn conjugate_by(&self, g: &TreeAutomorphism) -> Result<Subgroup> {
        if g.depth() != self.depth {
            return Err(Error::DepthMismatch {
                left: self.depth.get(),
                right: g.depth().get(),
            });
        }
        let generators = self
            .generators
            .iter()
            .map(|x| x.conjugate_unchecked(g))
            .collect();
        let elements = self
            .elements
            .iter()
            .map(|x| x.conjugate_unchecked(g))
            .collect();
        Ok(Subgroup::from_parts(self.depth, generators, elements))
    }

    pub fn intersect_with_kernel(&self) -> Subgroup {
        let elements: Vec<_> = self
            .elements
            .iter()
            .filter(|x| x.is_in_kernel())
            .copied()
            .collect();
        let space = self.kernel_subspace();
        let generators = space
            .basis()
            .into_iter()
            .map(|b| {
                KnVector::new(self.depth, b)
                    .expect("kernel vectors have kernel rank length")
                    .to_automorphism()
            })
            .collect();
        Subgroup::from_parts(self.depth, generators, elements)
    }

    /// `H ∩ K_n = {id}`, equivalently `pi_n` is injective on `H`.
    pub fn has_trivial_kernel_intersection(&self) -> bool {
        self.elements
            .iter()
            .filter(|x| x.is_in_kernel())
            .count()
            == 1
    }

    /// Swap vectors of the kernel elements of this subgroup.
    pub fn kernel_subspace(&self) -> F2Subspace {
        let m = self.depth.kernel_rank();
        let vectors = self
            .elements
            .iter()
            .filter(|x| x.is_in_kernel())
            .map(|x| x.semidirect().0);
        F2Subspace::span(m, vectors).expect("kernel vectors have kernel rank length")
    }

    /// Image under `pi_n`.
    pub fn project(&self) -> Subgroup {
        let generators = self.generators.iter().map(|g| g.project()).collect();
        let elements = self.elements.iter().map(|g| g.project()).collect();
        Subgroup::from_parts(self.depth.parent(), generators, elements)
    }

    /// Frattini subgroup and the rank of the Frattini quotient.
    ///
    /// For a 2-group `Phi(G) = G^2 [G,G]`, the smallest normal subgroup with
    /// elementary abelian quotient, so it is the normal closure of the squares
    /// and pairwise commutators of the generators.
    pub fn frattini(&self) -> FrattiniData {
        let mut seeds: Vec<TreeAutomorphism> = Vec::new();
        for (i, g) in self.generators.iter().enumerate() {
            seeds.push(g.compose(g));
            for h in &self.generators[i + 1..] {
                seeds.push(g.commutator(h));
            }
        }
        let phi = self.normal_closure(seeds);
        let quotient_rank = (self.order() / phi.order()).trailing_zeros();
        FrattiniData { phi, quotient_rank }
    }

    /// Smallest subgroup containing `seeds` that is normalised by the
    /// generators of `self`.
    pub fn normal_closure(&self, seeds: Vec<TreeAutomorphism>) -> Subgroup {
        let mut gens: Vec<TreeAutomorphism> = Vec::new();
        for s in seeds {
            if !s.is_identity() && !gens.contains(&s) {
                gens.push(s);
            }
        }
        let mut closed = Subgroup::generate(self.depth, &gens).expect("subgroup of a closed group");
        loop {
            let mut added = false;
            for g in &self.generators {
                for x in gens.clone() {
                    let y = x.conjugate_unchecked(g);
                    if !closed.contains(&y) {
                        gens.push(y);
                        closed =
                            Subgroup::generate(self.depth, &gens).expect("subgroup of a closed group");
                        added = true;
                    }
                }
            }
            if !added {
                return closed;
            }
        }
    }

    /// Coordinates of `G / Phi(G)` with respect to a basis drawn from the
    /// generators.
    pub fn frattini_quotient(&self) -> FrattiniQuotient {
        let FrattiniData { phi, quotient_rank } = self.frattini();
        let mut basis: Vec<TreeAutomorphism> = Vec::new();
        let mut span = phi.clone();
        for g in &self.generators {
            if !span.contains(g) {
                basis.push(*g);
                let mut gens = phi.generators.clone();
                gens.extend(basis.iter().copied());
                span = Subgroup::generate(self.depth, &gens).expect("subgroup of a closed group");
            }
        }
        debug_assert_eq!(basis.len() as u32, quotient_rank);
        let mut labels = vec![0u64; self.order()];
        for code in 0..1u64 << basis.len() {
            let rep = lift(self.depth, &basis, code);
            for f in phi.elements() {
                let idx = self
                    .index_of(&rep.compose(f))
                    .expect("coset representatives lie in the group");
                labels[idx] = code;
            }
        }
        FrattiniQuotient {
            phi,
            basis,
            labels,
        }
    }

    /// The index-2 subgroups: preimages of the `2^m - 1` hyperplanes of
    /// `G / Phi(G)`, one per nonzero functional in increasing order.
    pub fn maximal_subgroups(&self) -> Result<Vec<Subgroup>> {
        if self.is_trivial() {
            return Err(Error::TrivialGroup);
        }
        let quotient = self.frattini_quotient();
        let m = quotient.basis.len();
        let mut out = Vec::with_capacity((1 << m) - 1);
        for functional in 1u64..1 << m {
            let elements: Vec<_> = self
                .elements
                .iter()
                .zip(&quotient.labels)
                .filter(|(_, &l)| (l & functional).count_ones() % 2 == 0)
                .map(|(x, _)| *x)
                .collect();
            let pivot = functional.trailing_zeros();
            let mut generators = quotient.phi.generators.clone();
            for i in 0..m as u32 {
                let code = if functional >> i & 1 == 0 {
                    1 << i
                } else if i != pivot {
                    1 << i | 1 << pivot
                } else {
                    continue;
                };
                generators.push(lift(self.depth, &quotient.basis, code));
            }
            out.push(Subgroup::from_parts(self.depth, generators, elements));
        }
        Ok(out)
    }

    pub fn to_record(&self) -> SubgroupRecord {
        SubgroupRecord {
            depth: self.depth.get(),
            generators: self.generators.iter().map(|g| g.to_cycle_string()).collect(),
            order: self.order(),
            trivial_kernel_intersection: self.has_trivial_kernel_intersection(),
            transitive_element: self.contains_transitive(),
        }
    }

    pub fn from_record(record: &SubgroupRecord) -> Result<Subgroup> {
        let depth = Depth::new(record.depth)?;
        let gens = record
            .generators
            .iter()
            .map(|g| TreeAutomorphism::parse(depth, g))
            .collect::<Result<Vec<_>>>()?;
        let group = Subgroup::generate(depth, &gens)?;
        if group.order() != record.order
            || group.has_trivial_kernel_intersection() != record.trivial_kernel_intersection
            || group.contains_transitive() != record.transitive_element
        {
            return Err(Error::Record(format!(
                "subgroup record <{}> disagrees with its recomputed data",
                record.generators.join(",")
            )));
        }
        Ok(group)
    }

    pub fn generator_string(&self) -> String {
        format_generator_list(&self.generators)
    }

    pub fn parse(depth: Depth, generators: &str) -> Result<Subgroup> {
        Subgroup::generate(depth, &parse_generator_list(depth, generators)?)
    }
}

fn lift(depth: Depth, basis: &[TreeAutomorphism], code: u64) -> TreeAutomorphism {
    basis
        .iter()
        .enumerate()
        .filter(|(i, _)| code >> i & 1 == 1)
        .fold(TreeAutomorphism::identity(depth), |acc, (_, b)| acc.compose(b))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrattiniData {
    pub phi: Subgroup,
    /// `m(G)`, with `|G| / |Phi(G)| = 2^m`.
    pub quotient_rank: u32,
}

/// `G / Phi(G)` as `F_2^m`: `labels[i]` is the coordinate vector of the
/// `i`-th sorted element, relative to `basis`.
#[derive(Clone, Debug)]
pub struct FrattiniQuotient {
    pub phi: Subgroup,
    pub basis: Vec<TreeAutomorphism>,
    pub labels: Vec<u64>,
}

impl FrattiniQuotient {
    pub fn label_of(&self, group: &Subgroup, x: &TreeAutomorphism) -> Option<u64> {
        group.index_of(x).map(|i| self.labels[i])
    }
}

/// `C_{K_n}(S)`: kernel elements `(u, 1)` commuting with every element of
/// `set`, i.e. `u` fixed by every projection.
pub fn centralizer_in_kernel(depth: Depth, set: &[TreeAutomorphism]) -> Result<Subgroup> {
    let space = kernel_centralizer_space(depth, set)?;
    let to_elem = |b: F2Vector| {
        KnVector::new(depth, b)
            .expect("fix vectors have kernel rank length")
            .to_automorphism()
    };
    let generators = space.basis().into_iter().map(to_elem).collect();
    let elements = space.elements().map(to_elem).collect();
    Ok(Subgroup::from_parts(depth, generators, elements))
}

/// The swap vectors of `C_{K_n}(S)`: `Fix(pi_n(S))`.
pub fn kernel_centralizer_space(depth: Depth, set: &[TreeAutomorphism]) -> Result<F2Subspace> {
    for s in set {
        if s.depth() != depth {
            return Err(Error::DepthMismatch {
                left: depth.get(),
                right: s.depth().get(),
            });
        }
    }
    let projections: Vec<_> = set.iter().map(|s| s.project()).collect();
    f2::fix_subspace_of_set(depth.get() - 1, &projections)
}

/// Subgroup generated by between 1 and `max_gens` uniformly random elements,
/// the count itself uniform. Deterministic in `seed`.
pub fn random_subgroup(depth: Depth, max_gens: usize, seed: u64) -> Result<Subgroup> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_subgroup_with(depth, max_gens, &mut rng)
}

pub fn random_subgroup_with<R: rand::Rng + ?Sized>(
    depth: Depth,
    max_gens: usize,
    rng: &mut R,
) -> Result<Subgroup> {
    let count = rng.gen_range(1..=max_gens.max(1));
    let gens: Vec<_> = (0..count)
        .map(|_| TreeAutomorphism::random(depth, rng))
        .collect();
    Subgroup::generate(depth, &gens)
}

/// Serialized form of a subgroup: generators in cycle notation plus derived
/// facts that are re-checked on load.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubgroupRecord {
    pub depth: u8,
    pub generators: Vec<String>,
    pub order: usize,
    pub trivial_kernel_intersection: bool,
    pub transitive_element: bool,
}

/// Multiplication table of `W_n` for `n <= 3`, so subgroups fit in a `u128`
/// bitset.
struct SmallTable {
    elements: Vec<TreeAutomorphism>,
    mul: Vec<u8>,
}

impl SmallTable {
    fn new(depth: Depth) -> SmallTable {
        let mut elements = TreeAutomorphism::all(depth);
        elements.sort_unstable();
        let index: HashMap<TreeAutomorphism, u8> = elements
            .iter()
            .enumerate()
            .map(|(i, x)| (*x, i as u8))
            .collect();
        let size = elements.len();
        let mut mul = vec![0u8; size * size];
        for (i, x) in elements.iter().enumerate() {
            for (j, y) in elements.iter().enumerate() {
                mul[i * size + j] = index[&x.compose(y)];
            }
        }
        SmallTable { elements, mul }
    }

    fn closure(&self, gens: &[u8]) -> u128 {
        let size = self.elements.len();
        let mut set = 1u128; // identity sorts first
        let mut queue = vec![0u8];
        while let Some(x) = queue.pop() {
            for &g in gens {
                let y = self.mul[x as usize * size + g as usize];
                if set >> y & 1 == 0 {
                    set |= 1 << y;
                    queue.push(y);
                }
            }
        }
        set
    }
}

/// Every subgroup of `W_n`, `n <= 3`, exactly once.
///
/// Grown breadth-first from the trivial group by adjoining one element at a
/// time and deduplicating on the element set. The result is sorted by order,
/// then by element set.
pub fn enumerate_all_subgroups(depth: Depth) -> Result<Vec<Subgroup>> {
    if depth.get() > 3 {
        return Err(Error::TooDeepForEnumeration(depth.get()));
    }
    let table = SmallTable::new(depth);
    let size = table.elements.len();
    let mut seen: HashSet<u128> = HashSet::from([1u128]);
    let mut found: Vec<(u128, Vec<u8>)> = vec![(1, Vec::new())];
    let mut i = 0;
    while i < found.len() {
        let (set, gens) = found[i].clone();
        for g in 0..size as u8 {
            if set >> g & 1 == 1 {
                continue;
            }
            let mut next_gens = gens.clone();
            next_gens.push(g);
            let next = table.closure(&next_gens);
            if seen.insert(next) {
                found.push((next, next_gens));
            }
        }
        i += 1;
    }
    found.sort_by_key(|(set, _)| (set.count_ones(), *set));
    Ok(found
        .into_iter()
        .map(|(set, gens)| {
            let elements = (0..size)
                .filter(|&k| set >> k & 1 == 1)
                .map(|k| table.elements[k])
                .collect();
            let generators = gens.iter().map(|&g| table.elements[g as usize]).collect();
            Subgroup::from_parts(depth, generators, elements)
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::odometer;

    fn d(n: u8) -> Depth {
        Depth::new(n).unwrap()
    }

    fn group(n: u8, gens: &str) -> Subgroup {
        Subgroup::parse(d(n), gens).unwrap()
    }

    fn cyc(n: u8, gens: &str) -> Vec<TreeAutomorphism> {
        parse_generator_list(d(n), gens).unwrap()
    }

    #[test]
    fn closure_examples() {
        let w2 = Subgroup::whole(d(2)).unwrap();
        assert_eq!(w2.order(), 8);
        assert_eq!(TreeAutomorphism::all(d(2)).len(), w2.order());
        let triv = Subgroup::generate(d(2), &[]).unwrap();
        assert!(triv.is_trivial());
        let c4 = group(2, "(1,3,2,4)");
        assert_eq!(c4.order(), 4);
        assert!(c4.is_cyclic());
        assert!(Subgroup::generate(d(2), &cyc(3, "(1,2)")).is_err());
    }

    #[test]
    fn closure_bound_is_enforced() {
        let gens: Vec<_> = (1..=4).map(|i| standard_generator(i, d(4)).unwrap()).collect();
        assert_eq!(
            Subgroup::generate_bounded(d(4), &gens, 1000),
            Err(Error::ClosureBound(1000))
        );
    }

    #[test]
    fn whole_group_orders() {
        for (n, order) in [(1u8, 2usize), (2, 8), (3, 128), (4, 1 << 15)] {
            assert_eq!(Subgroup::whole(d(n)).unwrap().order(), order);
        }
    }

    #[test]
    fn frattini_examples() {
        let w2 = Subgroup::whole(d(2)).unwrap();
        let f = w2.frattini();
        assert_eq!(f.phi.elements(), group(2, "(1,2)(3,4)").elements());
        assert_eq!(f.quotient_rank, 2);

        let triv = Subgroup::trivial(d(2)).frattini();
        assert!(triv.phi.is_trivial());
        assert_eq!(triv.quotient_rank, 0);

        let c4 = group(2, "(1,3,2,4)").frattini();
        assert_eq!(c4.phi.elements(), group(2, "(1,2)(3,4)").elements());
        assert_eq!(c4.quotient_rank, 1);
    }

    #[test]
    fn maximal_subgroup_examples() {
        let w2 = Subgroup::whole(d(2)).unwrap();
        let maxes = w2.maximal_subgroups().unwrap();
        assert_eq!(maxes.len(), 3);
        let phi = w2.frattini().phi;
        for m in &maxes {
            assert_eq!(m.order(), 4);
            assert!(phi.is_subgroup_of(m));
            // generators must regenerate the stored element set
            assert_eq!(&Subgroup::generate(d(2), m.generators()).unwrap(), m);
            for g in w2.elements() {
                for x in m.generators() {
                    assert!(m.contains(&x.conjugate_by(g).unwrap()));
                }
            }
        }
        let c2 = group(2, "(1,2)");
        assert_eq!(c2.maximal_subgroups().unwrap(), vec![Subgroup::trivial(d(2))]);
        assert_eq!(
            Subgroup::trivial(d(2)).maximal_subgroups(),
            Err(Error::TrivialGroup)
        );
    }

    #[test]
    fn kernel_intersection_examples() {
        let w2 = Subgroup::whole(d(2)).unwrap();
        assert_eq!(w2.intersect_with_kernel().order(), 4);
        assert_eq!(w2.intersect_with_kernel(), Subgroup::kernel(d(2)));
        assert!(group(2, "(1,3)(2,4)").has_trivial_kernel_intersection());
        assert!(Subgroup::trivial(d(3)).intersect_with_kernel().is_trivial());
        assert_eq!(Subgroup::kernel(d(4)).order(), 256);
    }

    #[test]
    fn centralizer_examples() {
        let w2 = Subgroup::whole(d(2)).unwrap();
        let expected = group(2, "(1,2)(3,4)");
        assert_eq!(centralizer_in_kernel(d(2), w2.generators()).unwrap(), expected);
        assert_eq!(
            centralizer_in_kernel(d(3), &[]).unwrap(),
            Subgroup::kernel(d(3))
        );
        let a2 = group(2, "(1,3)(2,4)");
        assert_eq!(centralizer_in_kernel(d(2), a2.generators()).unwrap(), expected);
    }

    #[test]
    fn projection_examples() {
        let w2 = Subgroup::whole(d(2)).unwrap();
        assert_eq!(w2.project(), Subgroup::whole(d(1)).unwrap());
        assert!(Subgroup::kernel(d(2)).project().is_trivial());
        assert_eq!(
            group(2, "(1,3,2,4)").project(),
            Subgroup::whole(d(1)).unwrap()
        );
        for h in enumerate_all_subgroups(d(3)).unwrap() {
            assert_eq!(
                h.project().order(),
                h.order() / h.intersect_with_kernel().order()
            );
        }
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_all_subgroups(d(1)).unwrap().len(), 2);
        assert_eq!(enumerate_all_subgroups(d(2)).unwrap().len(), 10);
        assert!(enumerate_all_subgroups(d(4)).is_err());
    }

    #[test]
    fn enumeration_matches_brute_force_on_w2() {
        // every subgroup of a group of order 8 is generated by at most 3
        // elements, so closing all triples finds them all
        let all = TreeAutomorphism::all(d(2));
        let mut brute = HashSet::new();
        for a in &all {
            for b in &all {
                for c in &all {
                    brute.insert(Subgroup::generate(d(2), &[*a, *b, *c]).unwrap());
                }
            }
        }
        let listed: HashSet<_> = enumerate_all_subgroups(d(2)).unwrap().into_iter().collect();
        assert_eq!(listed, brute);
    }

    #[test]
    fn random_subgroup_is_deterministic() {
        let a = random_subgroup(d(4), 3, 17).unwrap();
        let b = random_subgroup(d(4), 3, 17).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.generators(), b.generators());
    }

    #[test]
    fn record_round_trip() {
        let g = Subgroup::generate(d(3), &[odometer(d(3)), standard_generator(1, d(3)).unwrap()])
            .unwrap();
        let rec = g.to_record();
        assert!(rec.transitive_element);
        let json = serde_json::to_string(&rec).unwrap();
        let back: SubgroupRecord = serde_json::from_str(&json).unwrap();
        assert_eq!(Subgroup::from_record(&back).unwrap(), g);
        let mut bad = rec.clone();
        bad.order += 1;
        assert!(Subgroup::from_record(&bad).is_err());
    }
}
