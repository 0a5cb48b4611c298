//! Automorphisms of the depth-`n` rooted binary tree.
//!
//! Leaves are labelled `1..=2^n` depth-first, so the vertex `j` on level
//! `n - 1` covers leaves `2j - 1` and `2j`, and every level-`k` vertex covers a
//! contiguous block of `2^(n-k)` leaves. An automorphism is stored by its leaf
//! permutation (0-based internally). Products follow function composition:
//! `x * y` applies `y` first, so `a_1 * a_2 = (1,3,2,4)`.
//!
//! The semidirect form `(v, s)` has `s` the induced action on level `n - 1`
//! and `v` the swap bits read at the destination vertex: the leaf at
//! `(vertex j, position p)` goes to `(s(j), p + v_{s(j)})`. With that
//! convention `(v, s)(w, t) = (v + s(w), st)`.

use std::fmt;

use rand::Rng;

use crate::error::{Error, Result};
use crate::f2::F2Vector;

pub const MAX_DEPTH: u8 = 5;
pub(crate) const MAX_LEAVES: usize = 1 << MAX_DEPTH;

/// Tree depth. Public constructors accept `1..=MAX_DEPTH`; depth 0 (the
/// one-vertex tree) only arises by projecting a depth-1 element.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Depth(u8);

impl Depth {
    pub fn new(n: u8) -> Result<Depth> {
        if n == 0 || n > MAX_DEPTH {
            return Err(Error::DepthOutOfRange(n));
        }
        Ok(Depth(n))
    }

    pub fn get(self) -> u8 {
        self.0
    }

    pub fn leaves(self) -> usize {
        1 << self.0
    }

    /// Length of bottom-level kernel vectors, `2^(n-1)`.
    pub fn kernel_rank(self) -> usize {
        assert!(self.0 >= 1);
        1 << (self.0 - 1)
    }

    pub fn parent(self) -> Depth {
        assert!(self.0 >= 1);
        Depth(self.0 - 1)
    }
}

impl fmt::Display for Depth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

fn check_same_depth(a: Depth, b: Depth) -> Result<()> {
    if a != b {
        return Err(Error::DepthMismatch {
            left: a.0,
            right: b.0,
        });
    }
    Ok(())
}

const IDENTITY_IMAGES: [u8; MAX_LEAVES] = {
    let mut a = [0u8; MAX_LEAVES];
    let mut i = 0;
    while i < MAX_LEAVES {
        a[i] = i as u8;
        i += 1;
    }
    a
};

/// An element of `W_n = Aut(T_n)`.
///
/// Slots past `2^n` in the image array always hold the identity, so equality,
/// hashing and ordering on the raw array are canonical, and inclusion into a
/// deeper tree only relabels the depth.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TreeAutomorphism {
    depth: Depth,
    images: [u8; MAX_LEAVES],
}

impl TreeAutomorphism {
    pub fn identity(depth: Depth) -> Self {
        TreeAutomorphism {
            depth,
            images: IDENTITY_IMAGES,
        }
    }

    /// Builds an element from 0-based leaf images, checking that they form a
    /// bijection preserving every level's block partition.
    pub fn from_images(depth: Depth, images: &[usize]) -> Result<Self> {
        let m = depth.leaves();
        if images.len() != m {
            return Err(Error::LengthMismatch {
                expected: m,
                actual: images.len(),
            });
        }
        let mut seen = 0u64;
        let mut arr = IDENTITY_IMAGES;
        for (k, &img) in images.iter().enumerate() {
            if img >= m || seen >> img & 1 == 1 {
                return Err(Error::NotTreeAutomorphism(format!(
                    "image list {images:?} is not a permutation of 0..{m}"
                )));
            }
            seen |= 1 << img;
            arr[k] = img as u8;
        }
        for shift in 1..depth.0 {
            let block = 1usize << shift;
            for start in (0..m).step_by(block) {
                let target = arr[start] >> shift;
                if arr[start..start + block].iter().any(|&i| i >> shift != target) {
                    return Err(Error::NotTreeAutomorphism(format!(
                        "image list {images:?} splits a block of size {block}"
                    )));
                }
            }
        }
        Ok(TreeAutomorphism { depth, images: arr })
    }

    pub fn depth(&self) -> Depth {
        self.depth
    }

    /// Number of leaves, `2^n`.
    pub fn degree(&self) -> usize {
        self.depth.leaves()
    }

    /// 0-based image of 0-based leaf `k`.
    #[inline]
    pub fn image(&self, k: usize) -> usize {
        self.images[k] as usize
    }

    pub fn images(&self) -> Vec<usize> {
        self.images[..self.degree()]
            .iter()
            .map(|&i| i as usize)
            .collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images == IDENTITY_IMAGES
    }

    /// Product without a depth check; `(x * y)(k) = x(y(k))`.
    #[inline]
    pub fn compose(&self, y: &TreeAutomorphism) -> TreeAutomorphism {
        debug_assert_eq!(self.depth, y.depth);
        let mut images = IDENTITY_IMAGES;
        for (k, slot) in images.iter_mut().take(self.degree()).enumerate() {
            *slot = self.images[y.images[k] as usize];
        }
        TreeAutomorphism {
            depth: self.depth,
            images,
        }
    }

    pub fn multiply(&self, y: &TreeAutomorphism) -> Result<TreeAutomorphism> {
        check_same_depth(self.depth, y.depth)?;
        Ok(self.compose(y))
    }

    pub fn inverse(&self) -> TreeAutomorphism {
        let mut images = IDENTITY_IMAGES;
        for k in 0..self.degree() {
            images[self.images[k] as usize] = k as u8;
        }
        TreeAutomorphism {
            depth: self.depth,
            images,
        }
    }

    /// `g * self * g^-1`, written `self^g` throughout the crate.
    pub fn conjugate_by(&self, g: &TreeAutomorphism) -> Result<TreeAutomorphism> {
        check_same_depth(self.depth, g.depth)?;
        Ok(self.conjugate_unchecked(g))
    }

    #[inline]
    pub(crate) fn conjugate_unchecked(&self, g: &TreeAutomorphism) -> TreeAutomorphism {
        // (g x g^-1)(g(k)) = g(x(k))
        let mut images = IDENTITY_IMAGES;
        for k in 0..self.degree() {
            images[g.images[k] as usize] = g.images[self.images[k] as usize];
        }
        TreeAutomorphism {
            depth: self.depth,
            images,
        }
    }

    pub fn commutator(&self, y: &TreeAutomorphism) -> TreeAutomorphism {
        self.inverse()
            .compose(&y.inverse())
            .compose(self)
            .compose(y)
    }

    pub fn power(&self, k: i64) -> TreeAutomorphism {
        let base = if k < 0 { self.inverse() } else { *self };
        let mut acc = TreeAutomorphism::identity(self.depth);
        let mut sq = base;
        let mut e = k.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose(&sq);
            }
            sq = sq.compose(&sq);
            e >>= 1;
        }
        acc
    }

    /// Least `k >= 1` with `self^k = id`.
    pub fn order(&self) -> u64 {
        let mut k = 1;
        let mut acc = *self;
        while !acc.is_identity() {
            acc = acc.compose(self);
            k += 1;
        }
        k
    }

    /// Action on the `2^k` vertices of level `k` (`0 <= k <= n`).
    pub fn level_action(&self, k: u8) -> Vec<usize> {
        assert!(k <= self.depth.0);
        let shift = self.depth.0 - k;
        (0..1usize << k)
            .map(|u| (self.images[u << shift] >> shift) as usize)
            .collect()
    }

    /// The image under `pi_n : W_n -> W_{n-1}`, forgetting the bottom level.
    pub fn project(&self) -> TreeAutomorphism {
        assert!(self.depth.0 >= 1, "cannot project the trivial tree");
        let half = self.degree() / 2;
        let mut images = IDENTITY_IMAGES;
        for (j, slot) in images.iter_mut().take(half).enumerate() {
            *slot = self.images[2 * j] >> 1;
        }
        TreeAutomorphism {
            depth: self.depth.parent(),
            images,
        }
    }

    /// Extends to depth `n` by acting on the leftmost depth-`i` subtree and
    /// fixing every leaf past `2^i`.
    pub fn include(&self, n: Depth) -> Result<TreeAutomorphism> {
        if self.depth > n {
            return Err(Error::Inclusion {
                from: self.depth.0,
                to: n.0,
            });
        }
        Ok(TreeAutomorphism {
            depth: n,
            images: self.images,
        })
    }

    /// `(v, s)` with `s = pi_n(self)` and `v` in `F_2^{2^(n-1)}`.
    pub fn semidirect(&self) -> (F2Vector, TreeAutomorphism) {
        let s = self.project();
        let half = self.degree() / 2;
        let mut v = F2Vector::zero(half);
        for j in 0..half {
            v.set(s.image(j), self.images[2 * j] & 1 == 1);
        }
        (v, s)
    }

    pub fn from_semidirect(v: &F2Vector, s: &TreeAutomorphism) -> Result<TreeAutomorphism> {
        if s.depth.0 >= MAX_DEPTH {
            return Err(Error::DepthOutOfRange(s.depth.0 + 1));
        }
        let depth = Depth(s.depth.0 + 1);
        if v.len() != s.degree() {
            return Err(Error::LengthMismatch {
                expected: s.degree(),
                actual: v.len(),
            });
        }
        let mut images = IDENTITY_IMAGES;
        for j in 0..s.degree() {
            let sj = s.image(j);
            let flip = v.get(sj) as usize;
            for p in 0..2 {
                images[2 * j + p] = (2 * sj + (p ^ flip)) as u8;
            }
        }
        Ok(TreeAutomorphism { depth, images })
    }

    /// True when the element lies in `K_n = Ker(pi_n)`.
    pub fn is_in_kernel(&self) -> bool {
        (0..self.degree()).all(|k| self.images[k] >> 1 == (k >> 1) as u8)
    }

    pub fn to_kernel_vector(&self) -> Result<KnVector> {
        if !self.is_in_kernel() {
            return Err(Error::NotInKernel);
        }
        let half = self.degree() / 2;
        let mut bits = F2Vector::zero(half);
        for j in 0..half {
            bits.set(j, self.images[2 * j] & 1 == 1);
        }
        Ok(KnVector {
            depth: self.depth,
            bits,
        })
    }

    pub fn from_kernel_vector(u: &KnVector) -> TreeAutomorphism {
        let mut images = IDENTITY_IMAGES;
        for j in 0..u.bits.len() {
            if u.bits.get(j) {
                images[2 * j] = (2 * j + 1) as u8;
                images[2 * j + 1] = (2 * j) as u8;
            }
        }
        TreeAutomorphism {
            depth: u.depth,
            images,
        }
    }

    /// True when the leaf permutation is a single `2^n`-cycle.
    pub fn is_transitive(&self) -> bool {
        let m = self.degree();
        let mut k = self.images[0] as usize;
        let mut len = 1;
        while k != 0 {
            k = self.images[k] as usize;
            len += 1;
        }
        len == m
    }

    /// Cycles of the leaf permutation (0-based), each starting at its
    /// smallest point, ordered by that point; fixed points included.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let m = self.degree();
        let mut seen = vec![false; m];
        let mut out = Vec::new();
        for start in 0..m {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut k = self.image(start);
            while k != start {
                seen[k] = true;
                cycle.push(k);
                k = self.image(k);
            }
            out.push(cycle);
        }
        out
    }

    /// Swap bits of every internal vertex in breadth-first order (root
    /// first). Bit for vertex `u` on level `k` says whether the element swaps
    /// the two children of `u`.
    pub fn portrait_bits(&self) -> Vec<bool> {
        let n = self.depth.0;
        let mut bits = Vec::with_capacity(self.degree() - 1);
        for k in 0..n {
            let below = self.level_action(k + 1);
            for u in 0..1usize << k {
                bits.push(below[2 * u] & 1 == 1);
            }
        }
        bits
    }

    pub fn from_portrait_bits(depth: Depth, bits: &[bool]) -> Result<TreeAutomorphism> {
        let expected = depth.leaves() - 1;
        if bits.len() != expected {
            return Err(Error::LengthMismatch {
                expected,
                actual: bits.len(),
            });
        }
        let mut level = vec![0usize];
        let mut idx = 0;
        for _ in 0..depth.0 {
            let mut next = vec![0usize; level.len() * 2];
            for (u, &img) in level.iter().enumerate() {
                let swap = bits[idx + u] as usize;
                for c in 0..2 {
                    next[2 * u + c] = 2 * img + (c ^ swap);
                }
            }
            idx += level.len();
            level = next;
        }
        TreeAutomorphism::from_images(depth, &level)
    }

    /// Uniformly random element, drawn as a random portrait.
    pub fn random<R: Rng + ?Sized>(depth: Depth, rng: &mut R) -> TreeAutomorphism {
        let bits: Vec<bool> = (0..depth.leaves() - 1).map(|_| rng.gen()).collect();
        TreeAutomorphism::from_portrait_bits(depth, &bits).expect("portraits always decode")
    }

    /// Uniformly random transitive element: a portrait with an odd number of
    /// swaps on every level.
    pub fn random_transitive<R: Rng + ?Sized>(depth: Depth, rng: &mut R) -> TreeAutomorphism {
        let mut bits: Vec<bool> = (0..depth.leaves() - 1).map(|_| rng.gen()).collect();
        let mut start = 0;
        for k in 0..depth.0 {
            let width = 1usize << k;
            let parity = bits[start..start + width].iter().filter(|&&b| b).count() % 2;
            if parity == 0 {
                let pick = rng.gen_range(start..start + width);
                bits[pick] = !bits[pick];
            }
            start += width;
        }
        TreeAutomorphism::from_portrait_bits(depth, &bits).expect("portraits always decode")
    }

    /// Every element of `W_n`, in portrait order. Only sensible for `n <= 4`.
    pub fn all(depth: Depth) -> Vec<TreeAutomorphism> {
        let nbits = depth.leaves() - 1;
        assert!(nbits <= 16, "refusing to list 2^{nbits} elements");
        (0..1u32 << nbits)
            .map(|code| {
                let bits: Vec<bool> = (0..nbits).map(|i| code >> i & 1 == 1).collect();
                TreeAutomorphism::from_portrait_bits(depth, &bits).expect("portraits always decode")
            })
            .collect()
    }
}

impl std::ops::Mul for TreeAutomorphism {
    type Output = TreeAutomorphism;

    /// Panics on a depth mismatch; use [`TreeAutomorphism::multiply`] for a
    /// checked product.
    fn mul(self, rhs: TreeAutomorphism) -> TreeAutomorphism {
        assert_eq!(self.depth, rhs.depth, "depth mismatch in product");
        self.compose(&rhs)
    }
}

impl std::ops::Mul for &TreeAutomorphism {
    type Output = TreeAutomorphism;

    fn mul(self, rhs: &TreeAutomorphism) -> TreeAutomorphism {
        assert_eq!(self.depth, rhs.depth, "depth mismatch in product");
        self.compose(rhs)
    }
}

/// The standard generator `a_i = (1, 2^(i-1)+1)(2, 2^(i-1)+2)...(2^(i-1), 2^i)`
/// viewed inside `W_n`.
pub fn standard_generator(i: usize, n: Depth) -> Result<TreeAutomorphism> {
    if i == 0 || i > n.get() as usize {
        return Err(Error::GeneratorIndex {
            index: i,
            depth: n.get(),
        });
    }
    let half = 1usize << (i - 1);
    let mut images = IDENTITY_IMAGES;
    for k in 0..half {
        images[k] = (k + half) as u8;
        images[k + half] = k as u8;
    }
    Ok(TreeAutomorphism { depth: n, images })
}

/// The odometer `x_n = a_1 a_2 ... a_n`, a single `2^n`-cycle.
pub fn odometer(n: Depth) -> TreeAutomorphism {
    (1..=n.get() as usize).fold(TreeAutomorphism::identity(n), |acc, i| {
        acc.compose(&standard_generator(i, n).expect("index in range"))
    })
}

/// Orbit partition of `0..m` under the group generated by `set`; entry `k` is
/// the smallest point in the orbit of `k`.
pub(crate) fn orbit_partition(m: usize, set: &[TreeAutomorphism]) -> Vec<usize> {
    let mut parent: Vec<usize> = (0..m).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for s in set {
        for k in 0..m {
            let a = find(&mut parent, k);
            let b = find(&mut parent, s.image(k));
            if a != b {
                let (lo, hi) = if a < b { (a, b) } else { (b, a) };
                parent[hi] = lo;
            }
        }
    }
    (0..m).map(|k| find(&mut parent, k)).collect()
}

/// An element of `K_n`, the bottom-level kernel, as its swap vector in
/// `F_2^{2^(n-1)}`. Bit `j` swaps the two leaves under level-`(n-1)` vertex
/// `j`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct KnVector {
    depth: Depth,
    bits: F2Vector,
}

impl KnVector {
    pub fn new(depth: Depth, bits: F2Vector) -> Result<Self> {
        if bits.len() != depth.kernel_rank() {
            return Err(Error::LengthMismatch {
                expected: depth.kernel_rank(),
                actual: bits.len(),
            });
        }
        Ok(KnVector { depth, bits })
    }

    pub fn zero(depth: Depth) -> Self {
        KnVector {
            depth,
            bits: F2Vector::zero(depth.kernel_rank()),
        }
    }

    pub fn depth(&self) -> Depth {
        self.depth
    }

    pub fn bits(&self) -> &F2Vector {
        &self.bits
    }

    pub fn to_automorphism(&self) -> TreeAutomorphism {
        TreeAutomorphism::from_kernel_vector(self)
    }

    /// All `2^(2^(n-1))` elements of `K_n`.
    pub fn all(depth: Depth) -> impl Iterator<Item = KnVector> {
        F2Vector::all(depth.kernel_rank()).map(move |bits| KnVector { depth, bits })
    }
}

impl fmt::Display for KnVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.bits.fmt(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(n: u8) -> Depth {
        Depth::new(n).unwrap()
    }

    fn perm(n: u8, s: &str) -> TreeAutomorphism {
        TreeAutomorphism::parse(d(n), s).unwrap()
    }

    /// Composes two 0-based image lists as plain permutations, `x` after `y`.
    fn compose_lists(x: &[usize], y: &[usize]) -> Vec<usize> {
        y.iter().map(|&k| x[k]).collect()
    }

    #[test]
    fn depth_bounds() {
        assert!(Depth::new(0).is_err());
        assert!(Depth::new(6).is_err());
        assert_eq!(d(3).leaves(), 8);
        assert_eq!(d(3).kernel_rank(), 4);
    }

    #[test]
    fn identity_examples() {
        assert_eq!(TreeAutomorphism::identity(d(2)).images(), vec![0, 1, 2, 3]);
        assert_eq!(TreeAutomorphism::identity(d(1)).images(), vec![0, 1]);
        assert_eq!(
            TreeAutomorphism::identity(d(3)).project(),
            TreeAutomorphism::identity(d(2))
        );
    }

    #[test]
    fn rejects_non_tree_permutations() {
        // (2,3) splits the block {1,2}
        assert!(TreeAutomorphism::from_images(d(2), &[0, 2, 1, 3]).is_err());
        assert!(TreeAutomorphism::from_images(d(2), &[0, 0, 1, 3]).is_err());
        assert!(TreeAutomorphism::from_images(d(2), &[0, 1, 2]).is_err());
    }

    // Fixes the composition order: the product a_1 a_2 must be the 4-cycle
    // (1,3,2,4) that appears among the listed generators of the second
    // Markov group.
    #[test]
    fn composition_order_fixture() {
        let a1 = [1, 0, 2, 3];
        let a2 = [2, 3, 0, 1];
        let brute = compose_lists(&a1, &a2);
        assert_eq!(brute, vec![2, 3, 1, 0]);
        let prod = standard_generator(1, d(2)).unwrap() * standard_generator(2, d(2)).unwrap();
        assert_eq!(prod.images(), brute);
        assert_eq!(prod, perm(2, "(1,3,2,4)"));
    }

    #[test]
    fn semidirect_product_example() {
        let tau = perm(1, "(1,2)");
        let x = TreeAutomorphism::from_semidirect(&"10".parse().unwrap(), &tau).unwrap();
        let y = TreeAutomorphism::from_semidirect(&"01".parse().unwrap(), &tau).unwrap();
        let brute = compose_lists(&x.images(), &y.images());
        assert_eq!(brute, vec![0, 1, 2, 3]);
        assert!((x * y).is_identity());
    }

    #[test]
    fn multiply_checks_depth() {
        let x = TreeAutomorphism::identity(d(2));
        let y = TreeAutomorphism::identity(d(3));
        assert!(x.multiply(&y).is_err());
        let s = perm(2, "(1,3)(2,4)");
        assert_eq!(s.multiply(&x).unwrap(), s);
    }

    #[test]
    fn inverse_conjugate_order() {
        let x = perm(2, "(1,3)(2,4)");
        let g = perm(2, "(1,2)");
        assert_eq!(x.conjugate_by(&g).unwrap(), perm(2, "(1,4)(2,3)"));
        let c = perm(2, "(1,3,2,4)");
        assert_eq!(c.inverse(), perm(2, "(1,4,2,3)"));
        assert_eq!(c.order(), 4);
        assert_eq!(c.power(-1), c.inverse());
        assert_eq!(c.power(4), TreeAutomorphism::identity(d(2)));
        assert!(x.conjugate_by(&TreeAutomorphism::identity(d(3))).is_err());
    }

    #[test]
    fn projection_examples() {
        let a2 = standard_generator(2, d(2)).unwrap();
        let (v, s) = a2.semidirect();
        assert!(v.is_zero());
        assert_eq!(s, perm(1, "(1,2)"));
        assert_eq!(a2.project(), perm(1, "(1,2)"));
        let k = perm(2, "(3,4)");
        assert!(k.project().is_identity());
        assert_eq!(odometer(d(3)).project(), odometer(d(2)));
        let one = perm(1, "(1,2)");
        assert_eq!(one.project().degree(), 1);
    }

    #[test]
    fn include_examples() {
        let a1 = perm(1, "(1,2)").include(d(3)).unwrap();
        assert_eq!(a1.images(), vec![1, 0, 2, 3, 4, 5, 6, 7]);
        let x2 = odometer(d(2));
        assert_eq!(x2.include(d(2)).unwrap(), x2);
        let x2in3 = x2.include(d(3)).unwrap();
        assert_eq!(x2in3, perm(3, "(1,3,2,4)"));
        assert_eq!(x2in3 * x2in3, perm(3, "(1,2)(3,4)"));
        assert!(x2in3.include(d(2)).is_err());
    }

    #[test]
    fn generators_and_odometer() {
        assert_eq!(standard_generator(2, d(2)).unwrap(), perm(2, "(1,3)(2,4)"));
        assert_eq!(standard_generator(1, d(3)).unwrap(), perm(3, "(1,2)"));
        assert!(standard_generator(0, d(2)).is_err());
        assert!(standard_generator(3, d(2)).is_err());
        assert_eq!(odometer(d(2)), perm(2, "(1,3,2,4)"));
        for n in 1..=MAX_DEPTH {
            let x = odometer(d(n));
            assert!(x.is_transitive());
            assert_eq!(x.order(), 1 << n);
        }
    }

    #[test]
    fn kernel_vectors() {
        let u = KnVector::new(d(2), "10".parse().unwrap()).unwrap();
        assert_eq!(u.to_automorphism(), perm(2, "(1,2)"));
        assert!(perm(2, "(1,2)(3,4)").is_in_kernel());
        assert!(!standard_generator(2, d(2)).unwrap().is_in_kernel());
        assert!(standard_generator(2, d(2)).unwrap().to_kernel_vector().is_err());
        for u in KnVector::all(d(3)) {
            let x = u.to_automorphism();
            assert!(x.is_in_kernel());
            assert_eq!(x.to_kernel_vector().unwrap(), u);
            assert_eq!(x.semidirect().0, *u.bits());
        }
    }

    #[test]
    fn transitivity() {
        assert!(perm(2, "(1,3,2,4)").is_transitive());
        assert!(!TreeAutomorphism::identity(d(2)).is_transitive());
        assert!(odometer(d(3)).is_transitive());
        assert!(!perm(2, "(1,3)(2,4)").is_transitive());
    }

    #[test]
    fn all_elements_count() {
        assert_eq!(TreeAutomorphism::all(d(1)).len(), 2);
        assert_eq!(TreeAutomorphism::all(d(2)).len(), 8);
        let w3 = TreeAutomorphism::all(d(3));
        let set: std::collections::HashSet<_> = w3.iter().collect();
        assert_eq!(set.len(), 128);
    }

    #[test]
    fn random_transitive_is_transitive() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for n in 1..=MAX_DEPTH {
            for _ in 0..50 {
                assert!(TreeAutomorphism::random_transitive(d(n), &mut rng).is_transitive());
            }
        }
    }
}
