//! Linear and affine algebra over the two-element field.
//!
//! Vectors carry at most 64 coordinates packed into one machine word, so row
//! reduction is a sequence of word XORs. Coordinate `i` (0-based) is bit `i`
//! of the word; the textual form prints coordinate 1 first.

use std::fmt;
use std::ops::{Add, AddAssign};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tree::TreeAutomorphism;

pub const MAX_LEN: usize = 64;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct F2Vector {
    len: u8,
    bits: u64,
}

fn mask(len: usize) -> u64 {
    if len >= 64 {
        u64::MAX
    } else {
        (1u64 << len) - 1
    }
}

impl F2Vector {
    pub fn zero(len: usize) -> Self {
        assert!(len <= MAX_LEN, "vector length {len} exceeds {MAX_LEN}");
        F2Vector {
            len: len as u8,
            bits: 0,
        }
    }

    /// Builds a vector from packed bits; bits beyond `len` are discarded.
    pub fn from_bits(len: usize, bits: u64) -> Self {
        assert!(len <= MAX_LEN, "vector length {len} exceeds {MAX_LEN}");
        F2Vector {
            len: len as u8,
            bits: bits & mask(len),
        }
    }

    pub fn unit(len: usize, i: usize) -> Self {
        assert!(i < len);
        F2Vector::from_bits(len, 1 << i)
    }

    pub fn from_slice(bits: &[u8]) -> Self {
        let mut v = F2Vector::zero(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b & 1 == 1 {
                v.bits |= 1 << i;
            }
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len());
        (self.bits >> i) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        debug_assert!(i < self.len());
        if value {
            self.bits |= 1 << i;
        } else {
            self.bits &= !(1 << i);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    pub fn weight(&self) -> u32 {
        self.bits.count_ones()
    }

    pub fn checked_add(&self, other: &F2Vector) -> Result<F2Vector> {
        check_len(self.len(), other.len())?;
        Ok(F2Vector {
            len: self.len,
            bits: self.bits ^ other.bits,
        })
    }

    /// Iterates over every vector of length `len` in increasing packed order.
    pub fn all(len: usize) -> impl Iterator<Item = F2Vector> {
        assert!(len < 64, "cannot enumerate F_2^{len}");
        (0..(1u64 << len)).map(move |b| F2Vector::from_bits(len, b))
    }
}

fn check_len(expected: usize, actual: usize) -> Result<()> {
    if expected != actual {
        return Err(Error::LengthMismatch { expected, actual });
    }
    Ok(())
}

impl Add for F2Vector {
    type Output = F2Vector;

    fn add(self, rhs: F2Vector) -> F2Vector {
        debug_assert_eq!(self.len, rhs.len);
        F2Vector {
            len: self.len,
            bits: self.bits ^ rhs.bits,
        }
    }
}

impl AddAssign for F2Vector {
    fn add_assign(&mut self, rhs: F2Vector) {
        debug_assert_eq!(self.len, rhs.len);
        self.bits ^= rhs.bits;
    }
}

impl fmt::Display for F2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len() {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for F2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F2Vector({self})")
    }
}

impl FromStr for F2Vector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.len() > MAX_LEN {
            return Err(Error::Parse(format!("bit string longer than {MAX_LEN}")));
        }
        let mut v = F2Vector::zero(s.len());
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' => v.bits |= 1 << i,
                _ => return Err(Error::Parse(format!("invalid bit {c:?} in {s:?}"))),
            }
        }
        Ok(v)
    }
}

impl Serialize for F2Vector {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for F2Vector {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Applies a tree automorphism of depth `d` to a vector of length `2^d` by
/// permuting coordinates: `s(v)_i = v_{s^{-1}(i)}`, i.e. the entry at `k` moves
/// to `s(k)`.
pub fn permute_coordinates(s: &TreeAutomorphism, v: &F2Vector) -> Result<F2Vector> {
    check_len(s.degree(), v.len())?;
    Ok(permute_unchecked(s, v))
}

pub(crate) fn permute_unchecked(s: &TreeAutomorphism, v: &F2Vector) -> F2Vector {
    let mut bits = v.bits;
    let mut out = 0u64;
    while bits != 0 {
        let k = bits.trailing_zeros() as usize;
        bits &= bits - 1;
        out |= 1 << s.image(k);
    }
    F2Vector::from_bits(v.len(), out)
}

/// Row echelon form with pivots at the lowest set bit, each row carrying a
/// tag that records which inserted vectors were combined to produce it.
#[derive(Clone, Debug, Default)]
pub(crate) struct TaggedEchelon {
    // sorted by pivot
    rows: Vec<(u128, u128)>,
}

impl TaggedEchelon {
    pub(crate) fn new() -> Self {
        TaggedEchelon { rows: Vec::new() }
    }

    /// Reduces `vec` against the rows, accumulating tags.
    pub(crate) fn reduce(&self, mut vec: u128, mut tag: u128) -> (u128, u128) {
        for &(row, row_tag) in &self.rows {
            let pivot = row & row.wrapping_neg();
            if vec & pivot != 0 {
                vec ^= row;
                tag ^= row_tag;
            }
        }
        (vec, tag)
    }

    /// Returns true when the vector was independent of the existing rows.
    pub(crate) fn insert(&mut self, vec: u128, tag: u128) -> bool {
        let (vec, tag) = self.reduce(vec, tag);
        if vec == 0 {
            return false;
        }
        let pivot = vec.trailing_zeros();
        let pos = self
            .rows
            .partition_point(|&(row, _)| row.trailing_zeros() < pivot);
        self.rows.insert(pos, (vec, tag));
        true
    }

    pub(crate) fn rows(&self) -> impl Iterator<Item = &(u128, u128)> {
        self.rows.iter()
    }
}

/// A linear subspace of `F_2^m`, stored as its reduced row echelon basis.
///
/// The pivot of a row is its lowest coordinate; rows are sorted by pivot and
/// every pivot column is zero in all other rows, so the basis is canonical and
/// structural equality is subspace equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct F2Subspace {
    len: u8,
    rows: Vec<u64>,
}

impl F2Subspace {
    pub fn zero(len: usize) -> Self {
        assert!(len <= MAX_LEN);
        F2Subspace {
            len: len as u8,
            rows: Vec::new(),
        }
    }

    pub fn full(len: usize) -> Self {
        F2Subspace::span(len, (0..len).map(|i| F2Vector::unit(len, i)))
            .expect("unit vectors have the ambient length")
    }

    pub fn span<I>(len: usize, vectors: I) -> Result<Self>
    where
        I: IntoIterator<Item = F2Vector>,
    {
        let mut space = F2Subspace::zero(len);
        for v in vectors {
            check_len(len, v.len())?;
            space.insert_bits(v.bits);
        }
        Ok(space)
    }

    fn insert_bits(&mut self, mut v: u64) -> bool {
        v = self.reduce_bits(v);
        if v == 0 {
            return false;
        }
        let pivot = v & v.wrapping_neg();
        for row in &mut self.rows {
            if *row & pivot != 0 {
                *row ^= v;
            }
        }
        let p = v.trailing_zeros();
        let pos = self.rows.partition_point(|r| r.trailing_zeros() < p);
        self.rows.insert(pos, v);
        true
    }

    fn reduce_bits(&self, mut v: u64) -> u64 {
        for &row in &self.rows {
            if v & row & row.wrapping_neg() != 0 {
                v ^= row;
            }
        }
        v
    }

    pub fn ambient_len(&self) -> usize {
        self.len as usize
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> Vec<F2Vector> {
        self.rows
            .iter()
            .map(|&r| F2Vector::from_bits(self.ambient_len(), r))
            .collect()
    }

    /// Canonical representative of `v + self`.
    pub fn reduce(&self, v: &F2Vector) -> F2Vector {
        F2Vector::from_bits(v.len(), self.reduce_bits(v.bits))
    }

    pub fn contains(&self, v: &F2Vector) -> bool {
        v.len() == self.ambient_len() && self.reduce_bits(v.bits) == 0
    }

    pub fn is_subspace_of(&self, other: &F2Subspace) -> bool {
        self.len == other.len && self.rows.iter().all(|&r| other.reduce_bits(r) == 0)
    }

    pub fn sum(&self, other: &F2Subspace) -> Result<F2Subspace> {
        check_len(self.ambient_len(), other.ambient_len())?;
        let mut out = self.clone();
        for &r in &other.rows {
            out.insert_bits(r);
        }
        Ok(out)
    }

    /// Zassenhaus: rows `(a | a)` for `a` in self and `(b | 0)` for `b` in
    /// other; after elimination the rows with zero left half span the
    /// intersection.
    pub fn intersect(&self, other: &F2Subspace) -> Result<F2Subspace> {
        check_len(self.ambient_len(), other.ambient_len())?;
        let mut ech = TaggedEchelon::new();
        for &a in &self.rows {
            ech.insert(a as u128 | (a as u128) << 64, 0);
        }
        for &b in &other.rows {
            ech.insert(b as u128, 0);
        }
        let mut out = F2Subspace::zero(self.ambient_len());
        for &(row, _) in ech.rows() {
            if row as u64 == 0 {
                out.insert_bits((row >> 64) as u64);
            }
        }
        Ok(out)
    }

    /// Enumerates all `2^dim` members.
    pub fn elements(&self) -> impl Iterator<Item = F2Vector> + '_ {
        assert!(self.dim() < 64);
        (0..(1u64 << self.dim())).map(move |combo| {
            let mut bits = 0u64;
            let mut c = combo;
            while c != 0 {
                let i = c.trailing_zeros() as usize;
                c &= c - 1;
                bits ^= self.rows[i];
            }
            F2Vector::from_bits(self.ambient_len(), bits)
        })
    }

    pub fn cardinality(&self) -> u64 {
        1u64 << self.dim()
    }
}

impl fmt::Debug for F2Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("F2Subspace")
            .field("len", &self.len)
            .field("basis", &self.basis())
            .finish()
    }
}

impl fmt::Display for F2Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("span{")?;
        for (i, v) in self.basis().iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("}")
    }
}

/// Splits `v` as `a + b` with `a` in `left` and `b` in `right`, if possible.
pub fn decompose(
    v: &F2Vector,
    left: &F2Subspace,
    right: &F2Subspace,
) -> Result<Option<(F2Vector, F2Vector)>> {
    check_len(left.ambient_len(), v.len())?;
    check_len(left.ambient_len(), right.ambient_len())?;
    let mut ech = TaggedEchelon::new();
    let left_basis = left.basis();
    let right_basis = right.basis();
    for (i, a) in left_basis.iter().chain(&right_basis).enumerate() {
        ech.insert(a.bits as u128, 1u128 << i);
    }
    let (rest, tag) = ech.reduce(v.bits as u128, 0);
    if rest != 0 {
        return Ok(None);
    }
    let len = v.len();
    let mut a = F2Vector::zero(len);
    let mut b = F2Vector::zero(len);
    for (i, x) in left_basis.iter().enumerate() {
        if tag >> i & 1 == 1 {
            a += *x;
        }
    }
    for (j, x) in right_basis.iter().enumerate() {
        if tag >> (left_basis.len() + j) & 1 == 1 {
            b += *x;
        }
    }
    Ok(Some((a, b)))
}

/// Subspace of vectors fixed by `s`: those constant on every cycle of its
/// coordinate action. The basis is the cycle indicator vectors.
pub fn fix_subspace(s: &TreeAutomorphism) -> F2Subspace {
    fix_subspace_of_set(s.depth().get(), std::slice::from_ref(s))
        .expect("single element has a consistent depth")
}

/// Vectors fixed by every element of `set`, i.e. constant on the orbits of the
/// group the set generates. An empty set fixes the whole space of length
/// `2^depth`.
pub fn fix_subspace_of_set(depth: u8, set: &[TreeAutomorphism]) -> Result<F2Subspace> {
    let m = 1usize << depth;
    for s in set {
        if s.depth().get() != depth {
            return Err(Error::DepthMismatch {
                left: depth,
                right: s.depth().get(),
            });
        }
    }
    let orbits = crate::tree::orbit_partition(m, set);
    let mut indicators = vec![0u64; m];
    for (i, &root) in orbits.iter().enumerate() {
        indicators[root] |= 1 << i;
    }
    let mut space = F2Subspace::zero(m);
    for bits in indicators.into_iter().filter(|&b| b != 0) {
        space.insert_bits(bits);
    }
    Ok(space)
}

/// Image of `I + t`, spanned by `e_k + e_{t(k)}`.
pub fn twisted_image(t: &TreeAutomorphism) -> F2Subspace {
    let m = t.degree();
    let mut space = F2Subspace::zero(m);
    for k in 0..m {
        space.insert_bits(1 << k ^ 1 << t.image(k));
    }
    space
}

/// Either the empty set or a coset `offset + direction`.
///
/// The offset is kept reduced against the direction basis, so two equal sets
/// compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum F2AffineSet {
    Empty,
    Coset {
        offset: F2Vector,
        direction: F2Subspace,
    },
}

impl F2AffineSet {
    pub fn coset(offset: F2Vector, direction: F2Subspace) -> Result<Self> {
        check_len(direction.ambient_len(), offset.len())?;
        Ok(F2AffineSet::Coset {
            offset: direction.reduce(&offset),
            direction,
        })
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, F2AffineSet::Empty)
    }

    pub fn contains(&self, v: &F2Vector) -> bool {
        match self {
            F2AffineSet::Empty => false,
            F2AffineSet::Coset { offset, direction } => {
                v.len() == offset.len() && direction.contains(&(*v + *offset))
            }
        }
    }

    pub fn representative(&self) -> Option<F2Vector> {
        match self {
            F2AffineSet::Empty => None,
            F2AffineSet::Coset { offset, .. } => Some(*offset),
        }
    }

    pub fn cardinality(&self) -> u64 {
        match self {
            F2AffineSet::Empty => 0,
            F2AffineSet::Coset { direction, .. } => direction.cardinality(),
        }
    }

    pub fn elements(&self) -> Vec<F2Vector> {
        match self {
            F2AffineSet::Empty => Vec::new(),
            F2AffineSet::Coset { offset, direction } => {
                direction.elements().map(|d| d + *offset).collect()
            }
        }
    }

    pub fn intersect(&self, other: &F2AffineSet) -> Result<F2AffineSet> {
        let (
            F2AffineSet::Coset {
                offset: o1,
                direction: d1,
            },
            F2AffineSet::Coset {
                offset: o2,
                direction: d2,
            },
        ) = (self, other)
        else {
            return Ok(F2AffineSet::Empty);
        };
        match decompose(&(*o1 + *o2), d1, d2)? {
            None => Ok(F2AffineSet::Empty),
            Some((a, _)) => F2AffineSet::coset(*o1 + a, d1.intersect(d2)?),
        }
    }
}

/// Solves `u + t(u) = c`.
///
/// The solution set is empty or a coset of `Fix(t)`, the kernel of `I + t`.
/// A particular solution comes from row reducing the images `e_k + e_{t(k)}`
/// while tracking which unit vectors were combined.
pub fn solve_twisted(t: &TreeAutomorphism, c: &F2Vector) -> Result<F2AffineSet> {
    let m = t.degree();
    check_len(m, c.len())?;
    let mut ech = TaggedEchelon::new();
    for k in 0..m {
        let col = (1u64 << k ^ 1u64 << t.image(k)) as u128;
        ech.insert(col, 1u128 << k);
    }
    let (rest, tag) = ech.reduce(c.bits as u128, 0);
    if rest != 0 {
        return Ok(F2AffineSet::Empty);
    }
    F2AffineSet::coset(F2Vector::from_bits(m, tag as u64), fix_subspace(t))
}
