//! Textual forms of tree automorphisms.
//!
//! * disjoint cycles, 1-based: `(1,3)(2,4)`; the identity prints as `()`
//! * one-line image list, 1-based: `[3,4,1,2]`
//! * portrait hex: `0x` followed by the `2^n - 1` swap bits in breadth-first
//!   order, root in the most significant position
//!
//! All three need the depth supplied by the caller.

use std::fmt;

use crate::error::{Error, Result};
use crate::tree::{Depth, TreeAutomorphism};

impl TreeAutomorphism {
    /// Parses any of the three forms, chosen by the leading character.
    pub fn parse(depth: Depth, text: &str) -> Result<TreeAutomorphism> {
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() || compact.starts_with('(') {
            parse_cycles(depth, &compact)
        } else if compact.starts_with('[') {
            parse_list(depth, &compact)
        } else if compact.starts_with("0x") || compact.starts_with("0X") {
            parse_portrait(depth, &compact[2..])
        } else {
            Err(Error::Parse(format!("unrecognised element syntax {text:?}")))
        }
    }

    pub fn to_cycle_string(&self) -> String {
        let mut out = String::new();
        for cycle in self.cycles().into_iter().filter(|c| c.len() > 1) {
            out.push('(');
            let parts: Vec<String> = cycle.iter().map(|k| (k + 1).to_string()).collect();
            out.push_str(&parts.join(","));
            out.push(')');
        }
        if out.is_empty() {
            out.push_str("()");
        }
        out
    }

    pub fn to_list_string(&self) -> String {
        let parts: Vec<String> = self.images().iter().map(|k| (k + 1).to_string()).collect();
        format!("[{}]", parts.join(","))
    }

    pub fn to_portrait_hex(&self) -> String {
        let bits = self.portrait_bits();
        let digits = bits.len().div_ceil(4).max(1);
        let value = bits.iter().fold(0u64, |acc, &b| acc << 1 | b as u64);
        format!("0x{value:0digits$x}")
    }
}

fn parse_number(tok: &str, depth: Depth) -> Result<usize> {
    let k: usize = tok
        .parse()
        .map_err(|_| Error::Parse(format!("expected a leaf number, got {tok:?}")))?;
    if k == 0 || k > depth.leaves() {
        return Err(Error::Parse(format!(
            "leaf {k} out of range 1..={}",
            depth.leaves()
        )));
    }
    Ok(k - 1)
}

/// Cycles are composed right to left, so non-disjoint input follows the
/// product convention used everywhere else.
fn parse_cycles(depth: Depth, s: &str) -> Result<TreeAutomorphism> {
    let m = depth.leaves();
    let mut images: Vec<usize> = (0..m).collect();
    let mut rest = s;
    let mut cycles = Vec::new();
    while !rest.is_empty() {
        let body_end = rest
            .find(')')
            .ok_or_else(|| Error::Parse(format!("unclosed cycle in {s:?}")))?;
        if !rest.starts_with('(') {
            return Err(Error::Parse(format!("expected '(' in {s:?}")));
        }
        let body = &rest[1..body_end];
        if body.contains('(') {
            return Err(Error::Parse(format!("nested parenthesis in {s:?}")));
        }
        let points = if body.is_empty() {
            Vec::new()
        } else {
            body.split(',')
                .map(|t| parse_number(t, depth))
                .collect::<Result<Vec<_>>>()?
        };
        let mut sorted = points.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != points.len() {
            return Err(Error::Parse(format!("repeated point in cycle ({body})")));
        }
        cycles.push(points);
        rest = &rest[body_end + 1..];
    }
    for cycle in cycles.iter().rev() {
        let mut step: Vec<usize> = (0..m).collect();
        for (i, &p) in cycle.iter().enumerate() {
            step[p] = cycle[(i + 1) % cycle.len()];
        }
        images = images.iter().map(|&k| step[k]).collect();
    }
    TreeAutomorphism::from_images(depth, &images)
}

fn parse_list(depth: Depth, s: &str) -> Result<TreeAutomorphism> {
    let body = s
        .strip_prefix('[')
        .and_then(|b| b.strip_suffix(']'))
        .ok_or_else(|| Error::Parse(format!("malformed image list {s:?}")))?;
    let images = body
        .split(',')
        .map(|t| parse_number(t, depth))
        .collect::<Result<Vec<_>>>()?;
    TreeAutomorphism::from_images(depth, &images)
}

fn parse_portrait(depth: Depth, hex: &str) -> Result<TreeAutomorphism> {
    let nbits = depth.leaves() - 1;
    let value = u64::from_str_radix(hex, 16)
        .map_err(|_| Error::Parse(format!("invalid portrait hex {hex:?}")))?;
    if value >> nbits != 0 {
        return Err(Error::Parse(format!(
            "portrait 0x{hex} has more than {nbits} bits"
        )));
    }
    let bits: Vec<bool> = (0..nbits).map(|i| value >> (nbits - 1 - i) & 1 == 1).collect();
    TreeAutomorphism::from_portrait_bits(depth, &bits)
}

/// Splits a comma separated list of elements at the commas that sit outside
/// any parentheses or brackets: `"(1,3,2,4),(1,2)"` gives two generators.
pub fn parse_generator_list(depth: Depth, text: &str) -> Result<Vec<TreeAutomorphism>> {
    let mut out = Vec::new();
    let mut level = 0i32;
    let mut current = String::new();
    for c in text.chars() {
        match c {
            '(' | '[' => level += 1,
            ')' | ']' => level -= 1,
            _ => {}
        }
        if level < 0 {
            return Err(Error::Parse(format!("unbalanced brackets in {text:?}")));
        }
        if c == ',' && level == 0 {
            out.push(TreeAutomorphism::parse(depth, &current)?);
            current.clear();
        } else {
            current.push(c);
        }
    }
    if level != 0 {
        return Err(Error::Parse(format!("unbalanced brackets in {text:?}")));
    }
    if !current.trim().is_empty() || !out.is_empty() {
        out.push(TreeAutomorphism::parse(depth, &current)?);
    }
    Ok(out)
}

pub fn format_generator_list(gens: &[TreeAutomorphism]) -> String {
    gens.iter()
        .map(|g| g.to_cycle_string())
        .collect::<Vec<_>>()
        .join(",")
}

impl fmt::Display for TreeAutomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_cycle_string())
    }
}

impl fmt::Debug for TreeAutomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "W{}{}", self.depth(), self.to_cycle_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::SeedableRng;

    fn d(n: u8) -> Depth {
        Depth::new(n).unwrap()
    }

    #[test]
    fn cycle_forms() {
        let x = TreeAutomorphism::parse(d(2), " (1, 3)(2,4) ").unwrap();
        assert_eq!(x.images(), vec![2, 3, 0, 1]);
        assert_eq!(x.to_cycle_string(), "(1,3)(2,4)");
        assert_eq!(x.to_list_string(), "[3,4,1,2]");
        let id = TreeAutomorphism::parse(d(3), "()").unwrap();
        assert!(id.is_identity());
        assert_eq!(id.to_cycle_string(), "()");
        assert!(TreeAutomorphism::parse(d(2), "").unwrap().is_identity());
    }

    #[test]
    fn non_disjoint_cycles_compose_right_to_left() {
        // (1,2)(1,3)(2,4)(1,2) = (1,4)(2,3)
        let x = TreeAutomorphism::parse(d(2), "(1,2)(1,3)(2,4)(1,2)").unwrap();
        assert_eq!(x.to_cycle_string(), "(1,4)(2,3)");
    }

    #[test]
    fn parse_errors() {
        assert!(TreeAutomorphism::parse(d(2), "(1,5)").is_err());
        assert!(TreeAutomorphism::parse(d(2), "(2,3)").is_err());
        assert!(TreeAutomorphism::parse(d(2), "(1,1)").is_err());
        assert!(TreeAutomorphism::parse(d(2), "(1,2").is_err());
        assert!(TreeAutomorphism::parse(d(2), "1,2").is_err());
        assert!(TreeAutomorphism::parse(d(2), "0xff").is_err());
    }

    #[test]
    fn portrait_examples() {
        let root_swap = TreeAutomorphism::parse(d(2), "(1,3)(2,4)").unwrap();
        assert_eq!(root_swap.to_portrait_hex(), "0x4");
        let leaf_swap = TreeAutomorphism::parse(d(2), "(3,4)").unwrap();
        assert_eq!(leaf_swap.to_portrait_hex(), "0x1");
        assert_eq!(
            TreeAutomorphism::parse(d(2), "0x1").unwrap(),
            leaf_swap
        );
    }

    #[test]
    fn generator_lists() {
        let gens = parse_generator_list(d(2), "(1,3,2,4),(1,2)").unwrap();
        assert_eq!(gens.len(), 2);
        assert_eq!(format_generator_list(&gens), "(1,3,2,4),(1,2)");
        assert!(parse_generator_list(d(2), "").unwrap().is_empty());
        assert_eq!(parse_generator_list(d(2), "[2,1,3,4], 0x4").unwrap().len(), 2);
        assert!(parse_generator_list(d(2), "(1,2))").is_err());
    }

    proptest! {
        #[test]
        fn all_forms_round_trip(n in 1u8..=5, seed in any::<u64>()) {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let x = TreeAutomorphism::random(d(n), &mut rng);
            for text in [x.to_cycle_string(), x.to_list_string(), x.to_portrait_hex()] {
                prop_assert_eq!(TreeAutomorphism::parse(d(n), &text).unwrap(), x);
            }
        }
    }
}
