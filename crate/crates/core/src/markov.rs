//! Markov groups `M_n` for the quadratic family `(x + a)^2 - a - 1`, in the
//! case where `a` is not `±b^2`.
//!
//! `M_n = <x_n, m_n, x_{n-1}^2, ..., x_2^2>` with `x_n` the odometer,
//! `m_1 = id` and `m_{n+1} = x_n^2 m_n x_n^-1`. The index-2 variant for the
//! remaining parameters is not built.

use crate::error::{Error, Result};
use crate::subgroup::{Subgroup, DEFAULT_CLOSURE_BOUND};
use crate::tree::{odometer, Depth, TreeAutomorphism};

/// `m_n`, with every operand embedded at depth `n`.
pub fn m_element(n: Depth) -> TreeAutomorphism {
    let mut m = TreeAutomorphism::identity(Depth::new(1).expect("depth 1"));
    for k in 1..n.get() {
        let next = Depth::new(k + 1).expect("k + 1 <= n");
        let x = odometer(Depth::new(k).expect("k >= 1"))
            .include(next)
            .expect("k < k + 1");
        let m_up = m.include(next).expect("k < k + 1");
        m = x.compose(&x).compose(&m_up).compose(&x.inverse());
    }
    m
}

#[derive(Clone, Debug)]
pub struct MarkovGroupSpec {
    pub depth: Depth,
    /// `x_n, m_n, x_{n-1}^2, ..., x_2^2`, with identities dropped.
    pub generators: Vec<TreeAutomorphism>,
    /// `None` when the closure exceeded the bound.
    pub group: Option<Subgroup>,
}

impl MarkovGroupSpec {
    pub fn order(&self) -> Option<usize> {
        self.group.as_ref().map(Subgroup::order)
    }

    /// True whenever a generator is transitive on the leaves, which holds
    /// for the odometer; otherwise decided on the closed group.
    pub fn contains_transitive(&self) -> bool {
        self.generators.iter().any(TreeAutomorphism::is_transitive)
            || self.group.as_ref().is_some_and(Subgroup::contains_transitive)
    }
}

pub fn markov_generators(n: Depth) -> Vec<TreeAutomorphism> {
    let x = odometer(n);
    let mut gens = vec![x, m_element(n)];
    for k in (2..n.get()).rev() {
        let xk = odometer(Depth::new(k).expect("k >= 2"))
            .include(n)
            .expect("k < n");
        gens.push(xk.compose(&xk));
    }
    gens.retain(|g| !g.is_identity());
    gens
}

pub fn markov_group(n: Depth) -> Result<MarkovGroupSpec> {
    markov_group_bounded(n, DEFAULT_CLOSURE_BOUND)
}

pub fn markov_group_bounded(n: Depth, bound: usize) -> Result<MarkovGroupSpec> {
    let generators = markov_generators(n);
    let group = match Subgroup::generate_bounded(n, &generators, bound) {
        Ok(g) => Some(g),
        Err(Error::ClosureBound(_)) => None,
        Err(e) => return Err(e),
    };
    Ok(MarkovGroupSpec {
        depth: n,
        generators,
        group,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(n: u8) -> Depth {
        Depth::new(n).unwrap()
    }

    #[test]
    fn small_m_elements() {
        assert!(m_element(d(1)).is_identity());
        assert_eq!(m_element(d(2)).to_cycle_string(), "(1,2)");
        for n in 1..=5 {
            assert_eq!(m_element(d(n)).depth(), d(n));
        }
    }

    #[test]
    fn small_markov_groups() {
        let m1 = markov_group(d(1)).unwrap();
        assert_eq!(m1.order(), Some(2));
        assert_eq!(crate::notation::format_generator_list(&m1.generators), "(1,2)");
        let m2 = markov_group(d(2)).unwrap();
        assert_eq!(
            crate::notation::format_generator_list(&m2.generators),
            "(1,3,2,4),(1,2)"
        );
        assert_eq!(m2.order(), Some(8));
        assert!(m2.contains_transitive());
    }

    #[test]
    fn regression_orders() {
        assert_eq!(m_element(d(3)).to_cycle_string(), "(1,3)(2,4)");
        assert_eq!(markov_group(d(3)).unwrap().order(), Some(64));
        assert_eq!(markov_group(d(4)).unwrap().order(), Some(4096));
    }

    #[test]
    fn orders_are_monotone_powers_of_two() {
        let orders: Vec<_> = (1..=4)
            .map(|n| markov_group(d(n)).unwrap().order().unwrap())
            .collect();
        assert!(orders.windows(2).all(|w| w[0] <= w[1]));
        assert!(orders.iter().all(|o| o.is_power_of_two()));
    }

    #[test]
    fn bound_reports_generators_only() {
        let spec = markov_group_bounded(d(3), 4).unwrap();
        assert!(spec.group.is_none());
        assert!(spec.contains_transitive());
    }
}
