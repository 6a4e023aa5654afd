//! Hirzebruch–Jung continued fractions: exact translation between the
//! cyclic quotient data `(n, q)` and the self-intersection chain
//! `(−b_1, …, −b_r)` of its minimal resolution, where
//! `n/q = b_1 − 1/(b_2 − 1/(… − 1/b_r))`.

use num::bigint::BigInt;
use num::{BigRational, One};

use crate::dual_graph::DualGraph;
use crate::{Error, Result};

/// The cyclic quotient singularity `1/n (1, q)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CyclicQuotient {
    n: u64,
    q: u64,
}

impl CyclicQuotient {
    pub fn new(n: u64, q: u64) -> Result<Self> {
        if n < 2 || q == 0 || q >= n {
            return Err(Error::InvalidParameters(format!(
                "cyclic quotient needs 1 <= q < n with n >= 2, got ({n}, {q})"
            )));
        }
        if gcd(n, q) != 1 {
            return Err(Error::InvalidParameters(format!("({n}, {q}) are not coprime")));
        }
        Ok(CyclicQuotient { n, q })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// Du Val (type A_{n−1}) exactly when q = n − 1.
    pub fn is_du_val(&self) -> bool {
        self.q == self.n - 1
    }

    /// The continued-fraction expansion `[b_1, …, b_r]` of n/q, all
    /// entries at least 2. Computed by the subtractive recurrence
    /// `(n, q) → (q, q·b − n)` with `b = ⌈n/q⌉`.
    pub fn hj_chain(&self) -> Vec<u64> {
        let (mut n, mut q) = (self.n, self.q);
        let mut chain = Vec::new();
        loop {
            let b = n.div_ceil(q);
            chain.push(b);
            let next_q = q * b - n;
            n = q;
            q = next_q;
            if q == 0 {
                break;
            }
        }
        chain
    }

    /// The minimal resolution: a chain of curves with self-intersections
    /// `(−b_1, …, −b_r)`.
    pub fn resolution_graph(&self) -> DualGraph {
        let chain: Vec<i64> = self.hj_chain().iter().map(|&b| -(b as i64)).collect();
        DualGraph::chain(&chain).expect("HJ chain is a valid dual graph")
    }
}

impl std::fmt::Display for CyclicQuotient {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "1/{}({},{})", self.n, 1, self.q)
    }
}

/// Inverse of [`CyclicQuotient::hj_chain`]: evaluate the continued
/// fraction `[b_1, …, b_r]` with exact rationals and read off `(n, q)`.
pub fn chain_to_pair(chain: &[u64]) -> Result<CyclicQuotient> {
    if chain.is_empty() || chain.iter().any(|&b| b < 2) {
        return Err(Error::InvalidChain);
    }
    let mut value = BigRational::from_integer(BigInt::from(*chain.last().unwrap()));
    for &b in chain.iter().rev().skip(1) {
        value = BigRational::from_integer(BigInt::from(b)) - value.recip();
    }
    debug_assert!(value.denom() > &BigInt::from(0));
    let n: u64 = value.numer().try_into().map_err(|_| Error::InvalidChain)?;
    let q: u64 = value.denom().try_into().map_err(|_| Error::InvalidChain)?;
    if value.denom().is_one() {
        // n/1: the chain [n] resolves 1/n(1,1) ... only reachable for r = 1
        return CyclicQuotient::new(n, 1);
    }
    CyclicQuotient::new(n, q)
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chain_examples() {
        assert_eq!(CyclicQuotient::new(2, 1).unwrap().hj_chain(), vec![2]);
        assert_eq!(CyclicQuotient::new(5, 2).unwrap().hj_chain(), vec![3, 2]);
        assert_eq!(CyclicQuotient::new(7, 3).unwrap().hj_chain(), vec![3, 2, 2]);
    }

    #[test]
    fn du_val_chains_are_all_twos() {
        for k in 1..=20u64 {
            let s = CyclicQuotient::new(k + 1, k).unwrap();
            assert!(s.is_du_val());
            assert_eq!(s.hj_chain(), vec![2; k as usize]);
        }
    }

    #[test]
    fn chain_to_pair_examples() {
        for k in 1..=20u64 {
            let s = chain_to_pair(&vec![2; k as usize]).unwrap();
            assert_eq!((s.n(), s.q()), (k + 1, k));
        }
        for k in 1..=20u64 {
            let mut c = vec![2; k as usize];
            c[0] = 3;
            let s = chain_to_pair(&c).unwrap();
            assert_eq!((s.n(), s.q()), (2 * k + 1, k));
        }
        let s = chain_to_pair(&[3]).unwrap();
        assert_eq!((s.n(), s.q()), (3, 1));
    }

    #[test]
    fn chain_to_pair_rejects_small_entries() {
        assert_eq!(chain_to_pair(&[2, 1, 2]), Err(Error::InvalidChain));
        assert_eq!(chain_to_pair(&[]), Err(Error::InvalidChain));
    }

    #[test]
    fn invalid_pairs() {
        assert!(CyclicQuotient::new(1, 1).is_err());
        assert!(CyclicQuotient::new(4, 2).is_err());
        assert!(CyclicQuotient::new(5, 5).is_err());
        assert!(CyclicQuotient::new(5, 0).is_err());
    }

    #[test]
    fn round_trip_up_to_200() {
        for n in 2..=200u64 {
            for q in 1..n {
                if gcd(n, q) != 1 {
                    continue;
                }
                let s = CyclicQuotient::new(n, q).unwrap();
                let chain = s.hj_chain();
                assert!(chain.iter().all(|&b| b >= 2));
                assert!(chain.len() as u64 <= n - 1);
                let back = chain_to_pair(&chain).unwrap();
                assert_eq!(back, s);
            }
        }
    }

    #[test]
    fn resolution_graph_order_matches_n() {
        for n in 2..=100u64 {
            for q in 1..n {
                if gcd(n, q) != 1 {
                    continue;
                }
                let g = CyclicQuotient::new(n, q).unwrap().resolution_graph();
                assert_eq!(g.group_order().unwrap(), n);
            }
        }
    }
}
