//! Exact rational linear algebra over the intersection lattice:
//! discrepancies of a resolution, log coefficients of an extraction
//! pair, the plt test, Mumford pullbacks, and the log Fano degree δ.
//!
//! Adjunction on a smooth rational curve gives `K·E = −E² − 2`; genus 0
//! is a global assumption of the crate (see [`crate::dual_graph`]).

use num::bigint::BigInt;
use num::{BigRational, One, Zero};
use std::collections::BTreeMap;

use crate::dual_graph::DualGraph;
use crate::linalg::solve_exact;
use crate::{Error, Result};

/// A map from vertex id to an exact rational coefficient, the unique
/// solution of its defining linear system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiscrepancyVector(BTreeMap<String, BigRational>);

impl DiscrepancyVector {
    pub fn get(&self, id: &str) -> Option<&BigRational> {
        self.0.get(id)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &BigRational)> {
        self.0.iter().map(|(k, v)| (k.as_str(), v))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max(&self) -> Option<&BigRational> {
        self.0.values().max()
    }
}

/// Numerical pullback of the marked curve through the contraction of the
/// remaining ones: `(Ẽ + Σ λ_i F_i)·F_j = 0` for every contracted F_j,
/// and `e_self` is the self-intersection of the image curve downstairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MumfordData {
    pub coefficients: DiscrepancyVector,
    pub e_self: BigRational,
}

/// Outcome of the plt test, with the log canonical boundary case kept
/// distinguishable from genuine failure.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PltStatus {
    Plt,
    /// some contracted coefficient is exactly 1
    LogCanonicalBoundary,
    NotLogCanonical,
}

fn big(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

/// Discrepancies of the full resolution: the unique rational vector `a`
/// with `Σ_i a_i (E_i·E_j) = K·E_j = −E_j² − 2` for every j.
pub fn canonical_discrepancies(g: &DualGraph) -> Result<DiscrepancyVector> {
    let mat = g.intersection_matrix();
    if !mat.is_contractible() {
        return Err(Error::NotContractible);
    }
    let n = g.len();
    let a: Vec<Vec<BigRational>> = (0..n)
        .map(|i| (0..n).map(|j| big(mat.get(i, j))).collect())
        .collect();
    let b: Vec<BigRational> = g.vertices().iter().map(|v| big(-v.self_int - 2)).collect();
    let x = solve_exact(a, b).expect("negative definite system is invertible");
    Ok(DiscrepancyVector(
        g.vertices()
            .iter()
            .zip(x)
            .map(|(v, c)| (v.id.clone(), c))
            .collect(),
    ))
}

/// Log coefficients of the extraction pair: the unique solution `c` of
/// `Σ_i c_i (F_i·F_j) = −(K_W + Ẽ)·F_j` over the contracted vertices F_j,
/// solved per connected component of the graph minus the marked vertex.
pub fn pair_log_coefficients(g: &DualGraph, marked: &str) -> Result<DiscrepancyVector> {
    solve_on_components(g, marked, |s, adj| s + 2 - adj)
}

/// Mumford pullback coefficients λ of the marked curve:
/// `Σ_i λ_i (F_i·F_j) = −Ẽ·F_j`, plus the contracted self-intersection
/// `e_self = Ẽ² + Σ_{i adjacent to marked} λ_i`.
pub fn mumford_pullback(g: &DualGraph, marked: &str) -> Result<MumfordData> {
    let coefficients = solve_on_components(g, marked, |_, adj| -adj)?;
    let marked_self = g
        .self_int(marked)
        .ok_or_else(|| Error::InvalidParameters(format!("no vertex `{marked}`")))?;
    let mut e_self = big(marked_self);
    for neighbor in g.neighbors(marked) {
        e_self += coefficients.get(neighbor).expect("neighbor was contracted");
    }
    Ok(MumfordData { coefficients, e_self })
}

/// Shared kernel: solve one exact system per connected component of the
/// graph minus `marked`, with the right-hand side at F_j given by
/// `rhs(self_int of F_j, edge indicator between marked and F_j)`.
fn solve_on_components(
    g: &DualGraph,
    marked: &str,
    rhs: impl Fn(i64, i64) -> i64,
) -> Result<DiscrepancyVector> {
    if g.index_of(marked).is_none() {
        return Err(Error::InvalidParameters(format!("no vertex `{marked}`")));
    }
    let comps = g.delete(marked)?;
    let solved = solve_components_with(g, marked, &comps, rhs)?;
    Ok(collect_vector(&comps, &solved))
}

fn collect_vector(comps: &[DualGraph], solved: &[Vec<BigRational>]) -> DiscrepancyVector {
    let mut out = BTreeMap::new();
    for (comp, x) in comps.iter().zip(solved) {
        for (v, c) in comp.vertices().iter().zip(x) {
            out.insert(v.id.clone(), c.clone());
        }
    }
    DiscrepancyVector(out)
}

/// Same solves over precomputed components of `g` minus `marked`; each
/// returned vector is aligned with its component's vertex order.
pub(crate) fn solve_components_with(
    g: &DualGraph,
    marked: &str,
    comps: &[DualGraph],
    rhs: impl Fn(i64, i64) -> i64,
) -> Result<Vec<Vec<BigRational>>> {
    let mut out = Vec::with_capacity(comps.len());
    for comp in comps {
        // Chain components (the overwhelmingly common case) get a linear
        // time fraction-free tridiagonal elimination; anything else falls
        // back to the dense solver below.
        if let Some(order) = comp.chain_path() {
            let diag: Vec<i64> = order.iter().map(|&i| comp.vertices()[i].self_int).collect();
            let b: Vec<i64> = order
                .iter()
                .map(|&i| {
                    let v = &comp.vertices()[i];
                    rhs(v.self_int, g.adjacent(marked, &v.id) as i64)
                })
                .collect();
            let x = solve_chain(&diag, &b).ok_or(Error::NotContractible)?;
            let mut by_vertex = vec![BigRational::zero(); comp.len()];
            for (&i, c) in order.iter().zip(x) {
                by_vertex[i] = c;
            }
            out.push(by_vertex);
            continue;
        }
        let mat = comp.intersection_matrix();
        if !mat.is_contractible() {
            return Err(Error::NotContractible);
        }
        let n = comp.len();
        let a: Vec<Vec<BigRational>> = (0..n)
            .map(|i| (0..n).map(|j| big(mat.get(i, j))).collect())
            .collect();
        let b: Vec<BigRational> = comp
            .vertices()
            .iter()
            .map(|v| big(rhs(v.self_int, g.adjacent(marked, &v.id) as i64)))
            .collect();
        let x = solve_exact(a, b).expect("negative definite system is invertible");
        out.push(x);
    }
    Ok(out)
}

/// Lean plt gate over precomputed components: `Ok(())` when every pair
/// log coefficient is strictly below 1, the diagnostic [`Error::NotPlt`]
/// otherwise.
pub(crate) fn plt_gate_with(g: &DualGraph, marked: &str, comps: &[DualGraph]) -> Result<()> {
    let solved = solve_components_with(g, marked, comps, |s, adj| s + 2 - adj)?;
    let one = BigRational::one();
    if solved.iter().flatten().all(|c| *c < one) {
        Ok(())
    } else {
        Err(not_plt_error(&collect_vector(comps, &solved)))
    }
}

/// δ over precomputed components, without materializing the coefficient
/// maps: only the Mumford coefficients at the curves adjacent to the
/// marked one enter `e_self`.
pub(crate) fn delta_with(
    g: &DualGraph,
    marked: &str,
    comps: &[DualGraph],
    diff_degree: &BigRational,
) -> Result<BigRational> {
    let two = big(2);
    if *diff_degree >= two {
        return Err(Error::NotLogFano { degree: diff_degree.clone() });
    }
    let solved = solve_components_with(g, marked, comps, |_, adj| -adj)?;
    let marked_self = g
        .self_int(marked)
        .ok_or_else(|| Error::InvalidParameters(format!("no vertex `{marked}`")))?;
    let mut e_self = big(marked_self);
    for (comp, x) in comps.iter().zip(&solved) {
        for (v, c) in comp.vertices().iter().zip(x) {
            if g.adjacent(marked, &v.id) {
                e_self += c;
            }
        }
    }
    debug_assert!(e_self < BigRational::zero());
    Ok((two - diff_degree) / -e_self)
}

/// Fraction-free Thomas elimination for the tridiagonal system with unit
/// off-diagonal, in path order: `x_{i-1} + diag_i x_i + x_{i+1} = b_i`.
///
/// With `P_k` the leading principal minors (continuants `P_0 = 1`,
/// `P_k = diag_{k-1} P_{k-1} - P_{k-2}`), the forward pivots are
/// `P_{i+1}/P_i`, so sign alternation of the `P_k` is exactly negative
/// definiteness; returns `None` otherwise. The eliminated right-hand
/// side satisfies the integer recurrence `u_i = b_i P_i - u_{i-1}` and
/// Cramer makes `x_i P_n` an integer, so the whole solve stays in
/// (checked) i128 and only the final `x_i = p_i / P_n` builds rationals.
fn solve_chain(diag: &[i64], b: &[i64]) -> Option<Vec<BigRational>> {
    let n = diag.len();
    let mut p = Vec::with_capacity(n + 1);
    p.push(1i128);
    for (k, &d) in diag.iter().enumerate() {
        let prev2 = if k == 0 { 0 } else { p[k - 1] };
        let minor = (d as i128)
            .checked_mul(p[k])
            .map(|x| x - prev2)
            .expect("chain minor overflowed i128");
        let expected_negative = k % 2 == 0;
        if minor == 0 || (minor < 0) != expected_negative {
            return None;
        }
        p.push(minor);
    }
    let mut u = Vec::with_capacity(n);
    for i in 0..n {
        let prev = if i == 0 { 0 } else { u[i - 1] };
        let t = (b[i] as i128)
            .checked_mul(p[i])
            .map(|x| x - prev)
            .expect("chain elimination overflowed i128");
        u.push(t);
    }
    let det = p[n];
    let mut num = vec![0i128; n];
    for i in (0..n).rev() {
        let carry = if i + 1 < n { p[i].checked_mul(num[i + 1]) } else { Some(0) };
        let t = u[i]
            .checked_mul(det)
            .and_then(|x| carry.map(|y| x - y))
            .expect("chain back substitution overflowed i128");
        // exact by Cramer's rule
        debug_assert_eq!(t % p[i + 1], 0);
        num[i] = t / p[i + 1];
    }
    Some(
        num.into_iter()
            .map(|x| BigRational::new(BigInt::from(x), BigInt::from(det)))
            .collect(),
    )
}

/// Classify the extraction: plt iff every contracted coefficient is
/// strictly less than 1.
pub fn plt_status(g: &DualGraph, marked: &str) -> Result<(PltStatus, DiscrepancyVector)> {
    let coefficients = pair_log_coefficients(g, marked)?;
    let one = BigRational::one();
    let status = match coefficients.max() {
        None => PltStatus::Plt,
        Some(max) if *max < one => PltStatus::Plt,
        Some(max) if *max == one => PltStatus::LogCanonicalBoundary,
        Some(_) => PltStatus::NotLogCanonical,
    };
    Ok((status, coefficients))
}

pub fn is_plt_extraction(g: &DualGraph, marked: &str) -> Result<bool> {
    Ok(matches!(plt_status(g, marked)?.0, PltStatus::Plt))
}

/// Error carrying the plt diagnostic for a failed extraction.
pub(crate) fn not_plt_error(coefficients: &DiscrepancyVector) -> Error {
    let max = coefficients.max().expect("non-plt needs a coefficient").clone();
    let log_canonical = max == BigRational::one();
    Error::NotPlt { max_coefficient: max, log_canonical }
}

/// The log Fano degree: `δ = (2 − deg Diff) / (−E_Y²)`, with `E_Y²` from
/// the Mumford pullback. Requires the extraction to be plt and the pair
/// to be log Fano (`deg Diff < 2`).
pub fn delta(g: &DualGraph, marked: &str, diff_degree: &BigRational) -> Result<BigRational> {
    if *diff_degree >= big(2) {
        return Err(Error::NotLogFano { degree: diff_degree.clone() });
    }
    delta_with(g, marked, &g.delete(marked)?, diff_degree)
}
