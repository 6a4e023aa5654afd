//! Weighted dual graphs of exceptional curve configurations.
//!
//! A vertex is a smooth rational curve with its self-intersection number;
//! an edge is a transversal intersection point of two curves. Genus 0 is
//! a global modeling assumption: the only ways to create a graph are the
//! ADE builders, the chain builder, and blow-up surgery, all of which
//! produce configurations of rational curves.

use serde_json::{json, Value};
use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::linalg;
use crate::{Error, Result};

/// One of the three simply-laced Dynkin families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AdeKind {
    A,
    D,
    E,
}

impl fmt::Display for AdeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AdeKind::A => write!(f, "A"),
            AdeKind::D => write!(f, "D"),
            AdeKind::E => write!(f, "E"),
        }
    }
}

impl std::str::FromStr for AdeKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "A" | "a" => Ok(AdeKind::A),
            "D" | "d" => Ok(AdeKind::D),
            "E" | "e" => Ok(AdeKind::E),
            other => Err(Error::InvalidParameters(format!("unknown ADE kind `{other}`"))),
        }
    }
}

/// An exceptional curve: opaque label plus self-intersection number.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vertex {
    pub id: String,
    pub self_int: i64,
}

/// Where to blow up: either a smooth point on a single curve (away from
/// every other curve), or the intersection point of two adjacent curves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BlowupLocation {
    TailInterior(String),
    Node(String, String),
}

impl fmt::Display for BlowupLocation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BlowupLocation::TailInterior(v) => write!(f, "tail:{v}"),
            BlowupLocation::Node(u, v) => write!(f, "node:{u}-{v}"),
        }
    }
}

/// Immutable weighted dual graph: connected, simple, no self-loops.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualGraph {
    vertices: Vec<Vertex>,
    /// normalized (i, j) index pairs with i < j, sorted
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
    index: HashMap<String, usize>,
}

impl DualGraph {
    pub(crate) fn new(vertices: Vec<Vertex>, edge_ids: &[(String, String)]) -> Result<Self> {
        let mut by_id = HashMap::with_capacity(vertices.len());
        for (i, v) in vertices.iter().enumerate() {
            if by_id.insert(v.id.clone(), i).is_some() {
                return Err(Error::InvalidParameters(format!("duplicate vertex id `{}`", v.id)));
            }
        }
        let index = |id: &str| {
            by_id
                .get(id)
                .copied()
                .ok_or_else(|| Error::InvalidParameters(format!("unknown vertex id `{id}`")))
        };
        let mut edges = BTreeSet::new();
        for (u, v) in edge_ids {
            let (i, j) = (index(u)?, index(v)?);
            if i == j {
                return Err(Error::InvalidParameters(format!("self-loop at `{u}`")));
            }
            edges.insert((i.min(j), i.max(j)));
        }
        let edges: Vec<(usize, usize)> = edges.into_iter().collect();
        let mut adj = vec![Vec::new(); vertices.len()];
        for &(i, j) in &edges {
            adj[i].push(j);
            adj[j].push(i);
        }
        let graph = DualGraph { vertices, edges, adj, index: by_id };
        if !graph.is_connected() {
            return Err(Error::InvalidParameters("graph is not connected".into()));
        }
        Ok(graph)
    }

    /// The standard ADE Dynkin configuration of (−2)-curves.
    ///
    /// Labeling convention: `A_m` is the chain v1…vm; `D_m` is the chain
    /// v1…v_{m−2} with v_{m−1} and v_m both attached to the fork v_{m−2};
    /// `E_m` is the chain v1…v_{m−1} with v_m attached to v3.
    pub fn ade(kind: AdeKind, m: usize) -> Result<Self> {
        let ok = match kind {
            AdeKind::A => m >= 1,
            AdeKind::D => m >= 4,
            AdeKind::E => (6..=8).contains(&m),
        };
        if !ok {
            return Err(Error::InvalidParameters(format!("no Du Val singularity {kind}_{m}")));
        }
        let vertices: Vec<Vertex> = (1..=m)
            .map(|i| Vertex { id: format!("v{i}"), self_int: -2 })
            .collect();
        let e = |i: usize, j: usize| (format!("v{i}"), format!("v{j}"));
        let mut edges: Vec<(String, String)> = Vec::new();
        match kind {
            AdeKind::A => {
                edges.extend((1..m).map(|i| e(i, i + 1)));
            }
            AdeKind::D => {
                edges.extend((1..m - 2).map(|i| e(i, i + 1)));
                edges.push(e(m - 2, m - 1));
                edges.push(e(m - 2, m));
            }
            AdeKind::E => {
                edges.extend((1..m - 1).map(|i| e(i, i + 1)));
                edges.push(e(3, m));
            }
        }
        Self::new(vertices, &edges)
    }

    /// A chain of rational curves with the given self-intersections,
    /// labeled v1…vr in order. Every self-intersection must be negative.
    pub fn chain(self_ints: &[i64]) -> Result<Self> {
        if self_ints.is_empty() {
            return Err(Error::InvalidParameters("empty chain".into()));
        }
        if let Some(s) = self_ints.iter().find(|&&s| s >= 0) {
            return Err(Error::InvalidParameters(format!(
                "chain self-intersection {s} must be negative"
            )));
        }
        let vertices: Vec<Vertex> = self_ints
            .iter()
            .enumerate()
            .map(|(i, &s)| Vertex { id: format!("v{}", i + 1), self_int: s })
            .collect();
        let edges: Vec<(String, String)> = (1..self_ints.len())
            .map(|i| (format!("v{i}"), format!("v{}", i + 1)))
            .collect();
        Self::new(vertices, &edges)
    }

    /// The fork vertex id of a D or E graph under the labeling of [`DualGraph::ade`].
    pub fn fork_id(kind: AdeKind, m: usize) -> Result<String> {
        match kind {
            AdeKind::A => Err(Error::InvalidParameters("A graphs have no fork".into())),
            AdeKind::D => Ok(format!("v{}", m - 2)),
            AdeKind::E => Ok("v3".into()),
        }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    pub fn self_int(&self, id: &str) -> Option<i64> {
        self.index_of(id).map(|i| self.vertices[i].self_int)
    }

    /// Neighbor ids of `id`, in vertex order.
    pub fn neighbors(&self, id: &str) -> Vec<&str> {
        match self.index_of(id) {
            Some(i) => {
                let mut n: Vec<usize> = self.adj[i].clone();
                n.sort_unstable();
                n.iter().map(|&j| self.vertices[j].id.as_str()).collect()
            }
            None => Vec::new(),
        }
    }

    pub fn degree(&self, id: &str) -> usize {
        self.index_of(id).map_or(0, |i| self.adj[i].len())
    }

    pub fn adjacent(&self, u: &str, v: &str) -> bool {
        match (self.index_of(u), self.index_of(v)) {
            (Some(i), Some(j)) => self.adj[i].contains(&j),
            _ => false,
        }
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as id pairs, in normalized order.
    pub fn edges(&self) -> Vec<(&str, &str)> {
        self.edges
            .iter()
            .map(|&(i, j)| (self.vertices[i].id.as_str(), self.vertices[j].id.as_str()))
            .collect()
    }

    fn is_connected(&self) -> bool {
        if self.vertices.is_empty() {
            return true;
        }
        let mut seen = vec![false; self.vertices.len()];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(i) = stack.pop() {
            for &j in &self.adj[i] {
                if !seen[j] {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
        seen.iter().all(|&s| s)
    }

    /// The intersection form in vertex order.
    pub fn intersection_matrix(&self) -> IntMatrix {
        let n = self.vertices.len();
        let mut rows = vec![vec![0i64; n]; n];
        for (i, v) in self.vertices.iter().enumerate() {
            rows[i][i] = v.self_int;
        }
        for &(i, j) in &self.edges {
            rows[i][j] = 1;
            rows[j][i] = 1;
        }
        IntMatrix { rows }
    }

    /// Order of the local fundamental group of the contracted point:
    /// |det| of the intersection form. The empty graph contracts to a
    /// smooth point and has order 1.
    pub fn group_order(&self) -> Result<u64> {
        // Chain fast path: in path order the form is tridiagonal with unit
        // off-diagonal, so the leading principal minors satisfy the
        // continuant recurrence D_k = d_k D_{k-1} - D_{k-2}. Definiteness
        // is the usual sign alternation, checked on the same minors.
        if let Some(order) = self.chain_path() {
            let (mut prev2, mut prev) = (0i128, 1i128);
            for (k, &i) in order.iter().enumerate() {
                let d = self.vertices[i].self_int as i128;
                let minor = d
                    .checked_mul(prev)
                    .map(|x| x - prev2)
                    .expect("chain determinant overflowed i128");
                let expected_negative = k % 2 == 0;
                if (minor < 0) != expected_negative || minor == 0 {
                    return Err(Error::NotContractible);
                }
                prev2 = prev;
                prev = minor;
            }
            return Ok(prev.unsigned_abs() as u64);
        }
        let m = self.intersection_matrix();
        if !m.is_contractible() {
            return Err(Error::NotContractible);
        }
        Ok(m.det().unsigned_abs() as u64)
    }

    /// Blow up a point of the configuration.
    ///
    /// `TailInterior(v)`: v drops by 1; a fresh (−1)-vertex is attached
    /// to v. `Node(u, v)`: the edge u–v is removed, both drop by 1, and a
    /// fresh (−1)-vertex is attached to both. The fresh id is derived
    /// deterministically from the location.
    pub fn blow_up(&self, loc: &BlowupLocation) -> Result<Self> {
        let mut vertices = self.vertices.clone();
        let mut edges: Vec<(String, String)> = self
            .edges()
            .iter()
            .map(|&(u, v)| (u.to_string(), v.to_string()))
            .collect();
        let fresh = Vertex { id: format!("b({loc})"), self_int: -1 };
        match loc {
            BlowupLocation::TailInterior(v) => {
                let i = self
                    .index_of(v)
                    .ok_or_else(|| Error::InvalidLocation(format!("no vertex `{v}`")))?;
                vertices[i].self_int -= 1;
                edges.push((fresh.id.clone(), v.clone()));
            }
            BlowupLocation::Node(u, v) => {
                if !self.adjacent(u, v) {
                    return Err(Error::InvalidLocation(format!("no edge `{u}`-`{v}`")));
                }
                let (i, j) = (self.index_of(u).unwrap(), self.index_of(v).unwrap());
                vertices[i].self_int -= 1;
                vertices[j].self_int -= 1;
                edges.retain(|(a, b)| !((a == u && b == v) || (a == v && b == u)));
                edges.push((fresh.id.clone(), u.clone()));
                edges.push((fresh.id.clone(), v.clone()));
            }
        }
        vertices.push(fresh);
        Self::new(vertices, &edges)
    }

    /// Connected components of the graph with `id` removed. Component
    /// vertices keep their original ids and relative order.
    pub fn delete(&self, id: &str) -> Result<Vec<DualGraph>> {
        let removed = self
            .index_of(id)
            .ok_or_else(|| Error::InvalidParameters(format!("no vertex `{id}`")))?;
        let n = self.vertices.len();
        let mut comp = vec![usize::MAX; n];
        let mut count = 0;
        for start in 0..n {
            if start == removed || comp[start] != usize::MAX {
                continue;
            }
            comp[start] = count;
            let mut stack = vec![start];
            while let Some(i) = stack.pop() {
                for &j in &self.adj[i] {
                    if j != removed && comp[j] == usize::MAX {
                        comp[j] = count;
                        stack.push(j);
                    }
                }
            }
            count += 1;
        }
        // Build the subgraphs directly: the invariants (simple, connected,
        // no self-loops) are inherited, so no revalidation is needed.
        let mut local = vec![0usize; n];
        let mut sizes = vec![0usize; count];
        for i in 0..n {
            if i != removed {
                local[i] = sizes[comp[i]];
                sizes[comp[i]] += 1;
            }
        }
        let mut out: Vec<DualGraph> = sizes
            .iter()
            .map(|&s| DualGraph {
                vertices: Vec::with_capacity(s),
                edges: Vec::new(),
                adj: vec![Vec::new(); s],
                index: HashMap::with_capacity(s),
            })
            .collect();
        for (i, v) in self.vertices.iter().enumerate() {
            if i == removed {
                continue;
            }
            let g = &mut out[comp[i]];
            g.index.insert(v.id.clone(), local[i]);
            g.vertices.push(v.clone());
        }
        for &(i, j) in &self.edges {
            if i == removed || j == removed {
                continue;
            }
            let g = &mut out[comp[i]];
            let (a, b) = (local[i], local[j]);
            g.edges.push((a.min(b), a.max(b)));
            g.adj[a].push(b);
            g.adj[b].push(a);
        }
        for g in &mut out {
            g.edges.sort_unstable();
        }
        Ok(out)
    }

    /// True when the graph is a chain (path), including the one-vertex case.
    pub fn is_chain(&self) -> bool {
        self.edges.len() + 1 == self.vertices.len()
            && self.adj.iter().all(|n| n.len() <= 2)
    }

    /// Vertex indices in path order when the graph is a chain; `None`
    /// otherwise. The two orientations are both valid; the one starting
    /// from the earlier endpoint is returned.
    pub fn chain_path(&self) -> Option<Vec<usize>> {
        if !self.is_chain() {
            return None;
        }
        let n = self.vertices.len();
        if n == 0 {
            return Some(Vec::new());
        }
        let start = (0..n).find(|&i| self.adj[i].len() <= 1)?;
        let mut order = Vec::with_capacity(n);
        let mut prev = usize::MAX;
        let mut here = start;
        loop {
            order.push(here);
            match self.adj[here].iter().find(|&&j| j != prev) {
                Some(&next) => {
                    prev = here;
                    here = next;
                }
                None => break,
            }
        }
        debug_assert_eq!(order.len(), n);
        Some(order)
    }

    /// Canonical JSON form: vertex order preserved, edges normalized.
    pub fn to_json(&self) -> Value {
        json!({
            "vertices": self.vertices.iter()
                .map(|v| json!({"id": v.id, "self": v.self_int}))
                .collect::<Vec<_>>(),
            "edges": self.edges().iter()
                .map(|(u, v)| json!([u, v]))
                .collect::<Vec<_>>(),
        })
    }
}

/// Symmetric integer intersection form: diagonal is the self-intersection
/// numbers, off-diagonal the edge indicator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: Vec<Vec<i64>>,
}

impl IntMatrix {
    pub fn from_rows(rows: Vec<Vec<i64>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidParameters("matrix is not square".into()));
        }
        for i in 0..n {
            for j in 0..i {
                if rows[i][j] != rows[j][i] {
                    return Err(Error::InvalidParameters("matrix is not symmetric".into()));
                }
            }
        }
        Ok(IntMatrix { rows })
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.rows[i][j]
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    /// Exact determinant by fraction-free elimination; 1 for the empty matrix.
    pub fn det(&self) -> i128 {
        linalg::bareiss_det(&self.rows)
    }

    /// Negative definiteness, decided exactly: the k-th leading principal
    /// minor must have sign (−1)^k for every k.
    pub fn is_contractible(&self) -> bool {
        match linalg::leading_principal_minors(&self.rows) {
            None => false,
            Some(minors) => minors
                .iter()
                .enumerate()
                .all(|(k, &d)| if k % 2 == 0 { d < 0 } else { d > 0 }),
        }
    }
}
