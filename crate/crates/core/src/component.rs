//! Kollár components from extraction choices: mark one curve of a
//! resolution, contract the rest, and read off the different, the log
//! Fano degree δ and the α-invariant of the resulting log Fano curve.

use num::bigint::BigInt;
use num::{BigRational, One, Zero};
use serde_json::{json, Value};

use crate::alpha::{alpha_p1, Boundary};
use crate::discrepancy;
use crate::dual_graph::{AdeKind, BlowupLocation, DualGraph};
use crate::rational::format_rational;
use crate::{Error, Result};

/// The different `Diff_E(0)`: one entry per singular point of the
/// contracted surface lying on the marked curve, with coefficient
/// `(m − 1)/m` at a point of index m. Index-1 entries are omitted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Different {
    entries: Vec<DifferentEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DifferentEntry {
    pub label: String,
    pub index: u64,
}

impl Different {
    fn new(mut entries: Vec<DifferentEntry>) -> Self {
        entries.retain(|e| e.index >= 2);
        Different { entries }
    }

    pub fn entries(&self) -> &[DifferentEntry] {
        &self.entries
    }

    /// The multiset of indices, sorted.
    pub fn indices(&self) -> Vec<u64> {
        let mut idx: Vec<u64> = self.entries.iter().map(|e| e.index).collect();
        idx.sort_unstable();
        idx
    }

    pub fn coefficients(&self) -> Vec<BigRational> {
        self.entries
            .iter()
            .map(|e| BigRational::new(BigInt::from(e.index - 1), BigInt::from(e.index)))
            .collect()
    }

    pub fn degree(&self) -> BigRational {
        self.coefficients().into_iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// How the component was produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExtractionChoice {
    /// a curve of the minimal resolution of an ADE singularity
    Vertex { kind: AdeKind, m: usize, vertex: String },
    /// the exceptional curve of one extra blow-up on an A_m resolution
    PointBlowup { m: usize, location: BlowupLocation },
    /// a marked vertex of a user-supplied graph (general engine)
    GraphMark { marked: String },
}

impl ExtractionChoice {
    pub fn to_json(&self) -> Value {
        match self {
            ExtractionChoice::Vertex { kind, m, vertex } => {
                json!({"type": "vertex", "kind": kind.to_string(), "m": m, "vertex": vertex})
            }
            ExtractionChoice::PointBlowup { m, location } => {
                json!({"type": "blowup", "m": m, "location": location.to_string()})
            }
            ExtractionChoice::GraphMark { marked } => {
                json!({"type": "graph", "marked": marked})
            }
        }
    }
}

/// A computed Kollár component: its different, δ, α, the extraction that
/// produced it, and a key identifying the divisorial valuation up to the
/// symmetry of the configuration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KollarComponent {
    pub different: Different,
    pub delta: BigRational,
    pub alpha: BigRational,
    pub source: ExtractionChoice,
    pub canonical_key: String,
}

impl KollarComponent {
    pub fn to_json(&self) -> Value {
        json!({
            "source": self.source.to_json(),
            "key": self.canonical_key,
            "diff": self.different.entries().iter()
                .map(|e| json!({"label": e.label, "index": e.index}))
                .collect::<Vec<_>>(),
            "delta": format_rational(&self.delta),
            "alpha": format_rational(&self.alpha),
        })
    }
}

/// How to pick the extracted curve in [`extract_vertex`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VertexChoice {
    /// the k-th curve, 1-based, under the labeling of [`DualGraph::ade`]
    Index(usize),
    /// the degree-3 vertex of a D or E graph
    Fork,
}

/// The different of the extraction marked at `marked`.
///
/// Every connected component of the graph minus `marked` must be a chain
/// meeting the marked curve exactly once, at a chain end; its index is
/// the group order of the chain.
pub fn different_of(g: &DualGraph, marked: &str) -> Result<Different> {
    let comps = g.delete(marked)?;
    discrepancy::plt_gate_with(g, marked, &comps)?;
    different_with(g, marked, &comps)
}

fn different_with(g: &DualGraph, marked: &str, comps: &[DualGraph]) -> Result<Different> {
    let mut entries = Vec::new();
    for comp in comps {
        let attachments: Vec<&str> = comp
            .vertices()
            .iter()
            .filter(|v| g.adjacent(marked, &v.id))
            .map(|v| v.id.as_str())
            .collect();
        if attachments.len() != 1 {
            return Err(Error::UnsupportedConfiguration(format!(
                "contracted component touches the marked curve {} times",
                attachments.len()
            )));
        }
        if !comp.is_chain() {
            return Err(Error::UnsupportedConfiguration(
                "contracted component is not a chain".into(),
            ));
        }
        let attach = attachments[0];
        if comp.degree(attach) > 1 {
            return Err(Error::UnsupportedConfiguration(format!(
                "marked curve meets contracted chain at interior vertex `{attach}`"
            )));
        }
        entries.push(DifferentEntry {
            label: format!("P({attach})"),
            index: comp.group_order()?,
        });
    }
    entries.sort_by(|a, b| a.label.cmp(&b.label));
    Ok(Different::new(entries))
}

/// General engine: assemble the Kollár component of `(g, marked)`.
pub fn component_from_graph(g: &DualGraph, marked: &str) -> Result<KollarComponent> {
    assemble(g, marked, ExtractionChoice::GraphMark { marked: marked.to_string() })
}

pub(crate) fn assemble(g: &DualGraph, marked: &str, source: ExtractionChoice) -> Result<KollarComponent> {
    let comps = g.delete(marked)?;
    discrepancy::plt_gate_with(g, marked, &comps)?;
    let different = different_with(g, marked, &comps)?;
    let delta = discrepancy::delta_with(g, marked, &comps, &different.degree())?;
    let boundary = Boundary::new(different.coefficients())?;
    let alpha = alpha_p1(&boundary);
    debug_assert!(
        alpha == (BigRational::one() - different.coefficients().into_iter().max().unwrap_or_else(BigRational::zero))
            / (BigRational::from_integer(BigInt::from(2)) - different.degree())
    );
    debug_assert!(delta > BigRational::zero());
    let canonical_key = canonical_key(g, marked, &comps);
    Ok(KollarComponent { different, delta, alpha, source, canonical_key })
}

/// Key of the divisorial valuation: the self-intersection of the marked
/// curve plus the sorted multiset of contracted arms, each arm read from
/// its attachment end outward. Isomorphic arms are interchangeable, which
/// matches the identifications the constructions are made up to
/// (k ↔ m+1−k on a chain, the two tails of a fork, either tail blow-up).
fn canonical_key(g: &DualGraph, marked: &str, comps: &[DualGraph]) -> String {
    let marked_self = g.self_int(marked).expect("marked vertex exists");
    let mut arms: Vec<String> = comps
        .iter()
        .map(|comp| {
            // read the chain starting from the attachment end
            let mut order = comp.chain_path().expect("contracted arm is a chain");
            let attached = |i: usize| g.adjacent(marked, &comp.vertices()[i].id);
            if !order.is_empty() && !attached(order[0]) {
                order.reverse();
            }
            debug_assert!(order.first().is_some_and(|&i| attached(i)));
            let seq: Vec<String> = order
                .iter()
                .map(|&i| comp.vertices()[i].self_int.to_string())
                .collect();
            format!("[{}]", seq.join(","))
        })
        .collect();
    arms.sort();
    format!("e{}|{}", marked_self, arms.join("|"))
}

/// Extraction of a curve of the minimal resolution of an ADE singularity.
///
/// For type A any `1 ≤ k ≤ m` is accepted (k and m+1−k give the same
/// component). For types D and E only the fork is purely log terminal.
pub fn extract_vertex(kind: AdeKind, m: usize, choice: VertexChoice) -> Result<KollarComponent> {
    let g = DualGraph::ade(kind, m)?;
    let vertex = match (kind, choice) {
        (AdeKind::A, VertexChoice::Index(k)) if (1..=m).contains(&k) => format!("v{k}"),
        (AdeKind::A, VertexChoice::Index(k)) => {
            return Err(Error::InvalidParameters(format!("A_{m} has no vertex v{k}")))
        }
        (AdeKind::A, VertexChoice::Fork) => {
            return Err(Error::InvalidParameters("A graphs have no fork".into()))
        }
        (_, VertexChoice::Fork) => DualGraph::fork_id(kind, m)?,
        (_, VertexChoice::Index(k)) if (1..=m).contains(&k) => format!("v{k}"),
        (_, VertexChoice::Index(k)) => {
            return Err(Error::InvalidParameters(format!("{kind}_{m} has no vertex v{k}")))
        }
    };
    assemble(&g, &vertex, ExtractionChoice::Vertex { kind, m, vertex: vertex.clone() })
}

/// Extraction of the exceptional curve of one extra blow-up on the
/// minimal resolution of A_m: either at a smooth point of a tail curve or
/// at the intersection point of two adjacent curves.
pub fn extract_blowup(m: usize, location: BlowupLocation) -> Result<KollarComponent> {
    let g = DualGraph::ade(AdeKind::A, m)?;
    match &location {
        BlowupLocation::TailInterior(v) => {
            if g.self_int(v).is_none() {
                return Err(Error::InvalidLocation(format!("no vertex `{v}`")));
            }
            if g.degree(v) > 1 {
                return Err(Error::InvalidLocation(format!(
                    "`{v}` is not a tail curve of A_{m}"
                )));
            }
        }
        BlowupLocation::Node(u, v) => {
            if !g.adjacent(u, v) {
                return Err(Error::InvalidLocation(format!("no intersection point `{u}`-`{v}`")));
            }
        }
    }
    let blown = g.blow_up(&location)?;
    let marked = format!("b({location})");
    assemble(&blown, &marked, ExtractionChoice::PointBlowup { m, location })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn different_examples() {
        let a3 = DualGraph::ade(AdeKind::A, 3).unwrap();
        assert_eq!(different_of(&a3, "v2").unwrap().indices(), vec![2, 2]);

        let a1 = DualGraph::ade(AdeKind::A, 1).unwrap();
        assert!(different_of(&a1, "v1").unwrap().is_empty());

        let d5 = DualGraph::ade(AdeKind::D, 5).unwrap();
        assert_eq!(different_of(&d5, "v3").unwrap().indices(), vec![2, 2, 3]);
    }

    #[test]
    fn different_rejects_non_plt() {
        let d4 = DualGraph::ade(AdeKind::D, 4).unwrap();
        assert!(matches!(
            different_of(&d4, "v3"),
            Err(Error::NotPlt { log_canonical: true, .. })
        ));
    }

    #[test]
    fn vertex_extraction_examples() {
        let c = extract_vertex(AdeKind::A, 5, VertexChoice::Index(2)).unwrap();
        assert_eq!(c.different.indices(), vec![2, 4]);
        assert_eq!(c.alpha, rat(1, 3));

        let c = extract_vertex(AdeKind::E, 8, VertexChoice::Fork).unwrap();
        assert_eq!(c.different.indices(), vec![2, 3, 5]);
        assert_eq!(c.alpha, rat(6, 1));

        let c = extract_vertex(AdeKind::D, 4, VertexChoice::Fork).unwrap();
        assert_eq!(c.different.indices(), vec![2, 2, 2]);
        assert_eq!(c.alpha, rat(1, 1));
        assert_eq!(c.delta, rat(1, 1));

        assert!(matches!(
            extract_vertex(AdeKind::E, 7, VertexChoice::Index(1)),
            Err(Error::NotPlt { .. })
        ));
    }

    #[test]
    fn every_non_fork_extraction_on_d_and_e_fails_plt() {
        for (kind, ms) in [(AdeKind::D, (4..=12).collect::<Vec<_>>()), (AdeKind::E, vec![6, 7, 8])] {
            for m in ms {
                let fork = DualGraph::fork_id(kind, m).unwrap();
                for k in 1..=m {
                    let r = extract_vertex(kind, m, VertexChoice::Index(k));
                    if format!("v{k}") == fork {
                        assert!(r.is_ok(), "{kind}_{m} fork should be plt");
                    } else {
                        assert!(matches!(r, Err(Error::NotPlt { .. })), "{kind}_{m} v{k}");
                    }
                }
            }
        }
    }

    #[test]
    fn blowup_extraction_examples() {
        let c = extract_blowup(3, BlowupLocation::TailInterior("v1".into())).unwrap();
        assert_eq!(c.different.indices(), vec![7]);
        assert_eq!(c.alpha, rat(1, 8));

        let c = extract_blowup(4, BlowupLocation::Node("v2".into(), "v3".into())).unwrap();
        assert_eq!(c.different.indices(), vec![5, 5]);
        assert_eq!(c.alpha, rat(1, 2));

        let c = extract_blowup(2, BlowupLocation::Node("v1".into(), "v2".into())).unwrap();
        assert_eq!(c.different.indices(), vec![3, 3]);
        assert_eq!(c.alpha, rat(1, 2));
    }

    #[test]
    fn blowup_rejects_interior_and_missing_locations() {
        assert!(matches!(
            extract_blowup(5, BlowupLocation::TailInterior("v3".into())),
            Err(Error::InvalidLocation(_))
        ));
        assert!(matches!(
            extract_blowup(5, BlowupLocation::Node("v1".into(), "v3".into())),
            Err(Error::InvalidLocation(_))
        ));
        assert!(matches!(
            extract_blowup(5, BlowupLocation::TailInterior("v9".into())),
            Err(Error::InvalidLocation(_))
        ));
    }

    #[test]
    fn engine_examples() {
        let a3 = DualGraph::ade(AdeKind::A, 3).unwrap();
        let c = component_from_graph(&a3, "v2").unwrap();
        assert_eq!(c.alpha, rat(1, 2));
        assert_eq!(c.delta, rat(1, 1));

        let b = DualGraph::ade(AdeKind::A, 2)
            .unwrap()
            .blow_up(&BlowupLocation::TailInterior("v1".into()))
            .unwrap();
        let c = component_from_graph(&b, "b(tail:v1)").unwrap();
        assert_eq!(c.different.indices(), vec![5]);
        assert_eq!(c.alpha, rat(1, 6));

        let point = DualGraph::chain(&[-1]).unwrap();
        let c = component_from_graph(&point, "v1").unwrap();
        assert!(c.different.is_empty());
        assert_eq!(c.alpha, rat(1, 2));
        assert_eq!(c.delta, rat(2, 1));
    }

    #[test]
    fn closed_forms_match_for_vertex_extractions() {
        for m in 1..=30usize {
            for k in 1..=(m + 1) / 2 {
                let c = extract_vertex(AdeKind::A, m, VertexChoice::Index(k)).unwrap();
                assert_eq!(c.alpha, rat(k as i64, (m + 1) as i64), "A_{m} k={k}");
                let expected: Vec<u64> = {
                    let mut v: Vec<u64> = [k as u64, (m - k + 1) as u64]
                        .into_iter()
                        .filter(|&i| i >= 2)
                        .collect();
                    v.sort_unstable();
                    v
                };
                assert_eq!(c.different.indices(), expected);
                assert_eq!(c.delta, rat(1, 1));
            }
        }
        for m in 4..=30usize {
            let c = extract_vertex(AdeKind::D, m, VertexChoice::Fork).unwrap();
            assert_eq!(c.alpha, rat(1, 1));
            assert_eq!(c.different.indices(), vec![2, 2, (m - 2) as u64]);
        }
        for (m, a) in [(6, 2), (7, 3), (8, 6)] {
            let c = extract_vertex(AdeKind::E, m, VertexChoice::Fork).unwrap();
            assert_eq!(c.alpha, rat(a, 1));
            assert_eq!(c.different.indices(), vec![2, 3, (m - 3) as u64]);
        }
    }

    #[test]
    fn closed_forms_match_for_blowup_extractions() {
        for m in 1..=30usize {
            let c = extract_blowup(m, BlowupLocation::TailInterior("v1".into())).unwrap();
            assert_eq!(c.alpha, rat(1, (2 * m + 2) as i64), "tail on A_{m}");
            assert_eq!(c.different.indices(), vec![(2 * m + 1) as u64]);
            for k in 1..=m / 2 {
                let c = extract_blowup(
                    m,
                    BlowupLocation::Node(format!("v{k}"), format!("v{}", k + 1)),
                )
                .unwrap();
                assert_eq!(c.alpha, rat((2 * k + 1) as i64, (2 * m + 2) as i64));
                let mut idx = vec![(2 * k + 1) as u64, (2 * (m - k) + 1) as u64];
                idx.sort_unstable();
                assert_eq!(c.different.indices(), idx, "node k={k} on A_{m}");
            }
        }
    }

    #[test]
    fn log_fano_on_every_successful_extraction() {
        for m in 1..=20usize {
            for k in 1..=m {
                let c = extract_vertex(AdeKind::A, m, VertexChoice::Index(k)).unwrap();
                assert!(c.delta > rat(0, 1));
                assert!(c.different.degree() < rat(2, 1));
            }
        }
    }

    #[test]
    fn canonicalization_identifies_symmetric_choices() {
        let a = extract_vertex(AdeKind::A, 7, VertexChoice::Index(2)).unwrap();
        let b = extract_vertex(AdeKind::A, 7, VertexChoice::Index(6)).unwrap();
        assert_eq!(a.canonical_key, b.canonical_key);

        let a = extract_blowup(6, BlowupLocation::Node("v2".into(), "v3".into())).unwrap();
        let b = extract_blowup(6, BlowupLocation::Node("v4".into(), "v5".into())).unwrap();
        assert_eq!(a.canonical_key, b.canonical_key);

        let a = extract_blowup(5, BlowupLocation::TailInterior("v1".into())).unwrap();
        let b = extract_blowup(5, BlowupLocation::TailInterior("v5".into())).unwrap();
        assert_eq!(a.canonical_key, b.canonical_key);
    }

    #[test]
    fn canonicalization_keeps_distinct_valuations_apart() {
        let vertex = extract_vertex(AdeKind::A, 4, VertexChoice::Index(2)).unwrap();
        let node = extract_blowup(4, BlowupLocation::Node("v2".into(), "v3".into())).unwrap();
        let tail = extract_blowup(4, BlowupLocation::TailInterior("v1".into())).unwrap();
        assert_ne!(vertex.canonical_key, node.canonical_key);
        assert_ne!(vertex.canonical_key, tail.canonical_key);
        assert_ne!(node.canonical_key, tail.canonical_key);

        let k1 = extract_vertex(AdeKind::A, 5, VertexChoice::Index(1)).unwrap();
        let k2 = extract_vertex(AdeKind::A, 5, VertexChoice::Index(2)).unwrap();
        assert_ne!(k1.canonical_key, k2.canonical_key);
    }

    #[test]
    fn json_shape() {
        let c = extract_vertex(AdeKind::A, 5, VertexChoice::Index(2)).unwrap();
        let j = c.to_json();
        assert_eq!(j["alpha"], "1/3");
        assert_eq!(j["delta"], "1");
        assert_eq!(j["source"]["type"], "vertex");
        assert_eq!(j["diff"].as_array().unwrap().len(), 2);
    }
}
