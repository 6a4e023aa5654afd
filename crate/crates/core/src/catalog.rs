//! Per-singularity enumeration of the known Kollár components, the
//! pairwise α-sum verification, weak exceptionality, and the unique
//! K-semistable component.
//!
//! The catalog is explicitly the list of components produced by the
//! constructions implemented here (minimal-resolution curve extractions
//! and single point blow-ups on type A; engine-driven chain extractions
//! for general cyclic quotients). It makes no completeness claim.

use num::bigint::BigInt;
use num::BigRational;
use serde_json::{json, Value};
use std::collections::BTreeMap;

use crate::component::{self, KollarComponent, VertexChoice};
use crate::dual_graph::{AdeKind, BlowupLocation};
use crate::hirzebruch_jung::CyclicQuotient;
use crate::rational::format_rational;
use crate::{Error, Result};

/// A surface singularity germ the catalog knows how to handle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Singularity {
    DuVal { kind: AdeKind, m: usize },
    Cyclic(CyclicQuotient),
}

impl std::fmt::Display for Singularity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Singularity::DuVal { kind, m } => write!(f, "{kind}_{m}"),
            Singularity::Cyclic(s) => write!(f, "{s}"),
        }
    }
}

impl Singularity {
    pub fn to_json(&self) -> Value {
        match self {
            Singularity::DuVal { kind, m } => {
                json!({"type": "du_val", "kind": kind.to_string(), "m": m})
            }
            Singularity::Cyclic(s) => json!({"type": "cyclic", "n": s.n(), "q": s.q()}),
        }
    }
}

/// The enumerated components of one singularity, deduplicated by
/// canonical key.
#[derive(Debug, Clone)]
pub struct Catalog {
    pub singularity: Singularity,
    pub components: Vec<KollarComponent>,
}

/// Result of checking `α_X + α_Y < 1` over every unordered pair of
/// distinct components.
#[derive(Debug, Clone)]
pub struct TheoremReport {
    pub pairs: usize,
    /// largest pairwise sum observed; `None` with fewer than two components
    pub max_sum: Option<BigRational>,
    /// pairs with sum ≥ 1; must be empty
    pub violations: Vec<(String, String, BigRational)>,
}

impl TheoremReport {
    pub fn to_json(&self) -> Value {
        json!({
            "pairs": self.pairs,
            "max_sum": self.max_sum.as_ref().map(format_rational),
            "violations": self.violations.iter()
                .map(|(a, b, s)| json!([a, b, format_rational(s)]))
                .collect::<Vec<_>>(),
        })
    }
}

impl Catalog {
    pub fn to_json(&self) -> Value {
        json!({
            "singularity": self.singularity.to_json(),
            "components": self.components.iter().map(|c| c.to_json()).collect::<Vec<_>>(),
            "report": self.report().to_json(),
        })
    }

    /// Pairwise α-sum check over the catalog.
    pub fn report(&self) -> TheoremReport {
        let one = BigRational::from_integer(BigInt::from(1));
        let mut pairs = 0;
        let mut max_sum: Option<BigRational> = None;
        let mut violations = Vec::new();
        for (i, x) in self.components.iter().enumerate() {
            for y in &self.components[i + 1..] {
                pairs += 1;
                let sum = &x.alpha + &y.alpha;
                if max_sum.as_ref().map_or(true, |m| *m < sum) {
                    max_sum = Some(sum.clone());
                }
                if sum >= one {
                    violations.push((x.canonical_key.clone(), y.canonical_key.clone(), sum));
                }
            }
        }
        TheoremReport { pairs, max_sum, violations }
    }
}

/// Enumerate the components of `s`.
///
/// Type A: curve extractions k = 1…⌈m/2⌉, node blow-ups k = 1…⌊m/2⌋ and
/// one tail blow-up, m+1 components in total. Types D and E: the fork
/// extraction only. Cyclic `(n, q)`: every plt extraction of a curve of
/// the minimal resolution chain.
pub fn enumerate(s: &Singularity) -> Result<Catalog> {
    let mut by_key: BTreeMap<String, KollarComponent> = BTreeMap::new();
    let mut push = |c: KollarComponent| {
        by_key.entry(c.canonical_key.clone()).or_insert(c);
    };
    match s {
        Singularity::DuVal { kind: AdeKind::A, m } => {
            let m = *m;
            // one shared base resolution instead of a rebuild per choice
            let g = crate::dual_graph::DualGraph::ade(AdeKind::A, m)?;
            for k in 1..=m.div_ceil(2) {
                let vertex = format!("v{k}");
                let source = component::ExtractionChoice::Vertex {
                    kind: AdeKind::A,
                    m,
                    vertex: vertex.clone(),
                };
                push(component::assemble(&g, &vertex, source)?);
            }
            let mut blow = |location: BlowupLocation| -> crate::Result<()> {
                let blown = g.blow_up(&location)?;
                let marked = format!("b({location})");
                push(component::assemble(
                    &blown,
                    &marked,
                    component::ExtractionChoice::PointBlowup { m, location },
                )?);
                Ok(())
            };
            for k in 1..=m / 2 {
                blow(BlowupLocation::Node(format!("v{k}"), format!("v{}", k + 1)))?;
            }
            blow(BlowupLocation::TailInterior("v1".into()))?;
        }
        Singularity::DuVal { kind, m } => {
            push(component::extract_vertex(*kind, *m, VertexChoice::Fork)?);
        }
        Singularity::Cyclic(cyclic) => {
            let g = cyclic.resolution_graph();
            for v in g.vertices() {
                match component::component_from_graph(&g, &v.id) {
                    Ok(c) => push(c),
                    Err(Error::NotPlt { .. }) => {}
                    Err(e) => return Err(e),
                }
            }
        }
    }
    Ok(Catalog {
        singularity: *s,
        components: by_key.into_values().collect(),
    })
}

/// Enumerate and run the pairwise α-sum check.
pub fn verify_theorem(s: &Singularity) -> Result<TheoremReport> {
    Ok(enumerate(s)?.report())
}

/// A singularity is weakly exceptional exactly when some catalog
/// component has α ≥ 1.
pub fn weakly_exceptional(s: &Singularity) -> Result<bool> {
    let one = BigRational::from_integer(BigInt::from(1));
    Ok(enumerate(s)?.components.iter().any(|c| c.alpha >= one))
}

/// The unique component with α ≥ 1/2, if any. Two qualifying components
/// would falsify the implementation, not the theory, and abort loudly.
pub fn semistable_component(s: &Singularity) -> Result<Option<KollarComponent>> {
    let half = BigRational::new(BigInt::from(1), BigInt::from(2));
    let catalog = enumerate(s)?;
    let mut qualifying = catalog.components.iter().filter(|c| c.alpha >= half);
    let first = qualifying.next().cloned();
    if let (Some(f), Some(second)) = (&first, qualifying.next()) {
        return Err(Error::UniquenessViolated(format!(
            "{s}: components {} and {} both have alpha >= 1/2",
            f.canonical_key, second.canonical_key
        )));
    }
    Ok(first)
}
