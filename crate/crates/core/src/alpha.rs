//! α-invariants of log Fano structures on a rational curve.
//!
//! For a boundary `Δ = Σ a_i Δ_i` on a rational curve with every
//! `a_i ∈ [0, 1)` and `Σ a_i < 2`, the α-invariant has the closed form
//! `(1 − max a_i) / (2 − Σ a_i)`. [`lct_oracle`] recomputes the same
//! number from the definition by brute-force enumeration of effective
//! divisors, and is the independent check on the closed form.

use num::bigint::BigInt;
use num::{BigRational, One, Zero};

use crate::{Error, Result};

fn big(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

/// Multiset of exact boundary coefficients on marked points of a rational
/// curve. Validated at construction: each coefficient in `[0, 1)` (klt)
/// and total degree below 2 (ample anticanonical).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Boundary {
    coefficients: Vec<BigRational>,
}

impl Boundary {
    pub fn new(coefficients: Vec<BigRational>) -> Result<Self> {
        for a in &coefficients {
            if a < &BigRational::zero() || a >= &BigRational::one() {
                return Err(Error::InvalidCoefficient(a.clone()));
            }
        }
        let degree: BigRational = coefficients.iter().cloned().sum();
        if degree >= big(2) {
            return Err(Error::NotLogFano { degree });
        }
        Ok(Boundary { coefficients })
    }

    pub fn empty() -> Self {
        Boundary { coefficients: Vec::new() }
    }

    pub fn coefficients(&self) -> &[BigRational] {
        &self.coefficients
    }

    pub fn degree(&self) -> BigRational {
        self.coefficients.iter().cloned().sum()
    }

    /// Largest coefficient; 0 for the empty boundary.
    pub fn max_coefficient(&self) -> BigRational {
        self.coefficients.iter().max().cloned().unwrap_or_else(BigRational::zero)
    }
}

/// `α(P¹, Δ) = (1 − max a_i) / (2 − Σ a_i)`, exactly.
pub fn alpha_p1(boundary: &Boundary) -> BigRational {
    (BigRational::one() - boundary.max_coefficient()) / (big(2) - boundary.degree())
}

/// The finite groups acting faithfully on the projective line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroupClass {
    /// 𝔄₅
    Icosahedral,
    /// 𝔖₄
    Octahedral,
    /// 𝔄₄
    Tetrahedral,
    /// dihedral of order 2m, m ≥ 2
    Dihedral(u64),
    /// cyclic of order m, m ≥ 1 (m = 1 is the trivial group)
    Cyclic(u64),
}

impl GroupClass {
    pub fn validate(&self) -> Result<()> {
        match self {
            GroupClass::Dihedral(m) if *m < 2 => Err(Error::InvalidParameters(
                "dihedral group needs m >= 2".into(),
            )),
            GroupClass::Cyclic(0) => {
                Err(Error::InvalidParameters("cyclic group needs m >= 1".into()))
            }
            _ => Ok(()),
        }
    }
}

impl std::fmt::Display for GroupClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GroupClass::Icosahedral => write!(f, "A5"),
            GroupClass::Octahedral => write!(f, "S4"),
            GroupClass::Tetrahedral => write!(f, "A4"),
            GroupClass::Dihedral(m) => write!(f, "D:{m}"),
            GroupClass::Cyclic(m) => write!(f, "C:{m}"),
        }
    }
}

impl std::str::FromStr for GroupClass {
    type Err = Error;

    /// Inverse of `Display`: `A5`, `S4`, `A4`, `D:<m>`, `C:<m>`.
    fn from_str(s: &str) -> Result<Self> {
        let parse_m = |t: &str| {
            t.parse::<u64>()
                .map_err(|_| Error::InvalidParameters(format!("bad group order `{t}`")))
        };
        let group = match s {
            "A5" => GroupClass::Icosahedral,
            "S4" => GroupClass::Octahedral,
            "A4" => GroupClass::Tetrahedral,
            _ => {
                if let Some(t) = s.strip_prefix("D:") {
                    GroupClass::Dihedral(parse_m(t)?)
                } else if let Some(t) = s.strip_prefix("C:") {
                    GroupClass::Cyclic(parse_m(t)?)
                } else {
                    return Err(Error::InvalidParameters(format!("unknown group `{s}`")));
                }
            }
        };
        group.validate()?;
        Ok(group)
    }
}

/// Length of the smallest orbit on the projective line: the vertex orbit
/// of the icosahedron (12), the face-center orbit of the octahedron (6),
/// the vertex orbit of the tetrahedron (4), the pole pair of a dihedral
/// rotation axis (2), and a fixed point of a rotation (1).
pub fn smallest_orbit(group: &GroupClass) -> u64 {
    match group {
        GroupClass::Icosahedral => 12,
        GroupClass::Octahedral => 6,
        GroupClass::Tetrahedral => 4,
        GroupClass::Dihedral(_) => 2,
        GroupClass::Cyclic(_) => 1,
    }
}

/// `α_G(P¹)`: half the smallest orbit length, giving 6, 3, 2, 1, 1/2 for
/// the five classes.
pub fn alpha_g_p1(group: &GroupClass) -> BigRational {
    BigRational::new(BigInt::from(smallest_orbit(group)), BigInt::from(2))
}

/// Brute-force global log canonical threshold on the rational curve.
///
/// Enumerates effective divisors of degree `d = 2 − Σ a_i` supported on
/// the marked points plus one generic point: all mass distributions on a
/// grid of step `d / denom_bound` (which includes every fully
/// concentrated divisor). For each divisor the largest λ keeping every
/// point mass `a_P + λ·D_P` at most 1 is closed-form; the infimum over
/// the enumeration is returned. Must equal [`alpha_p1`] exactly.
pub fn lct_oracle(boundary: &Boundary, denom_bound: u32) -> Result<BigRational> {
    if denom_bound < 2 {
        return Err(Error::InvalidParameters("denominator bound must be at least 2".into()));
    }
    let degree = big(2) - boundary.degree();
    // marked coefficients plus one generic point with coefficient 0
    let mut coeffs: Vec<BigRational> = boundary.coefficients().to_vec();
    coeffs.push(BigRational::zero());

    let step = &degree / big(denom_bound as i64);
    let mut best: Option<BigRational> = None;
    let mut weights = vec![0u32; coeffs.len()];
    enumerate_weights(&mut weights, 0, denom_bound, &mut |w| {
        // λ for this distribution: min over supported points of (1 − a_P)/t_P
        let lambda = w
            .iter()
            .zip(&coeffs)
            .filter(|(&wi, _)| wi > 0)
            .map(|(&wi, a)| (BigRational::one() - a) / (&step * big(wi as i64)))
            .min();
        if let Some(lambda) = lambda {
            match &best {
                Some(b) if *b <= lambda => {}
                _ => best = Some(lambda),
            }
        }
    });
    Ok(best.expect("enumeration is nonempty"))
}

/// All ways to split `total` across `w[pos..]`, invoking `f` on each.
fn enumerate_weights(w: &mut Vec<u32>, pos: usize, total: u32, f: &mut impl FnMut(&[u32])) {
    if pos + 1 == w.len() {
        w[pos] = total;
        f(w);
        return;
    }
    for take in 0..=total {
        w[pos] = take;
        enumerate_weights(w, pos + 1, total - take, f);
    }
}
