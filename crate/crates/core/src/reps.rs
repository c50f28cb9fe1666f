//! Census of the irreducible representations of `G~ = N~ ⋊ <Phi>`.
//!
//! `G~` is a Frobenius group with abelian kernel, so its complex irreducibles
//! are the `p` characters lifted from `Z_p` plus one degree-`p` induced
//! representation per `Phi`-orbit of nontrivial characters of `N~`. Only
//! degrees, counts and kernels are tracked; no character values.

use num_bigint::BigUint;

use crate::action::AdaptedAction;
use crate::atlas::{core, OrbitClass};
use crate::calculus::{genus_homology_cover, prym_dim};
use crate::error::{Error, Result};
use crate::params::CoverParams;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepFamily {
    pub label: String,
    pub degree: BigUint,
    pub count: BigUint,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsotypicalFactor {
    pub rep: String,
    pub factor: String,
    pub dim: BigUint,
    pub count: BigUint,
}

/// Degree bookkeeping for a permutation representation `rho_H`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermutationDecomposition {
    pub subgroup: String,
    pub index: BigUint,
    pub constituents: Vec<String>,
    pub constituent_degree_sum: BigUint,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepTable {
    pub params: CoverParams,
    pub complex: Vec<RepFamily>,
    pub rational: Vec<RepFamily>,
    pub pairing: Vec<IsotypicalFactor>,
    pub permutation: Vec<PermutationDecomposition>,
    pub checks: Vec<(String, bool)>,
}

pub const CHECK_SUM_OF_SQUARES: &str = "sum of squared degrees = |G~|";
pub const CHECK_RATIONAL_GROUPING: &str = "rational reps group every complex irreducible once";
pub const CHECK_INDUCED_COUNTS: &str = "induced count (q^n-1)/p = t (q-1)";
pub const CHECK_ISOTYPICAL_DIM: &str = "g + t p dim P = g~";
pub const CHECK_PERMUTATION_DEGREES: &str = "permutation degrees match subgroup indices";

fn big(x: impl Into<BigUint>) -> BigUint {
    x.into()
}

fn sum_of_squares(fams: &[RepFamily]) -> BigUint {
    fams.iter().map(|f| &f.degree * &f.degree * &f.count).sum()
}

/// Complex irreducibles: `p` linear characters and `(q^n - 1)/p` of degree `p`.
pub fn complex_table(params: &CoverParams) -> Vec<RepFamily> {
    let p = params.p();
    vec![
        RepFamily { label: "χ_0".into(), degree: big(1u32), count: big(1u32) },
        RepFamily { label: "χ_j".into(), degree: big(1u32), count: big(p - 1) },
        RepFamily { label: "Ṽ_j".into(), degree: big(p), count: (params.group_order() - 1u32) / p },
    ]
}

/// Rational irreducibles: `χ_0`, `U` of degree `p-1`, and `t` of degree `p(q-1)`.
pub fn rational_table(params: &CoverParams) -> Result<Vec<RepFamily>> {
    let (p, q) = (params.p(), params.q());
    let t = params.t().ok_or_else(|| Error::InvalidParameters(format!("p does not divide m for {params}")))?;
    Ok(vec![
        RepFamily { label: "χ_0".into(), degree: big(1u32), count: big(1u32) },
        RepFamily { label: "U".into(), degree: big(p - 1), count: big(1u32) },
        RepFamily { label: "U_j".into(), degree: big(p * (q - 1)), count: t },
    ])
}

/// Abelian-variety factors paired with the rational irreducibles acting on them.
pub fn isotypical_report(params: &CoverParams) -> Result<Vec<IsotypicalFactor>> {
    let t = params.t().ok_or_else(|| Error::InvalidParameters(format!("p does not divide m for {params}")))?;
    let per_class = prym_dim(params) * params.p();
    let pairing = vec![
        IsotypicalFactor { rep: "U".into(), factor: "JX".into(), dim: big(params.g()), count: big(1u32) },
        IsotypicalFactor { rep: "U_j".into(), factor: "P(Y_j/X)^p".into(), dim: per_class, count: t },
    ];
    let total: BigUint = pairing.iter().map(|f| &f.dim * &f.count).sum();
    if total != genus_homology_cover(params) {
        return Err(Error::IdentityFailure(format!("isotypical dimensions do not add up to g~ for {params}")));
    }
    Ok(pairing)
}

pub fn rep_table(params: &CoverParams) -> Result<RepTable> {
    let (p, q) = (params.p(), params.q());
    let complex = complex_table(params);
    let rational = rational_table(params)?;
    let pairing = isotypical_report(params)?;
    let t = params.t().expect("checked by rational_table");

    let group_order = params.group_order() * p;
    let complex_count: BigUint = complex.iter().map(|f| &f.count).sum();
    // χ_0 is one constituent, U groups p-1, each U_j groups q-1
    let grouped = big(1u32) + big(p - 1) + &t * (q - 1);
    let permutation = vec![
        PermutationDecomposition {
            subgroup: "N~".into(),
            index: big(p),
            constituents: vec!["χ_0".into(), "U".into()],
            constituent_degree_sum: big(1u32) + (p - 1),
        },
        PermutationDecomposition {
            subgroup: "L_j".into(),
            index: big(p * q),
            constituents: vec!["χ_0".into(), "U".into(), "U_j".into()],
            constituent_degree_sum: big(1u32) + (p - 1) + p * (q - 1),
        },
    ];
    let checks = vec![
        (CHECK_SUM_OF_SQUARES.to_string(), sum_of_squares(&complex) == group_order),
        (CHECK_RATIONAL_GROUPING.to_string(), grouped == complex_count),
        (CHECK_INDUCED_COUNTS.to_string(), complex[2].count == &t * (q - 1)),
        (
            CHECK_ISOTYPICAL_DIM.to_string(),
            pairing.iter().map(|f| &f.dim * &f.count).sum::<BigUint>() == genus_homology_cover(params),
        ),
        (CHECK_PERMUTATION_DEGREES.to_string(), permutation.iter().all(|d| d.index == d.constituent_degree_sum)),
    ];
    if let Some((name, _)) = checks.iter().find(|(_, ok)| !ok) {
        return Err(Error::IdentityFailure(format!("{name} fails for {params}")));
    }
    Ok(RepTable { params: params.clone(), complex, rational, pairing, permutation, checks })
}

/// Number of rational irreducibles whose kernel is a proper subgroup of `N~`.
/// Only the `U_j` qualify: `χ_0` has kernel `G~` and `U` has kernel `N~`.
pub fn rational_count_with_kernel_in_n(params: &CoverParams) -> Result<BigUint> {
    let rational = rational_table(params)?;
    Ok(rational.into_iter().filter(|f| f.label == "U_j").map(|f| f.count).sum())
}

/// The induced representation attached to an orbit and its kernel.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InducedKernel {
    pub label: String,
    pub kernel_dim: usize,
    pub kernel_size: BigUint,
}

/// The kernel of `Ind V` is the core of `ker V`, which is the same for every
/// member of the orbit.
pub fn induced_rep_kernel(orbit: &OrbitClass, action: &AdaptedAction) -> Result<InducedKernel> {
    for m in &orbit.members {
        if core(m, action) != orbit.core {
            return Err(Error::IdentityFailure(format!("core differs across the orbit of {}", orbit.representative)));
        }
    }
    let q = action.q();
    Ok(InducedKernel {
        label: format!("Ṽ{}", orbit.representative),
        kernel_dim: orbit.core_dim(),
        kernel_size: crate::params::big_pow(q, orbit.core_dim()),
    })
}
