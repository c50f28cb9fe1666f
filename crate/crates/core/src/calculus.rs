//! Genus and dimension bookkeeping for the tower
//! `X~ -> Y_j -> X -> P^1` and the orbifold `T = X~ / <Phi>`.
//!
//! Everything is exact big-integer arithmetic; a division that does not come
//! out even is reported as an error rather than rounded.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::params::{big_pow, CoverParams};

/// Genus of a cyclic p-gonal curve with `r` fixed points.
pub fn genus_base(p: u32, r: u32) -> u32 {
    (p - 1) * (r - 2) / 2
}

/// Genus of the q-homology cover, `1 + q^{2g}(g - 1)`.
pub fn genus_homology_cover(params: &CoverParams) -> BigUint {
    params.group_order() * (params.g() - 1) + 1u32
}

/// Genus of each `Y_j = X~ / L_j`, `1 + q(n - 2)/2`.
pub fn genus_intermediate(params: &CoverParams) -> BigUint {
    BigUint::from(params.q()) * ((params.n() - 2) / 2) + 1u32
}

/// Genus of `T = X~ / <Phi>`, `(n - 2)(q^n - 1) / 2p`; `T` has `r` cone points
/// of order `p`.
pub fn genus_quotient_t(params: &CoverParams) -> Result<BigUint> {
    let num = (params.group_order() - 1u32) * (params.n() - 2);
    let den = BigUint::from(2 * params.p());
    let (quot, rem) = num.div_rem(&den);
    if !rem.is_zero() {
        return Err(Error::InvalidParameters(format!("genus of T is not integral for {params}")));
    }
    Ok(quot)
}

/// `dim P(Y_j / X) = (g - 1)(q - 1)`.
pub fn prym_dim(params: &CoverParams) -> BigUint {
    BigUint::from(params.g() - 1) * (params.q() - 1)
}

/// Genus of `X~ / K` for a subgroup `K` of order `q^core_dim`, which acts
/// freely: `1 + (g~ - 1) / q^core_dim`.
pub fn genus_quotient_by_core(params: &CoverParams, core_dim: usize) -> Result<BigUint> {
    if core_dim > params.n() {
        return Err(Error::AmbientMismatch { expected: params.n(), found: core_dim });
    }
    let (quot, rem) = (genus_homology_cover(params) - 1u32).div_rem(&big_pow(params.q(), core_dim));
    if !rem.is_zero() {
        return Err(Error::IdentityFailure(format!(
            "unramified Riemann-Hurwitz is not integral for core dimension {core_dim}"
        )));
    }
    Ok(quot + 1u32)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverReport {
    pub params: CoverParams,
    pub g: u32,
    pub g_tilde: BigUint,
    pub g_y: BigUint,
    pub g_t: BigUint,
    pub cone_points: u32,
    pub prym_dim: BigUint,
    pub m: BigUint,
    pub t: BigUint,
    pub s0: u32,
    /// Genus of `X~ / K` for every admissible core dimension (multiples of `s0`).
    pub genus_z: BTreeMap<usize, BigUint>,
    pub checks: Vec<(String, bool)>,
}

pub const CHECK_DECOMPOSITION: &str = "isotypical dimension g~ = g + m * dim P";
pub const CHECK_PRYM_SUM: &str = "sum of Prym dimensions t * dim P = g_T";
pub const CHECK_RH_TOP: &str = "Riemann-Hurwitz X~/{1} = X~";
pub const CHECK_RH_BOTTOM: &str = "Riemann-Hurwitz X~/N = X";

/// Every formula evaluated together, with the identities tying them checked.
/// Fails if any identity does not hold.
pub fn decomposition_report(params: &CoverParams) -> Result<CoverReport> {
    let t = params.t().ok_or_else(|| Error::InvalidParameters(format!("p does not divide m for {params}")))?;
    let g = params.g();
    let g_tilde = genus_homology_cover(params);
    let g_t = genus_quotient_t(params)?;
    let prym = prym_dim(params);
    let m = params.m();
    let n = params.n();

    let mut genus_z = BTreeMap::new();
    for d in (0..=n).step_by(params.s0() as usize) {
        genus_z.insert(d, genus_quotient_by_core(params, d)?);
    }

    let checks = vec![
        (CHECK_DECOMPOSITION.to_string(), g_tilde == BigUint::from(g) + &m * &prym),
        (CHECK_PRYM_SUM.to_string(), &t * &prym == g_t),
        (CHECK_RH_TOP.to_string(), genus_quotient_by_core(params, 0)? == g_tilde),
        (CHECK_RH_BOTTOM.to_string(), genus_quotient_by_core(params, n)? == BigUint::from(g)),
    ];
    if let Some((name, _)) = checks.iter().find(|(_, ok)| !ok) {
        return Err(Error::IdentityFailure(format!("{name} fails for {params}")));
    }
    Ok(CoverReport {
        params: params.clone(),
        g,
        g_tilde,
        g_y: genus_intermediate(params),
        g_t,
        cone_points: params.r(),
        prym_dim: prym,
        m,
        t,
        s0: params.s0(),
        genus_z,
        checks,
    })
}

/// Every strict parameter triple with `p <= max_p`, `q <= max_q`,
/// `3 <= r <= max_r`.
pub fn parameter_sweep(max_p: u32, max_q: u32, max_r: u32) -> Vec<CoverParams> {
    let mut out = Vec::new();
    for p in 3..=max_p {
        for q in 2..=max_q {
            for r in 3..=max_r {
                if let Ok(c) = CoverParams::new(p, q, r) {
                    out.push(c);
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(x: u64) -> BigUint {
        BigUint::from(x)
    }

    #[test]
    fn base_genus() {
        assert_eq!(genus_base(13, 3), 6);
        assert_eq!(genus_base(5, 3), 2);
        assert_eq!(genus_base(3, 4), 2);
    }

    #[test]
    fn homology_cover_genus() {
        assert_eq!(genus_homology_cover(&CoverParams::new(13, 3, 3).unwrap()), big(2_657_206));
        assert_eq!(genus_homology_cover(&CoverParams::new(5, 2, 3).unwrap()), big(17));
        assert_eq!(genus_homology_cover(&CoverParams::oracle(3, 2, 3).unwrap()), big(1));
    }

    #[test]
    fn intermediate_genus() {
        assert_eq!(genus_intermediate(&CoverParams::new(13, 3, 3).unwrap()), big(16));
        assert_eq!(genus_intermediate(&CoverParams::new(5, 2, 3).unwrap()), big(3));
        assert_eq!(genus_intermediate(&CoverParams::new(3, 2, 4).unwrap()), big(3));
    }

    #[test]
    fn orbifold_genus() {
        assert_eq!(genus_quotient_t(&CoverParams::new(5, 2, 3).unwrap()).unwrap(), big(3));
        assert_eq!(genus_quotient_t(&CoverParams::new(13, 3, 3).unwrap()).unwrap(), big(204_400));
        assert_eq!(genus_quotient_t(&CoverParams::new(3, 2, 4).unwrap()).unwrap(), big(5));
    }

    #[test]
    fn prym_dimension() {
        assert_eq!(prym_dim(&CoverParams::new(5, 2, 3).unwrap()), big(1));
        assert_eq!(prym_dim(&CoverParams::new(13, 3, 3).unwrap()), big(10));
        assert!(prym_dim(&CoverParams::oracle(3, 5, 3).unwrap()).is_zero());
    }

    #[test]
    fn quotient_by_core() {
        let c = CoverParams::new(13, 3, 3).unwrap();
        let want = [(0, 2_657_206u64), (3, 98_416), (6, 3_646), (9, 136), (12, 6)];
        for (d, g) in want {
            assert_eq!(genus_quotient_by_core(&c, d).unwrap(), big(g));
        }
        assert!(genus_quotient_by_core(&c, 13).is_err());
    }

    #[test]
    fn reports() {
        let r = decomposition_report(&CoverParams::new(5, 2, 3).unwrap()).unwrap();
        assert_eq!((r.t.clone(), r.prym_dim.clone(), r.g_t.clone()), (big(3), big(1), big(3)));
        assert!(r.checks.iter().all(|(_, ok)| *ok));

        let r = decomposition_report(&CoverParams::new(13, 3, 3).unwrap()).unwrap();
        assert_eq!(&r.t * &r.prym_dim, big(204_400));
        assert_eq!(r.g_t, big(204_400));
        assert_eq!(r.genus_z.keys().copied().collect::<Vec<_>>(), vec![0, 3, 6, 9, 12]);

        let r = decomposition_report(&CoverParams::new(3, 2, 4).unwrap()).unwrap();
        assert_eq!(&r.m * &r.prym_dim + r.g, big(17));
        assert_eq!(r.g_tilde, big(17));
    }

    #[test]
    fn sweep_identities_hold() {
        let sweep = parameter_sweep(13, 7, 6);
        assert!(sweep.len() > 30);
        for c in &sweep {
            decomposition_report(c).unwrap();
        }
    }
}
