//! The worked `(q, p, r) = (3, 13, 3)` example: four maximal subgroups with
//! cores of order `1, 3^3, 3^6, 3^9`, plus three of those cores as listed.

use crate::params::CoverParams;

pub const L1: &str = include_str!("../fixtures/L1.gens");
pub const L2: &str = include_str!("../fixtures/L2.gens");
pub const L3: &str = include_str!("../fixtures/L3.gens");
pub const L4: &str = include_str!("../fixtures/L4.gens");
pub const K2: &str = include_str!("../fixtures/K2.gens");
pub const K3: &str = include_str!("../fixtures/K3.gens");
pub const K4: &str = include_str!("../fixtures/K4.gens");

#[derive(Debug, Clone, Copy)]
pub struct ExampleSubgroup {
    pub name: &'static str,
    pub generators: &'static str,
    /// Listed core generators; `None` for the trivial core.
    pub core_generators: Option<&'static str>,
    pub core_dim: usize,
    pub descriptor: &'static str,
    pub quotient_genus: u64,
}

pub fn example_params() -> CoverParams {
    CoverParams::new(13, 3, 3).expect("valid example parameters")
}

pub const EXAMPLE_GENUS_BASE: u32 = 6;
pub const EXAMPLE_GENUS_INTERMEDIATE: u64 = 16;
pub const EXAMPLE_GENUS_COVER: u64 = 2_657_206;

pub const EXAMPLE: [ExampleSubgroup; 4] = [
    ExampleSubgroup {
        name: "L1",
        generators: L1,
        core_generators: None,
        core_dim: 0,
        descriptor: "Z_3^12 ⋊ Z_13",
        quotient_genus: 2_657_206,
    },
    ExampleSubgroup {
        name: "L2",
        generators: L2,
        core_generators: Some(K2),
        core_dim: 3,
        descriptor: "Z_3^9 ⋊ Z_13",
        quotient_genus: 98_416,
    },
    ExampleSubgroup {
        name: "L3",
        generators: L3,
        core_generators: Some(K3),
        core_dim: 6,
        descriptor: "Z_3^6 ⋊ Z_13",
        quotient_genus: 3_646,
    },
    ExampleSubgroup {
        name: "L4",
        generators: L4,
        core_generators: Some(K4),
        core_dim: 9,
        descriptor: "Z_3^3 ⋊ Z_13",
        quotient_genus: 136,
    },
];

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::build_action;
    use crate::atlas::{core, galois_closure, Hyperplane};
    use crate::words::parse_generator_words;

    #[test]
    fn example_cores_match_listing() {
        let params = example_params();
        let action = build_action(&params);
        for ex in EXAMPLE {
            let l = parse_generator_words(ex.generators, &params).unwrap();
            assert_eq!(l.dim(), 11, "{}", ex.name);
            let h = Hyperplane::from_subspace(&l).unwrap();
            let k = core(&h, &action);
            assert_eq!(k.dim(), ex.core_dim, "{}", ex.name);
            if let Some(listed) = ex.core_generators {
                assert_eq!(parse_generator_words(listed, &params).unwrap(), k, "{}", ex.name);
            }
            assert_eq!(galois_closure(&h, &action).unwrap().descriptor(), ex.descriptor);
        }
    }
}
