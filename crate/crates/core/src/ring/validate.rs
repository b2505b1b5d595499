use std::fmt;

use rand::{Rng as _, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{ElemId, Ring};
use crate::config::ValidationConfig;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Law {
    AdditiveIdentity,
    AdditiveInverse,
    MultiplicativeIdentity,
    ZeroAbsorbs,
    AddCommutative,
    MulCommutative,
    AddAssociative,
    MulAssociative,
    Distributive,
}

/// First witness of a failed law. Unused slots of the triple repeat `a`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub law: Law,
    pub triple: [ElemId; 3],
    pub names: [String; 3],
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:?} fails at ({}, {}, {})",
            self.law, self.names[0], self.names[1], self.names[2]
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub exhaustive: bool,
    pub triples_checked: u64,
    pub seed: Option<u64>,
    pub violation: Option<Violation>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

/// Checks the commutative ring axioms. Identity laws are checked on every
/// element. Triple laws are checked on all `n^3` triples when that fits the
/// budget, otherwise on `sample_triples` triples drawn from a ChaCha8
/// stream seeded with `config.seed`.
pub fn validate_ring_axioms(ring: &Ring, config: &ValidationConfig) -> ValidationReport {
    let n = ring.order() as u64;
    let exhaustive = n
        .checked_pow(3)
        .is_some_and(|c| c <= config.exhaustive_budget);
    let violation = check_singletons(ring).or_else(|| {
        if exhaustive {
            ring.elements().into_par_iter().find_map_first(|a| {
                ring.elements()
                    .flat_map(|b| ring.elements().map(move |c| (b, c)))
                    .find_map(|(b, c)| check_triple(ring, a, b, c))
            })
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
            let n = n as ElemId;
            (0..config.sample_triples)
                .map(|_| {
                    (
                        rng.gen_range(0..n),
                        rng.gen_range(0..n),
                        rng.gen_range(0..n),
                    )
                })
                .find_map(|(a, b, c)| check_triple(ring, a, b, c))
        }
    });
    ValidationReport {
        exhaustive,
        triples_checked: if exhaustive {
            n * n * n
        } else {
            config.sample_triples
        },
        seed: (!exhaustive).then_some(config.seed),
        violation,
    }
}

fn witness(ring: &Ring, law: Law, triple: [ElemId; 3]) -> Violation {
    Violation {
        law,
        triple,
        names: triple.map(|e| ring.element_name(e)),
    }
}

fn check_singletons(ring: &Ring) -> Option<Violation> {
    let (zero, one) = (ring.zero(), ring.one());
    ring.elements().find_map(|a| {
        let law = if ring.add(a, zero) != a {
            Law::AdditiveIdentity
        } else if ring.add(a, ring.neg(a)) != zero {
            Law::AdditiveInverse
        } else if ring.mul(a, one) != a {
            Law::MultiplicativeIdentity
        } else if ring.mul(a, zero) != zero {
            Law::ZeroAbsorbs
        } else {
            return None;
        };
        Some(witness(ring, law, [a, a, a]))
    })
}

fn check_triple(ring: &Ring, a: ElemId, b: ElemId, c: ElemId) -> Option<Violation> {
    let ab = ring.mul(a, b);
    let law = if ring.add(a, b) != ring.add(b, a) {
        Law::AddCommutative
    } else if ab != ring.mul(b, a) {
        Law::MulCommutative
    } else if ring.add(ring.add(a, b), c) != ring.add(a, ring.add(b, c)) {
        Law::AddAssociative
    } else if ring.mul(ab, c) != ring.mul(a, ring.mul(b, c)) {
        Law::MulAssociative
    } else if ring.mul(a, ring.add(b, c)) != ring.add(ab, ring.mul(a, c)) {
        Law::Distributive
    } else {
        return None;
    };
    Some(witness(ring, law, [a, b, c]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Limits;
    use crate::poly::QuotientSpec;

    #[test]
    fn z12_passes_exhaustively() {
        let r = Ring::modular(12).unwrap();
        let rep = validate_ring_axioms(&r, &ValidationConfig::default());
        assert!(rep.exhaustive);
        assert_eq!(rep.triples_checked, 1728);
        assert!(rep.passed());
    }

    #[test]
    fn equal_squares_ring_passes_exhaustively() {
        let spec = QuotientSpec::parse(3, &["x", "y"], &["x*y", "x^3", "y^3", "x^2-y^2"]).unwrap();
        let r = Ring::quotient(&spec, &Limits::default()).unwrap();
        let rep = validate_ring_axioms(&r, &ValidationConfig::default());
        assert!(rep.exhaustive && rep.passed());
        assert_eq!(rep.triples_checked, 81 * 81 * 81);
    }

    fn left_projection(n: usize) -> Ring {
        let add = (0..n * n)
            .map(|i| ((i / n + i % n) % n) as ElemId)
            .collect();
        let mul = (0..n * n).map(|i| (i / n) as ElemId).collect();
        let names = (0..n).map(|i| i.to_string()).collect();
        Ring::from_tables("broken", add, mul, 0, 1, names).unwrap()
    }

    #[test]
    fn broken_multiplication_has_witness() {
        let r = left_projection(5);
        let rep = validate_ring_axioms(&r, &ValidationConfig::default());
        let v = rep.violation.expect("must fail");
        // a*1 = a holds for the left projection; 0 absorbing fails first at a=1
        assert_eq!(v.law, Law::ZeroAbsorbs);
        assert_eq!(v.triple, [1, 1, 1]);
    }

    #[test]
    fn sampling_is_reproducible() {
        let r = Ring::modular(1000).unwrap();
        let cfg = ValidationConfig {
            exhaustive_budget: 1000,
            sample_triples: 500,
            seed: 7,
        };
        let a = validate_ring_axioms(&r, &cfg);
        assert!(!a.exhaustive && a.passed());
        assert_eq!(a.seed, Some(7));
        assert_eq!(a, validate_ring_axioms(&r, &cfg));
    }

    #[test]
    fn sampled_check_finds_noncommutative_table() {
        // mul(a, b) = a*b + a mod n is neither commutative nor unital
        let n = 40usize;
        let add = (0..n * n)
            .map(|i| ((i / n + i % n) % n) as ElemId)
            .collect();
        let mul = (0..n * n)
            .map(|i| ((i / n) * (i % n) % n) as ElemId)
            .collect::<Vec<_>>();
        let mut mul = mul;
        mul[2 * n + 3] = 7;
        let names = (0..n).map(|i| i.to_string()).collect();
        let r = Ring::from_tables("skew", add, mul, 0, 1, names).unwrap();
        let cfg = ValidationConfig {
            exhaustive_budget: 0,
            sample_triples: 1 << 16,
            seed: 1,
        };
        let rep = validate_ring_axioms(&r, &cfg);
        assert!(!rep.exhaustive);
        assert!(rep.violation.is_some());
    }
}
