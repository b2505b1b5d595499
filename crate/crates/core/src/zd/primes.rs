use rayon::prelude::*;

use super::ann::AnnSet;
use super::classes::ZdStructure;
use crate::error::{Error, Result};
use crate::ring::Ring;

/// Classes whose annihilator is prime. `ann(y)` is prime exactly when
/// `ann(a y) = ann(y)` for every `a` with `a y != 0`, so each class needs one
/// pass over the ring.
pub(crate) fn associated_prime_classes(zd: &ZdStructure) -> Vec<usize> {
    let ring = zd.ring();
    (0..zd.classes().len())
        .into_par_iter()
        .filter(|&c| {
            let y = zd.classes()[c].rep;
            ring.elements().all(|a| {
                let ay = ring.mul(a, y);
                ay == ring.zero() || zd.class_of(ay) == Some(c)
            })
        })
        .collect()
}

/// Classes whose annihilator is not strictly inside another class's.
pub(crate) fn maximal_classes(zd: &ZdStructure) -> Vec<usize> {
    let cls = zd.classes();
    (0..cls.len())
        .into_par_iter()
        .filter(|&i| !cls.iter().any(|o| cls[i].ann.is_proper_subset(&o.ann)))
        .collect()
}

/// Associated primes as (vertex, annihilator) pairs, ordered by vertex.
pub fn associated_primes(ring: &Ring) -> Result<Vec<(usize, AnnSet)>> {
    let zd = ZdStructure::new(ring)?;
    Ok(associated_prime_classes(&zd)
        .into_iter()
        .map(|c| (c, zd.classes()[c].ann.clone()))
        .collect())
}

/// Independent primality test: for all `a, b`, `a b ∈ A` implies `a ∈ A` or
/// `b ∈ A`. Quadratic in the ring order per class.
pub fn associated_primes_by_pair_scan(ring: &Ring) -> Result<Vec<(usize, AnnSet)>> {
    let zd = ZdStructure::new(ring)?;
    let prime = |a: &AnnSet| {
        ring.elements().all(|x| {
            a.contains(x)
                || ring
                    .elements()
                    .all(|y| a.contains(y) || !a.contains(ring.mul(x, y)))
        })
    };
    Ok(zd
        .classes()
        .par_iter()
        .enumerate()
        .filter(|(_, c)| prime(&c.ann))
        .map(|(i, c)| (i, c.ann.clone()))
        .collect())
}

/// Vertices maximal in the annihilator family. Each must be an associated
/// prime; a violation is reported as an internal inconsistency.
pub fn maximal_in_f(ring: &Ring) -> Result<Vec<usize>> {
    let zd = ZdStructure::new(ring)?;
    let ass = associated_prime_classes(&zd);
    let max = maximal_classes(&zd);
    if let Some(&c) = max.iter().find(|c| !ass.contains(c)) {
        return Err(Error::Inconsistent(format!(
            "class [{}] is maximal but not prime",
            ring.element_name(zd.classes()[c].rep)
        )));
    }
    Ok(max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Limits;
    use crate::poly::QuotientSpec;

    fn reps(ring: &Ring, v: &[(usize, AnnSet)]) -> Vec<String> {
        v.iter()
            .map(|(_, a)| ring.element_name(a.owner()))
            .collect()
    }

    #[test]
    fn z4_squared() {
        let z4 = Ring::modular(4).unwrap();
        let r = Ring::product(&[z4.clone(), z4]).unwrap();
        let ass = associated_primes(&r).unwrap();
        assert_eq!(reps(&r, &ass), vec!["(0,2)", "(2,0)"]);
        assert_eq!(
            reps(&r, &associated_primes_by_pair_scan(&r).unwrap()),
            vec!["(0,2)", "(2,0)"]
        );
    }

    #[test]
    fn square_zero_pair_has_one_prime() {
        let spec = QuotientSpec::parse(2, &["x", "y"], &["x^2", "y^2"]).unwrap();
        let r = Ring::quotient(&spec, &Limits::default()).unwrap();
        let ass = associated_primes(&r).unwrap();
        assert_eq!(reps(&r, &ass), vec!["x*y"]);
        assert_eq!(ass[0].1.len(), 8);
    }

    #[test]
    fn prime_square() {
        let r = Ring::modular(49).unwrap();
        let ass = associated_primes(&r).unwrap();
        assert_eq!(reps(&r, &ass), vec!["7"]);
    }

    #[test]
    fn maximal_elements() {
        let r = Ring::modular(108).unwrap();
        let zd = ZdStructure::new(&r).unwrap();
        let names: Vec<String> = maximal_in_f(&r)
            .unwrap()
            .into_iter()
            .map(|c| r.element_name(zd.classes()[c].rep))
            .collect();
        assert_eq!(names, vec!["36", "54"]);
        let r = Ring::modular(16).unwrap();
        let zd = ZdStructure::new(&r).unwrap();
        let m = maximal_in_f(&r).unwrap();
        assert_eq!(m.len(), 1);
        assert_eq!(zd.classes()[m[0]].rep, 8);
    }

    #[test]
    fn routes_agree_on_small_rings() {
        for n in 2..=60 {
            let r = Ring::modular(n).unwrap();
            let a: Vec<usize> = associated_primes(&r)
                .unwrap()
                .into_iter()
                .map(|x| x.0)
                .collect();
            let b: Vec<usize> = associated_primes_by_pair_scan(&r)
                .unwrap()
                .into_iter()
                .map(|x| x.0)
                .collect();
            assert_eq!(a, b, "n={n}");
        }
    }
}
