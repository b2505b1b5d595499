use super::{ElemId, Ring};

/// Pair budget for the direct closure test in [`is_local`].
const CLOSURE_PAIR_BUDGET: u64 = 1 << 24;

/// Smallest `k >= 1` with `k * 1 = 0`.
pub fn characteristic(ring: &Ring) -> u64 {
    let one = ring.one();
    let mut acc = one;
    let mut k = 1;
    while acc != ring.zero() {
        acc = ring.add(acc, one);
        k += 1;
    }
    k
}

/// `a` is a unit iff the sequence `1, a, a^2, ...` is purely periodic.
/// Brent's cycle detection finds the tail length without extra memory.
pub fn is_unit(ring: &Ring, a: ElemId) -> bool {
    let f = |x: ElemId| ring.mul(x, a);
    let x0 = ring.one();
    let mut power = 1u64;
    let mut lam = 1u64;
    let mut tortoise = x0;
    let mut hare = f(x0);
    while tortoise != hare {
        if power == lam {
            tortoise = hare;
            power *= 2;
            lam = 0;
        }
        hare = f(hare);
        lam += 1;
    }
    // tail length is zero iff x_lam == x_0
    let mut probe = x0;
    for _ in 0..lam {
        probe = f(probe);
    }
    probe == x0
}

pub fn units(ring: &Ring) -> Vec<bool> {
    ring.elements().map(|a| is_unit(ring, a)).collect()
}

/// A finite commutative ring is local iff its non-units form an ideal.
/// Small rings are checked directly: closure of the non-units under addition
/// and under multiplication by every element. Larger rings use the
/// equivalent test that `x` or `1 - x` is a unit for every `x`.
pub fn is_local(ring: &Ring) -> bool {
    let unit = units(ring);
    let non_units: Vec<ElemId> = ring.elements().filter(|&a| !unit[a as usize]).collect();
    let k = non_units.len() as u64;
    if k * k.max(ring.order() as u64) > CLOSURE_PAIR_BUDGET {
        return is_local_by_complements_with(ring, &unit);
    }
    non_units.iter().all(|&a| {
        non_units.iter().all(|&b| !unit[ring.add(a, b) as usize])
            && ring.elements().all(|r| !unit[ring.mul(a, r) as usize])
    })
}

pub fn is_local_by_complements(ring: &Ring) -> bool {
    is_local_by_complements_with(ring, &units(ring))
}

fn is_local_by_complements_with(ring: &Ring, unit: &[bool]) -> bool {
    let one = ring.one();
    ring.elements()
        .all(|x| unit[x as usize] || unit[ring.sub(one, x) as usize])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Limits;
    use crate::poly::QuotientSpec;

    fn gcd(a: u64, b: u64) -> u64 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }

    #[test]
    fn characteristics() {
        assert_eq!(characteristic(&Ring::modular(12).unwrap()), 12);
        let z4 = Ring::modular(4).unwrap();
        assert_eq!(
            characteristic(&Ring::product(&[z4.clone(), z4]).unwrap()),
            4
        );
        let spec = QuotientSpec::parse(2, &["x", "y"], &["x^2", "y^2"]).unwrap();
        let q = Ring::quotient(&spec, &Limits::default()).unwrap();
        assert_eq!(characteristic(&q), 2);
    }

    #[test]
    fn units_of_zn_are_coprime_residues() {
        for n in 2..60u64 {
            let r = Ring::modular(n).unwrap();
            for a in r.elements() {
                assert_eq!(is_unit(&r, a), gcd(a as u64, n) == 1, "n={n} a={a}");
            }
        }
    }

    #[test]
    fn locality() {
        assert!(is_local(&Ring::modular(16).unwrap()));
        assert!(is_local(&Ring::modular(7).unwrap()));
        assert!(!is_local(&Ring::modular(12).unwrap()));
        let z4 = Ring::modular(4).unwrap();
        assert!(!is_local(&Ring::product(&[z4.clone(), z4]).unwrap()));
        let spec = QuotientSpec::parse(2, &["x", "y"], &["x^2", "y^2"]).unwrap();
        assert!(is_local(
            &Ring::quotient(&spec, &Limits::default()).unwrap()
        ));
    }

    #[test]
    fn both_locality_tests_agree() {
        for n in 2..80 {
            let r = Ring::modular(n).unwrap();
            assert_eq!(is_local(&r), is_local_by_complements(&r), "n={n}");
        }
    }
}
