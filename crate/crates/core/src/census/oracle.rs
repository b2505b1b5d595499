use crate::error::{Error, Result};
use crate::graph::PlainGraph;

/// Class graph of `Z_n` from divisor arithmetic alone: vertices are the
/// divisors `1 < d < n`, and `d -- e` iff `n | d e`.
pub fn zn_oracle(n: u64) -> Result<PlainGraph> {
    if n < 2 {
        return Err(Error::InvalidSpec(format!("modulus {n} < 2")));
    }
    let divisors: Vec<u64> = (2..n).filter(|d| n.is_multiple_of(*d)).collect();
    let mut g = PlainGraph::with_labels(divisors.iter().map(u64::to_string).collect());
    for (i, &d) in divisors.iter().enumerate() {
        for (j, &e) in divisors.iter().enumerate().skip(i + 1) {
            if (d as u128 * e as u128).is_multiple_of(n as u128) {
                g.add_edge(i, j)?;
            }
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::GraphView;

    #[test]
    fn z12() {
        let g = zn_oracle(12).unwrap();
        assert_eq!(g.labels(), &["2", "3", "4", "6"]);
        assert_eq!(g.edges(), vec![(0, 3), (1, 2), (2, 3)]);
    }

    #[test]
    fn primes_are_empty() {
        assert_eq!(zn_oracle(13).unwrap().order(), 0);
        assert!(zn_oracle(1).is_err());
    }

    #[test]
    fn z108_degrees() {
        let g = zn_oracle(108).unwrap();
        assert_eq!(g.order(), 10);
        let deg = |d: &str| g.degree(g.labels().iter().position(|l| l == d).unwrap());
        assert_eq!(deg("54"), 6);
        assert_eq!(deg("36"), 7);
    }
}
