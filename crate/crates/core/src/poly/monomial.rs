use std::cmp::Ordering;

/// Exponent vector over the declared variables of a presentation.
///
/// Monomials are compared graded-lexicographically: total degree first, then
/// exponent by exponent in declared variable order, so `x > y > z` within one
/// degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, index: usize) -> Self {
        let mut e = vec![0; nvars];
        e[index] = 1;
        Monomial(e)
    }

    pub fn from_exponents(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// True when `self` divides `other`.
    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self` when `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        Some(Monomial(
            other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect(),
        ))
    }

    /// If the monomial is a pure power `v^k` with `k >= 1`, the variable index.
    pub fn pure_power_of(&self) -> Option<usize> {
        let mut found = None;
        for (i, &e) in self.0.iter().enumerate() {
            if e > 0 {
                if found.is_some() {
                    return None;
                }
                found = Some(i);
            }
        }
        found
    }

    /// Renders as `x^2*y`; the unit monomial renders as the empty string.
    pub fn render(&self, vars: &[String]) -> String {
        let mut parts = Vec::new();
        for (name, &e) in vars.iter().zip(&self.0) {
            match e {
                0 => {}
                1 => parts.push(name.clone()),
                _ => parts.push(format!("{name}^{e}")),
            }
        }
        parts.join("*")
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e.to_vec())
    }

    #[test]
    fn graded_first() {
        assert!(m(&[0, 1]) < m(&[2, 0]));
        assert!(m(&[3, 0]) > m(&[1, 1]));
    }

    #[test]
    fn earlier_variables_rank_higher() {
        assert!(m(&[1, 0]) > m(&[0, 1]));
        assert!(m(&[2, 0]) > m(&[1, 1]));
        assert!(m(&[1, 1]) > m(&[0, 2]));
    }

    #[test]
    fn division() {
        assert!(m(&[1, 1]).divides(&m(&[2, 1])));
        assert!(!m(&[0, 2]).divides(&m(&[2, 1])));
        assert_eq!(m(&[1, 0]).quotient_of(&m(&[2, 1])), Some(m(&[1, 1])));
        assert_eq!(m(&[0, 3]).pure_power_of(), Some(1));
        assert_eq!(m(&[1, 1]).pure_power_of(), None);
        assert_eq!(m(&[0, 0]).pure_power_of(), None);
    }
}
