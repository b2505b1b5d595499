use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use super::monomial::Monomial;

/// Polynomial over `Z_m`. Only nonzero coefficients are stored, each in
/// `1..m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    modulus: u64,
    nvars: usize,
    terms: BTreeMap<Monomial, u64>,
}

impl Poly {
    pub fn zero(modulus: u64, nvars: usize) -> Self {
        Poly {
            modulus,
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(modulus: u64, mono: Monomial, coeff: u64) -> Self {
        let mut p = Poly::zero(modulus, mono.nvars());
        p.add_term(mono, coeff);
        p
    }

    pub fn var_power(modulus: u64, nvars: usize, var: usize, exp: u32) -> Self {
        let mut e = vec![0; nvars];
        e[var] = exp;
        Poly::monomial(modulus, Monomial::from_exponents(e), 1)
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, mono: &Monomial) -> u64 {
        self.terms.get(mono).copied().unwrap_or(0)
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, u64)> {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    pub fn leading_term(&self) -> Option<(&Monomial, u64)> {
        self.terms.iter().next_back().map(|(m, &c)| (m, c))
    }

    /// Adds `coeff * mono`, reducing mod `m` and dropping zero coefficients.
    pub fn add_term(&mut self, mono: Monomial, coeff: u64) {
        let c = coeff % self.modulus;
        if c == 0 {
            return;
        }
        match self.terms.entry(mono) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let sum = (*o.get() + c) % self.modulus;
                if sum == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub(crate) fn pop_leading(&mut self) -> Option<(Monomial, u64)> {
        self.terms.pop_last()
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m.clone(), c);
        }
        out
    }

    pub fn neg(&self) -> Poly {
        let mut out = Poly::zero(self.modulus, self.nvars);
        for (m, c) in self.terms() {
            out.add_term(m.clone(), self.modulus - c);
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: u64) -> Poly {
        let mut out = Poly::zero(self.modulus, self.nvars);
        let k = k % self.modulus;
        for (m, c) in self.terms() {
            out.add_term(m.clone(), mul_mod(c, k, self.modulus));
        }
        out
    }

    pub fn mul_monomial(&self, mono: &Monomial, k: u64) -> Poly {
        let mut out = Poly::zero(self.modulus, self.nvars);
        for (m, c) in self.terms() {
            out.add_term(m.mul(mono), mul_mod(c, k, self.modulus));
        }
        out
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero(self.modulus, self.nvars);
        for (m, c) in other.terms() {
            for (n, d) in self.terms() {
                out.add_term(m.mul(n), mul_mod(c, d, self.modulus));
            }
        }
        out
    }

    /// Largest exponent of `var` over all terms.
    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms
            .keys()
            .map(|m| m.exponents()[var])
            .max()
            .unwrap_or(0)
    }

    /// Canonical text: terms in descending monomial order joined by ` + `,
    /// coefficients written in `1..m` and omitted when equal to 1.
    pub fn render(&self, vars: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut parts = Vec::with_capacity(self.terms.len());
        for (m, c) in self.terms.iter().rev() {
            let mono = m.render(vars);
            parts.push(match (mono.is_empty(), *c) {
                (true, c) => c.to_string(),
                (false, 1) => mono,
                (false, c) => format!("{c}{mono}"),
            });
        }
        parts.join(" + ")
    }

    /// Level-independent comparison key: terms in descending monomial order.
    #[cfg(test)]
    pub(crate) fn descending_terms(&self) -> Vec<(Monomial, u64)> {
        self.terms
            .iter()
            .rev()
            .map(|(m, &c)| (m.clone(), c))
            .collect()
    }
}

pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Inverse of `a` modulo `m` when `gcd(a, m) = 1`.
pub(crate) fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let (mut old_r, mut r) = (a as i128 % m as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(m as i128) as u64)
}
