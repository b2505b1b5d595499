use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use super::monomial::Monomial;
use super::parse::parse_poly;
use super::polynomial::{gcd, inv_mod, mul_mod, Poly};
use crate::config::{Limits, DEFAULT_BASIS_CAP};
use crate::error::{Error, Result};

/// A presentation `Z_m[x_1..x_k]/(f_1..f_t)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientSpec {
    pub modulus: u64,
    pub vars: Vec<String>,
    pub relations: Vec<Poly>,
    pub basis_cap: usize,
}

impl QuotientSpec {
    pub fn new(modulus: u64, vars: Vec<String>, relations: Vec<Poly>) -> Result<Self> {
        if modulus < 2 {
            return Err(Error::InvalidSpec(format!(
                "coefficient modulus {modulus} < 2"
            )));
        }
        let mut seen = HashSet::new();
        for v in &vars {
            let ok = v
                .chars()
                .next()
                .is_some_and(|c| c.is_alphabetic() || c == '_')
                && v.chars().all(|c| c.is_alphanumeric() || c == '_');
            if !ok {
                return Err(Error::InvalidSpec(format!("bad variable name '{v}'")));
            }
            if !seen.insert(v) {
                return Err(Error::InvalidSpec(format!("variable '{v}' declared twice")));
            }
        }
        for r in &relations {
            if r.is_zero() {
                return Err(Error::InvalidSpec("relation reduces to 0".into()));
            }
            if r.nvars() != vars.len() || r.modulus() != modulus {
                return Err(Error::InvalidSpec(
                    "relation built over different variables or modulus".into(),
                ));
            }
        }
        Ok(QuotientSpec {
            modulus,
            vars,
            relations,
            basis_cap: DEFAULT_BASIS_CAP,
        })
    }

    /// Builds a spec from relation text, e.g. `parse(3, &["x","y"], &["x*y", "x^2-y^2"])`.
    pub fn parse(modulus: u64, vars: &[&str], relations: &[&str]) -> Result<Self> {
        let vars: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        if modulus < 2 {
            return Err(Error::InvalidSpec(format!(
                "coefficient modulus {modulus} < 2"
            )));
        }
        let rels = relations
            .iter()
            .map(|r| parse_poly(r, &vars, modulus))
            .collect::<Result<Vec<_>>>()?;
        QuotientSpec::new(modulus, vars, rels)
    }

    pub fn with_basis_cap(mut self, cap: usize) -> Self {
        self.basis_cap = cap;
        self
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn parse_element(&self, text: &str) -> Result<Poly> {
        parse_poly(text, &self.vars, self.modulus)
    }

    /// `quot(Z3; x,y; x*y, x^3)` style text.
    pub fn render(&self) -> String {
        let rels: Vec<String> = self
            .relations
            .iter()
            .map(|r| r.render(&self.vars))
            .collect();
        format!(
            "quot(Z{}; {}; {})",
            self.modulus,
            self.vars.join(","),
            rels.join(", ")
        )
    }
}

impl fmt::Display for QuotientSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Adds the relation `var^n`, skipping it if an identical relation exists.
pub fn truncate(spec: &QuotientSpec, var: &str, n: u32) -> Result<QuotientSpec> {
    let Some(v) = spec.var_index(var) else {
        return Err(Error::InvalidSpec(format!("undeclared variable '{var}'")));
    };
    if n == 0 {
        return Err(Error::InvalidSpec(
            "truncation exponent must be at least 1".into(),
        ));
    }
    let rel = Poly::var_power(spec.modulus, spec.vars.len(), v, n);
    let mut out = spec.clone();
    if !out.relations.contains(&rel) {
        out.relations.push(rel);
    }
    Ok(out)
}

/// `lead -> replacement`, where the replacement is strictly smaller.
#[derive(Clone, Debug)]
pub struct Rule {
    pub lead: Monomial,
    pub replacement: Poly,
}

/// Rewrite rules derived from the relations of a presentation.
///
/// A relation whose leading coefficient is a unit becomes a rule. A relation
/// `c * mu` with `c` a non-unit and no lower terms instead caps the
/// coefficient modulus of every multiple of `mu` at `gcd(m, c)`.
#[derive(Clone, Debug)]
pub struct RewriteSystem {
    modulus: u64,
    nvars: usize,
    rules: Vec<Rule>,
    modulus_rules: Vec<(Monomial, u64)>,
}

impl RewriteSystem {
    pub fn from_spec(spec: &QuotientSpec) -> Result<Self> {
        let m = spec.modulus;
        let mut rules = Vec::new();
        let mut modulus_rules = Vec::new();
        for rel in &spec.relations {
            let (lead, c) = rel.leading_term().expect("relations are nonzero");
            let lead = lead.clone();
            let g = gcd(c, m);
            let mut tail = rel.clone();
            tail.pop_leading();
            if g == 1 {
                let inv = inv_mod(c, m).expect("unit");
                rules.push(Rule {
                    lead,
                    replacement: tail.scale(mul_mod(inv, m - 1, m)),
                });
            } else if tail.is_zero() {
                modulus_rules.push((lead, g));
            } else {
                return Err(Error::InvalidSpec(format!(
                    "relation '{}' has non-unit leading coefficient {c} mod {m} and lower terms",
                    rel.render(&spec.vars)
                )));
            }
        }
        Ok(RewriteSystem {
            modulus: m,
            nvars: spec.vars.len(),
            rules,
            modulus_rules,
        })
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn modulus_rules(&self) -> &[(Monomial, u64)] {
        &self.modulus_rules
    }

    fn rule_for(&self, mono: &Monomial) -> Option<&Rule> {
        self.rules.iter().find(|r| r.lead.divides(mono))
    }

    pub fn is_reducible(&self, mono: &Monomial) -> bool {
        self.rule_for(mono).is_some()
    }

    /// Coefficient modulus of a standard monomial.
    pub fn monomial_modulus(&self, mono: &Monomial) -> u64 {
        self.modulus_rules
            .iter()
            .filter(|(lead, _)| lead.divides(mono))
            .fold(self.modulus, |acc, &(_, g)| gcd(acc, g))
    }

    /// Normal form: no term is divisible by a rule's leading monomial and each
    /// coefficient lies below its monomial's modulus.
    pub fn reduce(&self, p: &Poly) -> Poly {
        let mut work = p.clone();
        let mut out = Poly::zero(self.modulus, self.nvars);
        while let Some((mono, c)) = work.pop_leading() {
            if let Some(rule) = self.rule_for(&mono) {
                let q = rule.lead.quotient_of(&mono).expect("divides");
                for (tm, tc) in rule.replacement.mul_monomial(&q, c).terms() {
                    work.add_term(tm.clone(), tc);
                }
            } else {
                let mm = self.monomial_modulus(&mono);
                if mm > 1 {
                    out.add_term(mono, c % mm);
                }
            }
        }
        out
    }

    /// A variable whose powers never reduce, if any.
    fn unbounded_var(&self) -> Option<usize> {
        (0..self.nvars).find(|&v| {
            let by_rule = self.rules.iter().any(|r| r.lead.pure_power_of() == Some(v));
            let by_modulus = self
                .modulus_rules
                .iter()
                .filter(|(lead, _)| lead.pure_power_of() == Some(v))
                .fold(self.modulus, |acc, &(_, g)| gcd(acc, g))
                == 1;
            !(by_rule || by_modulus)
        })
    }
}

/// Monomials of the quotient that survive reduction, ascending.
pub fn standard_basis(spec: &QuotientSpec) -> Result<Vec<Monomial>> {
    let system = RewriteSystem::from_spec(spec)?;
    basis_for(spec, &system)
}

fn basis_for(spec: &QuotientSpec, system: &RewriteSystem) -> Result<Vec<Monomial>> {
    if let Some(v) = system.unbounded_var() {
        return Err(Error::CapExceeded(format!(
            "monomial basis is infinite: powers of '{}' never reduce",
            spec.vars[v]
        )));
    }
    let nvars = spec.vars.len();
    let one = Monomial::one(nvars);
    if system.is_reducible(&one) || system.monomial_modulus(&one) == 1 {
        return Err(Error::InvalidSpec(
            "presentation collapses to the zero ring".into(),
        ));
    }
    let mut seen: HashSet<Monomial> = HashSet::from([one.clone()]);
    let mut queue = VecDeque::from([one]);
    while let Some(mono) = queue.pop_front() {
        for v in 0..nvars {
            let next = mono.mul(&Monomial::var(nvars, v));
            if seen.contains(&next)
                || system.is_reducible(&next)
                || system.monomial_modulus(&next) == 1
            {
                continue;
            }
            seen.insert(next.clone());
            if seen.len() > spec.basis_cap {
                return Err(Error::CapExceeded(format!(
                    "monomial basis exceeds cap {}",
                    spec.basis_cap
                )));
            }
            queue.push_back(next);
        }
    }
    let mut basis: Vec<Monomial> = seen.into_iter().collect();
    basis.sort();
    Ok(basis)
}

/// Finite quotient ring backed by a monomial basis and precomputed products
/// of basis monomials.
#[derive(Clone, Debug)]
pub struct QuotientRing {
    spec: QuotientSpec,
    system: RewriteSystem,
    basis: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    moduli: Vec<u64>,
    // products[i * d + j]: normal form of basis[i] * basis[j] as (index, coeff)
    products: Vec<Vec<(u32, u64)>>,
}

impl QuotientRing {
    pub fn build(spec: &QuotientSpec, limits: &Limits) -> Result<Self> {
        let system = RewriteSystem::from_spec(spec)?;
        let mut capped = spec.clone();
        capped.basis_cap = capped.basis_cap.min(limits.basis_cap);
        let basis = basis_for(&capped, &system)?;
        let moduli: Vec<u64> = basis.iter().map(|b| system.monomial_modulus(b)).collect();
        let mut count: u128 = 1;
        for &m in &moduli {
            count *= m as u128;
            if count > limits.element_cap as u128 {
                return Err(Error::CapExceeded(format!(
                    "quotient has more than {} elements",
                    limits.element_cap
                )));
            }
        }
        let index: HashMap<Monomial, usize> = basis
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, b)| (b, i))
            .collect();
        let d = basis.len();
        let mut products = vec![Vec::new(); d * d];
        for i in 0..d {
            for j in i..d {
                let nf = system.reduce(&Poly::monomial(spec.modulus, basis[i].mul(&basis[j]), 1));
                let mut sparse = Vec::with_capacity(nf.len());
                for (mono, c) in nf.terms() {
                    let k = *index.get(mono).ok_or_else(|| {
                        Error::NonConfluent(format!(
                            "normal form contains non-basis monomial {}",
                            mono.render(&spec.vars)
                        ))
                    })?;
                    sparse.push((k as u32, c));
                }
                products[i * d + j] = sparse.clone();
                products[j * d + i] = sparse;
            }
        }
        let ring = QuotientRing {
            spec: spec.clone(),
            system,
            basis,
            index,
            moduli,
            products,
        };
        ring.certify_structure()?;
        Ok(ring)
    }

    /// Multiplication on coordinates is a well-defined, associative bilinear
    /// map: basis products respect coefficient moduli, and
    /// `(b_i b_j) b_k = b_i (b_j b_k)` for every basis triple.
    fn certify_structure(&self) -> Result<()> {
        let d = self.basis.len();
        let vars = &self.spec.vars;
        for i in 0..d {
            for j in 0..d {
                for &(k, c) in &self.products[i * d + j] {
                    if !mul_mod(self.moduli[i], c, self.spec.modulus)
                        .is_multiple_of(self.moduli[k as usize])
                    {
                        return Err(Error::NonConfluent(format!(
                            "{} has additive order {} but {} * {} does not",
                            self.basis[i].render(vars),
                            self.moduli[i],
                            self.basis[i].render(vars),
                            self.basis[j].render(vars)
                        )));
                    }
                }
            }
        }
        let mut left = vec![0u64; d];
        let mut right = vec![0u64; d];
        for i in 0..d {
            for j in i..d {
                for k in j..d {
                    left.iter_mut().for_each(|v| *v = 0);
                    right.iter_mut().for_each(|v| *v = 0);
                    for &(a, c) in &self.products[i * d + j] {
                        for &(b, e) in &self.products[a as usize * d + k] {
                            let b = b as usize;
                            left[b] = (left[b] + mul_mod(c, e, self.moduli[b])) % self.moduli[b];
                        }
                    }
                    for &(a, c) in &self.products[j * d + k] {
                        for &(b, e) in &self.products[i * d + a as usize] {
                            let b = b as usize;
                            right[b] = (right[b] + mul_mod(c, e, self.moduli[b])) % self.moduli[b];
                        }
                    }
                    if left != right {
                        return Err(Error::NonConfluent(format!(
                            "({}*{})*{} and {}*({}*{}) reduce differently",
                            self.basis[i].render(vars),
                            self.basis[j].render(vars),
                            self.basis[k].render(vars),
                            self.basis[i].render(vars),
                            self.basis[j].render(vars),
                            self.basis[k].render(vars)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn spec(&self) -> &QuotientSpec {
        &self.spec
    }

    pub fn system(&self) -> &RewriteSystem {
        &self.system
    }

    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Sparse normal form of `basis[i] * basis[j]`.
    pub fn basis_product(&self, i: usize, j: usize) -> &[(u32, u64)] {
        &self.products[i * self.basis.len() + j]
    }

    pub fn mul_coords(&self, a: &[u64], b: &[u64], out: &mut [u64]) {
        let d = self.basis.len();
        out.iter_mut().for_each(|v| *v = 0);
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                if bj == 0 {
                    continue;
                }
                let ab = mul_mod(ai, bj, self.spec.modulus);
                for &(k, c) in &self.products[i * d + j] {
                    let k = k as usize;
                    out[k] = (out[k] + mul_mod(ab, c, self.moduli[k])) % self.moduli[k];
                }
            }
        }
    }

    pub fn poly_of(&self, coords: &[u64]) -> Poly {
        let mut p = Poly::zero(self.spec.modulus, self.spec.vars.len());
        for (mono, &c) in self.basis.iter().zip(coords) {
            p.add_term(mono.clone(), c);
        }
        p
    }

    /// Coordinates of the normal form of `p`.
    pub fn coords_of(&self, p: &Poly) -> Vec<u64> {
        let nf = self.system.reduce(p);
        let mut coords = vec![0; self.basis.len()];
        for (mono, c) in nf.terms() {
            coords[self.index[mono]] = c;
        }
        coords
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mono(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e.to_vec())
    }

    #[test]
    fn basis_with_equal_squares() {
        let spec = QuotientSpec::parse(3, &["x", "y"], &["x*y", "x^3", "y^3", "x^2-y^2"]).unwrap();
        let b = standard_basis(&spec).unwrap();
        assert_eq!(
            b,
            vec![mono(&[0, 0]), mono(&[0, 1]), mono(&[1, 0]), mono(&[0, 2])]
        );
        // x^2 leads x^2 - y^2, so it rewrites to y^2
        let sys = RewriteSystem::from_spec(&spec).unwrap();
        let x2 = spec.parse_element("x^2").unwrap();
        assert_eq!(sys.reduce(&x2), spec.parse_element("y^2").unwrap());
    }

    #[test]
    fn basis_of_square_zero_pair() {
        let spec = QuotientSpec::parse(2, &["x", "y"], &["x^2", "y^2"]).unwrap();
        let b = standard_basis(&spec).unwrap();
        assert_eq!(
            b,
            vec![mono(&[0, 0]), mono(&[0, 1]), mono(&[1, 0]), mono(&[1, 1])]
        );
    }

    #[test]
    fn unbounded_variable_is_named() {
        let spec = QuotientSpec::parse(4, &["x", "y"], &["x^3", "x*y"]).unwrap();
        match standard_basis(&spec) {
            Err(Error::CapExceeded(msg)) => assert!(msg.contains("'y'"), "{msg}"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn basis_cap_is_enforced() {
        let spec = QuotientSpec::parse(2, &["x", "y"], &["x^40", "y^40"])
            .unwrap()
            .with_basis_cap(100);
        assert!(matches!(standard_basis(&spec), Err(Error::CapExceeded(_))));
    }

    #[test]
    fn truncation_bounds_the_free_variable() {
        let spec = QuotientSpec::parse(3, &["x", "y"], &["x^3", "x*y"]).unwrap();
        let t = truncate(&spec, "y", 3).unwrap();
        let mut b = standard_basis(&t).unwrap();
        b.sort_by_key(|m| m.exponents().to_vec());
        let mut want = vec![
            mono(&[0, 0]),
            mono(&[1, 0]),
            mono(&[2, 0]),
            mono(&[0, 1]),
            mono(&[0, 2]),
        ];
        want.sort_by_key(|m| m.exponents().to_vec());
        assert_eq!(b, want);
    }

    #[test]
    fn truncation_adds_and_dedups() {
        let spec = QuotientSpec::parse(2, &["x", "y", "z"], &["x^2", "y^2"]).unwrap();
        let t = truncate(&spec, "z", 2).unwrap();
        assert_eq!(t.relations.len(), 3);
        assert_eq!(t.relations[2], spec.parse_element("z^2").unwrap());
        let t2 = truncate(&t, "z", 2).unwrap();
        assert_eq!(t2.relations.len(), 3);
        let t3 = truncate(&t2, "z", 3).unwrap();
        assert_eq!(t3.relations.len(), 4);
        assert!(truncate(&spec, "w", 2).is_err());
    }

    #[test]
    fn non_unit_leading_coefficient_sets_modulus() {
        let spec = QuotientSpec::parse(4, &["x", "y"], &["x^2", "x*y", "2x", "y^2"]).unwrap();
        let sys = RewriteSystem::from_spec(&spec).unwrap();
        assert_eq!(sys.monomial_modulus(&mono(&[1, 0])), 2);
        assert_eq!(sys.monomial_modulus(&mono(&[0, 1])), 4);
        let q = QuotientRing::build(&spec, &Limits::default()).unwrap();
        assert_eq!(q.moduli(), &[4, 4, 2]);
    }

    #[test]
    fn non_unit_with_tail_is_rejected() {
        let spec = QuotientSpec::parse(4, &["x"], &["2x + 1"]).unwrap();
        assert!(matches!(
            RewriteSystem::from_spec(&spec),
            Err(Error::InvalidSpec(_))
        ));
    }

    #[test]
    fn incompatible_modulus_is_non_confluent() {
        // 2x = 0 forces 2 = 2x^2 = 0, which the rules do not know
        let spec = QuotientSpec::parse(4, &["x"], &["x^2 - 1", "2x"]).unwrap();
        assert!(matches!(
            QuotientRing::build(&spec, &Limits::default()),
            Err(Error::NonConfluent(_))
        ));
    }

    #[test]
    fn element_cap() {
        let spec = QuotientSpec::parse(2, &["x"], &["x^30"]).unwrap();
        let limits = Limits {
            element_cap: 1 << 20,
            ..Limits::default()
        };
        assert!(matches!(
            QuotientRing::build(&spec, &limits),
            Err(Error::CapExceeded(_))
        ));
    }

    #[test]
    fn render_round_trip() {
        let spec = QuotientSpec::parse(3, &["x", "y"], &["x*y", "x^2-y^2"]).unwrap();
        assert_eq!(spec.render(), "quot(Z3; x,y; x*y, x^2 + 2y^2)");
    }
}
