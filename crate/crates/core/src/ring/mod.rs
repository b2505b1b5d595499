//! Finite commutative rings with unity, addressed by dense element ids.
//!
//! A [`Ring`] is an immutable, cheaply clonable handle. Elements are
//! `0..order()`; operations are evaluated on demand, with the multiplication
//! table materialized for small rings.

mod coords;
mod props;
mod spec;
mod validate;

use std::fmt;
use std::sync::Arc;

pub use coords::Coords;
pub use props::{characteristic, is_local, is_local_by_complements, is_unit, units};
pub use spec::RingSpec;
pub use validate::{validate_ring_axioms, Law, ValidationReport, Violation};

pub(crate) use coords::is_prime;

use crate::config::{Limits, DEFAULT_ELEMENT_CAP, TABLE_LIMIT};
use crate::error::{Error, Result};
use crate::poly::{QuotientRing, QuotientSpec};

/// Dense element id, `0..order`.
pub type ElemId = u32;

#[derive(Clone)]
pub struct Ring {
    inner: Arc<Inner>,
}

struct Inner {
    name: String,
    order: usize,
    zero: ElemId,
    one: ElemId,
    coords: Option<Coords>,
    backend: Backend,
    mul_table: Option<Vec<ElemId>>,
    add_table: Option<Vec<ElemId>>,
}

enum Backend {
    Modular { n: u64 },
    Product { parts: Vec<Ring> },
    Quotient(Box<QuotientRing>),
    Table(TableRing),
}

struct TableRing {
    add: Vec<ElemId>,
    mul: Vec<ElemId>,
    neg: Vec<ElemId>,
    names: Vec<String>,
}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Ring")
            .field("name", &self.inner.name)
            .field("order", &self.inner.order)
            .finish()
    }
}

impl Ring {
    /// `Z_n`; id `i` is the residue `i`.
    pub fn modular(n: u64) -> Result<Ring> {
        if n < 2 {
            return Err(Error::InvalidSpec(format!("modulus {n} < 2")));
        }
        if n > DEFAULT_ELEMENT_CAP as u64 {
            return Err(Error::CapExceeded(format!(
                "Z{n} has more than {DEFAULT_ELEMENT_CAP} elements"
            )));
        }
        Ok(Ring::assemble(
            format!("Z{n}"),
            n as usize,
            0,
            1,
            Some(Coords::new(vec![n])),
            Backend::Modular { n },
        ))
    }

    /// Direct product with componentwise operations. The first factor is the
    /// most significant digit of an element id, so ids sort like tuples.
    pub fn product(parts: &[Ring]) -> Result<Ring> {
        Ring::product_with_cap(parts, DEFAULT_ELEMENT_CAP)
    }

    pub fn product_with_cap(parts: &[Ring], element_cap: usize) -> Result<Ring> {
        if parts.is_empty() {
            return Err(Error::InvalidSpec("product of no rings".into()));
        }
        let mut order: usize = 1;
        for p in parts {
            order = order
                .checked_mul(p.order())
                .filter(|&o| o <= element_cap)
                .ok_or_else(|| {
                    Error::CapExceeded(format!("product has more than {element_cap} elements"))
                })?;
        }
        let coords = parts
            .iter()
            .rev()
            .map(|p| p.coords().map(|c| c.moduli().to_vec()))
            .collect::<Option<Vec<_>>>()
            .map(|v| Coords::new(v.concat()));
        let name = format!(
            "product({})",
            parts.iter().map(|p| p.name()).collect::<Vec<_>>().join(",")
        );
        let one = compose(parts, &parts.iter().map(|p| p.one()).collect::<Vec<_>>());
        let zero = compose(parts, &parts.iter().map(|p| p.zero()).collect::<Vec<_>>());
        Ok(Ring::assemble(
            name,
            order,
            zero,
            one,
            coords,
            Backend::Product {
                parts: parts.to_vec(),
            },
        ))
    }

    /// Quotient ring of a presentation. The result carries a certificate:
    /// structural checks on basis products plus axiom validation under
    /// `limits.validation`. A failed certificate is reported as a
    /// non-confluent presentation.
    pub fn quotient(spec: &QuotientSpec, limits: &Limits) -> Result<Ring> {
        let q = QuotientRing::build(spec, limits)?;
        let order = q.moduli().iter().product::<u64>() as usize;
        let coords = Coords::new(q.moduli().to_vec());
        let one = coords.encode(&q.coords_of(&crate::poly::Poly::monomial(
            spec.modulus,
            crate::poly::Monomial::one(spec.vars.len()),
            1,
        )));
        let ring = Ring::assemble(
            spec.render(),
            order,
            0,
            one,
            Some(coords),
            Backend::Quotient(Box::new(q)),
        );
        let report = validate_ring_axioms(&ring, &limits.validation);
        if let Some(v) = report.violation {
            return Err(Error::NonConfluent(format!("axiom check failed: {v}")));
        }
        Ok(ring)
    }

    /// Ring given by explicit tables (row-major, `n * n`). No axioms are
    /// checked here; run [`validate_ring_axioms`] on the result.
    pub fn from_tables(
        name: impl Into<String>,
        add: Vec<ElemId>,
        mul: Vec<ElemId>,
        zero: ElemId,
        one: ElemId,
        names: Vec<String>,
    ) -> Result<Ring> {
        let n = names.len();
        if n == 0 || add.len() != n * n || mul.len() != n * n {
            return Err(Error::InvalidSpec(
                "table sizes do not match element count".into(),
            ));
        }
        if add.iter().chain(&mul).any(|&v| v as usize >= n)
            || zero as usize >= n
            || one as usize >= n
        {
            return Err(Error::InvalidSpec("table entry out of range".into()));
        }
        let neg = (0..n)
            .map(|a| {
                (0..n as ElemId)
                    .find(|&b| add[a * n + b as usize] == zero)
                    .unwrap_or(zero)
            })
            .collect();
        Ok(Ring::assemble(
            name.into(),
            n,
            zero,
            one,
            None,
            Backend::Table(TableRing {
                add,
                mul,
                neg,
                names,
            }),
        ))
    }

    fn assemble(
        name: String,
        order: usize,
        zero: ElemId,
        one: ElemId,
        coords: Option<Coords>,
        backend: Backend,
    ) -> Ring {
        let mut inner = Inner {
            name,
            order,
            zero,
            one,
            coords,
            backend,
            mul_table: None,
            add_table: None,
        };
        if order <= TABLE_LIMIT && !matches!(inner.backend, Backend::Table(_)) {
            let n = order as ElemId;
            let mut table = Vec::with_capacity(order * order);
            for a in 0..n {
                for b in 0..n {
                    table.push(inner.backend_mul(a, b));
                }
            }
            inner.mul_table = Some(table);
            if matches!(
                inner.backend,
                Backend::Product { .. } | Backend::Quotient(_)
            ) {
                let mut table = Vec::with_capacity(order * order);
                for a in 0..n {
                    for b in 0..n {
                        table.push(inner.backend_add(a, b));
                    }
                }
                inner.add_table = Some(table);
            }
        }
        Ring {
            inner: Arc::new(inner),
        }
    }

    pub fn name(&self) -> &str {
        &self.inner.name
    }

    pub fn order(&self) -> usize {
        self.inner.order
    }

    pub fn zero(&self) -> ElemId {
        self.inner.zero
    }

    pub fn one(&self) -> ElemId {
        self.inner.one
    }

    pub fn elements(&self) -> std::ops::Range<ElemId> {
        0..self.inner.order as ElemId
    }

    /// Additive coordinates, when the ring was built from moduli.
    pub fn coords(&self) -> Option<&Coords> {
        self.inner.coords.as_ref()
    }

    /// The prime `p` when the ring is an `F_p`-algebra in its coordinates.
    pub fn prime_field(&self) -> Option<u64> {
        self.coords().and_then(Coords::prime_field)
    }

    pub fn parts(&self) -> Option<&[Ring]> {
        match &self.inner.backend {
            Backend::Product { parts } => Some(parts),
            _ => None,
        }
    }

    pub fn quotient_backend(&self) -> Option<&QuotientRing> {
        match &self.inner.backend {
            Backend::Quotient(q) => Some(q),
            _ => None,
        }
    }

    #[inline]
    pub fn mul(&self, a: ElemId, b: ElemId) -> ElemId {
        match &self.inner.mul_table {
            Some(t) => t[a as usize * self.inner.order + b as usize],
            None => self.inner.backend_mul(a, b),
        }
    }

    pub fn add(&self, a: ElemId, b: ElemId) -> ElemId {
        match &self.inner.add_table {
            Some(t) => t[a as usize * self.inner.order + b as usize],
            None => self.inner.backend_add(a, b),
        }
    }

    pub fn neg(&self, a: ElemId) -> ElemId {
        let inner = &*self.inner;
        match &inner.backend {
            Backend::Modular { n } => ((n - a as u64) % n) as ElemId,
            Backend::Table(t) => t.neg[a as usize],
            Backend::Product { parts } => {
                let x: Vec<ElemId> = parts
                    .iter()
                    .zip(decompose(parts, a))
                    .map(|(p, u)| p.neg(u))
                    .collect();
                compose(parts, &x)
            }
            Backend::Quotient(_) => inner
                .coords
                .as_ref()
                .expect("quotient has coordinates")
                .neg(a),
        }
    }

    pub fn sub(&self, a: ElemId, b: ElemId) -> ElemId {
        self.add(a, self.neg(b))
    }

    /// `k * a` by repeated addition (`k` may be 0).
    pub fn scalar(&self, k: u64, a: ElemId) -> ElemId {
        let mut acc = self.zero();
        let mut base = a;
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(acc, base);
            }
            base = self.add(base, base);
            k >>= 1;
        }
        acc
    }

    /// Deterministic display name: residues in decimal, tuples in
    /// parentheses, quotient elements in canonical polynomial form.
    pub fn element_name(&self, a: ElemId) -> String {
        match &self.inner.backend {
            Backend::Modular { .. } => a.to_string(),
            Backend::Table(t) => t.names[a as usize].clone(),
            Backend::Product { parts } => {
                let names: Vec<String> = parts
                    .iter()
                    .zip(decompose(parts, a))
                    .map(|(p, u)| p.element_name(u))
                    .collect();
                format!("({})", names.join(","))
            }
            Backend::Quotient(q) => {
                let c = self
                    .inner
                    .coords
                    .as_ref()
                    .expect("quotient has coordinates");
                q.poly_of(&c.decode(a)).render(&q.spec().vars)
            }
        }
    }

    /// Looks up an element by its text: a residue for `Z_n`, a tuple for
    /// products, a polynomial for quotients.
    pub fn parse_element(&self, text: &str) -> Result<ElemId> {
        let text = text.trim();
        match &self.inner.backend {
            Backend::Modular { n } => {
                let v: i128 = text
                    .parse()
                    .map_err(|_| Error::parse(0, format!("not an integer: '{text}'")))?;
                Ok(v.rem_euclid(*n as i128) as ElemId)
            }
            Backend::Table(t) => t
                .names
                .iter()
                .position(|s| s == text)
                .map(|i| i as ElemId)
                .ok_or_else(|| Error::parse(0, format!("unknown element '{text}'"))),
            Backend::Product { parts } => {
                let inner = text
                    .strip_prefix('(')
                    .and_then(|s| s.strip_suffix(')'))
                    .ok_or_else(|| Error::parse(0, "expected a parenthesized tuple"))?;
                let fields = split_top_level(inner);
                if fields.len() != parts.len() {
                    return Err(Error::parse(
                        0,
                        format!("expected {} components", parts.len()),
                    ));
                }
                let ids = parts
                    .iter()
                    .zip(fields)
                    .map(|(p, f)| p.parse_element(f))
                    .collect::<Result<Vec<_>>>()?;
                Ok(compose(parts, &ids))
            }
            Backend::Quotient(q) => {
                let p = q.spec().parse_element(text)?;
                let c = self
                    .inner
                    .coords
                    .as_ref()
                    .expect("quotient has coordinates");
                Ok(c.encode(&q.coords_of(&p)))
            }
        }
    }
}

impl Inner {
    fn backend_add(&self, a: ElemId, b: ElemId) -> ElemId {
        match &self.backend {
            Backend::Modular { n } => ((a as u64 + b as u64) % n) as ElemId,
            Backend::Table(t) => t.add[a as usize * self.order + b as usize],
            Backend::Product { parts } => {
                let (xa, xb) = (decompose(parts, a), decompose(parts, b));
                let sum: Vec<ElemId> = parts
                    .iter()
                    .zip(xa.iter().zip(&xb))
                    .map(|(p, (&u, &v))| p.add(u, v))
                    .collect();
                compose(parts, &sum)
            }
            Backend::Quotient(_) => self
                .coords
                .as_ref()
                .expect("quotient has coordinates")
                .add(a, b),
        }
    }

    fn backend_mul(&self, a: ElemId, b: ElemId) -> ElemId {
        match &self.backend {
            Backend::Modular { n } => ((a as u64 * b as u64) % n) as ElemId,
            Backend::Table(t) => t.mul[a as usize * self.order + b as usize],
            Backend::Product { parts } => {
                let (xa, xb) = (decompose(parts, a), decompose(parts, b));
                let prod: Vec<ElemId> = parts
                    .iter()
                    .zip(xa.iter().zip(&xb))
                    .map(|(p, (&u, &v))| p.mul(u, v))
                    .collect();
                compose(parts, &prod)
            }
            Backend::Quotient(q) => {
                let c = self.coords.as_ref().expect("quotient has coordinates");
                let (x, y) = (c.decode(a), c.decode(b));
                let mut out = vec![0; x.len()];
                q.mul_coords(&x, &y, &mut out);
                c.encode(&out)
            }
        }
    }
}

fn decompose(parts: &[Ring], id: ElemId) -> Vec<ElemId> {
    let mut rest = id as usize;
    let mut out = vec![0; parts.len()];
    for (slot, p) in out.iter_mut().zip(parts).rev() {
        *slot = (rest % p.order()) as ElemId;
        rest /= p.order();
    }
    out
}

fn compose(parts: &[Ring], ids: &[ElemId]) -> ElemId {
    parts
        .iter()
        .zip(ids)
        .fold(0usize, |acc, (p, &id)| acc * p.order() + id as usize) as ElemId
}

fn split_top_level(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}
