use std::fmt;

use serde::{Deserialize, Serialize};

use super::Ring;
use crate::config::Limits;
use crate::error::{Error, Result};
use crate::poly::{parse_poly, truncate, QuotientSpec};

/// Structured description of a ring, parsed from text such as `Z12`,
/// `product(Z4,Z4)` or `quot(Z3; x,y; x*y, x^3) trunc(y,4)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RingSpec {
    Zmod(u64),
    Product(Vec<RingSpec>),
    Quotient(QuotientSpec),
}

impl RingSpec {
    pub fn parse(text: &str) -> Result<RingSpec> {
        let mut p = Parser { src: text, pos: 0 };
        let spec = p.spec()?;
        p.skip_ws();
        if p.pos != text.len() {
            return Err(Error::parse(p.pos, "trailing input"));
        }
        Ok(spec)
    }

    pub fn build(&self, limits: &Limits) -> Result<Ring> {
        match self {
            RingSpec::Zmod(n) => {
                if *n as u128 > limits.element_cap as u128 {
                    return Err(Error::CapExceeded(format!(
                        "Z{n} has more than {} elements",
                        limits.element_cap
                    )));
                }
                Ring::modular(*n)
            }
            RingSpec::Product(parts) => {
                let rings = parts
                    .iter()
                    .map(|p| p.build(limits))
                    .collect::<Result<Vec<_>>>()?;
                Ring::product_with_cap(&rings, limits.element_cap)
            }
            RingSpec::Quotient(q) => Ring::quotient(q, limits),
        }
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingSpec::Zmod(n) => write!(f, "Z{n}"),
            RingSpec::Product(parts) => {
                f.write_str("product(")?;
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{p}")?;
                }
                f.write_str(")")
            }
            RingSpec::Quotient(q) => write!(f, "{q}"),
        }
    }
}

impl std::str::FromStr for RingSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        RingSpec::parse(s)
    }
}

impl Serialize for RingSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for RingSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        RingSpec::parse(&text).map_err(serde::de::Error::custom)
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> Result<()> {
        if self.eat(token) {
            Ok(())
        } else {
            Err(Error::parse(self.pos, format!("expected '{token}'")))
        }
    }

    fn int(&mut self) -> Result<u64> {
        self.skip_ws();
        let len = self.rest().bytes().take_while(u8::is_ascii_digit).count();
        if len == 0 {
            return Err(Error::parse(self.pos, "expected an integer"));
        }
        let v = self.rest()[..len]
            .parse()
            .map_err(|_| Error::parse(self.pos, "integer too large"))?;
        self.pos += len;
        Ok(v)
    }

    fn ident(&mut self) -> Result<String> {
        self.skip_ws();
        let len = self
            .rest()
            .char_indices()
            .take_while(|&(i, c)| c.is_alphabetic() || c == '_' || (i > 0 && c.is_alphanumeric()))
            .map(|(i, c)| i + c.len_utf8())
            .last()
            .unwrap_or(0);
        if len == 0 {
            return Err(Error::parse(self.pos, "expected a variable name"));
        }
        let s = self.rest()[..len].to_string();
        self.pos += len;
        Ok(s)
    }

    fn modulus(&mut self) -> Result<u64> {
        let at = self.pos;
        let n = self.int()?;
        if n < 2 {
            return Err(Error::InvalidSpec(format!(
                "modulus {n} < 2 at position {at}"
            )));
        }
        Ok(n)
    }

    fn spec(&mut self) -> Result<RingSpec> {
        self.skip_ws();
        if self.eat("product(") {
            let mut parts = vec![self.spec()?];
            while self.eat(",") {
                parts.push(self.spec()?);
            }
            self.expect(")")?;
            return Ok(RingSpec::Product(parts));
        }
        if self.eat("quot(") {
            let mut q = self.quotient()?;
            while self.eat("trunc(") {
                let var = self.ident()?;
                self.expect(",")?;
                let n = self.int()?;
                self.expect(")")?;
                q = truncate(&q, &var, n as u32)?;
            }
            return Ok(RingSpec::Quotient(q));
        }
        if self.eat("Z") {
            return Ok(RingSpec::Zmod(self.modulus()?));
        }
        Err(Error::parse(
            self.pos,
            "expected 'Z', 'product(' or 'quot('",
        ))
    }

    fn quotient(&mut self) -> Result<QuotientSpec> {
        self.expect("Z")?;
        let m = self.modulus()?;
        self.expect(";")?;
        let mut vars = vec![self.ident()?];
        while self.eat(",") {
            vars.push(self.ident()?);
        }
        self.expect(";")?;
        let mut rels = Vec::new();
        loop {
            self.skip_ws();
            let start = self.pos;
            let len = self.rest().find([',', ')']).unwrap_or(self.rest().len());
            let text = &self.rest()[..len];
            if !text.trim().is_empty() {
                let p = parse_poly(text, &vars, m).map_err(|e| match e {
                    Error::Parse { pos, msg } => Error::Parse {
                        pos: pos + start,
                        msg,
                    },
                    other => other,
                })?;
                if p.is_zero() {
                    return Err(Error::parse(start, "relation reduces to 0"));
                }
                rels.push(p);
            } else if !rels.is_empty() || self.rest()[len..].starts_with(',') {
                return Err(Error::parse(start, "empty relation"));
            }
            self.pos += len;
            if !self.eat(",") {
                break;
            }
        }
        self.expect(")")?;
        QuotientSpec::new(m, vars, rels)
    }
}
