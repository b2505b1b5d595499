//! Parser for relation and element text.
//!
//! ```text
//! poly := ['+'|'-'] term (('+'|'-') term)*
//! term := [integer] ('*'? var ('^' integer)?)*
//! ```
//! Whitespace is insignificant. Variables are matched against the declared
//! list, longest name first, so `xy` reads as `x*y` when `x` and `y` are
//! declared and `xy` is not.

use super::monomial::Monomial;
use super::polynomial::Poly;
use crate::error::{Error, Result};

struct Cursor<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    len: usize,
    _src: &'a str,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Self {
        let chars: Vec<(usize, char)> = src
            .char_indices()
            .filter(|(_, c)| !c.is_whitespace())
            .collect();
        Cursor {
            chars,
            pos: 0,
            len: src.len(),
            _src: src,
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    /// Byte offset in the original text of the next significant char.
    fn offset(&self) -> usize {
        self.chars
            .get(self.pos)
            .map(|&(i, _)| i)
            .unwrap_or(self.len)
    }

    fn bump(&mut self) {
        self.pos += 1;
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn integer(&mut self) -> Result<Option<u64>> {
        let start = self.offset();
        let mut value: Option<u64> = None;
        while let Some(c) = self.peek() {
            let Some(d) = c.to_digit(10) else { break };
            let v = value
                .unwrap_or(0)
                .checked_mul(10)
                .and_then(|v| v.checked_add(d as u64))
                .ok_or_else(|| Error::parse(start, "integer overflow"))?;
            value = Some(v);
            self.bump();
        }
        Ok(value)
    }

    fn ident_here(&self) -> String {
        self.chars[self.pos..]
            .iter()
            .map(|&(_, c)| c)
            .take_while(|c| c.is_alphanumeric() || *c == '_')
            .collect()
    }

    /// Longest declared variable starting here.
    fn var(&mut self, vars: &[String]) -> Option<usize> {
        let rest: String = self.chars[self.pos..].iter().map(|&(_, c)| c).collect();
        let best = vars
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_empty() && rest.starts_with(v.as_str()))
            .max_by_key(|(_, v)| v.chars().count())?;
        self.pos += best.1.chars().count();
        Some(best.0)
    }
}

/// Parses `text` into a polynomial over `Z_modulus` in the given variables.
pub fn parse_poly(text: &str, vars: &[String], modulus: u64) -> Result<Poly> {
    if modulus < 2 {
        return Err(Error::InvalidSpec(format!(
            "coefficient modulus {modulus} < 2"
        )));
    }
    let nvars = vars.len();
    let mut cur = Cursor::new(text);
    if cur.peek().is_none() {
        return Err(Error::parse(0, "empty polynomial"));
    }
    let mut out = Poly::zero(modulus, nvars);
    let mut negate = if cur.eat('-') {
        true
    } else {
        cur.eat('+');
        false
    };
    loop {
        let (mono, coeff) = term(&mut cur, vars)?;
        let c = coeff % modulus;
        out.add_term(mono, if negate { (modulus - c) % modulus } else { c });
        match cur.peek() {
            None => break,
            Some('+') => {
                cur.bump();
                negate = false;
            }
            Some('-') => {
                cur.bump();
                negate = true;
            }
            Some(c) => {
                return Err(Error::parse(
                    cur.offset(),
                    format!("unexpected character '{c}'"),
                ));
            }
        }
    }
    Ok(out)
}

fn term(cur: &mut Cursor<'_>, vars: &[String]) -> Result<(Monomial, u64)> {
    let start = cur.offset();
    let coeff = cur.integer()?;
    let mut exps = vec![0u32; vars.len()];
    let mut saw_var = false;
    loop {
        let save = cur.pos;
        let star = cur.eat('*');
        match cur.peek() {
            Some(c) if c.is_alphabetic() || c == '_' => {
                let at = cur.offset();
                let Some(v) = cur.var(vars) else {
                    return Err(Error::parse(
                        at,
                        format!("unknown variable '{}'", cur.ident_here()),
                    ));
                };
                let mut e = 1u32;
                if cur.eat('^') {
                    let at = cur.offset();
                    e = match cur.integer()? {
                        Some(k) => {
                            u32::try_from(k).map_err(|_| Error::parse(at, "exponent too large"))?
                        }
                        None => return Err(Error::parse(at, "malformed exponent")),
                    };
                }
                exps[v] = exps[v]
                    .checked_add(e)
                    .ok_or_else(|| Error::parse(at, "exponent too large"))?;
                saw_var = true;
            }
            _ => {
                if star {
                    return Err(Error::parse(cur.offset(), "expected variable after '*'"));
                }
                cur.pos = save;
                break;
            }
        }
    }
    if coeff.is_none() && !saw_var {
        return Err(Error::parse(start, "expected a term"));
    }
    Ok((Monomial::from_exponents(exps), coeff.unwrap_or(1)))
}
