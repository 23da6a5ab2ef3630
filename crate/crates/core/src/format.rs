//! Text formats for fields and polynomials.
//!
//! ```text
//! field := "p=" INT " s=" INT " n=" INT [" mod=" INT ("," INT)*]
//! poly  := NAME "=[" [INT ("," INT)*] "]" [" stride=" INT]
//! ```
//!
//! Keys of a field spec may appear in any order. See `docs/format.md`.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldParams};
use crate::linpoly::LinearizedPoly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldSpec {
    pub p: u64,
    pub s: u32,
    pub n: u32,
    pub modulus: Option<Vec<u64>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolySpec {
    pub name: String,
    pub coeffs: Vec<u64>,
    pub stride: u32,
}

impl FieldSpec {
    pub fn build(&self) -> Result<FieldCtx> {
        FieldCtx::new(FieldParams::new(self.p, self.s, self.n)?, self.modulus.clone())
    }
}

impl PolySpec {
    pub fn build(&self, ctx: &Arc<FieldCtx>) -> Result<LinearizedPoly> {
        LinearizedPoly::from_encodings(ctx.clone(), &self.coeffs, self.stride)
    }
}

fn join(values: &[u64]) -> String {
    values
        .iter()
        .map(u64::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "p={} s={} n={}", self.p, self.s, self.n)?;
        if let Some(m) = &self.modulus {
            write!(f, " mod={}", join(m))?;
        }
        Ok(())
    }
}

impl fmt::Display for PolySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}=[{}] stride={}", self.name, join(&self.coeffs), self.stride)
    }
}

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Self {
        Cursor { src, pos: 0 }
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn peek(&self) -> Option<char> {
        self.rest().chars().next()
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos == self.src.len()
    }

    fn error_at(&self, position: usize, message: impl Into<String>) -> Error {
        let token: String = self.src[position..]
            .chars()
            .take_while(|c| !c.is_whitespace())
            .collect();
        Error::Parse {
            position,
            token,
            message: message.into(),
        }
    }

    fn error(&self, message: impl Into<String>) -> Error {
        self.error_at(self.pos, message)
    }

    fn expect(&mut self, ch: char) -> Result<()> {
        if self.peek() == Some(ch) {
            self.pos += ch.len_utf8();
            Ok(())
        } else {
            Err(self.error(format!("expected `{ch}`")))
        }
    }

    fn ident(&mut self) -> Result<&'a str> {
        let rest = self.rest();
        let len = rest
            .char_indices()
            .find(|&(i, c)| !(c == '_' || c.is_ascii_alphabetic() || (i > 0 && c.is_ascii_digit())))
            .map_or(rest.len(), |(i, _)| i);
        if len == 0 {
            return Err(self.error("expected a name"));
        }
        self.pos += len;
        Ok(&rest[..len])
    }

    fn uint(&mut self) -> Result<u64> {
        let rest = self.rest();
        let len = rest
            .find(|c: char| !c.is_ascii_digit())
            .unwrap_or(rest.len());
        if len == 0 {
            return Err(self.error("expected a nonnegative integer"));
        }
        let value = rest[..len]
            .parse()
            .map_err(|_| self.error("integer does not fit in 64 bits"))?;
        self.pos += len;
        Ok(value)
    }

    fn small_uint(&mut self) -> Result<u32> {
        let start = self.pos;
        let value = self.uint()?;
        u32::try_from(value).map_err(|_| self.error_at(start, "integer does not fit in 32 bits"))
    }

    /// INT ("," INT)*, with optional spaces around commas when `spaced`.
    fn uint_list(&mut self, spaced: bool) -> Result<Vec<u64>> {
        let mut out = vec![self.uint()?];
        loop {
            if spaced {
                self.skip_ws();
            }
            if self.peek() != Some(',') {
                return Ok(out);
            }
            self.pos += 1;
            if spaced {
                self.skip_ws();
            }
            out.push(self.uint()?);
        }
    }
}

/// Parses `p=<int> s=<int> n=<int> [mod=<c0,...,1>]`.
pub fn parse_field_spec(src: &str) -> Result<FieldSpec> {
    let mut cur = Cursor::new(src);
    let (mut p, mut s, mut n, mut modulus) = (None, None, None, None);
    let mut first = true;
    loop {
        let before = cur.pos;
        if cur.at_end() {
            break;
        }
        if !first && cur.pos == before {
            return Err(cur.error("expected whitespace between entries"));
        }
        first = false;
        let key_pos = cur.pos;
        let key = cur.ident()?;
        cur.expect('=')?;
        let duplicate = match key {
            "p" => p.replace(cur.uint()?).is_some(),
            "s" => s.replace(cur.small_uint()?).is_some(),
            "n" => n.replace(cur.small_uint()?).is_some(),
            "mod" => modulus.replace(cur.uint_list(false)?).is_some(),
            _ => return Err(cur.error_at(key_pos, format!("unknown key `{key}`"))),
        };
        if duplicate {
            return Err(cur.error_at(key_pos, format!("duplicate key `{key}`")));
        }
    }
    let missing = |key: &str| cur.error_at(src.len(), format!("missing `{key}`"));
    Ok(FieldSpec {
        p: p.ok_or_else(|| missing("p"))?,
        s: s.ok_or_else(|| missing("s"))?,
        n: n.ok_or_else(|| missing("n"))?,
        modulus,
    })
}

/// Parses `name=[e0,...,ek] [stride=<s'>]`; the stride defaults to 1.
pub fn parse_poly_spec(src: &str) -> Result<PolySpec> {
    let mut cur = Cursor::new(src);
    cur.skip_ws();
    let name = cur.ident()?.to_string();
    cur.expect('=')?;
    cur.expect('[')?;
    cur.skip_ws();
    let coeffs = if cur.peek() == Some(']') {
        Vec::new()
    } else {
        cur.uint_list(true)?
    };
    cur.skip_ws();
    cur.expect(']')?;
    let mut stride = None;
    loop {
        let before = cur.pos;
        if cur.at_end() {
            break;
        }
        if cur.pos == before {
            return Err(cur.error("expected whitespace between entries"));
        }
        let key_pos = cur.pos;
        let key = cur.ident()?;
        if key != "stride" {
            return Err(cur.error_at(key_pos, format!("unknown key `{key}`")));
        }
        cur.expect('=')?;
        if stride.replace(cur.small_uint()?).is_some() {
            return Err(cur.error_at(key_pos, "duplicate key `stride`"));
        }
    }
    Ok(PolySpec {
        name,
        coeffs,
        stride: stride.unwrap_or(1),
    })
}
