//! Element expressions:
//!
//! ```text
//! element  := term (('+'|'-') term)*
//! term     := [rational '*'] gen* charge
//! gen      := name '(' '-' uint ')'
//! charge   := 'E[' rational (',' rational)* [';L'] ']' | 'vac'
//! rational := ['-'] uint ['/' uint]
//! ```
//!
//! A leading sign before the first term is also accepted. Whitespace between tokens is ignored.

use latvoa::fock::{Charge, FockTerm, FockVector, Space};
use latvoa::Q;
use num::{BigInt, One, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("PARSE_ERROR at {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("NONNEGATIVE_MODE at {position}: creation modes must be negative")]
    NonnegativeMode { position: usize },
    #[error("UNKNOWN_NAME at {position}: {name}")]
    UnknownName { position: usize, name: String },
}

impl ParseError {
    pub fn kind(&self) -> &'static str {
        match self {
            ParseError::Syntax { .. } => "PARSE_ERROR",
            ParseError::NonnegativeMode { .. } => "NONNEGATIVE_MODE",
            ParseError::UnknownName { .. } => "UNKNOWN_NAME",
        }
    }

    pub fn position(&self) -> usize {
        match self {
            ParseError::Syntax { position, .. } | ParseError::NonnegativeMode { position } | ParseError::UnknownName { position, .. } => *position,
        }
    }
}

/// Parses a standalone rational such as `-3/4`.
pub fn parse_rational(s: &str) -> Option<Q> {
    let mut p = Parser { s: s.trim().as_bytes(), pos: 0, space: None };
    let r = p.rational().ok()?;
    (p.pos == p.s.len()).then_some(r)
}

pub fn parse_element(text: &str, space: &Space) -> Result<FockVector, ParseError> {
    let mut p = Parser { s: text.as_bytes(), pos: 0, space: Some(space) };
    let v = p.element()?;
    p.ws();
    if p.pos != p.s.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(v)
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    space: Option<&'a Space>,
}

impl Parser<'_> {
    fn err(&self, message: &str) -> ParseError {
        ParseError::Syntax { position: self.pos, message: message.into() }
    }

    fn ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.ws();
        self.s.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<(), ParseError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(&format!("expected '{}'", c as char)))
        }
    }

    fn uint(&mut self) -> Result<BigInt, ParseError> {
        self.ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected digits"));
        }
        let digits = std::str::from_utf8(&self.s[start..self.pos]).expect("ascii digits");
        Ok(digits.parse().expect("digits parse"))
    }

    fn rational(&mut self) -> Result<Q, ParseError> {
        let neg = if self.peek() == Some(b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let n = self.uint()?;
        let d = if self.peek() == Some(b'/') {
            self.pos += 1;
            let at = self.pos;
            let d = self.uint()?;
            if d.is_zero() {
                return Err(ParseError::Syntax { position: at, message: "zero denominator".into() });
            }
            d
        } else {
            BigInt::one()
        };
        let r = Q::new(n, d);
        Ok(if neg { -r } else { r })
    }

    fn ident(&mut self) -> Option<(usize, String)> {
        self.ws();
        let start = self.pos;
        while self.pos < self.s.len() && (self.s[self.pos].is_ascii_alphanumeric() || self.s[self.pos] == b'_') {
            if self.pos == start && self.s[self.pos].is_ascii_digit() {
                break;
            }
            self.pos += 1;
        }
        (self.pos > start).then(|| (start, String::from_utf8_lossy(&self.s[start..self.pos]).into_owned()))
    }

    fn element(&mut self) -> Result<FockVector, ParseError> {
        let mut out = FockVector::zero();
        let mut sign = Q::one();
        match self.peek() {
            Some(b'-') => {
                // `-3*x` is a negative coefficient, `-x` a negated term
                let save = self.pos;
                self.pos += 1;
                if !matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
                    sign = -Q::one();
                } else {
                    self.pos = save;
                }
            }
            Some(b'+') => self.pos += 1,
            _ => {}
        }
        loop {
            let (t, c) = self.term()?;
            out.add_term(t, c * &sign);
            match self.peek() {
                Some(b'+') => sign = Q::one(),
                Some(b'-') => sign = -Q::one(),
                _ => return Ok(out),
            }
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<(FockTerm, Q), ParseError> {
        let space = self.space.expect("element parsing needs a space");
        let coef = match self.peek() {
            Some(c) if c.is_ascii_digit() || c == b'-' => {
                let r = self.rational()?;
                self.expect(b'*')?;
                r
            }
            _ => Q::one(),
        };
        let mut factors = Vec::new();
        loop {
            let Some((at, name)) = self.ident() else {
                return Err(self.err("expected a generator or a charge"));
            };
            if name == "E" && self.peek() == Some(b'[') {
                let charge = self.charge(space)?;
                return Ok((FockTerm::new(factors, charge), coef));
            }
            if name == "vac" && self.peek() != Some(b'(') {
                return Ok((FockTerm::new(factors, Charge::zero(space.rank())), coef));
            }
            let Some(i) = space.lattice.names().iter().position(|n| *n == name) else {
                return Err(ParseError::UnknownName { position: at, name });
            };
            self.expect(b'(')?;
            let at = self.pos;
            if self.peek() != Some(b'-') {
                if matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
                    return Err(ParseError::NonnegativeMode { position: at });
                }
                return Err(self.err("expected '-'"));
            }
            self.pos += 1;
            let m = self.uint()?;
            if m.is_zero() {
                return Err(ParseError::NonnegativeMode { position: at });
            }
            let m: u32 = m.try_into().map_err(|_| ParseError::Syntax { position: at, message: "mode too large".into() })?;
            self.expect(b')')?;
            factors.push((i, m));
        }
    }

    fn charge(&mut self, space: &Space) -> Result<Charge, ParseError> {
        self.expect(b'[')?;
        let mut v = vec![self.rational()?];
        while self.peek() == Some(b',') {
            self.pos += 1;
            v.push(self.rational()?);
        }
        let mut lam = false;
        if self.peek() == Some(b';') {
            self.pos += 1;
            let at = self.pos;
            match self.ident() {
                Some((_, l)) if l == "L" => {}
                _ => return Err(ParseError::Syntax { position: at, message: "expected 'L'".into() }),
            }
            if space.lambda.is_none() {
                return Err(ParseError::Syntax { position: at, message: "no lambda block in the configuration".into() });
            }
            lam = true;
        }
        if v.len() != space.rank() {
            return Err(self.err(&format!("charge has {} coordinates, rank is {}", v.len(), space.rank())));
        }
        self.expect(b']')?;
        Ok(Charge { v, lam })
    }
}
