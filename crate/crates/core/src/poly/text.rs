//! Canonical text form: monomials in graded-lex order, `*`-separated
//! factors, explicit rational coefficients, e.g. `7/720*s1^2 + 1/120*s2`.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use super::{GradedPoly, Monomial};
use crate::{Error, Rational, Result};

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let mut first = true;
        let vars = self
            .t_part()
            .map(|(k, e)| ('t', k, e))
            .chain(self.s_part().map(|(j, e)| ('s', j, e)));
        for (name, idx, e) in vars {
            if !first {
                f.write_str("*")?;
            }
            first = false;
            write!(f, "{name}{idx}")?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for GradedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.iter().enumerate() {
            let mag = c.abs();
            match (i, c.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if m.is_one() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag}*{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for GradedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_factor(tok: &str, t: &mut Vec<(u32, u32)>, s: &mut Vec<(u32, u32)>) -> Result<()> {
    let bad = || Error::Parse(String::from("bad factor ") + tok);
    let (var, exp) = match tok.split_once('^') {
        Some((v, e)) => (v, e.parse::<u32>().map_err(|_| bad())?),
        None => (tok, 1),
    };
    let mut chars = var.chars();
    let head = chars.next().ok_or_else(bad)?;
    let idx: u32 = chars.as_str().parse().map_err(|_| bad())?;
    match head {
        't' => t.push((idx, exp)),
        's' => s.push((idx, exp)),
        _ => return Err(bad()),
    }
    Ok(())
}

fn parse_term(body: &str, negative: bool) -> Result<(Monomial, Rational)> {
    let mut coeff = Rational::one();
    let (mut t, mut s) = (Vec::new(), Vec::new());
    for (i, tok) in body.split('*').enumerate() {
        if tok.is_empty() {
            return Err(Error::Parse(String::from("empty factor in ") + body));
        }
        if tok.starts_with(|c: char| c.is_ascii_digit()) {
            if i != 0 {
                return Err(Error::Parse(
                    String::from("coefficient must come first: ") + body,
                ));
            }
            coeff = tok.parse()?;
        } else {
            parse_factor(tok, &mut t, &mut s)?;
        }
    }
    if negative {
        coeff = -coeff;
    }
    Ok((Monomial::new(&t, &s)?, coeff))
}

impl FromStr for GradedPoly {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty polynomial".to_string()));
        }
        let mut out = GradedPoly::zero();
        let mut start = 0;
        let mut negative = false;
        let bytes = compact.as_bytes();
        if bytes[0] == b'-' || bytes[0] == b'+' {
            negative = bytes[0] == b'-';
            start = 1;
        }
        let mut i = start;
        loop {
            let end = compact[i..].find(['+', '-']).map(|off| i + off);
            let stop = end.unwrap_or(compact.len());
            let (m, c) = parse_term(&compact[start..stop], negative)?;
            out.add_term(m, c);
            match end {
                Some(e) => {
                    negative = bytes[e] == b'-';
                    start = e + 1;
                    i = start;
                }
                None => break,
            }
        }
        Ok(out)
    }
}
