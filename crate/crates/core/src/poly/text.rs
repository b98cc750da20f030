//! Canonical text form: `-21*b^2*u^5 + 70*b^3*u^4 - 7`.
//!
//! Terms are printed in descending monomial order, variables inside a term in
//! ring order, unit coefficients are omitted and exponent 1 is not written.

use std::fmt;

use super::{MultiPoly, PolyRing};
use crate::domain::Domain;
use crate::error::{Error, Result};

impl<D: Domain> fmt::Display for MultiPoly<D> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let vars = self.ring.vars();
        for (k, (m, c)) in self.terms().enumerate() {
            let mut coeff = self.domain().fmt_elem(c);
            if coeff.contains(' ') {
                coeff = format!("({coeff})");
            }
            let mono: Vec<String> = m
                .exps()
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    if e == 1 {
                        vars[i].clone()
                    } else {
                        format!("{}^{}", vars[i], e)
                    }
                })
                .collect();
            let body = if mono.is_empty() {
                coeff
            } else {
                let mono = mono.join("*");
                match coeff.as_str() {
                    "1" => mono,
                    "-1" => format!("-{mono}"),
                    _ => format!("{coeff}*{mono}"),
                }
            };
            match (k, body.strip_prefix('-')) {
                (0, _) => f.write_str(&body)?,
                (_, Some(rest)) => write!(f, " - {rest}")?,
                (_, None) => write!(f, " + {body}")?,
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok<'a> {
    Num(&'a str),
    Ident(&'a str),
    Sym(char),
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok<'_>)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let ch = bytes[i] as char;
        if ch.is_ascii_whitespace() {
            i += 1;
        } else if ch.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            out.push((start, Tok::Num(&text[start..i])));
        } else if ch.is_ascii_alphabetic() || ch == '_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((start, Tok::Ident(&text[start..i])));
        } else if "+-*^/".contains(ch) {
            out.push((i, Tok::Sym(ch)));
            i += 1;
        } else {
            return Err(Error::Parse { pos: i, msg: format!("unexpected character `{ch}`") });
        }
    }
    Ok(out)
}

/// One parsed term: sign, optional coefficient text, `(variable, exponent)` factors.
struct RawTerm<'a> {
    negative: bool,
    coeffs: Vec<String>,
    factors: Vec<(&'a str, u32)>,
}

fn parse_raw(text: &str) -> Result<Vec<RawTerm<'_>>> {
    let toks = tokenize(text)?;
    let end = text.len();
    let err = |pos: usize, msg: &str| Error::Parse { pos, msg: msg.to_string() };
    let mut terms = Vec::new();
    let mut i = 0;
    if toks.is_empty() {
        return Err(err(0, "empty input"));
    }
    loop {
        let negative = match toks.get(i) {
            Some((_, Tok::Sym('-'))) => {
                i += 1;
                true
            }
            Some((_, Tok::Sym('+'))) => {
                i += 1;
                false
            }
            _ => false,
        };
        let mut term = RawTerm { negative, coeffs: Vec::new(), factors: Vec::new() };
        loop {
            match toks.get(i) {
                Some((_, Tok::Num(n))) => {
                    i += 1;
                    if let Some((_, Tok::Sym('/'))) = toks.get(i) {
                        match toks.get(i + 1) {
                            Some((_, Tok::Num(d))) => {
                                term.coeffs.push(format!("{n}/{d}"));
                                i += 2;
                            }
                            Some((p, _)) => return Err(err(*p, "expected denominator")),
                            None => return Err(err(end, "expected denominator")),
                        }
                    } else {
                        term.coeffs.push(n.to_string());
                    }
                }
                Some((_, Tok::Ident(v))) => {
                    i += 1;
                    let mut e = 1;
                    if let Some((_, Tok::Sym('^'))) = toks.get(i) {
                        match toks.get(i + 1) {
                            Some((p, Tok::Num(n))) => {
                                e = n.parse().map_err(|_| err(*p, "exponent too large"))?;
                                i += 2;
                            }
                            Some((p, _)) => return Err(err(*p, "expected exponent")),
                            None => return Err(err(end, "expected exponent")),
                        }
                    }
                    term.factors.push((v, e));
                }
                Some((p, _)) => return Err(err(*p, "expected number or variable")),
                None => return Err(err(end, "expected number or variable")),
            }
            match toks.get(i) {
                Some((_, Tok::Sym('*'))) => i += 1,
                _ => break,
            }
        }
        terms.push(term);
        match toks.get(i) {
            None => break,
            Some((_, Tok::Sym('+' | '-'))) => {}
            Some((p, _)) => return Err(err(*p, "expected `+`, `-` or end of input")),
        }
    }
    Ok(terms)
}

pub(super) fn parse<D: Domain>(ring: &PolyRing<D>, text: &str) -> Result<MultiPoly<D>> {
    let d = ring.domain();
    let mut out = Vec::new();
    for raw in parse_raw(text)? {
        let mut c = d.one();
        for s in &raw.coeffs {
            let v = d
                .parse_elem(s)
                .ok_or_else(|| Error::Parse { pos: 0, msg: format!("bad coefficient `{s}`") })?;
            c = d.mul(&c, &v);
        }
        if raw.negative {
            c = d.neg(&c);
        }
        let mut exps = vec![0u32; ring.nvars()];
        for (v, e) in raw.factors {
            exps[ring.var_index(v)?] += e;
        }
        out.push((exps, c));
    }
    Ok(ring.from_terms(out))
}

/// Parses text whose variables are taken in order of first appearance.
pub fn parse_with_inferred_vars<D: Domain>(
    domain: D,
    text: &str,
) -> Result<(PolyRing<D>, MultiPoly<D>)> {
    let mut vars: Vec<&str> = Vec::new();
    for raw in parse_raw(text)? {
        for (v, _) in raw.factors {
            if !vars.contains(&v) {
                vars.push(v);
            }
        }
    }
    let ring = PolyRing::new(domain, &vars);
    let p = parse(&ring, text)?;
    Ok((ring, p))
}
