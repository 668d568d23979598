//! Text formats for elements, words, polynomials and rule files.

use crate::cend::{CendElement, CendKey};
use crate::scalar::render;
use num_traits::{One, Signed, Zero};

pub fn print_element(x: &CendElement) -> String {
    if x.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (k, c)) in x.terms().iter().enumerate() {
        let neg = c.is_negative();
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let a = c.abs();
        let mut parts = Vec::new();
        match k.d {
            0 => {}
            1 => parts.push("D".to_string()),
            d => parts.push(format!("D^{d}")),
        }
        if k.mono != crate::grassmann::Monomial::ONE {
            parts.push(k.mono.to_string());
        }
        match k.k {
            0 => {}
            1 => parts.push("v".to_string()),
            p => parts.push(format!("v^{p}")),
        }
        if !a.is_one() || parts.is_empty() {
            parts.insert(0, render(&a));
        }
        out.push_str(&parts.join(" "));
    }
    out
}

use crate::error::{Error, Result};
use crate::free::{ConformalPolynomial, NormalWord};
use crate::grassmann::{normal_order, AnGen};
use crate::symbol::GeneratorSymbol;
use crate::Scalar;
use num_bigint::BigInt;

/// `xi1 .1 xi2 .0 v`, wrapped as `D^2(...)` when the word carries a D-power.
pub fn print_word(w: &NormalWord) -> String {
    let mut body = w.letters[0].to_string();
    for (g, n) in w.letters[1..].iter().zip(&w.indices) {
        body.push_str(&format!(" .{n} {g}"));
    }
    match w.s {
        0 => body,
        1 => format!("D({body})"),
        s => format!("D^{s}({body})"),
    }
}

pub fn print_polynomial(p: &ConformalPolynomial) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (w, c)) in p.terms().iter().enumerate() {
        let neg = c.is_negative();
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let a = c.abs();
        if !a.is_one() {
            out.push_str(&render(&a));
            out.push(' ');
        }
        out.push_str(&print_word(w));
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Index(u32),
    Plus,
    Minus,
    Slash,
    Star,
    Caret,
    LParen,
    RParen,
    Eq,
}

struct Lexed {
    toks: Vec<(Tok, usize)>,
    line: usize,
    end: usize,
}

fn lex(text: &str, line: usize) -> Result<Lexed> {
    let chars: Vec<char> = text.chars().collect();
    let err = |col: usize, message: String| Error::Parse {
        line,
        column: col + 1,
        message,
    };
    let mut toks = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let start = i;
        if c == '#' {
            break;
        }
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let tok = if c.is_ascii_digit() {
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            toks.push((Tok::Num(s.parse().unwrap()), start));
            continue;
        } else if c.is_ascii_alphabetic() {
            while i < chars.len() && chars[i].is_ascii_alphanumeric() {
                i += 1;
            }
            toks.push((Tok::Ident(chars[start..i].iter().collect()), start));
            continue;
        } else if c == '.' {
            i += 1;
            let from = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[from..i].iter().collect();
            let n = s
                .parse()
                .map_err(|_| err(start, "expected an index after '.'".into()))?;
            toks.push((Tok::Index(n), start));
            continue;
        } else {
            match c {
                '+' => Tok::Plus,
                '-' => Tok::Minus,
                '/' => Tok::Slash,
                '*' => Tok::Star,
                '^' => Tok::Caret,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                '=' => Tok::Eq,
                _ => return Err(err(start, format!("unexpected character '{c}'"))),
            }
        };
        toks.push((tok, start));
        i += 1;
    }
    Ok(Lexed {
        toks,
        line,
        end: chars.len(),
    })
}

struct Parser {
    lx: Lexed,
    pos: usize,
}

impl Parser {
    fn new(text: &str, line: usize) -> Result<Self> {
        Ok(Parser {
            lx: lex(text, line)?,
            pos: 0,
        })
    }

    fn peek(&self) -> Option<&Tok> {
        self.lx.toks.get(self.pos).map(|t| &t.0)
    }

    fn column(&self) -> usize {
        self.lx.toks.get(self.pos).map_or(self.lx.end, |t| t.1) + 1
    }

    fn error(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            line: self.lx.line,
            column: self.column(),
            message: message.into(),
        }
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.peek().cloned();
        self.pos += 1;
        t
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, t: Tok, what: &str) -> Result<()> {
        if self.eat(&t) {
            Ok(())
        } else {
            Err(self.error(format!("expected {what}")))
        }
    }

    fn done(&self) -> bool {
        self.pos >= self.lx.toks.len()
    }

    fn number(&mut self) -> Result<BigInt> {
        match self.next() {
            Some(Tok::Num(n)) => Ok(n),
            _ => {
                self.pos -= 1;
                Err(self.error("expected a number"))
            }
        }
    }

    fn small(&mut self) -> Result<u32> {
        let n = self.number()?;
        u32::try_from(n).map_err(|_| {
            self.pos -= 1;
            self.error("exponent too large")
        })
    }

    /// Optional `p` or `p/q`, followed by an optional `*`.
    fn scalar(&mut self) -> Result<Option<Scalar>> {
        if !matches!(self.peek(), Some(Tok::Num(_))) {
            return Ok(None);
        }
        let p = self.number()?;
        let q = if self.eat(&Tok::Slash) {
            let q = self.number()?;
            if q == BigInt::from(0) {
                self.pos -= 1;
                return Err(self.error("zero denominator"));
            }
            q
        } else {
            BigInt::from(1)
        };
        self.eat(&Tok::Star);
        Ok(Some(Scalar::new(p, q)))
    }

    /// `D` or `D^s` if present.
    fn d_power(&mut self) -> Result<u32> {
        if self.peek() != Some(&Tok::Ident("D".into())) {
            return Ok(0);
        }
        self.pos += 1;
        if self.eat(&Tok::Caret) {
            self.small()
        } else {
            Ok(1)
        }
    }

    fn symbol(&mut self) -> Result<GeneratorSymbol> {
        let Some(Tok::Ident(name)) = self.peek().cloned() else {
            return Err(self.error("expected a generator"));
        };
        let g = parse_symbol(&name).ok_or_else(|| self.error(format!("unknown generator '{name}'")))?;
        self.pos += 1;
        Ok(g)
    }

    /// Leading sign of a term: none for the first term, required afterwards.
    fn sign(&mut self, first: bool) -> Result<Option<bool>> {
        if self.eat(&Tok::Plus) {
            return Ok(Some(false));
        }
        if self.eat(&Tok::Minus) {
            return Ok(Some(true));
        }
        if first {
            Ok(Some(false))
        } else {
            Ok(None)
        }
    }

    /// `gen {.n gen}` where any tail may be parenthesized: `xi1 .1 (xi2 .0 v)`.
    fn chain(&mut self) -> Result<NormalWord> {
        if self.eat(&Tok::LParen) {
            let w = self.chain()?;
            self.expect(Tok::RParen, "')'")?;
            return Ok(w);
        }
        let g = self.symbol()?;
        let Some(Tok::Index(n)) = self.peek().cloned() else {
            return Ok(NormalWord::letter(g));
        };
        self.pos += 1;
        Ok(self.chain()?.prepend(g, n))
    }

    fn word(&mut self) -> Result<NormalWord> {
        let s = self.d_power()?;
        if s > 0 && self.eat(&Tok::LParen) {
            let w = self.chain()?;
            self.expect(Tok::RParen, "')'")?;
            return Ok(w.with_d(s));
        }
        if s > 0 {
            // a bare letter may follow D without parentheses
            let g = self.symbol()?;
            if matches!(self.peek(), Some(Tok::Index(_))) {
                return Err(self.error("a D-power on a longer word needs parentheses"));
            }
            return Ok(NormalWord::letter(g).with_d(s));
        }
        self.chain()
    }

    /// Terms until the end or an `=`.
    fn polynomial(&mut self) -> Result<ConformalPolynomial> {
        let mut p = ConformalPolynomial::zero();
        let mut first = true;
        while !self.done() && self.peek() != Some(&Tok::Eq) {
            let neg = self
                .sign(first)?
                .ok_or_else(|| self.error("expected '+' or '-'"))?;
            first = false;
            let c = self.scalar()?;
            if c.is_some() && (self.done() || matches!(self.peek(), Some(Tok::Plus | Tok::Minus | Tok::Eq))) {
                if c.as_ref().is_some_and(|c| c.is_zero()) {
                    continue;
                }
                return Err(self.error("a nonzero constant is not a word"));
            }
            let w = self.word()?;
            let c = c.unwrap_or_else(Scalar::one);
            p.add_term(w, if neg { -c } else { c });
        }
        if first {
            return Err(self.error("expected a polynomial"));
        }
        Ok(p)
    }

    fn element(&mut self, rank: usize) -> Result<CendElement> {
        let mut x = CendElement::zero(rank);
        let mut first = true;
        while !self.done() {
            let neg = self
                .sign(first)?
                .ok_or_else(|| self.error("expected '+' or '-'"))?;
            first = false;
            let mut c = self.scalar()?.unwrap_or_else(Scalar::one);
            if neg {
                c = -c;
            }
            let (mut d, mut k) = (0u32, 0u32);
            let mut letters = Vec::new();
            let start = self.pos;
            while let Some(Tok::Ident(name)) = self.peek().cloned() {
                if name == "D" {
                    d += self.d_power()?;
                } else if name == "v" {
                    self.pos += 1;
                    k += if self.eat(&Tok::Caret) { self.small()? } else { 1 };
                } else {
                    let g = match parse_symbol(&name) {
                        Some(GeneratorSymbol::Xi(i)) => AnGen::Xi(i),
                        Some(GeneratorSymbol::Del(i)) => AnGen::Del(i),
                        _ => return Err(self.error(format!("unknown factor '{name}'"))),
                    };
                    if g.index() > rank {
                        return Err(self.error(format!("index {} exceeds rank {rank}", g.index())));
                    }
                    self.pos += 1;
                    letters.push(g);
                }
            }
            if self.pos == start && c.is_one() && !matches!(self.lx.toks.get(start.wrapping_sub(1)), Some((Tok::Num(_), _)) | Some((Tok::Star, _))) {
                return Err(self.error("expected a term"));
            }
            let a = normal_order(&letters, rank)?;
            for (m, ca) in a.terms() {
                x.add_term(CendKey::new(d, *m, k), &c * ca);
            }
        }
        if first {
            return Err(self.error("expected an element"));
        }
        Ok(x)
    }
}

/// `v`, `xi<i>` or `del<i>` with `i >= 1`.
pub fn parse_symbol(name: &str) -> Option<GeneratorSymbol> {
    if name == "v" {
        return Some(GeneratorSymbol::V);
    }
    let (ctor, rest): (fn(usize) -> GeneratorSymbol, &str) = if let Some(r) = name.strip_prefix("xi") {
        (GeneratorSymbol::Xi, r)
    } else {
        let r = name.strip_prefix("del")?;
        (GeneratorSymbol::Del, r)
    };
    if rest.is_empty() || !rest.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    match rest.parse::<usize>() {
        Ok(i) if i >= 1 => Some(ctor(i)),
        _ => None,
    }
}

/// Parses sums of terms such as `2 D^2 xi1 del2 v^3 - 1/2 xi1`.
pub fn parse_element(text: &str, rank: usize) -> Result<CendElement> {
    let mut p = Parser::new(text, 1)?;
    p.element(rank)
}

pub fn parse_word(text: &str) -> Result<NormalWord> {
    let mut p = Parser::new(text, 1)?;
    let w = p.word()?;
    if !p.done() {
        return Err(p.error("trailing input after word"));
    }
    Ok(w)
}

pub fn parse_polynomial(text: &str) -> Result<ConformalPolynomial> {
    let mut p = Parser::new(text, 1)?;
    let out = p.polynomial()?;
    if !p.done() {
        return Err(p.error("trailing input after polynomial"));
    }
    Ok(out)
}

/// One relation per line, either `lhs` or `lhs = rhs`; `#` starts a comment.
pub fn parse_rules(text: &str) -> Result<Vec<ConformalPolynomial>> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let mut p = Parser::new(line, i + 1)?;
        if p.done() {
            continue;
        }
        let mut poly = p.polynomial()?;
        if p.eat(&Tok::Eq) {
            let rhs = if p.peek() == Some(&Tok::Num(BigInt::from(0))) && p.lx.toks.len() == p.pos + 1 {
                p.pos += 1;
                ConformalPolynomial::zero()
            } else {
                p.polynomial()?
            };
            poly = poly.sub(&rhs);
        }
        if !p.done() {
            return Err(p.error("trailing input after relation"));
        }
        out.push(poly);
    }
    Ok(out)
}
