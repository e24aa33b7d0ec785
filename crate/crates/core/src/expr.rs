//! Expressions over basis names:
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := rational | ident | factor '^' uint | '(' expr ')' | '-' factor
//! ```
//!
//! Products keep their order; whether they are read in `U(g)` or `S(g)` is
//! up to the caller.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lie::CosetSetup;
use crate::linalg::{format_rational, parse_rational, Rational};
use crate::pbw::PbwElement;
use crate::sym::SymPoly;

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    /// nonnegative literal
    Num(Rational),
    Ident {
        name: String,
        offset: usize,
    },
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
    Neg(Box<Expr>),
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, offset: usize, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { offset, message: message.into() })
    }

    fn skip_ws(&mut self) {
        let rest = &self.src[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn take_while(&mut self, f: impl Fn(char) -> bool) -> &'a str {
        let rest = &self.src[self.pos..];
        let len = rest.find(|c: char| !f(c)).unwrap_or(rest.len());
        self.pos += len;
        &rest[..len]
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.factor()?;
        while self.eat('*') {
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.factor()?));
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<Expr> {
        let mut base = self.atom()?;
        while self.eat('^') {
            self.skip_ws();
            let at = self.pos;
            let digits = self.take_while(|c| c.is_ascii_digit());
            if digits.is_empty() {
                return self.err(at, "expected a nonnegative integer exponent");
            }
            let Ok(k) = digits.parse() else {
                return self.err(at, "exponent too large");
            };
            base = Expr::Pow(Box::new(base), k);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        let Some(c) = self.peek() else {
            return self.err(self.pos, "unexpected end of input");
        };
        let at = self.pos;
        if c == '(' {
            self.pos += 1;
            let inner = self.expr()?;
            if !self.eat(')') {
                return self.err(self.pos, "expected `)`");
            }
            Ok(inner)
        } else if c == '-' {
            self.pos += 1;
            Ok(Expr::Neg(Box::new(self.factor()?)))
        } else if c.is_ascii_digit() {
            let mut lit = self.take_while(|c| c.is_ascii_digit()).to_string();
            if self.src[self.pos..].starts_with('/') {
                self.pos += 1;
                let den = self.take_while(|c| c.is_ascii_digit());
                if den.is_empty() {
                    return self.err(self.pos, "expected a denominator");
                }
                lit = format!("{lit}/{den}");
            }
            match parse_rational(&lit) {
                Some(q) => Ok(Expr::Num(q)),
                None => self.err(at, format!("invalid rational `{lit}`")),
            }
        } else if c.is_alphabetic() || c == '_' {
            let name = self.take_while(|c| c.is_alphanumeric() || c == '_' || c == '\'');
            Ok(Expr::Ident { name: name.to_string(), offset: at })
        } else {
            self.err(at, format!("unexpected `{c}`"))
        }
    }
}

/// Parses `text` without resolving identifiers.
pub fn parse(text: &str) -> Result<Expr> {
    let mut p = Parser { src: text, pos: 0 };
    let e = p.expr()?;
    if p.peek().is_some() {
        return p.err(p.pos, "unexpected trailing input");
    }
    Ok(e)
}

/// Parses `text` and checks every identifier against `vocab`.
pub fn parse_expr(text: &str, vocab: &Vocabulary) -> Result<Expr> {
    let e = parse(text)?;
    e.check(vocab)?;
    Ok(e)
}

impl Expr {
    fn check(&self, vocab: &Vocabulary) -> Result<()> {
        match self {
            Expr::Num(_) => Ok(()),
            Expr::Ident { name, offset } => match vocab.get(name) {
                Some(_) => Ok(()),
                None => Err(Error::UnknownIdentifier { name: name.clone(), offset: *offset }),
            },
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => {
                a.check(vocab)?;
                b.check(vocab)
            }
            Expr::Pow(a, _) | Expr::Neg(a) => a.check(vocab),
        }
    }

    fn eval<R: Ring>(&self, ring: &R) -> R::T {
        match self {
            Expr::Num(q) => ring.constant(q),
            Expr::Ident { name, .. } => ring.ident(name),
            Expr::Add(a, b) => ring.add(&a.eval(ring), &b.eval(ring)),
            Expr::Sub(a, b) => ring.add(&a.eval(ring), &ring.neg(&b.eval(ring))),
            Expr::Mul(a, b) => ring.mul(&a.eval(ring), &b.eval(ring)),
            Expr::Neg(a) => ring.neg(&a.eval(ring)),
            Expr::Pow(a, k) => {
                let base = a.eval(ring);
                (0..*k).fold(ring.constant(&Rational::one()), |acc, _| ring.mul(&acc, &base))
            }
        }
    }

    /// Expansion into words of identifiers with their coefficients, in the
    /// free algebra.
    pub fn words(&self) -> Vec<(Rational, Vec<String>)> {
        self.eval(&Words).into_iter().map(|(w, c)| (c, w)).collect()
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 0,
            Expr::Mul(..) => 1,
            Expr::Neg(..) => 2,
            Expr::Pow(..) => 3,
            Expr::Num(_) | Expr::Ident { .. } => 4,
        }
    }

    fn write_at(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.precedence() < min {
            write!(f, "(")?;
            self.write_at(f, 0)?;
            return write!(f, ")");
        }
        match self {
            Expr::Num(q) => write!(f, "{}", format_rational(q)),
            Expr::Ident { name, .. } => write!(f, "{name}"),
            Expr::Add(a, b) | Expr::Sub(a, b) => {
                a.write_at(f, 0)?;
                write!(f, " {} ", if matches!(self, Expr::Add(..)) { '+' } else { '-' })?;
                b.write_at(f, 1)
            }
            Expr::Mul(a, b) => {
                a.write_at(f, 1)?;
                write!(f, "*")?;
                b.write_at(f, 2)
            }
            Expr::Neg(a) => {
                write!(f, "-")?;
                a.write_at(f, 2)
            }
            Expr::Pow(a, k) => {
                a.write_at(f, 3)?;
                write!(f, "^{k}")
            }
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_at(f, 0)
    }
}

trait Ring {
    type T;
    fn constant(&self, q: &Rational) -> Self::T;
    fn ident(&self, name: &str) -> Self::T;
    fn add(&self, a: &Self::T, b: &Self::T) -> Self::T;
    fn neg(&self, a: &Self::T) -> Self::T;
    fn mul(&self, a: &Self::T, b: &Self::T) -> Self::T;
}

struct Words;

type WordPoly = BTreeMap<Vec<String>, Rational>;

impl Ring for Words {
    type T = WordPoly;

    fn constant(&self, q: &Rational) -> WordPoly {
        if q.is_zero() {
            WordPoly::new()
        } else {
            WordPoly::from([(Vec::new(), q.clone())])
        }
    }

    fn ident(&self, name: &str) -> WordPoly {
        WordPoly::from([(vec![name.to_string()], Rational::one())])
    }

    fn add(&self, a: &WordPoly, b: &WordPoly) -> WordPoly {
        let mut out = a.clone();
        for (w, c) in b {
            let e = out.entry(w.clone()).or_insert_with(Rational::zero);
            *e += c;
            if e.is_zero() {
                out.remove(w);
            }
        }
        out
    }

    fn neg(&self, a: &WordPoly) -> WordPoly {
        a.iter().map(|(w, c)| (w.clone(), -c.clone())).collect()
    }

    fn mul(&self, a: &WordPoly, b: &WordPoly) -> WordPoly {
        let mut out = WordPoly::new();
        for (wa, ca) in a {
            for (wb, cb) in b {
                let w: Vec<String> = wa.iter().chain(wb).cloned().collect();
                out = self.add(&out, &WordPoly::from([(w, ca * cb)]));
            }
        }
        out
    }
}

/// Identifier table: every name maps to a vector in the original basis of
/// `g`. Holds the basis names and the adapted names of a setup.
#[derive(Debug, Clone)]
pub struct Vocabulary {
    entries: BTreeMap<String, Vec<Rational>>,
}

impl Vocabulary {
    pub fn from_setup(setup: &CosetSetup) -> Result<Self> {
        let n = setup.n();
        let mut entries = BTreeMap::new();
        for (i, name) in setup.algebra().names().iter().enumerate() {
            entries.insert(name.clone(), crate::lie::one_hot(n, i));
        }
        for (i, name) in setup.adapted_names().iter().enumerate() {
            let v = setup.from_adapted(&crate::lie::one_hot(n, i));
            if let Some(old) = entries.get(name) {
                if *old != v {
                    return Err(Error::Format(format!("name `{name}` denotes two different vectors")));
                }
            }
            entries.insert(name.clone(), v);
        }
        Ok(Self { entries })
    }

    pub fn get(&self, name: &str) -> Option<&[Rational]> {
        self.entries.get(name).map(Vec::as_slice)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.entries.keys().map(String::as_str)
    }
}

struct InU<'a> {
    setup: &'a CosetSetup,
    vocab: &'a Vocabulary,
}

impl Ring for InU<'_> {
    type T = PbwElement;

    fn constant(&self, q: &Rational) -> PbwElement {
        PbwElement::scalar(self.setup.n(), q.clone())
    }

    fn ident(&self, name: &str) -> PbwElement {
        PbwElement::from_vector(&self.setup.to_adapted(self.vocab.get(name).expect("checked identifier")))
    }

    fn add(&self, a: &PbwElement, b: &PbwElement) -> PbwElement {
        a.add(b)
    }

    fn neg(&self, a: &PbwElement) -> PbwElement {
        a.scale(&-Rational::one())
    }

    fn mul(&self, a: &PbwElement, b: &PbwElement) -> PbwElement {
        self.setup.env().mul(a, b)
    }
}

struct InS<'a> {
    setup: &'a CosetSetup,
    vocab: &'a Vocabulary,
}

impl Ring for InS<'_> {
    type T = SymPoly;

    fn constant(&self, q: &Rational) -> SymPoly {
        SymPoly::constant(self.setup.n(), q.clone())
    }

    fn ident(&self, name: &str) -> SymPoly {
        SymPoly::linear(&self.setup.to_adapted(self.vocab.get(name).expect("checked identifier")))
    }

    fn add(&self, a: &SymPoly, b: &SymPoly) -> SymPoly {
        a + b
    }

    fn neg(&self, a: &SymPoly) -> SymPoly {
        -a
    }

    fn mul(&self, a: &SymPoly, b: &SymPoly) -> SymPoly {
        a * b
    }
}

/// Evaluates in `U(g)`, in PBW normal form over the adapted basis.
pub fn eval_enveloping(e: &Expr, setup: &CosetSetup, vocab: &Vocabulary) -> Result<PbwElement> {
    e.check(vocab)?;
    Ok(e.eval(&InU { setup, vocab }))
}

/// Evaluates in `S(g)` over the adapted variables.
pub fn eval_symmetric(e: &Expr, setup: &CosetSetup, vocab: &Vocabulary) -> Result<SymPoly> {
    e.check(vocab)?;
    Ok(e.eval(&InS { setup, vocab }))
}

/// Evaluates in `S(m)`; fails if `h`-variables survive.
pub fn eval_in_sm(e: &Expr, setup: &CosetSetup, vocab: &Vocabulary) -> Result<SymPoly> {
    let p = eval_symmetric(e, setup, vocab)?;
    let r = setup.r();
    if p.terms().keys().any(|m| m.exps()[r..].iter().any(|&x| x > 0)) {
        return Err(Error::Format(format!("`{e}` is not a polynomial on m")));
    }
    Ok(p.restrict(r))
}
