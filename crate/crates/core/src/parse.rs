//! Text syntax for polynomials.
//!
//! Terms are separated by `+` or `-`. A term is an optional rational
//! coefficient (`3`, `3/2`) joined by `*` to variable powers: `x0^k`,
//! `x1^k`, `x2^k` for forms, or `x^k`, `y^k` for affine polynomials.
//! Whitespace is ignored. The two variable families cannot be mixed.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::Error;
use crate::poly::{Exponents, HomPoly, LocalPoly};
use crate::scalar::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Parsed {
    Hom(HomPoly<Rational>),
    Local(LocalPoly<Rational>),
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Family {
    Projective,
    Affine,
}

struct Term {
    coeff: Rational,
    exps: [u32; 3],
    family: Option<Family>,
}

struct Parser<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    src: &'a str,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Parser {
            chars: src.char_indices().filter(|(_, c)| !c.is_whitespace()).collect(),
            pos: 0,
            src,
        }
    }

    fn offset(&self) -> usize {
        self.chars.get(self.pos).map_or(self.src.len(), |(i, _)| *i)
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|(_, c)| *c)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, Error> {
        Err(Error::Parse {
            pos: self.offset(),
            msg: msg.into(),
        })
    }

    fn sign(&mut self) -> Option<bool> {
        match self.peek() {
            Some('+') => {
                self.pos += 1;
                Some(false)
            }
            Some('-') | Some('−') => {
                self.pos += 1;
                Some(true)
            }
            _ => None,
        }
    }

    fn integer(&mut self) -> Result<BigInt, Error> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a number");
        }
        let digits: String = self.chars[start..self.pos].iter().map(|(_, c)| c).collect();
        Ok(digits.parse().expect("ascii digits"))
    }

    fn exponent(&mut self) -> Result<u32, Error> {
        if self.peek() != Some('^') {
            return Ok(1);
        }
        self.pos += 1;
        let at = self.offset();
        let e = self.integer()?;
        u32::try_from(e).map_err(|_| Error::Parse {
            pos: at,
            msg: "exponent too large".into(),
        })
    }

    fn factor(&mut self, term: &mut Term) -> Result<(), Error> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let num = self.integer()?;
                let den = if self.peek() == Some('/') {
                    self.pos += 1;
                    let at = self.offset();
                    let d = self.integer()?;
                    if d.is_zero() {
                        return Err(Error::Parse {
                            pos: at,
                            msg: "zero denominator".into(),
                        });
                    }
                    d
                } else {
                    BigInt::one()
                };
                term.coeff = term.coeff.clone() * Rational::new(num, den);
                Ok(())
            }
            Some('x') | Some('y') => {
                let at = self.offset();
                let first = self.peek().unwrap();
                self.pos += 1;
                let (family, var) = if first == 'y' {
                    (Family::Affine, 1)
                } else {
                    match self.peek() {
                        Some(d @ '0'..='2') => {
                            self.pos += 1;
                            (Family::Projective, d as usize - '0' as usize)
                        }
                        Some(d) if d.is_ascii_digit() => {
                            return self.err(format!("unknown variable x{d}"));
                        }
                        _ => (Family::Affine, 0),
                    }
                };
                if let Some(f) = term.family {
                    if f != family {
                        return Err(Error::Parse {
                            pos: at,
                            msg: "cannot mix x0,x1,x2 with x,y".into(),
                        });
                    }
                }
                term.family = Some(family);
                let e = self.exponent()?;
                term.exps[var] += e;
                Ok(())
            }
            Some(c) => self.err(format!("unexpected character `{c}`")),
            None => self.err("unexpected end of input"),
        }
    }

    fn term(&mut self, negative: bool) -> Result<Term, Error> {
        let mut t = Term {
            coeff: if negative { -Rational::one() } else { Rational::one() },
            exps: [0; 3],
            family: None,
        };
        self.factor(&mut t)?;
        while self.peek() == Some('*') {
            self.pos += 1;
            self.factor(&mut t)?;
        }
        Ok(t)
    }

    fn terms(&mut self) -> Result<Vec<(Term, usize)>, Error> {
        if self.chars.is_empty() {
            return self.err("empty polynomial");
        }
        let mut out = Vec::new();
        let mut neg = self.sign().unwrap_or(false);
        loop {
            let at = self.offset();
            out.push((self.term(neg)?, at));
            match self.sign() {
                Some(n) => neg = n,
                None if self.peek().is_none() => break,
                None => return self.err("expected `+`, `-` or `*`"),
            }
        }
        Ok(out)
    }
}

fn family_of(terms: &[(Term, usize)]) -> Result<Option<Family>, Error> {
    let mut fam = None;
    for (t, at) in terms {
        match (fam, t.family) {
            (Some(a), Some(b)) if a != b => {
                return Err(Error::Parse {
                    pos: *at,
                    msg: "cannot mix x0,x1,x2 with x,y".into(),
                })
            }
            (None, Some(b)) => fam = Some(b),
            _ => {}
        }
    }
    Ok(fam)
}

fn build_hom(terms: Vec<(Term, usize)>) -> Result<HomPoly<Rational>, Error> {
    let degree = terms
        .iter()
        .find(|(t, _)| t.family.is_some())
        .map_or(0, |(t, _)| t.exps.iter().sum::<u32>() as usize);
    let pairs: Vec<(Rational, Exponents)> = terms.into_iter().map(|(t, _)| (t.coeff, t.exps)).collect();
    HomPoly::from_terms(degree, &pairs)
}

fn build_local(terms: Vec<(Term, usize)>) -> LocalPoly<Rational> {
    let pairs: Vec<(Rational, (u32, u32))> = terms
        .into_iter()
        .map(|(t, _)| (t.coeff, (t.exps[0], t.exps[1])))
        .collect();
    LocalPoly::from_terms(&pairs)
}

/// Parses either kind of polynomial, choosing by the variables used.
/// Input without variables is read as a constant form.
pub fn parse(text: &str) -> Result<Parsed, Error> {
    let terms = Parser::new(text).terms()?;
    match family_of(&terms)? {
        Some(Family::Affine) => Ok(Parsed::Local(build_local(terms))),
        _ => Ok(Parsed::Hom(build_hom(terms)?)),
    }
}

pub fn parse_hom(text: &str) -> Result<HomPoly<Rational>, Error> {
    let terms = Parser::new(text).terms()?;
    if family_of(&terms)? == Some(Family::Affine) {
        return Err(Error::Parse {
            pos: 0,
            msg: "expected a form in x0, x1, x2".into(),
        });
    }
    build_hom(terms)
}

pub fn parse_local(text: &str) -> Result<LocalPoly<Rational>, Error> {
    let terms = Parser::new(text).terms()?;
    if family_of(&terms)? == Some(Family::Projective) {
        return Err(Error::Parse {
            pos: 0,
            msg: "expected a polynomial in x, y".into(),
        });
    }
    Ok(build_local(terms))
}
