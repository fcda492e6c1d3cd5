//! Text form of polynomials: `coef * x[i,j]^e * y[k]^e * t^e` terms joined by
//! ` + `, sorted descending in the term order. Exponents equal to 1 are
//! omitted; the zero polynomial prints as `0`.

use num_traits::{One, Zero};

use super::monomial::ExponentVector;
use super::order::TermOrder;
use super::poly::Polynomial;
use super::universe::{Universe, Variable};
use crate::error::{Error, Result};
use crate::rational::{format_q, parse_q, Q};

pub fn format_polynomial(p: &Polynomial, order: &TermOrder) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let u = *p.universe();
    p.terms_desc(order)
        .into_iter()
        .map(|(e, c)| format_term(&u, c, e))
        .collect::<Vec<_>>()
        .join(" + ")
}

fn format_term(u: &Universe, c: &Q, e: &ExponentVector) -> String {
    let mut s = format_q(c);
    for (idx, &k) in e.as_slice().iter().enumerate() {
        if k == 0 {
            continue;
        }
        let var = u.variable(idx).expect("index in universe");
        if k == 1 {
            s.push_str(&format!(" * {var}"));
        } else {
            s.push_str(&format!(" * {var}^{k}"));
        }
    }
    s
}

pub fn parse_polynomial(s: &str, universe: Universe) -> Result<Polynomial> {
    let mut p = Parser { chars: s.chars().collect(), pos: 0, universe };
    let poly = p.polynomial()?;
    p.skip_ws();
    if p.pos != p.chars.len() {
        return Err(p.err("trailing input"));
    }
    Ok(poly)
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
    universe: Universe,
}

impl Parser {
    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at offset {} in polynomial", self.pos))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn signs(&mut self) -> bool {
        let mut negative = false;
        loop {
            if self.eat('-') {
                negative = !negative;
            } else if !self.eat('+') {
                return negative;
            }
        }
    }

    fn polynomial(&mut self) -> Result<Polynomial> {
        let mut out = Polynomial::zero(self.universe);
        let mut first = true;
        loop {
            if self.peek().is_none() {
                if first {
                    return Err(self.err("empty polynomial"));
                }
                return Ok(out);
            }
            let negative = self.signs();
            let (c, e) = self.term()?;
            let c = if negative { -c } else { c };
            out.add_scaled(&Q::one(), &Polynomial::monomial(self.universe, c, e));
            first = false;
            match self.peek() {
                None => return Ok(out),
                Some('+') | Some('-') => continue,
                Some(_) => return Err(self.err("expected '+' or '-'")),
            }
        }
    }

    fn term(&mut self) -> Result<(Q, ExponentVector)> {
        let mut coef = Q::one();
        let mut exps = vec![0i64; self.universe.len()];
        loop {
            match self.peek() {
                Some(c) if c.is_ascii_digit() => {
                    let num = self.integer()?;
                    let v = if self.eat('/') {
                        let den = self.integer()?;
                        parse_q(&format!("{num}/{den}"))?
                    } else {
                        parse_q(&num)?
                    };
                    coef *= v;
                }
                Some('x') | Some('y') | Some('t') => {
                    let idx = self.variable()?;
                    let mut k = 1i64;
                    if self.eat('^') {
                        let negative = self.signs();
                        let mag: i64 = self.integer()?.parse().map_err(|_| self.err("exponent too large"))?;
                        k = if negative { -mag } else { mag };
                    }
                    exps[idx] += k;
                }
                _ => return Err(self.err("expected a coefficient or variable")),
            }
            if !self.eat('*') {
                break;
            }
        }
        if coef.is_zero() {
            return Ok((coef, ExponentVector::zero(&self.universe)));
        }
        Ok((coef, ExponentVector::new(&self.universe, &exps)?))
    }

    fn integer(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected digits"));
        }
        Ok(self.chars[start..self.pos].iter().collect())
    }

    fn index_list(&mut self) -> Result<Vec<usize>> {
        if !self.eat('[') {
            return Err(self.err("expected '['"));
        }
        let mut out = Vec::new();
        loop {
            out.push(self.integer()?.parse().map_err(|_| self.err("index too large"))?);
            if self.eat(']') {
                return Ok(out);
            }
            if !self.eat(',') {
                return Err(self.err("expected ',' or ']'"));
            }
        }
    }

    fn variable(&mut self) -> Result<usize> {
        let c = self.peek().expect("peeked");
        self.pos += 1;
        let var = match c {
            'x' => match self.index_list()?.as_slice() {
                [i, j] => Variable::X(*i, *j),
                _ => return Err(self.err("x takes two indices")),
            },
            'y' => match self.index_list()?.as_slice() {
                [k] => Variable::Y(*k),
                _ => return Err(self.err("y takes one index")),
            },
            _ => Variable::T,
        };
        self.universe
            .index_of(var)
            .ok_or_else(|| Error::Parse(format!("{var} is not a variable of this universe")))
    }
}
