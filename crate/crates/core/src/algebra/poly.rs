use std::collections::{BTreeMap, HashMap};
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::monomial::ExponentVector;
use super::order::TermOrder;
use super::universe::{Universe, Variable};
use crate::error::{Error, Result};
use crate::rational::Q;

/// A Laurent polynomial with exact rational coefficients. No zero
/// coefficient is ever stored, so structural equality is polynomial
/// equality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    universe: Universe,
    terms: BTreeMap<ExponentVector, Q>,
}

impl Polynomial {
    pub fn zero(universe: Universe) -> Self {
        Polynomial { universe, terms: BTreeMap::new() }
    }

    pub fn one(universe: Universe) -> Self {
        Self::constant(universe, Q::one())
    }

    pub fn constant(universe: Universe, c: Q) -> Self {
        Self::monomial(universe, c, ExponentVector::zero(&universe))
    }

    pub fn monomial(universe: Universe, c: Q, e: ExponentVector) -> Self {
        debug_assert_eq!(e.len(), universe.len());
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        Polynomial { universe, terms }
    }

    pub fn variable(universe: Universe, v: Variable) -> Result<Self> {
        let idx = universe
            .index_of(v)
            .ok_or_else(|| Error::InvalidArgument(format!("{v} is not a variable of this universe")))?;
        Ok(Self::monomial(universe, Q::one(), ExponentVector::unit(&universe, idx)))
    }

    pub fn x(universe: Universe, i: usize, j: usize) -> Result<Self> {
        Self::variable(universe, Variable::X(i, j))
    }

    /// Builds from (coefficient, exponent) pairs, merging repeats.
    pub fn from_terms(universe: Universe, terms: impl IntoIterator<Item = (Q, ExponentVector)>) -> Self {
        let mut p = Self::zero(universe);
        for (c, e) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, e: &ExponentVector) -> Q {
        self.terms.get(e).cloned().unwrap_or_else(Q::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExponentVector, &Q)> {
        self.terms.iter()
    }

    pub fn exponents(&self) -> impl Iterator<Item = &ExponentVector> {
        self.terms.keys()
    }

    /// Terms sorted descending in `order`.
    pub fn terms_desc(&self, order: &TermOrder) -> Vec<(&ExponentVector, &Q)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| order.cmp(b.0, a.0));
        v
    }

    fn add_term(&mut self, e: ExponentVector, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    fn check_universe(&self, other: &Polynomial) {
        assert_eq!(
            self.universe, other.universe,
            "polynomials from different variable universes"
        );
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        if self.universe != other.universe {
            return Err(Error::UniverseMismatch(format!("{:?} vs {:?}", self.universe, other.universe)));
        }
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Polynomial) -> Polynomial {
        let (small, large) = if self.num_terms() <= other.num_terms() { (self, other) } else { (other, self) };
        if small.num_terms() == 1 {
            let (e, c) = small.terms.iter().next().expect("one term");
            return large.mul_term(c, e);
        }
        let mut acc: HashMap<ExponentVector, Q> = HashMap::with_capacity(self.num_terms() * other.num_terms());
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e = e1.add(e2);
                let prod = c1 * c2;
                acc.entry(e).and_modify(|c| *c += &prod).or_insert(prod);
            }
        }
        Polynomial {
            universe: self.universe,
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    /// `c * x^e * self`.
    pub fn mul_term(&self, c: &Q, e: &ExponentVector) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.universe);
        }
        Polynomial {
            universe: self.universe,
            terms: self.terms.iter().map(|(e0, c0)| (e0.add(e), c0 * c)).collect(),
        }
    }

    pub fn scale(&self, c: &Q) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.universe);
        }
        Polynomial {
            universe: self.universe,
            terms: self.terms.iter().map(|(e, c0)| (e.clone(), c0 * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut out = Polynomial::one(self.universe);
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// In-place `self -= c * other`.
    pub fn sub_scaled(&mut self, c: &Q, other: &Polynomial) {
        self.check_universe(other);
        for (e, c0) in &other.terms {
            self.add_term(e.clone(), -(c0 * c));
        }
    }

    /// In-place `self += c * other`.
    pub fn add_scaled(&mut self, c: &Q, other: &Polynomial) {
        self.check_universe(other);
        for (e, c0) in &other.terms {
            self.add_term(e.clone(), c0 * c);
        }
    }

    /// The largest term in `order`.
    pub fn initial_term(&self, order: &TermOrder) -> Result<(Q, ExponentVector)> {
        if *order.universe() != self.universe {
            return Err(Error::UniverseMismatch("polynomial and term order".into()));
        }
        let e = order.max(self.terms.keys()).ok_or(Error::ZeroPolynomial)?;
        Ok((self.terms[e].clone(), e.clone()))
    }

    pub(crate) fn initial_unchecked(&self, order: &TermOrder) -> Option<(&ExponentVector, &Q)> {
        let e = order.max(self.terms.keys())?;
        Some((e, &self.terms[e]))
    }

    /// Makes the initial coefficient 1.
    pub fn monic(&self, order: &TermOrder) -> Polynomial {
        match self.initial_unchecked(order) {
            Some((_, c)) => {
                let inv = c.recip();
                self.scale(&inv)
            }
            None => self.clone(),
        }
    }

    /// Re-homes an x-only polynomial into a larger universe, multiplying by
    /// `y^y_exps * t^t_exp`.
    pub fn lift(&self, target: Universe, y_exps: &[i64], t_exp: i64) -> Result<Polynomial> {
        if self.universe.n() != target.n() || self.universe.r() != 0 {
            return Err(Error::UniverseMismatch("lift expects an x-only polynomial of the same rank".into()));
        }
        if y_exps.len() != target.r() {
            return Err(Error::DimensionMismatch { expected: target.r(), got: y_exps.len() });
        }
        let nx = target.num_x();
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut full: Vec<i64> = e.as_slice()[..nx].iter().map(|&v| v as i64).collect();
            full.extend_from_slice(y_exps);
            full.push(t_exp);
            terms.insert(ExponentVector::new(&target, &full)?, c.clone());
        }
        Ok(Polynomial { universe: target, terms })
    }

    /// Applies `f` to every (exponent, coefficient) pair; exponents must stay
    /// distinct.
    pub fn map_coefficients(&self, mut f: impl FnMut(&ExponentVector, &Q) -> Q) -> Polynomial {
        Polynomial {
            universe: self.universe,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), f(e, c)))
                .filter(|(_, c)| !c.is_zero())
                .collect(),
        }
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out.add_scaled(&Q::one(), rhs);
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out.sub_scaled(&Q::one(), rhs);
        out
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.check_universe(rhs);
        self.mul_unchecked(rhs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        self.scale(&-Q::one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn u() -> Universe {
        Universe::new(2, 1).unwrap()
    }

    #[test]
    fn multiplication_examples() {
        let u = u();
        let x12 = Polynomial::x(u, 1, 2).unwrap();
        let one = Polynomial::one(u);
        assert_eq!(&x12 * &one, x12);
        let sq = &x12 * &x12;
        assert_eq!(sq.num_terms(), 1);
        assert_eq!(sq.coefficient(&ExponentVector::unit(&u, 0).scale(2)), q(1));
        let prod = &(&one - &x12) * &(&one + &x12);
        assert_eq!(prod, &one - &sq);
    }

    #[test]
    fn initial_terms() {
        let u = u();
        let o = TermOrder::okounkov(u);
        let x12 = Polynomial::x(u, 1, 2).unwrap();
        let f = &Polynomial::one(u) + &x12;
        assert_eq!(f.initial_term(&o).unwrap(), (q(1), ExponentVector::zero(&u)));
        let t = Polynomial::variable(u, Variable::T).unwrap();
        let y = Polynomial::variable(u, Variable::Y(1)).unwrap();
        let g = &t.scale(&q(3)) + &y;
        assert_eq!(g.initial_term(&o).unwrap(), (q(3), ExponentVector::unit(&u, u.t_index())));
        assert_eq!(Polynomial::zero(u).initial_term(&o), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn zero_coefficients_are_dropped() {
        let u = u();
        let x = Polynomial::x(u, 1, 3).unwrap();
        assert!((&x - &x).is_zero());
        assert_eq!(x.scale(&q(0)).num_terms(), 0);
    }

    #[test]
    fn lift_into_larger_universe() {
        let small = Universe::new(1, 0).unwrap();
        let big = Universe::new(1, 2).unwrap();
        let f = &Polynomial::one(small) - &Polynomial::x(small, 1, 2).unwrap();
        let g = f.lift(big, &[2, -1], 1).unwrap();
        assert_eq!(g.num_terms(), 2);
        assert_eq!(g.coefficient(&ExponentVector::new(&big, &[0, 2, -1, 1]).unwrap()), q(1));
        assert_eq!(g.coefficient(&ExponentVector::new(&big, &[1, 2, -1, 1]).unwrap()), q(-1));
    }
}
