use std::ops::Add;

use smallvec::SmallVec;

use super::universe::Universe;
use crate::error::{Error, Result};

/// Integer exponents in the layout of a [`Universe`]. Construction through
/// [`ExponentVector::new`] enforces nonnegativity of the x- and t-entries.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExponentVector(SmallVec<[i32; 16]>);

impl ExponentVector {
    pub fn new(universe: &Universe, exps: &[i64]) -> Result<Self> {
        if exps.len() != universe.len() {
            return Err(Error::DimensionMismatch { expected: universe.len(), got: exps.len() });
        }
        let mut out = SmallVec::with_capacity(exps.len());
        for (idx, &e) in exps.iter().enumerate() {
            if e < 0 && !universe.is_laurent(idx) {
                let variable = universe.variable(idx).map(|v| v.to_string()).unwrap_or_default();
                return Err(Error::NegativeExponent { variable, exponent: e });
            }
            out.push(i32::try_from(e).map_err(|_| Error::Overflow("building an exponent vector"))?);
        }
        Ok(ExponentVector(out))
    }

    pub fn zero(universe: &Universe) -> Self {
        ExponentVector(SmallVec::from_elem(0, universe.len()))
    }

    /// Unit vector of the variable stored at `index`.
    pub fn unit(universe: &Universe, index: usize) -> Self {
        let mut v = Self::zero(universe);
        v.0[index] = 1;
        v
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[i32] {
        &self.0
    }

    pub fn get(&self, index: usize) -> i32 {
        self.0[index]
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn to_i64_vec(&self) -> Vec<i64> {
        self.0.iter().map(|&e| e as i64).collect()
    }

    pub fn add(&self, other: &ExponentVector) -> ExponentVector {
        debug_assert_eq!(self.len(), other.len());
        ExponentVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &ExponentVector) -> ExponentVector {
        debug_assert_eq!(self.len(), other.len());
        ExponentVector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, k: i32) -> ExponentVector {
        ExponentVector(self.0.iter().map(|a| a * k).collect())
    }
}

impl Add for &ExponentVector {
    type Output = ExponentVector;

    fn add(self, rhs: &ExponentVector) -> ExponentVector {
        ExponentVector::add(self, rhs)
    }
}
