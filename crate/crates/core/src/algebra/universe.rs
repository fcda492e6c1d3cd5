use std::fmt;

use crate::error::{Error, Result};

/// Variables `x[i,j]` (coordinates on the unipotent radical of SP(2n)),
/// Laurent variables `y[1..=r]` and the grading variable `t`.
///
/// Exponent vectors are laid out as `[x row-major..., y_1..y_r, t]` where
/// row-major means `x[1,2], x[1,3], .., x[1,2n], x[2,3], .., x[n,n+1]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Universe {
    n: usize,
    r: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variable {
    /// `x[i,j]` with `i < j` and `i + j <= 2n + 1`, 1-based.
    X(usize, usize),
    /// `y[k]`, 1-based.
    Y(usize),
    T,
}

impl Universe {
    pub fn new(n: usize, r: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("group rank n must be at least 1".into()));
        }
        Ok(Universe { n, r })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    /// Number of `x` variables, `n²`.
    pub fn num_x(&self) -> usize {
        self.n * self.n
    }

    /// Total number of variables `n² + r + 1`.
    pub fn len(&self) -> usize {
        self.num_x() + self.r + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn t_index(&self) -> usize {
        self.num_x() + self.r
    }

    pub fn y_index(&self, k: usize) -> Option<usize> {
        (1..=self.r).contains(&k).then(|| self.num_x() + k - 1)
    }

    /// Offset of row `i` in the row-major x layout.
    fn row_offset(&self, i: usize) -> usize {
        let two_n = 2 * self.n;
        (1..i).map(|row| two_n + 1 - 2 * row).sum()
    }

    pub fn is_legal_x(&self, i: usize, j: usize) -> bool {
        i >= 1 && i < j && i + j <= 2 * self.n + 1
    }

    pub fn x_index(&self, i: usize, j: usize) -> Option<usize> {
        self.is_legal_x(i, j).then(|| self.row_offset(i) + (j - i - 1))
    }

    /// The x-coordinates in storage (row-major) order.
    pub fn x_pairs(&self) -> Vec<(usize, usize)> {
        let two_n = 2 * self.n;
        (1..=self.n)
            .flat_map(|i| (i + 1..=two_n + 1 - i).map(move |j| (i, j)))
            .collect()
    }

    pub fn index_of(&self, v: Variable) -> Option<usize> {
        match v {
            Variable::X(i, j) => self.x_index(i, j),
            Variable::Y(k) => self.y_index(k),
            Variable::T => Some(self.t_index()),
        }
    }

    pub fn variable(&self, index: usize) -> Option<Variable> {
        if index < self.num_x() {
            let (i, j) = self.x_pairs()[index];
            Some(Variable::X(i, j))
        } else if index < self.t_index() {
            Some(Variable::Y(index - self.num_x() + 1))
        } else if index == self.t_index() {
            Some(Variable::T)
        } else {
            None
        }
    }

    pub fn variables(&self) -> Vec<Variable> {
        (0..self.len()).filter_map(|i| self.variable(i)).collect()
    }

    /// Only the y-variables may carry negative exponents.
    pub fn is_laurent(&self, index: usize) -> bool {
        index >= self.num_x() && index < self.t_index()
    }

    /// A universe with the same x-variables and no y-variables.
    pub fn x_only(&self) -> Universe {
        Universe { n: self.n, r: 0 }
    }
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Variable::X(i, j) => write!(f, "x[{i},{j}]"),
            Variable::Y(k) => write!(f, "y[{k}]"),
            Variable::T => write!(f, "t"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn x_count_is_n_squared() {
        for n in 1..=5 {
            let u = Universe::new(n, 0).unwrap();
            assert_eq!(u.x_pairs().len(), n * n);
            for (k, (i, j)) in u.x_pairs().into_iter().enumerate() {
                assert_eq!(u.x_index(i, j), Some(k));
            }
        }
    }

    #[test]
    fn layout() {
        let u = Universe::new(2, 1).unwrap();
        assert_eq!(
            u.x_pairs(),
            vec![(1, 2), (1, 3), (1, 4), (2, 3)]
        );
        assert_eq!(u.index_of(Variable::Y(1)), Some(4));
        assert_eq!(u.index_of(Variable::T), Some(5));
        assert_eq!(u.x_index(2, 4), None);
        assert_eq!(u.variable(5), Some(Variable::T));
        assert!(u.is_laurent(4) && !u.is_laurent(5) && !u.is_laurent(0));
    }
}
