use std::cmp::Ordering;

use super::monomial::ExponentVector;
use super::universe::Universe;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    LargerWins,
    SmallerWins,
}

/// A lexicographic term order given by a comparison schedule: variables are
/// compared in schedule order, each with its own direction.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TermOrder {
    universe: Universe,
    schedule: Vec<(usize, Direction)>,
}

impl TermOrder {
    /// The order used throughout: `t` first (larger wins), then
    /// `y_r, .., y_1` (larger wins), then the x-variables in the chain
    /// `x[1,2n], x[1,2n-1], .., x[1,2], x[2,2n-1], .., x[n,n+1]` where the
    /// smaller exponent wins. The constant monomial is the largest pure-x
    /// monomial.
    pub fn okounkov(universe: Universe) -> Self {
        let mut schedule = Vec::with_capacity(universe.len());
        schedule.push((universe.t_index(), Direction::LargerWins));
        for k in (1..=universe.r()).rev() {
            schedule.push((universe.y_index(k).expect("y in range"), Direction::LargerWins));
        }
        for (i, j) in x_chain(&universe) {
            schedule.push((universe.x_index(i, j).expect("legal x"), Direction::SmallerWins));
        }
        TermOrder { universe, schedule }
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn schedule(&self) -> &[(usize, Direction)] {
        &self.schedule
    }

    /// Checked comparison; rejects vectors from a different universe.
    pub fn compare(&self, a: &ExponentVector, b: &ExponentVector) -> Result<Ordering> {
        let len = self.universe.len();
        if a.len() != len || b.len() != len {
            return Err(Error::UniverseMismatch(format!(
                "order expects {len} variables, got {} and {}",
                a.len(),
                b.len()
            )));
        }
        Ok(self.cmp(a, b))
    }

    /// Unchecked comparison for vectors known to share the universe.
    pub fn cmp(&self, a: &ExponentVector, b: &ExponentVector) -> Ordering {
        let (a, b) = (a.as_slice(), b.as_slice());
        for &(idx, dir) in &self.schedule {
            let ord = a[idx].cmp(&b[idx]);
            if ord != Ordering::Equal {
                return match dir {
                    Direction::LargerWins => ord,
                    Direction::SmallerWins => ord.reverse(),
                };
            }
        }
        Ordering::Equal
    }

    pub fn max<'a>(&self, mut it: impl Iterator<Item = &'a ExponentVector>) -> Option<&'a ExponentVector> {
        let first = it.next()?;
        Some(it.fold(first, |best, e| if self.cmp(e, best) == Ordering::Greater { e } else { best }))
    }

    /// Sorts descending (largest first).
    pub fn sort_desc(&self, v: &mut [ExponentVector]) {
        v.sort_by(|a, b| self.cmp(b, a));
    }
}

/// x-variables from highest to lowest comparison priority, which is the
/// chain `x[1,2n] < x[1,2n-1] < .. < x[1,2] < x[2,2n-1] < .. < x[n,n+1]` read
/// as monomials.
pub fn x_chain(universe: &Universe) -> Vec<(usize, usize)> {
    let two_n = 2 * universe.n();
    (1..=universe.n())
        .flat_map(|i| (i + 1..=two_n + 1 - i).rev().map(move |j| (i, j)))
        .collect()
}
