use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, IntMatrix, QMatrix};
use crate::rational::{format_q, q, serde_q, serde_q_vec, Q};

/// One half-space `<a, z> >= b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Inequality {
    #[serde(with = "serde_q_vec")]
    pub a: Vec<Q>,
    #[serde(with = "serde_q")]
    pub b: Q,
}

impl Inequality {
    pub fn new(a: Vec<Q>, b: Q) -> Self {
        Inequality { a, b }
    }

    pub fn from_ints(a: &[i64], b: i64) -> Self {
        Inequality { a: a.iter().map(|&v| q(v)).collect(), b: q(b) }
    }

    pub fn holds_at(&self, z: &[Q]) -> bool {
        linalg::dot(&self.a, z) >= self.b
    }

    pub fn holds_at_int(&self, z: &[i64]) -> bool {
        let lhs = self.a.iter().zip(z).fold(Q::zero(), |acc, (a, &v)| acc + a * q(v));
        lhs >= self.b
    }

    /// Scales to a canonical representative: integer coefficients with gcd
    /// 1 (positive multiple only, so the half-space is unchanged).
    pub fn normalized(&self) -> Inequality {
        let den = crate::rational::common_denominator(self.a.iter().chain(std::iter::once(&self.b)));
        let ints: Vec<num_bigint::BigInt> = self.a.iter().map(|v| (v * Q::from_integer(den.clone())).to_integer()).collect();
        let g = ints.iter().fold(num_bigint::BigInt::zero(), |acc, v| num_integer::Integer::gcd(&acc, v));
        let g = if g.is_zero() { num_bigint::BigInt::one() } else { g };
        let scale = Q::new(den, g);
        Inequality {
            a: self.a.iter().map(|v| v * &scale).collect(),
            b: &self.b * &scale,
        }
    }
}

/// A rational inequality system `{ z in R^dim : <a_i, z> >= b_i }`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HPolytope {
    pub dim: usize,
    pub inequalities: Vec<Inequality>,
}

impl HPolytope {
    pub fn new(dim: usize, inequalities: Vec<Inequality>) -> Result<Self> {
        for ineq in &inequalities {
            if ineq.a.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, got: ineq.a.len() });
            }
        }
        Ok(HPolytope { dim, inequalities })
    }

    /// Validates a deserialized document.
    pub fn validated(self) -> Result<Self> {
        HPolytope::new(self.dim, self.inequalities)
    }

    /// The box `lo <= z_i <= hi` in every coordinate.
    pub fn cube(dim: usize, lo: Q, hi: Q) -> Self {
        let mut ineqs = Vec::with_capacity(2 * dim);
        for i in 0..dim {
            let mut a = vec![Q::zero(); dim];
            a[i] = Q::one();
            ineqs.push(Inequality::new(a.clone(), lo.clone()));
            a[i] = -Q::one();
            ineqs.push(Inequality::new(a, -hi.clone()));
        }
        HPolytope { dim, inequalities: ineqs }
    }

    /// The single point `p`.
    pub fn point(p: &[Q]) -> Self {
        let dim = p.len();
        let mut ineqs = Vec::with_capacity(2 * dim);
        for (i, v) in p.iter().enumerate() {
            let mut a = vec![Q::zero(); dim];
            a[i] = Q::one();
            ineqs.push(Inequality::new(a.clone(), v.clone()));
            a[i] = -Q::one();
            ineqs.push(Inequality::new(a, -v.clone()));
        }
        HPolytope { dim, inequalities: ineqs }
    }

    pub fn contains(&self, z: &[Q]) -> bool {
        self.inequalities.iter().all(|i| i.holds_at(z))
    }

    pub fn contains_int(&self, z: &[i64]) -> bool {
        z.len() == self.dim && self.inequalities.iter().all(|i| i.holds_at_int(z))
    }

    /// `kP`: every offset scaled by `k`.
    pub fn dilate(&self, k: &Q) -> Result<HPolytope> {
        if k.is_negative() {
            return Err(Error::NegativeDilation(format_q(k)));
        }
        Ok(HPolytope {
            dim: self.dim,
            inequalities: self
                .inequalities
                .iter()
                .map(|i| Inequality::new(i.a.clone(), &i.b * k))
                .collect(),
        })
    }

    /// `{ w : M w + c in P }` for a rational `dim x dim'` matrix `M`.
    pub fn pullback(&self, m: &QMatrix, c: &[Q]) -> Result<HPolytope> {
        if m.len() != self.dim || c.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: m.len() });
        }
        let new_dim = m.first().map_or(0, |r| r.len());
        let mt = linalg::transpose(m);
        let inequalities = self
            .inequalities
            .iter()
            .map(|i| {
                let a = if self.dim == 0 { vec![Q::zero(); new_dim] } else { linalg::mat_vec(&mt, &i.a) };
                Inequality::new(a, &i.b - linalg::dot(&i.a, c))
            })
            .collect();
        Ok(HPolytope { dim: new_dim, inequalities })
    }

    /// `{ M z + c : z in P }` for a unimodular integer matrix `M`.
    pub fn affine_image(&self, m: &IntMatrix, c: &[Q]) -> Result<HPolytope> {
        if m.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: m.len() });
        }
        if c.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: c.len() });
        }
        let inv = linalg::to_q_matrix(&linalg::unimodular_inverse(m)?);
        // w = M z + c  <=>  z = M^{-1} w - M^{-1} c
        let shift: Vec<Q> = linalg::mat_vec(&inv, c).into_iter().map(|v| -v).collect();
        self.pullback(&inv, &shift)
    }

    /// Reorders coordinates: new coordinate `k` is old coordinate `perm[k]`.
    pub fn permute(&self, perm: &[usize]) -> Result<HPolytope> {
        let mut seen = vec![false; self.dim];
        if perm.len() != self.dim || perm.iter().any(|&p| p >= self.dim || std::mem::replace(&mut seen[p], true)) {
            return Err(Error::InvalidArgument("not a permutation of the coordinates".into()));
        }
        Ok(HPolytope {
            dim: self.dim,
            inequalities: self
                .inequalities
                .iter()
                .map(|i| Inequality::new(perm.iter().map(|&p| i.a[p].clone()).collect(), i.b.clone()))
                .collect(),
        })
    }

    /// The system with normalized inequalities, sorted and deduplicated.
    /// Two systems with equal canonical forms describe the same set.
    pub fn canonical(&self) -> HPolytope {
        let mut ineqs: Vec<Inequality> = self
            .inequalities
            .iter()
            .map(Inequality::normalized)
            .filter(|i| !(i.a.iter().all(Zero::is_zero) && !i.b.is_positive()))
            .collect();
        ineqs.sort();
        ineqs.dedup();
        HPolytope { dim: self.dim, inequalities: ineqs }
    }

    pub fn intersect(&self, other: &HPolytope) -> Result<HPolytope> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: other.dim });
        }
        let mut inequalities = self.inequalities.clone();
        inequalities.extend(other.inequalities.iter().cloned());
        Ok(HPolytope { dim: self.dim, inequalities })
    }
}
