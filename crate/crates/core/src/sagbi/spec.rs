use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::algebra::Universe;
use crate::error::{Error, Result};
use crate::gc::{fibered_polytope, weyl_dim, DominantWeight, NewtonVariant};
use crate::linalg::{self, QMatrix};
use crate::polyhedra::{convex_hull, lattice_points, ConeOverPolytope, HPolytope};
use crate::rational::{q, serde_q_vecs, to_i64, Q};

/// A horospherical SP(2n)-variety given by its degree-one decomposition
/// `R_1 = ⊕ V_{λ_i}`, a sublattice `Λ'` (basis vectors in weight
/// coordinates) containing every `λ_i`, and the moment polytope's vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "SpecDoc", into = "SpecDoc")]
pub struct HoroVarietySpec {
    n: usize,
    weights: Vec<Vec<i64>>,
    lattice: Vec<Vec<i64>>,
    moment_vertices: Vec<Vec<Q>>,
    // derived
    weight_coords: Vec<Vec<i64>>,
    moment: HPolytope,
}

#[derive(Clone, Serialize, Deserialize)]
struct SpecDoc {
    n: usize,
    weights: Vec<Vec<i64>>,
    lattice: Vec<Vec<i64>>,
    #[serde(with = "serde_q_vecs")]
    moment_vertices: Vec<Vec<Q>>,
}

impl TryFrom<SpecDoc> for HoroVarietySpec {
    type Error = Error;
    fn try_from(d: SpecDoc) -> Result<Self> {
        HoroVarietySpec::new(d.n, d.weights, d.lattice, d.moment_vertices)
    }
}

impl From<HoroVarietySpec> for SpecDoc {
    fn from(s: HoroVarietySpec) -> Self {
        SpecDoc { n: s.n, weights: s.weights, lattice: s.lattice, moment_vertices: s.moment_vertices }
    }
}

fn lattice_matrix(n: usize, basis: &[Vec<i64>]) -> QMatrix {
    (0..n).map(|i| basis.iter().map(|b| q(b[i])).collect()).collect()
}

impl HoroVarietySpec {
    pub fn new(n: usize, weights: Vec<Vec<i64>>, lattice: Vec<Vec<i64>>, moment_vertices: Vec<Vec<Q>>) -> Result<Self> {
        Universe::new(n, 0)?;
        if weights.is_empty() {
            return Err(Error::InvalidArgument("a spec needs at least one weight".into()));
        }
        for w in &weights {
            if w.len() != n {
                return Err(Error::DimensionMismatch { expected: n, got: w.len() });
            }
            DominantWeight::sp(w)?;
        }
        for (i, w) in weights.iter().enumerate() {
            if weights[..i].contains(w) {
                return Err(Error::InvalidArgument(format!("weight {w:?} listed twice")));
            }
        }
        if lattice.iter().any(|b| b.len() != n) {
            return Err(Error::InvalidArgument(format!("lattice basis vectors must have length {n}")));
        }
        let l = lattice_matrix(n, &lattice);
        let r = lattice.len();
        if r > 0 && linalg::rank(&l) != r {
            return Err(Error::InvalidArgument("lattice basis vectors are linearly dependent".into()));
        }
        let coords = |v: &[Q]| -> Option<Vec<Q>> {
            if r == 0 {
                return v.iter().all(Zero::is_zero).then(Vec::new);
            }
            solve_overdetermined(&l, v)
        };
        let weight_coords = weights
            .iter()
            .map(|w| {
                let c = coords(&w.iter().map(|&v| q(v)).collect::<Vec<_>>())
                    .ok_or_else(|| Error::InvalidArgument(format!("weight {w:?} is not in the span of the lattice")))?;
                c.iter()
                    .map(to_i64)
                    .collect::<Option<Vec<_>>>()
                    .ok_or_else(|| Error::NotIntegral(format!("weight {w:?} is not in the lattice")))
            })
            .collect::<Result<Vec<_>>>()?;
        if moment_vertices.is_empty() {
            return Err(Error::InvalidArgument("moment polytope needs at least one vertex".into()));
        }
        let moment_coords = moment_vertices
            .iter()
            .map(|v| {
                if v.len() != n {
                    return Err(Error::DimensionMismatch { expected: n, got: v.len() });
                }
                DominantWeight::new(crate::gc::Group::Sp, v.clone())?;
                coords(v).ok_or_else(|| Error::InvalidArgument("moment vertex outside the span of the lattice".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        let moment = if r == 0 { HPolytope::new(0, Vec::new())? } else { convex_hull(&moment_coords, r)? };
        Ok(HoroVarietySpec { n, weights, lattice, moment_vertices, weight_coords, moment })
    }

    /// The spec with `Λ'` spanned by the nonzero weights and `Φ(X)` their
    /// convex hull. The nonzero weights must be linearly independent, so that
    /// `kΦ(X) ∩ Λ'` consists of the sums `Σ k_i λ_i` with `Σ k_i = k`.
    pub fn from_weights(n: usize, weights: Vec<Vec<i64>>) -> Result<Self> {
        let basis: Vec<Vec<i64>> = weights.iter().filter(|w| w.iter().any(|&v| v != 0)).cloned().collect();
        if basis.len() > 1 && linalg::rank(&lattice_matrix(n, &basis)) != basis.len() {
            return Err(Error::InvalidArgument(
                "helper specs need linearly independent weights; pass the lattice and moment polytope explicitly".into(),
            ));
        }
        let verts = weights.iter().map(|w| w.iter().map(|&v| q(v)).collect()).collect();
        Self::new(n, weights, basis, verts)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Rank of `Λ'`.
    pub fn r(&self) -> usize {
        self.lattice.len()
    }

    pub fn universe(&self) -> Universe {
        Universe::new(self.n, self.r()).expect("validated")
    }

    pub fn weights(&self) -> &[Vec<i64>] {
        &self.weights
    }

    pub fn lattice(&self) -> &[Vec<i64>] {
        &self.lattice
    }

    pub fn moment_vertices(&self) -> &[Vec<Q>] {
        &self.moment_vertices
    }

    /// Coordinates of each weight in the lattice basis (the y-exponents).
    pub fn weight_coords(&self) -> &[Vec<i64>] {
        &self.weight_coords
    }

    /// `Φ(X)` in lattice coordinates.
    pub fn moment_polytope(&self) -> &HPolytope {
        &self.moment
    }

    /// The weight `L c` for lattice coordinates `c`.
    pub fn weight_of(&self, c: &[i64]) -> Vec<i64> {
        (0..self.n).map(|i| self.lattice.iter().zip(c).map(|(b, ci)| b[i] * ci).sum()).collect()
    }

    /// The cone over `Δ(X)` or `Δ'(X)`, in exponent layout `(x, y, t)`.
    pub fn newton_cone(&self, variant: NewtonVariant) -> Result<ConeOverPolytope> {
        let r = self.r();
        let d = self.n * self.n;
        let fibered = fibered_polytope(&self.moment, &lattice_matrix(self.n, &self.lattice), self.n, variant)?;
        let perm: Vec<usize> = (r..r + d).chain(0..r).collect();
        Ok(ConeOverPolytope::new(fibered.permute(&perm)?))
    }
}

/// The unique solution of `m x = v` for a full-column-rank `m`, if any.
fn solve_overdetermined(m: &QMatrix, v: &[Q]) -> Option<Vec<Q>> {
    let cols = m.first().map_or(0, Vec::len);
    let aug: QMatrix = m.iter().zip(v).map(|(row, b)| row.iter().cloned().chain([b.clone()]).collect()).collect();
    let (red, pivots) = linalg::rref(&aug);
    if pivots.contains(&cols) {
        return None;
    }
    let mut x = vec![Q::zero(); cols];
    for (row, &p) in pivots.iter().enumerate() {
        x[p] = red[row][cols].clone();
    }
    Some(x)
}

/// `dim R_k = Σ dim V_λ` over `λ ∈ kΦ(X) ∩ Λ'`.
pub fn hilbert_function(spec: &HoroVarietySpec, k: u32) -> Result<u64> {
    let slice = spec.moment.dilate(&q(k as i64))?;
    let mut total = 0u64;
    for c in lattice_points(&slice)?.iter() {
        let w = DominantWeight::sp(&spec.weight_of(c))?;
        total = total.checked_add(weyl_dim(&w)?).ok_or(Error::Overflow("Hilbert function"))?;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binom(n: u64, k: u64) -> u64 {
        if k > n {
            return 0;
        }
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn projective_space_and_quadric() {
        let p3 = HoroVarietySpec::from_weights(2, vec![vec![1, 0]]).unwrap();
        let lg = HoroVarietySpec::from_weights(2, vec![vec![1, 1]]).unwrap();
        for k in 0..5 {
            assert_eq!(hilbert_function(&p3, k).unwrap(), binom(k as u64 + 3, 3));
            assert_eq!(hilbert_function(&lg, k).unwrap(), binom(k as u64 + 4, 4) - binom(k as u64 + 2, 4));
        }
    }

    #[test]
    fn trivial_and_flag() {
        let triv = HoroVarietySpec::from_weights(2, vec![vec![0, 0]]).unwrap();
        assert_eq!(triv.r(), 0);
        assert_eq!(hilbert_function(&triv, 3).unwrap(), 1);
        let flag = HoroVarietySpec::from_weights(2, vec![vec![1, 0], vec![1, 1]]).unwrap();
        assert_eq!(hilbert_function(&flag, 1).unwrap(), 9);
        assert_eq!(hilbert_function(&flag, 0).unwrap(), 1);
    }

    #[test]
    fn rejects_bad_specs() {
        assert!(HoroVarietySpec::from_weights(2, vec![vec![1, 0], vec![2, 0]]).is_err());
        assert!(HoroVarietySpec::new(2, vec![vec![1, 0]], vec![vec![2, 0]], vec![vec![q(1), q(0)]]).is_err());
        assert!(HoroVarietySpec::from_weights(2, vec![vec![0, 1]]).is_err());
    }

    #[test]
    fn json_round_trip() {
        let s = HoroVarietySpec::from_weights(2, vec![vec![1, 0], vec![1, 1]]).unwrap();
        let js = serde_json::to_string(&s).unwrap();
        let back: HoroVarietySpec = serde_json::from_str(&js).unwrap();
        assert_eq!(back, s);
    }
}
