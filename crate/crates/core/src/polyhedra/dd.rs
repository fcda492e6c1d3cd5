//! Double description method over exact integers: generators of a cone
//! `{y : M y >= 0}`, and on top of it vertex enumeration, facet enumeration
//! and Minkowski sums for small dimensions.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::hpolytope::{HPolytope, Inequality};
use crate::error::{Error, Result};
use crate::rational::{common_denominator, Q};

/// Vertex enumeration and Minkowski sums refuse ambient dimensions above
/// this.
pub const DIMENSION_GUARD: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq)]
struct BitSet(Vec<u64>);

impl BitSet {
    fn with_capacity(bits: usize) -> Self {
        BitSet(vec![0; bits.div_ceil(64).max(1)])
    }

    fn full(bits: usize, cap: usize) -> Self {
        let mut s = Self::with_capacity(cap);
        for i in 0..bits {
            s.insert(i);
        }
        s
    }

    fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn and(&self, other: &BitSet) -> BitSet {
        BitSet(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    fn is_subset_of(&self, other: &BitSet) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }

    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }
}

#[derive(Clone, Debug)]
struct Ray {
    v: Vec<BigInt>,
    zeros: BitSet,
}

/// Generators of a polyhedral cone: `cone = cone(rays) + span(lineality)`.
#[derive(Clone, Debug, Default)]
pub struct ConeGenerators {
    pub rays: Vec<Vec<BigInt>>,
    pub lineality: Vec<Vec<BigInt>>,
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn primitive(v: Vec<BigInt>) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() || g.is_one() {
        return v;
    }
    v.into_iter().map(|x| x / &g).collect()
}

fn combine(s: &BigInt, x: &[BigInt], t: &BigInt, y: &[BigInt]) -> Vec<BigInt> {
    primitive(x.iter().zip(y).map(|(a, b)| s * a - t * b).collect())
}

/// Generators of `{y in R^dim : <row, y> >= 0 for all rows}`.
pub fn cone_generators(rows: &[Vec<BigInt>], dim: usize) -> ConeGenerators {
    let cap = rows.len();
    let mut lineality: Vec<Vec<BigInt>> = (0..dim)
        .map(|i| (0..dim).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect();
    let mut rays: Vec<Ray> = Vec::new();

    for (idx, a) in rows.iter().enumerate() {
        if let Some(pos) = lineality.iter().position(|l| !dot(a, l).is_zero()) {
            let mut l0 = lineality.remove(pos);
            let mut s = dot(a, &l0);
            if s.is_negative() {
                l0 = l0.into_iter().map(|x| -x).collect();
                s = -s;
            }
            for l in lineality.iter_mut() {
                let t = dot(a, l);
                if !t.is_zero() {
                    *l = combine(&s, l, &t, &l0);
                }
            }
            for r in rays.iter_mut() {
                let t = dot(a, &r.v);
                if !t.is_zero() {
                    r.v = combine(&s, &r.v, &t, &l0);
                }
                r.zeros.insert(idx);
            }
            rays.push(Ray { v: primitive(l0), zeros: BitSet::full(idx, cap) });
            continue;
        }

        let vals: Vec<BigInt> = rays.iter().map(|r| dot(a, &r.v)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_negative()).collect();
        if neg.is_empty() {
            for (r, v) in rays.iter_mut().zip(&vals) {
                if v.is_zero() {
                    r.zeros.insert(idx);
                }
            }
            continue;
        }
        // Extreme rays modulo lineality need at least this many tight rows
        // in common to be adjacent.
        let needed = (dim - lineality.len()).saturating_sub(2);
        let mut fresh = Vec::new();
        for &p in &pos {
            for &n in &neg {
                let common = rays[p].zeros.and(&rays[n].zeros);
                if common.count() < needed {
                    continue;
                }
                let adjacent = (0..rays.len())
                    .filter(|&k| k != p && k != n)
                    .all(|k| !common.is_subset_of(&rays[k].zeros));
                if !adjacent {
                    continue;
                }
                // vals[p] > 0 > vals[n]; the combination is tight on `a`
                let v = combine(&vals[p], &rays[n].v, &vals[n], &rays[p].v);
                let mut zeros = common;
                zeros.insert(idx);
                fresh.push(Ray { v, zeros });
            }
        }
        let mut kept = Vec::with_capacity(rays.len() + fresh.len());
        for (i, mut r) in rays.into_iter().enumerate() {
            if vals[i].is_negative() {
                continue;
            }
            if vals[i].is_zero() {
                r.zeros.insert(idx);
            }
            kept.push(r);
        }
        kept.extend(fresh);
        rays = kept;
    }

    let mut out: Vec<Vec<BigInt>> = rays.into_iter().map(|r| r.v).filter(|v| v.iter().any(|x| !x.is_zero())).collect();
    out.sort();
    out.dedup();
    ConeGenerators { rays: out, lineality }
}

fn integer_row(a: &[Q], extra: &Q) -> Vec<BigInt> {
    let den = Q::from_integer(common_denominator(a.iter().chain(std::iter::once(extra))));
    a.iter()
        .chain(std::iter::once(extra))
        .map(|v| (v * &den).to_integer())
        .collect()
}

fn guard(dim: usize) -> Result<()> {
    if dim > DIMENSION_GUARD {
        return Err(Error::DimensionGuard { dim, guard: DIMENSION_GUARD });
    }
    Ok(())
}

/// Exact vertex set of a bounded polytope, sorted and deduplicated. An
/// empty system has no vertices.
pub fn vertices(p: &HPolytope) -> Result<Vec<Vec<Q>>> {
    guard(p.dim)?;
    let d = p.dim;
    // homogenize: <a, z> - b s >= 0, s >= 0
    let mut rows: Vec<Vec<BigInt>> = p.inequalities.iter().map(|i| integer_row(&i.a, &-i.b.clone())).collect();
    let mut s_row = vec![BigInt::zero(); d + 1];
    s_row[d] = BigInt::one();
    rows.push(s_row);
    let gens = cone_generators(&rows, d + 1);
    let mut verts: Vec<Vec<Q>> = gens
        .rays
        .iter()
        .filter(|r| r[d].is_positive())
        .map(|r| r[..d].iter().map(|x| Q::new(x.clone(), r[d].clone())).collect())
        .collect();
    if verts.is_empty() {
        return Ok(verts);
    }
    if !gens.lineality.is_empty() {
        return Err(Error::Unbounded(lineality_coordinate(&gens.lineality[0])));
    }
    if let Some(r) = gens.rays.iter().find(|r| r[d].is_zero()) {
        return Err(Error::Unbounded(lineality_coordinate(r)));
    }
    verts.sort();
    verts.dedup();
    Ok(verts)
}

fn lineality_coordinate(v: &[BigInt]) -> usize {
    v.iter().position(|x| !x.is_zero()).unwrap_or(0)
}

/// An inequality description of `conv(points)` in `R^dim`, including the
/// equations of the affine hull (each as a pair of inequalities).
pub fn convex_hull(points: &[Vec<Q>], dim: usize) -> Result<HPolytope> {
    guard(dim)?;
    if points.is_empty() {
        let a = vec![Q::zero(); dim];
        return HPolytope::new(dim, vec![Inequality::new(a, Q::one())]);
    }
    // (a, beta) with <a, v> - beta >= 0 for every point v
    let rows: Vec<Vec<BigInt>> = points.iter().map(|v| integer_row(v, &-Q::one())).collect();
    let gens = cone_generators(&rows, dim + 1);
    let mut ineqs = Vec::new();
    let to_ineq = |g: &[BigInt]| {
        Inequality::new(
            g[..dim].iter().map(|x| Q::from_integer(x.clone())).collect(),
            Q::from_integer(g[dim].clone()),
        )
    };
    for l in &gens.lineality {
        if l[..dim].iter().all(Zero::is_zero) {
            continue;
        }
        let ineq = to_ineq(l);
        let neg = Inequality::new(ineq.a.iter().map(|x| -x).collect(), -ineq.b.clone());
        ineqs.push(ineq);
        ineqs.push(neg);
    }
    for r in &gens.rays {
        if r[..dim].iter().all(Zero::is_zero) {
            continue;
        }
        ineqs.push(to_ineq(r));
    }
    HPolytope::new(dim, ineqs)
}

/// `P + Q` as the convex hull of pairwise vertex sums.
pub fn minkowski_sum(p: &HPolytope, q: &HPolytope) -> Result<HPolytope> {
    if p.dim != q.dim {
        return Err(Error::DimensionMismatch { expected: p.dim, got: q.dim });
    }
    guard(p.dim)?;
    let vp = vertices(p)?;
    let vq = vertices(q)?;
    let mut sums: Vec<Vec<Q>> = vp
        .iter()
        .flat_map(|a| vq.iter().map(move |b| a.iter().zip(b).map(|(x, y)| x + y).collect()))
        .collect();
    sums.sort();
    sums.dedup();
    convex_hull(&sums, p.dim)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, q_frac};

    fn qv(v: &[i64]) -> Vec<Q> {
        v.iter().map(|&x| q(x)).collect()
    }

    #[test]
    fn square_and_simplex() {
        let sq = HPolytope::cube(2, q(0), q(1));
        assert_eq!(vertices(&sq).unwrap(), vec![qv(&[0, 0]), qv(&[0, 1]), qv(&[1, 0]), qv(&[1, 1])]);
        let mut ineqs: Vec<Inequality> = (0..3)
            .map(|i| {
                let mut a = vec![0; 3];
                a[i] = 1;
                Inequality::from_ints(&a, 0)
            })
            .collect();
        ineqs.push(Inequality::from_ints(&[-1, -1, -1], -1));
        let simplex = HPolytope::new(3, ineqs).unwrap();
        assert_eq!(vertices(&simplex).unwrap().len(), 4);
    }

    #[test]
    fn guard_and_unbounded() {
        let big = HPolytope::cube(13, q(0), q(1));
        assert!(matches!(vertices(&big), Err(Error::DimensionGuard { .. })));
        let ray = HPolytope::new(1, vec![Inequality::from_ints(&[1], 0)]).unwrap();
        assert!(vertices(&ray).is_err());
        let empty = HPolytope::new(1, vec![Inequality::from_ints(&[1], 1), Inequality::from_ints(&[-1], 0)]).unwrap();
        assert!(vertices(&empty).unwrap().is_empty());
    }

    #[test]
    fn hull_roundtrip() {
        let pts = vec![qv(&[0, 0]), qv(&[2, 0]), qv(&[0, 2]), qv(&[1, 1]), qv(&[1, 0])];
        let h = convex_hull(&pts, 2).unwrap();
        assert_eq!(vertices(&h).unwrap(), vec![qv(&[0, 0]), qv(&[0, 2]), qv(&[2, 0])]);
        // lower-dimensional hull: a segment in the plane
        let seg = convex_hull(&[qv(&[0, 0]), qv(&[1, 1])], 2).unwrap();
        assert_eq!(vertices(&seg).unwrap(), vec![qv(&[0, 0]), qv(&[1, 1])]);
        assert!(seg.contains(&[q_frac(1, 2), q_frac(1, 2)]));
        assert!(!seg.contains(&[q_frac(1, 2), q(0)]));
    }

    #[test]
    fn minkowski_examples() {
        let seg = HPolytope::cube(1, q(0), q(1));
        let sum = minkowski_sum(&seg, &seg).unwrap();
        assert_eq!(vertices(&sum).unwrap(), vec![qv(&[0]), qv(&[2])]);
        let sq = HPolytope::cube(2, q(0), q(1));
        let origin = HPolytope::point(&qv(&[0, 0]));
        assert_eq!(vertices(&minkowski_sum(&sq, &origin).unwrap()).unwrap(), vertices(&sq).unwrap());
    }
}
