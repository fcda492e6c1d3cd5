use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::hpolytope::HPolytope;
use crate::error::{Error, Result};
use crate::rational::{ceil_i64, common_denominator, floor_i64, q, Q};

/// A sorted, duplicate-free set of integer vectors.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LatticePointSet(Vec<Vec<i64>>);

impl LatticePointSet {
    pub fn new(mut points: Vec<Vec<i64>>) -> Self {
        points.sort();
        points.dedup();
        LatticePointSet(points)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn points(&self) -> &[Vec<i64>] {
        &self.0
    }

    pub fn into_points(self) -> Vec<Vec<i64>> {
        self.0
    }

    pub fn contains(&self, p: &[i64]) -> bool {
        self.0.binary_search_by(|x| x.as_slice().cmp(p)).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Vec<i64>> {
        self.0.iter()
    }
}

impl FromIterator<Vec<i64>> for LatticePointSet {
    fn from_iter<I: IntoIterator<Item = Vec<i64>>>(iter: I) -> Self {
        LatticePointSet::new(iter.into_iter().collect())
    }
}

/// `<a, z> >= b` with primitive integer coefficients.
#[derive(Clone, Debug)]
struct IntRow {
    a: Vec<i64>,
    b: i64,
}

/// Integer form of the system, valid for integer points: each row is
/// cleared of denominators, divided by the gcd of its coefficients and its
/// offset rounded up. `None` when some row is `0 >= positive`.
fn integer_rows(p: &HPolytope) -> Result<Option<Vec<IntRow>>> {
    let mut rows = Vec::with_capacity(p.inequalities.len());
    for ineq in &p.inequalities {
        let den = common_denominator(ineq.a.iter().chain(std::iter::once(&ineq.b)));
        let scale = Q::from_integer(den);
        let a: Vec<BigInt> = ineq.a.iter().map(|v| (v * &scale).to_integer()).collect();
        let b = (&ineq.b * &scale).to_integer();
        let g = a.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
        if g.is_zero() {
            if b > BigInt::zero() {
                return Ok(None);
            }
            continue;
        }
        let b = b.div_ceil(&g);
        let conv = |v: &BigInt| v.to_i64().ok_or(Error::Overflow("converting a polytope to integer form"));
        rows.push(IntRow {
            a: a.iter().map(|v| conv(&(v / &g))).collect::<Result<_>>()?,
            b: conv(&b)?,
        });
    }
    Ok(Some(rows))
}

type Bounds = Vec<(Option<i64>, Option<i64>)>;

fn div_floor(a: i128, b: i128) -> i128 {
    Integer::div_floor(&a, &b)
}

fn div_ceil(a: i128, b: i128) -> i128 {
    -Integer::div_floor(&-a, &b)
}

fn clamp_i64(v: i128) -> i64 {
    v.clamp(i64::MIN as i128 / 4, i64::MAX as i128 / 4) as i64
}

/// Largest value of `a * z` for `z` within `(lo, hi)`.
fn term_max(a: i64, (lo, hi): (Option<i64>, Option<i64>)) -> Option<i128> {
    match a.signum() {
        0 => Some(0),
        1 => hi.map(|h| a as i128 * h as i128),
        _ => lo.map(|l| a as i128 * l as i128),
    }
}

/// Interval constraint propagation to a fixpoint (or a pass cap). Returns
/// `None` when some interval becomes empty.
fn propagate(rows: &[IntRow], dim: usize) -> Option<Bounds> {
    let mut bounds: Bounds = vec![(None, None); dim];
    let max_passes = 64 * (dim + 1) + 256;
    for _ in 0..max_passes {
        let mut changed = false;
        for row in rows {
            let mut finite_sum: i128 = 0;
            let mut unbounded_terms = 0usize;
            let mut unbounded_at = usize::MAX;
            for (j, &a) in row.a.iter().enumerate() {
                match term_max(a, bounds[j]) {
                    Some(v) => finite_sum += v,
                    None => {
                        unbounded_terms += 1;
                        unbounded_at = j;
                    }
                }
            }
            for (i, &a) in row.a.iter().enumerate() {
                if a == 0 {
                    continue;
                }
                let rest = match unbounded_terms {
                    0 => finite_sum - term_max(a, bounds[i]).expect("finite"),
                    1 if unbounded_at == i => finite_sum,
                    _ => continue,
                };
                let need = row.b as i128 - rest;
                if a > 0 {
                    let lo = clamp_i64(div_ceil(need, a as i128));
                    if bounds[i].0.is_none_or(|cur| lo > cur) {
                        bounds[i].0 = Some(lo);
                        changed = true;
                    }
                } else {
                    let hi = clamp_i64(div_floor(need, a as i128));
                    if bounds[i].1.is_none_or(|cur| hi < cur) {
                        bounds[i].1 = Some(hi);
                        changed = true;
                    }
                }
                if let (Some(l), Some(h)) = bounds[i] {
                    if l > h {
                        return None;
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    Some(bounds)
}

/// Per-coordinate integer bounds, or `Ok(None)` when the system has no
/// integer points.
pub fn propagated_box(p: &HPolytope) -> Result<Option<Vec<(i64, i64)>>> {
    let Some(rows) = integer_rows(p)? else {
        return Ok(None);
    };
    let Some(bounds) = propagate(&rows, p.dim) else {
        return Ok(None);
    };
    if bounds.iter().all(|b| b.0.is_some() && b.1.is_some()) {
        return Ok(Some(bounds.into_iter().map(|(l, h)| (l.expect("bounded"), h.expect("bounded"))).collect()));
    }
    // Propagation cannot bound e.g. a rotated square; fall back to the
    // vertices, which also detects genuinely unbounded systems.
    let verts = super::dd::vertices(p)?;
    if verts.is_empty() {
        return Ok(None);
    }
    let mut out = Vec::with_capacity(p.dim);
    for (i, (l, h)) in bounds.into_iter().enumerate() {
        let vlo = verts.iter().map(|v| &v[i]).min().expect("nonempty");
        let vhi = verts.iter().map(|v| &v[i]).max().expect("nonempty");
        let vlo = ceil_i64(vlo).ok_or(Error::Overflow("lattice box"))?;
        let vhi = floor_i64(vhi).ok_or(Error::Overflow("lattice box"))?;
        let lo = l.map_or(vlo, |l| l.max(vlo));
        let hi = h.map_or(vhi, |h| h.min(vhi));
        if lo > hi {
            return Ok(None);
        }
        out.push((lo, hi));
    }
    Ok(Some(out))
}

struct Enumerator<'a> {
    rows: &'a [IntRow],
    /// rows with a nonzero coefficient at each coordinate
    by_coord: Vec<Vec<usize>>,
    /// `suffix_max[row][i]`: max of `sum_{j > i} a_j z_j` over the box
    suffix_max: Vec<Vec<i128>>,
    bounds: Vec<(i64, i64)>,
}

impl<'a> Enumerator<'a> {
    fn new(rows: &'a [IntRow], bounds: Vec<(i64, i64)>) -> Self {
        let dim = bounds.len();
        let by_coord = (0..dim)
            .map(|i| (0..rows.len()).filter(|&r| rows[r].a[i] != 0).collect())
            .collect();
        let suffix_max = rows
            .iter()
            .map(|row| {
                let mut s = vec![0i128; dim];
                let mut acc = 0i128;
                for i in (0..dim).rev() {
                    s[i] = acc;
                    let (l, h) = bounds[i];
                    acc += term_max(row.a[i], (Some(l), Some(h))).expect("bounded");
                }
                s
            })
            .collect();
        Enumerator { rows, by_coord, suffix_max, bounds }
    }

    /// Feasible integer range of coordinate `i` given the prefix partial sums.
    fn range(&self, i: usize, partial: &[i128]) -> Option<(i64, i64)> {
        let (mut lo, mut hi) = self.bounds[i];
        for &r in &self.by_coord[i] {
            let a = self.rows[r].a[i] as i128;
            let need = self.rows[r].b as i128 - partial[r] - self.suffix_max[r][i];
            if a > 0 {
                lo = lo.max(clamp_i64(div_ceil(need, a)));
            } else {
                hi = hi.min(clamp_i64(div_floor(need, a)));
            }
            if lo > hi {
                return None;
            }
        }
        Some((lo, hi))
    }

    fn assign(&self, partial: &mut [i128], i: usize, v: i64, sign: i128) {
        for &r in &self.by_coord[i] {
            partial[r] += sign * self.rows[r].a[i] as i128 * v as i128;
        }
    }

    fn dfs(&self, i: usize, point: &mut Vec<i64>, partial: &mut Vec<i128>, out: &mut Vec<Vec<i64>>) {
        if i == self.bounds.len() {
            out.push(point.clone());
            return;
        }
        let Some((lo, hi)) = self.range(i, partial) else {
            return;
        };
        for v in lo..=hi {
            self.assign(partial, i, v, 1);
            point.push(v);
            self.dfs(i + 1, point, partial, out);
            point.pop();
            self.assign(partial, i, v, -1);
        }
    }
}

/// All integer points of `p`, in lexicographic order. Coordinate bounds come
/// from interval propagation, or from the vertices when propagation stalls;
/// an unbounded system is an error.
pub fn lattice_points(p: &HPolytope) -> Result<LatticePointSet> {
    let Some(rows) = integer_rows(p)? else {
        return Ok(LatticePointSet::default());
    };
    let Some(bounds) = propagated_box(p)? else {
        return Ok(LatticePointSet::default());
    };
    if p.dim == 0 {
        return Ok(LatticePointSet::new(vec![vec![]]));
    }
    let en = Enumerator::new(&rows, bounds);
    let zero = vec![0i128; rows.len()];
    let Some((lo, hi)) = en.range(0, &zero) else {
        return Ok(LatticePointSet::default());
    };
    let chunks: Vec<Vec<Vec<i64>>> = (lo..=hi)
        .into_par_iter()
        .map(|v| {
            let mut partial = zero.clone();
            en.assign(&mut partial, 0, v, 1);
            let mut point = vec![v];
            let mut out = Vec::new();
            en.dfs(1, &mut point, &mut partial, &mut out);
            out
        })
        .collect();
    Ok(LatticePointSet(chunks.into_iter().flatten().collect()))
}

pub fn count_lattice_points(p: &HPolytope) -> Result<usize> {
    Ok(lattice_points(p)?.len())
}

/// `{(z, k) : k >= 0, z in k * base}` for a bounded base.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConeOverPolytope {
    pub base: HPolytope,
}

impl ConeOverPolytope {
    pub fn new(base: HPolytope) -> Self {
        ConeOverPolytope { base }
    }

    /// Ambient dimension of the cone (base dimension + 1).
    pub fn dim(&self) -> usize {
        self.base.dim + 1
    }

    /// Lattice points of the level-`k` slice `(k * base, k)`.
    pub fn level(&self, k: u32) -> Result<LatticePointSet> {
        let slice = self.base.dilate(&q(k as i64))?;
        Ok(lattice_points(&slice)?
            .into_points()
            .into_iter()
            .map(|mut p| {
                p.push(k as i64);
                p
            })
            .collect())
    }
}

pub fn cone_lattice_points(c: &ConeOverPolytope, k: u32) -> Result<LatticePointSet> {
    c.level(k)
}
