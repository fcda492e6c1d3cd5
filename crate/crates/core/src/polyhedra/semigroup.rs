use std::collections::{BTreeMap, HashSet};

use serde::{Deserialize, Serialize};

use super::lattice::{ConeOverPolytope, LatticePointSet};
use crate::error::{Error, Result};

/// Generators of the semigroup of lattice points of a cone, found up to a
/// level bound. The last coordinate of every point is its level.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemigroupGenerators {
    pub generators: LatticePointSet,
    /// Levels 1..=certified_level were checked.
    pub certified_level: u32,
    /// Every checked lattice point is a nonnegative integer combination of
    /// the generators.
    pub certified: bool,
}

fn level_of(p: &[i64]) -> i64 {
    *p.last().expect("cone points carry a level coordinate")
}

/// The level-`k` slices (k = 0..=max_level) of the semigroup generated by
/// `gens`. Generators must have positive level.
pub fn semigroup_levels(gens: &[Vec<i64>], max_level: u32) -> Result<Vec<HashSet<Vec<i64>>>> {
    let Some(first) = gens.first() else {
        return Ok(vec![HashSet::new(); max_level as usize + 1]
            .into_iter()
            .enumerate()
            .map(|(k, mut s)| {
                if k == 0 {
                    s.insert(Vec::new());
                }
                s
            })
            .collect());
    };
    let dim = first.len();
    let mut by_level: BTreeMap<i64, Vec<&Vec<i64>>> = BTreeMap::new();
    for g in gens {
        if g.len() != dim {
            return Err(Error::DimensionMismatch { expected: dim, got: g.len() });
        }
        if level_of(g) <= 0 {
            return Err(Error::InvalidArgument("semigroup generators must have positive level".into()));
        }
        by_level.entry(level_of(g)).or_default().push(g);
    }
    let mut levels: Vec<HashSet<Vec<i64>>> = vec![HashSet::new(); max_level as usize + 1];
    levels[0].insert(vec![0; dim]);
    for k in 1..=max_level as i64 {
        let mut cur = HashSet::new();
        for (&l, gs) in by_level.range(1..=k) {
            for base in &levels[(k - l) as usize] {
                for g in gs {
                    cur.insert(base.iter().zip(g.iter()).map(|(a, b)| a + b).collect());
                }
            }
        }
        levels[k as usize] = cur;
    }
    Ok(levels)
}

/// Lattice points at levels `1..=max_level` that are not sums of two
/// lattice points of lower positive level, plus the certification flag.
pub fn semigroup_generators(c: &ConeOverPolytope, max_level: u32) -> Result<SemigroupGenerators> {
    if max_level == 0 {
        return Err(Error::InvalidArgument("level bound must be at least 1".into()));
    }
    let slices: Vec<LatticePointSet> = (0..=max_level).map(|k| c.level(k)).collect::<Result<_>>()?;
    let mut gens = Vec::new();
    for k in 1..=max_level as usize {
        for p in slices[k].iter() {
            let decomposable = (1..=k / 2).any(|k1| {
                slices[k1].iter().any(|a| {
                    let rest: Vec<i64> = p.iter().zip(a).map(|(x, y)| x - y).collect();
                    slices[k - k1].contains(&rest)
                })
            });
            if !decomposable {
                gens.push(p.clone());
            }
        }
    }
    let certified = generates_up_to(&gens, &slices)?;
    Ok(SemigroupGenerators {
        generators: LatticePointSet::new(gens),
        certified_level: max_level,
        certified,
    })
}

/// Whether the semigroup generated by `gens` contains every point of
/// `slices[k]` for all `k >= 1`.
pub fn generates_up_to(gens: &[Vec<i64>], slices: &[LatticePointSet]) -> Result<bool> {
    let max_level = slices.len().saturating_sub(1) as u32;
    let levels = semigroup_levels(gens, max_level)?;
    Ok((1..slices.len()).all(|k| slices[k].iter().all(|p| levels[k].contains(p))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyhedra::{HPolytope, Inequality};
    use crate::rational::{q, q_frac};

    #[test]
    fn unit_segment() {
        let c = ConeOverPolytope::new(HPolytope::cube(1, q(0), q(1)));
        let s = semigroup_generators(&c, 3).unwrap();
        assert_eq!(s.generators.points(), &[vec![0, 1], vec![1, 1]]);
        assert!(s.certified);
    }

    #[test]
    fn non_lattice_segment_needs_a_level_two_generator() {
        let base = HPolytope::new(1, vec![Inequality::from_ints(&[1], 0), Inequality::new(vec![q(-1)], q_frac(-3, 2))]).unwrap();
        let s = semigroup_generators(&ConeOverPolytope::new(base), 2).unwrap();
        assert!(s.generators.contains(&[3, 2]));
        assert_eq!(s.generators.len(), 3);
        assert!(s.certified);
    }
}
