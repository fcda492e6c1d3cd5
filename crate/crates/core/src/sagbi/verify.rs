use std::cmp::Ordering;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::embed::{initial_algebra_level, EmbeddedAlgebra};
use super::spec::hilbert_function;
use super::subduct::{random_element, subduct, ChoiceRule, SubductOptions, SubductionStatus};
use crate::algebra::ExponentVector;
use crate::error::{Error, Result};
use crate::polyhedra::{semigroup_levels, LatticePointSet};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelReport {
    pub k: u32,
    /// Dimension of the span of degree-k products.
    pub dim: usize,
    /// Lattice points of the cone over `Δ'(X)` at level k.
    pub lattice_count: usize,
    pub hilbert: u64,
    /// Initial exponents equal the cone points and the dimension equals the
    /// Hilbert function.
    #[serde(rename = "match")]
    pub matches: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrialReport {
    pub seed: u64,
    pub steps: usize,
    pub remainder_zero: bool,
    pub status: SubductionStatus,
    pub strictly_decreasing: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SagbiReport {
    pub levels: Vec<LevelReport>,
    /// Every cone point up to the level bound is a sum of level-one initial
    /// exponents.
    pub generation_certified: bool,
    pub subduction_trials: Vec<TrialReport>,
}

impl SagbiReport {
    pub fn levels_match(&self) -> bool {
        self.levels.iter().all(|l| l.matches)
    }

    pub fn trials_pass(&self) -> bool {
        self.subduction_trials.iter().all(|t| t.remainder_zero && t.strictly_decreasing)
    }

    pub fn passed(&self) -> bool {
        self.levels_match() && self.generation_certified && self.trials_pass()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    pub max_level: u32,
    pub trials: usize,
    /// Trial `i` uses seed `seed + i`.
    pub seed: u64,
    /// Random choices in subduction instead of the lowest-lex rule.
    pub randomized: bool,
}

/// Checks, for levels `0..=K`: the initial exponents of `Ψ(R_k)` are the
/// lattice points of `(kΔ'(X), k)`; those points are generated by level one;
/// and random elements subduct to zero.
pub fn verify_sagbi(e: &EmbeddedAlgebra, opts: VerifyOptions) -> Result<SagbiReport> {
    if opts.max_level == 0 {
        return Err(Error::InvalidArgument("level bound must be at least 1".into()));
    }
    let slices: Vec<(LatticePointSet, LatticePointSet)> = (0..=opts.max_level)
        .into_par_iter()
        .map(|k| Ok((initial_algebra_level(e, k), e.cone().level(k)?)))
        .collect::<Result<_>>()?;
    let mut levels = Vec::new();
    for (k, (initials, cone)) in slices.iter().enumerate() {
        let k = k as u32;
        let hilbert = hilbert_function(e.spec(), k)?;
        levels.push(LevelReport {
            k,
            dim: initials.len(),
            lattice_count: cone.len(),
            hilbert,
            matches: initials == cone && initials.len() as u64 == hilbert,
        });
    }
    let gens: Vec<Vec<i64>> = e.initial_exponents().iter().map(ExponentVector::to_i64_vec).collect();
    let generated = semigroup_levels(&gens, opts.max_level)?;
    let generation_certified = slices
        .iter()
        .enumerate()
        .skip(1)
        .all(|(k, (_, cone))| cone.iter().all(|p| generated[k].contains(p)));
    let subduction_trials = (0..opts.trials)
        .into_par_iter()
        .map(|i| {
            let seed = opts.seed.wrapping_add(i as u64);
            let f = random_element(e, opts.max_level, seed);
            let rule = if opts.randomized { ChoiceRule::Random(seed) } else { ChoiceRule::LowestLex };
            let tr = subduct(&f, e, SubductOptions { rule, ..Default::default() })?;
            Ok(TrialReport {
                seed,
                steps: tr.steps.len(),
                remainder_zero: tr.status == SubductionStatus::Zero,
                status: tr.status,
                strictly_decreasing: tr.strictly_decreasing(e),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SagbiReport { levels, generation_certified, subduction_trials })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FinitenessReport {
    /// `(k, number of points of S at level k below p)` for `k <= level(p)`.
    pub per_level: Vec<(u32, usize)>,
    pub total: usize,
}

/// Counts the points of `S = in(R)` at levels up to that of `p` which are
/// smaller than `p`.
pub fn finiteness_check(e: &EmbeddedAlgebra, p: &ExponentVector, max_level: u32) -> Result<FinitenessReport> {
    let u = e.universe();
    if p.len() != u.len() {
        return Err(Error::UniverseMismatch("finiteness_check: point and algebra".into()));
    }
    let level = p.get(u.t_index());
    let pv = p.to_i64_vec();
    let not_in = || Error::NotInSemigroup { point: format!("{pv:?}"), level: max_level as usize };
    if level < 0 || level as u32 > max_level {
        return Err(not_in());
    }
    let level = level as u32;
    let mut per_level = Vec::new();
    for k in 0..=level {
        let pts = initial_algebra_level(e, k);
        if k == level && !pts.contains(&pv) {
            return Err(not_in());
        }
        let below = pts
            .iter()
            .filter(|q| e.order().cmp(&ExponentVector::new(&u, q).expect("valid exponent"), p) == Ordering::Less)
            .count();
        per_level.push((k, below));
    }
    let total = per_level.iter().map(|(_, c)| c).sum();
    Ok(FinitenessReport { per_level, total })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sagbi::{psi_embed, HoroVarietySpec};

    #[test]
    fn projective_space_small() {
        let e = psi_embed(&HoroVarietySpec::from_weights(2, vec![vec![1, 0]]).unwrap()).unwrap();
        let r = verify_sagbi(&e, VerifyOptions { max_level: 2, trials: 4, seed: 7, randomized: true }).unwrap();
        assert!(r.passed(), "{r:?}");
        let u = e.universe();
        let origin = ExponentVector::zero(&u);
        assert_eq!(finiteness_check(&e, &origin, 2).unwrap().total, 0);
        let level2 = initial_algebra_level(&e, 2);
        let mut pts: Vec<ExponentVector> = level2.iter().map(|q| ExponentVector::new(&u, q).unwrap()).collect();
        e.order().sort_desc(&mut pts);
        let rep = finiteness_check(&e, &pts[0], 2).unwrap();
        assert_eq!(rep.per_level, vec![(0, 1), (1, 4), (2, 9)]);
        let x = ExponentVector::unit(&u, 0);
        assert!(finiteness_check(&e, &x, 2).is_err());
    }
}
