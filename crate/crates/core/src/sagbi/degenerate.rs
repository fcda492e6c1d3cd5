use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::embed::{multisets, EmbeddedAlgebra};
use super::spec::hilbert_function;
use super::verify::{verify_sagbi, VerifyOptions};
use crate::algebra::{Direction, ExponentVector, Polynomial};
use crate::error::{Error, Result};
use crate::polyhedra::{semigroup_generators, semigroup_levels};
use crate::rational::Q;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Binomial {
    /// Exponents of the positive monomial in the semigroup generators.
    pub plus: Vec<u32>,
    pub minus: Vec<u32>,
    /// Level of either side.
    pub degree: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertCertificate {
    pub k: u32,
    pub semigroup_count: usize,
    pub hilbert: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ToricDegenerationData {
    pub generators: Vec<Vec<i64>>,
    pub binomials: Vec<Binomial>,
    pub certified_level: u32,
    pub hilbert_certificate: Vec<HilbertCertificate>,
}

impl ToricDegenerationData {
    /// `Σ plus_i g_i = Σ minus_i g_i` for every binomial.
    pub fn binomials_vanish(&self) -> bool {
        let eval = |d: &[u32]| -> Vec<i64> {
            let dim = self.generators.first().map_or(0, Vec::len);
            let mut acc = vec![0i64; dim];
            for (g, &k) in self.generators.iter().zip(d) {
                for (a, v) in acc.iter_mut().zip(g) {
                    *a += k as i64 * v;
                }
            }
            acc
        };
        self.binomials.iter().all(|b| eval(&b.plus) == eval(&b.minus))
    }

    pub fn certified(&self) -> bool {
        self.hilbert_certificate.iter().all(|c| c.semigroup_count as u64 == c.hilbert)
    }
}

fn counts(m: &[usize], s: usize) -> Vec<u32> {
    let mut d = vec![0u32; s];
    for &i in m {
        d[i] += 1;
    }
    d
}

/// Monomials in the generators of total level `degree`, as index multisets.
fn monomials_of_level(levels: &[u32], degree: u32) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    fn go(start: usize, levels: &[u32], rest: u32, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for i in start..levels.len() {
            if levels[i] <= rest {
                cur.push(i);
                go(i, levels, rest - levels[i], cur, out);
                cur.pop();
            }
        }
    }
    go(0, levels, degree, &mut Vec::new(), &mut out);
    out
}

/// Minimal binomial generators of the toric ideal of `gens` in each degree
/// up to `deg_bound`. In a fiber (monomials with equal exponent sum), two
/// monomials sharing a variable are joined by relations of lower degree, so
/// each further connected component needs one new binomial.
pub fn toric_relations(gens: &[Vec<i64>], deg_bound: u32) -> Vec<Binomial> {
    let s = gens.len();
    let levels: Vec<u32> = gens.iter().map(|g| *g.last().expect("level coordinate") as u32).collect();
    let mut out = Vec::new();
    for degree in 2..=deg_bound {
        let mut fibers: BTreeMap<Vec<i64>, Vec<Vec<usize>>> = BTreeMap::new();
        for m in monomials_of_level(&levels, degree) {
            let mut sum = vec![0i64; gens[0].len()];
            for &i in &m {
                for (a, v) in sum.iter_mut().zip(&gens[i]) {
                    *a += v;
                }
            }
            fibers.entry(sum).or_default().push(m);
        }
        for monos in fibers.values() {
            if monos.len() < 2 {
                continue;
            }
            let mut parent: Vec<usize> = (0..monos.len()).collect();
            fn find(p: &mut [usize], i: usize) -> usize {
                let mut r = i;
                while p[r] != r {
                    r = p[r];
                }
                p[i] = r;
                r
            }
            let supports: Vec<BTreeSet<usize>> = monos.iter().map(|m| m.iter().copied().collect()).collect();
            for a in 0..monos.len() {
                for b in a + 1..monos.len() {
                    if !supports[a].is_disjoint(&supports[b]) {
                        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                        parent[ra.max(rb)] = ra.min(rb);
                    }
                }
            }
            let mut roots: Vec<usize> = (0..monos.len()).filter(|&i| find(&mut parent, i) == i).collect();
            roots.sort();
            for &r in &roots[1..] {
                out.push(Binomial { plus: counts(&monos[roots[0]], s), minus: counts(&monos[r], s), degree });
            }
        }
    }
    out
}

/// The data of the special fiber `C[in(R)]`: semigroup generators, binomial
/// relations up to `deg_bound`, and the level counts of the generated
/// semigroup against the Hilbert function.
pub fn degenerate(e: &EmbeddedAlgebra, max_level: u32, deg_bound: u32) -> Result<ToricDegenerationData> {
    let report = verify_sagbi(e, VerifyOptions { max_level, trials: 0, seed: 0, randomized: false })?;
    if !report.levels_match() || !report.generation_certified {
        return Err(Error::VerificationFailed(format!("SAGBI verification failed up to level {max_level}")));
    }
    let sg = semigroup_generators(e.cone(), max_level)?;
    let generators = sg.generators.into_points();
    let binomials = toric_relations(&generators, deg_bound);
    let generated = semigroup_levels(&generators, max_level)?;
    let hilbert_certificate = (0..=max_level)
        .map(|k| {
            Ok(HilbertCertificate {
                k,
                semigroup_count: generated[k as usize].len(),
                hilbert: hilbert_function(e.spec(), k)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let data = ToricDegenerationData { generators, binomials, certified_level: max_level, hilbert_certificate };
    if !data.certified() {
        return Err(Error::VerificationFailed("semigroup level counts differ from the Hilbert function".into()));
    }
    Ok(data)
}

/// An integer weight `w` with `a ≻ b ⇒ <w, a> < <w, b>` on `points`.
///
/// Built greedily from the lowest-priority variable upwards: each variable
/// gets the smallest magnitude that lets it decide every pair that first
/// differs there, given the weights already fixed below it.
pub fn realizing_weight(e: &EmbeddedAlgebra, points: &[ExponentVector]) -> Result<Vec<i64>> {
    let u = e.universe();
    let schedule = e.order().schedule();
    let mut w = vec![0i64; u.len()];
    let pts: Vec<Vec<i64>> = points.iter().map(ExponentVector::to_i64_vec).collect();
    let partial = |w: &[i64], p: &[i64]| -> i128 { w.iter().zip(p).map(|(a, b)| *a as i128 * *b as i128).sum() };
    for pos in (0..schedule.len()).rev() {
        let (var, dir) = schedule[pos];
        let prefix: Vec<usize> = schedule[..pos].iter().map(|&(v, _)| v).collect();
        let mut groups: BTreeMap<Vec<i64>, Vec<&Vec<i64>>> = BTreeMap::new();
        for p in &pts {
            groups.entry(prefix.iter().map(|&v| p[v]).collect()).or_default().push(p);
        }
        let mut m: i128 = 1;
        for group in groups.values() {
            for a in group {
                for b in group {
                    let diff = (a[var] - b[var]) as i128;
                    if diff <= 0 {
                        continue;
                    }
                    // a has the larger exponent at var; D = w(b - a) on lower variables
                    let d = partial(&w, b) - partial(&w, a);
                    let bound = match dir {
                        Direction::LargerWins => -d,
                        Direction::SmallerWins => d,
                    };
                    if bound >= 0 {
                        m = m.max(bound / diff + 1);
                    }
                }
            }
        }
        let m = i64::try_from(m).map_err(|_| Error::Overflow("realizing weight"))?;
        w[var] = match dir {
            Direction::LargerWins => -m,
            Direction::SmallerWins => m,
        };
    }
    let mut sorted = points.to_vec();
    e.order().sort_desc(&mut sorted);
    sorted.dedup();
    for pair in sorted.windows(2) {
        let (a, b) = (pair[0].to_i64_vec(), pair[1].to_i64_vec());
        if partial(&w, &a) >= partial(&w, &b) {
            return Err(Error::NoRealizingWeight(format!("{a:?} ≻ {b:?}")));
        }
    }
    Ok(w)
}

/// Exponents of all products of degree at most `max_level`, plus those of
/// `extra`.
pub fn product_exponents(e: &EmbeddedAlgebra, max_level: u32, extra: &Polynomial) -> Vec<ExponentVector> {
    let mut set: BTreeSet<ExponentVector> = extra.exponents().cloned().collect();
    for k in 0..=max_level {
        for m in multisets(e.generators().len(), k) {
            let d = counts(&m, e.generators().len());
            set.extend(e.product(&d).exponents().cloned());
        }
    }
    set.into_iter().collect()
}

fn tau_pow(tau: &Q, k: i128) -> Result<Q> {
    if k < 0 {
        return Err(Error::Internal("negative power in the family".into()));
    }
    if tau.is_zero() {
        return Ok(if k == 0 { Q::one() } else { Q::zero() });
    }
    let k = i32::try_from(k).map_err(|_| Error::Overflow("family exponent"))?;
    Ok(num_traits::Pow::pow(tau, k))
}

/// The member at `τ` of the flat family degenerating `f` to its initial
/// term: each monomial `m` is scaled by `τ^{<w, m> - <w, in(f)>}`.
pub fn flat_family_member(f: &Polynomial, e: &EmbeddedAlgebra, tau: &Q, max_level: u32) -> Result<Polynomial> {
    if *f.universe() != e.universe() {
        return Err(Error::UniverseMismatch("flat_family_member: polynomial and algebra".into()));
    }
    if f.is_zero() {
        return Ok(f.clone());
    }
    let w = realizing_weight(e, &product_exponents(e, max_level, f))?;
    family_with_weight(f, e, tau, &w)
}

pub fn family_with_weight(f: &Polynomial, e: &EmbeddedAlgebra, tau: &Q, w: &[i64]) -> Result<Polynomial> {
    let dot = |x: &ExponentVector| -> i128 { x.as_slice().iter().zip(w).map(|(a, b)| *a as i128 * *b as i128).sum() };
    let (_, lead) = f.initial_term(e.order())?;
    let base = dot(&lead);
    let mut out = Polynomial::zero(e.universe());
    for (x, c) in f.terms() {
        let k = dot(x) - base;
        if x != &lead && k <= 0 {
            return Err(Error::NoRealizingWeight(format!("{:?} ≻ {:?}", lead.to_i64_vec(), x.to_i64_vec())));
        }
        let coeff = c * tau_pow(tau, k)?;
        if !coeff.is_zero() {
            out = &out + &Polynomial::monomial(e.universe(), coeff, x.clone());
        }
    }
    debug_assert!(e.order().cmp(&lead, &lead) == Ordering::Equal);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, q_frac};
    use crate::sagbi::{psi_embed, HoroVarietySpec};

    #[test]
    fn projective_space_is_free() {
        let e = psi_embed(&HoroVarietySpec::from_weights(2, vec![vec![1, 0]]).unwrap()).unwrap();
        let d = degenerate(&e, 3, 3).unwrap();
        assert_eq!(d.generators.len(), 4);
        assert!(d.binomials.is_empty());
        assert!(d.certified());
    }

    #[test]
    fn quadric_has_one_relation() {
        let e = psi_embed(&HoroVarietySpec::from_weights(2, vec![vec![1, 1]]).unwrap()).unwrap();
        let d = degenerate(&e, 3, 3).unwrap();
        assert_eq!(d.generators.len(), 5);
        assert_eq!(d.binomials.len(), 1);
        assert_eq!(d.binomials[0].degree, 2);
        assert!(d.binomials_vanish());
    }

    #[test]
    fn family_limits() {
        let e = psi_embed(&HoroVarietySpec::from_weights(2, vec![vec![1, 0]]).unwrap()).unwrap();
        let g = e.generators();
        let f = &(&g[0] * &g[3]) - &(&g[1] * &g[2]);
        assert_eq!(flat_family_member(&f, &e, &q(1), 2).unwrap(), f);
        let (c, lead) = f.initial_term(e.order()).unwrap();
        let zero = flat_family_member(&f, &e, &q(0), 2).unwrap();
        assert_eq!(zero, Polynomial::monomial(e.universe(), c.clone(), lead.clone()));
        let half = flat_family_member(&f, &e, &q_frac(1, 2), 2).unwrap();
        assert_eq!(half.num_terms(), f.num_terms());
        assert_eq!(half.coefficient(&lead), c);
    }
}
