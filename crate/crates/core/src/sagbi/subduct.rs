use std::cmp::Ordering;
use std::collections::HashMap;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::embed::EmbeddedAlgebra;
use crate::algebra::{format_polynomial, ExponentVector, Polynomial};
use crate::error::{Error, Result};
use crate::rational::{format_q, Q};

/// How to pick among the ways of writing `in(f)` as a sum of generator
/// initial exponents.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChoiceRule {
    /// The lexicographically smallest count vector.
    LowestLex,
    /// Uniformly among all solutions, from a seeded stream.
    Random(u64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SubductionStatus {
    /// The remainder is zero.
    Zero,
    /// The initial exponent of the remainder is not a sum of generator
    /// initial exponents.
    NotInSemigroup,
    /// The step budget ran out.
    BudgetExhausted,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SubductionStep {
    /// Count vector `d`: the step subtracts `c * Π g_i^{d_i}`.
    pub counts: Vec<u32>,
    pub coefficient: Q,
    /// Initial exponent of the polynomial before the step.
    pub initial: ExponentVector,
    /// The polynomial after the step, when recorded.
    pub remainder: Option<Polynomial>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SubductionTrace {
    pub input: Polynomial,
    pub steps: Vec<SubductionStep>,
    pub remainder: Polynomial,
    pub status: SubductionStatus,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SubductOptions {
    pub rule: ChoiceRule,
    /// `None` uses `10 * (terms of f + K * s)` with `K` the t-degree of `f`
    /// and `s` the number of generators.
    pub max_steps: Option<usize>,
    /// Keep the intermediate remainder of every step.
    pub record_remainders: bool,
}

impl Default for SubductOptions {
    fn default() -> Self {
        SubductOptions { rule: ChoiceRule::LowestLex, max_steps: None, record_remainders: false }
    }
}

impl SubductionTrace {
    /// Whether the recorded initial exponents strictly decrease.
    pub fn strictly_decreasing(&self, e: &EmbeddedAlgebra) -> bool {
        let mut prev: Option<&ExponentVector> = None;
        for s in &self.steps {
            if prev.is_some_and(|p| e.order().cmp(&s.initial, p) != Ordering::Less) {
                return false;
            }
            prev = Some(&s.initial);
        }
        match (prev, self.remainder.initial_unchecked(e.order())) {
            (Some(p), Some((r, _))) => e.order().cmp(r, p) == Ordering::Less,
            _ => true,
        }
    }
}

/// Every count vector `d` with `Σ d_i = level` and `Σ d_i in(g_i) = target`,
/// in lexicographic order.
pub fn decompositions(e: &EmbeddedAlgebra, target: &ExponentVector) -> Vec<Vec<u32>> {
    let u = e.universe();
    let t = u.t_index();
    let level = target.get(t);
    if level < 0 {
        return Vec::new();
    }
    let gens: Vec<Vec<i64>> = e.initial_exponents().iter().map(|g| g.to_i64_vec()).collect();
    let nx = u.num_x();
    let mut out = Vec::new();
    let mut counts = vec![0u32; gens.len()];
    let mut rest = target.to_i64_vec();
    fn go(i: usize, gens: &[Vec<i64>], nx: usize, t: usize, counts: &mut Vec<u32>, rest: &mut Vec<i64>, out: &mut Vec<Vec<u32>>) {
        if rest[t] == 0 {
            if rest.iter().all(|&v| v == 0) {
                out.push(counts.clone());
            }
            return;
        }
        if i == gens.len() {
            return;
        }
        let g = &gens[i];
        let max_k = (0..nx)
            .filter(|&j| g[j] > 0)
            .map(|j| rest[j] / g[j])
            .chain([rest[t] / g[t]])
            .min()
            .unwrap_or(0);
        for k in 0..=max_k {
            for (r, v) in rest.iter_mut().zip(g) {
                *r -= k * v;
            }
            counts[i] = k as u32;
            go(i + 1, gens, nx, t, counts, rest, out);
            for (r, v) in rest.iter_mut().zip(g) {
                *r += k * v;
            }
        }
        counts[i] = 0;
    }
    go(0, &gens, nx, t, &mut counts, &mut rest, &mut out);
    out.sort();
    out
}

/// Subduction: repeatedly cancel the initial term of `f` against a product
/// of generators with the same initial exponent.
pub fn subduct(f: &Polynomial, e: &EmbeddedAlgebra, opts: SubductOptions) -> Result<SubductionTrace> {
    if *f.universe() != e.universe() {
        return Err(Error::UniverseMismatch("subduct: polynomial and algebra".into()));
    }
    let t = e.universe().t_index();
    let degree = f.exponents().map(|x| x.get(t)).max().unwrap_or(0).max(0) as usize;
    let budget = opts.max_steps.unwrap_or(10 * (f.num_terms() + degree * e.generators().len()));
    let mut rng = match opts.rule {
        ChoiceRule::Random(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
        ChoiceRule::LowestLex => None,
    };
    let mut cache: HashMap<Vec<u32>, Polynomial> = HashMap::new();
    let mut g = f.clone();
    let mut steps = Vec::new();
    let status = loop {
        let Some((lead, c)) = g.initial_unchecked(e.order()).map(|(x, c)| (x.clone(), c.clone())) else {
            break SubductionStatus::Zero;
        };
        if steps.len() == budget {
            break SubductionStatus::BudgetExhausted;
        }
        let sols = decompositions(e, &lead);
        let d = match (sols.is_empty(), rng.as_mut()) {
            (true, _) => break SubductionStatus::NotInSemigroup,
            (false, None) => sols[0].clone(),
            (false, Some(r)) => sols[r.random_range(0..sols.len())].clone(),
        };
        let prod = cache.entry(d.clone()).or_insert_with(|| e.product(&d));
        let (pc, pe) = prod.initial_term(e.order())?;
        if pe != lead {
            return Err(Error::Internal("initial exponent of a product is not the sum of initial exponents".into()));
        }
        let coeff = &c / &pc;
        g.sub_scaled(&coeff, prod);
        if let Some((next, _)) = g.initial_unchecked(e.order()) {
            if e.order().cmp(next, &lead) != Ordering::Less {
                return Err(Error::Internal(format!(
                    "subduction step did not decrease the initial exponent (coefficient {})",
                    format_q(&coeff)
                )));
            }
        }
        steps.push(SubductionStep {
            counts: d,
            coefficient: coeff,
            initial: lead,
            remainder: opts.record_remainders.then(|| g.clone()),
        });
    };
    Ok(SubductionTrace { input: f.clone(), steps, remainder: g, status })
}

/// JSON form of a trace with polynomials in text form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceDoc {
    pub input: String,
    pub steps: Vec<StepDoc>,
    pub remainder: String,
    pub status: SubductionStatus,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepDoc {
    pub counts: Vec<u32>,
    pub coefficient: String,
    pub initial: Vec<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub remainder: Option<String>,
}

impl SubductionTrace {
    pub fn to_doc(&self, e: &EmbeddedAlgebra) -> TraceDoc {
        let fmt = |p: &Polynomial| format_polynomial(p, e.order());
        TraceDoc {
            input: fmt(&self.input),
            steps: self
                .steps
                .iter()
                .map(|s| StepDoc {
                    counts: s.counts.clone(),
                    coefficient: format_q(&s.coefficient),
                    initial: s.initial.to_i64_vec(),
                    remainder: s.remainder.as_ref().map(fmt),
                })
                .collect(),
            remainder: fmt(&self.remainder),
            status: self.status,
        }
    }
}

/// A seeded random element of `Ψ(R_0 ⊕ .. ⊕ R_K)`: small integer
/// combinations of a few products in each degree.
pub fn random_element(e: &EmbeddedAlgebra, max_level: u32, seed: u64) -> Polynomial {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let s = e.generators().len();
    let mut f = Polynomial::zero(e.universe());
    for k in 0..=max_level {
        let terms = if k == 0 { 1 } else { rng.random_range(1..=3) };
        for _ in 0..terms {
            let mut d = vec![0u32; s];
            for _ in 0..k {
                d[rng.random_range(0..s)] += 1;
            }
            let c: i64 = loop {
                let c = rng.random_range(-5..=5);
                if c != 0 {
                    break c;
                }
            };
            f.add_scaled(&crate::rational::q(c), &e.product(&d));
        }
    }
    f
}
