use std::collections::HashMap;

use rayon::prelude::*;

use super::spec::{hilbert_function, HoroVarietySpec};
use crate::algebra::{EchelonBasis, ExponentVector, Polynomial, TermOrder, Universe};
use crate::error::{Error, Result};
use crate::gc::{DominantWeight, NewtonVariant};
use crate::polyhedra::{ConeOverPolytope, LatticePointSet};
use crate::symplectic::rep_space;

/// The image of `R` under `Ψ(f) = t^k y^λ φ_λ(f)`, given by the images of a
/// basis of `R_1`.
#[derive(Clone, Debug)]
pub struct EmbeddedAlgebra {
    spec: HoroVarietySpec,
    order: TermOrder,
    generators: Vec<Polynomial>,
    /// Index into the spec's weight list for each generator.
    generator_weights: Vec<usize>,
    initials: Vec<ExponentVector>,
    cone: ConeOverPolytope,
}

/// Degree-`k` products are checked against the Hilbert function up to this
/// degree when embedding.
pub const EMBED_CHECK_DEGREE: u32 = 2;

pub fn psi_embed(spec: &HoroVarietySpec) -> Result<EmbeddedAlgebra> {
    psi_embed_checked(spec, EMBED_CHECK_DEGREE)
}

pub fn psi_embed_checked(spec: &HoroVarietySpec, check_degree: u32) -> Result<EmbeddedAlgebra> {
    let u = spec.universe();
    let order = TermOrder::okounkov(u);
    let spaces = spec
        .weights()
        .par_iter()
        .map(|w| rep_space(&DominantWeight::sp(w)?))
        .collect::<Result<Vec<_>>>()?;
    let mut generators = Vec::new();
    let mut generator_weights = Vec::new();
    for (i, space) in spaces.iter().enumerate() {
        for f in space.basis() {
            generators.push(f.lift(u, &spec.weight_coords()[i], 1)?);
            generator_weights.push(i);
        }
    }
    let initials = generators
        .iter()
        .map(|g| g.initial_term(&order).map(|(_, e)| e))
        .collect::<Result<Vec<_>>>()?;
    let cone = spec.newton_cone(NewtonVariant::DeltaPrime)?;
    let e = EmbeddedAlgebra { spec: spec.clone(), order, generators, generator_weights, initials, cone };
    for k in 1..=check_degree {
        let dim = e.level_basis(k).dim();
        let want = hilbert_function(spec, k)?;
        if dim as u64 != want {
            return Err(Error::VerificationFailed(format!(
                "degree-{k} products span {dim} dimensions, Hilbert function gives {want}"
            )));
        }
    }
    Ok(e)
}

/// All multisets of size `k` over `0..s`, as nondecreasing index lists.
pub fn multisets(s: usize, k: u32) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|m| {
                let start = m.last().copied().unwrap_or(0);
                (start..s).map(move |i| {
                    let mut m = m.clone();
                    m.push(i);
                    m
                })
            })
            .collect();
    }
    out
}

impl EmbeddedAlgebra {
    pub fn spec(&self) -> &HoroVarietySpec {
        &self.spec
    }

    pub fn universe(&self) -> Universe {
        *self.order.universe()
    }

    pub fn order(&self) -> &TermOrder {
        &self.order
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn generator_weights(&self) -> &[usize] {
        &self.generator_weights
    }

    pub fn initial_exponents(&self) -> &[ExponentVector] {
        &self.initials
    }

    /// The cone over `Δ'(X)`.
    pub fn cone(&self) -> &ConeOverPolytope {
        &self.cone
    }

    /// `Π g_i^{d_i}` for a count vector `d`.
    pub fn product(&self, d: &[u32]) -> Polynomial {
        let mut acc = Polynomial::one(self.universe());
        for (g, &k) in self.generators.iter().zip(d) {
            for _ in 0..k {
                acc = &acc * g;
            }
        }
        acc
    }

    /// All degree-`k` products, keyed by nondecreasing generator-index lists.
    pub fn products(&self, k: u32) -> Vec<(Vec<usize>, Polynomial)> {
        let mut level: HashMap<Vec<usize>, Polynomial> = HashMap::new();
        level.insert(Vec::new(), Polynomial::one(self.universe()));
        for j in 1..=k {
            let next: Vec<(Vec<usize>, Polynomial)> = multisets(self.generators.len(), j)
                .into_par_iter()
                .map(|m| {
                    let (last, rest) = m.split_last().expect("nonempty");
                    let p = &level[rest] * &self.generators[*last];
                    (m, p)
                })
                .collect();
            level = next.into_iter().collect();
        }
        let mut out: Vec<_> = level.into_iter().collect();
        out.sort_by(|a, b| a.0.cmp(&b.0));
        out
    }

    /// Echelon basis of the span of degree-`k` products, i.e. of `Ψ(R_k)`.
    pub fn level_basis(&self, k: u32) -> EchelonBasis {
        let mut e = EchelonBasis::new(self.order.clone());
        for (_, p) in self.products(k) {
            e.insert(&p);
        }
        e
    }
}

/// Initial exponents of `Ψ(R_k)`, the level-`k` slice of `in(R)`.
pub fn initial_algebra_level(e: &EmbeddedAlgebra, k: u32) -> LatticePointSet {
    e.level_basis(k).initial_exponents().iter().map(ExponentVector::to_i64_vec).collect()
}
