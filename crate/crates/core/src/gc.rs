//! Gelfand-Cetlin polytopes of GL(n) and SP(2n), the Weyl dimension
//! formula, the unimodular change of variables `q = A p + B λ` relating GC
//! patterns to exponents of initial monomials, and the Newton polytopes
//! fibered over a moment polytope.

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::Universe;
use crate::error::{Error, Result};
use crate::linalg::{self, IntMatrix, QMatrix};
use crate::polyhedra::{convex_hull, HPolytope, Inequality};
use crate::rational::{format_q, q, to_i64, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Group {
    #[serde(rename = "SP")]
    Sp,
    #[serde(rename = "GL")]
    Gl,
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Group::Sp => write!(f, "SP"),
            Group::Gl => write!(f, "GL"),
        }
    }
}

/// A dominant weight `λ_1 >= .. >= λ_n` (and `λ_n >= 0` for SP). Real
/// (rational) components are admitted for polytope construction.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DominantWeight {
    group: Group,
    lambda: Vec<Q>,
}

impl DominantWeight {
    pub fn new(group: Group, lambda: Vec<Q>) -> Result<Self> {
        if lambda.is_empty() {
            return Err(Error::InvalidArgument("a weight needs at least one component".into()));
        }
        let w = DominantWeight { group, lambda };
        let monotone = w.lambda.windows(2).all(|p| p[0] >= p[1]);
        let nonneg = group == Group::Gl || w.lambda.last().is_some_and(|l| *l >= Q::zero());
        if !monotone || !nonneg {
            return Err(Error::NotDominant(w.to_string()));
        }
        Ok(w)
    }

    pub fn sp(lambda: &[i64]) -> Result<Self> {
        Self::new(Group::Sp, lambda.iter().map(|&v| q(v)).collect())
    }

    pub fn gl(lambda: &[i64]) -> Result<Self> {
        Self::new(Group::Gl, lambda.iter().map(|&v| q(v)).collect())
    }

    /// The fundamental weight `ω_k = (1, .., 1, 0, .., 0)` of SP(2n).
    pub fn fundamental(n: usize, k: usize) -> Result<Self> {
        if k == 0 || k > n {
            return Err(Error::InvalidArgument(format!("fundamental weight index {k} out of 1..={n}")));
        }
        Self::sp(&(0..n).map(|i| i64::from(i < k)).collect::<Vec<_>>())
    }

    pub fn group(&self) -> Group {
        self.group
    }

    pub fn n(&self) -> usize {
        self.lambda.len()
    }

    pub fn lambda(&self) -> &[Q] {
        &self.lambda
    }

    pub fn is_integral(&self) -> bool {
        self.lambda.iter().all(|v| v.is_integer())
    }

    pub fn integral_components(&self) -> Result<Vec<i64>> {
        self.lambda
            .iter()
            .map(|v| to_i64(v).ok_or_else(|| Error::NotIntegral(self.to_string())))
            .collect()
    }

    pub fn add(&self, other: &DominantWeight) -> Result<DominantWeight> {
        if self.group != other.group || self.n() != other.n() {
            return Err(Error::InvalidArgument("adding weights of different groups".into()));
        }
        DominantWeight::new(self.group, self.lambda.iter().zip(&other.lambda).map(|(a, b)| a + b).collect())
    }

    pub fn scale(&self, c: &Q) -> Result<DominantWeight> {
        DominantWeight::new(self.group, self.lambda.iter().map(|a| a * c).collect())
    }

    /// Coefficients `a_k = λ_k - λ_{k+1}` with `λ = Σ a_k ω_k` (SP).
    pub fn fundamental_coefficients(&self) -> Result<Vec<u32>> {
        let l = self.integral_components()?;
        (0..l.len())
            .map(|k| {
                let next = l.get(k + 1).copied().unwrap_or(0);
                u32::try_from(l[k] - next).map_err(|_| Error::NotDominant(self.to_string()))
            })
            .collect()
    }
}

impl fmt::Display for DominantWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.lambda.iter().map(format_q).collect();
        write!(f, "{}({})", self.group, parts.join(","))
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum Component {
    Int(i64),
    Str(String),
}

/// Weight JSON document `{group, n, lambda}`.
#[derive(Serialize, Deserialize)]
struct WeightDoc {
    group: Group,
    n: usize,
    lambda: Vec<Component>,
}

impl Serialize for DominantWeight {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        WeightDoc {
            group: self.group,
            n: self.n(),
            lambda: self
                .lambda
                .iter()
                .map(|v| match to_i64(v) {
                    Some(i) => Component::Int(i),
                    None => Component::Str(format_q(v)),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for DominantWeight {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let doc = WeightDoc::deserialize(d)?;
        if doc.lambda.len() != doc.n {
            return Err(D::Error::custom(format!("lambda has {} entries but n = {}", doc.lambda.len(), doc.n)));
        }
        let lambda = doc
            .lambda
            .into_iter()
            .map(|c| match c {
                Component::Int(i) => Ok(q(i)),
                Component::Str(s) => crate::rational::parse_q(&s),
            })
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        DominantWeight::new(doc.group, lambda).map_err(D::Error::custom)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Entry {
    Lambda(usize),
    Zero,
    Var(usize),
}

/// A GC inequality `<lam, λ> + <pat, x> >= 0`, linear in weight and pattern.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GcForm {
    pub lam: Vec<i64>,
    pub pat: Vec<i64>,
}

/// Number of free pattern coordinates: `n²` for SP(2n), `n(n-1)/2` for GL(n).
pub fn pattern_dim(group: Group, n: usize) -> usize {
    match group {
        Group::Sp => n * n,
        Group::Gl => n * (n - 1) / 2,
    }
}

/// Rows of the GC pattern below the weight row, as variable indices into
/// the flattened row-major pattern.
fn pattern_rows(group: Group, n: usize) -> Vec<Vec<usize>> {
    let lengths: Vec<usize> = match group {
        Group::Sp => (1..=n).flat_map(|k| [n - k + 1, n - k]).filter(|&l| l > 0).collect(),
        Group::Gl => (1..n).rev().collect(),
    };
    let mut next = 0;
    lengths
        .into_iter()
        .map(|len| {
            let row: Vec<usize> = (next..next + len).collect();
            next += len;
            row
        })
        .collect()
}

/// The interlacing system of the GC polytope, linear in `(λ, x)`.
pub fn gc_forms(group: Group, n: usize) -> Vec<GcForm> {
    let dim = pattern_dim(group, n);
    let mut forms = Vec::new();
    let mut push = |upper: Entry, lower: Entry| {
        let mut f = GcForm { lam: vec![0; n], pat: vec![0; dim] };
        let mut add = |e: Entry, s: i64| match e {
            Entry::Lambda(i) => f.lam[i] += s,
            Entry::Var(i) => f.pat[i] += s,
            Entry::Zero => {}
        };
        add(upper, 1);
        add(lower, -1);
        if f.lam.iter().any(|&v| v != 0) || f.pat.iter().any(|&v| v != 0) {
            forms.push(f);
        }
    };
    let mut upper: Vec<Entry> = (0..n).map(Entry::Lambda).collect();
    // SP rows alternate: the λ-type rows (top row and every second row
    // below it) are padded with a trailing constant 0.
    let mut upper_padded = group == Group::Sp;
    for row in pattern_rows(group, n) {
        let lower: Vec<Entry> = row.iter().map(|&i| Entry::Var(i)).collect();
        if upper_padded {
            upper.push(Entry::Zero);
        }
        let lower_padded = group == Group::Sp && !upper_padded;
        let mut lower_full = lower.clone();
        if lower_padded {
            lower_full.push(Entry::Zero);
        }
        for (i, &c) in lower_full.iter().enumerate() {
            if i < upper.len() {
                push(upper[i], c);
            }
            if i + 1 < upper.len() {
                push(c, upper[i + 1]);
            }
        }
        upper = lower;
        upper_padded = lower_padded;
    }
    forms
}

/// The Gelfand-Cetlin polytope `Δ_λ`.
pub fn gc_polytope(w: &DominantWeight) -> HPolytope {
    let n = w.n();
    let dim = pattern_dim(w.group(), n);
    let ineqs = gc_forms(w.group(), n)
        .into_iter()
        .map(|f| {
            let offset = f.lam.iter().zip(w.lambda()).fold(Q::zero(), |acc, (&c, l)| acc + q(c) * l);
            Inequality::new(f.pat.iter().map(|&v| q(v)).collect(), -offset)
        })
        .collect();
    HPolytope::new(dim, ineqs).expect("forms have the pattern dimension")
}

/// `dim V_λ` by the Weyl product formula over positive roots.
pub fn weyl_dim(w: &DominantWeight) -> Result<u64> {
    let l = w.integral_components()?;
    let n = l.len();
    let mut num = Q::one();
    match w.group() {
        Group::Gl => {
            for i in 0..n {
                for j in i + 1..n {
                    num *= Q::new((l[i] - l[j] + (j - i) as i64).into(), ((j - i) as i64).into());
                }
            }
        }
        Group::Sp => {
            let rho: Vec<i64> = (0..n).map(|i| (n - i) as i64).collect();
            let shifted: Vec<i64> = l.iter().zip(&rho).map(|(a, b)| a + b).collect();
            for i in 0..n {
                for j in i + 1..n {
                    let top = (shifted[i] - shifted[j]) * (shifted[i] + shifted[j]);
                    let bottom = (rho[i] - rho[j]) * (rho[i] + rho[j]);
                    num *= Q::new(top.into(), bottom.into());
                }
                num *= Q::new(shifted[i].into(), rho[i].into());
            }
        }
    }
    to_i64(&num)
        .and_then(|v| u64::try_from(v).ok())
        .ok_or_else(|| Error::Internal(format!("Weyl formula gave {} for {w}", format_q(&num))))
}

/// The integral affine change of variables `q = A p + B λ` between
/// exponents `p` of monomials in the x-variables (row-major order) and GC
/// pattern coordinates `q` (row order `η^(1), θ^(1), η^(2), θ^(2), ..`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChangeOfVariables {
    pub n: usize,
    pub p_order: Vec<String>,
    pub q_order: Vec<String>,
    pub a: IntMatrix,
    pub b: IntMatrix,
    pub a_inverse: IntMatrix,
}

#[derive(Clone)]
struct AffineForm {
    p: Vec<i64>,
    lam: Vec<i64>,
}

/// Builds `A` and `B` from the recursion `θ^(0) = λ`,
/// `η^(m)_i = θ^(m-1)_i - p[m, 2n-m+2-i]` (i = 1..=n-m+1) and
/// `θ^(m)_i = η^(m)_{i+1} + p[m, m+i]` (i = 1..=n-m).
pub fn change_of_vars_matrices(n: usize) -> Result<ChangeOfVariables> {
    let u = Universe::new(n, 0)?;
    let d = u.num_x();
    let p_index = |i: usize, j: usize| {
        u.x_index(i, j)
            .ok_or_else(|| Error::Internal(format!("p[{i},{j}] is not a coordinate of U+")))
    };
    let mut theta: Vec<AffineForm> = (0..n)
        .map(|i| {
            let mut lam = vec![0; n];
            lam[i] = 1;
            AffineForm { p: vec![0; d], lam }
        })
        .collect();
    let mut rows: Vec<AffineForm> = Vec::with_capacity(d);
    let mut q_order = Vec::with_capacity(d);
    for m in 1..=n {
        let mut eta = Vec::with_capacity(n - m + 1);
        for i in 1..=n - m + 1 {
            let mut f = theta[i - 1].clone();
            f.p[p_index(m, 2 * n - m + 2 - i)?] -= 1;
            eta.push(f);
            q_order.push(format!("eta[{m},{i}]"));
        }
        let mut next_theta = Vec::with_capacity(n - m);
        for (i, e) in eta.iter().enumerate().skip(1).take(n - m) {
            let mut f = e.clone();
            f.p[p_index(m, m + i)?] += 1;
            next_theta.push(f);
        }
        rows.extend(eta);
        for i in 1..=n - m {
            q_order.push(format!("theta[{m},{i}]"));
        }
        rows.extend(next_theta.iter().cloned());
        theta = next_theta;
    }
    if rows.len() != d {
        return Err(Error::Internal(format!("built {} rows for {d} coordinates", rows.len())));
    }
    let a: IntMatrix = rows.iter().map(|r| r.p.clone()).collect();
    let b: IntMatrix = rows.iter().map(|r| r.lam.clone()).collect();
    let a_inverse = linalg::unimodular_inverse(&a).map_err(|e| Error::Internal(format!("A is not unimodular: {e}")))?;
    Ok(ChangeOfVariables {
        n,
        p_order: u.x_pairs().iter().map(|(i, j)| format!("x[{i},{j}]")).collect(),
        q_order,
        a,
        b,
        a_inverse,
    })
}

impl ChangeOfVariables {
    /// `A p + B λ`.
    pub fn apply(&self, p: &[i64], lambda: &[Q]) -> Vec<Q> {
        self.a
            .iter()
            .zip(&self.b)
            .map(|(ar, br)| {
                let lin: i64 = ar.iter().zip(p).map(|(x, y)| x * y).sum();
                br.iter().zip(lambda).fold(q(lin), |acc, (&c, l)| acc + q(c) * l)
            })
            .collect()
    }

    /// `B λ`.
    pub fn b_lambda(&self, lambda: &[Q]) -> Vec<Q> {
        linalg::mat_vec(&linalg::to_q_matrix(&self.b), lambda)
    }
}

/// `Δ'_λ = A^{-1}(Δ_λ - B λ)`.
pub fn gc_prime_polytope(w: &DominantWeight) -> Result<HPolytope> {
    if w.group() != Group::Sp {
        return Err(Error::InvalidArgument("Δ' is defined only for SP(2n) weights".into()));
    }
    let cov = change_of_vars_matrices(w.n())?;
    let a_inv = linalg::to_q_matrix(&cov.a_inverse);
    let shift: Vec<Q> = linalg::mat_vec(&a_inv, &cov.b_lambda(w.lambda())).into_iter().map(|v| -v).collect();
    gc_polytope(w).affine_image(&cov.a_inverse, &shift)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum NewtonVariant {
    /// `Δ(X)`, fibers are GC polytopes.
    #[serde(rename = "delta")]
    Delta,
    /// `Δ'(X)`, fibers are the transformed polytopes `Δ'_λ`.
    #[serde(rename = "delta-prime")]
    DeltaPrime,
}

/// `{(c, x) : c in moment, x in fiber(L c)}` in `R^{r + n²}`, where the
/// weight is `L c` for an `n x r` matrix `L` (a lattice basis) and the
/// fiber is `Δ_{Lc}` or `Δ'_{Lc}`. GC systems are linear in the weight,
/// so the union of fibers is cut out by one joint system.
pub fn fibered_polytope(moment: &HPolytope, lattice: &QMatrix, n: usize, variant: NewtonVariant) -> Result<HPolytope> {
    let r = moment.dim;
    if lattice.len() != n || lattice.iter().any(|row| row.len() != r) {
        return Err(Error::DimensionMismatch { expected: n, got: lattice.len() });
    }
    let d = n * n;
    let lt = linalg::transpose(lattice);
    let mut ineqs = Vec::new();
    for ineq in &moment.inequalities {
        let mut a = ineq.a.clone();
        a.extend(std::iter::repeat_n(Q::zero(), d));
        ineqs.push(Inequality::new(a, ineq.b.clone()));
    }
    for f in gc_forms(Group::Sp, n) {
        let lam: Vec<Q> = f.lam.iter().map(|&v| q(v)).collect();
        let mut a = if r == 0 { Vec::new() } else { linalg::mat_vec(&lt, &lam) };
        a.extend(f.pat.iter().map(|&v| q(v)));
        ineqs.push(Inequality::new(a, Q::zero()));
    }
    let delta = HPolytope::new(r + d, ineqs)?;
    match variant {
        NewtonVariant::Delta => Ok(delta),
        NewtonVariant::DeltaPrime => {
            // (c, p) lies in Δ'(X) iff (c, A p + B L c) lies in Δ(X)
            let cov = change_of_vars_matrices(n)?;
            let bl = linalg::mat_mul(&linalg::to_q_matrix(&cov.b), lattice);
            let a = linalg::to_q_matrix(&cov.a);
            let m = block(r, d, &bl, &a);
            delta.pullback(&m, &vec![Q::zero(); r + d])
        }
    }
}

/// `[[I_r, 0], [lower_left, lower_right]]`.
fn block(r: usize, d: usize, lower_left: &QMatrix, lower_right: &QMatrix) -> QMatrix {
    let mut m = vec![vec![Q::zero(); r + d]; r + d];
    for (i, row) in m.iter_mut().enumerate().take(r) {
        row[i] = Q::one();
    }
    for i in 0..d {
        for j in 0..r {
            m[r + i][j] = lower_left[i][j].clone();
        }
        for j in 0..d {
            m[r + i][r + j] = lower_right[i][j].clone();
        }
    }
    m
}

fn check_weights(weights: &[DominantWeight]) -> Result<usize> {
    let first = weights.first().ok_or_else(|| Error::InvalidArgument("empty weight list".into()))?;
    let n = first.n();
    if weights.iter().any(|w| w.group() != Group::Sp || w.n() != n) {
        return Err(Error::InvalidArgument("weights must all be SP(2n) weights of one rank".into()));
    }
    Ok(n)
}

/// Newton polytope in `(λ, x)`-space `R^{n + n²}` over the moment polytope
/// `conv(weights)`.
pub fn newton_polytope(weights: &[DominantWeight], variant: NewtonVariant) -> Result<HPolytope> {
    let n = check_weights(weights)?;
    let verts: Vec<Vec<Q>> = weights.iter().map(|w| w.lambda().to_vec()).collect();
    let moment = convex_hull(&verts, n)?;
    fibered_polytope(&moment, &linalg::identity(n), n, variant)
}

fn transform_matrix(n: usize, inverse: bool) -> Result<IntMatrix> {
    let cov = change_of_vars_matrices(n)?;
    let d = n * n;
    let (ll, lr): (QMatrix, QMatrix) = if inverse {
        (linalg::to_q_matrix(&cov.b), linalg::to_q_matrix(&cov.a))
    } else {
        let a_inv = linalg::to_q_matrix(&cov.a_inverse);
        let neg_ab: QMatrix = linalg::mat_mul(&a_inv, &linalg::to_q_matrix(&cov.b))
            .into_iter()
            .map(|row| row.into_iter().map(|v| -v).collect())
            .collect();
        (neg_ab, a_inv)
    };
    block(n, d, &ll, &lr)
        .iter()
        .map(|row| row.iter().map(|v| to_i64(v).ok_or(Error::Internal("non-integral transform".into()))).collect())
        .collect()
}

/// The integral map `(λ, x) -> (λ, A^{-1}(x - B λ))` sending `Δ(X)` to `Δ'(X)`.
pub fn newton_transform(p: &HPolytope, n: usize) -> Result<HPolytope> {
    if p.dim != n + n * n {
        return Err(Error::DimensionMismatch { expected: n + n * n, got: p.dim });
    }
    p.affine_image(&transform_matrix(n, false)?, &vec![Q::zero(); p.dim])
}

/// The inverse map `(λ, x) -> (λ, A x + B λ)`.
pub fn newton_transform_inverse(p: &HPolytope, n: usize) -> Result<HPolytope> {
    if p.dim != n + n * n {
        return Err(Error::DimensionMismatch { expected: n + n * n, got: p.dim });
    }
    p.affine_image(&transform_matrix(n, true)?, &vec![Q::zero(); p.dim])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyhedra::lattice_points;
    use crate::rational::q_frac;

    #[test]
    fn dominance_checks() {
        assert!(DominantWeight::sp(&[1, 2]).is_err());
        assert!(DominantWeight::sp(&[1, -1]).is_err());
        assert!(DominantWeight::gl(&[1, -1]).is_ok());
        let real = DominantWeight::new(Group::Sp, vec![q_frac(3, 2), q(0)]).unwrap();
        assert!(matches!(weyl_dim(&real), Err(Error::NotIntegral(_))));
        assert!(gc_polytope(&real).dim == 4);
    }

    #[test]
    fn weyl_examples() {
        assert_eq!(weyl_dim(&DominantWeight::sp(&[0, 0]).unwrap()).unwrap(), 1);
        assert_eq!(weyl_dim(&DominantWeight::sp(&[1, 0]).unwrap()).unwrap(), 4);
        assert_eq!(weyl_dim(&DominantWeight::sp(&[1, 1]).unwrap()).unwrap(), 5);
        assert_eq!(weyl_dim(&DominantWeight::sp(&[2, 0]).unwrap()).unwrap(), 10);
        assert_eq!(weyl_dim(&DominantWeight::sp(&[2, 2]).unwrap()).unwrap(), 14);
        for k in 0..6 {
            assert_eq!(weyl_dim(&DominantWeight::gl(&[k, 0]).unwrap()).unwrap(), k as u64 + 1);
        }
        assert_eq!(weyl_dim(&DominantWeight::gl(&[2, 1, 0]).unwrap()).unwrap(), 8);
    }

    #[test]
    fn sp4_fundamental_polytope() {
        let pts = lattice_points(&gc_polytope(&DominantWeight::sp(&[1, 0]).unwrap())).unwrap();
        assert_eq!(
            pts.points(),
            &[vec![0, 0, 0, 0], vec![1, 0, 0, 0], vec![1, 0, 1, 0], vec![1, 0, 1, 1]]
        );
        let origin = lattice_points(&gc_polytope(&DominantWeight::sp(&[0, 0]).unwrap())).unwrap();
        assert_eq!(origin.points(), &[vec![0, 0, 0, 0]]);
    }

    #[test]
    fn change_of_variables_small() {
        let c1 = change_of_vars_matrices(1).unwrap();
        assert_eq!(c1.a, vec![vec![-1]]);
        assert_eq!(c1.b, vec![vec![1]]);
        let c2 = change_of_vars_matrices(2).unwrap();
        // p order: p12, p13, p14, p23
        assert_eq!(
            c2.a,
            vec![vec![0, 0, -1, 0], vec![0, -1, 0, 0], vec![1, -1, 0, 0], vec![1, -1, 0, -1]]
        );
        assert_eq!(c2.b, vec![vec![1, 0], vec![0, 1], vec![0, 1], vec![0, 1]]);
        assert_eq!(c2.q_order, vec!["eta[1,1]", "eta[1,2]", "theta[1,1]", "eta[2,1]"]);
    }

    #[test]
    fn prime_polytope_contains_origin() {
        let w = DominantWeight::sp(&[1, 0]).unwrap();
        let pts = lattice_points(&gc_prime_polytope(&w).unwrap()).unwrap();
        assert_eq!(pts.len(), 4);
        assert!(pts.contains(&[0, 0, 0, 0]));
        assert!(gc_prime_polytope(&DominantWeight::gl(&[1, 0]).unwrap()).is_err());
    }

    #[test]
    fn newton_errors() {
        assert!(newton_polytope(&[], NewtonVariant::Delta).is_err());
        let mixed = [DominantWeight::sp(&[1, 0]).unwrap(), DominantWeight::sp(&[1, 0, 0]).unwrap()];
        assert!(newton_polytope(&mixed, NewtonVariant::Delta).is_err());
        let p = HPolytope::cube(3, q(0), q(1));
        assert!(newton_transform(&p, 2).is_err());
    }
}
