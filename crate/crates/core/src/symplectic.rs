//! SP(2n) and its irreducible modules realized as spaces of polynomial
//! functions on the maximal unipotent subgroup `U+`.

use std::collections::HashMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{format_polynomial, parse_polynomial, EchelonBasis, Polynomial, TermOrder, Universe};
use crate::error::{Error, Result};
use crate::gc::{weyl_dim, DominantWeight, Group};
use crate::linalg;
use crate::polyhedra::LatticePointSet;
use crate::rational::{q, Q};

pub type PolyMatrix = Vec<Vec<Polynomial>>;

/// The antidiagonal form `J` with `J[i][2n+1-i] = +1` for `i <= n` and `-1`
/// for `i > n` (1-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SymplecticForm {
    n: usize,
}

impl SymplecticForm {
    pub fn new(n: usize) -> Self {
        SymplecticForm { n }
    }

    pub fn size(&self) -> usize {
        2 * self.n
    }

    /// The sign `J[c][2n+1-c]`, 1-based.
    pub fn sign(&self, c: usize) -> i64 {
        if c <= self.n {
            1
        } else {
            -1
        }
    }

    /// `J[a][b]`, 1-based.
    pub fn entry(&self, a: usize, b: usize) -> i64 {
        if a + b == self.size() + 1 {
            self.sign(a)
        } else {
            0
        }
    }

    pub fn matrix(&self) -> Vec<Vec<i64>> {
        (1..=self.size()).map(|a| (1..=self.size()).map(|b| self.entry(a, b)).collect()).collect()
    }
}

/// The generic element of `U+`: unit upper triangular, free entries `x[i,j]`
/// for `i + j <= 2n + 1`, remaining entries solved from `uᵀ J u = J`.
#[derive(Clone, Debug, PartialEq)]
pub struct SymbolicUnipotentMatrix {
    n: usize,
    universe: Universe,
    entries: PolyMatrix,
}

impl SymbolicUnipotentMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn universe(&self) -> Universe {
        self.universe
    }

    /// Entry `(i, j)`, 1-based.
    pub fn get(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i - 1][j - 1]
    }

    pub fn entries(&self) -> &PolyMatrix {
        &self.entries
    }
}

pub fn generic_unipotent(n: usize) -> Result<SymbolicUnipotentMatrix> {
    let u = Universe::new(n, 0)?;
    let form = SymplecticForm::new(n);
    let size = 2 * n;
    let mut m: PolyMatrix = (0..size)
        .map(|i| (0..size).map(|j| if i == j { Polynomial::one(u) } else { Polynomial::zero(u) }).collect())
        .collect();
    for (i, j) in u.x_pairs() {
        m[i - 1][j - 1] = Polynomial::x(u, i, j)?;
    }
    // Entry (i, j) with i + j > 2n + 1 is fixed by the (2n+1-i, j) entry of
    // uᵀ J u = J, whose other terms involve entries closer to the diagonal.
    for diff in 1..size {
        for i in 1..=size - diff {
            let j = i + diff;
            if i + j <= size + 1 {
                continue;
            }
            let a = size + 1 - i;
            let mut s = Polynomial::zero(u);
            for c in 1..=size {
                if c == a {
                    continue;
                }
                let left = &m[c - 1][a - 1];
                let right = &m[size - c][j - 1];
                if left.is_zero() || right.is_zero() {
                    continue;
                }
                s.add_scaled(&q(form.sign(c)), &(left * right));
            }
            m[i - 1][j - 1] = s.scale(&q(-form.sign(a)));
        }
    }
    let out = SymbolicUnipotentMatrix { n, universe: u, entries: m };
    if !preserves_form(&out) {
        return Err(Error::Internal("generic unipotent matrix does not preserve J".into()));
    }
    Ok(out)
}

/// Checks `uᵀ J u = J` symbolically.
pub fn preserves_form(u: &SymbolicUnipotentMatrix) -> bool {
    let form = SymplecticForm::new(u.n);
    let size = form.size();
    let univ = u.universe;
    for a in 1..=size {
        for b in 1..=size {
            let mut s = Polynomial::zero(univ);
            for c in 1..=size {
                let left = u.get(c, a);
                let right = u.get(size + 1 - c, b);
                if !left.is_zero() && !right.is_zero() {
                    s.add_scaled(&q(form.sign(c)), &(left * right));
                }
            }
            if s != Polynomial::constant(univ, q(form.entry(a, b))) {
                return false;
            }
        }
    }
    true
}

fn mat_mul(a: &PolyMatrix, b: &PolyMatrix, u: Universe) -> PolyMatrix {
    let size = a.len();
    (0..size)
        .map(|i| {
            (0..size)
                .map(|j| {
                    let mut s = Polynomial::zero(u);
                    for k in 0..size {
                        if !a[i][k].is_zero() && !b[k][j].is_zero() {
                            s = &s + &(&a[i][k] * &b[k][j]);
                        }
                    }
                    s
                })
                .collect()
        })
        .collect()
}

/// The inverse by back-substitution, cross-checked against `-J uᵀ J` and
/// `u · u^{-1} = I`.
#[allow(clippy::needless_range_loop)]
pub fn symbolic_inverse(u: &SymbolicUnipotentMatrix) -> Result<PolyMatrix> {
    let size = 2 * u.n;
    let univ = u.universe;
    let mut v: PolyMatrix = vec![vec![Polynomial::zero(univ); size]; size];
    for j in 0..size {
        v[j][j] = Polynomial::one(univ);
        for i in (0..j).rev() {
            let mut s = Polynomial::zero(univ);
            for k in i + 1..=j {
                if !u.entries[i][k].is_zero() && !v[k][j].is_zero() {
                    s = &s - &(&u.entries[i][k] * &v[k][j]);
                }
            }
            v[i][j] = s;
        }
    }
    let form = SymplecticForm::new(u.n);
    for a in 1..=size {
        for b in 1..=size {
            let via_form = u
                .get(size + 1 - b, size + 1 - a)
                .scale(&q(-form.sign(a) * form.sign(size + 1 - b)));
            if via_form != v[a - 1][b - 1] {
                return Err(Error::Internal(format!("inverse entry ({a},{b}) disagrees with -J uᵀ J")));
            }
        }
    }
    let id = mat_mul(&u.entries, &v, univ);
    for (i, row) in id.iter().enumerate() {
        for (j, e) in row.iter().enumerate() {
            let want = if i == j { Polynomial::one(univ) } else { Polynomial::zero(univ) };
            if *e != want {
                return Err(Error::Internal("u · u^{-1} is not the identity".into()));
            }
        }
    }
    Ok(v)
}

/// A basis of `φ_λ(V_λ) ⊂ C[U+]`, in reduced echelon form for the Okounkov
/// order; the highest weight vector maps to the constant 1.
#[derive(Clone, Debug, PartialEq)]
pub struct RepSpace {
    weight: DominantWeight,
    basis: Vec<Polynomial>,
}

impl RepSpace {
    /// Checks the weight and reduces `fs` to canonical echelon form.
    pub fn from_spanning(weight: DominantWeight, fs: &[Polynomial]) -> Result<Self> {
        if weight.group() != Group::Sp {
            return Err(Error::InvalidArgument("representation spaces are built for SP(2n) only".into()));
        }
        let u = Universe::new(weight.n(), 0)?;
        if let Some(f) = fs.iter().find(|f| *f.universe() != u) {
            return Err(Error::UniverseMismatch(format!("basis element in {:?}, expected {u:?}", f.universe())));
        }
        let basis = crate::algebra::row_echelon(fs, &TermOrder::okounkov(u));
        Ok(RepSpace { weight, basis })
    }

    pub fn trivial(n: usize) -> Result<Self> {
        let w = DominantWeight::sp(&vec![0; n])?;
        let u = Universe::new(n, 0)?;
        Ok(RepSpace { weight: w, basis: vec![Polynomial::one(u)] })
    }

    pub fn weight(&self) -> &DominantWeight {
        &self.weight
    }

    pub fn n(&self) -> usize {
        self.weight.n()
    }

    pub fn universe(&self) -> Universe {
        Universe::new(self.n(), 0).expect("n >= 1")
    }

    pub fn order(&self) -> TermOrder {
        TermOrder::okounkov(self.universe())
    }

    pub fn basis(&self) -> &[Polynomial] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// The distinguished element `f_λ = 1`.
    pub fn highest(&self) -> Polynomial {
        Polynomial::one(self.universe())
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        let mut e = EchelonBasis::new(self.order());
        for b in &self.basis {
            e.insert(b);
        }
        e.contains(f)
    }
}

#[derive(Serialize, Deserialize)]
struct RepSpaceDoc {
    weight: DominantWeight,
    basis: Vec<String>,
}

impl Serialize for RepSpace {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let order = self.order();
        RepSpaceDoc {
            weight: self.weight.clone(),
            basis: self.basis.iter().map(|f| format_polynomial(f, &order)).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for RepSpace {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let doc = RepSpaceDoc::deserialize(d)?;
        let u = Universe::new(doc.weight.n(), 0).map_err(D::Error::custom)?;
        let fs = doc
            .basis
            .iter()
            .map(|s| parse_polynomial(s, u))
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        RepSpace::from_spanning(doc.weight, &fs).map_err(D::Error::custom)
    }
}

fn subsets(size: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, size: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for s in start..size {
            cur.push(s);
            go(s + 1, size, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, size, k, &mut Vec::with_capacity(k), &mut out);
    out
}

/// Minors of the top `k` rows of `m` for every column set, by Laplace
/// expansion along the last row with memoization on column bitmasks.
fn top_minors(m: &PolyMatrix, k: usize, u: Universe) -> HashMap<u64, Polynomial> {
    let size = m[0].len();
    let mut memo: HashMap<u64, Polynomial> = HashMap::new();
    memo.insert(0, Polynomial::one(u));
    for rows in 1..=k {
        let mut next = HashMap::new();
        for cols in subsets(size, rows) {
            let mask: u64 = cols.iter().map(|&c| 1u64 << c).sum();
            let mut det = Polynomial::zero(u);
            for (pos, &c) in cols.iter().enumerate() {
                let entry = &m[rows - 1][c];
                if entry.is_zero() {
                    continue;
                }
                let sub = &memo[&(mask & !(1u64 << c))];
                if sub.is_zero() {
                    continue;
                }
                let sign = if (rows - 1 + pos) % 2 == 0 { 1 } else { -1 };
                det.add_scaled(&q(sign), &(entry * sub));
            }
            next.insert(mask, det);
        }
        memo = next;
    }
    memo
}

/// `V_{ω_k}` as the kernel of the contraction `Λ^k → Λ^{k-2}` against `J`,
/// each vector `v` mapped to `f_v(u) = Σ_S v_S det(u^{-1}[1..k, S])`.
pub fn fundamental_rep(n: usize, k: usize) -> Result<RepSpace> {
    let weight = DominantWeight::fundamental(n, k)?;
    let u = generic_unipotent(n)?;
    let inv = symbolic_inverse(&u)?;
    let univ = u.universe();
    let size = 2 * n;
    let form = SymplecticForm::new(n);
    let cols = subsets(size, k);
    let kernel: Vec<Vec<Q>> = if k < 2 {
        (0..cols.len())
            .map(|i| (0..cols.len()).map(|j| if i == j { Q::one() } else { Q::zero() }).collect())
            .collect()
    } else {
        let targets = subsets(size, k - 2);
        let index: HashMap<Vec<usize>, usize> = targets.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
        let mut m = vec![vec![Q::zero(); cols.len()]; targets.len()];
        for (ci, s) in cols.iter().enumerate() {
            for a in 0..k {
                for b in a + 1..k {
                    let j = form.entry(s[a] + 1, s[b] + 1);
                    if j == 0 {
                        continue;
                    }
                    let sign = if (a + b + 1) % 2 == 0 { 1 } else { -1 };
                    let rest: Vec<usize> = s.iter().enumerate().filter(|&(p, _)| p != a && p != b).map(|(_, &v)| v).collect();
                    m[index[&rest]][ci] += q(sign * j);
                }
            }
        }
        linalg::nullspace(&m, cols.len())
    };
    let minors = top_minors(&inv, k, univ);
    let fs: Vec<Polynomial> = kernel
        .iter()
        .map(|v| {
            let mut f = Polynomial::zero(univ);
            for (coef, s) in v.iter().zip(&cols) {
                if !coef.is_zero() {
                    let mask: u64 = s.iter().map(|&c| 1u64 << c).sum();
                    f.add_scaled(coef, &minors[&mask]);
                }
            }
            f
        })
        .collect();
    let space = RepSpace::from_spanning(weight, &fs)?;
    check_dim(&space)?;
    Ok(space)
}

fn check_dim(space: &RepSpace) -> Result<()> {
    let want = weyl_dim(space.weight())? as usize;
    if space.dim() != want {
        return Err(Error::Internal(format!(
            "space for {} has dimension {} but the Weyl formula gives {want}",
            space.weight(),
            space.dim()
        )));
    }
    Ok(())
}

/// The Cartan component `V_{λ+μ}`, spanned by all pairwise products.
pub fn cartan_product(s: &RepSpace, t: &RepSpace) -> Result<RepSpace> {
    if s.n() != t.n() {
        return Err(Error::InvalidArgument("Cartan product of spaces of different rank".into()));
    }
    let weight = s.weight().add(t.weight())?;
    let mut e = EchelonBasis::new(s.order());
    let target = weyl_dim(&weight)? as usize;
    'outer: for f in s.basis() {
        for g in t.basis() {
            e.insert(&(f * g));
            if e.dim() > target {
                break 'outer;
            }
        }
    }
    let space = RepSpace { weight, basis: e.into_reduced() };
    check_dim(&space)?;
    Ok(space)
}

/// `V_λ` as an iterated Cartan product of fundamental representations.
pub fn rep_space(w: &DominantWeight) -> Result<RepSpace> {
    if w.group() != Group::Sp {
        return Err(Error::InvalidArgument("representation spaces are built for SP(2n) only".into()));
    }
    let n = w.n();
    let coeffs = w.fundamental_coefficients()?;
    let mut acc = RepSpace::trivial(n)?;
    for (k, &a) in coeffs.iter().enumerate() {
        if a == 0 {
            continue;
        }
        let fund = fundamental_rep(n, k + 1)?;
        for _ in 0..a {
            acc = cartan_product(&acc, &fund)?;
        }
    }
    Ok(acc)
}

/// Initial exponents (x-coordinates) of the echelon basis of `s`.
pub fn initial_exponent_set(s: &RepSpace, order: &TermOrder) -> Result<LatticePointSet> {
    let mut e = EchelonBasis::new(order.clone());
    for f in s.basis() {
        if *f.universe() != *order.universe() {
            return Err(Error::UniverseMismatch("representation space and term order".into()));
        }
        e.insert(f);
    }
    let nx = s.universe().num_x();
    Ok(e.initial_exponents().iter().map(|ex| ex.to_i64_vec()[..nx].to_vec()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ExponentVector;

    #[test]
    fn form_squares_to_minus_identity() {
        for n in 1..4 {
            let j = SymplecticForm::new(n).matrix();
            let size = 2 * n;
            for a in 0..size {
                for b in 0..size {
                    let sq: i64 = (0..size).map(|c| j[a][c] * j[c][b]).sum();
                    assert_eq!(sq, if a == b { -1 } else { 0 });
                    assert_eq!(j[a][b], -j[b][a]);
                }
            }
        }
    }

    #[test]
    fn unipotent_and_inverse() {
        for n in 1..=4 {
            let u = generic_unipotent(n).unwrap();
            assert!(preserves_form(&u));
            let inv = symbolic_inverse(&u).unwrap();
            assert!((0..2 * n).all(|i| inv[i][i] == Polynomial::one(u.universe())));
        }
        let u = generic_unipotent(2).unwrap();
        let un = u.universe();
        let inv = symbolic_inverse(&u).unwrap();
        let want = &(&Polynomial::x(un, 1, 2).unwrap() * &Polynomial::x(un, 2, 3).unwrap()) - &Polynomial::x(un, 1, 3).unwrap();
        assert_eq!(inv[0][2], want);
        assert!(u.get(2, 4).num_terms() > 0);
    }

    #[test]
    fn fundamental_dimensions() {
        let v = fundamental_rep(1, 1).unwrap();
        assert_eq!(v.dim(), 2);
        let v = fundamental_rep(2, 1).unwrap();
        assert_eq!(v.dim(), 4);
        assert!(v.contains(&Polynomial::one(v.universe())));
        assert!(v.contains(&-&Polynomial::x(v.universe(), 1, 2).unwrap()));
        assert_eq!(fundamental_rep(2, 2).unwrap().dim(), 5);
        assert!(fundamental_rep(2, 3).is_err());
        assert_eq!(fundamental_rep(3, 3).unwrap().dim(), 14);
    }

    #[test]
    fn cartan_products() {
        let w1 = fundamental_rep(2, 1).unwrap();
        let w2 = fundamental_rep(2, 2).unwrap();
        assert_eq!(cartan_product(&w1, &RepSpace::trivial(2).unwrap()).unwrap(), w1);
        assert_eq!(cartan_product(&w1, &w1).unwrap().dim(), 10);
        assert_eq!(cartan_product(&w1, &w2).unwrap().dim(), 16);
        assert_eq!(rep_space(&DominantWeight::sp(&[0, 0]).unwrap()).unwrap().dim(), 1);
    }

    #[test]
    fn trivial_initials() {
        let s = RepSpace::trivial(2).unwrap();
        let pts = initial_exponent_set(&s, &s.order()).unwrap();
        assert_eq!(pts.points(), &[vec![0, 0, 0, 0]]);
        let _ = ExponentVector::zero(&s.universe());
    }

    #[test]
    fn rep_space_json_round_trip() {
        let s = rep_space(&DominantWeight::sp(&[1, 1]).unwrap()).unwrap();
        let js = serde_json::to_string(&s).unwrap();
        let back: RepSpace = serde_json::from_str(&js).unwrap();
        assert_eq!(back, s);
        assert_eq!(serde_json::to_string(&back).unwrap(), js);
    }
}
