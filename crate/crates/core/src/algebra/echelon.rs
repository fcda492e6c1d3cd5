use std::collections::HashMap;

use num_traits::One;

use super::monomial::ExponentVector;
use super::order::TermOrder;
use super::poly::Polynomial;

/// Incremental echelon form: a basis with pairwise-distinct initial
/// exponents, each basis element monic.
#[derive(Clone, Debug)]
pub struct EchelonBasis {
    order: TermOrder,
    rows: Vec<Polynomial>,
    pivots: HashMap<ExponentVector, usize>,
}

impl EchelonBasis {
    pub fn new(order: TermOrder) -> Self {
        EchelonBasis { order, rows: Vec::new(), pivots: HashMap::new() }
    }

    pub fn order(&self) -> &TermOrder {
        &self.order
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Top-reduces `f` against the basis. The result is zero exactly when
    /// `f` lies in the span.
    pub fn reduce(&self, f: &Polynomial) -> Polynomial {
        let mut f = f.clone();
        loop {
            let (e, c) = match f.initial_unchecked(&self.order) {
                Some((e, c)) => (e.clone(), c.clone()),
                None => return f,
            };
            match self.pivots.get(&e) {
                Some(&i) => f.sub_scaled(&c, &self.rows[i]),
                None => return f,
            }
        }
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        self.reduce(f).is_zero()
    }

    /// Adds `f` to the span. Returns `true` when the dimension grew.
    pub fn insert(&mut self, f: &Polynomial) -> bool {
        let r = self.reduce(f);
        if r.is_zero() {
            return false;
        }
        let r = r.monic(&self.order);
        let (e, _) = r.initial_unchecked(&self.order).expect("nonzero");
        let e = e.clone();
        self.pivots.insert(e, self.rows.len());
        self.rows.push(r);
        true
    }

    /// Initial exponents of the basis, in insertion order.
    pub fn initial_exponents(&self) -> Vec<ExponentVector> {
        self.rows
            .iter()
            .map(|r| r.initial_unchecked(&self.order).expect("nonzero").0.clone())
            .collect()
    }

    pub fn rows(&self) -> &[Polynomial] {
        &self.rows
    }

    /// The canonical reduced basis: monic, no basis element contains another
    /// element's initial exponent, sorted by initial exponent descending.
    pub fn into_reduced(self) -> Vec<Polynomial> {
        let order = self.order;
        let mut rows = self.rows;
        rows.sort_by(|a, b| {
            let ea = a.initial_unchecked(&order).expect("nonzero").0;
            let eb = b.initial_unchecked(&order).expect("nonzero").0;
            order.cmp(eb, ea)
        });
        let pivots: HashMap<ExponentVector, usize> = rows
            .iter()
            .enumerate()
            .map(|(i, r)| (r.initial_unchecked(&order).expect("nonzero").0.clone(), i))
            .collect();
        // Process from the lowest pivot upwards so that every row used for
        // elimination is already fully reduced.
        for i in (0..rows.len()).rev() {
            loop {
                let lead = rows[i].initial_unchecked(&order).expect("nonzero").0.clone();
                let target = rows[i]
                    .terms()
                    .filter(|(e, _)| **e != lead)
                    .filter_map(|(e, c)| pivots.get(e).map(|&j| (j, c.clone())))
                    .next();
                match target {
                    Some((j, c)) => {
                        debug_assert!(j > i);
                        let pivot_row = rows[j].clone();
                        rows[i].sub_scaled(&c, &pivot_row);
                    }
                    None => break,
                }
            }
        }
        debug_assert!(rows.iter().all(|r| r.initial_unchecked(&order).map(|(_, c)| c.is_one()).unwrap_or(false)));
        rows
    }
}

/// A basis of the rational span of `fs` with pairwise-distinct initial
/// exponents. The output is the reduced echelon form, so it depends only on
/// the span.
pub fn row_echelon(fs: &[Polynomial], order: &TermOrder) -> Vec<Polynomial> {
    let mut basis = EchelonBasis::new(order.clone());
    for f in fs {
        if !f.is_zero() {
            basis.insert(f);
        }
    }
    basis.into_reduced()
}

/// Whether two families span the same space.
pub fn same_span(a: &[Polynomial], b: &[Polynomial], order: &TermOrder) -> bool {
    let mut ea = EchelonBasis::new(order.clone());
    let mut eb = EchelonBasis::new(order.clone());
    a.iter().for_each(|f| {
        ea.insert(f);
    });
    b.iter().for_each(|f| {
        eb.insert(f);
    });
    a.iter().all(|f| eb.contains(f)) && b.iter().all(|f| ea.contains(f))
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Universe;
    use crate::rational::q;

    #[test]
    fn duplicates_collapse() {
        let u = Universe::new(2, 0).unwrap();
        let o = TermOrder::okounkov(u);
        let f = &Polynomial::x(u, 1, 2).unwrap().scale(&q(3)) + &Polynomial::x(u, 2, 3).unwrap();
        let out = row_echelon(&[f.clone(), f.clone()], &o);
        assert_eq!(out.len(), 1);
        assert_eq!(out[0], f.monic(&o));
    }

    #[test]
    fn distinct_initials() {
        let u = Universe::new(2, 0).unwrap();
        let o = TermOrder::okounkov(u);
        let x12 = Polynomial::x(u, 1, 2).unwrap();
        let out = row_echelon(&[&Polynomial::one(u) + &x12, x12.clone()], &o);
        assert_eq!(out.len(), 2);
        assert_eq!(out[0], Polynomial::one(u));
        assert_eq!(out[1], x12);
        assert!(row_echelon(&[], &o).is_empty());
    }
}
