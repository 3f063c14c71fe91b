//! Elements of `B_g^r = ω_X ⊗ B_g` in the normal form `Σ c · y^v dy ∂_t^m δ`.

use std::collections::BTreeMap;
use std::ops::{Add, Neg, Sub};

use num_traits::Zero;

use super::operator::{OpMonomial, WeylOperator};
use crate::error::{invalid, Result};
use crate::model::{MonomialModel, MultiDegree};
use crate::rational::{qi, Q};

/// Key of a normal-form term: exponent vector `v` and `∂_t`-order `m`.
pub type BgKey = (Vec<u32>, u32);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BgElement {
    n: usize,
    terms: BTreeMap<BgKey, Q>,
}

/// Generators of the Weyl algebra, 0-based for the `y` variables.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Gen {
    Y(usize),
    Dy(usize),
    T,
    Dt,
}

impl BgElement {
    pub fn zero(n: usize) -> Self {
        BgElement { n, terms: BTreeMap::new() }
    }

    /// `c · y^v dy ∂_t^m δ`.
    pub fn term(v: Vec<u32>, m: u32, c: Q) -> Self {
        let mut u = BgElement::zero(v.len());
        u.add_term(v, m, c);
        u
    }

    /// `dy ∂_t^m δ`.
    pub fn delta(n: usize, m: u32) -> Self {
        BgElement::term(vec![0; n], m, qi(1))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BgKey, &Q)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, v: &[u32], m: u32) -> Q {
        self.terms.get(&(v.to_vec(), m)).cloned().unwrap_or_else(Q::zero)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn add_term(&mut self, v: Vec<u32>, m: u32, c: Q) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry((v, m)) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return BgElement::zero(self.n);
        }
        BgElement {
            n: self.n,
            terms: self.terms.iter().map(|(k, x)| (k.clone(), x * c)).collect(),
        }
    }

    /// Largest `∂_t`-order occurring, `None` for zero.
    pub fn max_order(&self) -> Option<u32> {
        self.terms.keys().map(|(_, m)| *m).max()
    }

    /// Terms grouped by multidegree `v − m·a`.
    pub fn multidegree(&self, model: &MonomialModel) -> BTreeMap<MultiDegree, BgElement> {
        let mut out: BTreeMap<MultiDegree, BgElement> = BTreeMap::new();
        for ((v, m), c) in &self.terms {
            out.entry(term_degree(v, *m, model))
                .or_insert_with(|| BgElement::zero(self.n))
                .add_term(v.clone(), *m, c.clone());
        }
        out
    }

    /// The multidegree if all terms share one.
    pub fn homogeneous_degree(&self, model: &MonomialModel) -> Option<MultiDegree> {
        let mut it = self.terms.keys().map(|(v, m)| term_degree(v, *m, model));
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    /// Right action of a single generator.
    pub fn act_gen(&self, g: Gen, model: &MonomialModel) -> BgElement {
        let n = self.n;
        let mut out = BgElement::zero(n);
        for ((v, m), c) in &self.terms {
            match g {
                Gen::Y(i) => {
                    let mut w = v.clone();
                    w[i] += 1;
                    out.add_term(w, *m, c.clone());
                }
                Gen::Dy(i) => {
                    if v[i] > 0 {
                        let mut w = v.clone();
                        w[i] -= 1;
                        out.add_term(w, *m, -c * qi(v[i] as i64));
                    }
                    let ai = model.exponent(i);
                    if ai > 0 {
                        let mut w = shifted_by_a(v, model);
                        w[i] -= 1;
                        out.add_term(w, m + 1, c * qi(ai as i64));
                    }
                }
                Gen::T => {
                    out.add_term(shifted_by_a(v, model), *m, c.clone());
                    if *m > 0 {
                        out.add_term(v.clone(), m - 1, -c * qi(*m as i64));
                    }
                }
                Gen::Dt => out.add_term(v.clone(), m + 1, -c.clone()),
            }
        }
        out
    }

    fn act_gen_pow(&self, g: Gen, k: u32, model: &MonomialModel) -> BgElement {
        let mut u = self.clone();
        for _ in 0..k {
            if u.is_zero() {
                break;
            }
            u = u.act_gen(g, model);
        }
        u
    }

    /// `u · y^α t^s ∂_y^β ∂_t^e`.
    pub fn act_monomial(&self, mono: &OpMonomial, model: &MonomialModel) -> BgElement {
        let mut u = self.clone();
        for (i, &k) in mono.y.iter().enumerate() {
            u = u.act_gen_pow(Gen::Y(i), k, model);
        }
        u = u.act_gen_pow(Gen::T, mono.t, model);
        for (i, &k) in mono.dy.iter().enumerate() {
            u = u.act_gen_pow(Gen::Dy(i), k, model);
        }
        u.act_gen_pow(Gen::Dt, mono.dt, model)
    }

    /// Normal form of `u · P`.
    pub fn act_right(&self, op: &WeylOperator, model: &MonomialModel) -> BgElement {
        assert_eq!(self.n, op.n(), "element and operator over different ambient spaces");
        let mut out = BgElement::zero(self.n);
        for (mono, c) in op.terms() {
            let part = self.act_monomial(mono, model);
            for ((v, m), x) in part.terms {
                out.add_term(v, m, x * c);
            }
        }
        out
    }

    pub fn validate(&self, model: &MonomialModel) -> Result<()> {
        if self.n != model.n() {
            return invalid(format!("element has {} variables, model has {}", self.n, model.n()));
        }
        Ok(())
    }
}

fn shifted_by_a(v: &[u32], model: &MonomialModel) -> Vec<u32> {
    v.iter().enumerate().map(|(i, &x)| x + model.exponent(i)).collect()
}

/// Multidegree `v − m·a` of a single term.
pub fn term_degree(v: &[u32], m: u32, model: &MonomialModel) -> MultiDegree {
    MultiDegree(
        v.iter()
            .enumerate()
            .map(|(i, &x)| x as i64 - m as i64 * model.exponent(i) as i64)
            .collect(),
    )
}

impl Add for &BgElement {
    type Output = BgElement;

    fn add(self, rhs: &BgElement) -> BgElement {
        let mut out = self.clone();
        for ((v, m), c) in &rhs.terms {
            out.add_term(v.clone(), *m, c.clone());
        }
        out
    }
}

impl Sub for &BgElement {
    type Output = BgElement;

    fn sub(self, rhs: &BgElement) -> BgElement {
        self + &(-rhs)
    }
}

impl Neg for &BgElement {
    type Output = BgElement;

    fn neg(self) -> BgElement {
        self.scale(&qi(-1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn y2() -> MonomialModel {
        MonomialModel::new(1, vec![2]).unwrap()
    }

    #[test]
    fn dy_on_y_squared() {
        let m = y2();
        let u = BgElement::delta(1, 0).act_right(&WeylOperator::dy(1, 0), &m);
        assert_eq!(u, BgElement::term(vec![1], 1, qi(2)));
    }

    #[test]
    fn dy1_on_y1y2() {
        let m = MonomialModel::new(2, vec![1, 1]).unwrap();
        let u = BgElement::delta(2, 0).act_right(&WeylOperator::dy(2, 0), &m);
        assert_eq!(u, BgElement::term(vec![0, 1], 1, qi(1)));
    }

    #[test]
    fn identity_operator() {
        let m = y2();
        let u = &BgElement::term(vec![3], 2, qi(5)) + &BgElement::delta(1, 1);
        assert_eq!(u.act_right(&WeylOperator::one(1), &m), u);
    }

    #[test]
    fn multidegrees() {
        let m = y2();
        let d = BgElement::delta(1, 0).multidegree(&m);
        assert_eq!(d.keys().cloned().collect::<Vec<_>>(), vec![MultiDegree(vec![0])]);
        let u = BgElement::term(vec![1], 1, qi(1));
        assert_eq!(u.homogeneous_degree(&m), Some(MultiDegree(vec![-1])));
        let m2 = MonomialModel::new(2, vec![1, 1]).unwrap();
        assert_eq!(BgElement::delta(2, 1).homogeneous_degree(&m2), Some(MultiDegree(vec![-1, -1])));
    }

    #[test]
    fn theta_action_formula() {
        // u·θ = −y^{v+a}∂_t^{m+1} + m·u
        let m = MonomialModel::new(2, vec![2, 1]).unwrap();
        let u = BgElement::term(vec![1, 0], 2, qi(1));
        let got = u.act_right(&WeylOperator::theta(2), &m);
        let expected = &BgElement::term(vec![3, 1], 3, qi(-1)) + &u.scale(&qi(2));
        assert_eq!(got, expected);
    }

    #[test]
    fn transversal_variable_has_no_dt_term() {
        let m = MonomialModel::new(2, vec![2]).unwrap();
        let u = BgElement::term(vec![0, 3], 0, qi(1));
        let got = u.act_right(&WeylOperator::dy(2, 1), &m);
        assert_eq!(got, BgElement::term(vec![0, 2], 0, qi(-3)));
    }
}
