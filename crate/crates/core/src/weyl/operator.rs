//! Normal-ordered operators in the Weyl algebra
//! `A = ℚ⟨y_1, …, y_n, t, ∂_{y_1}, …, ∂_{y_n}, ∂_t⟩`.
//!
//! Every operator is stored in the normal order `y^α t^s ∂_y^β ∂_t^e`, so two
//! operators are equal iff their term maps are equal.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::model::{MonomialModel, MultiDegree};
use crate::rational::{qi, Q};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OpMonomial {
    pub y: Vec<u32>,
    pub t: u32,
    pub dy: Vec<u32>,
    pub dt: u32,
}

impl OpMonomial {
    pub fn one(n: usize) -> Self {
        OpMonomial { y: vec![0; n], t: 0, dy: vec![0; n], dt: 0 }
    }

    /// Order with respect to the filtration by `∂_y`-degree.
    pub fn dy_order(&self) -> u32 {
        self.dy.iter().sum()
    }

    pub fn degree(&self, model: &MonomialModel) -> MultiDegree {
        let s = self.t as i64 - self.dt as i64;
        MultiDegree(
            (0..self.y.len())
                .map(|i| self.y[i] as i64 - self.dy[i] as i64 + s * model.exponent(i) as i64)
                .collect(),
        )
    }
}

/// A commutative polynomial in `y_1..y_n, z_1..z_n`; `z_i` is the symbol of `∂_{y_i}`.
pub type SymbolPolynomial = BTreeMap<(Vec<u32>, Vec<u32>), Q>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylOperator {
    n: usize,
    terms: BTreeMap<OpMonomial, Q>,
}

fn falling(x: u32, k: u32) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, i| acc * BigInt::from(x - i))
}

fn binomial(n: u32, k: u32) -> BigInt {
    falling(n, k) / falling(k, k)
}

/// `∂^b x^c = Σ_k C(b,k) c!/(c−k)! x^{c−k} ∂^{b−k}`, returned as `(k, coefficient)`.
fn leibniz(b: u32, c: u32) -> Vec<(u32, BigInt)> {
    (0..=b.min(c)).map(|k| (k, binomial(b, k) * falling(c, k))).collect()
}

impl WeylOperator {
    pub fn zero(n: usize) -> Self {
        WeylOperator { n, terms: BTreeMap::new() }
    }

    pub fn constant(n: usize, c: Q) -> Self {
        let mut op = WeylOperator::zero(n);
        op.add_term(OpMonomial::one(n), c);
        op
    }

    pub fn one(n: usize) -> Self {
        WeylOperator::constant(n, qi(1))
    }

    pub fn monomial(m: OpMonomial, c: Q) -> Self {
        let mut op = WeylOperator::zero(m.y.len());
        op.add_term(m, c);
        op
    }

    /// `y_i` (0-based index).
    pub fn y(n: usize, i: usize) -> Self {
        let mut m = OpMonomial::one(n);
        m.y[i] = 1;
        WeylOperator::monomial(m, qi(1))
    }

    /// `∂_{y_i}` (0-based index).
    pub fn dy(n: usize, i: usize) -> Self {
        let mut m = OpMonomial::one(n);
        m.dy[i] = 1;
        WeylOperator::monomial(m, qi(1))
    }

    pub fn t(n: usize) -> Self {
        let mut m = OpMonomial::one(n);
        m.t = 1;
        WeylOperator::monomial(m, qi(1))
    }

    pub fn dt(n: usize) -> Self {
        let mut m = OpMonomial::one(n);
        m.dt = 1;
        WeylOperator::monomial(m, qi(1))
    }

    /// The Euler operator `θ = t∂_t`.
    pub fn theta(n: usize) -> Self {
        let mut m = OpMonomial::one(n);
        m.t = 1;
        m.dt = 1;
        WeylOperator::monomial(m, qi(1))
    }

    /// `y^v ∂_y^w`.
    pub fn y_dy(v: &[u32], w: &[u32]) -> Self {
        let mut m = OpMonomial::one(v.len());
        m.y = v.to_vec();
        m.dy = w.to_vec();
        WeylOperator::monomial(m, qi(1))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (&OpMonomial, &Q)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: OpMonomial, c: Q) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return WeylOperator::zero(self.n);
        }
        WeylOperator {
            n: self.n,
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    /// Normal-ordered product `self · other`.
    pub fn compose(&self, other: &WeylOperator) -> WeylOperator {
        assert_eq!(self.n, other.n, "operators over different ambient spaces");
        let n = self.n;
        let mut out = WeylOperator::zero(n);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                // Reorder ∂_{y_i}^{β1} y_i^{α2} per variable and ∂_t^{e1} t^{s2}.
                let mut choices: Vec<Vec<(u32, BigInt)>> =
                    (0..n).map(|i| leibniz(m1.dy[i], m2.y[i])).collect();
                choices.push(leibniz(m1.dt, m2.t));
                let base = c1 * c2;
                let mut idx = vec![0usize; n + 1];
                loop {
                    let mut coeff = BigInt::one();
                    let mut m = OpMonomial::one(n);
                    for i in 0..n {
                        let (k, ref c) = choices[i][idx[i]];
                        coeff *= c;
                        m.y[i] = m1.y[i] + m2.y[i] - k;
                        m.dy[i] = m1.dy[i] + m2.dy[i] - k;
                    }
                    let (l, ref c) = choices[n][idx[n]];
                    coeff *= c;
                    m.t = m1.t + m2.t - l;
                    m.dt = m1.dt + m2.dt - l;
                    out.add_term(m, &base * Q::from_integer(coeff));
                    // advance the mixed-radix counter
                    let mut pos = 0;
                    loop {
                        if pos > n {
                            break;
                        }
                        idx[pos] += 1;
                        if idx[pos] < choices[pos].len() {
                            break;
                        }
                        idx[pos] = 0;
                        pos += 1;
                    }
                    if pos > n {
                        break;
                    }
                }
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> WeylOperator {
        (0..k).fold(WeylOperator::one(self.n), |acc, _| acc.compose(self))
    }

    /// `P·Q − Q·P`.
    pub fn commutator(&self, other: &WeylOperator) -> WeylOperator {
        &self.compose(other) - &other.compose(self)
    }

    /// The multidegree if the operator is homogeneous (`None` for `0` or mixed degrees).
    pub fn homogeneous_degree(&self, model: &MonomialModel) -> Option<MultiDegree> {
        let mut degrees = self.terms.keys().map(|m| m.degree(model));
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    /// True when the operator lies in `𝒟_Y`, i.e. involves neither `t` nor `∂_t`.
    pub fn is_in_dy(&self) -> bool {
        self.terms.keys().all(|m| m.t == 0 && m.dt == 0)
    }

    pub fn dy_order(&self) -> Option<u32> {
        self.terms.keys().map(OpMonomial::dy_order).max()
    }

    /// Degree-`k` part of the principal symbol of an operator in `𝒟_Y`, in
    /// `ℚ[y, z]`.
    pub fn symbol(&self, k: u32) -> SymbolPolynomial {
        let mut out = SymbolPolynomial::new();
        for (m, c) in &self.terms {
            debug_assert!(m.t == 0 && m.dt == 0);
            if m.dy_order() == k {
                out.insert((m.y.clone(), m.dy.clone()), c.clone());
            }
        }
        out
    }
}

impl Add for &WeylOperator {
    type Output = WeylOperator;

    fn add(self, rhs: &WeylOperator) -> WeylOperator {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &WeylOperator {
    type Output = WeylOperator;

    fn sub(self, rhs: &WeylOperator) -> WeylOperator {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &WeylOperator {
    type Output = WeylOperator;

    fn neg(self) -> WeylOperator {
        self.scale(&qi(-1))
    }
}

impl Mul for &WeylOperator {
    type Output = WeylOperator;

    fn mul(self, rhs: &WeylOperator) -> WeylOperator {
        self.compose(rhs)
    }
}
