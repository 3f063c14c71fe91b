//! The complex `C̄_G` of right `𝒟_Y`-modules at the operator level.
//!
//! Using the trivialization `ū = y^G ⊗ (s_2 ∧ … ∧ s_n)` of the twisted relative
//! log forms, `C̄_G^{−q} = ∧^{n−1−q}(s_2, …, s_n) ⊗ 𝒟_Y` with differential
//! `η ⊗ P ↦ Σ_k s_k ∧ η ⊗ L_k P`, where
//! `L_k = y_k∂_k/a_k − y_1∂_1/a_1 + G_k/a_k − G_1/a_1` for `2 ≤ k ≤ r` and
//! `L_j = ∂_j` for `j > r`.

use std::collections::BTreeMap;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::forms::{binomial, LogFormSymbol};
use crate::error::{invalid, Result};
use crate::model::MonomialModel;
use crate::rational::{q, qi, Q};
use crate::report::CheckRecord;
use crate::snc::{round_up, SncDivisor};
use crate::weyl::{BgElement, OpMonomial, WeylOperator};

/// A chain: form monomial ↦ operator coefficient.
pub type Chain = BTreeMap<LogFormSymbol, WeylOperator>;

#[derive(Clone, Debug)]
pub struct FilteredKoszulComplex {
    model: MonomialModel,
    twist: Vec<i64>,
    /// `(symbol index, L_k)` for symbols `1..n`.
    generators: Vec<(usize, WeylOperator)>,
}

fn euler(n: usize, k: usize, a: u32, c: i64) -> WeylOperator {
    let mut e = vec![0; n];
    e[k] = 1;
    &WeylOperator::y_dy(&e, &e).scale(&q(1, a as i64)) + &WeylOperator::constant(n, q(c, a as i64))
}

/// Builds `C̄_G` for an effective `G` supported on `E_1, …, E_r`.
pub fn build_cbar(model: &MonomialModel, g: &SncDivisor) -> Result<FilteredKoszulComplex> {
    let (n, r) = (model.n(), model.r());
    if g.len() < r || g.len() > n {
        return invalid(format!("twist has {} components, expected {r}", g.len()));
    }
    if g.coeffs[r..].iter().any(|&c| c != 0) {
        return invalid("twist must be supported on the divisor components");
    }
    if !g.is_effective() {
        return invalid("twist must be effective");
    }
    let twist: Vec<i64> = (0..n).map(|i| if i < r { g.coeffs[i] } else { 0 }).collect();
    let a = model.exponents();
    let first = euler(n, 0, a[0], twist[0]);
    let generators = (1..n)
        .map(|k| {
            let op = if k < r { &euler(n, k, a[k], twist[k]) - &first } else { WeylOperator::dy(n, k) };
            (k, op)
        })
        .collect();
    Ok(FilteredKoszulComplex { model: model.clone(), twist, generators })
}

impl FilteredKoszulComplex {
    pub fn model(&self) -> &MonomialModel {
        &self.model
    }

    pub fn twist(&self) -> &[i64] {
        &self.twist
    }

    pub fn generators(&self) -> impl Iterator<Item = &WeylOperator> {
        self.generators.iter().map(|(_, g)| g)
    }

    /// Rank of `C̄^{−q}` as a free `𝒟_Y`-module.
    pub fn rank(&self, q: usize) -> usize {
        let n = self.model.n();
        if q >= n {
            0
        } else {
            binomial(n - 1, n - 1 - q)
        }
    }

    /// Length of the complex: it lives in degrees `−(n−1)..=0`.
    pub fn length(&self) -> usize {
        self.model.n() - 1
    }

    pub fn differential(&self, x: &Chain) -> Chain {
        let mut out = Chain::new();
        for (eta, p) in x {
            for (k, l) in &self.generators {
                if let Some((sign, m)) = eta.wedge_left(*k) {
                    let term = l.compose(p).scale(&qi(sign));
                    let e = out.entry(m).or_insert_with(|| WeylOperator::zero(self.model.n()));
                    *e = &*e + &term;
                }
            }
        }
        out.retain(|_, p| !p.is_zero());
        out
    }

    pub fn generators_commute(&self) -> bool {
        self.generators
            .iter()
            .all(|(_, x)| self.generators.iter().all(|(_, y)| x.commutator(y).is_zero()))
    }

    /// `d ∘ d = 0` on the basis chains `η ⊗ P` for the given operators.
    pub fn d_squared_zero(&self, ops: &[WeylOperator]) -> bool {
        let n = self.model.n();
        (0..n).all(|deg| {
            LogFormSymbol::relative(n, deg).into_iter().all(|eta| {
                ops.iter().all(|p| {
                    let x: Chain = [(eta, p.clone())].into_iter().collect();
                    self.differential(&self.differential(&x)).is_empty()
                })
            })
        })
    }

    /// `y^{G−E}` exponent, i.e. `b` when `G = D_α`.
    fn b(&self) -> Vec<u32> {
        let r = self.model.r();
        self.twist.iter().enumerate().map(|(i, &g)| if i < r { (g - 1).max(0) as u32 } else { 0 }).collect()
    }

    /// Augmentation on degree-0 chains: `ū·P ↦ a_1⋯a_r y^{G−E} dy δ · P`.
    pub fn sigma(&self, x: &Chain) -> BgElement {
        let n = self.model.n();
        let start = BgElement::term(self.b(), 0, qi(self.model.product_of_exponents()));
        let mut out = BgElement::zero(n);
        if let Some(p) = x.get(&LogFormSymbol::relative_top(n)) {
            out = &out + &start.act_right(p, &self.model);
        }
        out
    }

    /// The endomorphism of degree-0 chains obtained by lifting to absolute log
    /// forms, applying the absolute differential and dividing by `dlog g ∧`.
    pub fn monodromy(&self, x: &Chain) -> Chain {
        let (n, r) = (self.model.n(), self.model.r());
        let a = self.model.exponents();
        let absolute: Vec<(usize, WeylOperator)> = (0..n)
            .map(|k| {
                let op = if k < r { euler(n, k, a[k], self.twist[k]) } else { WeylOperator::dy(n, k) };
                (k, op)
            })
            .collect();
        let top = LogFormSymbol::relative_top(n);
        // dlog g ∧ η = s_1 ∧ η for η containing s_2, …, s_r
        let (unit_sign, full) = top.wedge_left(0).expect("top omits symbol 0");
        let mut out = Chain::new();
        let Some(p) = x.get(&top) else {
            return out;
        };
        let mut acc = WeylOperator::zero(n);
        for (k, f) in &absolute {
            if let Some((sign, m)) = top.wedge_left(*k) {
                debug_assert_eq!(m, full);
                acc = &acc + &f.compose(p).scale(&qi(sign * unit_sign));
            }
        }
        if !acc.is_zero() {
            out.insert(top, acc);
        }
        out
    }
}

/// `σ_α` on the degree-0 chain `ū·P` of `C̄_{D_α}`.
pub fn sigma_alpha(x: &Chain, model: &MonomialModel, alpha: &Q) -> Result<BgElement> {
    let g = twist_for(model, alpha)?;
    Ok(build_cbar(model, &g)?.sigma(x))
}

/// `D_α` as a twist on the divisor components.
pub fn twist_for(model: &MonomialModel, alpha: &Q) -> Result<SncDivisor> {
    if *alpha <= Q::zero() {
        return invalid(format!("V-index must be positive, got {alpha}"));
    }
    round_up(&model.divisor(), alpha)
}

/// The canonical generator `ū ⊗ 1`.
pub fn canonical_generator(n: usize) -> Chain {
    [(LogFormSymbol::relative_top(n), WeylOperator::one(n))].into_iter().collect()
}

/// A random operator in `𝒟_Y` with up to three terms of small degree.
pub fn random_dy_operator(n: usize, rng: &mut ChaCha8Rng) -> WeylOperator {
    let mut p = WeylOperator::zero(n);
    while p.is_zero() {
        for _ in 0..rng.gen_range(1..=3) {
            let m = OpMonomial {
                y: (0..n).map(|_| rng.gen_range(0..=2)).collect(),
                t: 0,
                dy: (0..n).map(|_| rng.gen_range(0..=2)).collect(),
                dt: 0,
            };
            p.add_term(m, q(rng.gen_range(-3..=3), rng.gen_range(1..=3)));
        }
    }
    p
}

/// `C̄^{−1} → C̄^0 → B_g^r` vanishes on basis chains times sampled operators.
pub fn augmentation_zero_check(model: &MonomialModel, alpha: &Q, sample: usize, seed: u64) -> Result<CheckRecord> {
    let n = model.n();
    let cx = build_cbar(model, &twist_for(model, alpha)?)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rec = CheckRecord::new("augmentation_zero").input("model", model).input("alpha", alpha);
    if n < 2 {
        rec.set_detail("vacuous", "complex has length 0");
        return Ok(rec);
    }
    let mut ops = vec![WeylOperator::one(n)];
    ops.extend((0..sample).map(|_| random_dy_operator(n, &mut rng)));
    for eta in LogFormSymbol::relative(n, n - 2) {
        for p in &ops {
            let x: Chain = [(eta, p.clone())].into_iter().collect();
            let image = cx.sigma(&cx.differential(&x));
            rec.require(image.is_zero(), || format!("{eta} ⊗ ({p}) ↦ {image}"));
        }
    }
    Ok(rec)
}

/// `σ_α(N x) = σ_α(x) · (−θ)` on `ū ⊗ 1` and on `sample` random multiples `ū·P`.
pub fn verify_thm42_iii(model: &MonomialModel, alpha: &Q, sample: usize, seed: u64) -> Result<CheckRecord> {
    let n = model.n();
    let cx = build_cbar(model, &twist_for(model, alpha)?)?;
    let minus_theta = -&WeylOperator::theta(n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rec = CheckRecord::new("thm42_iii").input("model", model).input("alpha", alpha);
    let mut ops = vec![WeylOperator::one(n)];
    ops.extend((0..sample).map(|_| random_dy_operator(n, &mut rng)));
    for (i, p) in ops.iter().enumerate() {
        let x: Chain = [(LogFormSymbol::relative_top(n), p.clone())].into_iter().collect();
        let lhs = cx.sigma(&cx.monodromy(&x));
        let rhs = cx.sigma(&x).act_right(&minus_theta, model);
        if i == 0 {
            rec.set_detail("generator_lhs", &lhs);
            rec.set_detail("generator_rhs", &rhs);
        }
        rec.require(lhs == rhs, || format!("P = {p}: {lhs} vs {rhs}"));
    }
    // the zero chain
    rec.require(cx.sigma(&cx.monodromy(&Chain::new())).is_zero(), || "x = 0".into());
    rec.set_detail("samples", ops.len());
    Ok(rec)
}

/// Cheap structural checks of `C̄_G`: commuting generators and `d² = 0`.
pub fn structure_check(model: &MonomialModel, g: &SncDivisor, seed: u64) -> Result<CheckRecord> {
    let cx = build_cbar(model, g)?;
    let n = model.n();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ops: Vec<WeylOperator> =
        std::iter::once(WeylOperator::one(n)).chain((0..3).map(|_| random_dy_operator(n, &mut rng))).collect();
    let twist: Vec<String> = g.coeffs.iter().map(i64::to_string).collect();
    let mut rec = CheckRecord::new("cbar_structure").input("model", model).input("twist", twist.join(","));
    rec.require(cx.generators_commute(), || "generators do not commute".into());
    rec.require(cx.d_squared_zero(&ops), || "d^2 != 0".into());
    Ok(rec)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generator_examples() {
        let m = MonomialModel::new(1, vec![2]).unwrap();
        let cx = build_cbar(&m, &SncDivisor::new(vec![1])).unwrap();
        assert_eq!(cx.generators().count(), 0);
        assert_eq!(cx.length(), 0);
        let m = MonomialModel::new(2, vec![1, 1]).unwrap();
        let cx = build_cbar(&m, &SncDivisor::new(vec![1, 1])).unwrap();
        let gens: Vec<_> = cx.generators().cloned().collect();
        assert_eq!(gens, vec![WeylOperator::parse("y2 d2 - y1 d1", 2).unwrap()]);
        let m = MonomialModel::new(2, vec![2, 3]).unwrap();
        let g = twist_for(&m, &q(1, 2)).unwrap();
        assert_eq!(g.coeffs, vec![1, 2]);
        let cx = build_cbar(&m, &g).unwrap();
        let gens: Vec<_> = cx.generators().cloned().collect();
        assert_eq!(gens, vec![WeylOperator::parse("1/3 y2 d2 - 1/2 y1 d1 + 2/3 - 1/2", 2).unwrap()]);
        assert!(build_cbar(&m, &SncDivisor::new(vec![1, -1])).is_err());
        let m3 = MonomialModel::new(3, vec![2]).unwrap();
        assert!(build_cbar(&m3, &SncDivisor::new(vec![1, 0, 1])).is_err());
        assert!(build_cbar(&m3, &SncDivisor::new(vec![1, 0, 0])).is_ok());
    }

    #[test]
    fn sigma_examples() {
        let m = MonomialModel::new(1, vec![2]).unwrap();
        let u = sigma_alpha(&canonical_generator(1), &m, &q(1, 2)).unwrap();
        assert_eq!(u, BgElement::delta(1, 0).scale(&qi(2)));
        let m = MonomialModel::new(2, vec![1, 1]).unwrap();
        assert_eq!(sigma_alpha(&canonical_generator(2), &m, &qi(1)).unwrap(), BgElement::delta(2, 0));
        let m = MonomialModel::new(1, vec![3]).unwrap();
        let u = sigma_alpha(&canonical_generator(1), &m, &q(2, 3)).unwrap();
        assert_eq!(u, BgElement::term(vec![1], 0, qi(3)));
    }

    #[test]
    fn monodromy_hand_example() {
        let m = MonomialModel::new(1, vec![2]).unwrap();
        let r = verify_thm42_iii(&m, &q(1, 2), 5, 1).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.details["generator_lhs"], "2 y^(2) dy dt delta");
        assert_eq!(r.details["generator_rhs"], "2 y^(2) dy dt delta");
    }

    #[test]
    fn structure_and_augmentation() {
        for (n, a, alpha) in [(2, vec![1, 1], qi(1)), (2, vec![2, 3], q(1, 2)), (3, vec![2, 1], q(1, 2)), (1, vec![2], q(1, 2))] {
            let m = MonomialModel::new(n, a).unwrap();
            let g = twist_for(&m, &alpha).unwrap();
            assert!(structure_check(&m, &g, 7).unwrap().passed());
            assert!(augmentation_zero_check(&m, &alpha, 5, 7).unwrap().passed());
            assert!(verify_thm42_iii(&m, &alpha, 5, 7).unwrap().passed());
        }
    }
}
