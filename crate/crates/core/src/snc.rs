//! Divisors supported on a simple normal crossing divisor.
//!
//! A divisor is an integer vector of multiplicities along the named
//! components `E_1, …, E_N`. Rounding `α·D` componentwise gives the twists
//! `D_α = ⌈αD⌉` and `D_{>α} = ⌊αD⌋ + E` that index the V-filtration in the
//! monomial model.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::rational::{ceil_i64, floor_i64, is_nonnegative, q, qi, Q};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SncDivisor {
    pub coeffs: Vec<i64>,
}

impl SncDivisor {
    pub fn new(coeffs: Vec<i64>) -> Self {
        SncDivisor { coeffs }
    }

    /// The reduced divisor `E` with `len` components.
    pub fn reduced(len: usize) -> Self {
        SncDivisor { coeffs: vec![1; len] }
    }

    pub fn zero(len: usize) -> Self {
        SncDivisor { coeffs: vec![0; len] }
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_effective(&self) -> bool {
        self.coeffs.iter().all(|&c| c >= 0)
    }

    /// Componentwise `self ≤ other`.
    pub fn le(&self, other: &SncDivisor) -> bool {
        self.coeffs.len() == other.coeffs.len()
            && self.coeffs.iter().zip(&other.coeffs).all(|(a, b)| a <= b)
    }

    pub fn add(&self, other: &SncDivisor) -> SncDivisor {
        SncDivisor {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }
}

/// Multiplicities `(a_i, k_i)` of the components of `π*Z` and `K_{Y/X}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolutionNumerics {
    pub pairs: Vec<(u64, u64)>,
}

impl ResolutionNumerics {
    pub fn new(pairs: Vec<(u64, u64)>) -> Result<Self> {
        if pairs.is_empty() {
            return invalid("resolution numerics must be nonempty");
        }
        if let Some(&(a, _)) = pairs.iter().find(|(a, _)| *a == 0) {
            return invalid(format!("multiplicity a_i = {a} must be positive"));
        }
        Ok(ResolutionNumerics { pairs })
    }
}

/// `min_i (k_i + 1) / a_i`.
pub fn lct_from_resolution(res: &ResolutionNumerics) -> Result<Q> {
    let res = ResolutionNumerics::new(res.pairs.clone())?;
    let lct = res
        .pairs
        .iter()
        .map(|&(a, k)| q(k as i64 + 1, a as i64))
        .min()
        .expect("nonempty");
    Ok(lct)
}

fn check_alpha(alpha: &Q) -> Result<()> {
    if !is_nonnegative(alpha) {
        return invalid(format!("rounding parameter {alpha} must be nonnegative"));
    }
    Ok(())
}

/// `D_α = ⌈αD⌉`.
pub fn round_up(d: &SncDivisor, alpha: &Q) -> Result<SncDivisor> {
    check_alpha(alpha)?;
    Ok(SncDivisor {
        coeffs: d.coeffs.iter().map(|&a| ceil_i64(&(alpha * qi(a)))).collect(),
    })
}

/// `D_{>α} = ⌊αD⌋ + E`, i.e. `D_{α+ε}` for small `ε > 0`.
pub fn round_gt(d: &SncDivisor, alpha: &Q) -> Result<SncDivisor> {
    check_alpha(alpha)?;
    Ok(SncDivisor {
        coeffs: d.coeffs.iter().map(|&a| floor_i64(&(alpha * qi(a))) + 1).collect(),
    })
}

/// All `j / a_i` in `(lo, hi]`, ascending and deduplicated.
pub fn jump_candidates(d: &SncDivisor, lo: &Q, hi: &Q) -> Result<Vec<Q>> {
    if lo >= hi {
        return invalid(format!("empty interval ({lo}, {hi}]"));
    }
    if !is_nonnegative(lo) {
        return invalid(format!("lower bound {lo} must be nonnegative"));
    }
    let mut out = BTreeSet::new();
    for &a in d.coeffs.iter().filter(|&&a| a > 0) {
        let first = floor_i64(&(lo * qi(a))) + 1;
        let last = floor_i64(&(hi * qi(a)));
        for j in first..=last {
            out.insert(q(j, a));
        }
    }
    Ok(out.into_iter().collect())
}

/// Exponent vector `⌊λD⌋` of `𝒥(λZ)` when `Z` is itself the SNC divisor `D`.
pub fn multiplier_ideal_snc(d: &SncDivisor, lambda: &Q) -> Result<SncDivisor> {
    check_alpha(lambda)?;
    Ok(SncDivisor {
        coeffs: d.coeffs.iter().map(|&a| floor_i64(&(lambda * qi(a)))).collect(),
    })
}

/// The smallest jump candidate strictly above `alpha`.
pub fn next_candidate(d: &SncDivisor, alpha: &Q) -> Q {
    d.coeffs
        .iter()
        .filter(|&&a| a > 0)
        .map(|&a| q(floor_i64(&(alpha * qi(a))) + 1, a))
        .min()
        .unwrap_or_else(|| alpha + qi(1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn div(c: &[i64]) -> SncDivisor {
        SncDivisor::new(c.to_vec())
    }

    #[test]
    fn lct_examples() {
        let lct = |p: &[(u64, u64)]| lct_from_resolution(&ResolutionNumerics { pairs: p.to_vec() });
        assert_eq!(lct(&[(1, 0)]).unwrap(), qi(1));
        assert_eq!(lct(&[(3, 0)]).unwrap(), q(1, 3));
        // quotients 1, 1, 1, 5/6
        assert_eq!(lct(&[(1, 0), (2, 1), (3, 2), (6, 4)]).unwrap(), q(5, 6));
        assert!(lct(&[]).is_err());
        assert!(lct(&[(0, 1)]).is_err());
    }

    #[test]
    fn rounding_examples() {
        let d = div(&[2, 3]);
        assert_eq!(round_up(&d, &q(1, 2)).unwrap(), div(&[1, 2]));
        assert_eq!(round_up(&d, &qi(0)).unwrap(), div(&[0, 0]));
        assert_eq!(round_up(&d, &qi(1)).unwrap(), div(&[2, 3]));
        assert_eq!(round_gt(&d, &q(1, 2)).unwrap(), div(&[2, 2]));
        assert_eq!(round_gt(&d, &qi(0)).unwrap(), div(&[1, 1]));
        assert_eq!(round_gt(&div(&[2]), &q(1, 2)).unwrap(), div(&[2]));
        assert!(round_up(&d, &q(-1, 2)).is_err());
        assert!(round_gt(&d, &q(-1, 2)).is_err());
    }

    #[test]
    fn jump_examples() {
        let d = div(&[2, 3]);
        assert_eq!(
            jump_candidates(&d, &qi(0), &qi(1)).unwrap(),
            vec![q(1, 3), q(1, 2), q(2, 3), qi(1)]
        );
        assert_eq!(jump_candidates(&div(&[1]), &qi(0), &qi(1)).unwrap(), vec![qi(1)]);
        assert_eq!(jump_candidates(&d, &qi(0), &q(1, 3)).unwrap(), vec![q(1, 3)]);
        assert!(jump_candidates(&d, &qi(1), &qi(1)).is_err());
    }

    #[test]
    fn multiplier_examples() {
        assert_eq!(multiplier_ideal_snc(&div(&[1, 1]), &q(1, 2)).unwrap(), div(&[0, 0]));
        assert_eq!(multiplier_ideal_snc(&div(&[2]), &q(1, 2)).unwrap(), div(&[1]));
        assert_eq!(multiplier_ideal_snc(&div(&[2, 3]), &q(5, 6)).unwrap(), div(&[1, 2]));
    }

    #[test]
    fn next_candidate_matches_scan() {
        let d = div(&[2, 3]);
        assert_eq!(next_candidate(&d, &q(1, 3)), q(1, 2));
        assert_eq!(next_candidate(&d, &qi(0)), q(1, 3));
        assert_eq!(next_candidate(&d, &qi(1)), q(4, 3));
    }

    fn arb_divisor() -> impl Strategy<Value = SncDivisor> {
        prop::collection::vec(1i64..7, 1..4).prop_map(SncDivisor::new)
    }

    fn arb_alpha() -> impl Strategy<Value = Q> {
        (0i64..40, 1i64..13).prop_map(|(n, d)| q(n, d))
    }

    proptest! {
        #[test]
        fn rounding_is_monotone(d in arb_divisor(), a in arb_alpha(), b in arb_alpha()) {
            let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
            prop_assert!(round_up(&d, &lo).unwrap().le(&round_up(&d, &hi).unwrap()));
            prop_assert!(round_gt(&d, &lo).unwrap().le(&round_gt(&d, &hi).unwrap()));
        }

        #[test]
        fn round_up_is_periodic(d in arb_divisor(), a in arb_alpha()) {
            let shifted = round_up(&d, &(a.clone() + qi(1))).unwrap();
            prop_assert_eq!(shifted, round_up(&d, &a).unwrap().add(&d));
        }

        #[test]
        fn round_up_is_constant_between_jumps(d in arb_divisor(), a in arb_alpha()) {
            let c_next = next_candidate(&d, &a);
            // round_gt is the value just after a, which is the value at the next jump
            prop_assert_eq!(round_gt(&d, &a).unwrap(), round_up(&d, &c_next).unwrap());
            let cands = jump_candidates(&d, &a, &c_next).unwrap();
            prop_assert_eq!(cands, vec![c_next.clone()]);
            let mid = (a.clone() + c_next.clone()) / qi(2);
            prop_assert_eq!(round_up(&d, &mid).unwrap(), round_up(&d, &c_next).unwrap());
        }

        #[test]
        fn lct_characterization(
            pairs in prop::collection::vec((1u64..9, 0u64..9), 1..6),
            a in arb_alpha(),
        ) {
            let lct = lct_from_resolution(&ResolutionNumerics { pairs: pairs.clone() }).unwrap();
            let floors_ok = pairs
                .iter()
                .all(|&(ai, ki)| floor_i64(&(a.clone() * qi(ai as i64))) <= ki as i64);
            prop_assert_eq!(lct > a, floors_ok);
        }
    }
}
