//! Label sets indexing the closed-form bases of `F_p V_{−α}` in a fixed multidegree.

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::model::{MonomialModel, MultiDegree};
use crate::rational::{ceil_i64, floor_i64, is_nonnegative, qi, Q};

/// A basis label `y^b dy δ · y^v ∂_y^w θ^j`; `b` is implicit in the V-index.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct GrBasisLabel {
    pub v: Vec<u32>,
    pub w: Vec<u32>,
    pub j: u32,
}

impl GrBasisLabel {
    pub fn w_total(&self) -> u32 {
        self.w.iter().sum()
    }
}

/// A pair `(p, α)` naming `F_p V_{−α}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiltrationIndex {
    pub p: i64,
    #[serde(with = "crate::rational::serde_q")]
    pub alpha: Q,
}

fn check_alpha(alpha: &Q) -> Result<()> {
    if !is_nonnegative(alpha) || *alpha == qi(0) {
        return invalid(format!("V-index must be positive, got {alpha}"));
    }
    Ok(())
}

/// `b_i = ⌈α a_i⌉ − 1` for `i ≤ r`, zero beyond.
pub fn b_vector(model: &MonomialModel, alpha: &Q) -> Result<Vec<u32>> {
    check_alpha(alpha)?;
    Ok((0..model.n())
        .map(|i| {
            let a = model.exponent(i);
            if a == 0 {
                0
            } else {
                (ceil_i64(&(alpha * qi(a as i64))) - 1) as u32
            }
        })
        .collect())
}

/// The twist of `V_{<−α}`: `⌊α a_i⌋` for `i ≤ r`, zero beyond.
pub fn b_deeper(model: &MonomialModel, alpha: &Q) -> Result<Vec<u32>> {
    check_alpha(alpha)?;
    Ok((0..model.n())
        .map(|i| {
            let a = model.exponent(i);
            if a == 0 {
                0
            } else {
                floor_i64(&(alpha * qi(a as i64))) as u32
            }
        })
        .collect())
}

/// Forced `w_i` for a coordinate where `v_i w_i = 0` is imposed: zero when
/// `d_i ≥ b_i`, otherwise `b_i − d_i` (making `v_i = 0`).
fn forced_w(d: i64, b: u32) -> u32 {
    (b as i64 - d).max(0) as u32
}

/// Labels of the direct-sum decomposition of `F_p V_{−α}` in degree `d`:
/// `b + v − w = d`, `w_i = 0` for `i > r`, `v_i w_i = 0` for `i ≤ r`,
/// `0 ≤ j ≤ p + n − |w|`.
pub fn labels_44(model: &MonomialModel, b: &[u32], p: i64, d: &MultiDegree) -> Vec<GrBasisLabel> {
    let n = model.n();
    let mut v = vec![0u32; n];
    let mut w = vec![0u32; n];
    for i in 0..n {
        if i < model.r() {
            w[i] = forced_w(d.0[i], b[i]);
        } else if d.0[i] < 0 {
            return Vec::new();
        }
        v[i] = (d.0[i] - b[i] as i64 + w[i] as i64) as u32;
    }
    let budget = p + n as i64 - w.iter().sum::<u32>() as i64;
    if budget < 0 {
        return Vec::new();
    }
    (0..=budget as u32).map(|j| GrBasisLabel { v: v.clone(), w: w.clone(), j }).collect()
}

/// Labels of the `Gr^F_p V_{−α}` basis in degree `d`: `|w| = p + n`,
/// `w_i = 0` for `i > r`, `v_i w_i = 0` for `2 ≤ i ≤ r`, `v = d − b + w ≥ 0`.
pub fn labels_45(model: &MonomialModel, b: &[u32], p: i64, d: &MultiDegree) -> Vec<GrBasisLabel> {
    let n = model.n();
    let target = p + n as i64;
    if target < 0 {
        return Vec::new();
    }
    let mut w = vec![0u32; n];
    for i in 1..n {
        if i < model.r() {
            w[i] = forced_w(d.0[i], b[i]);
        } else if d.0[i] < 0 {
            return Vec::new();
        }
    }
    let rest = target - w[1..].iter().sum::<u32>() as i64;
    if rest < 0 {
        return Vec::new();
    }
    w[0] = rest as u32;
    let mut v = vec![0u32; n];
    for i in 0..n {
        let x = d.0[i] - b[i] as i64 + w[i] as i64;
        if x < 0 {
            return Vec::new();
        }
        v[i] = x as u32;
    }
    vec![GrBasisLabel { v, w, j: 0 }]
}

/// All labels `(v, w, j)` with `b + v − w = d` and `j + |w| ≤ p + n`, with no
/// further constraint: a generating set of `F_p V_{−α}` in degree `d`
/// containing the basis of [`labels_44`].
pub fn generating_labels(model: &MonomialModel, b: &[u32], p: i64, d: &MultiDegree) -> Vec<GrBasisLabel> {
    let n = model.n();
    let budget = p + n as i64;
    let mut out = Vec::new();
    if budget < 0 {
        return out;
    }
    let lower: Vec<u32> = (0..n).map(|i| (b[i] as i64 - d.0[i]).max(0) as u32).collect();
    let total = |w: &[u32]| w.iter().map(|&x| x as i64).sum::<i64>();
    if total(&lower) > budget {
        return out;
    }
    let mut w = lower.clone();
    loop {
        let v: Vec<u32> = (0..n).map(|i| (d.0[i] - b[i] as i64 + w[i] as i64) as u32).collect();
        for j in 0..=(budget - total(&w)) as u32 {
            out.push(GrBasisLabel { v: v.clone(), w: w.clone(), j });
        }
        let mut i = 0;
        loop {
            if i == n {
                return out;
            }
            w[i] += 1;
            if total(&w) <= budget {
                break;
            }
            w[i] = lower[i];
            i += 1;
        }
    }
}

/// Dimension of `Gr^F_p V_{−α}` in degree `d` from the θ-graded labels.
pub fn count_44(model: &MonomialModel, alpha: &Q, p: i64, d: &MultiDegree) -> Result<usize> {
    let b = b_vector(model, alpha)?;
    let top = p + model.n() as i64;
    Ok(labels_44(model, &b, p, d)
        .iter()
        .filter(|l| l.j as i64 + l.w_total() as i64 == top)
        .count())
}

/// Dimension of `Gr^F_p V_{−α}` in degree `d` from the `|w| = p + n` labels.
pub fn count_45(model: &MonomialModel, alpha: &Q, p: i64, d: &MultiDegree) -> Result<usize> {
    let b = b_vector(model, alpha)?;
    Ok(labels_45(model, &b, p, d).len())
}

/// The same count with an explicit twist `b`.
pub fn count_45_b(model: &MonomialModel, b: &[u32], p: i64, d: &MultiDegree) -> usize {
    labels_45(model, b, p, d).len()
}
