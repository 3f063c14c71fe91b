//! Graded de Rham complexes of nearby cycles on the monomial chart and the
//! twisted log forms they are compared with.
//!
//! Forms `dy_J` have multidegree `e_J`; log forms `dlog y_i` (`i ≤ r`) have
//! degree zero. A de Rham term `dy_J ⊗ m` has degree `e_J + deg m`, where
//! `deg m` is the multidegree of the right-module class representing `m`.

use num_traits::Zero;

use crate::error::{invalid, Result};
use crate::koszul::{binomial, LogFormSymbol};
use crate::linalg::Span;
use crate::model::{MonomialModel, MultiDegree};
use crate::rational::{is_positive, qi, Q};
use crate::report::CheckRecord;
use crate::snc::{round_gt, round_up, SncDivisor};
use crate::table::{GradedDimTable, TruncationBox};
use crate::vfilt::{b_deeper, b_vector, count_45_b};

/// `𝒪(−G) ⊗ Ω^q(log E)`, absolute or relative to `g`, on the monomial chart.
#[derive(Clone, Debug)]
pub struct TwistedFormModule {
    model: MonomialModel,
    twist: SncDivisor,
    q: usize,
    relative: bool,
}

impl TwistedFormModule {
    pub fn new(model: &MonomialModel, twist: SncDivisor, q: usize, relative: bool) -> Result<Self> {
        if twist.len() != model.r() {
            return invalid(format!("twist has {} components, expected {}", twist.len(), model.r()));
        }
        Ok(TwistedFormModule { model: model.clone(), twist, q, relative })
    }

    pub fn forms(&self) -> Vec<LogFormSymbol> {
        let n = self.model.n();
        if self.relative {
            LogFormSymbol::relative(n, self.q)
        } else {
            LogFormSymbol::absolute(n, self.q)
        }
    }

    /// Rank of the form part: `C(n−1, q)` relative, `C(n, q)` absolute.
    pub fn form_rank(&self) -> usize {
        let n = self.model.n();
        if self.relative {
            if n == 0 {
                0
            } else {
                binomial(n - 1, self.q)
            }
        } else {
            binomial(n, self.q)
        }
    }

    pub fn form_degree(&self, eta: LogFormSymbol) -> MultiDegree {
        let n = self.model.n();
        let r = self.model.r();
        MultiDegree((0..n).map(|i| (i >= r && eta.contains(i)) as i64).collect())
    }

    /// Monomials `y^v ⊗ η` of degree `d`, `v ≥ G` on the divisor components.
    pub fn basis_at(&self, d: &MultiDegree) -> Vec<(Vec<u32>, LogFormSymbol)> {
        let r = self.model.r();
        self.forms()
            .into_iter()
            .filter_map(|eta| {
                let v = d.sub(&self.form_degree(eta));
                let ok = v.0.iter().enumerate().all(|(i, &x)| x >= if i < r { self.twist.coeffs[i] } else { 0 });
                ok.then(|| (v.to_exponents().expect("nonnegative"), eta))
            })
            .collect()
    }
}

/// `0 → Ω^{q−1}_{rel} → Ω^q_{abs} → Ω^q_{rel} → 0` with `η ↦ dlog g ∧ η` and the
/// quotient by `dlog g`, checked on the form bases.
pub fn relative_sequence_check(model: &MonomialModel, q: usize) -> Result<CheckRecord> {
    let (n, r) = (model.n(), model.r());
    if q > n {
        return invalid(format!("form degree {q} exceeds n = {n}"));
    }
    let rel_prev = if q == 0 { Vec::new() } else { LogFormSymbol::relative(n, q - 1) };
    let abs = LogFormSymbol::absolute(n, q);
    let rel = LogFormSymbol::relative(n, q);
    let pos = |list: &[LogFormSymbol], m: LogFormSymbol| list.iter().position(|&x| x == m);
    // dlog g = s_1 + … + s_r
    let iota: Vec<Vec<Q>> = rel_prev
        .iter()
        .map(|eta| {
            let mut v = vec![Q::zero(); abs.len()];
            for k in 0..r {
                if let Some((sign, m)) = eta.wedge_left(k) {
                    v[pos(&abs, m).expect("absolute basis")] += qi(sign);
                }
            }
            v
        })
        .collect();
    // s_1 ≡ −(s_2 + … + s_r) modulo dlog g
    let project = |m: LogFormSymbol| -> Vec<Q> {
        let mut v = vec![Q::zero(); rel.len()];
        if !m.contains(0) {
            v[pos(&rel, m).expect("relative basis")] += qi(1);
            return v;
        }
        let rest = LogFormSymbol(m.0 & !1);
        for k in 1..r {
            if let Some((sign, m2)) = rest.wedge_left(k) {
                v[pos(&rel, m2).expect("relative basis")] -= qi(sign);
            }
        }
        v
    };
    let pi: Vec<Vec<Q>> = abs.iter().map(|&m| project(m)).collect();
    let rank_iota = Span::from_vectors(abs.len(), &iota).rank();
    let rank_pi = Span::from_vectors(rel.len(), &pi).rank();
    let composite_zero = iota.iter().all(|row| {
        (0..rel.len()).all(|j| row.iter().zip(&pi).map(|(c, p)| c * &p[j]).sum::<Q>().is_zero())
    });
    let mut rec = CheckRecord::new("relative_sequence")
        .input("model", model)
        .input("q", q)
        .detail("ranks", format!("{} -> {} -> {}", rel_prev.len(), abs.len(), rel.len()));
    rec.require(rank_iota == rel_prev.len(), || "wedge with dlog g is not injective".into());
    rec.require(rank_pi == rel.len(), || "quotient map is not surjective".into());
    rec.require(composite_zero, || "composite is nonzero".into());
    rec.require(abs.len() == rel_prev.len() + rel.len(), || "middle rank mismatch".into());
    Ok(rec)
}

/// Dimensions of `(𝒪(−D_α)/𝒪(−D_{>α})) ⊗ Ω^q(log E)` per degree of the box;
/// the table's Hodge slot holds the form degree `q`.
pub fn quotient_dims(model: &MonomialModel, alpha: &Q, q: usize, relative: bool, bx: &TruncationBox) -> Result<GradedDimTable> {
    if !is_positive(alpha) {
        return invalid(format!("V-index must be positive, got {alpha}"));
    }
    let d = model.divisor();
    let low = TwistedFormModule::new(model, round_up(&d, alpha)?, q, relative)?;
    let high = TwistedFormModule::new(model, round_gt(&d, alpha)?, q, relative)?;
    let mut table = GradedDimTable::new(Some(alpha.clone()));
    for deg in bx.degrees() {
        let dim = low.basis_at(&deg).len() - high.basis_at(&deg).len();
        table.set(q as i64, None, deg, dim);
    }
    Ok(table)
}

/// Cohomology of one degree of `Gr^F_k DR(ψ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DrPiece {
    /// `dim` of the term `Ω^q ⊗ Gr^F_{k+q}ψ`, `q = 0..=n` (cohomological degree `q − n`).
    pub term_dims: Vec<usize>,
    pub cohomology: Vec<usize>,
    pub d_squared_zero: bool,
}

impl DrPiece {
    pub fn euler_terms(&self) -> i64 {
        alternating(&self.term_dims)
    }

    pub fn euler_cohomology(&self) -> i64 {
        alternating(&self.cohomology)
    }
}

fn alternating(xs: &[usize]) -> i64 {
    xs.iter().enumerate().map(|(q, &x)| if q % 2 == 0 { x as i64 } else { -(x as i64) }).sum()
}

/// `Gr^F_q ψ_α` in the left convention, evaluated at the right-module degree `e`.
fn psi_piece(model: &MonomialModel, b: &[u32], deeper: &[u32], q_left: i64, e: &MultiDegree) -> usize {
    let p = q_left - model.n() as i64 - 1;
    count_45_b(model, b, p, e) - count_45_b(model, deeper, p, e)
}

/// The piece of `Gr^F_k DR(ψ_α)` in degree `deg`.
///
/// Each `Gr^F Gr^V` piece is at most one-dimensional, and the differential
/// `dy_i ∧ ∂_i` acts on classes by the top coefficient `a_i` of `·∂_{y_i}`
/// for `i ≤ r`; for `i > r` it does not raise the `∂_t`-order and so vanishes
/// on graded pieces.
pub fn gr_dr_piece(model: &MonomialModel, alpha: &Q, k: i64, deg: &MultiDegree) -> Result<DrPiece> {
    let (n, r) = (model.n(), model.r());
    let b = b_vector(model, alpha)?;
    let deeper = b_deeper(model, alpha)?;
    let a = model.exponents();
    let unit = |j: LogFormSymbol| MultiDegree((0..n).map(|i| j.contains(i) as i64).collect());
    let bases: Vec<Vec<LogFormSymbol>> = (0..=n)
        .map(|q| {
            LogFormSymbol::absolute(n, q)
                .into_iter()
                .filter(|&j| psi_piece(model, &b, &deeper, k + q as i64, &deg.sub(&unit(j))) > 0)
                .collect()
        })
        .collect();
    let rows = |q: usize| -> Vec<Vec<Q>> {
        bases[q]
            .iter()
            .map(|j| {
                let mut v = vec![Q::zero(); bases[q + 1].len()];
                for (i, &ai) in a.iter().enumerate().take(r) {
                    if let Some((sign, j2)) = j.wedge_left(i) {
                        if let Some(t) = bases[q + 1].iter().position(|&x| x == j2) {
                            v[t] += qi(sign * ai as i64);
                        }
                    }
                }
                v
            })
            .collect()
    };
    let mut out_rank = vec![0usize; n + 2];
    let mut mats = Vec::new();
    for q in 0..n {
        let m = rows(q);
        out_rank[q + 1] = Span::from_vectors(bases[q + 1].len(), &m).rank();
        mats.push(m);
    }
    // out_rank[q + 1] is the rank of d: C^q → C^{q+1}
    let term_dims: Vec<usize> = bases.iter().map(Vec::len).collect();
    let cohomology = (0..=n).map(|q| term_dims[q] - out_rank[q + 1] - out_rank[q]).collect();
    let mut d_squared_zero = true;
    for q in 0..n.saturating_sub(1) {
        for row in &mats[q] {
            for col in 0..bases[q + 2].len() {
                let s: Q = row.iter().zip(&mats[q + 1]).map(|(c, next)| c * &next[col]).sum();
                d_squared_zero &= s.is_zero();
            }
        }
    }
    Ok(DrPiece { term_dims, cohomology, d_squared_zero })
}

fn check_unit_interval(alpha: &Q) -> Result<()> {
    if !is_positive(alpha) || *alpha > qi(1) {
        return invalid(format!("alpha must lie in (0,1], got {alpha}"));
    }
    Ok(())
}

/// Cohomology of `Gr^F_{i−n+1} DR(ψ_α)` per degree of the box, keyed by
/// cohomological degree `q − n`.
pub fn gr_dr_psi(model: &MonomialModel, alpha: &Q, i: i64, bx: &TruncationBox) -> Result<GradedDimTable> {
    check_unit_interval(alpha)?;
    let n = model.n() as i64;
    let mut table = GradedDimTable::new(Some(alpha.clone()));
    for deg in bx.degrees() {
        let pc = gr_dr_piece(model, alpha, i - n + 1, &deg)?;
        for (q, &h) in pc.cohomology.iter().enumerate() {
            table.set(i, Some(q as i64 - n), deg.clone(), h);
        }
    }
    Ok(table)
}

/// `Gr^F_{i−n+1} DR(ψ_α)` is concentrated in degree `−i`, where it matches
/// `(𝒪(−D_α)/𝒪(−D_{>α})) ⊗ Ω^{n−1−i}_{rel}(log E)` degree by degree.
pub fn verify_cor51(
    model: &MonomialModel,
    alpha: &Q,
    i_range: std::ops::RangeInclusive<i64>,
    bx: &TruncationBox,
) -> Result<Vec<CheckRecord>> {
    check_unit_interval(alpha)?;
    let n = model.n() as i64;
    let mut out = Vec::new();
    for i in i_range {
        let mut rec = CheckRecord::new("cor51")
            .input("model", model)
            .input("alpha", alpha)
            .input("i", i)
            .input("box", format!("{:?}..{:?}", bx.lo, bx.hi));
        if !(0..n).contains(&i) {
            rec.fail(format!("i = {i} outside 0..{n}"));
            out.push(rec);
            continue;
        }
        let expected = quotient_dims(model, alpha, (n - 1 - i) as usize, true, bx)?;
        let mut total = 0;
        for deg in bx.degrees() {
            let pc = gr_dr_piece(model, alpha, i - n + 1, &deg)?;
            let at = (n - i) as usize;
            let want = expected.get(n - 1 - i, None, &deg);
            total += pc.cohomology[at];
            rec.require(pc.d_squared_zero, || format!("degree {deg}: d^2 != 0"));
            rec.require(pc.euler_terms() == pc.euler_cohomology(), || format!("degree {deg}: Euler characteristic"));
            rec.require(
                pc.cohomology.iter().enumerate().all(|(q, &h)| q == at || h == 0),
                || format!("degree {deg}: cohomology {:?} not concentrated in {}", pc.cohomology, -i),
            );
            rec.require(pc.cohomology[at] == want, || format!("degree {deg}: H^{} = {} vs {want}", -i, pc.cohomology[at]));
        }
        rec.set_detail("total", total);
        out.push(rec);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    #[test]
    fn sequence_ranks() {
        let m = MonomialModel::new(2, vec![1, 1]).unwrap();
        let r = relative_sequence_check(&m, 1).unwrap();
        assert!(r.passed());
        assert_eq!(r.details["ranks"], "1 -> 2 -> 1");
        let m1 = MonomialModel::new(1, vec![2]).unwrap();
        assert_eq!(relative_sequence_check(&m1, 1).unwrap().details["ranks"], "1 -> 1 -> 0");
        assert_eq!(relative_sequence_check(&m1, 0).unwrap().details["ranks"], "0 -> 1 -> 1");
        assert!(relative_sequence_check(&m1, 2).is_err());
        for q in 0..=3 {
            let m3 = MonomialModel::new(3, vec![2, 3]).unwrap();
            assert!(relative_sequence_check(&m3, q).unwrap().passed());
        }
    }

    #[test]
    fn quotient_examples() {
        let bx1 = TruncationBox::radius(1, 6, 0);
        let m = MonomialModel::new(1, vec![2]).unwrap();
        let t = quotient_dims(&m, &q(1, 2), 0, true, &bx1).unwrap();
        assert_eq!(t.total(), 1);
        assert_eq!(t.get(0, None, &MultiDegree(vec![1])), 1);
        let m2 = MonomialModel::new(2, vec![1, 1]).unwrap();
        let bx2 = TruncationBox::radius(2, 6, 0);
        for qd in 0..=1 {
            assert!(quotient_dims(&m2, &q(1, 2), qd, true, &bx2).unwrap().is_empty());
        }
        let m3 = MonomialModel::new(2, vec![2, 3]).unwrap();
        let t = quotient_dims(&m3, &q(1, 3), 1, true, &bx2).unwrap();
        for (k, &v) in t.entries() {
            assert_eq!(v, 1);
            assert!(k.degree.0[0] >= 1 && k.degree.0[1] == 1);
        }
        assert_eq!(t.len(), 6);
    }

    #[test]
    fn dr_examples() {
        let m = MonomialModel::new(1, vec![2]).unwrap();
        let bx = TruncationBox::radius(1, 6, 0);
        let t = gr_dr_psi(&m, &q(1, 2), 0, &bx).unwrap();
        assert_eq!(t.total(), 1);
        assert_eq!(t.get(0, Some(0), &MultiDegree(vec![1])), 1);
        let m3 = MonomialModel::new(1, vec![3]).unwrap();
        assert!(gr_dr_psi(&m3, &q(1, 3), -1, &bx).unwrap().is_empty());
        assert!(gr_dr_psi(&m3, &q(3, 2), 0, &bx).is_err());
    }

    #[test]
    fn cor51_examples() {
        let cases = [(1usize, vec![2u32], q(1, 2)), (2, vec![1, 1], qi(1)), (2, vec![2, 3], q(1, 3)), (2, vec![2, 3], q(2, 3))];
        for (n, a, alpha) in cases {
            let m = MonomialModel::new(n, a).unwrap();
            for r in verify_cor51(&m, &alpha, 0..=(n as i64 - 1), &TruncationBox::radius(n, 4, 0)).unwrap() {
                assert!(r.passed(), "{r:?}");
            }
        }
    }

    #[test]
    fn no_forms_above_top_degree() {
        let m = MonomialModel::new(2, vec![2]).unwrap();
        let f = TwistedFormModule::new(&m, SncDivisor::new(vec![1]), 3, false).unwrap();
        assert_eq!(f.form_rank(), 0);
        assert!(f.basis_at(&MultiDegree(vec![2, 2])).is_empty());
    }
}
