//! Minimal exponents of monomial models through membership of `dy∂_t^pδ` in
//! the V-filtration, and the vanishing statements for nearby cycles that
//! follow from it.
//!
//! Indices here follow the left convention: `Gr^F_p ψ_{g,α}(𝒪)` is the right
//! piece `Gr^F_{p−n−1} Gr^V_{−α}`.

use num_traits::Zero;
use serde::Serialize;

use crate::derham::gr_dr_piece;
use crate::error::{invalid, Result};
use crate::model::{MonomialModel, MultiDegree};
use crate::rational::{is_positive, qi, serde_q, ExtRational, Q};
use crate::report::CheckRecord;
use crate::snc::{jump_candidates, lct_from_resolution, ResolutionNumerics};
use crate::table::{GradedDimTable, TruncationBox};
use crate::vfilt::{gr_dim, GrMode, VFiltration};
use crate::weyl::BgElement;

/// Membership of `dy∂_t^pδ` in `V_{−α}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub p: u32,
    #[serde(with = "serde_q")]
    pub alpha: Q,
    pub member: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinExpResult {
    pub value: ExtRational,
    pub witness: Vec<Verdict>,
}

fn sweep(model: &MonomialModel, vf: &VFiltration, p_max: u32) -> Result<Vec<Verdict>> {
    let alphas = jump_candidates(&model.divisor(), &Q::zero(), &qi(1))?;
    let mut out = Vec::new();
    for p in 0..=p_max {
        for alpha in &alphas {
            let member = vf.member(&BgElement::delta(model.n(), p), alpha)?;
            out.push(Verdict { p, alpha: alpha.clone(), member });
        }
    }
    Ok(out)
}

/// `sup{p + α : dy∂_t^pδ ∈ V_{−α}}` over `p ≤ p_max` and jump candidates
/// `α ∈ (0,1]`; `∞` for a smooth model whose memberships all hold.
pub fn minexp_monomial(model: &MonomialModel, p_max: u32) -> Result<MinExpResult> {
    if p_max < 1 {
        return invalid("p_max must be at least 1");
    }
    let vf = VFiltration::new(model);
    let witness = sweep(model, &vf, p_max)?;
    if model.is_smooth() && witness.iter().all(|v| v.member) {
        return Ok(MinExpResult { value: ExtRational::Infinite, witness });
    }
    let value = witness
        .iter()
        .filter(|v| v.member)
        .map(|v| qi(v.p as i64) + &v.alpha)
        .max()
        .unwrap_or_else(Q::zero);
    Ok(MinExpResult { value: ExtRational::Finite(value), witness })
}

/// `∞` for a smooth model, `min_i 1/a_i` otherwise.
pub fn minexp_formula(model: &MonomialModel) -> ExtRational {
    if model.is_smooth() {
        return ExtRational::Infinite;
    }
    let a = model.exponents().iter().copied().max().unwrap_or(1);
    ExtRational::Finite(Q::new(1.into(), (a as i64).into()))
}

/// `min(α̃, 1)` against the log canonical threshold of the divisor `g` itself.
pub fn lct_consistency(model: &MonomialModel, p_max: u32) -> Result<CheckRecord> {
    let res = minexp_monomial(model, p_max)?;
    let pairs = model.exponents().iter().map(|&a| (a as u64, 0)).collect();
    let lct = lct_from_resolution(&ResolutionNumerics::new(pairs)?)?;
    let capped = res.value.min_finite(&qi(1));
    let mut rec = CheckRecord::new("lct_consistency")
        .input("model", model)
        .detail("minexp", &res.value)
        .detail("lct", &lct);
    rec.require(capped == lct, || format!("min(minexp, 1) = {capped}, lct = {lct}"));
    Ok(rec)
}

/// `α̃ ≥ p+α` ⇔ `dy∂_t^pδ ∈ V_{−α}` ⇔ `dy∂_t^jδ ∈ V_{−α}` for all `j ≤ p`.
pub fn thm22_check(model: &MonomialModel, p_max: u32) -> Result<CheckRecord> {
    let vf = VFiltration::new(model);
    let verdicts = sweep(model, &vf, p_max)?;
    let formula = minexp_formula(model);
    let mut rec = CheckRecord::new("thm22")
        .input("model", model)
        .input("pmax", p_max)
        .detail("cases", verdicts.len());
    for v in &verdicts {
        let i = formula.ge(&(qi(v.p as i64) + &v.alpha));
        let iv = verdicts.iter().filter(|w| w.alpha == v.alpha && w.p <= v.p).all(|w| w.member);
        rec.require(i == v.member && v.member == iv, || {
            format!("p={} alpha={}: i) {i}, iii) {}, iv) {iv}", v.p, v.alpha, v.member)
        });
    }
    Ok(rec)
}

fn check_alpha(alpha: &Q, closed: bool) -> Result<()> {
    let one = qi(1);
    let ok = is_positive(alpha) && (*alpha < one || (closed && *alpha == one));
    if !ok {
        let range = if closed { "(0,1]" } else { "(0,1)" };
        return invalid(format!("alpha must lie in {range}, got {alpha}"));
    }
    Ok(())
}

/// Dimensions of `Gr^F_{p_left} ψ_{g,α}(𝒪)` per degree of the box.
pub fn psi_hodge_dim(p_left: i64, alpha: &Q, bx: &TruncationBox, model: &MonomialModel) -> Result<GradedDimTable> {
    check_alpha(alpha, true)?;
    let mut t = GradedDimTable::new(Some(alpha.clone()));
    for (k, &v) in gr_dim(p_left - model.n() as i64 - 1, alpha, bx, model, GrMode::GrV)?.entries() {
        t.set(p_left, None, k.degree.clone(), v);
    }
    Ok(t)
}

fn base_record(name: &str, model: &MonomialModel, p: u32, alpha: &Q, bx: &TruncationBox, am: &ExtRational) -> CheckRecord {
    CheckRecord::new(name)
        .input("model", model)
        .input("p", p)
        .input("alpha", alpha)
        .input("box", format!("{:?}..{:?}", bx.lo, bx.hi))
        .detail("minexp", am)
}

/// Vanishing of `Gr^F_i ψ_{g,α}` for `i ≤ p` when `α̃ ≥ p`, the criterion
/// for `α̃ > p+α`, and `Gr^F_{p+1}ψ ≅ 𝒪/J` with `J = {h : h∂_t^pδ ∈ V_{<−α}}`.
pub fn cor23_check(model: &MonomialModel, p: u32, alpha: &Q, bx: &TruncationBox) -> Result<CheckRecord> {
    check_alpha(alpha, false)?;
    let n = model.n() as i64;
    let am = minexp_formula(model);
    let pi = p as i64;
    let mut rec = base_record("cor23", model, p, alpha, bx, &am);
    if am.ge(&qi(pi)) {
        for i in -n..=pi {
            let t = psi_hodge_dim(i, alpha, bx, model)?;
            let first = t.entries().next().map(|(k, _)| k.degree.to_string());
            if let Some(d) = first {
                rec.fail(format!("Gr^F_{i} nonzero at {d}"));
            }
        }
    }
    let top = psi_hodge_dim(pi + 1, alpha, bx, model)?;
    let threshold = qi(pi) + alpha;
    if am.ge(&threshold) {
        rec.require(am.gt(&threshold) == top.is_empty(), || {
            format!("minexp > p+alpha is {}, Gr^F_{} total {}", am.gt(&threshold), pi + 1, top.total())
        });
        let vf = VFiltration::new(model);
        let shift = model.t_degree().scale(pi);
        let mut quotient = 0;
        for d in bx.degrees() {
            let dim = match d.add(&shift).to_exponents() {
                Some(h) => !vf.member_deeper(&BgElement::term(h, p, qi(1)), alpha)? as usize,
                None => 0,
            };
            quotient += dim;
            let got = top.get(pi + 1, None, &d);
            rec.require(dim == got, || format!("degree {d}: O/J {dim}, Gr^F_{} {got}", pi + 1));
        }
        rec.set_detail("quotient_total", quotient);
    }
    rec.set_detail("gr_total", top.total());
    Ok(rec)
}

/// Vanishing of `Gr^F_{i−n} DR ψ` for `i ≤ p`, concentration of
/// `Gr^F_{p+1−n} DR ψ` in degree 0, and `H⁰ ≅ ω ⊗ Gr^F_{p+1}ψ`.
pub fn cor24_check(model: &MonomialModel, p: u32, alpha: &Q, bx: &TruncationBox) -> Result<CheckRecord> {
    check_alpha(alpha, false)?;
    let am = minexp_formula(model);
    let (n, pi) = (model.n() as i64, p as i64);
    if !am.ge(&qi(pi)) {
        return invalid(format!("minimal exponent {am} is below p = {p}"));
    }
    let mut rec = base_record("cor24", model, p, alpha, bx, &am);
    let top = psi_hodge_dim(pi + 1, alpha, bx, model)?;
    let ones = MultiDegree(vec![1; model.n()]);
    let mut h0_total = 0;
    for d in bx.degrees() {
        for i in -n..=pi {
            let pc = gr_dr_piece(model, alpha, i - n, &d)?;
            rec.require(pc.term_dims.iter().all(|&x| x == 0), || format!("degree {d}: Gr^F_{} DR has terms {:?}", i - n, pc.term_dims));
        }
        let pc = gr_dr_piece(model, alpha, pi + 1 - n, &d)?;
        let at = model.n();
        rec.require(pc.d_squared_zero, || format!("degree {d}: d^2 != 0"));
        rec.require(pc.cohomology[..at].iter().all(|&h| h == 0), || {
            format!("degree {d}: cohomology {:?} outside degree 0", pc.cohomology)
        });
        let want = top.get(pi + 1, None, &d.sub(&ones));
        h0_total += pc.cohomology[at];
        rec.require(pc.cohomology[at] == want, || format!("degree {d}: H^0 {} vs {want}", pc.cohomology[at]));
    }
    rec.set_detail("h0_total", h0_total);
    Ok(rec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn m(n: usize, a: &[u32]) -> MonomialModel {
        MonomialModel::new(n, a.to_vec()).unwrap()
    }

    fn fin(x: Q) -> ExtRational {
        ExtRational::Finite(x)
    }

    #[test]
    fn minexp_examples() {
        assert_eq!(minexp_monomial(&m(2, &[1, 1]), 4).unwrap().value, fin(qi(1)));
        assert!(minexp_monomial(&m(1, &[1]), 4).unwrap().value.is_infinite());
        assert_eq!(minexp_monomial(&m(1, &[2]), 4).unwrap().value, fin(q(1, 2)));
        assert_eq!(minexp_monomial(&m(2, &[2, 3]), 4).unwrap().value, fin(q(1, 3)));
        assert!(minexp_monomial(&m(1, &[2]), 0).is_err());
        let r = minexp_monomial(&m(1, &[2]), 1).unwrap();
        assert_eq!(r.witness.len(), 4);
        assert!(r.witness.iter().any(|v| v.p == 0 && v.alpha == q(1, 2) && v.member));
        assert!(r.witness.iter().any(|v| v.p == 0 && v.alpha == qi(1) && !v.member));
    }

    #[test]
    fn formula_and_lct() {
        assert!(minexp_formula(&m(3, &[1])).is_infinite());
        assert_eq!(minexp_formula(&m(3, &[1, 4, 2])), fin(q(1, 4)));
        for model in [m(2, &[1, 1]), m(1, &[3]), m(1, &[1]), m(2, &[2, 3])] {
            assert!(lct_consistency(&model, 2).unwrap().passed());
        }
        let r = lct_consistency(&m(1, &[3]), 2).unwrap();
        assert_eq!(r.details["lct"], "1/3");
    }

    #[test]
    fn thm22_examples() {
        for model in [m(1, &[1]), m(1, &[3]), m(2, &[1, 1]), m(2, &[2, 1]), m(3, &[1])] {
            let r = thm22_check(&model, 2).unwrap();
            assert!(r.passed(), "{r:?}");
        }
    }

    #[test]
    fn psi_examples() {
        let bx = TruncationBox::radius(1, 6, 2);
        let y2 = m(1, &[2]);
        let t = psi_hodge_dim(1, &q(1, 2), &bx, &y2).unwrap();
        assert_eq!(t.get(1, None, &MultiDegree(vec![0])), 1);
        assert_eq!(t.total(), 1);
        assert!(psi_hodge_dim(0, &q(1, 2), &bx, &y2).unwrap().is_empty());
        assert!(psi_hodge_dim(1, &q(1, 4), &bx, &m(1, &[3])).unwrap().is_empty());
        assert!(psi_hodge_dim(1, &q(3, 2), &bx, &y2).is_err());
        // non-candidates contribute nothing
        for p in -1..=2 {
            assert!(psi_hodge_dim(p, &q(2, 5), &bx, &m(1, &[4])).unwrap().is_empty());
        }
    }

    #[test]
    fn cor23_examples() {
        let bx = TruncationBox::radius(1, 6, 2);
        let r = cor23_check(&m(1, &[2]), 0, &q(1, 2), &bx).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.details["quotient_total"], "1");
        assert!(cor23_check(&m(1, &[3]), 0, &q(1, 4), &bx).unwrap().passed());
        let bx2 = TruncationBox::radius(2, 4, 2);
        let r = cor23_check(&m(2, &[1, 1]), 0, &q(1, 2), &bx2).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.details["gr_total"], "0");
        assert!(cor23_check(&m(1, &[2]), 0, &qi(1), &bx).is_err());
    }

    #[test]
    fn cor24_examples() {
        let bx = TruncationBox::radius(1, 6, 2);
        let r = cor24_check(&m(1, &[2]), 0, &q(1, 2), &bx).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.details["h0_total"], "1");
        let r = cor24_check(&m(1, &[3]), 0, &q(1, 3), &bx).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.details["h0_total"], "1");
        let r = cor24_check(&m(2, &[1, 1]), 0, &q(1, 2), &TruncationBox::radius(2, 4, 2)).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.details["h0_total"], "0");
        assert!(cor24_check(&m(1, &[2]), 1, &q(1, 2), &bx).is_err());
    }
}
