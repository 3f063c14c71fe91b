//! Structural checks of the V-filtration on a truncation box.

use num_traits::One;

use super::engine::{coordinate_count, VFiltration};
use super::labels::{b_deeper, b_vector, labels_44};
use crate::error::Result;
use crate::linalg::Span;
use crate::model::{MonomialModel, MultiDegree};
use crate::rational::{qi, Q};
use crate::report::CheckRecord;
use crate::snc::jump_candidates;
use crate::table::TruncationBox;
use crate::weyl::{BgElement, Gen, WeylOperator};

fn hodge_range(model: &MonomialModel, bx: &TruncationBox) -> std::ops::RangeInclusive<i64> {
    -(model.n() as i64)..=bx.p_max
}

/// Shifts under `t`, `∂_t`, `y_i`, `∂_{y_i}` and nilpotency of `θ + α` on
/// `Gr^V_{−α}`, over the basis elements of every piece in the box.
///
/// The `∂_t` shift is checked as `V_{−(α+1)} · ∂_t ⊆ V_{−α}`, so that both
/// indices stay in the positive range where the closed form applies.
pub fn check_v_axioms(model: &MonomialModel, alpha: &Q, bx: &TruncationBox) -> Result<CheckRecord> {
    let n = model.n();
    let vf = VFiltration::new(model);
    let b = b_vector(model, alpha)?;
    let alpha1 = alpha + Q::one();
    let b1 = b_vector(model, &alpha1)?;
    let plus = &WeylOperator::theta(n) + &WeylOperator::constant(n, alpha.clone());
    let minus = &WeylOperator::theta(n) - &WeylOperator::constant(n, alpha.clone());
    let mut rec = CheckRecord::new("v_axioms").input("model", model).input("alpha", alpha);
    let mut index = 0usize;
    let mut visited = 0usize;
    for d in bx.degrees() {
        for p in hodge_range(model, bx) {
            let elems: Vec<BgElement> =
                labels_44(model, &b, p, &d).iter().map(|l| vf.label_element(&b, l)).collect();
            for x in &elems {
                visited += 1;
                let at = || format!("degree {d}, p={p}, element {x}");
                rec.require(vf.member(&x.act_gen(Gen::T, model), &alpha1)?, || format!("t: {}", at()));
                for i in 0..n {
                    rec.require(vf.member(&x.act_gen(Gen::Y(i), model), alpha)?, || format!("y{}: {}", i + 1, at()));
                    rec.require(vf.member(&x.act_gen(Gen::Dy(i), model), alpha)?, || format!("d{}: {}", i + 1, at()));
                }
                if vf.member_deeper(x, alpha)? {
                    continue;
                }
                let mut y = x.clone();
                let mut found = None;
                for k in 1..=model.r() + 1 {
                    y = y.act_right(&plus, model);
                    if vf.member_deeper(&y, alpha)? {
                        found = Some(k);
                        break;
                    }
                }
                match found {
                    Some(k) => {
                        index = index.max(k);
                        rec.require(k <= model.r(), || format!("nilpotency index {k} > r: {}", at()));
                    }
                    None => rec.fail(format!("theta + alpha not nilpotent: {}", at())),
                }
                let mut z = x.clone();
                for _ in 0..=model.r() {
                    z = z.act_right(&minus, model);
                }
                rec.require(!vf.member_deeper(&z, alpha)?, || format!("theta - alpha also nilpotent: {}", at()));
            }
            for l in labels_44(model, &b1, p, &d) {
                let x = vf.label_element(&b1, &l);
                rec.require(vf.member(&x.act_gen(Gen::Dt, model), alpha)?, || {
                    format!("dt: degree {d}, p={p}, element {x}")
                });
            }
        }
    }
    rec.set_detail("nilpotency_index", index);
    rec.set_detail("elements", visited);
    rec.set_detail("theta_sign", "theta + alpha nilpotent on Gr^V_{-alpha}");
    Ok(rec)
}

/// `·t : F_p V_{−α} → F_p V_{−α−1}` is an isomorphism in every degree of the box.
pub fn t_shift_check(model: &MonomialModel, alpha: &Q, bx: &TruncationBox) -> Result<CheckRecord> {
    let vf = VFiltration::new(model);
    let b = b_vector(model, alpha)?;
    let alpha1 = alpha + Q::one();
    let b1 = b_vector(model, &alpha1)?;
    let shift = model.t_degree();
    let mut rec = CheckRecord::new("t_shift").input("model", model).input("alpha", alpha);
    for d in bx.degrees() {
        let target = d.add(&shift);
        for p in hodge_range(model, bx) {
            let len = coordinate_count(model.n(), p);
            let elems: Vec<BgElement> =
                labels_44(model, &b, p, &d).iter().map(|l| vf.label_element(&b, l)).collect();
            let mut image = Span::new(len);
            for x in &elems {
                let y = x.act_gen(Gen::T, model);
                rec.require(vf.member(&y, &alpha1)?, || format!("degree {d}, p={p}: {x}·t not in V"));
                if let Some(c) = vf.coordinates(&y, p, &target) {
                    image.insert(c);
                } else {
                    rec.fail(format!("degree {d}, p={p}: {x}·t leaves F_p"));
                }
            }
            rec.require(image.rank() == elems.len(), || format!("degree {d}, p={p}: not injective"));
            let full = vf.piece_dim(&b1, p, &target);
            rec.require(image.rank() == full, || format!("degree {d}, p={p}: image rank {} vs {full}", image.rank()));
        }
    }
    Ok(rec)
}

/// `F_p B_d` is spanned by `x·∂_t^k` with `x ∈ F_{p−k} V_{−α}` for `α` at or
/// below the smallest jump candidate.
pub fn exhaustion_check(model: &MonomialModel, bx: &TruncationBox) -> Result<CheckRecord> {
    let n = model.n();
    let vf = VFiltration::new(model);
    let small = jump_candidates(&model.divisor(), &qi(0), &qi(1))?[0].clone();
    let b = b_vector(model, &small)?;
    let shift = model.t_degree();
    let mut rec = CheckRecord::new("exhaustion").input("model", model).input("alpha", &small);
    for d in bx.degrees() {
        for p in hodge_range(model, bx) {
            let len = coordinate_count(n, p);
            let full = (0..len)
                .filter(|&m| (0..n).all(|i| d.0[i] + m as i64 * model.exponent(i) as i64 >= 0))
                .count();
            let mut span = Span::new(len);
            for k in 0..len as u32 {
                let src = d.add(&shift.scale(k as i64));
                for l in labels_44(model, &b, p - k as i64, &src) {
                    let mut x = vf.label_element(&b, &l);
                    for _ in 0..k {
                        x = x.act_gen(Gen::Dt, model);
                    }
                    span.insert(vf.coordinates(&x, p, &d).expect("x·∂_t^k lies in F_p B_d"));
                }
            }
            rec.require(span.rank() == full, || format!("degree {d}, p={p}: rank {} of {full}", span.rank()));
        }
    }
    Ok(rec)
}

/// `dy ∂_t^p δ ∈ V_{−α}` iff some `dy ∂_t^p δ + Σ_{i≥1} h_i dy ∂_t^{p−i} δ` is.
///
/// Membership is decided degree by degree, so only the piece of degree
/// `−p·a` matters: the first condition asks whether that piece of
/// `F_{p−n} V_{−α}` reaches the top coordinate, the second whether it
/// contains the top basis vector.
pub fn saito_check(model: &MonomialModel, p: u32, alpha: &Q) -> Result<CheckRecord> {
    let n = model.n();
    let vf = VFiltration::new(model);
    let b = b_vector(model, alpha)?;
    let level = p as i64 - n as i64;
    let d: MultiDegree = model.t_degree().scale(-(p as i64));
    let span = vf.span(&b, level, &d);
    let with_lower = span.reaches(p as usize);
    let plain = vf.member(&BgElement::delta(n, p), alpha)?;
    let mut rec = CheckRecord::new("saito_criterion")
        .input("model", model)
        .input("p", p)
        .input("alpha", alpha)
        .detail("member", plain);
    rec.require(with_lower == plain, || format!("with lower terms {with_lower}, pure {plain}"));
    // the twist of the deeper level must never do better
    let deeper = vf.contains_twist(&BgElement::delta(n, p), &b_deeper(model, alpha)?)?;
    rec.require(!deeper || plain, || "deeper level contains the element but V does not".into());
    Ok(rec)
}
