//! Membership in `F_p V_{−α}` by exact linear algebra in a single multidegree.
//!
//! In degree `d` the term `y^v dy ∂_t^m δ` is determined by `m`, since
//! `v = d + m·a`. So `F_p B_d` has coordinates `m = 0..=p+n` (those with
//! `d + m·a ≥ 0`), and every subspace below is a span in that coordinate space.

use std::cell::RefCell;
use std::collections::HashMap;
use std::rc::Rc;

use num_traits::Zero;

use super::labels::{b_deeper, b_vector, generating_labels, labels_44, GrBasisLabel};
use crate::error::{invalid, Error, Result};
use crate::linalg::Span;
use crate::model::{MonomialModel, MultiDegree};
use crate::rational::{is_positive, Q};
use crate::snc::jump_candidates;
use crate::weyl::{BgElement, Gen, WeylOperator};

/// Smallest `q` with `u ∈ F_q B^r`: an order-`m` term sits first in `F_{m−n}`.
pub fn hodge_level(u: &BgElement) -> Result<i64> {
    match u.max_order() {
        Some(m) => Ok(m as i64 - u.n() as i64),
        None => invalid("the zero element has no Hodge level"),
    }
}

/// Number of `∂_t`-order coordinates of `F_p B_d`.
pub fn coordinate_count(n: usize, p: i64) -> usize {
    (p + n as i64 + 1).max(0) as usize
}

type SpanKey = (Vec<u32>, i64, MultiDegree);

/// Caches spans of `F_p V` pieces for one model.
pub struct VFiltration<'a> {
    model: &'a MonomialModel,
    spans: RefCell<HashMap<SpanKey, Rc<Span>>>,
}

impl<'a> VFiltration<'a> {
    pub fn new(model: &'a MonomialModel) -> Self {
        VFiltration { model, spans: RefCell::new(HashMap::new()) }
    }

    pub fn model(&self) -> &MonomialModel {
        self.model
    }

    /// `y^b dy δ · y^v ∂_y^w θ^j`.
    pub fn label_element(&self, b: &[u32], label: &GrBasisLabel) -> BgElement {
        let start = BgElement::term(b.to_vec(), 0, Q::from_integer(1.into()));
        let mut u = start.act_right(&WeylOperator::y_dy(&label.v, &label.w), self.model);
        for _ in 0..label.j {
            u = u.act_gen(Gen::T, self.model).act_gen(Gen::Dt, self.model);
        }
        u
    }

    /// Coordinates of a degree-`d` element inside `F_p B_d`; `None` if it has
    /// a term of order above `p + n` or outside degree `d`.
    pub fn coordinates(&self, u: &BgElement, p: i64, d: &MultiDegree) -> Option<Vec<Q>> {
        let len = coordinate_count(self.model.n(), p);
        let mut out = vec![Q::zero(); len];
        for ((v, m), c) in u.terms() {
            if *m as usize >= len || crate::weyl::term_degree(v, *m, self.model) != *d {
                return None;
            }
            out[*m as usize] = c.clone();
        }
        Some(out)
    }

    /// Basis vectors of `F_p V` in degree `d` for the twist `b`.
    pub fn basis_vectors(&self, b: &[u32], p: i64, d: &MultiDegree) -> Vec<Vec<Q>> {
        labels_44(self.model, b, p, d)
            .iter()
            .map(|l| {
                let u = self.label_element(b, l);
                self.coordinates(&u, p, d).expect("basis element stays in F_p B_d")
            })
            .collect()
    }

    /// Span of `F_p V` in degree `d` for the twist `b`, cached.
    pub fn span(&self, b: &[u32], p: i64, d: &MultiDegree) -> Rc<Span> {
        let key = (b.to_vec(), p, d.clone());
        if let Some(s) = self.spans.borrow().get(&key) {
            return s.clone();
        }
        let len = coordinate_count(self.model.n(), p);
        let s = Rc::new(Span::from_vectors(len, &self.basis_vectors(b, p, d)));
        self.spans.borrow_mut().insert(key, s.clone());
        s
    }

    pub fn piece_dim(&self, b: &[u32], p: i64, d: &MultiDegree) -> usize {
        self.span(b, p, d).rank()
    }

    /// Whether `u` lies in the piece with twist `b`.
    pub fn contains_twist(&self, u: &BgElement, b: &[u32]) -> Result<bool> {
        if u.is_zero() {
            return Ok(true);
        }
        u.validate(self.model)?;
        let p = hodge_level(u)?;
        for (d, piece) in u.multidegree(self.model) {
            let coords = self.coordinates(&piece, p, &d).expect("piece is homogeneous");
            if !self.span(b, p, &d).contains(&coords) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `u ∈ V_{−α}`.
    pub fn member(&self, u: &BgElement, alpha: &Q) -> Result<bool> {
        self.contains_twist(u, &b_vector(self.model, alpha)?)
    }

    /// `u ∈ V_{<−α}`.
    pub fn member_deeper(&self, u: &BgElement, alpha: &Q) -> Result<bool> {
        self.contains_twist(u, &b_deeper(self.model, alpha)?)
    }

    /// Largest `α ≤ cap` with `u ∈ V_{−α}`, scanning jump candidates.
    pub fn v_order(&self, u: &BgElement, cap: &Q) -> Result<Q> {
        if u.is_zero() {
            return invalid("the zero element has no V-order");
        }
        if !is_positive(cap) {
            return invalid(format!("cap must be positive, got {cap}"));
        }
        if self.member(u, cap)? {
            return Ok(cap.clone());
        }
        let cands = jump_candidates(&self.model.divisor(), &Q::zero(), cap)?;
        for c in cands.iter().rev() {
            if c < cap && self.member(u, c)? {
                return Ok(c.clone());
            }
        }
        Err(Error::BelowRange(u.to_string()))
    }

    /// Coordinates of the full generating set of `F_p V` in degree `d`.
    pub fn generating_vectors(&self, b: &[u32], p: i64, d: &MultiDegree) -> Vec<Vec<Q>> {
        generating_labels(self.model, b, p, d)
            .iter()
            .map(|l| {
                let u = self.label_element(b, l);
                self.coordinates(&u, p, d).expect("generator stays in F_p B_d")
            })
            .collect()
    }

    /// `dim Gr^F_p` of `V_{−α}` (`graded_v = false`) or of `Gr^V_{−α}` in
    /// degree `d`, from ranks of the full generating sets.
    pub fn gr_dim_linalg(&self, p: i64, alpha: &Q, d: &MultiDegree, graded_v: bool) -> Result<usize> {
        let n = self.model.n();
        let len = coordinate_count(n, p);
        let b = b_vector(self.model, alpha)?;
        let fp = Span::from_vectors(len, &self.generating_vectors(&b, p, d));
        let pad = |vs: Vec<Vec<Q>>| -> Vec<Vec<Q>> {
            vs.into_iter()
                .map(|mut v| {
                    v.resize(len, Q::zero());
                    v
                })
                .collect()
        };
        let mut lower = Span::from_vectors(len, &pad(self.generating_vectors(&b, p - 1, d)));
        if graded_v {
            let deeper = b_deeper(self.model, alpha)?;
            for v in self.generating_vectors(&deeper, p, d) {
                lower.insert(v);
            }
        }
        Ok(fp.rank() - lower.rank())
    }
}

/// Generators `y^b dy δ · y^v ∂_y^w θ^j` of `F_p V_{−α}` in degree `d`.
pub fn spanning_set(p: i64, alpha: &Q, d: &MultiDegree, model: &MonomialModel) -> Result<Vec<BgElement>> {
    let b = b_vector(model, alpha)?;
    let vf = VFiltration::new(model);
    Ok(generating_labels(model, &b, p, d).iter().map(|l| vf.label_element(&b, l)).collect())
}

/// The basis of `F_p V_{−α}` in degree `d` from the constrained labels.
pub fn basis_set(p: i64, alpha: &Q, d: &MultiDegree, model: &MonomialModel) -> Result<Vec<BgElement>> {
    let b = b_vector(model, alpha)?;
    let vf = VFiltration::new(model);
    Ok(labels_44(model, &b, p, d).iter().map(|l| vf.label_element(&b, l)).collect())
}

pub fn v_member(u: &BgElement, alpha: &Q, model: &MonomialModel) -> Result<bool> {
    VFiltration::new(model).member(u, alpha)
}

pub fn v_order(u: &BgElement, model: &MonomialModel, cap: &Q) -> Result<Q> {
    VFiltration::new(model).v_order(u, cap)
}
