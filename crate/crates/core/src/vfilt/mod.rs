//! The V-filtration and Hodge filtration on `B_g^r` for monomial `g`.
//!
//! `V_{−α}B_g^r = y^b dy δ · 𝒟_Y[θ]` with `b_i = ⌈α a_i⌉ − 1`, filtered by
//! `F_q 𝒟_Y[θ]`, where `θ` carries order one. Hodge indices follow the right
//! module convention: `dy ∂_t^m δ` lies in `F_{m−n}` and first appears there.
//!
//! On `Gr^V_{−α}` the operator `θ + α` is nilpotent, i.e. `θ − β` with
//! `β = −α`; [`check_v_axioms`] confirms this sign on every piece it visits.

mod checks;
mod engine;
mod labels;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use checks::{check_v_axioms, exhaustion_check, saito_check, t_shift_check};
pub use engine::{basis_set, coordinate_count, hodge_level, spanning_set, v_member, v_order, VFiltration};
pub use labels::{
    b_deeper, b_vector, count_44, count_45, count_45_b, generating_labels, labels_44, labels_45, FiltrationIndex, GrBasisLabel,
};

use crate::error::{Error, Result};
use crate::model::MonomialModel;
use crate::rational::Q;
use crate::table::{GradedDimTable, TruncationBox};

/// Whether to measure `V_{−α}` itself or the quotient `Gr^V_{−α}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum GrMode {
    V,
    GrV,
}

impl fmt::Display for GrMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GrMode::V => "V",
            GrMode::GrV => "GrV",
        })
    }
}

impl FromStr for GrMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "V" => Ok(GrMode::V),
            "GrV" => Ok(GrMode::GrV),
            _ => Err(Error::Parse(format!("mode must be V or GrV, got {s:?}"))),
        }
    }
}

/// `dim Gr^F_p V_{−α}` or `dim Gr^F_p Gr^V_{−α}` per multidegree of the box.
pub fn gr_dim(p: i64, alpha: &Q, bx: &TruncationBox, model: &MonomialModel, mode: GrMode) -> Result<GradedDimTable> {
    let b = b_vector(model, alpha)?;
    let deeper = b_deeper(model, alpha)?;
    let mut table = GradedDimTable::new(Some(alpha.clone()));
    for d in bx.degrees() {
        let mut dim = count_45_b(model, &b, p, &d);
        if mode == GrMode::GrV {
            dim -= count_45_b(model, &deeper, p, &d);
        }
        table.set(p, None, d, dim);
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::MultiDegree;
    use crate::rational::{q, qi};

    #[test]
    fn gr_dim_examples() {
        let m = MonomialModel::new(1, vec![2]).unwrap();
        let bx = TruncationBox::radius(1, 6, 2);
        let d0 = MultiDegree(vec![0]);
        let t = gr_dim(-1, &q(1, 2), &bx, &m, GrMode::GrV).unwrap();
        assert_eq!(t.get(-1, None, &d0), 1);
        let t = gr_dim(-1, &q(1, 4), &bx, &m, GrMode::GrV).unwrap();
        assert!(t.is_empty());
        let m2 = MonomialModel::new(2, vec![1, 1]).unwrap();
        let t = gr_dim(0, &qi(1), &TruncationBox::radius(2, 6, 2), &m2, GrMode::V).unwrap();
        assert_eq!(t.get(0, None, &MultiDegree(vec![0, 0])), 1);
        assert!("W".parse::<GrMode>().is_err());
    }
}
