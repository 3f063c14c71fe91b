//! The monomial model `g = y_1^{a_1} ⋯ y_r^{a_r}` on affine `n`-space and its
//! `ℤ^n` multidegrees.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::snc::SncDivisor;

/// Ambient data `(n, r, a)` of a monomial divisor.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "ModelSpec", into = "ModelSpec")]
pub struct MonomialModel {
    n: usize,
    a: Vec<u32>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct ModelSpec {
    n: usize,
    exponents: Vec<u32>,
}

impl TryFrom<ModelSpec> for MonomialModel {
    type Error = Error;

    fn try_from(spec: ModelSpec) -> Result<Self> {
        MonomialModel::new(spec.n, spec.exponents)
    }
}

impl From<MonomialModel> for ModelSpec {
    fn from(m: MonomialModel) -> Self {
        ModelSpec { n: m.n, exponents: m.a }
    }
}

impl MonomialModel {
    pub fn new(n: usize, a: Vec<u32>) -> Result<Self> {
        if n == 0 {
            return invalid("ambient dimension must be at least 1");
        }
        if a.is_empty() || a.len() > n {
            return invalid(format!("need 1 ≤ r ≤ n, got r = {} and n = {n}", a.len()));
        }
        if a.contains(&0) {
            return invalid("exponents must be positive");
        }
        Ok(MonomialModel { n, a })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.a.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.a
    }

    /// `a_i` for `i < r` and `0` beyond, i.e. the exponent vector of `g` in `ℤ^n`.
    pub fn exponent(&self, i: usize) -> u32 {
        self.a.get(i).copied().unwrap_or(0)
    }

    pub fn exponent_vector(&self) -> Vec<u32> {
        (0..self.n).map(|i| self.exponent(i)).collect()
    }

    pub fn is_smooth(&self) -> bool {
        self.a == [1]
    }

    /// `D = div(g)` on the components `E_1, …, E_r`.
    pub fn divisor(&self) -> SncDivisor {
        SncDivisor::new(self.a.iter().map(|&a| a as i64).collect())
    }

    pub fn product_of_exponents(&self) -> i64 {
        self.a.iter().map(|&a| a as i64).product()
    }

    /// `deg(t) = Σ a_i e_i`.
    pub fn t_degree(&self) -> MultiDegree {
        MultiDegree((0..self.n).map(|i| self.exponent(i) as i64).collect())
    }
}

impl fmt::Display for MonomialModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let factors: Vec<String> = self
            .a
            .iter()
            .enumerate()
            .map(|(i, &a)| if a == 1 { format!("y{}", i + 1) } else { format!("y{}^{a}", i + 1) })
            .collect();
        write!(f, "n={} g={}", self.n, factors.join("*"))
    }
}

/// An element of `ℤ^n`, printed as `(d_1,…,d_n)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiDegree(pub Vec<i64>);

impl MultiDegree {
    pub fn zero(n: usize) -> Self {
        MultiDegree(vec![0; n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut d = vec![0; n];
        d[i] = 1;
        MultiDegree(d)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add(&self, other: &MultiDegree) -> MultiDegree {
        MultiDegree(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &MultiDegree) -> MultiDegree {
        MultiDegree(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, k: i64) -> MultiDegree {
        MultiDegree(self.0.iter().map(|a| a * k).collect())
    }

    /// Converts to an exponent vector if all entries are nonnegative.
    pub fn to_exponents(&self) -> Option<Vec<u32>> {
        self.0.iter().map(|&x| u32::try_from(x).ok()).collect()
    }
}

impl From<&[u32]> for MultiDegree {
    fn from(v: &[u32]) -> Self {
        MultiDegree(v.iter().map(|&x| x as i64).collect())
    }
}

impl fmt::Display for MultiDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl FromStr for MultiDegree {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .strip_prefix('(')
            .and_then(|s| s.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("multidegree must look like (1,0): {s:?}")))?;
        inner
            .split(',')
            .map(|x| x.trim().parse::<i64>().map_err(|_| Error::Parse(format!("bad entry {x:?}"))))
            .collect::<Result<Vec<_>>>()
            .map(MultiDegree)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn model_validation() {
        assert!(MonomialModel::new(2, vec![1, 1]).is_ok());
        assert!(MonomialModel::new(1, vec![1, 1]).is_err());
        assert!(MonomialModel::new(2, vec![]).is_err());
        assert!(MonomialModel::new(2, vec![0]).is_err());
        assert!(MonomialModel::new(0, vec![1]).is_err());
        assert!(MonomialModel::new(1, vec![1]).unwrap().is_smooth());
        assert!(!MonomialModel::new(2, vec![1, 1]).unwrap().is_smooth());
        assert!(!MonomialModel::new(1, vec![2]).unwrap().is_smooth());
    }

    #[test]
    fn model_json() {
        let m: MonomialModel = serde_json::from_str(r#"{"n":2,"exponents":[1,1]}"#).unwrap();
        assert_eq!(m, MonomialModel::new(2, vec![1, 1]).unwrap());
        assert_eq!(serde_json::to_string(&m).unwrap(), r#"{"n":2,"exponents":[1,1]}"#);
        assert!(serde_json::from_str::<MonomialModel>(r#"{"n":1,"exponents":[1,2]}"#).is_err());
    }

    #[test]
    fn multidegree_text() {
        let d: MultiDegree = "(0,-1, 2)".parse().unwrap();
        assert_eq!(d, MultiDegree(vec![0, -1, 2]));
        assert_eq!(d.to_string(), "(0,-1,2)");
        assert!("0,1".parse::<MultiDegree>().is_err());
    }
}
