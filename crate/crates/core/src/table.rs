//! Dimension tables keyed by multidegree, Hodge index and cohomological degree,
//! plus the degree boxes they are computed on.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::error::{invalid, Result};
use crate::model::MultiDegree;
use crate::rational::Q;

/// A box of multidegrees `lo ≤ d ≤ hi` together with a bound on the Hodge index.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TruncationBox {
    pub lo: Vec<i64>,
    pub hi: Vec<i64>,
    pub p_max: i64,
}

impl TruncationBox {
    pub fn new(lo: Vec<i64>, hi: Vec<i64>, p_max: i64) -> Result<Self> {
        if lo.len() != hi.len() {
            return invalid("box bounds have different lengths");
        }
        if lo.iter().zip(&hi).any(|(l, h)| l > h) {
            return invalid("box lower bound exceeds upper bound");
        }
        Ok(TruncationBox { lo, hi, p_max })
    }

    /// The cube `[−radius, radius]^n`.
    pub fn radius(n: usize, radius: i64, p_max: i64) -> Self {
        let radius = radius.abs();
        TruncationBox { lo: vec![-radius; n], hi: vec![radius; n], p_max }
    }

    pub fn n(&self) -> usize {
        self.lo.len()
    }

    pub fn contains(&self, d: &MultiDegree) -> bool {
        d.len() == self.n() && d.0.iter().enumerate().all(|(i, &x)| self.lo[i] <= x && x <= self.hi[i])
    }

    /// All multidegrees in the box in lexicographic order.
    pub fn degrees(&self) -> Vec<MultiDegree> {
        let mut out = Vec::new();
        let mut cur = self.lo.clone();
        if self.n() == 0 {
            return vec![MultiDegree(cur)];
        }
        loop {
            out.push(MultiDegree(cur.clone()));
            let mut i = self.n();
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                if cur[i] < self.hi[i] {
                    cur[i] += 1;
                    break;
                }
                cur[i] = self.lo[i];
            }
        }
    }
}

/// Key of a table entry: Hodge index, optional cohomological degree, multidegree.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DimKey {
    pub p: i64,
    pub cohom: Option<i64>,
    pub degree: MultiDegree,
}

/// Finitely supported table of exact dimensions; zero entries are not stored.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GradedDimTable {
    pub alpha: Option<Q>,
    entries: BTreeMap<DimKey, usize>,
}

impl GradedDimTable {
    pub fn new(alpha: Option<Q>) -> Self {
        GradedDimTable { alpha, entries: BTreeMap::new() }
    }

    pub fn set(&mut self, p: i64, cohom: Option<i64>, degree: MultiDegree, dim: usize) {
        let key = DimKey { p, cohom, degree };
        if dim == 0 {
            self.entries.remove(&key);
        } else {
            self.entries.insert(key, dim);
        }
    }

    pub fn get(&self, p: i64, cohom: Option<i64>, degree: &MultiDegree) -> usize {
        let key = DimKey { p, cohom, degree: degree.clone() };
        self.entries.get(&key).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&DimKey, &usize)> {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn total(&self) -> usize {
        self.entries.values().sum()
    }

    pub fn merge(&mut self, other: GradedDimTable) {
        self.entries.extend(other.entries);
    }

    /// Entries with the Hodge index and cohomological degree forgotten, summed.
    pub fn by_degree(&self) -> BTreeMap<MultiDegree, usize> {
        let mut out = BTreeMap::new();
        for (k, v) in &self.entries {
            *out.entry(k.degree.clone()).or_insert(0) += v;
        }
        out
    }

    /// One JSON object per `(p, cohom)` block: `{"p":-1,"alpha":"1/2","dims":{"(0)":1}}`.
    pub fn to_json(&self) -> Value {
        let mut blocks: BTreeMap<(i64, Option<i64>), Map<String, Value>> = BTreeMap::new();
        for (k, v) in &self.entries {
            blocks.entry((k.p, k.cohom)).or_default().insert(k.degree.to_string(), json!(v));
        }
        let alpha = self.alpha.as_ref().map(|a| Value::String(a.to_string()));
        Value::Array(
            blocks
                .into_iter()
                .map(|((p, cohom), dims)| {
                    let mut obj = Map::new();
                    obj.insert("p".into(), json!(p));
                    if let Some(c) = cohom {
                        obj.insert("cohom".into(), json!(c));
                    }
                    if let Some(a) = &alpha {
                        obj.insert("alpha".into(), a.clone());
                    }
                    obj.insert("dims".into(), Value::Object(dims));
                    Value::Object(obj)
                })
                .collect(),
        )
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["alpha", "p", "cohom", "degree", "dim"]).expect("in-memory write");
        let alpha = self.alpha.as_ref().map(|a| a.to_string()).unwrap_or_default();
        for (k, v) in &self.entries {
            w.write_record([
                alpha.clone(),
                k.p.to_string(),
                k.cohom.map(|c| c.to_string()).unwrap_or_default(),
                k.degree.to_string(),
                v.to_string(),
            ])
            .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
    }
}
