//! Wedge monomials in a fixed ordered set of one-form symbols.

use std::fmt;

/// A wedge `s_{j_1} ∧ … ∧ s_{j_q}` with `j_1 < … < j_q`, stored as a bitmask.
///
/// For log forms on the monomial model, symbol `k < r` is `a_{k+1} dlog y_{k+1}` and
/// symbol `k ≥ r` is `dy_{k+1}`; relative forms omit symbol 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LogFormSymbol(pub u32);

impl LogFormSymbol {
    pub const ONE: LogFormSymbol = LogFormSymbol(0);

    pub fn from_indices(idx: &[usize]) -> Self {
        LogFormSymbol(idx.iter().fold(0, |m, &i| m | (1 << i)))
    }

    pub fn degree(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, k: usize) -> bool {
        self.0 & (1 << k) != 0
    }

    pub fn indices(self) -> Vec<usize> {
        (0..32).filter(|&k| self.contains(k)).collect()
    }

    /// `s_k ∧ self` as `(sign, monomial)`, or `None` if `s_k` already occurs.
    pub fn wedge_left(self, k: usize) -> Option<(i64, LogFormSymbol)> {
        if self.contains(k) {
            return None;
        }
        let before = (self.0 & ((1 << k) - 1)).count_ones();
        let sign = if before.is_multiple_of(2) { 1 } else { -1 };
        Some((sign, LogFormSymbol(self.0 | (1 << k))))
    }

    /// All monomials of degree `q` in the symbols `first..n`, in increasing mask order.
    pub fn all(first: usize, n: usize, q: usize) -> Vec<LogFormSymbol> {
        let mut out: Vec<LogFormSymbol> = (0u32..(1 << n))
            .map(LogFormSymbol)
            .filter(|m| m.degree() == q && (0..first).all(|k| !m.contains(k)))
            .collect();
        out.sort();
        out
    }

    /// Degree-`q` relative forms: symbols `1..n`.
    pub fn relative(n: usize, q: usize) -> Vec<LogFormSymbol> {
        LogFormSymbol::all(1, n, q)
    }

    /// Degree-`q` absolute forms: symbols `0..n`.
    pub fn absolute(n: usize, q: usize) -> Vec<LogFormSymbol> {
        LogFormSymbol::all(0, n, q)
    }

    /// `s_1 ∧ … ∧ s_{n−1}` in the relative symbols.
    pub fn relative_top(n: usize) -> Self {
        LogFormSymbol(((1u32 << n) - 1) & !1)
    }
}

impl fmt::Display for LogFormSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.indices().iter().map(|k| format!("s{}", k + 1)).collect();
        write!(f, "{}", parts.join("^"))
    }
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}
