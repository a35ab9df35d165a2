use serde::Serialize;

use crate::error::{Error, Result};

/// Largest `t` accepted; keeps `2^(t+1)` and the edge formulas inside `i64`.
pub const MAX_T: u32 = 40;

/// `(t, k, n)` with the derived construction quantities.
///
/// The base graph has `2^k - 1` binomial trees of order `t + 1 - k`, so
/// `N = (2^k - 1) 2^(t+1-k)` vertices. A target `n < N` is reached by deleting
/// `d = N - n = x 2^(t+1-k) + y` vertices, and `p = floor(log2(x + 1))`
/// sub-cubes of roots disappear along the way.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ConstructionParams {
    pub t: u32,
    pub k: u32,
    pub n: u64,
    #[serde(rename = "N")]
    pub big_n: u64,
    pub d: u64,
    pub x: u64,
    pub y: u64,
    pub p: u32,
}

/// Largest admissible `k` for a given `t` and parity of `n`.
pub fn max_k(t: u32, n_is_odd: bool) -> u32 {
    if n_is_odd {
        t.div_ceil(2).saturating_sub(1)
    } else {
        (t / 2).saturating_sub(1)
    }
}

/// Vertex count of the full construction for `(t, k)`.
pub fn full_size(t: u32, k: u32) -> u64 {
    ((1u64 << k) - 1) << (t + 1 - k)
}

impl ConstructionParams {
    pub fn new(t: u32, k: u32, n: u64) -> Result<Self> {
        if t < 7 {
            return Err(Error::ParamOutOfRange(format!("t = {t} but t >= 7 is required")));
        }
        if t > MAX_T {
            return Err(Error::ParamOutOfRange(format!("t = {t} exceeds the supported maximum {MAX_T}")));
        }
        let odd = n % 2 == 1;
        let kmax = max_k(t, odd);
        if k < 2 || k > kmax {
            let rule = if odd { "ceil(t/2) - 1 for odd n" } else { "floor(t/2) - 1 for even n" };
            return Err(Error::ParamOutOfRange(format!(
                "k = {k} outside 2..={kmax} (k <= {rule})"
            )));
        }
        Self::unchecked_k(t, k, n)
    }

    /// Skips the parity rule on `k`; still enforces `2^t < n <= N`.
    ///
    /// Used for the base graph of an odd-`n` instance, whose `N` is even.
    pub(crate) fn unchecked_k(t: u32, k: u32, n: u64) -> Result<Self> {
        let big_n = full_size(t, k);
        let low = 1u64 << t;
        if n <= low || n > big_n {
            return Err(Error::ParamOutOfRange(format!(
                "n = {n} outside ({low}, {big_n}] for t = {t}, k = {k}"
            )));
        }
        let tree_size = 1u64 << (t + 1 - k);
        let d = big_n - n;
        let x = d / tree_size;
        let y = d - x * tree_size;
        let p = if x > 0 { (x + 1).ilog2() } else { 0 };
        Ok(ConstructionParams { t, k, n, big_n, d, x, y, p })
    }

    /// Order of every binomial tree, `t + 1 - k`.
    pub fn tree_order(&self) -> u32 {
        self.t + 1 - self.k
    }

    pub fn tree_size(&self) -> u64 {
        1 << self.tree_order()
    }

    pub fn is_full(&self) -> bool {
        self.d == 0
    }

    /// Broadcast deadline `ceil(log2 n)`, equal to `t + 1` for every valid `n`.
    pub fn target_rounds(&self) -> u32 {
        ceil_log2(self.n)
    }

    pub fn base(&self) -> ConstructionParams {
        ConstructionParams { n: self.big_n, d: 0, x: 0, y: 0, p: 0, ..*self }
    }
}

pub fn make_params(t: u32, k: u32, n: u64) -> Result<ConstructionParams> {
    ConstructionParams::new(t, k, n)
}

pub fn ceil_log2(n: u64) -> u32 {
    assert!(n > 0, "log of zero");
    if n == 1 {
        0
    } else {
        64 - (n - 1).leading_zeros()
    }
}

pub fn floor_log2(n: u64) -> u32 {
    n.ilog2()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_case_has_zero_deficit() {
        let p = make_params(7, 2, 192).unwrap();
        assert_eq!((p.big_n, p.d, p.x, p.y, p.p), (192, 0, 0, 0, 0));
        assert!(p.is_full());
    }

    #[test]
    fn deficit_decomposition() {
        let p = make_params(14, 3, 16385).unwrap();
        assert_eq!((p.big_n, p.d, p.x, p.y, p.p), (28672, 12287, 2, 4095, 1));
    }

    #[test]
    fn k_range_depends_on_parity() {
        let err = make_params(7, 4, 192).unwrap_err();
        assert!(matches!(err, Error::ParamOutOfRange(ref m) if m.contains("k = 4")), "{err}");
        assert!(make_params(7, 3, 200).is_err());
        assert!(make_params(7, 3, 201).is_ok());
        assert!(make_params(7, 1, 191).is_err());
    }

    #[test]
    fn n_range_and_t_floor() {
        assert!(make_params(6, 2, 100).is_err());
        assert!(make_params(7, 2, 128).is_err());
        assert!(make_params(7, 2, 129).is_ok());
        assert!(make_params(7, 2, 193).is_err());
    }

    #[test]
    fn log_helpers() {
        assert_eq!(ceil_log2(1), 0);
        assert_eq!(ceil_log2(2), 1);
        assert_eq!(ceil_log2(192), 8);
        assert_eq!(ceil_log2(256), 8);
        assert_eq!(ceil_log2(257), 9);
        assert_eq!(floor_log2(192), 7);
    }

    #[test]
    fn derived_ranges_hold_everywhere() {
        for t in 7..=12 {
            for k in 2..=max_k(t, true) {
                let big_n = full_size(t, k);
                assert_eq!(ceil_log2(big_n), t + 1);
                for n in (1u64 << t) + 1..=big_n {
                    let Ok(p) = ConstructionParams::unchecked_k(t, k, n) else { panic!() };
                    assert!(p.x < 1 << (k - 1));
                    assert!(p.y < p.tree_size());
                    assert!(p.p < k);
                    assert_eq!(p.x * p.tree_size() + p.y, p.d);
                    assert_eq!(p.target_rounds(), t + 1);
                }
            }
        }
    }
}
