//! Closed-form upper bounds on the minimum broadcast edge count `B(n)`.
//!
//! Everything is exact integer arithmetic. Terms of the form `(k/2) 2^k` are
//! evaluated as `k 2^(k-1)`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::params::{ceil_log2, floor_log2, full_size, max_k, ConstructionParams};

fn pow2(e: u32) -> i64 {
    1i64 << e
}

fn to_count(v: i64) -> u64 {
    u64::try_from(v).expect("edge bound is non-negative")
}

/// General bound `ceil(n ceil(log2 n) / 2)`.
pub fn bound_farley(n: u64) -> u64 {
    assert!(n >= 2, "bound needs n >= 2");
    (n * ceil_log2(n) as u64).div_ceil(2)
}

/// `(p, k, r)` with `n = 2^p - 2^k - r`, `0 <= k <= p - 2`, `0 <= r < 2^k`.
///
/// `2^p - n` must lie in `[1, 2^(p-1))`, which forces `p = ceil(log2 n)`
/// and leaves exactly one `(k, r)`; powers of two have no decomposition.
pub fn hl_decomposition(n: u64) -> Result<(u32, u32, u64)> {
    if n < 3 || n.is_power_of_two() {
        return Err(Error::NoDecomposition(n));
    }
    let p = ceil_log2(n);
    let gap = (1u64 << p) - n;
    let k = floor_log2(gap);
    let r = gap - (1 << k);
    debug_assert!(k + 2 <= p);
    Ok((p, k, r))
}

/// Direct binomial-tree construction bound
/// `n(p-k+1) - 2^(p-k) - (p-k)(3p+k-3)/2 + 2k`.
pub fn bound_hl_direct(n: u64) -> Result<u64> {
    let (p, k, _) = hl_decomposition(n)?;
    let (pi, ki) = (p as i64, k as i64);
    // (p-k)(3p+k-3) is always even
    let v = n as i64 * (pi - ki + 1) - pow2(p - k) - (pi - ki) * (3 * pi + ki - 3) / 2 + 2 * ki;
    Ok(to_count(v))
}

/// Modified Knödel graph bound `n floor(log2 n) / 2` for even `n`.
pub fn bound_knodel_even(n: u64) -> Result<u64> {
    if n % 2 == 1 {
        return Err(Error::OddN(n));
    }
    assert!(n >= 2, "bound needs n >= 2");
    Ok(n * floor_log2(n) as u64 / 2)
}

/// Value of the odd-`n` bound and whether its hypotheses hold.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OddBound {
    pub value: u64,
    pub hypotheses_hold: bool,
    pub reason: String,
}

/// Bound for odd `n_odd = n + 1`:
/// `ceil(n floor(log n)/2 + n / ceil(log n)) + ceil(log n) - 2`.
///
/// The fractional middle term is rounded up together with the first term.
/// The hypotheses on `m = ceil(log n)` are checked and reported separately.
pub fn bound_hln_odd(n_odd: u64) -> Result<OddBound> {
    if n_odd % 2 == 0 {
        return Err(Error::EvenN(n_odd));
    }
    if n_odd < 5 {
        return Err(Error::ParamOutOfRange(format!("n = {n_odd} too small for the odd bound")));
    }
    let n = n_odd - 1;
    let lo = floor_log2(n) as u64;
    let m = ceil_log2(n) as u64;
    // ceil(n lo / 2 + n / m) over the common denominator 2m
    let value = (n * lo * m + 2 * n).div_ceil(2 * m) + m - 2;
    let reason = hln_hypotheses(n, m);
    Ok(OddBound { value, hypotheses_hold: reason.is_none(), reason: reason.unwrap_or_else(|| "hypotheses hold".into()) })
}

fn is_prime(m: u64) -> bool {
    m >= 2 && (2..).take_while(|d| d * d <= m).all(|d| m % d != 0)
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}

/// First failing hypothesis of the odd-`n` bound, if any.
fn hln_hypotheses(n: u64, m: u64) -> Option<String> {
    if m <= 2 {
        return Some(format!("ceil(log n) = {m} is not > 2"));
    }
    if !is_prime(m) {
        return Some(format!("ceil(log n) = {m} is not prime"));
    }
    if (m + 1).is_power_of_two() {
        return Some(format!("ceil(log n) = {m} has the form 2^j - 1"));
    }
    if n % m != 0 {
        return Some(format!("ceil(log n) = {m} does not divide n = {n}"));
    }
    if let Some(d) = (1..m - 1).find(|d| (m - 1) % d == 0 && pow_mod(2, *d, m) == 1) {
        return Some(format!("2^{d} = 1 mod {m} for the proper divisor {d} of {}", m - 1));
    }
    None
}

/// `(k+1)N - (t - k/2 + 2) 2^k + t - k + 2` for the full graph.
pub fn bound_full(t: u32, k: u32) -> Result<u64> {
    let params = ConstructionParams::new(t, k, full_size(t, k))?;
    Ok(to_count(bound_pruned_i64(&params)))
}

/// `(k+1-p)n - (t - k/2 + p + 2) 2^k + t - k - (p-2) 2^p`.
pub fn bound_pruned(t: u32, k: u32, n: u64) -> Result<u64> {
    let params = ConstructionParams::new(t, k, n)?;
    Ok(to_count(bound_pruned_i64(&params)))
}

/// Closed form for already validated parameters; equals the full-graph
/// formula at `n = N`.
pub fn bound_pruned_i64(params: &ConstructionParams) -> i64 {
    let (t, k, p) = (params.t as i64, params.k as i64, params.p as i64);
    let n = params.n as i64;
    (k + 1 - p) * n - (t + p + 2) * pow2(params.k) + k * pow2(params.k - 1) + t - k - (p - 2) * pow2(params.p)
}

/// Printed per-class edge counts of the full graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CaseOneItems {
    pub tree: i64,
    pub cube: i64,
    pub root_attach: i64,
    pub rk_attach: i64,
    pub v1_upper: i64,
    pub v1_lower_closed_form: i64,
    pub v1_lower_class: i64,
    pub total: i64,
}

pub fn case1_items(t: u32, k: u32) -> CaseOneItems {
    let m = (t + 1 - k) as i64;
    let tree = pow2(t + 1 - k);
    let ki = k as i64;
    let trees = pow2(k) - 1;
    let lower_trees = pow2(k - 1) - 1;
    let big_n = full_size(t, k) as i64;
    CaseOneItems {
        tree: trees * (tree - 1),
        cube: ki * pow2(k - 1),
        root_attach: trees * (tree - 1 - m) - 1,
        rk_attach: lower_trees * (tree - 1) - 1,
        v1_upper: (ki - 1) * pow2(k - 1) * (tree - 1),
        v1_lower_closed_form: (ki - 2) * lower_trees * (tree - 2),
        v1_lower_class: (ki - 2) * (lower_trees * (tree - 1) - 1),
        total: (ki + 1) * big_n - (t as i64 + 2) * pow2(k) + ki * pow2(k - 1) + t as i64 + 2 - ki,
    }
}

/// Printed deleted-edge counts for a pruned graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DeletionItems {
    pub whole_trees: i64,
    pub cube: i64,
    pub v1_roots: i64,
    pub pruned: i64,
    pub total: i64,
}

pub fn deletion_items(params: &ConstructionParams) -> DeletionItems {
    let (k, p) = (params.k as i64, params.p as i64);
    let (n, d, x, y) = (params.n as i64, params.d as i64, params.x as i64, params.y as i64);
    let tree = params.tree_size() as i64;
    let pp = pow2(params.p);
    DeletionItems {
        whole_trees: (k + 1) * (tree - 1) * (pp - 1),
        cube: (k - 1) * (pp - 1),
        v1_roots: (n - (pow2(params.k) - pp)) * p,
        pruned: (k + 1) * (tree * (x - (pp - 1)) + y),
        total: n * p + (k + 1) * d - p * pow2(params.k) + (p - 2) * pp + 2,
    }
}

/// Smallest value of the new bound over all admissible `k` for `n`.
///
/// `t` is forced to `ceil(log2 n) - 1`. Returns `(k, value)`.
pub fn best_new_bound(n: u64) -> Option<(u32, u64)> {
    if n < 3 {
        return None;
    }
    let t = ceil_log2(n) - 1;
    (2..=max_k(t, n % 2 == 1))
        .filter_map(|k| bound_pruned(t, k, n).ok().map(|v| (k, v)))
        .min_by_key(|&(k, v)| (v, k))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundId {
    Farley,
    HlDirect,
    KnodelEven,
    HlnOdd,
    New,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundEntry {
    pub id: BoundId,
    /// Present exactly when `applicable`.
    pub value: Option<u64>,
    pub applicable: bool,
    pub reason: String,
    /// The formula evaluated wherever it is defined, hypotheses aside.
    pub formula_value: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub n: u64,
    pub bounds: Vec<BoundEntry>,
    pub best: Option<BoundId>,
    /// `k` achieving the new bound, when it applies.
    pub new_bound_k: Option<u32>,
}

fn entry(id: BoundId, value: Result<u64>, reason_ok: &str) -> BoundEntry {
    match value {
        Ok(v) => BoundEntry { id, value: Some(v), applicable: true, reason: reason_ok.into(), formula_value: Some(v) },
        Err(e) => BoundEntry { id, value: None, applicable: false, reason: e.to_string(), formula_value: None },
    }
}

pub fn bound_report(n: u64) -> Result<BoundReport> {
    if n < 2 {
        return Err(Error::ParamOutOfRange(format!("n = {n} but n >= 2 is required")));
    }
    let mut bounds = vec![
        entry(BoundId::Farley, Ok(bound_farley(n)), "any n >= 2"),
        entry(BoundId::HlDirect, bound_hl_direct(n), "n = 2^p - 2^k - r"),
        entry(BoundId::KnodelEven, bound_knodel_even(n), "even n"),
    ];
    bounds.push(match bound_hln_odd(n) {
        Ok(b) => BoundEntry {
            id: BoundId::HlnOdd,
            value: b.hypotheses_hold.then_some(b.value),
            applicable: b.hypotheses_hold,
            reason: b.reason,
            formula_value: Some(b.value),
        },
        Err(e) => entry(BoundId::HlnOdd, Err(e), ""),
    });
    let new = best_new_bound(n);
    bounds.push(match new {
        Some((k, v)) => BoundEntry {
            id: BoundId::New,
            value: Some(v),
            applicable: true,
            reason: format!("t = {}, k = {k}", ceil_log2(n) - 1),
            formula_value: Some(v),
        },
        None => BoundEntry {
            id: BoundId::New,
            value: None,
            applicable: false,
            reason: "no admissible (t, k) with t >= 7 and n <= N".into(),
            formula_value: None,
        },
    });
    let best = bounds.iter().filter_map(|b| b.value.map(|v| (v, b.id))).min_by_key(|&(v, _)| v).map(|(_, id)| id);
    Ok(BoundReport { n, bounds, best, new_bound_k: new.map(|(k, _)| k) })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn farley_examples() {
        assert_eq!(bound_farley(192), 768);
        assert_eq!(bound_farley(2), 1);
        assert_eq!(bound_farley(1000), 5000);
        assert_eq!(bound_farley(3), 3);
    }

    #[test]
    fn hl_direct_examples() {
        assert_eq!(hl_decomposition(192).unwrap(), (8, 6, 0));
        assert_eq!(bound_hl_direct(192).unwrap(), 557);
        assert_eq!(bound_hl_direct(448).unwrap(), 1751);
        assert_eq!(bound_hl_direct(114688).unwrap(), 458679);
        assert_eq!(bound_hl_direct(31745).unwrap(), 222016);
        assert_eq!(bound_hl_direct(256), Err(Error::NoDecomposition(256)));
    }

    #[test]
    fn decomposition_is_within_range() {
        for n in 3..5000u64 {
            match hl_decomposition(n) {
                Ok((p, k, r)) => {
                    assert!(k + 2 <= p && r < 1 << k, "n={n}");
                    assert_eq!((1u64 << p) - (1 << k) - r, n);
                }
                Err(_) => assert!(n.is_power_of_two()),
            }
        }
    }

    #[test]
    fn knodel_examples() {
        assert_eq!(bound_knodel_even(192).unwrap(), 672);
        assert_eq!(bound_knodel_even(4).unwrap(), 4);
        assert_eq!(bound_knodel_even(193), Err(Error::OddN(193)));
    }

    #[test]
    fn hln_examples() {
        for (n, v) in [(16385, 115871), (16387, 115808), (24575, 173670), (31745, 224338)] {
            let b = bound_hln_odd(n).unwrap();
            assert_eq!(b.value, v, "n={n}");
            assert!(!b.hypotheses_hold);
        }
        assert_eq!(bound_hln_odd(16386), Err(Error::EvenN(16386)));
    }

    #[test]
    fn hln_hypotheses_can_hold() {
        // m = 5: prime, not 2^j - 1, 2 has order 4 mod 5; n = 20 has ceil(log) = 5
        assert_eq!(hln_hypotheses(20, 5), None);
        assert!(bound_hln_odd(21).unwrap().hypotheses_hold);
        assert!(hln_hypotheses(24, 5).is_some());
        // m = 7 = 2^3 - 1
        assert!(hln_hypotheses(70, 7).unwrap().contains("2^j - 1"));
    }

    #[test]
    fn new_bound_examples() {
        assert_eq!(bound_full(7, 2).unwrap(), 551);
        assert_eq!(bound_pruned(14, 2, 16385).unwrap(), 49109);
        assert_eq!(bound_pruned(14, 3, 16385).unwrap(), 49044);
        assert!(bound_full(7, 3).is_err());
        for t in 7..=12 {
            for k in 2..=max_k(t, false) {
                assert_eq!(bound_pruned(t, k, full_size(t, k)).unwrap(), bound_full(t, k).unwrap());
                assert_eq!(case1_items(t, k).total, bound_full(t, k).unwrap() as i64);
            }
        }
    }

    #[test]
    fn class_closed_forms_fall_short_of_the_total() {
        for t in 7..=14 {
            for k in 2..=max_k(t, false) {
                let f = case1_items(t, k);
                let sum = f.tree + f.cube + f.root_attach + f.rk_attach + f.v1_upper;
                let gap = (k as i64 - 2) * (pow2(k - 1) - 2);
                assert_eq!(sum + f.v1_lower_closed_form + gap, f.total, "t={t} k={k}");
                assert_eq!(sum + f.v1_lower_class, f.total, "t={t} k={k}");
            }
        }
    }

    #[test]
    fn report_picks_minimum() {
        let r = bound_report(192).unwrap();
        assert_eq!(r.best, Some(BoundId::New));
        assert_eq!(r.new_bound_k, Some(2));
        let hln = r.bounds.iter().find(|b| b.id == BoundId::HlnOdd).unwrap();
        assert!(!hln.applicable && hln.value.is_none());
        let odd = bound_report(16385).unwrap();
        let hln = odd.bounds.iter().find(|b| b.id == BoundId::HlnOdd).unwrap();
        assert_eq!(hln.formula_value, Some(115871));
        assert!(hln.value.is_none());
        for b in odd.bounds.iter() {
            assert_eq!(b.value.is_some(), b.applicable);
        }
        assert!(bound_report(1).is_err());
    }
}
