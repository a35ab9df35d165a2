//! Comparison tables of the new bound against the earlier ones, as CSV.

use std::fmt::Write as _;
use std::ops::RangeInclusive;

use crate::bounds::{bound_full, bound_hl_direct, bound_hln_odd, bound_pruned};
use crate::params::{full_size, max_k};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Table1Row {
    pub t: u32,
    pub k: u32,
    pub n: u64,
    pub ours: u64,
    pub hl: u64,
}

/// One row per `(t, k)` with `2 <= k <= floor(t/2) - 1`, at `n = N`.
pub fn table1(t_range: RangeInclusive<u32>) -> Vec<Table1Row> {
    let mut rows = Vec::new();
    for t in t_range.filter(|&t| t >= 7) {
        for k in 2..=max_k(t, false) {
            let n = full_size(t, k);
            rows.push(Table1Row {
                t,
                k,
                n,
                ours: bound_full(t, k).expect("row parameters are admissible"),
                hl: bound_hl_direct(n).expect("N is never a power of two"),
            });
        }
    }
    rows
}

pub fn table1_csv(rows: &[Table1Row]) -> String {
    let mut out = String::from("t,k,N,ours,hl\n");
    for r in rows {
        writeln!(out, "{},{},{},{},{}", r.t, r.k, r.n, r.ours, r.hl).unwrap();
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Table2Row {
    pub n: u64,
    /// New bound per `k` of the requested range; `None` where `(t, k, n)` is
    /// not admissible.
    pub ours: Vec<Option<u64>>,
    pub hln: Option<u64>,
    pub hl: Option<u64>,
}

/// Default `k` columns: every `k` admissible for some parity.
pub fn table2_k_range(t: u32) -> RangeInclusive<u32> {
    2..=max_k(t, true)
}

/// Default `n` range: from `2^t + 1` up to one below the largest `N`.
pub fn table2_n_range(t: u32) -> RangeInclusive<u64> {
    let kmax = max_k(t, false).max(2);
    (1u64 << t) + 1..=full_size(t, kmax) - 1
}

/// Rows for each `n`; with `facsimile` the `hl` column is blank until `n`
/// exceeds the full size of the second-largest `k`.
pub fn table2(t: u32, n_range: RangeInclusive<u64>, k_range: RangeInclusive<u32>, facsimile: bool) -> Vec<Table2Row> {
    let ks: Vec<u32> = k_range.collect();
    let last_k = ks.iter().copied().max().unwrap_or(2);
    let hl_from = if last_k > 2 { full_size(t, last_k - 1) } else { 0 };
    n_range
        .map(|n| {
            let ours = ks.iter().map(|&k| bound_pruned(t, k, n).ok()).collect();
            let hl = bound_hl_direct(n).ok().filter(|_| !facsimile || n > hl_from);
            Table2Row { n, ours, hln: bound_hln_odd(n).ok().map(|b| b.value), hl }
        })
        .collect()
}

pub fn table2_csv(rows: &[Table2Row], k_range: RangeInclusive<u32>) -> String {
    let mut out = String::from("n");
    for k in k_range {
        write!(out, ",k={k}").unwrap();
    }
    out.push_str(",hln,hl\n");
    let cell = |v: Option<u64>| v.map(|x| x.to_string()).unwrap_or_default();
    for r in rows {
        write!(out, "{}", r.n).unwrap();
        for v in &r.ours {
            write!(out, ",{}", cell(*v)).unwrap();
        }
        writeln!(out, ",{},{}", cell(r.hln), cell(r.hl)).unwrap();
    }
    out
}
