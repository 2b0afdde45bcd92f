//! Generalised Frobenius numbers `F_k` and the `m_k`/`F_k` sequences.

use std::collections::{BTreeSet, HashMap};

use serde::Serialize;

use crate::counting::{degree_fiber, CountTable};
use crate::error::{Error, Result};
use crate::lattice::LatticeBasis;

/// Limits for open-ended degree scans.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ScanOptions {
    /// Give up with [`Error::ScanCapExceeded`] past this degree.
    pub degree_cap: Option<i64>,
}

/// Outcome of scanning a table that may be too short.
pub(crate) enum Scan {
    Done(i64),
    NeedMore,
}

/// Scans degrees upward for the last one with a class counting below `k`.
/// Stops after `a₁` consecutive fully covered degrees: every class at degree
/// `d` then dominates a class at `d − a₁` via `e₁`.
pub(crate) fn scan_table(table: &CountTable, k: u64) -> Scan {
    let window = table.basis().weight()[0];
    let mut last_gap = -1;
    let mut run = 0;
    for d in 0..=table.max_degree() {
        if table.min_at(d) >= k {
            run += 1;
            if run == window {
                return Scan::Done(last_gap);
            }
        } else {
            last_gap = d;
            run = 0;
        }
    }
    Scan::NeedMore
}

/// `F_k`: the largest degree carrying a class with fewer than `k` nonnegative
/// points, or `−1` if there is none.
pub fn frobenius(basis: &LatticeBasis, k: u64) -> Result<i64> {
    frobenius_with(basis, k, ScanOptions::default())
}

pub fn frobenius_with(basis: &LatticeBasis, k: u64, opts: ScanOptions) -> Result<i64> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    let start = opts.degree_cap.map_or(128, |c| c.clamp(0, 128));
    let mut table = CountTable::new(basis, start, k)?;
    loop {
        if let Scan::Done(f) = scan_table(&table, k) {
            return Ok(f);
        }
        let cur = table.max_degree();
        let next = cur.checked_mul(2).ok_or(Error::Overflow("degree scan"))?;
        let next = match opts.degree_cap {
            Some(cap) if cur >= cap => return Err(Error::ScanCapExceeded(cap)),
            Some(cap) => next.min(cap),
            None => next,
        };
        table.extend_to(next)?;
    }
}

/// `F_k` by listing every nonnegative point degree by degree and tallying
/// classes, without the knapsack table. Slow; meant as a cross-check.
pub fn brute_force_frobenius(basis: &LatticeBasis, k: u64) -> Result<i64> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    let classes = basis.sublattice_index();
    let window = basis.weight()[0];
    let mut last_gap = -1;
    let mut run = 0;
    let mut d = 0i64;
    loop {
        let mut tally: HashMap<Vec<i64>, u64> = HashMap::new();
        for u in degree_fiber(basis.weight(), d) {
            *tally.entry(basis.class_label(&u)?.torsion).or_default() += 1;
        }
        let full = tally.len() as u64 == classes && tally.values().all(|&c| c >= k);
        if full {
            run += 1;
            if run == window {
                return Ok(last_gap);
            }
        } else {
            last_gap = d;
            run = 0;
        }
        d += 1;
    }
}

/// The `F_k`, `m_k` and `b_k = F_k − m_k` sequences with their bound checks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FrobeniusReport {
    pub k_max: usize,
    pub f_values: Vec<i64>,
    pub m_values: Vec<i64>,
    pub b_values: Vec<i64>,
    pub f_diffs: Vec<i64>,
    pub m_diffs: Vec<i64>,
    /// Distinct `b` values, ascending. Only those seen up to `k_max`.
    pub observed_b_set: Vec<i64>,
    /// Number of distinct successive `F` differences.
    pub dimension: usize,
    pub bound_checks: BoundChecks,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundChecks {
    /// `m_k` nondecreasing with steps at most `m₂`.
    pub m_diffs_within_m2: bool,
    /// `m_k − 1 ≤ F_k ≤ m_k + F₁`.
    pub f_within_window: bool,
    /// `dimension ≤ m₂ + b_t − b₁ + 1`.
    pub dimension_le_spread: bool,
    /// `dimension ≤ t (m₂ + 1)`.
    pub dimension_le_t_m2: bool,
    /// Every `|F_{k+1} − F_k| ≤ m₂ + b_t − b₁`.
    pub f_diffs_bounded: bool,
}

impl BoundChecks {
    pub fn all(&self) -> bool {
        self.m_diffs_within_m2
            && self.f_within_window
            && self.dimension_le_spread
            && self.dimension_le_t_m2
            && self.f_diffs_bounded
    }
}

/// Builds the report from `F_k` and `m_k` for `k = 1..=k_max`.
pub fn report_from_values(f_values: Vec<i64>, m_values: Vec<i64>) -> Result<FrobeniusReport> {
    let k_max = f_values.len();
    if k_max < 2 || m_values.len() != k_max {
        return Err(Error::InvalidArgument("need F and m values for k = 1..k_max, k_max ≥ 2".into()));
    }
    let f1 = f_values[0];
    let m2 = m_values[1];
    let b_values: Vec<i64> = f_values.iter().zip(&m_values).map(|(f, m)| f - m).collect();
    let f_diffs: Vec<i64> = f_values.windows(2).map(|w| w[1] - w[0]).collect();
    let m_diffs: Vec<i64> = m_values.windows(2).map(|w| w[1] - w[0]).collect();
    let observed_b_set: Vec<i64> = b_values.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
    let dimension = f_diffs.iter().collect::<BTreeSet<_>>().len();
    let (b_lo, b_hi) = (observed_b_set[0], *observed_b_set.last().unwrap());
    let t = observed_b_set.len() as i64;
    let spread = m2 + b_hi - b_lo;
    let bound_checks = BoundChecks {
        m_diffs_within_m2: m_diffs.iter().all(|&d| (0..=m2).contains(&d)),
        f_within_window: f_values.iter().zip(&m_values).all(|(&f, &m)| m - 1 <= f && f <= m + f1),
        dimension_le_spread: dimension as i64 <= spread + 1,
        dimension_le_t_m2: dimension as i64 <= t * (m2 + 1),
        f_diffs_bounded: f_diffs.iter().all(|d| d.abs() <= spread),
    };
    Ok(FrobeniusReport {
        k_max,
        f_values,
        m_values,
        b_values,
        f_diffs,
        m_diffs,
        observed_b_set,
        dimension,
        bound_checks,
    })
}

/// `F_k` and `m_k` for `k = 1..=k_max` straight from one count table.
pub fn sequence_report(basis: &LatticeBasis, k_max: usize) -> Result<FrobeniusReport> {
    sequence_report_with(basis, k_max, ScanOptions::default())
}

pub fn sequence_report_with(
    basis: &LatticeBasis,
    k_max: usize,
    opts: ScanOptions,
) -> Result<FrobeniusReport> {
    if k_max < 2 {
        return Err(Error::InvalidArgument("k_max must be at least 2".into()));
    }
    let start = opts.degree_cap.map_or(128, |c| c.clamp(0, 128));
    let mut table = CountTable::new(basis, start, k_max as u64)?;
    let mut f_values = Vec::with_capacity(k_max);
    let mut m_values = Vec::with_capacity(k_max);
    for k in 1..=k_max as u64 {
        loop {
            let m = crate::counting::m_value_in(&table, k);
            if let (Some(m), Scan::Done(f)) = (m, scan_table(&table, k)) {
                m_values.push(m);
                f_values.push(f);
                break;
            }
            let cur = table.max_degree();
            let next = cur.checked_mul(2).ok_or(Error::Overflow("degree scan"))?;
            let next = match opts.degree_cap {
                Some(cap) if cur >= cap => return Err(Error::ScanCapExceeded(cap)),
                Some(cap) => next.min(cap),
                None => next,
            };
            table.extend_to(next)?;
        }
    }
    report_from_values(f_values, m_values)
}
