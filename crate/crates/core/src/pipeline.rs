//! End-to-end verification for one `(n, p)`: degree bookkeeping, the
//! vanishing steps on `Y`, and the reduction of `H^i(X, L^{-1})` to the
//! kernel and cokernel of the Frobenius map. Every intermediate identity is
//! recorded as a named check.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use std::ops::RangeInclusive;

use serde::{Serialize, Serializer};

use crate::cohomology::{y_cohomology, CohomologyTable};
use crate::error::{Error, Result};
use crate::fp_linalg::{is_prime, EliminationConfig};
use crate::frobenius::{
    analyze, build_matrix, FrobeniusAnalysis, FrobeniusProblem, MatrixBudget, WitnessOutcome,
};
use crate::incidence_ring::{component_dimension, Bidegree};

/// A twist `O(a,mid,b)` on `P(V) x P(wedge^2 V^*) x P(V^*)`, optionally
/// tensored with `O_pi(relative)` on `X`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Twist {
    pub a: i64,
    pub mid: i64,
    pub b: i64,
    pub relative: i64,
}

impl Twist {
    pub const fn new(a: i64, mid: i64, b: i64) -> Self {
        Self {
            a,
            mid,
            b,
            relative: 0,
        }
    }

    pub const fn with_relative(self, relative: i64) -> Self {
        Self { relative, ..self }
    }

    pub const fn bidegree(self) -> Bidegree {
        Bidegree::new(self.a, self.b)
    }
}

impl fmt::Display for Twist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "O({},{},{})", self.a, self.mid, self.b)?;
        if self.relative != 0 {
            write!(f, " ⊗ O_π({})", self.relative)?;
        }
        Ok(())
    }
}

impl Serialize for Twist {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BundleLabels {
    #[serde(rename = "L")]
    pub l: Twist,
    pub omega_y: Twist,
    pub omega_x_over_y: Twist,
    pub omega_x: Twist,
    /// `L (x) omega_X`, the Serre-dual side.
    pub l_tensor_omega_x: Twist,
    #[serde(rename = "M")]
    pub m: Twist,
    /// `M (x) O(0,0,p)`, the target of the Frobenius map.
    pub m_target: Twist,
    /// `M (x) O(-p,0,0)`, the bundle of the vanishing lemma.
    pub m_vanishing: Twist,
}

/// Degree bookkeeping on `Y` and `X` for `L = O(1,n,1)`.
pub fn line_bundle_bookkeeping(n: usize, p: u32) -> BundleLabels {
    let (n, p) = (n as i64, p as i64);
    let m = Twist::new(p - n + 1, 0, (p - 1) * (n - 1));
    BundleLabels {
        l: Twist::new(1, n, 1),
        omega_y: Twist::new(-n, 0, -n),
        // det F^*G' = O(p, 0, p(n-2)), rank n-1
        omega_x_over_y: Twist::new(p, 0, p * (n - 2)).with_relative(1 - n),
        omega_x: Twist::new(p - n, 0, p * (n - 2) - n).with_relative(1 - n),
        l_tensor_omega_x: Twist::new(p - n + 1, 0, p * (n - 2) - n + 1).with_relative(1),
        m,
        m_target: Twist::new(m.a, 0, m.b + p),
        m_vanishing: Twist::new(m.a - p, 0, m.b),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NamedCheck {
    pub name: String,
    pub status: CheckStatus,
    pub detail: String,
}

impl NamedCheck {
    fn new(name: &str, passed: bool, detail: String) -> Self {
        Self {
            name: name.to_string(),
            status: if passed {
                CheckStatus::Pass
            } else {
                CheckStatus::Fail
            },
            detail,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == CheckStatus::Pass
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct MatrixShape {
    pub rows: usize,
    pub cols: usize,
    pub nnz: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub n: usize,
    pub p: u32,
    pub dim_x: usize,
    pub dim_y: usize,
    pub exploratory: bool,
    pub bundles: BundleLabels,
    pub matrix: MatrixShape,
    pub rank: usize,
    pub corank: usize,
    pub kernel: usize,
    /// `i -> dim H^i(X, L^{-1})`; degrees not listed are zero.
    #[serde(serialize_with = "string_keys")]
    pub h_table: BTreeMap<usize, usize>,
    pub witness: Option<WitnessOutcome>,
    pub checks: Vec<NamedCheck>,
    pub warnings: Vec<String>,
}

fn string_keys<S: Serializer>(
    table: &BTreeMap<usize, usize>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_map(table.iter().map(|(k, v)| (k.to_string(), v)))
}

impl VerificationReport {
    pub fn h(&self, i: usize) -> usize {
        self.h_table.get(&i).copied().unwrap_or(0)
    }

    pub fn all_checks_passed(&self) -> bool {
        self.checks.iter().all(NamedCheck::passed)
    }

    pub fn failed_checks(&self) -> Vec<String> {
        self.checks
            .iter()
            .filter(|c| !c.passed())
            .map(|c| c.name.clone())
            .collect()
    }

    pub fn check(&self, name: &str) -> Option<&NamedCheck> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn render_text(&self) -> String {
        let mut s = String::new();
        let b = &self.bundles;
        let _ = writeln!(s, "n = {}, p = {}, dim X = {}", self.n, self.p, self.dim_x);
        if self.exploratory {
            let _ = writeln!(s, "exploratory run (p < n-1)");
        }
        let _ = writeln!(s, "L = {}, omega_Y = {}, omega_X = {}", b.l, b.omega_y, b.omega_x);
        let _ = writeln!(s, "M = {}, M(0,0,p) = {}", b.m, b.m_target);
        let _ = writeln!(
            s,
            "A: {} x {} over F_{} ({} nonzeros), rank {}",
            self.matrix.rows, self.matrix.cols, self.p, self.matrix.nnz, self.rank
        );
        for i in 0..=self.dim_x {
            let _ = writeln!(s, "  h^{i}(X, L^-1) = {}", self.h(i));
        }
        match &self.witness {
            Some(w) => {
                let verdict = if w.in_image { "in image" } else { "not in image" };
                let _ = writeln!(s, "witness {}: {verdict}", w.monomial);
            }
            None => {
                let _ = writeln!(s, "witness: undefined");
            }
        }
        for c in &self.checks {
            let tag = if c.passed() { "pass" } else { "FAIL" };
            let _ = writeln!(s, "[{tag}] {}: {}", c.name, c.detail);
        }
        for w in &self.warnings {
            let _ = writeln!(s, "warning: {w}");
        }
        s
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct VerifyConfig {
    pub allow_small_p: bool,
    pub budget: MatrixBudget,
    pub elimination: EliminationConfig,
}

/// Number of `e` in `N^parts` with `sum e = total` and every `e_i <= cap`.
pub fn capped_compositions(total: u64, parts: usize, cap: u64) -> u128 {
    // ways[s] = compositions of s using the parts seen so far
    let mut ways = vec![0u128; total as usize + 1];
    ways[0] = 1;
    for _ in 0..parts {
        let mut next = vec![0u128; ways.len()];
        for (s, &w) in ways.iter().enumerate() {
            if w == 0 {
                continue;
            }
            for e in 0..=cap.min(total - s as u64) as usize {
                next[s + e] += w;
            }
        }
        ways = next;
    }
    ways[total as usize]
}

fn h0(table: &CohomologyTable) -> u128 {
    table.get(0).exact().unwrap_or(0)
}

fn only_h0(table: &CohomologyTable) -> bool {
    table.is_fully_determined() && table.support().iter().all(|&j| j == 0)
}

pub fn verify(n: usize, p: u64, cfg: &VerifyConfig) -> Result<VerificationReport> {
    let prob = if cfg.allow_small_p {
        FrobeniusProblem::exploratory(n, p)?
    } else {
        FrobeniusProblem::new(n, p)?
    };
    let fm = build_matrix(&prob, &cfg.budget)?;
    let analysis = analyze(&fm, &cfg.elimination)?;
    let report = assemble(&prob, &analysis)?;
    let failed = report.failed_checks();
    if failed.is_empty() {
        Ok(report)
    } else {
        Err(Error::CrossCheckFailed {
            failed,
            report: Box::new(report),
        })
    }
}

fn assemble(prob: &FrobeniusProblem, fa: &FrobeniusAnalysis) -> Result<VerificationReport> {
    let (n, p) = (prob.n, prob.p);
    let bundles = line_bundle_bookkeeping(n, p);
    let dim_x = 3 * n - 3;
    let (ni, pi) = (n as i64, p as i64);
    let mut checks = Vec::new();
    let mut warnings = Vec::new();

    let m = bundles.m.bidegree();
    let target = bundles.m_target.bidegree();
    let serre = bundles.l_tensor_omega_x;
    checks.push(NamedCheck::new(
        "degree_bookkeeping",
        m == prob.source_degree
            && target == prob.target_degree
            && serre.relative == 1
            && (serre.a, serre.b + pi) == (m.a, m.b)
            && bundles.omega_x.a == bundles.omega_x_over_y.a + bundles.omega_y.a
            && bundles.omega_x.b == bundles.omega_x_over_y.b + bundles.omega_y.b
            && bundles.l.a + bundles.omega_x.a == serre.a
            && bundles.l.b + bundles.omega_x.b == serre.b,
        format!(
            "L ⊗ omega_X = {serre}; pushing forward and untwisting F^*G' gives M = {}",
            bundles.m
        ),
    ));

    let vanishing = y_cohomology(n, Bidegree::new(1 - ni, (pi - 1) * (ni - 1)));
    checks.push(NamedCheck::new(
        "vanishing_lemma",
        vanishing.is_fully_determined() && vanishing.is_zero(),
        format!("H^*(Y, {}) = 0", bundles.m_vanishing),
    ));
    debug_assert_eq!(bundles.m_vanishing.bidegree(), Bidegree::new(1 - ni, (pi - 1) * (ni - 1)));

    let source_table = y_cohomology(n, m);
    let target_table = y_cohomology(n, target);
    let (h0_m, h0_target) = (h0(&source_table), h0(&target_table));
    checks.push(NamedCheck::new(
        "only_h0_source",
        only_h0(&source_table),
        format!("V^* ⊗ {}: h^0 = {} x {h0_m}, higher = 0", bundles.m, n + 1),
    ));
    checks.push(NamedCheck::new(
        "only_h0_target",
        only_h0(&target_table),
        format!("{}: h^0 = {h0_target}, higher = 0", bundles.m_target),
    ));
    if prob.exploratory {
        warnings.push(format!(
            "p = {p} < n-1 = {}: nonvanishing is not claimed; h0(M) > 0, corank >= 1 and the witness checks are skipped",
            n - 1
        ));
    } else {
        checks.push(NamedCheck::new(
            "h0_m_positive",
            h0_m > 0,
            format!("h^0(Y, M) = {h0_m}"),
        ));
    }

    let sections_agree = h0_m == component_dimension(n, m)?
        && h0_target == component_dimension(n, target)?;
    checks.push(NamedCheck::new(
        "matrix_shape",
        sections_agree
            && fa.rows as u128 == h0_target
            && fa.cols as u128 == (n as u128 + 1) * h0_m,
        format!(
            "{} x {} = h^0(M(0,0,p)) x (n+1) h^0(M)",
            fa.rows, fa.cols
        ),
    ));

    let kernel = fa.kernel();
    let corank = fa.corank();
    checks.push(NamedCheck::new(
        "kernel_consistency",
        fa.cols - fa.transpose_rank == kernel,
        format!(
            "h^{dim_x} = dim ker A = {kernel}; cols - rank(A^T) = {}",
            fa.cols - fa.transpose_rank
        ),
    ));

    let euler_lhs = kernel as i128 - corank as i128;
    let euler_rhs = (n as i128 + 1) * h0_m as i128 - h0_target as i128;
    checks.push(NamedCheck::new(
        "euler_identity",
        euler_lhs == euler_rhs,
        format!(
            "h^{dim_x} - h^{} = {kernel} - {corank} = {euler_lhs}; (n+1) h^0(M) - h^0(M(0,0,p)) = {} x {h0_m} - {h0_target} = {euler_rhs}",
            dim_x - 1,
            n + 1
        ),
    ));

    if !prob.exploratory {
        checks.push(NamedCheck::new(
            "nonvanishing",
            corank >= 1,
            format!("h^{}(X, L^-1) = corank A = {corank}", dim_x - 1),
        ));
    }
    if let Some(w) = &fa.witness {
        if !prob.exploratory {
            checks.push(NamedCheck::new(
                "witness_not_in_image",
                !w.in_image,
                format!("{} {} the image of A", w.monomial, if w.in_image { "lies in" } else { "is not in" }),
            ));
        }
        let expected = fa.rank + usize::from(!w.in_image);
        checks.push(NamedCheck::new(
            "witness_column_rank",
            w.augmented_rank == expected,
            format!(
                "rank [A | t] = {} (rank A = {})",
                w.augmented_rank, fa.rank
            ),
        ));
    }

    if p as usize + 1 == n {
        let closed = capped_compositions(((pi - 1) * (ni - 1) + pi) as u64, n + 1, (pi - 1) as u64);
        checks.push(NamedCheck::new(
            "pure_y_closed_form",
            closed == corank as u128,
            format!(
                "p = n-1: corank {corank} vs {closed} exponent vectors of degree {} capped at {}",
                (pi - 1) * (ni - 1) + pi,
                pi - 1
            ),
        ));
    }

    // H^i(X, L^-1) is dual to H^{3n-3-i}(Y, M ⊗ F^*G), which vanishes above dim Y
    let dim_y = 2 * n - 1;
    let h_table: BTreeMap<usize, usize> = [(dim_x - 1, corank), (dim_x, kernel)].into();
    let below = n.saturating_sub(2);
    checks.push(NamedCheck::new(
        "low_degree_vanishing",
        (0..below).all(|i| !h_table.contains_key(&i) || h_table[&i] == 0),
        format!(
            "h^i = 0 for i < n-2 = {below} since 3n-3-i > dim Y = {dim_y}; the H^0/H^1 reduction gives vanishing for all i < {}",
            dim_x - 1
        ),
    ));

    Ok(VerificationReport {
        n,
        p,
        dim_x,
        dim_y,
        exploratory: prob.exploratory,
        bundles,
        matrix: crate::pipeline::MatrixShape {
            rows: fa.rows,
            cols: fa.cols,
            nnz: fa.nnz,
        },
        rank: fa.rank,
        corank,
        kernel,
        h_table,
        witness: fa.witness.clone(),
        checks,
        warnings,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SkippedPair {
    pub n: usize,
    pub p: u64,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepEntry {
    pub n: usize,
    pub p: u64,
    pub report: Option<VerificationReport>,
    pub error: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Sweep {
    pub entries: Vec<SweepEntry>,
    pub skipped: Vec<SkippedPair>,
}

/// Verifies every valid pair, `n` ascending then `p` ascending.
///
/// Pairs with `n < 3`, composite `p`, or `p < n - 1` (unless exploratory) are
/// skipped; per-pair failures are recorded in the entry.
pub fn sweep(ns: RangeInclusive<usize>, ps: RangeInclusive<u64>, cfg: &VerifyConfig) -> Sweep {
    let mut out = Sweep::default();
    for n in ns {
        for p in ps.clone() {
            let reason = if n < 3 {
                Some(format!("n = {n} < 3"))
            } else if !is_prime(p) {
                Some(format!("p = {p} is not prime"))
            } else if p + 1 < n as u64 && !cfg.allow_small_p {
                Some(format!("p = {p} < n-1 = {}", n - 1))
            } else {
                None
            };
            if let Some(reason) = reason {
                log::info!("skipping (n={n}, p={p}): {reason}");
                out.skipped.push(SkippedPair { n, p, reason });
                continue;
            }
            let entry = match verify(n, p, cfg) {
                Ok(report) => SweepEntry {
                    n,
                    p,
                    report: Some(report),
                    error: None,
                },
                Err(Error::CrossCheckFailed { failed, report }) => SweepEntry {
                    n,
                    p,
                    error: Some(format!("cross-check failed: {}", failed.join(", "))),
                    report: Some(*report),
                },
                Err(e) => SweepEntry {
                    n,
                    p,
                    report: None,
                    error: Some(e.to_string()),
                },
            };
            out.entries.push(entry);
        }
    }
    out
}

pub const SWEEP_CSV_HEADER: [&str; 9] = [
    "n",
    "p",
    "rows",
    "cols",
    "rank",
    "corank",
    "kernel",
    "witness_in_image",
    "checks_passed",
];

#[derive(Serialize)]
struct CsvRow {
    n: usize,
    p: u64,
    rows: Option<usize>,
    cols: Option<usize>,
    rank: Option<usize>,
    corank: Option<usize>,
    kernel: Option<usize>,
    witness_in_image: Option<bool>,
    checks_passed: bool,
}

impl Sweep {
    pub fn write_csv<W: std::io::Write>(&self, out: W) -> std::result::Result<(), csv::Error> {
        let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
        w.write_record(SWEEP_CSV_HEADER)?;
        for e in &self.entries {
            let r = e.report.as_ref();
            w.serialize(CsvRow {
                n: e.n,
                p: e.p,
                rows: r.map(|r| r.matrix.rows),
                cols: r.map(|r| r.matrix.cols),
                rank: r.map(|r| r.rank),
                corank: r.map(|r| r.corank),
                kernel: r.map(|r| r.kernel),
                witness_in_image: r.and_then(|r| r.witness.as_ref()).map(|w| w.in_image),
                checks_passed: e.error.is_none() && r.is_some_and(VerificationReport::all_checks_passed),
            })?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn all_passed(&self) -> bool {
        self.entries.iter().all(|e| {
            e.error.is_none() && e.report.as_ref().is_some_and(VerificationReport::all_checks_passed)
        })
    }

    pub fn render_text(&self) -> String {
        let mut s = String::new();
        for e in &self.entries {
            match (&e.report, &e.error) {
                (Some(r), None) => {
                    let _ = writeln!(
                        s,
                        "n={} p={}: {}x{} rank {} h^{}={} h^{}={} witness {} checks ok",
                        e.n,
                        e.p,
                        r.matrix.rows,
                        r.matrix.cols,
                        r.rank,
                        r.dim_x - 1,
                        r.corank,
                        r.dim_x,
                        r.kernel,
                        match &r.witness {
                            Some(w) if w.in_image => "in image",
                            Some(_) => "not in image",
                            None => "undefined",
                        }
                    );
                }
                (_, Some(err)) => {
                    let _ = writeln!(s, "n={} p={}: error: {err}", e.n, e.p);
                }
                (None, None) => unreachable!("sweep entry without outcome"),
            }
        }
        for sk in &self.skipped {
            let _ = writeln!(s, "n={} p={}: skipped ({})", sk.n, sk.p, sk.reason);
        }
        s
    }
}
