//! Hölder scans in angle space, exponent regression, the Feigenbaum
//! counterexample and monotonicity sweeps.

use std::f64::consts::LN_2;
use std::io::Write;

use serde::Serialize;

use crate::address::{address_to_kneading, InternalAddress};
use crate::angle::{kneading_of_angle, Angle, Fraction};
use crate::branch::{precedes_by_address, Precedence};
use crate::depth::Depth;
use crate::entropy::{census, entropy_exact, EntropyResult};
use crate::error::{Error, Result};
use crate::metric::diff_max;
use crate::par::Execution;
use crate::sequence::KneadingSequence;

/// Comparison slack for entropy monotonicity.
pub const MONOTONE_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, Serialize)]
pub struct ScanRecord {
    pub m: u32,
    pub j: u64,
    pub below: bool,
    pub phi: Angle,
    pub distance: Fraction,
    pub k: Depth,
    pub h_phi: EntropyResult,
    pub delta_h: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Scan {
    pub theta: Angle,
    pub nu_theta: KneadingSequence,
    pub h_theta: EntropyResult,
    pub records: Vec<ScanRecord>,
    /// Samples dropped because `Diff` was infinite.
    pub skipped_infinite: usize,
}

/// Samples `φ = θ ± j·2^{−m}` for `m` in `m_min..=m_max` and `j` in
/// `offsets`. Records are ordered by `(m, j, side)`.
pub fn holder_scan(theta: &Angle, m_min: u32, m_max: u32, offsets: &[u64], exec: Execution) -> Result<Scan> {
    if theta.is_zero() {
        return Err(Error::InvalidAngle("scan centre must be non-zero".into()));
    }
    let nu_theta = kneading_of_angle(theta)?;
    let h_theta = entropy_exact(&nu_theta)?;
    let mut samples = Vec::new();
    for m in m_min..=m_max {
        for &j in offsets {
            for below in [true, false] {
                let phi = theta.offset(j, m, below);
                if phi != *theta && !phi.is_zero() {
                    samples.push((m, j, below, phi));
                }
            }
        }
    }
    if samples.is_empty() {
        return Err(Error::DegenerateScan("every sample coincides with the centre".into()));
    }
    let results = exec.map(&samples, |(m, j, below, phi)| -> Result<Option<ScanRecord>> {
        let nu_phi = kneading_of_angle(phi)?;
        let k = diff_max(&nu_theta, &nu_phi);
        if k.is_infinite() {
            return Ok(None);
        }
        let h_phi = entropy_exact(&nu_phi)?;
        Ok(Some(ScanRecord {
            m: *m,
            j: *j,
            below: *below,
            distance: theta.distance(phi),
            phi: phi.clone(),
            k,
            delta_h: (h_theta.value - h_phi.value).abs(),
            h_phi,
        }))
    });
    let mut records = Vec::new();
    let mut skipped_infinite = 0;
    for r in results {
        match r? {
            Some(rec) => records.push(rec),
            None => skipped_infinite += 1,
        }
    }
    if records.is_empty() {
        return Err(Error::DegenerateScan("no sample with finite Diff".into()));
    }
    Ok(Scan {
        theta: theta.clone(),
        nu_theta,
        h_theta,
        records,
        skipped_infinite,
    })
}

impl Scan {
    /// `h(θ)/log 2`, the conjectured local exponent.
    pub fn target(&self) -> f64 {
        self.h_theta.value / LN_2
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let err = |e: csv::Error| Error::InsufficientData(format!("csv output failed: {e}"));
        w.write_record(["phi", "distance", "k", "h_phi", "delta_h"]).map_err(err)?;
        for r in &self.records {
            w.write_record([
                r.phi.to_string(),
                r.distance.to_string(),
                r.k.to_string(),
                format!("{:.15e}", r.h_phi.value),
                format!("{:.15e}", r.delta_h),
            ])
            .map_err(err)?;
        }
        w.flush()
            .map_err(|e| Error::InsufficientData(format!("csv output failed: {e}")))?;
        Ok(())
    }

    /// Human-readable table used in failure diagnostics.
    pub fn table(&self) -> String {
        let mut s = format!(
            "theta={} nu={} h={:.12}\n{:>4} {:>4} {:>2} {:>28} {:>6} {:>14} {:>12}\n",
            self.theta, self.nu_theta, self.h_theta.value, "m", "j", "s", "phi", "k", "h_phi", "delta_h"
        );
        for r in &self.records {
            s += &format!(
                "{:>4} {:>4} {:>2} {:>28} {:>6} {:>14.10} {:>12.4e}\n",
                r.m,
                r.j,
                if r.below { "-" } else { "+" },
                r.phi.to_string(),
                r.k.to_string(),
                r.h_phi.value,
                r.delta_h
            );
        }
        s
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HolderFit {
    pub exponent: f64,
    pub target: f64,
    /// RMS residual of the log-log regression.
    pub residual: f64,
    pub n_records: usize,
}

/// Least-squares slope of `log δ` against `log d` over points with `δ > 0`;
/// needs at least 8 such points spread over at least 4 scales. Points are
/// `(scale, distance, delta)`.
pub fn fit_log_log(points: &[(u32, f64, f64)], target: f64) -> Result<HolderFit> {
    let usable: Vec<&(u32, f64, f64)> = points.iter().filter(|p| p.2 > 0.0 && p.1 > 0.0).collect();
    let mut scales: Vec<u32> = usable.iter().map(|p| p.0).collect();
    scales.sort_unstable();
    scales.dedup();
    if usable.len() < 8 || scales.len() < 4 {
        return Err(Error::InsufficientData(format!(
            "{} records with positive delta over {} scales; need 8 over 4",
            usable.len(),
            scales.len()
        )));
    }
    let xy: Vec<(f64, f64)> = usable.iter().map(|p| (p.1.ln(), p.2.ln())).collect();
    let n = xy.len() as f64;
    let mx = xy.iter().map(|p| p.0).sum::<f64>() / n;
    let my = xy.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = xy.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = xy.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let rss: f64 = xy.iter().map(|p| (p.1 - intercept - slope * p.0).powi(2)).sum();
    Ok(HolderFit {
        exponent: slope,
        target,
        residual: (rss / n).sqrt(),
        n_records: xy.len(),
    })
}

pub fn fit_exponent(scan: &Scan) -> Result<HolderFit> {
    let pts: Vec<(u32, f64, f64)> = scan
        .records
        .iter()
        .filter(|r| r.k.finite().is_some())
        .map(|r| (r.m, r.distance.to_f64(), r.delta_h))
        .collect();
    fit_log_log(&pts, scan.target())
}

#[derive(Debug, Clone, Serialize)]
pub struct FeigenbaumRow {
    pub n: usize,
    pub nu: KneadingSequence,
    pub h: f64,
    pub diff: Depth,
    /// `log 2 / 2^n`.
    pub bound: f64,
    /// `h · Diff / log 2`.
    pub ratio: f64,
    pub pass: bool,
}

fn doubling_address(levels: usize, extra: Option<usize>) -> InternalAddress {
    let mut entries: Vec<usize> = (0..=levels).map(|i| 1usize << i).collect();
    entries.extend(extra);
    InternalAddress::new(entries, false).expect("increasing")
}

/// `ν_n` has address `1-2-…-2^n-(2^n+1)`. The Feigenbaum point is
/// represented by the cascade member `1-2-…-2^{n_max+1}`.
pub fn feigenbaum_counterexample(n_max: usize) -> Result<Vec<FeigenbaumRow>> {
    if n_max == 0 || n_max > 12 {
        return Err(Error::InsufficientData("n_max must lie in 1..=12".into()));
    }
    let proxy = address_to_kneading(&doubling_address(n_max + 1, None))?;
    (1..=n_max)
        .map(|n| {
            let nu = address_to_kneading(&doubling_address(n, Some((1 << n) + 1)))?;
            let h = entropy_exact(&nu)?.value;
            let diff = diff_max(&nu, &proxy);
            let bound = LN_2 / (1u64 << n) as f64;
            let ratio = match diff {
                Depth::Finite(k) => h * k as f64 / LN_2,
                _ => f64::INFINITY,
            };
            Ok(FeigenbaumRow {
                n,
                nu,
                h,
                diff,
                bound,
                ratio,
                pass: h > bound && ratio > 1.0,
            })
        })
        .collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct MonotonicityViolation {
    pub mu: KneadingSequence,
    pub nu: KneadingSequence,
    /// First depth with `N_μ(n) > N_ν(n)`, if any.
    pub depth: Option<usize>,
    /// `(N_μ, N_ν)` at that depth.
    pub counts: Option<(u128, u128)>,
    pub h_mu: f64,
    pub h_nu: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct MonotonicityReport {
    pub pairs_checked: usize,
    /// Pairs skipped because the address certificate was absent.
    pub excluded: usize,
    pub violations: Vec<MonotonicityViolation>,
}

impl MonotonicityReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn into_result(self) -> Result<Self> {
        match self.violations.first() {
            None => Ok(self),
            Some(v) => Err(match (v.depth, v.counts) {
                (Some(depth), Some((count_mu, count_nu))) => Error::MonotonicityViolation {
                    mu: v.mu.to_string(),
                    nu: v.nu.to_string(),
                    depth,
                    count_mu,
                    count_nu,
                },
                _ => Error::EntropyOrderViolation {
                    mu: v.mu.to_string(),
                    nu: v.nu.to_string(),
                    h_mu: v.h_mu,
                    h_nu: v.h_nu,
                },
            }),
        }
    }
}

fn counts_or_zero(nu: &KneadingSequence, n_max: usize) -> Result<Vec<u128>> {
    if nu.is_trivial() {
        return Ok(vec![0; n_max]);
    }
    Ok(census(nu, n_max)?.counts().to_vec())
}

fn entropy_or_zero(nu: &KneadingSequence) -> Result<f64> {
    if nu.is_trivial() {
        return Ok(0.0);
    }
    Ok(entropy_exact(nu)?.value)
}

/// Depth-wise census domination and entropy order on certified pairs.
pub fn monotonicity_sweep(
    pairs: &[(KneadingSequence, KneadingSequence)],
    n_max: usize,
    exec: Execution,
) -> Result<MonotonicityReport> {
    let outcomes = exec.map(pairs, |(mu, nu)| -> Result<Option<Option<MonotonicityViolation>>> {
        if mu == nu || precedes_by_address(mu, nu)? != Precedence::Yes {
            return Ok(None);
        }
        let cm = counts_or_zero(mu, n_max)?;
        let cn = counts_or_zero(nu, n_max)?;
        let first = cm.iter().zip(&cn).position(|(a, b)| a > b);
        let depth = first.map(|i| i + 1);
        let counts = first.map(|i| (cm[i], cn[i]));
        let h_mu = entropy_or_zero(mu)?;
        let h_nu = entropy_or_zero(nu)?;
        let bad = depth.is_some() || h_mu > h_nu + MONOTONE_TOLERANCE;
        Ok(Some(bad.then(|| MonotonicityViolation {
            mu: mu.clone(),
            nu: nu.clone(),
            depth,
            counts,
            h_mu,
            h_nu,
        })))
    });
    let mut report = MonotonicityReport {
        pairs_checked: 0,
        excluded: 0,
        violations: Vec::new(),
    };
    for o in outcomes {
        match o? {
            None => report.excluded += 1,
            Some(v) => {
                report.pairs_checked += 1;
                report.violations.extend(v);
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequence::seq;

    #[test]
    fn synthetic_regression() {
        let pts: Vec<(u32, f64, f64)> = (4..14)
            .map(|m| {
                let d = 2f64.powi(-(m as i32));
                (m, d, d.sqrt())
            })
            .collect();
        let fit = fit_log_log(&pts, 0.5).unwrap();
        assert!((fit.exponent - 0.5).abs() < 1e-9);
        assert!(fit.residual < 1e-9);
        let zeros: Vec<(u32, f64, f64)> = pts.iter().map(|p| (p.0, p.1, 0.0)).collect();
        assert!(matches!(fit_log_log(&zeros, 0.5), Err(Error::InsufficientData(_))));
    }

    #[test]
    fn feigenbaum_small() {
        let rows = feigenbaum_counterexample(3).unwrap();
        assert_eq!(rows[0].nu, address_to_kneading(&"1-2-3".parse().unwrap()).unwrap());
        assert_eq!(rows[1].nu, address_to_kneading(&"1-2-4-5".parse().unwrap()).unwrap());
        assert!(rows.iter().all(|r| r.pass), "{rows:?}");
        let cascade = address_to_kneading(&"1-2-4".parse().unwrap()).unwrap();
        assert!(entropy_exact(&cascade).unwrap().value < 1e-10);
    }

    #[test]
    fn sweep_examples() {
        let pairs = vec![
            (seq("(11*)"), seq("1(10)")),
            (seq("(1*)"), seq("1(0)")),
            (seq("(1101*)"), seq("(1101*)")),
        ];
        let r = monotonicity_sweep(&pairs, 40, Execution::Sequential).unwrap();
        assert_eq!((r.pairs_checked, r.excluded), (2, 1));
        assert!(r.passed());
    }

    #[test]
    fn scan_is_deterministic() {
        let theta: Angle = "1/2".parse().unwrap();
        let a = holder_scan(&theta, 4, 6, &[1, 3], Execution::Sequential).unwrap();
        let b = holder_scan(&theta, 4, 6, &[1, 3], Execution::Parallel).unwrap();
        let mut ca = Vec::new();
        let mut cb = Vec::new();
        a.write_csv(&mut ca).unwrap();
        b.write_csv(&mut cb).unwrap();
        assert_eq!(ca, cb);
        assert!(a.records.iter().all(|r| r.k.finite().is_some()));
    }
}
