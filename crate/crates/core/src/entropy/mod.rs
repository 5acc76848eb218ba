//! Core entropy: censuses, the split automaton and growth rates.

pub mod automaton;
pub mod census;
pub mod spectral;

use std::f64::consts::LN_2;

use serde::Serialize;

pub use automaton::{compile_automaton, SplitAutomaton, Transition};
pub use census::{census, census_stream, Endpoint, IntervalState, PrecriticalCensus};
pub use spectral::{power_iteration_bounds, Renewal};

use crate::angle::{kneading_of_angle, Angle};
use crate::depth::Depth;
use crate::error::{Error, Result};
use crate::metric::diff_words;
use crate::sequence::{KneadingSequence, Symbol, SymbolStream};

/// Relative width of the bisection bracket on the critical radius.
pub const SPECTRAL_TOLERANCE: f64 = 1e-13;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EntropyKind {
    ExactSpectral,
    GrowthEstimate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Evidence {
    RenewalRows(usize),
    CensusHorizon(usize),
}

/// `0 <= lower <= value <= upper <= log 2`, natural-log units.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EntropyResult {
    pub value: f64,
    pub lower: f64,
    pub upper: f64,
    pub kind: EntropyKind,
    pub evidence: Evidence,
}

fn clamp(x: f64) -> f64 {
    x.clamp(0.0, LN_2)
}

/// Exact core entropy of an eventually periodic sequence as the log of the
/// growth rate of the subdivision.
pub fn entropy_exact(nu: &KneadingSequence) -> Result<EntropyResult> {
    nu.require_critical_orbit()?;
    let renewal = Renewal::build(nu);
    let (lower, upper) = match renewal.critical_radius(SPECTRAL_TOLERANCE) {
        None => (0.0, 0.0),
        Some((lo, hi)) => (clamp(-hi.ln()), clamp(-lo.ln())),
    };
    Ok(EntropyResult {
        value: 0.5 * (lower + upper),
        lower,
        upper,
        kind: EntropyKind::ExactSpectral,
        evidence: Evidence::RenewalRows(renewal.len()),
    })
}

/// `min(log 2, log(2^s − 1)/s)` where `s` is the position of the second `1`
/// of the stream within `horizon` (`*` does not count as `1`).
pub fn refined_upper_bound<S: SymbolStream>(nu: &S, horizon: usize) -> f64 {
    match (2..=horizon).find(|&k| nu.symbol(k) == Symbol::One) {
        Some(s) => LN_2.min(((s as f64) * LN_2 + (-(-(s as f64) * LN_2).exp()).ln_1p()) / s as f64),
        None => LN_2,
    }
}

/// Requires `n_max >= 16`. The value is the least-squares slope of the log
/// cumulative count `log Σ_{k<=n} N(k)` over the last third of the horizon.
pub fn entropy_estimate<S: SymbolStream>(nu: &S, n_max: usize) -> Result<EntropyResult> {
    if n_max < 16 {
        return Err(Error::HorizonTooSmall { needed: 16, got: n_max });
    }
    let c = census_stream(nu, n_max)?;
    let cum = c.cumulative();
    let start = n_max - n_max / 3;
    let pts: Vec<(f64, f64)> = (start..=n_max)
        .filter(|&n| cum[n - 1] > 0)
        .map(|n| (n as f64, (cum[n - 1] as f64).ln()))
        .collect();
    let slope = if pts.len() >= 2 {
        let k = pts.len() as f64;
        let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
        let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
        let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
        let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
        sxy / sxx
    } else {
        0.0
    };
    let upper = refined_upper_bound(nu, n_max);
    Ok(EntropyResult {
        value: slope.clamp(0.0, upper),
        lower: 0.0,
        upper,
        kind: EntropyKind::GrowthEstimate,
        evidence: Evidence::CensusHorizon(n_max),
    })
}

pub fn entropy_of_angle(theta: &Angle) -> Result<EntropyResult> {
    entropy_exact(&kneading_of_angle(theta)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RecurrenceVerdict {
    Bounded,
    Unbounded,
    /// `*`-periodic sequences are treated as non-recurrent.
    NonRecurrentByConvention,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RecurrenceWitness {
    /// `max_{1<=n<=n_max} diff(ν, σ^n ν)`.
    pub max_diff: Depth,
    /// Supremum over all `n >= 1`.
    pub sup_diff: Depth,
    pub verdict: RecurrenceVerdict,
}

pub fn recurrence_witness(nu: &KneadingSequence, n_max: usize) -> Result<RecurrenceWitness> {
    nu.require_critical_orbit()?;
    let it = nu.itinerary();
    let orbit = it.preperiod_len() + it.period_len();
    let d = |n: usize| diff_words(it, &it.shift(n));
    let max_diff = (1..=n_max).map(d).max().unwrap_or(Depth::Finite(0));
    // Shifts repeat with period `period` past the preperiod.
    let sup_diff = (1..=orbit).map(d).max().unwrap_or(Depth::Finite(0));
    let verdict = if nu.is_star_periodic() {
        RecurrenceVerdict::NonRecurrentByConvention
    } else if sup_diff.is_infinite() {
        RecurrenceVerdict::Unbounded
    } else {
        RecurrenceVerdict::Bounded
    };
    Ok(RecurrenceWitness {
        max_diff,
        sup_diff,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequence::seq;

    #[test]
    fn exact_examples() {
        let h = entropy_exact(&seq("1(0)")).unwrap();
        assert!((h.value - LN_2).abs() < 1e-12);
        assert!(h.lower <= h.value && h.value <= h.upper && h.upper - h.lower < 1e-12);
        assert_eq!(entropy_exact(&seq("(1*)")).unwrap().value, 0.0);
        assert!(entropy_exact(&seq("(101*)")).unwrap().value < 1e-10);
    }

    #[test]
    fn airplane_is_golden() {
        let h = entropy_exact(&seq("(10*)")).unwrap().value;
        assert!((h - ((1.0 + 5f64.sqrt()) / 2.0).ln()).abs() < 1e-12);
    }

    #[test]
    fn one_ten_root() {
        // Growth rate of 1(10) is the real root of x^3 = x + 2.
        let h = entropy_exact(&seq("1(10)")).unwrap().value;
        let mut x: f64 = 1.5;
        for _ in 0..100 {
            x -= (x * x * x - x - 2.0) / (3.0 * x * x - 1.0);
        }
        assert!((h - x.ln()).abs() < 1e-12, "{h} vs {}", x.ln());
    }

    #[test]
    fn estimates() {
        let e = entropy_estimate(&seq("1(0)"), 40).unwrap();
        assert!((e.value - LN_2).abs() < 0.02);
        let exact = entropy_exact(&seq("1(10)")).unwrap().value;
        let e = entropy_estimate(&seq("1(10)"), 60).unwrap();
        assert!((e.value - exact).abs() < 0.01, "{} vs {exact}", e.value);
        assert!(matches!(
            entropy_estimate(&seq("1(0)"), 10),
            Err(Error::HorizonTooSmall { .. })
        ));
        let s4 = seq("1001(0)");
        let e = entropy_estimate(&s4, 30).unwrap();
        assert!(e.upper <= (15f64).ln() / 4.0 + 1e-15);
    }

    #[test]
    fn angle_examples() {
        let a = |s: &str| entropy_of_angle(&s.parse().unwrap()).unwrap().value;
        assert!((a("1/2") - LN_2).abs() < 1e-12);
        assert_eq!(a("1/3"), 0.0);
        assert!((a("1/6") - entropy_exact(&seq("1(10)")).unwrap().value).abs() < 1e-15);
    }

    #[test]
    fn recurrence_examples() {
        let w = recurrence_witness(&seq("1(10)"), 20).unwrap();
        assert_eq!(w.verdict, RecurrenceVerdict::Bounded);
        assert_eq!(
            recurrence_witness(&seq("(1101*)"), 20).unwrap().verdict,
            RecurrenceVerdict::NonRecurrentByConvention
        );
        let w = recurrence_witness(&seq("1(0)"), 20).unwrap();
        assert_eq!(w.verdict, RecurrenceVerdict::Bounded);
        assert_eq!(w.sup_diff, Depth::Finite(1));
    }
}
