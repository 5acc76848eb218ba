//! First-difference metrics: `diff`, `Diff` and the ρ-function.

use num_integer::Integer;

use crate::depth::Depth;
use crate::error::{Error, Result};
use crate::sequence::{Itinerary, KneadingSequence, Projected, Shape, Shifted, Symbol, SymbolStream};

/// Number of leading positions after which two eventually periodic streams
/// either have differed or never will.
pub fn agreement_window(a: Shape, b: Shape) -> usize {
    a.preperiod.max(b.preperiod) + a.period.lcm(&b.period)
}

fn first_difference<A: SymbolStream, B: SymbolStream>(a: &A, b: &B, upto: usize) -> Option<usize> {
    (1..=upto).find(|&k| a.symbol(k).differs_from(b.symbol(k)))
}

/// First position where both streams carry concrete, unequal symbols.
///
/// When both streams report a shape the answer is exact and `horizon` only
/// has to be positive. Otherwise the search stops at `horizon` and reports
/// `Beyond(horizon)` if nothing was found.
pub fn diff<A: SymbolStream, B: SymbolStream>(a: &A, b: &B, horizon: usize) -> Result<Depth> {
    if horizon == 0 {
        return Err(Error::ZeroHorizon);
    }
    Ok(match (a.shape(), b.shape()) {
        (Some(sa), Some(sb)) => diff_exact(a, b, sa, sb),
        _ => match first_difference(a, b, horizon) {
            Some(k) => Depth::Finite(k),
            None => Depth::Beyond(horizon),
        },
    })
}

fn diff_exact<A: SymbolStream, B: SymbolStream>(a: &A, b: &B, sa: Shape, sb: Shape) -> Depth {
    match first_difference(a, b, agreement_window(sa, sb)) {
        Some(k) => Depth::Finite(k),
        None => Depth::Infinite,
    }
}

/// `diff` for two eventually periodic words; always exact.
pub fn diff_words(a: &Itinerary, b: &Itinerary) -> Depth {
    diff_exact(a, b, a.shape().expect("shaped"), b.shape().expect("shaped"))
}

/// `Diff(ν, ν′) = max_e diff(π_e ν, π_e ν′)` for arbitrary streams.
pub fn diff_max_streams<A: SymbolStream, B: SymbolStream>(a: &A, b: &B, horizon: usize) -> Result<Depth> {
    let mut best = Depth::Finite(0);
    for e in [Symbol::Zero, Symbol::One] {
        let d = diff(&Projected { inner: a, e }, &Projected { inner: b, e }, horizon)?;
        best = best.max(d);
    }
    Ok(best)
}

/// `Diff(ν, ν′)` for kneading sequences; exact. Also returns a projection
/// symbol `e` attaining the maximum.
pub fn diff_max_with_witness(a: &KneadingSequence, b: &KneadingSequence) -> (Depth, Symbol) {
    let d0 = diff_words(&a.project(Symbol::Zero), &b.project(Symbol::Zero));
    let d1 = diff_words(&a.project(Symbol::One), &b.project(Symbol::One));
    if d1 > d0 {
        (d1, Symbol::One)
    } else {
        (d0, Symbol::Zero)
    }
}

/// `Diff(ν, ν′)` for kneading sequences; exact.
pub fn diff_max(a: &KneadingSequence, b: &KneadingSequence) -> Depth {
    diff_max_with_witness(a, b).0
}

/// `ρ_ν(n) = min{k > n : ν_k ≠ ν_{k−n}}` for a `*`-free word.
pub fn rho(nu: &Itinerary, n: usize) -> Result<Depth> {
    if nu.has_star() {
        return Err(Error::UnexpectedStar);
    }
    if n == 0 {
        return Err(Error::InvalidSequence("rho is defined for n >= 1".into()));
    }
    Ok(rho_unchecked(nu, n))
}

pub(crate) fn rho_unchecked(nu: &Itinerary, n: usize) -> Depth {
    let shifted = Shifted { inner: nu, by: n };
    let s = nu.shape().expect("shaped");
    match diff_exact(&shifted, nu, shifted.shape().expect("shaped"), s) {
        Depth::Finite(d) => Depth::Finite(n + d),
        other => other,
    }
}
