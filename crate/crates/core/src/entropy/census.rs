//! Precritical-point census on the critical path by interval subdivision.

use std::collections::BTreeMap;
use std::io::Write;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::sequence::{Itinerary, KneadingSequence, Symbol, SymbolStream};

pub const MAX_CENSUS_DEPTH: usize = 128;

/// An endpoint of a frontier interval: the critical point `*ν` or `σ^j ν`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Endpoint {
    Critical,
    Orbit(usize),
}

/// An unordered pair of endpoints, stored with `left <= right`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct IntervalState {
    pub left: Endpoint,
    pub right: Endpoint,
}

impl IntervalState {
    pub fn new(a: Endpoint, b: Endpoint) -> Self {
        if a <= b {
            IntervalState { left: a, right: b }
        } else {
            IntervalState { left: b, right: a }
        }
    }

    /// `[*ν, ν]`.
    pub fn initial() -> Self {
        IntervalState::new(Endpoint::Critical, Endpoint::Orbit(0))
    }
}

/// What one step of the subdivision does to an interval.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Step {
    Advance(IntervalState),
    Split(IntervalState, IntervalState),
}

/// Endpoint arithmetic over a fixed sequence: first symbols, shifting and
/// offset normalization.
pub(crate) struct Geometry<'a, S> {
    nu: &'a S,
    normalize: Option<&'a Itinerary>,
}

impl<'a> Geometry<'a, Itinerary> {
    pub fn periodic(nu: &'a Itinerary) -> Self {
        Geometry {
            nu,
            normalize: Some(nu),
        }
    }
}

impl<'a, S: SymbolStream> Geometry<'a, S> {
    pub fn stream(nu: &'a S) -> Self {
        Geometry { nu, normalize: None }
    }

    fn first(&self, e: Endpoint) -> Symbol {
        match e {
            Endpoint::Critical => Symbol::Star,
            Endpoint::Orbit(j) => self.nu.symbol(j + 1),
        }
    }

    fn advance(&self, e: Endpoint) -> Endpoint {
        let j = match e {
            Endpoint::Critical => 0,
            Endpoint::Orbit(j) => j + 1,
        };
        Endpoint::Orbit(match self.normalize {
            Some(it) => it.normalize_offset(j),
            None => j,
        })
    }

    pub fn step(&self, s: IntervalState) -> Step {
        let a = self.advance(s.left);
        let b = self.advance(s.right);
        if self.first(s.left).differs_from(self.first(s.right)) {
            let nu = Endpoint::Orbit(0);
            Step::Split(IntervalState::new(a, nu), IntervalState::new(nu, b))
        } else {
            Step::Advance(IntervalState::new(a, b))
        }
    }
}

/// Counts `N(n)` of precritical points of depth `n` on `[*ν, ν]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrecriticalCensus {
    counts: Vec<u128>,
    frontier: Vec<(IntervalState, u128)>,
}

impl PrecriticalCensus {
    pub fn n_max(&self) -> usize {
        self.counts.len()
    }

    /// `N(n)` for `1 <= n <= n_max`.
    pub fn count(&self, n: usize) -> u128 {
        self.counts[n - 1]
    }

    /// `N(1), …, N(n_max)`.
    pub fn counts(&self) -> &[u128] {
        &self.counts
    }

    /// Intervals alive after `n_max` steps, with multiplicity.
    pub fn frontier(&self) -> &[(IntervalState, u128)] {
        &self.frontier
    }

    pub fn cumulative(&self) -> Vec<u128> {
        self.counts
            .iter()
            .scan(0u128, |acc, &c| {
                *acc += c;
                Some(*acc)
            })
            .collect()
    }

    pub(crate) fn from_counts(counts: Vec<u128>, frontier: Vec<(IntervalState, u128)>) -> Self {
        PrecriticalCensus { counts, frontier }
    }

    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let io = |e: csv::Error| Error::InsufficientData(format!("csv output failed: {e}"));
        w.write_record(["depth", "count"]).map_err(io)?;
        for (i, c) in self.counts.iter().enumerate() {
            w.write_record([(i + 1).to_string(), c.to_string()]).map_err(io)?;
        }
        w.flush()
            .map_err(|e| Error::InsufficientData(format!("csv output failed: {e}")))?;
        Ok(())
    }
}

fn check_horizon(n_max: usize) -> Result<()> {
    if n_max < 2 {
        return Err(Error::HorizonTooSmall { needed: 2, got: n_max });
    }
    if n_max > MAX_CENSUS_DEPTH {
        return Err(Error::CountOverflow(n_max));
    }
    Ok(())
}

fn run<S: SymbolStream>(geo: &Geometry<'_, S>, n_max: usize) -> Result<PrecriticalCensus> {
    let mut frontier: BTreeMap<IntervalState, u128> = BTreeMap::new();
    frontier.insert(IntervalState::initial(), 1);
    let mut counts = vec![0u128; n_max];
    let add = |map: &mut BTreeMap<IntervalState, u128>, s, m: u128, depth| -> Result<()> {
        let slot = map.entry(s).or_insert(0);
        *slot = slot.checked_add(m).ok_or(Error::CountOverflow(depth))?;
        Ok(())
    };
    for t in 0..n_max {
        let mut next = BTreeMap::new();
        for (&s, &m) in &frontier {
            match geo.step(s) {
                Step::Advance(a) => add(&mut next, a, m, t + 1)?,
                Step::Split(a, b) => {
                    counts[t] = counts[t].checked_add(m).ok_or(Error::CountOverflow(t + 1))?;
                    add(&mut next, a, m, t + 1)?;
                    add(&mut next, b, m, t + 1)?;
                }
            }
        }
        frontier = next;
    }
    Ok(PrecriticalCensus {
        counts,
        frontier: frontier.into_iter().collect(),
    })
}

/// Direct census of an eventually periodic kneading sequence, depths
/// `1..=n_max` (`2 <= n_max <= 128`).
pub fn census(nu: &KneadingSequence, n_max: usize) -> Result<PrecriticalCensus> {
    nu.require_critical_orbit()?;
    check_horizon(n_max)?;
    run(&Geometry::periodic(nu.itinerary()), n_max)
}

/// Census of an arbitrary stream known to depth `n_max + 1`.
pub fn census_stream<S: SymbolStream>(nu: &S, n_max: usize) -> Result<PrecriticalCensus> {
    check_horizon(n_max)?;
    match nu.symbol(1) {
        Symbol::One => {}
        Symbol::Star => return Err(Error::TrivialSequence),
        Symbol::Zero => {
            return Err(Error::InvalidSequence(
                "a non-trivial kneading sequence starts with 1".into(),
            ))
        }
    }
    run(&Geometry::stream(nu), n_max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequence::{seq, FnStream};

    /// Subdivision over explicit endpoint itineraries, with the precritical
    /// itinerary of every split recorded. Shares no code with the offset
    /// census.
    fn explicit_census(nu: &KneadingSequence, n_max: usize) -> (Vec<u128>, Vec<Vec<Symbol>>) {
        let it = nu.itinerary();
        let mut crit_pre = vec![Symbol::Star];
        crit_pre.extend_from_slice(it.preperiod());
        let critical = Itinerary::new(crit_pre, it.period().to_vec()).unwrap();
        // (left, right, word read so far)
        let mut frontier = vec![(critical, it.clone(), Vec::<Symbol>::new())];
        let mut counts = vec![0u128; n_max];
        let mut words = Vec::new();
        for t in 0..n_max {
            let mut next = Vec::new();
            for (a, b, w) in frontier {
                let (x, y) = (a.symbol(1), b.symbol(1));
                let (sa, sb) = (a.shift(1), b.shift(1));
                if x.differs_from(y) {
                    counts[t] += 1;
                    let mut word = w.clone();
                    word.push(Symbol::Star);
                    words.push(word);
                    let mut wa = w.clone();
                    wa.push(x);
                    let mut wb = w;
                    wb.push(y);
                    next.push((sa, it.clone(), wa));
                    next.push((it.clone(), sb, wb));
                } else {
                    let mut w = w;
                    w.push(if x.is_star() { y } else { x });
                    next.push((sa, sb, w));
                }
            }
            frontier = next;
        }
        (counts, words)
    }

    #[test]
    fn maximal_entropy_counts() {
        let c = census(&seq("1(0)"), 10).unwrap();
        assert_eq!(c.count(1), 0);
        let expect: Vec<u128> = (2..=10).map(|n| 1u128 << (n - 2)).collect();
        assert_eq!(&c.counts()[1..], &expect[..]);
    }

    #[test]
    fn period_two_has_no_splits() {
        let c = census(&seq("(1*)"), 10).unwrap();
        assert!(c.counts().iter().all(|&n| n <= 1));
        let e = explicit_census(&seq("(1*)"), 6).0;
        assert_eq!(&c.counts()[..6], &e[..]);
    }

    #[test]
    fn offset_census_matches_explicit_itineraries() {
        for s in ["1(0)", "1(10)", "(101*)", "(1101*)", "(10*)", "11(10)", "100(1)", "1(100)", "(11010*)"] {
            let nu = seq(s);
            let (explicit, words) = explicit_census(&nu, 16);
            let c = census(&nu, 16).unwrap();
            assert_eq!(c.counts(), &explicit[..], "{s}");
            // Recorded precritical itineraries are pairwise distinct and of
            // the right depth.
            let mut sorted = words.clone();
            sorted.sort();
            sorted.dedup();
            assert_eq!(sorted.len(), words.len(), "{s}");
            for w in &words {
                assert_eq!(w.iter().filter(|x| x.is_star()).count(), 1);
                assert!(w.last().unwrap().is_star());
            }
        }
    }

    #[test]
    fn one_ten_counts() {
        let c = census(&seq("1(10)"), 16).unwrap();
        assert_eq!(
            c.counts(),
            &[0, 0, 1, 1, 1, 3, 3, 5, 9, 11, 19, 29, 41, 67, 99, 149]
        );
    }

    #[test]
    fn stream_census_agrees() {
        let nu = seq("1(10)");
        let s = FnStream(|k| nu.entry(k));
        assert_eq!(census_stream(&s, 30).unwrap().counts(), census(&nu, 30).unwrap().counts());
    }

    #[test]
    fn rejects_bad_inputs() {
        assert_eq!(census(&seq("(*)"), 10), Err(Error::TrivialSequence));
        assert!(matches!(census(&seq("1(0)"), 1), Err(Error::HorizonTooSmall { .. })));
        assert!(matches!(census(&seq("(10)"), 5), Err(Error::PeriodicWithoutStar(_))));
    }

    #[test]
    fn csv_output() {
        let mut buf = Vec::new();
        census(&seq("1(0)"), 3).unwrap().write_csv(&mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "depth,count\n1,0\n2,1\n3,2\n");
    }
}
