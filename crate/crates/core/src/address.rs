//! Internal addresses, upper/lower sequences and bifurcations.

use std::fmt;
use std::str::FromStr;

use crate::depth::Depth;
use crate::error::{Error, Result};
use crate::metric::rho_unchecked;
use crate::sequence::{Itinerary, KneadingSequence, Symbol};

pub const DEFAULT_MAX_TERMS: usize = 64;

/// Strictly increasing entries starting at 1, possibly cut off.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct InternalAddress {
    entries: Vec<usize>,
    truncated: bool,
}

impl InternalAddress {
    pub fn new(entries: Vec<usize>, truncated: bool) -> Result<Self> {
        if entries.first() != Some(&1) {
            return Err(Error::InvalidAddress("must start with 1".into()));
        }
        if entries.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidAddress("entries must be strictly increasing".into()));
        }
        Ok(InternalAddress { entries, truncated })
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    pub fn is_truncated(&self) -> bool {
        self.truncated
    }

    pub fn last(&self) -> usize {
        *self.entries.last().expect("nonempty")
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// True iff `self`'s entries are a proper prefix of `other`'s, or `other`
    /// is known to continue beyond them.
    pub fn is_strict_prefix_of(&self, other: &InternalAddress) -> bool {
        if self.truncated {
            return false;
        }
        other.entries.starts_with(&self.entries)
            && (other.entries.len() > self.entries.len() || other.truncated)
    }

    /// The first `n` entries as a finite address.
    pub fn prefix(&self, n: usize) -> InternalAddress {
        InternalAddress {
            entries: self.entries[..n.min(self.entries.len())].to_vec(),
            truncated: false,
        }
    }
}

impl fmt::Display for InternalAddress {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|e| e.to_string()).collect();
        write!(f, "{}", parts.join("-"))?;
        if self.truncated {
            write!(f, "-...")?;
        }
        Ok(())
    }
}

impl FromStr for InternalAddress {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (body, truncated) = match s.strip_suffix("-...") {
            Some(b) => (b, true),
            None => (s, false),
        };
        let entries = body
            .split(['-', ',', ' '])
            .filter(|p| !p.is_empty())
            .map(|p| {
                p.parse::<usize>()
                    .map_err(|_| Error::InvalidAddress(format!("bad entry {p:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        InternalAddress::new(entries, truncated)
    }
}

impl serde::Serialize for InternalAddress {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// The ρ-orbit of 1 for a `*`-free word.
pub fn address_of_word(nu: &Itinerary, max_terms: usize) -> Result<InternalAddress> {
    if nu.has_star() {
        return Err(Error::UnexpectedStar);
    }
    Ok(address_until(nu, max_terms, usize::MAX))
}

/// ρ-orbit of 1, stopping after `max_terms` entries or once an entry
/// exceeds `bound` (that entry is kept).
fn address_until(nu: &Itinerary, max_terms: usize, bound: usize) -> InternalAddress {
    let mut entries = vec![1];
    let mut truncated = false;
    loop {
        let last = *entries.last().unwrap();
        if last > bound {
            truncated = true;
            break;
        }
        if entries.len() >= max_terms.max(1) {
            truncated = true;
            break;
        }
        match rho_unchecked(nu, last) {
            Depth::Finite(next) => entries.push(next),
            _ => break,
        }
    }
    InternalAddress { entries, truncated }
}

pub(crate) fn address_past(nu: &Itinerary, bound: usize) -> InternalAddress {
    address_until(nu, usize::MAX, bound)
}

/// Internal address of a kneading sequence. For `*`-periodic input this is
/// the finite address of its upper sequence, ending in the period.
pub fn internal_address(nu: &KneadingSequence, max_terms: usize) -> Result<InternalAddress> {
    if nu.is_trivial() {
        return Err(Error::TrivialSequence);
    }
    if nu.is_star_periodic() {
        let (up, _) = upper_lower(nu)?;
        return address_of_word(&up, max_terms.max(nu.period_len()));
    }
    address_of_word(nu.itinerary(), max_terms)
}

/// `(upper, lower)` projections of a `*`-periodic sequence.
pub fn upper_lower(nu: &KneadingSequence) -> Result<(Itinerary, Itinerary)> {
    upper_lower_with_symbol(nu).map(|(u, l, _)| (u, l))
}

/// Like [`upper_lower`], also returning the symbol `e` with `π_e ν` upper.
pub fn upper_lower_with_symbol(nu: &KneadingSequence) -> Result<(Itinerary, Itinerary, Symbol)> {
    if !nu.is_star_periodic() {
        return Err(Error::NotStarPeriodic);
    }
    let p = nu.period_len();
    if p < 2 {
        return Err(Error::TrivialSequence);
    }
    let qualifies = |w: &Itinerary| {
        let a = address_until(w, p + 1, p);
        !a.truncated && a.last() == p
    };
    let p0 = nu.project(Symbol::Zero);
    let p1 = nu.project(Symbol::One);
    match (qualifies(&p0), qualifies(&p1)) {
        (true, false) => Ok((p0, p1, Symbol::Zero)),
        (false, true) => Ok((p1, p0, Symbol::One)),
        (a, b) => Err(Error::AmbiguousProjection(
            nu.to_string(),
            format!("projection 0 qualifies: {a}, projection 1 qualifies: {b}"),
        )),
    }
}

/// Smallest exact period `q` strictly dividing `p` among the two
/// projections, if any. `(1*)` yields `q = 1`.
pub fn is_bifurcation(nu: &KneadingSequence) -> Result<Option<usize>> {
    if !nu.is_star_periodic() {
        return Err(Error::NotStarPeriodic);
    }
    let p = nu.period_len();
    Ok([Symbol::Zero, Symbol::One]
        .into_iter()
        .map(|e| nu.project(e).period_len())
        .filter(|&q| q < p && p.is_multiple_of(q))
        .min())
}

/// The `*`-periodic kneading sequence with the given finite address.
/// The address `1` yields the trivial sequence `(*)`.
pub fn address_to_kneading(addr: &InternalAddress) -> Result<KneadingSequence> {
    if addr.truncated {
        return Err(Error::InvalidAddress("address must be finite".into()));
    }
    let mut word = vec![Symbol::One];
    for &s in &addr.entries[1..] {
        let mut next: Vec<Symbol> = (0..s).map(|i| word[i % word.len()]).collect();
        next[s - 1] = next[s - 1].flipped();
        word = next;
    }
    *word.last_mut().unwrap() = Symbol::Star;
    KneadingSequence::new(Vec::new(), word)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequence::seq;

    fn addr(s: &str) -> InternalAddress {
        s.parse().unwrap()
    }

    fn word(s: &str) -> Itinerary {
        s.parse().unwrap()
    }

    #[test]
    fn address_examples() {
        let a = internal_address(&seq("1(10)"), 4).unwrap();
        assert_eq!(a.to_string(), "1-3-5-7-...");
        assert_eq!(internal_address(&seq("(1101*)"), 64).unwrap().to_string(), "1-3-5");
        let low = address_of_word(&word("(11011)"), 7).unwrap();
        assert_eq!(low.entries(), &[1, 3, 6, 8, 11, 13, 16]);
        assert!(low.is_truncated());
        assert_eq!(internal_address(&seq("(101*)"), 64).unwrap().to_string(), "1-2-4");
        assert_eq!(internal_address(&seq("(1*)"), 64).unwrap().to_string(), "1-2");
    }

    #[test]
    fn upper_lower_examples() {
        let (u, l) = upper_lower(&seq("(1101*)")).unwrap();
        assert_eq!((u.to_string(), l.to_string()), ("(11010)".into(), "(11011)".into()));
        let (u, l) = upper_lower(&seq("(101*)")).unwrap();
        assert_eq!((u.to_string(), l.to_string()), ("(1011)".into(), "(10)".into()));
        let (u, l) = upper_lower(&seq("(1*)")).unwrap();
        assert_eq!((u.to_string(), l.to_string()), ("(10)".into(), "(1)".into()));
    }

    #[test]
    fn bifurcation_examples() {
        assert_eq!(is_bifurcation(&seq("(101*)")).unwrap(), Some(2));
        assert_eq!(is_bifurcation(&seq("(1101*)")).unwrap(), None);
        assert_eq!(is_bifurcation(&seq("(1*)")).unwrap(), Some(1));
    }

    #[test]
    fn address_to_kneading_examples() {
        assert_eq!(address_to_kneading(&addr("1-3-5")).unwrap(), seq("(1101*)"));
        assert_eq!(address_to_kneading(&addr("1-2-4")).unwrap(), seq("(101*)"));
        assert!(address_to_kneading(&addr("1")).unwrap().is_trivial());
    }

    #[test]
    fn address_parsing() {
        assert!("1-3-3".parse::<InternalAddress>().is_err());
        assert!("2-3".parse::<InternalAddress>().is_err());
        assert!(addr("1-2-...").is_truncated());
        assert!(addr("1-2").is_strict_prefix_of(&addr("1-2-4")));
        assert!(!addr("1-2").is_strict_prefix_of(&addr("1-2")));
        assert!(addr("1-2").is_strict_prefix_of(&addr("1-2-...")));
    }
}
