//! Symbols, eventually periodic words and kneading sequences.
//!
//! Words are stored canonically as `preperiod · period^ω` with a primitive
//! period and the shortest possible preperiod, so structural equality is
//! sequence equality. Indexing is 1-based throughout: `symbol(1)` is the
//! first entry.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// One letter of the alphabet `{0, 1, *}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symbol {
    Zero,
    One,
    Star,
}

impl Symbol {
    pub fn is_star(self) -> bool {
        self == Symbol::Star
    }

    /// The other concrete symbol; `*` is fixed.
    pub fn flipped(self) -> Symbol {
        match self {
            Symbol::Zero => Symbol::One,
            Symbol::One => Symbol::Zero,
            Symbol::Star => Symbol::Star,
        }
    }

    /// True iff both symbols are concrete and unequal (`*` is a wildcard).
    pub fn differs_from(self, other: Symbol) -> bool {
        !self.is_star() && !other.is_star() && self != other
    }

    pub fn as_char(self) -> char {
        match self {
            Symbol::Zero => '0',
            Symbol::One => '1',
            Symbol::Star => '*',
        }
    }

    pub fn from_char(c: char) -> Option<Symbol> {
        match c {
            '0' => Some(Symbol::Zero),
            '1' => Some(Symbol::One),
            '*' | '★' => Some(Symbol::Star),
            _ => None,
        }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// Preperiod and period lengths of an eventually periodic stream.
///
/// The period need not be primitive; it only has to be *a* period of the
/// tail, which is all that exact window comparisons need.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Shape {
    pub preperiod: usize,
    pub period: usize,
}

/// A 1-indexed stream of symbols.
///
/// `shape` returns `Some` when the stream is known to be eventually
/// periodic; metric operations use it to decide infinite agreement exactly.
pub trait SymbolStream {
    fn symbol(&self, k: usize) -> Symbol;
    fn shape(&self) -> Option<Shape>;
}

impl<T: SymbolStream + ?Sized> SymbolStream for &T {
    fn symbol(&self, k: usize) -> Symbol {
        (**self).symbol(k)
    }
    fn shape(&self) -> Option<Shape> {
        (**self).shape()
    }
}

/// An eventually periodic itinerary in canonical form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Itinerary {
    pre: Vec<Symbol>,
    per: Vec<Symbol>,
}

impl Itinerary {
    /// Builds and canonicalizes `pre · per^ω`. The period must be nonempty.
    pub fn new(pre: Vec<Symbol>, per: Vec<Symbol>) -> Result<Self> {
        if per.is_empty() {
            return Err(Error::InvalidSequence("period must be nonempty".into()));
        }
        let mut it = Itinerary { pre, per };
        it.canonicalize();
        Ok(it)
    }

    /// The purely periodic word `per^ω`.
    pub fn periodic(per: Vec<Symbol>) -> Result<Self> {
        Self::new(Vec::new(), per)
    }

    fn canonicalize(&mut self) {
        let n = self.per.len();
        for d in 1..=n {
            if n.is_multiple_of(d) && (d..n).all(|i| self.per[i] == self.per[i % d]) {
                self.per.truncate(d);
                break;
            }
        }
        while let Some(&last) = self.pre.last() {
            if last != *self.per.last().expect("nonempty period") {
                break;
            }
            self.pre.pop();
            self.per.rotate_right(1);
        }
    }

    pub fn preperiod(&self) -> &[Symbol] {
        &self.pre
    }

    pub fn period(&self) -> &[Symbol] {
        &self.per
    }

    pub fn preperiod_len(&self) -> usize {
        self.pre.len()
    }

    pub fn period_len(&self) -> usize {
        self.per.len()
    }

    pub fn is_periodic(&self) -> bool {
        self.pre.is_empty()
    }

    pub fn has_star(&self) -> bool {
        self.pre.iter().chain(&self.per).any(|s| s.is_star())
    }

    /// k-th symbol, 1-based.
    pub fn symbol(&self, k: usize) -> Symbol {
        debug_assert!(k >= 1, "1-based indexing");
        let i = k - 1;
        if i < self.pre.len() {
            self.pre[i]
        } else {
            self.per[(i - self.pre.len()) % self.per.len()]
        }
    }

    /// Reduces an orbit offset (number of shifts) to its canonical
    /// representative in `0 .. preperiod + period`.
    pub fn normalize_offset(&self, j: usize) -> usize {
        let pre = self.pre.len();
        if j < pre {
            j
        } else {
            pre + (j - pre) % self.per.len()
        }
    }

    /// `σ^n` of this itinerary.
    pub fn shift(&self, n: usize) -> Itinerary {
        let j = self.normalize_offset(n);
        let pre = self.pre.len();
        if j < pre {
            Itinerary {
                pre: self.pre[j..].to_vec(),
                per: self.per.clone(),
            }
        } else {
            let mut per = self.per.clone();
            per.rotate_left(j - pre);
            Itinerary {
                pre: Vec::new(),
                per,
            }
        }
    }

    /// Replaces every `*` by `e` and re-canonicalizes.
    pub fn project(&self, e: Symbol) -> Itinerary {
        let map = |s: &Symbol| if s.is_star() { e } else { *s };
        let mut it = Itinerary {
            pre: self.pre.iter().map(map).collect(),
            per: self.per.iter().map(map).collect(),
        };
        it.canonicalize();
        it
    }

    /// Swaps `0` and `1` everywhere.
    pub fn relabeled(&self) -> Itinerary {
        Itinerary {
            pre: self.pre.iter().map(|s| s.flipped()).collect(),
            per: self.per.iter().map(|s| s.flipped()).collect(),
        }
    }

    /// Builds the canonical word from a symbol function known to have the
    /// given preperiod and period.
    pub fn from_fn(preperiod: usize, period: usize, f: impl Fn(usize) -> Symbol) -> Result<Self> {
        let pre = (1..=preperiod).map(&f).collect();
        let per = (preperiod + 1..=preperiod + period).map(&f).collect();
        Self::new(pre, per)
    }
}

impl SymbolStream for Itinerary {
    fn symbol(&self, k: usize) -> Symbol {
        Itinerary::symbol(self, k)
    }
    fn shape(&self) -> Option<Shape> {
        Some(Shape {
            preperiod: self.pre.len(),
            period: self.per.len(),
        })
    }
}

impl fmt::Display for Itinerary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.pre {
            write!(f, "{s}")?;
        }
        write!(f, "(")?;
        for s in &self.per {
            write!(f, "{s}")?;
        }
        write!(f, ")")
    }
}

fn parse_word(s: &str, offset: usize) -> Result<Vec<Symbol>> {
    s.chars()
        .enumerate()
        .map(|(i, c)| {
            Symbol::from_char(c).ok_or_else(|| Error::Parse {
                position: offset + i + 1,
                message: format!("unexpected character {c:?}; expected 0, 1 or *"),
            })
        })
        .collect()
}

impl FromStr for Itinerary {
    type Err = Error;

    /// Grammar: `PRE(PER)` with PRE, PER words over `{0,1,*}`, PER nonempty.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let open = s.find('(').ok_or(Error::Parse {
            position: s.chars().count() + 1,
            message: "missing '(' before the period".into(),
        })?;
        if !s.ends_with(')') {
            return Err(Error::Parse {
                position: s.chars().count(),
                message: "sequence must end with ')'".into(),
            });
        }
        let pre_str = &s[..open];
        let per_str = &s[open + 1..s.len() - 1];
        if let Some(i) = per_str.find(['(', ')']) {
            return Err(Error::Parse {
                position: pre_str.chars().count() + 2 + per_str[..i].chars().count(),
                message: "nested or repeated parentheses".into(),
            });
        }
        let pre = parse_word(pre_str, 0)?;
        let per = parse_word(per_str, pre_str.chars().count() + 1)?;
        if per.is_empty() {
            return Err(Error::Parse {
                position: open + 2,
                message: "period must be nonempty".into(),
            });
        }
        Itinerary::new(pre, per)
    }
}

/// A kneading sequence: eventually periodic, first symbol `1` (unless it is
/// the trivial sequence `(*)`), and `*` only as the last symbol of a pure
/// period.
///
/// Purely periodic `*`-free words starting with `1` are also admitted, since
/// upper and lower sequences and internal-address computations work with
/// them; operations that need a critical orbit reject them.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KneadingSequence(Itinerary);

impl KneadingSequence {
    pub fn from_itinerary(it: Itinerary) -> Result<Self> {
        let stars = it.pre.iter().chain(&it.per).filter(|s| s.is_star()).count();
        if stars > 0 {
            if !it.pre.is_empty() {
                return Err(Error::InvalidSequence(format!(
                    "{it}: * may only appear in a purely periodic sequence"
                )));
            }
            if stars > 1 || !it.per.last().is_some_and(|s| s.is_star()) {
                return Err(Error::InvalidSequence(format!(
                    "{it}: * must occur exactly once per period, at its last position"
                )));
            }
        }
        let trivial = it.pre.is_empty() && it.per == [Symbol::Star];
        if !trivial && it.symbol(1) != Symbol::One {
            return Err(Error::InvalidSequence(format!(
                "{it}: a non-trivial kneading sequence starts with 1"
            )));
        }
        Ok(KneadingSequence(it))
    }

    pub fn new(pre: Vec<Symbol>, per: Vec<Symbol>) -> Result<Self> {
        Self::from_itinerary(Itinerary::new(pre, per)?)
    }

    /// `\overline{w *}`, the `*`-periodic sequence with period `w*`.
    pub fn star_periodic(mut word: Vec<Symbol>) -> Result<Self> {
        word.push(Symbol::Star);
        Self::new(Vec::new(), word)
    }

    pub fn trivial() -> Self {
        KneadingSequence(Itinerary {
            pre: Vec::new(),
            per: vec![Symbol::Star],
        })
    }

    pub fn is_trivial(&self) -> bool {
        self.0.pre.is_empty() && self.0.per == [Symbol::Star]
    }

    pub fn is_star_periodic(&self) -> bool {
        self.0.per.last().is_some_and(|s| s.is_star())
    }

    /// Strictly preperiodic (the tail never returns to the start).
    pub fn is_preperiodic(&self) -> bool {
        !self.0.pre.is_empty()
    }

    pub fn itinerary(&self) -> &Itinerary {
        &self.0
    }

    pub fn into_itinerary(self) -> Itinerary {
        self.0
    }

    pub fn entry(&self, k: usize) -> Symbol {
        self.0.symbol(k)
    }

    pub fn period_len(&self) -> usize {
        self.0.period_len()
    }

    pub fn preperiod_len(&self) -> usize {
        self.0.preperiod_len()
    }

    pub fn project(&self, e: Symbol) -> Itinerary {
        self.0.project(e)
    }

    /// Errors unless this sequence has a genuine critical orbit: non-trivial
    /// and either `*`-periodic or strictly preperiodic.
    pub fn require_critical_orbit(&self) -> Result<()> {
        if self.is_trivial() {
            return Err(Error::TrivialSequence);
        }
        if self.0.pre.is_empty() && !self.is_star_periodic() {
            return Err(Error::PeriodicWithoutStar(self.to_string()));
        }
        Ok(())
    }

    /// Position of the second `1`, if any.
    pub fn second_one(&self) -> Option<usize> {
        let limit = self.0.pre.len() + 2 * self.0.per.len() + 1;
        (1..=limit)
            .filter(|&k| self.entry(k) == Symbol::One)
            .nth(1)
    }
}

impl SymbolStream for KneadingSequence {
    fn symbol(&self, k: usize) -> Symbol {
        self.0.symbol(k)
    }
    fn shape(&self) -> Option<Shape> {
        self.0.shape()
    }
}

impl fmt::Display for KneadingSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl FromStr for KneadingSequence {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        KneadingSequence::from_itinerary(s.parse()?)
    }
}

impl TryFrom<Itinerary> for KneadingSequence {
    type Error = Error;
    fn try_from(it: Itinerary) -> Result<Self> {
        KneadingSequence::from_itinerary(it)
    }
}

impl serde::Serialize for KneadingSequence {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl serde::Serialize for Itinerary {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// `σ^n` applied lazily to a stream.
#[derive(Debug, Clone, Copy)]
pub struct Shifted<S> {
    pub inner: S,
    pub by: usize,
}

impl<S: SymbolStream> SymbolStream for Shifted<S> {
    fn symbol(&self, k: usize) -> Symbol {
        self.inner.symbol(k + self.by)
    }
    fn shape(&self) -> Option<Shape> {
        self.inner.shape().map(|s| Shape {
            preperiod: s.preperiod.saturating_sub(self.by),
            period: s.period,
        })
    }
}

/// `π_e` applied lazily to a stream.
#[derive(Debug, Clone, Copy)]
pub struct Projected<S> {
    pub inner: S,
    pub e: Symbol,
}

impl<S: SymbolStream> SymbolStream for Projected<S> {
    fn symbol(&self, k: usize) -> Symbol {
        match self.inner.symbol(k) {
            Symbol::Star => self.e,
            s => s,
        }
    }
    fn shape(&self) -> Option<Shape> {
        self.inner.shape()
    }
}

/// The critical point `*ν` as a stream: `*` followed by `ν`.
#[derive(Debug, Clone, Copy)]
pub struct CriticalPoint<S>(pub S);

impl<S: SymbolStream> SymbolStream for CriticalPoint<S> {
    fn symbol(&self, k: usize) -> Symbol {
        if k == 1 {
            Symbol::Star
        } else {
            self.0.symbol(k - 1)
        }
    }
    fn shape(&self) -> Option<Shape> {
        self.0.shape().map(|s| Shape {
            preperiod: s.preperiod + 1,
            period: s.period,
        })
    }
}

/// A stream given by a generator; no periodicity is assumed, so metric
/// operations resolve it only up to an explicit horizon.
pub struct FnStream<F>(pub F);

impl<F: Fn(usize) -> Symbol> SymbolStream for FnStream<F> {
    fn symbol(&self, k: usize) -> Symbol {
        (self.0)(k)
    }
    fn shape(&self) -> Option<Shape> {
        None
    }
}

/// A finite prefix padded with a fixed symbol; treated as unresolved beyond
/// its length (no shape), so callers must supply a horizon within the prefix.
#[derive(Debug, Clone)]
pub struct Prefix(pub Vec<Symbol>);

impl Prefix {
    pub fn parse(s: &str) -> Result<Self> {
        parse_word(s, 0).map(Prefix)
    }
}

impl SymbolStream for Prefix {
    fn symbol(&self, k: usize) -> Symbol {
        // Out-of-range reads only happen past the caller's horizon.
        self.0.get(k - 1).copied().unwrap_or(Symbol::Star)
    }
    fn shape(&self) -> Option<Shape> {
        None
    }
}

/// Shorthand for tests and examples: panics on malformed input.
pub fn seq(s: &str) -> KneadingSequence {
    s.parse()
        .unwrap_or_else(|e| panic!("bad sequence literal {s:?}: {e}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn entry_examples() {
        assert_eq!(seq("(1101*)").entry(5), Symbol::Star);
        assert_eq!(seq("1(10)").entry(4), Symbol::One);
        assert_eq!(seq("(1*)").entry(7), Symbol::One);
        let s = seq("(1101*)");
        for k in 1..6 {
            assert_eq!(s.entry(5 * k), Symbol::Star);
        }
    }

    #[test]
    fn canonical_form() {
        assert_eq!(seq("1(01)").to_string(), "(10)");
        assert_eq!(seq("(1010)").to_string(), "(10)");
        assert_eq!(seq("1101(01)").to_string(), "1(10)");
        assert_eq!("0(0)".parse::<Itinerary>().unwrap().to_string(), "(0)");
    }

    #[test]
    fn rejects_invalid_words() {
        assert!(matches!(
            "1*(10)".parse::<KneadingSequence>(),
            Err(Error::InvalidSequence(_))
        ));
        assert!(matches!(
            "(1*0)".parse::<KneadingSequence>(),
            Err(Error::InvalidSequence(_))
        ));
        assert!(matches!(
            "(0*)".parse::<KneadingSequence>(),
            Err(Error::InvalidSequence(_))
        ));
        assert!("(1*1*)".parse::<KneadingSequence>().is_ok());
        match "1(1x0)".parse::<KneadingSequence>() {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 4),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!("110".parse::<Itinerary>(), Err(Error::Parse { .. })));
        assert!(matches!("1()".parse::<Itinerary>(), Err(Error::Parse { .. })));
    }

    #[test]
    fn trivial_sequence() {
        let t = seq("(*)");
        assert!(t.is_trivial());
        assert_eq!(t, KneadingSequence::trivial());
        assert!(t.require_critical_orbit().is_err());
    }

    #[test]
    fn shift_and_project() {
        let s = seq("1(10)");
        assert_eq!(s.itinerary().shift(1).to_string(), "(10)");
        assert_eq!(s.itinerary().shift(2).to_string(), "(01)");
        assert_eq!(seq("(101*)").project(Symbol::One).to_string(), "(1011)");
        assert_eq!(seq("(101*)").project(Symbol::Zero).to_string(), "(10)");
        assert_eq!(seq("(1*)").project(Symbol::One).to_string(), "(1)");
    }

    #[test]
    fn lazy_streams_agree_with_words() {
        let s = seq("1(10)");
        let shifted = Shifted { inner: &s, by: 3 };
        let word = s.itinerary().shift(3);
        for k in 1..20 {
            assert_eq!(shifted.symbol(k), word.symbol(k));
        }
        let cp = CriticalPoint(&s);
        assert_eq!(cp.symbol(1), Symbol::Star);
        assert_eq!(cp.symbol(2), Symbol::One);
    }

    #[test]
    fn second_one_position() {
        assert_eq!(seq("1(0)").second_one(), None);
        assert_eq!(seq("1(10)").second_one(), Some(2));
        assert_eq!(seq("(1000*)").second_one(), Some(6));
        assert_eq!(seq("100(1)").second_one(), Some(4));
    }
}
