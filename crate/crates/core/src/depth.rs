use std::cmp::Ordering;
use std::fmt;

/// Length of agreement between two streams.
///
/// `Beyond(h)` means no disagreement was found in the first `h` positions
/// and the streams carry no periodicity information to settle it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Depth {
    Finite(usize),
    Infinite,
    Beyond(usize),
}

impl Depth {
    pub fn finite(self) -> Option<usize> {
        match self {
            Depth::Finite(n) => Some(n),
            _ => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        self == Depth::Infinite
    }

    /// Lower bound on the true value.
    pub fn lower_bound(self) -> usize {
        match self {
            Depth::Finite(n) => n,
            Depth::Beyond(h) => h + 1,
            Depth::Infinite => usize::MAX,
        }
    }

    fn rank(self) -> (u8, usize) {
        match self {
            Depth::Finite(n) => (0, n),
            Depth::Beyond(h) => (1, h),
            Depth::Infinite => (2, 0),
        }
    }
}

impl PartialOrd for Depth {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Orders by the value a depth certifies; `Beyond(h)` sits above every
/// finite value `≤ h` and is compared to larger finite values by `h + 1`.
impl Ord for Depth {
    fn cmp(&self, other: &Self) -> Ordering {
        match (*self, *other) {
            (Depth::Finite(a), Depth::Beyond(h)) if a > h => Ordering::Greater,
            (Depth::Beyond(h), Depth::Finite(a)) if a > h => Ordering::Less,
            _ => self.rank().cmp(&other.rank()),
        }
    }
}

impl fmt::Display for Depth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Depth::Finite(n) => write!(f, "{n}"),
            Depth::Infinite => write!(f, "inf"),
            Depth::Beyond(h) => write!(f, ">{h}"),
        }
    }
}

impl serde::Serialize for Depth {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Depth::Finite(n) => s.serialize_u64(*n as u64),
            other => s.collect_str(other),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ordering() {
        assert!(Depth::Finite(3) < Depth::Finite(4));
        assert!(Depth::Finite(1000) < Depth::Infinite);
        assert!(Depth::Beyond(10) > Depth::Finite(10));
        assert!(Depth::Beyond(10) < Depth::Finite(11));
        assert!(Depth::Beyond(10) < Depth::Infinite);
        assert_eq!(Depth::Finite(2).max(Depth::Infinite), Depth::Infinite);
    }
}
