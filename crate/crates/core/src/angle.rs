//! Exact rational angles on the circle and their kneading sequences.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::sequence::{Itinerary, KneadingSequence, Symbol};

/// A reduced fraction in `[0, 1)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Angle {
    num: BigUint,
    den: BigUint,
}

/// Preperiod and period of an angle under doubling.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct OrbitShape {
    pub preperiod: usize,
    pub period: usize,
}

impl Angle {
    /// `num/den` reduced modulo 1.
    pub fn new(num: BigUint, den: BigUint) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::InvalidAngle("zero denominator".into()));
        }
        let num = num % &den;
        let g = num.gcd(&den);
        Ok(Angle {
            num: num / &g,
            den: den / &g,
        })
    }

    pub fn from_ratio(num: u64, den: u64) -> Result<Self> {
        Self::new(num.into(), den.into())
    }

    pub fn numerator(&self) -> &BigUint {
        &self.num
    }

    pub fn denominator(&self) -> &BigUint {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// `2θ mod 1`.
    pub fn double(&self) -> Angle {
        Angle::new(&self.num << 1u32, self.den.clone()).expect("nonzero denominator")
    }

    /// `θ + s·j/2^m mod 1` with `s = ±1`.
    pub fn offset(&self, j: u64, m: u32, negative: bool) -> Angle {
        let scale = BigUint::one() << m;
        let den = &self.den * &scale;
        let a = &self.num * &scale;
        let b = BigUint::from(j) * &self.den % &den;
        let num = if negative { (a + &den - b) % &den } else { (a + b) % &den };
        Angle::new(num, den).expect("nonzero denominator")
    }

    /// Circle distance `min(|θ−φ|, 1−|θ−φ|)` as an exact fraction `(num, den)`.
    pub fn distance(&self, other: &Angle) -> Fraction {
        let den = self.den.clone() * &other.den;
        let a = &self.num * &other.den;
        let b = &other.num * &self.den;
        let d = if a >= b { a - b } else { b - a };
        let alt = &den - &d;
        Fraction::new(d.min(alt), den)
    }

    pub fn to_f64(&self) -> f64 {
        ratio_to_f64(&self.num, &self.den)
    }

    pub fn orbit_shape(&self) -> OrbitShape {
        let v = self.den.trailing_zeros().unwrap_or(0) as usize;
        if self.num.is_zero() {
            return OrbitShape { preperiod: 0, period: 1 };
        }
        let odd = &self.den >> v;
        OrbitShape {
            preperiod: v,
            period: multiplicative_order_of_two(&odd),
        }
    }

    /// Raw orbit fact: some forward iterate returns exactly to `θ`.
    pub fn is_periodic(&self) -> bool {
        self.orbit_shape().preperiod == 0
    }
}

impl PartialOrd for Angle {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Angle {
    fn cmp(&self, other: &Self) -> Ordering {
        (&self.num * &other.den).cmp(&(&other.num * &self.den))
    }
}

fn multiplicative_order_of_two(odd: &BigUint) -> usize {
    if odd.is_one() {
        return 1;
    }
    let mut x = BigUint::from(2u32) % odd;
    let mut k = 1;
    while !x.is_one() {
        x = (x << 1u32) % odd;
        k += 1;
    }
    k
}

fn ratio_to_f64(num: &BigUint, den: &BigUint) -> f64 {
    let shift = den.bits().saturating_sub(960);
    let n = (num >> shift).to_f64().unwrap_or(f64::NAN);
    let d = (den >> shift).to_f64().unwrap_or(f64::NAN);
    n / d
}

/// Non-negative exact fraction used for distances.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fraction {
    pub num: BigUint,
    pub den: BigUint,
}

impl Fraction {
    pub fn new(num: BigUint, den: BigUint) -> Self {
        let g = num.gcd(&den);
        if g.is_zero() {
            return Fraction { num, den };
        }
        Fraction {
            num: num / &g,
            den: den / &g,
        }
    }

    pub fn to_f64(&self) -> f64 {
        ratio_to_f64(&self.num, &self.den)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for Angle {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (n, d) = s
            .split_once('/')
            .ok_or_else(|| Error::InvalidAngle(format!("{s:?}: expected p/q")))?;
        let parse = |t: &str| {
            t.trim()
                .parse::<BigUint>()
                .map_err(|_| Error::InvalidAngle(format!("{s:?}: {t:?} is not a non-negative integer")))
        };
        let (n, d) = (parse(n)?, parse(d)?);
        if n >= d {
            return Err(Error::InvalidAngle(format!("{s:?}: angle must lie in [0, 1)")));
        }
        Angle::new(n, d)
    }
}

impl serde::Serialize for Angle {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl serde::Serialize for Fraction {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Itinerary of `θ` under doubling with respect to the partition
/// `A_1 = (θ/2, (θ+1)/2)`, `A_0` its complement; boundary points give `*`.
pub fn kneading_of_angle(theta: &Angle) -> Result<KneadingSequence> {
    if theta.is_zero() {
        return Err(Error::InvalidAngle("angle 0 has no kneading sequence".into()));
    }
    let shape = theta.orbit_shape();
    let q = &theta.den;
    let a = &theta.num;
    let upper = a + q;
    let mut x = a.clone();
    let mut symbols = Vec::with_capacity(shape.preperiod + shape.period);
    for _ in 0..shape.preperiod + shape.period {
        // x/q is the current orbit point; compare 2x against a and a + q.
        let twice = &x << 1u32;
        let s = match (twice.cmp(a), twice.cmp(&upper)) {
            (Ordering::Equal, _) | (_, Ordering::Equal) => Symbol::Star,
            (Ordering::Greater, Ordering::Less) => Symbol::One,
            _ => Symbol::Zero,
        };
        symbols.push(s);
        x = twice % q;
    }
    debug_assert_eq!(symbols[0], Symbol::One, "theta lies in A_1");
    let per = symbols.split_off(shape.preperiod);
    KneadingSequence::from_itinerary(Itinerary::new(symbols, per)?)
}

/// Raw recurrence fact for a rational angle: it is periodic under doubling.
pub fn is_recurrent_angle(theta: &Angle) -> bool {
    theta.is_periodic()
}

/// Symbol of an orbit point relative to `θ`'s partition; used by tests that
/// audit the partition directly.
pub fn partition_symbol(theta: &Angle, x: &Angle) -> Symbol {
    // Compare 2x with θ and θ+1 over the common denominator.
    let l = &theta.num * &x.den;
    let r = (&theta.num + &theta.den) * &x.den;
    let twice = (&x.num << 1u32) * &theta.den;
    match (twice.cmp(&l), twice.cmp(&r)) {
        (Ordering::Equal, _) | (_, Ordering::Equal) => Symbol::Star,
        (Ordering::Greater, Ordering::Less) => Symbol::One,
        _ => Symbol::Zero,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequence::seq;

    fn ang(s: &str) -> Angle {
        s.parse().unwrap()
    }

    #[test]
    fn doubling() {
        assert_eq!(ang("1/3").double(), ang("2/3"));
        assert_eq!(ang("2/3").double(), ang("1/3"));
        assert!(ang("1/2").double().is_zero());
    }

    #[test]
    fn orbit_shapes() {
        assert_eq!(ang("1/3").orbit_shape(), OrbitShape { preperiod: 0, period: 2 });
        assert_eq!(ang("1/6").orbit_shape(), OrbitShape { preperiod: 1, period: 2 });
        assert_eq!(ang("1/2").orbit_shape(), OrbitShape { preperiod: 1, period: 1 });
        assert_eq!(ang("1/7").orbit_shape(), OrbitShape { preperiod: 0, period: 3 });
    }

    #[test]
    fn kneading_examples() {
        assert_eq!(kneading_of_angle(&ang("1/2")).unwrap(), seq("1(0)"));
        assert_eq!(kneading_of_angle(&ang("1/3")).unwrap(), seq("(1*)"));
        assert_eq!(kneading_of_angle(&ang("1/6")).unwrap(), seq("1(10)"));
        assert_eq!(kneading_of_angle(&ang("1/7")).unwrap(), seq("(11*)"));
        assert_eq!(kneading_of_angle(&ang("3/7")).unwrap(), seq("(10*)"));
        assert!(kneading_of_angle(&ang("0/5")).is_err());
    }

    #[test]
    fn recurrence() {
        assert!(!is_recurrent_angle(&ang("1/6")));
        assert!(is_recurrent_angle(&ang("1/3")));
        assert!(!is_recurrent_angle(&ang("1/2")));
    }

    #[test]
    fn parsing_and_offsets() {
        assert_eq!(ang("2/4"), ang("1/2"));
        assert!("3/2".parse::<Angle>().is_err());
        assert!("1/0".parse::<Angle>().is_err());
        assert!("x/3".parse::<Angle>().is_err());
        let t = ang("1/2");
        assert_eq!(t.offset(1, 3, false), ang("5/8"));
        assert_eq!(t.offset(1, 3, true), ang("3/8"));
        assert_eq!(ang("1/16").offset(1, 3, true), ang("15/16"));
        assert_eq!(ang("1/16").distance(&ang("15/16")).to_string(), "1/8");
    }
}
