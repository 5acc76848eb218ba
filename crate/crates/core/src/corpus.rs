//! Seeded random corpora of kneading sequences for batch experiments.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::address::{address_of_word, address_to_kneading, internal_address, upper_lower};
use crate::branch::{precedes_by_address, Precedence};
use crate::sequence::{KneadingSequence, Symbol};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn bit<R: Rng>(rng: &mut R) -> Symbol {
    if rng.random::<bool>() {
        Symbol::One
    } else {
        Symbol::Zero
    }
}

/// `(1 w *)` with `w` uniform in `{0,1}^{p−2}`; period exactly `p >= 2`.
pub fn random_star_periodic<R: Rng>(rng: &mut R, p: usize) -> KneadingSequence {
    assert!(p >= 2);
    let mut w = vec![Symbol::One];
    w.extend((0..p - 2).map(|_| bit(rng)));
    KneadingSequence::star_periodic(w).expect("one star at the end")
}

/// A strictly preperiodic sequence with preperiod in `1..=max_pre` and
/// period in `1..=max_per` before canonicalization.
pub fn random_preperiodic<R: Rng>(rng: &mut R, max_pre: usize, max_per: usize) -> KneadingSequence {
    loop {
        let pre_len = rng.random_range(1..=max_pre);
        let per_len = rng.random_range(1..=max_per);
        let mut pre = vec![Symbol::One];
        pre.extend((1..pre_len).map(|_| bit(rng)));
        let per = (0..per_len).map(|_| bit(rng)).collect();
        if let Ok(nu) = KneadingSequence::new(pre, per) {
            if nu.is_preperiodic() {
                return nu;
            }
        }
    }
}

/// Half `*`-periodic (period `2..=max_period`), half preperiodic (period
/// `<= max_period`), no duplicates.
pub fn eventually_periodic_corpus(seed: u64, count: usize, max_period: usize) -> Vec<KneadingSequence> {
    let mut r = rng(seed);
    let mut out: Vec<KneadingSequence> = Vec::with_capacity(count);
    let mut seen = std::collections::HashSet::new();
    while out.len() < count {
        let nu = if out.len().is_multiple_of(2) {
            let p = r.random_range(2..=max_period);
            random_star_periodic(&mut r, p)
        } else {
            random_preperiodic(&mut r, 5, max_period)
        };
        if seen.insert(nu.clone()) {
            out.push(nu);
        }
    }
    out
}

/// Pairs `(μ, ν)` with `μ ≺ ν` certified by internal addresses: `μ` is the
/// `*`-periodic sequence of a proper prefix (length >= 2) of the address of
/// `ν` or of its lower sequence.
pub fn certified_pairs(seed: u64, count: usize, max_period: usize) -> Vec<(KneadingSequence, KneadingSequence)> {
    let mut r = rng(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let nu = if r.random::<bool>() {
            let p = r.random_range(3..=max_period);
            random_star_periodic(&mut r, p)
        } else {
            random_preperiodic(&mut r, 4, max_period)
        };
        let mut addr = internal_address(&nu, 12).expect("non-trivial");
        if nu.is_star_periodic() && r.random::<bool>() {
            let (_, low) = upper_lower(&nu).expect("star-periodic");
            addr = address_of_word(&low, 12).expect("star-free");
        }
        if addr.len() < 3 {
            continue;
        }
        let n = r.random_range(2..addr.len());
        let Ok(mu) = address_to_kneading(&addr.prefix(n)) else {
            continue;
        };
        if mu.period_len() > 16 {
            continue;
        }
        if precedes_by_address(&mu, &nu) == Ok(Precedence::Yes) {
            out.push((mu, nu));
        }
    }
    out
}

/// Pairs `(μ, η)` with `μ` `*`-periodic of period `2..=p_max` and `η`
/// non-trivial, either `*`-periodic or preperiodic.
pub fn tuning_pairs(seed: u64, count: usize, p_max: usize) -> Vec<(KneadingSequence, KneadingSequence)> {
    let mut r = rng(seed);
    (0..count)
        .map(|_| {
            let p = r.random_range(2..=p_max);
            let mu = random_star_periodic(&mut r, p);
            let eta = if r.random::<bool>() {
                let q = r.random_range(2..=5);
                random_star_periodic(&mut r, q)
            } else {
                random_preperiodic(&mut r, 3, 3)
            };
            (mu, eta)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpora_are_seeded_and_valid() {
        let a = eventually_periodic_corpus(7, 50, 10);
        assert_eq!(a, eventually_periodic_corpus(7, 50, 10));
        assert!(a.iter().all(|n| n.require_critical_orbit().is_ok() && n.period_len() <= 10));
        let pairs = certified_pairs(3, 20, 8);
        assert_eq!(pairs.len(), 20);
        assert!(pairs.iter().all(|(m, _)| !m.is_trivial()));
    }
}
