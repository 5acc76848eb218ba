//! Weak-branch construction and the internal-address precedence certificate.

use serde::Serialize;

use crate::address::{
    address_past, address_to_kneading, internal_address, upper_lower, InternalAddress,
    DEFAULT_MAX_TERMS,
};
use crate::depth::Depth;
use crate::error::{Error, Result};
use crate::metric::{diff_max, diff_max_with_witness};
use crate::sequence::KneadingSequence;

/// Outcome of the sufficient precedence test.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Precedence {
    Yes,
    NoEvidence,
}

/// A `*`-periodic `μ` with `Diff(μ, ν) ≥ k` and `Diff(μ, ν′) ≥ k`, where
/// `k = Diff(ν, ν′)` must be finite.
///
/// The first candidate is the sequence of the longest common prefix of the
/// addresses of the comparison sequences `χ = π_e ν`, `χ′ = π_e ν′`. When
/// the upper sequence of that candidate and `χ′` live in different
/// projections its `Diff` to `ν′` can fall short of `k` (for example
/// `ν = 1(010)`, `ν′ = (10*)`, candidate `(1*)`); the longer prefixes of
/// either address are then tried in order of length.
pub fn weak_branch(nu: &KneadingSequence, nu_prime: &KneadingSequence) -> Result<KneadingSequence> {
    let (k, e) = match diff_max_with_witness(nu, nu_prime) {
        (Depth::Finite(k), e) => (k, e),
        _ => return Err(Error::InfiniteDiff),
    };
    let chi = nu.project(e);
    let chi_prime = nu_prime.project(e);
    let a = address_past(&chi, k);
    let b = address_past(&chi_prime, k);
    let common = a
        .entries()
        .iter()
        .zip(b.entries())
        .take_while(|(x, y)| x == y)
        .count();
    let meets = |mu: &KneadingSequence| diff_max(mu, nu) >= Depth::Finite(k) && diff_max(mu, nu_prime) >= Depth::Finite(k);
    let first = address_to_kneading(&a.prefix(common))?;
    if meets(&first) {
        return Ok(first);
    }
    let longest = a.len().max(b.len());
    for n in common + 1..=longest {
        for addr in [&a, &b] {
            if n > addr.len() {
                continue;
            }
            let mu = address_to_kneading(&addr.prefix(n))?;
            if meets(&mu) {
                return Ok(mu);
            }
        }
    }
    Err(Error::Postcondition(format!(
        "no address prefix of {chi} or {chi_prime} reaches Diff {k} with both {nu} and {nu_prime}"
    )))
}

/// `Yes` when the address of `μ` is a strict prefix of the address of `ν`,
/// or of its lower sequence when `ν` is `*`-periodic.
pub fn precedes_by_address(mu: &KneadingSequence, nu: &KneadingSequence) -> Result<Precedence> {
    if !mu.is_star_periodic() {
        return Err(Error::NotStarPeriodic);
    }
    if mu.is_trivial() {
        // The trivial sequence precedes everything non-trivial.
        return Ok(if nu.is_trivial() {
            Precedence::NoEvidence
        } else {
            Precedence::Yes
        });
    }
    if nu.is_trivial() {
        return Ok(Precedence::NoEvidence);
    }
    let am = internal_address(mu, DEFAULT_MAX_TERMS)?;
    let terms = DEFAULT_MAX_TERMS.max(am.len() + 1);
    let mut candidates: Vec<InternalAddress> = vec![internal_address(nu, terms)?];
    if nu.is_star_periodic() {
        let (_, low) = upper_lower(nu)?;
        candidates.push(crate::address::address_of_word(&low, terms)?);
    }
    Ok(if candidates.iter().any(|a| am.is_strict_prefix_of(a)) {
        Precedence::Yes
    } else {
        Precedence::NoEvidence
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequence::seq;

    #[test]
    fn weak_branch_examples() {
        let nu = seq("1(10)");
        let nu2 = seq("(1101*)");
        assert_eq!(diff_max(&nu, &nu2), Depth::Finite(7));
        let mu = weak_branch(&nu, &nu2).unwrap();
        assert_eq!(mu, seq("(1101*)"));

        let mu = weak_branch(&seq("(1*)"), &seq("1(0)")).unwrap();
        assert!(diff_max(&mu, &seq("(1*)")) >= Depth::Finite(3));

        assert_eq!(
            weak_branch(&seq("(101*)"), &seq("(1*)")),
            Err(Error::InfiniteDiff)
        );
    }

    #[test]
    fn precedence_examples() {
        assert_eq!(precedes_by_address(&seq("(11*)"), &seq("1(10)")).unwrap(), Precedence::Yes);
        assert_eq!(
            precedes_by_address(&seq("(1*)"), &seq("(1101*)")).unwrap(),
            Precedence::NoEvidence
        );
        let nu = seq("(1101*)");
        assert_eq!(precedes_by_address(&nu, &nu).unwrap(), Precedence::NoEvidence);
        assert_eq!(precedes_by_address(&seq("(1*)"), &seq("(101*)")).unwrap(), Precedence::Yes);
    }
}
