//! Renormalization: detection, de-renormalization, tuning and the entropy
//! identity `h(ν) = max(h(μ), h(η)/p)`.

use num_integer::Integer;
use serde::Serialize;

use crate::address::upper_lower_with_symbol;
use crate::branch::{precedes_by_address, Precedence};
use crate::entropy::entropy_exact;
use crate::error::{Error, Result};
use crate::sequence::{Itinerary, KneadingSequence, Symbol};

pub const IDENTITY_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Projection {
    Upper,
    Lower,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RenormalizationCertificate {
    pub p: usize,
    /// Base sequence `μ`, `*`-periodic of period `p`.
    pub base: KneadingSequence,
    /// Which projection of `μ` the free-position pattern of `ν` follows.
    pub dynamical_projection: Projection,
    #[serde(skip)]
    pub dynamical: Itinerary,
    /// De-renormalized sequence.
    pub eta: KneadingSequence,
    /// Whether the address certificate for `μ ≺ ν` was found.
    pub certified: bool,
}

/// The subsequence `ν_p ν_{2p} ν_{3p} …`, relabeled (`0 ↔ 1`) if needed so
/// that it starts with `1`. Relabeling leaves entropy unchanged.
pub fn derenormalize(nu: &KneadingSequence, p: usize) -> Result<KneadingSequence> {
    if p < 2 {
        return Err(Error::InvalidSequence("renormalization period must be at least 2".into()));
    }
    let it = nu.itinerary();
    let pre = it.preperiod_len().div_ceil(p);
    let per = it.period_len() / it.period_len().gcd(&p);
    let mut sub = Itinerary::from_fn(pre, per, |k| it.symbol(k * p))?;
    if sub.symbol(1) == Symbol::Zero {
        sub = sub.relabeled();
    }
    KneadingSequence::from_itinerary(sub)
}

/// The `*`-periodic word `ν_1 … ν_{p−1} *`.
fn candidate_base(nu: &KneadingSequence, p: usize) -> Result<KneadingSequence> {
    KneadingSequence::star_periodic((1..p).map(|k| nu.entry(k)).collect())
}

fn off_multiples_periodic(nu: &KneadingSequence, p: usize) -> bool {
    let it = nu.itinerary();
    let window = it.preperiod_len() + it.period_len().lcm(&p) + p;
    (1..=window)
        .filter(|m| m % p != 0)
        .all(|m| it.symbol(m) == it.symbol(m % p))
}

/// Default largest period tried by [`detect_renormalizable`].
pub fn default_p_max(nu: &KneadingSequence) -> usize {
    if nu.is_star_periodic() {
        nu.period_len()
    } else {
        nu.preperiod_len() + nu.period_len()
    }
}

/// Certificates for every `p` in `2..=p_max` at which `ν` agrees with a
/// `p`-periodic pattern off the multiples of `p` and `σ^p ν ≠ ν`.
pub fn detect_renormalizable(
    nu: &KneadingSequence,
    p_max: Option<usize>,
) -> Result<Vec<RenormalizationCertificate>> {
    nu.require_critical_orbit()?;
    let p_max = p_max.unwrap_or_else(|| default_p_max(nu));
    let mut out = Vec::new();
    for p in 2..=p_max {
        if !off_multiples_periodic(nu, p) {
            continue;
        }
        if nu.itinerary().shift(p) == *nu.itinerary() {
            continue;
        }
        if nu.is_star_periodic() && nu.period_len() <= p {
            continue;
        }
        let base = candidate_base(nu, p)?;
        let (up, low, e) = upper_lower_with_symbol(&base)?;
        let (dynamical_projection, dynamical) = if nu.entry(p) == up.symbol(p) {
            (Projection::Upper, up)
        } else {
            debug_assert_eq!(e.flipped(), nu.entry(p));
            (Projection::Lower, low)
        };
        let certified = precedes_by_address(&base, nu)? == Precedence::Yes;
        out.push(RenormalizationCertificate {
            p,
            base,
            dynamical_projection,
            dynamical,
            eta: derenormalize(nu, p)?,
            certified,
        });
    }
    Ok(out)
}

/// Inverse of de-renormalization: the entries of `μ` off the multiples of
/// `p`, and `η_k` at position `kp`. `η` is written in the labeling where
/// its first symbol continues the upper sequence of `μ`, so that
/// `derenormalize(tune(μ, η), p) = η`.
pub fn tune(mu: &KneadingSequence, eta: &KneadingSequence) -> Result<KneadingSequence> {
    if !mu.is_star_periodic() || mu.is_trivial() {
        return Err(Error::InvalidTuning(format!("base {mu} must be non-trivial and *-periodic")));
    }
    if eta.is_trivial() {
        return Err(Error::InvalidTuning("cannot tune with the trivial sequence".into()));
    }
    let p = mu.period_len();
    let (up, _, _) = upper_lower_with_symbol(mu)?;
    let flip = up.symbol(p) == Symbol::Zero;
    let eta_at = |k: usize| {
        let s = eta.entry(k);
        if flip {
            s.flipped()
        } else {
            s
        }
    };
    let word = Itinerary::from_fn(p * eta.preperiod_len(), p * eta.period_len(), |m| {
        if m % p == 0 {
            eta_at(m / p)
        } else {
            mu.entry(m)
        }
    })?;
    KneadingSequence::from_itinerary(word.clone())
        .map_err(|e| Error::InvalidTuning(format!("{word}: {e}")))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IdentityReport {
    pub p: usize,
    pub h_nu: f64,
    pub h_mu: f64,
    pub h_eta: f64,
    pub residual: f64,
    /// False for uncertified certificates, which are reported only.
    pub asserted: bool,
}

/// Checks `|h(ν) − max(h(μ), h(η)/p)| < 1e-9` for a certified certificate.
pub fn entropy_identity_check(
    nu: &KneadingSequence,
    cert: &RenormalizationCertificate,
) -> Result<IdentityReport> {
    let h_nu = entropy_exact(nu)?.value;
    let h_mu = entropy_exact(&cert.base)?.value;
    let h_eta = if cert.eta.is_trivial() {
        0.0
    } else {
        entropy_exact(&cert.eta)?.value
    };
    let predicted = h_mu.max(h_eta / cert.p as f64);
    let residual = (h_nu - predicted).abs();
    if cert.certified && residual >= IDENTITY_TOLERANCE {
        return Err(Error::IdentityViolation {
            nu: nu.to_string(),
            h_nu,
            h_mu,
            h_eta_over_p: h_eta / cert.p as f64,
        });
    }
    Ok(IdentityReport {
        p: cert.p,
        h_nu,
        h_mu,
        h_eta,
        residual,
        asserted: cert.certified,
    })
}

/// Repeatedly de-renormalizes by the smallest certified period until no
/// certified period remains. Returns the `(p, η)` steps.
pub fn renormalization_chain(nu: &KneadingSequence) -> Result<Vec<(usize, KneadingSequence)>> {
    let mut chain = Vec::new();
    let mut cur = nu.clone();
    loop {
        if cur.is_trivial() {
            break;
        }
        let next = detect_renormalizable(&cur, None)?
            .into_iter()
            .find(|c| c.certified);
        match next {
            Some(c) => {
                chain.push((c.p, c.eta.clone()));
                cur = c.eta;
            }
            None => break,
        }
    }
    Ok(chain)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::address::{address_to_kneading, internal_address};
    use crate::sequence::seq;

    #[test]
    fn derenormalize_examples() {
        assert_eq!(derenormalize(&seq("11(10)"), 2).unwrap(), seq("1(0)"));
        assert!(derenormalize(&seq("(1*)"), 2).unwrap().is_trivial());
        assert_eq!(derenormalize(&seq("10(1)"), 2).unwrap(), seq("1(0)"));
    }

    #[test]
    fn detection_examples() {
        let c = detect_renormalizable(&seq("11(10)"), Some(4)).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!((c[0].p, &c[0].base, &c[0].eta), (2, &seq("(1*)"), &seq("1(0)")));
        // The address of 11(10) is 1-4-..., so (1*) = 1-2 is not certified.
        assert_eq!(internal_address(&seq("11(10)"), 2).unwrap().entries(), &[1, 4]);
        assert!(!c[0].certified);

        assert!(detect_renormalizable(&seq("1(10)"), None).unwrap().is_empty());

        let cascade = address_to_kneading(&"1-2-4".parse().unwrap()).unwrap();
        let c = detect_renormalizable(&cascade, None).unwrap();
        assert_eq!(c[0].p, 2);
        assert_eq!(c[0].base, seq("(1*)"));
        assert!(c[0].certified);
        assert_eq!(c[0].dynamical_projection, Projection::Upper);
    }

    #[test]
    fn tuning_examples() {
        let nu = tune(&seq("(1*)"), &seq("1(0)")).unwrap();
        assert_eq!(nu, seq("10(1)"));
        assert_eq!(derenormalize(&nu, 2).unwrap(), seq("1(0)"));
        let c = detect_renormalizable(&nu, None).unwrap();
        assert!(c.iter().any(|c| c.p == 2 && c.certified));

        let nu = tune(&seq("(1*)"), &seq("(1*)")).unwrap();
        assert_eq!(nu, address_to_kneading(&"1-2-4".parse().unwrap()).unwrap());
        assert!(tune(&seq("(1*)"), &seq("(*)")).is_err());
    }

    #[test]
    fn identity_examples() {
        let nu = tune(&seq("(1*)"), &seq("1(0)")).unwrap();
        let cert = detect_renormalizable(&nu, None).unwrap().remove(0);
        let r = entropy_identity_check(&nu, &cert).unwrap();
        assert!((r.h_nu - std::f64::consts::LN_2 / 2.0).abs() < 1e-9);

        let nu = tune(&seq("(1*)"), &seq("(101*)")).unwrap();
        for cert in detect_renormalizable(&nu, None).unwrap() {
            let r = entropy_identity_check(&nu, &cert).unwrap();
            assert!(r.h_nu < 1e-10);
        }
    }

    #[test]
    fn chain_terminates_at_non_renormalizable() {
        let nu = address_to_kneading(&"1-2-4-8".parse().unwrap()).unwrap();
        let chain = renormalization_chain(&nu).unwrap();
        let etas: Vec<String> = chain.iter().map(|(_, e)| e.to_string()).collect();
        assert_eq!(etas, ["(101*)", "(1*)"]);
        assert!(chain.iter().all(|(p, _)| *p == 2));
    }
}
