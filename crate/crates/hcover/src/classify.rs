//! Remainder-class behaviour of a graph H: the gamma / beta' / beta
//! thresholds, certification of idealness through the two strict-inequality
//! families, per-remainder pattern matching of the IP optima, and the
//! elementary-below / ideal-above shape check.

use crate::error::{Error, Result};
use crate::ip::{enumerate_optima, PartMultiset, DEFAULT_OPTIMA_CAP};
use crate::profile::CoverageProfile;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GammaBeta {
    pub gamma: usize,
    /// minimum k in 2..=n with a(k) <= k a(1); None when no such k exists
    pub beta_prime: Option<usize>,
    pub beta: Option<usize>,
}

pub fn gamma_beta(p: &CoverageProfile) -> Result<GammaBeta> {
    if p.t != 2 {
        return Err(Error::InvalidArgument(
            "gamma/beta thresholds are defined for t = 2".into(),
        ));
    }
    if !p.exact {
        return Err(Error::InvalidArgument(
            "gamma/beta thresholds need an exact profile".into(),
        ));
    }
    let n = p.n;
    let a1 = p.a[1];
    for k in 2..=n {
        if p.a[k] <= k as u64 * a1 {
            let beta = if p.a[k] == k as u64 * a1 { k + 1 } else { k };
            return Ok(GammaBeta {
                gamma: k - 1,
                beta_prime: Some(k),
                beta: Some(beta),
            });
        }
    }
    Ok(GammaBeta {
        gamma: n,
        beta_prime: None,
        beta: None,
    })
}

/// Which inequality family a certification failure came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum IdealCertificate {
    /// both inequality families hold strictly for this remainder; the IP
    /// optimum is uniquely {n^q, r} for every q >= 1
    Certified,
    /// a(k) + a(l) <= a(k+l) at the witness (k, l)
    ViolatedSubadditive { k: usize, l: usize },
    /// a(k) + a(l) <= a(n) + a(k+l-n) at the witness (k, l)
    ViolatedOverlap { k: usize, l: usize },
}

impl IdealCertificate {
    pub fn is_certified(&self) -> bool {
        matches!(self, IdealCertificate::Certified)
    }
}

/// Check the two strict-inequality families that certify remainder class r
/// as ideal: (I1) a(k) + a(l) > a(k+l) for all k, l >= 1 with k + l <= n,
/// and (I2) a(k) + a(l) > a(n) + a(r) for all k, l < n with k + l = n + r.
/// Non-strict ties count as violations (uniqueness may fail).
pub fn certify_ideal(p: &CoverageProfile, r: usize) -> Result<IdealCertificate> {
    if !p.exact {
        return Err(Error::InvalidArgument(
            "certification needs an exact profile".into(),
        ));
    }
    let n = p.n;
    if r >= n {
        return Err(Error::InvalidArgument(format!(
            "remainder {r} must be < n = {n}"
        )));
    }
    for k in 1..n {
        for l in k..n {
            if k + l > n {
                break;
            }
            if p.a[k] + p.a[l] <= p.a[k + l] {
                return Ok(IdealCertificate::ViolatedSubadditive { k, l });
            }
        }
    }
    for k in 1..n {
        let l = n + r - k;
        if l < k || l >= n {
            continue;
        }
        if p.a[k] + p.a[l] <= p.a[n] + p.a[r] {
            return Ok(IdealCertificate::ViolatedOverlap { k, l });
        }
    }
    Ok(IdealCertificate::Certified)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    /// certified through the strict inequalities, valid for every q
    IdealCertified,
    /// optima = {{n^q, r}} at every sampled q
    IdealPattern,
    /// optima = {{n^q, 1^r}} at every sampled q
    ElementaryPattern,
    /// exactly the two patterns tie (or r <= 1, where they coincide)
    BothPatterns,
    /// anything else; carries the optima seen at each sampled q
    Other(Vec<Vec<String>>),
}

#[derive(Clone, Debug, Serialize)]
pub struct RemainderEntry {
    pub r: usize,
    pub verdict: Verdict,
    /// true iff the per-q verdict was identical across the whole q sweep
    pub q_stable: bool,
    pub certificate: IdealCertificate,
    /// optima at each sampled q, rendered
    pub evidence: Vec<Vec<String>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Classification {
    pub n: usize,
    pub t: usize,
    pub gamma: usize,
    pub beta_prime: Option<usize>,
    pub beta: Option<usize>,
    pub q_max: usize,
    pub per_r: Vec<RemainderEntry>,
}

pub fn ideal_shape(n: usize, q: usize, r: usize) -> PartMultiset {
    let mut parts = vec![n; q];
    if r > 0 {
        parts.push(r);
    }
    PartMultiset::new(parts)
}

pub fn elementary_shape(n: usize, q: usize, r: usize) -> PartMultiset {
    let mut parts = vec![n; q];
    parts.extend(std::iter::repeat(1).take(r));
    PartMultiset::new(parts)
}

fn verdict_at(optima: &[PartMultiset], n: usize, q: usize, r: usize) -> Verdict {
    let ideal = ideal_shape(n, q, r);
    let elem = elementary_shape(n, q, r);
    let rendered = || vec![optima.iter().map(|m| m.to_string()).collect()];
    if ideal == elem {
        return if optima.len() == 1 && optima[0] == ideal {
            Verdict::BothPatterns
        } else {
            Verdict::Other(rendered())
        };
    }
    let has_ideal = optima.contains(&ideal);
    let has_elem = optima.contains(&elem);
    match (optima.len(), has_ideal, has_elem) {
        (1, true, _) => Verdict::IdealPattern,
        (1, _, true) => Verdict::ElementaryPattern,
        (2, true, true) => Verdict::BothPatterns,
        _ => Verdict::Other(rendered()),
    }
}

pub fn classify_remainders(p: &CoverageProfile, q_max: usize) -> Result<Classification> {
    if q_max == 0 {
        return Err(Error::InvalidArgument("q_max must be >= 1".into()));
    }
    let gb = gamma_beta(p)?;
    let n = p.n;
    let mut per_r = Vec::with_capacity(n);
    for r in 0..n {
        let certificate = certify_ideal(p, r)?;
        let mut verdicts = Vec::with_capacity(q_max);
        let mut evidence = Vec::with_capacity(q_max);
        for q in 1..=q_max {
            let (optima, _) = enumerate_optima(p, q * n + r, DEFAULT_OPTIMA_CAP)?;
            verdicts.push(verdict_at(&optima, n, q, r));
            evidence.push(optima.iter().map(|m| m.to_string()).collect());
        }
        let q_stable = verdicts.windows(2).all(|w| w[0] == w[1]);
        let verdict = if certificate.is_certified() {
            Verdict::IdealCertified
        } else if q_stable {
            verdicts[0].clone()
        } else {
            Verdict::Other(evidence.clone())
        };
        per_r.push(RemainderEntry {
            r,
            verdict,
            q_stable: q_stable || certificate.is_certified(),
            certificate,
            evidence,
        });
    }
    Ok(Classification {
        n,
        t: p.t,
        gamma: gb.gamma,
        beta_prime: gb.beta_prime,
        beta: gb.beta,
        q_max,
        per_r,
    })
}

/// What the shape check expected for a remainder class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum ShapeExpectation {
    /// r <= gamma: unique optimum {n^q, 1^r}
    Elementary,
    /// r >= beta: unique optimum {n^q, r}
    Ideal,
    /// the single r strictly between gamma and beta (present only when
    /// beta = beta' + 1): both patterns optimal
    Both,
}

#[derive(Clone, Debug, Serialize)]
pub struct ShapeDeviation {
    pub r: usize,
    pub q: usize,
    pub expected: ShapeExpectation,
    pub found: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Theorem3Report {
    pub gamma: usize,
    pub beta_prime: Option<usize>,
    pub beta: Option<usize>,
    pub q_max: usize,
    pub deviations: Vec<ShapeDeviation>,
}

impl Theorem3Report {
    pub fn passes(&self) -> bool {
        self.deviations.is_empty()
    }
}

/// Verify the elementary-below-gamma / ideal-above-beta split at the IP
/// level for q in 1..=q_max, reporting every deviation with the optima that
/// were actually found.
pub fn check_theorem3_shape(p: &CoverageProfile, q_max: usize) -> Result<Theorem3Report> {
    if q_max == 0 {
        return Err(Error::InvalidArgument("q_max must be >= 1".into()));
    }
    let gb = gamma_beta(p)?;
    let n = p.n;
    let mut deviations = Vec::new();
    for r in 0..n {
        let expected = if r <= gb.gamma {
            ShapeExpectation::Elementary
        } else if gb.beta.is_some_and(|b| r >= b) {
            ShapeExpectation::Ideal
        } else {
            ShapeExpectation::Both
        };
        for q in 1..=q_max {
            let (optima, _) = enumerate_optima(p, q * n + r, DEFAULT_OPTIMA_CAP)?;
            let ideal = ideal_shape(n, q, r);
            let elem = elementary_shape(n, q, r);
            let ok = match expected {
                ShapeExpectation::Elementary => optima.len() == 1 && optima[0] == elem,
                ShapeExpectation::Ideal => optima.len() == 1 && optima[0] == ideal,
                ShapeExpectation::Both => optima.contains(&ideal) && optima.contains(&elem),
            };
            if !ok {
                deviations.push(ShapeDeviation {
                    r,
                    q,
                    expected: expected.clone(),
                    found: optima.iter().map(|m| m.to_string()).collect(),
                });
            }
        }
    }
    Ok(Theorem3Report {
        gamma: gb.gamma,
        beta_prime: gb.beta_prime,
        beta: gb.beta,
        q_max,
        deviations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::pendant_graph;
    use crate::graph::{complete, cycle, disjoint_union, path};
    use crate::ip::enumerate_optima;
    use crate::profile::profile_exact;

    #[test]
    fn gamma_beta_examples() {
        let p = profile_exact(&complete(4), 2).unwrap();
        assert_eq!(p.a, vec![0, 3, 5, 6, 6]);
        let gb = gamma_beta(&p).unwrap();
        assert_eq!((gb.gamma, gb.beta_prime, gb.beta), (1, Some(2), Some(2)));

        let p = profile_exact(&path(4), 2).unwrap();
        assert_eq!(p.a, vec![0, 1, 2, 3, 3]);
        let gb = gamma_beta(&p).unwrap();
        assert_eq!((gb.gamma, gb.beta_prime, gb.beta), (1, Some(2), Some(3)));

        let p = profile_exact(&cycle(5), 2).unwrap();
        let gb = gamma_beta(&p).unwrap();
        assert_eq!((gb.gamma, gb.beta_prime, gb.beta), (1, Some(2), Some(2)));

        let p3 = profile_exact(&cycle(5), 3).unwrap();
        assert!(gamma_beta(&p3).is_err());
    }

    #[test]
    fn beta_gamma_spacing() {
        for g in [complete(4), cycle(5), path(4), pendant_graph(4), cycle(6)] {
            let p = profile_exact(&g, 2).unwrap();
            let gb = gamma_beta(&p).unwrap();
            if let Some(b) = gb.beta {
                assert!(b == gb.gamma + 1 || b == gb.gamma + 2);
            }
        }
    }

    #[test]
    fn certify_examples() {
        for n in 3..=6 {
            let p = profile_exact(&complete(n), 2).unwrap();
            for r in 0..n {
                assert!(certify_ideal(&p, r).unwrap().is_certified());
            }
        }

        let p = profile_exact(&cycle(5), 2).unwrap();
        for r in 0..5 {
            assert!(certify_ideal(&p, r).unwrap().is_certified());
        }

        let h = disjoint_union(&[cycle(4), cycle(5)]).unwrap();
        let p = profile_exact(&h, 2).unwrap();
        // a(4) + a(5) = 4 + 5 = 9 = a(9): the subadditive family fails
        assert_eq!(p.a[4] + p.a[5], p.a[9]);
        for r in 0..9 {
            let cert = certify_ideal(&p, r).unwrap();
            assert!(!cert.is_certified());
            match cert {
                IdealCertificate::ViolatedSubadditive { k, l } => {
                    assert!(p.a[k] + p.a[l] <= p.a[k + l]);
                }
                IdealCertificate::ViolatedOverlap { k, l } => {
                    assert!(p.a[k] + p.a[l] <= p.a[9] + p.a[k + l - 9]);
                }
                IdealCertificate::Certified => unreachable!(),
            }
        }
    }

    #[test]
    fn certificate_soundness_at_ip_level() {
        for g in [complete(4), cycle(5), complete(5)] {
            let p = profile_exact(&g, 2).unwrap();
            let n = p.n;
            for r in 0..n {
                if !certify_ideal(&p, r).unwrap().is_certified() {
                    continue;
                }
                for q in 1..=3 {
                    let (optima, _) = enumerate_optima(&p, q * n + r, 1000).unwrap();
                    assert_eq!(optima, vec![ideal_shape(n, q, r)]);
                }
            }
        }
    }

    #[test]
    fn classify_examples() {
        let h = pendant_graph(4);
        let p = profile_exact(&h, 2).unwrap();
        let c = classify_remainders(&p, 1).unwrap();
        assert_eq!(c.per_r[2].verdict, Verdict::ElementaryPattern);
        assert_eq!(c.per_r[2].evidence, vec![vec!["[5, 1, 1]".to_string()]]);
        assert_eq!(c.per_r[1].verdict, Verdict::BothPatterns);

        // at larger q the optimum switches to one H plus all-pendant parts
        // ({5, 1^7} at N = 12), so the q sweep honestly reports instability
        let c = classify_remainders(&p, 2).unwrap();
        assert!(!c.per_r[2].q_stable);
        assert!(c.per_r[2].evidence[1].contains(&"[5, 1, 1, 1, 1, 1, 1, 1]".to_string()));

        let h = disjoint_union(&[cycle(4), cycle(5)]).unwrap();
        let p = profile_exact(&h, 2).unwrap();
        let c = classify_remainders(&p, 1).unwrap();
        match &c.per_r[4].verdict {
            Verdict::Other(ev) => {
                assert!(ev[0].contains(&"[9, 4]".to_string()));
                assert!(ev[0].contains(&"[5, 4, 4]".to_string()));
            }
            v => panic!("expected Other, got {v:?}"),
        }

        let p = profile_exact(&cycle(5), 2).unwrap();
        let c = classify_remainders(&p, 2).unwrap();
        for e in &c.per_r {
            assert_eq!(e.verdict, Verdict::IdealCertified);
        }
    }

    #[test]
    fn theorem3_shape_examples() {
        // K_n: gamma = 1 region trivial, all r >= 2 ideal-pattern
        let p = profile_exact(&complete(5), 2).unwrap();
        let rep = check_theorem3_shape(&p, 2).unwrap();
        assert_eq!(rep.gamma, 1);
        assert_eq!(rep.beta, Some(2));
        assert!(rep.passes());

        // P_4: equality branch puts r = 2 in between with both patterns tied;
        // r = 3 deviates because a(3) = a(2) + a(1) ties, and the deviation
        // carries the tied optima as witness
        let p = profile_exact(&path(4), 2).unwrap();
        let rep = check_theorem3_shape(&p, 2).unwrap();
        assert_eq!((rep.gamma, rep.beta), (1, Some(3)));
        assert!(rep.deviations.iter().all(|d| d.r == 3));
        assert!(!rep.deviations.is_empty());
        assert!(rep.deviations[0].found.contains(&"[4, 3]".to_string()));
        assert!(rep.deviations[0].found.contains(&"[4, 2, 1]".to_string()));
        let (optima, _) = enumerate_optima(&p, 6, 100).unwrap();
        assert!(optima.contains(&PartMultiset::new(vec![4, 2])));
        assert!(optima.contains(&PartMultiset::new(vec![4, 1, 1])));
    }
}
