//! Coverage profile a_t(k) and density profile e_t(k) of a graph H: the
//! minimum K_t-coverage of a k-set and the maximum K_t count inside an
//! induced k-subset, computed exactly by a full subset sweep or
//! heuristically with certified bound directions.

use crate::error::{Error, Result};
use crate::graph::{mask_to_vertices, set_lex_less, Graph};
use rand::{seq::SliceRandom, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

pub const EXACT_MAX_T2: usize = 24;
pub const EXACT_MAX_T3: usize = 20;

#[derive(Clone, Debug)]
pub struct CoverageProfile {
    pub n: usize,
    pub t: usize,
    /// c_t(H)
    pub total: u64,
    /// a[k] for k = 0..=n: minimum number of K_t copies meeting a k-set
    pub a: Vec<u64>,
    /// e[k] for k = 0..=n: maximum number of K_t copies inside a k-subset
    pub e: Vec<u64>,
    pub exact: bool,
    /// one k-set attaining a[k], as a mask, per k
    pub witness_a: Vec<u64>,
    /// one k-set attaining e[k], as a mask, per k
    pub witness_e: Vec<u64>,
}

/// Exact rational with 64-bit numerator/denominator; comparisons go through
/// i128 cross-multiplication, no floating point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Ratio {
    pub num: i64,
    pub den: i64,
}

impl Ratio {
    pub fn new(num: i64, den: i64) -> Ratio {
        assert!(den > 0);
        let g = gcd(num.unsigned_abs(), den.unsigned_abs()).max(1);
        Ratio {
            num: num / g as i64,
            den: den / g as i64,
        }
    }

    pub fn cmp_ratio(&self, other: &Ratio) -> std::cmp::Ordering {
        (self.num as i128 * other.den as i128).cmp(&(other.num as i128 * self.den as i128))
    }

    /// Ceiling of self * m.
    pub fn ceil_mul(&self, m: u64) -> u64 {
        let p = self.num as i128 * m as i128;
        let d = self.den as i128;
        (p.div_euclid(d) + if p.rem_euclid(d) != 0 { 1 } else { 0 }) as u64
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl std::fmt::Display for Ratio {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

/// Number of K_t copies of `h` meeting the set A: c_t(h) - c_t(h - A).
pub fn a_of_set(h: &Graph, t: usize, a_mask: u64) -> u64 {
    let full = h.full_mask();
    h.cliques_in(t, full) - h.cliques_in(t, full & !a_mask)
}

/// Independent direct minimization of a_of_set over all k-subsets. Test
/// oracle for the e-first sweep; deliberately does not share its code path.
pub fn a_direct_min(h: &Graph, t: usize, k: usize) -> u64 {
    assert!(k <= h.n());
    if k == 0 {
        return 0;
    }
    let n = h.n();
    let mut best = u64::MAX;
    // enumerate k-subsets by Gosper's hack
    let mut mask: u64 = (1u64 << k) - 1;
    let limit = 1u64 << n;
    while mask < limit {
        let v = a_of_set(h, t, mask);
        if v < best {
            best = v;
        }
        let c = mask & mask.wrapping_neg();
        let r = mask + c;
        mask = (((r ^ mask) >> 2) / c) | r;
    }
    best
}

struct Sweep<'g> {
    h: &'g Graph,
    t: usize,
    e: Vec<u64>,
    wit_e: Vec<u64>,
    /// per size, the attaining mask whose complement is set-lex smallest
    wit_compl: Vec<u64>,
    seen: Vec<bool>,
}

impl<'g> Sweep<'g> {
    fn leaf(&mut self, mask: u64, count: u64) {
        let k = mask.count_ones() as usize;
        let full = self.h.full_mask();
        if !self.seen[k] || count > self.e[k] {
            self.seen[k] = true;
            self.e[k] = count;
            self.wit_e[k] = mask;
            self.wit_compl[k] = mask;
        } else if count == self.e[k] {
            if set_lex_less(mask, self.wit_e[k]) {
                self.wit_e[k] = mask;
            }
            if set_lex_less(full & !mask, full & !self.wit_compl[k]) {
                self.wit_compl[k] = mask;
            }
        }
    }

    fn rec(&mut self, v: usize, mask: u64, count: u64) {
        if v == self.h.n() {
            self.leaf(mask, count);
            return;
        }
        self.rec(v + 1, mask, count);
        let added = if self.t == 1 {
            1
        } else if self.t == 2 {
            (mask & self.h.neighbors(v)).count_ones() as u64
        } else {
            self.h.cliques_in(self.t - 1, mask & self.h.neighbors(v))
        };
        self.rec(v + 1, mask | (1u64 << v), count + added);
    }
}

/// Exact profile by a full sweep over induced subsets with incremental
/// clique-count updates; a[k] derived via a[k] = total - e[n-k].
pub fn profile_exact(h: &Graph, t: usize) -> Result<CoverageProfile> {
    profile_exact_with_limit(h, t, None)
}

pub fn profile_exact_with_limit(
    h: &Graph,
    t: usize,
    exact_max: Option<usize>,
) -> Result<CoverageProfile> {
    if t == 0 {
        return Err(Error::InvalidArgument("clique order t must be >= 1".into()));
    }
    let n = h.n();
    let limit = exact_max.unwrap_or(if t == 2 { EXACT_MAX_T2 } else { EXACT_MAX_T3 });
    if n > limit {
        return Err(Error::SizeLimit(format!(
            "n = {} exceeds exact profile limit {}; use profile_heuristic",
            n, limit
        )));
    }
    let mut sweep = Sweep {
        h,
        t,
        e: vec![0; n + 1],
        wit_e: vec![0; n + 1],
        wit_compl: vec![0; n + 1],
        seen: vec![false; n + 1],
    };
    sweep.rec(0, 0, 0);
    let total = sweep.e[n];
    let full = h.full_mask();
    let a: Vec<u64> = (0..=n).map(|k| total - sweep.e[n - k]).collect();
    let witness_a: Vec<u64> = (0..=n).map(|k| full & !sweep.wit_compl[n - k]).collect();
    Ok(CoverageProfile {
        n,
        t,
        total,
        a,
        e: sweep.e,
        exact: true,
        witness_a,
        witness_e: sweep.wit_e,
    })
}

/// Heuristic profile for large n: e[k] is a certified lower bound on the
/// maximum (greedy densest extension plus swap local search over seeded
/// restarts), a[k] the corresponding upper bound via duality.
pub fn profile_heuristic(h: &Graph, t: usize, effort: usize) -> Result<CoverageProfile> {
    if t == 0 {
        return Err(Error::InvalidArgument("clique order t must be >= 1".into()));
    }
    let n = h.n();
    let total = h.cliques_in(t, h.full_mask());
    let mut e = vec![0u64; n + 1];
    let mut wit = vec![0u64; n + 1];
    e[n] = total;
    wit[n] = h.full_mask();

    let count_in = |mask: u64| h.cliques_in(t, mask);
    let restarts = effort.max(1);
    for restart in 0..restarts {
        let mut rng = ChaCha8Rng::seed_from_u64(restart as u64);
        let mut mask = 0u64;
        let mut count = 0u64;
        // greedy densest extension with randomized tie-breaks
        for k in 1..=n {
            let mut best_gain = 0u64;
            let mut best: Vec<usize> = Vec::new();
            for v in 0..n {
                if mask & (1u64 << v) != 0 {
                    continue;
                }
                let gain = if t == 1 {
                    1
                } else {
                    h.cliques_in(t - 1, mask & h.neighbors(v))
                };
                if best.is_empty() || gain > best_gain {
                    best_gain = gain;
                    best = vec![v];
                } else if gain == best_gain {
                    best.push(v);
                }
            }
            let v = if restart == 0 {
                best[0]
            } else {
                *best.choose(&mut rng).unwrap()
            };
            mask |= 1u64 << v;
            count += best_gain;
            // swap local search: strictly improving one-in/one-out exchanges
            let mut improved = true;
            while improved {
                improved = false;
                'scan: for out in mask_to_vertices(mask) {
                    for add in 0..n {
                        if mask & (1u64 << add) != 0 {
                            continue;
                        }
                        let cand = (mask & !(1u64 << out)) | (1u64 << add);
                        let c = count_in(cand);
                        if c > count {
                            mask = cand;
                            count = c;
                            improved = true;
                            break 'scan; // restart the scan on the new set
                        }
                    }
                }
            }
            if count > e[k] {
                e[k] = count;
                wit[k] = mask;
            } else if count == e[k] && wit[k] != mask && set_lex_less(mask, wit[k]) {
                wit[k] = mask;
            }
        }
    }
    // monotonicity repair: e non-decreasing by prefix maxima
    for k in 1..=n {
        if e[k] < e[k - 1] {
            e[k] = e[k - 1];
            let extra = (0..n).find(|&v| wit[k - 1] & (1u64 << v) == 0).unwrap();
            wit[k] = wit[k - 1] | (1u64 << extra);
        }
    }
    let full = h.full_mask();
    let a: Vec<u64> = (0..=n).map(|k| total - e[n - k]).collect();
    let witness_a: Vec<u64> = (0..=n).map(|k| full & !wit[n - k]).collect();
    Ok(CoverageProfile {
        n,
        t,
        total,
        a,
        e,
        exact: false,
        witness_a,
        witness_e: wit,
    })
}

/// Exact rational minimum of a[k]/k over k in [1..n] with all attaining k.
pub fn ratio_min(p: &CoverageProfile) -> (Ratio, Vec<usize>) {
    let mut best = Ratio::new(p.a[1] as i64, 1);
    let mut argmin = vec![1usize];
    for k in 2..=p.n {
        let r = Ratio::new(p.a[k] as i64, k as i64);
        match r.cmp_ratio(&best) {
            std::cmp::Ordering::Less => {
                best = r;
                argmin = vec![k];
            }
            std::cmp::Ordering::Equal => argmin.push(k),
            std::cmp::Ordering::Greater => {}
        }
    }
    (best, argmin)
}

#[derive(Clone, Debug, Serialize)]
pub struct PredicateOutcome {
    pub holds: bool,
    /// (k, l) pair witnessing a failure, l = 0 for single-index predicates
    pub witness: Option<(usize, usize)>,
}

impl PredicateOutcome {
    fn pass() -> Self {
        PredicateOutcome {
            holds: true,
            witness: None,
        }
    }
    fn fail(k: usize, l: usize) -> Self {
        PredicateOutcome {
            holds: false,
            witness: Some((k, l)),
        }
    }
}

/// Report of the structural predicates for t = 2 profiles.
#[derive(Clone, Debug, Serialize)]
pub struct PredicateReport {
    /// a[k] + e[k] = d k for d-regular H (None when H is not regular)
    pub regular_identity: Option<PredicateOutcome>,
    /// a[k] >= k (n - k) / 2 when the minimum degree is >= (n-1)/2
    pub min_degree_bound: Option<PredicateOutcome>,
    /// e[k] + e[l] < e[k+l] for all k, l >= 1 with k + l <= n
    pub e_superadditive: PredicateOutcome,
    /// a[k] + a[l] > a[n] + a[k+l-n] for all k, l < n with k + l >= n
    pub a_overlap: PredicateOutcome,
}

impl std::fmt::Display for PredicateReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let show = |o: &PredicateOutcome| match (o.holds, o.witness) {
            (true, _) => "holds".to_string(),
            (false, Some((k, l))) => format!("fails at (k, l) = ({k}, {l})"),
            (false, None) => "fails".to_string(),
        };
        let opt = |o: &Option<PredicateOutcome>| {
            o.as_ref().map_or("n/a".to_string(), show)
        };
        writeln!(f, "regular identity a(k)+e(k) = dk: {}", opt(&self.regular_identity))?;
        writeln!(f, "min-degree bound 2a(k) >= k(n-k): {}", opt(&self.min_degree_bound))?;
        writeln!(f, "e superadditive:                  {}", show(&self.e_superadditive))?;
        write!(f, "a overlap:                        {}", show(&self.a_overlap))
    }
}

pub fn check_profile_predicates(p: &CoverageProfile, h: &Graph) -> Result<PredicateReport> {
    if p.t != 2 {
        return Err(Error::InvalidArgument(
            "profile predicates are stated for t = 2".into(),
        ));
    }
    let n = p.n;
    let regular_identity = h.is_regular().map(|d| {
        for k in 0..=n {
            if p.a[k] + p.e[k] != (d * k) as u64 {
                return PredicateOutcome::fail(k, 0);
            }
        }
        PredicateOutcome::pass()
    });
    let min_degree_bound = if 2 * h.min_degree() >= n - 1 {
        let mut out = PredicateOutcome::pass();
        for k in 0..=n {
            if 2 * p.a[k] < (k * (n - k)) as u64 {
                out = PredicateOutcome::fail(k, 0);
                break;
            }
        }
        Some(out)
    } else {
        None
    };
    let mut e_superadditive = PredicateOutcome::pass();
    'outer: for k in 1..n {
        for l in k..n {
            if k + l > n {
                break;
            }
            if p.e[k] + p.e[l] >= p.e[k + l] {
                e_superadditive = PredicateOutcome::fail(k, l);
                break 'outer;
            }
        }
    }
    let mut a_overlap = PredicateOutcome::pass();
    'outer2: for k in 1..n {
        for l in k..n {
            if k + l < n {
                continue;
            }
            if p.a[k] + p.a[l] <= p.a[n] + p.a[k + l - n] {
                a_overlap = PredicateOutcome::fail(k, l);
                break 'outer2;
            }
        }
    }
    Ok(PredicateReport {
        regular_identity,
        min_degree_bound,
        e_superadditive,
        a_overlap,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ProfileRow {
    pub k: usize,
    pub a: u64,
    pub e: u64,
    pub witness_a: Vec<usize>,
    pub witness_e: Vec<usize>,
}

impl CoverageProfile {
    pub fn rows(&self) -> Vec<ProfileRow> {
        (0..=self.n)
            .map(|k| ProfileRow {
                k,
                a: self.a[k],
                e: self.e[k],
                witness_a: mask_to_vertices(self.witness_a[k]),
                witness_e: mask_to_vertices(self.witness_e[k]),
            })
            .collect()
    }

    /// Text block "k a[k] e[k] witnessA witnessE", one line per k.
    pub fn render(&self) -> String {
        let mut s = String::new();
        for row in self.rows() {
            s.push_str(&format!(
                "{} {} {} {:?} {:?}\n",
                row.k, row.a, row.e, row.witness_a, row.witness_e
            ));
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{
        binomial, complete, count_cliques, cycle, disjoint_union, path, random_gnp,
    };

    #[test]
    fn c5_profile() {
        let p = profile_exact(&cycle(5), 2).unwrap();
        assert_eq!(p.e, vec![0, 0, 1, 2, 3, 5]);
        assert_eq!(p.a, vec![0, 2, 3, 4, 5, 5]);
        assert!(p.exact);
    }

    #[test]
    fn complete_graph_closed_form() {
        for n in 2..=10usize {
            for t in 2..=n {
                let p = profile_exact(&complete(n), t).unwrap();
                for k in 0..=n {
                    assert_eq!(
                        p.a[k],
                        binomial(n as u64, t as u64) - binomial((n - k) as u64, t as u64),
                        "n={} t={} k={}",
                        n,
                        t,
                        k
                    );
                }
            }
        }
    }

    #[test]
    fn a_of_set_examples() {
        let k4 = complete(4);
        assert_eq!(a_of_set(&k4, 2, 0b11), 5);
        assert_eq!(a_of_set(&k4, 2, 0), 0);
        assert_eq!(a_of_set(&cycle(5), 2, 0b1), 2);
    }

    #[test]
    fn tightness_graph_ratio() {
        // l = 4, d = 2: C_4 + C_5, a(k)/k minimized exactly at k in {4, 5, 9}
        let h = disjoint_union(&[cycle(4), cycle(5)]).unwrap();
        let p = profile_exact(&h, 2).unwrap();
        assert_eq!(p.a[4], 4);
        assert_eq!(p.a[5], 5);
        assert_eq!(p.a[9], 9);
        let (c, argmin) = ratio_min(&p);
        assert_eq!(c, Ratio::new(1, 1));
        assert_eq!(argmin, vec![4, 5, 9]);
    }

    #[test]
    fn ratio_min_examples() {
        let p = profile_exact(&complete(4), 2).unwrap();
        let (c, argmin) = ratio_min(&p);
        assert_eq!(c, Ratio::new(3, 2));
        assert_eq!(argmin, vec![4]);

        // K_4 plus pendant: pendant vertex covers one edge, so c = 1 at k = 1
        let h = Graph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (0, 4)])
            .unwrap();
        let p = profile_exact(&h, 2).unwrap();
        assert_eq!(p.a, vec![0, 1, 4, 6, 7, 7]);
        let (c, argmin) = ratio_min(&p);
        assert_eq!(c, Ratio::new(1, 1));
        assert_eq!(argmin, vec![1]);
    }

    #[test]
    fn duality_against_direct_minimization() {
        for seed in 0..25u64 {
            let n = 5 + (seed % 6) as usize;
            let h = random_gnp(n, 0.5, seed).unwrap();
            for t in [2usize, 3] {
                let p = profile_exact(&h, t).unwrap();
                for k in 0..=n {
                    assert_eq!(p.a[k], a_direct_min(&h, t, k), "seed={} t={} k={}", seed, t, k);
                }
            }
        }
    }

    #[test]
    fn witnesses_attain_their_values() {
        let h = random_gnp(10, 0.5, 11).unwrap();
        let p = profile_exact(&h, 2).unwrap();
        for k in 0..=10 {
            assert_eq!(p.witness_e[k].count_ones() as usize, k);
            assert_eq!(h.cliques_in(2, p.witness_e[k]), p.e[k]);
            assert_eq!(p.witness_a[k].count_ones() as usize, k);
            assert_eq!(a_of_set(&h, 2, p.witness_a[k]), p.a[k]);
        }
    }

    #[test]
    fn monotone_and_boundary_invariants() {
        for (g, t) in [
            (cycle(7), 2usize),
            (complete(6), 3),
            (path(5), 2),
            (random_gnp(9, 0.6, 5).unwrap(), 2),
        ] {
            let p = profile_exact(&g, t).unwrap();
            assert_eq!(p.a[0], 0);
            assert_eq!(p.e[0], 0);
            assert_eq!(p.a[p.n], p.total);
            assert_eq!(p.e[p.n], p.total);
            for k in 1..=p.n {
                assert!(p.a[k] >= p.a[k - 1]);
                assert!(p.e[k] >= p.e[k - 1]);
                assert_eq!(p.a[k], p.total - p.e[p.n - k]);
            }
            // a is 1-Lipschitz up to the max degree for t = 2
            if t == 2 {
                for k in 0..p.n {
                    assert!(p.a[k + 1] - p.a[k] <= g.max_degree() as u64);
                }
            }
        }
    }

    #[test]
    fn predicates_examples() {
        let c5 = cycle(5);
        let p = profile_exact(&c5, 2).unwrap();
        let rep = check_profile_predicates(&p, &c5).unwrap();
        assert!(rep.regular_identity.unwrap().holds);
        assert_eq!(p.a[2] + p.e[2], 4);

        let k6 = complete(6);
        let p = profile_exact(&k6, 2).unwrap();
        let rep = check_profile_predicates(&p, &k6).unwrap();
        assert!(rep.min_degree_bound.unwrap().holds);
        assert!(rep.e_superadditive.holds);
        assert!(rep.a_overlap.holds);

        let h = disjoint_union(&[cycle(4), cycle(5)]).unwrap();
        let p = profile_exact(&h, 2).unwrap();
        let rep = check_profile_predicates(&p, &h).unwrap();
        assert!(!rep.e_superadditive.holds);
        let (k, l) = rep.e_superadditive.witness.unwrap();
        assert!(p.e[k] + p.e[l] >= p.e[k + l]);
        // k = l = 4 is another genuine violation
        assert!(p.e[4] + p.e[4] >= p.e[8]);
        assert_eq!(p.e[4] + p.e[4], 8);
        assert_eq!(p.e[8], 7);

        let p3 = profile_exact(&h, 3);
        assert!(check_profile_predicates(&p3.unwrap(), &h).is_err());
    }

    #[test]
    fn heuristic_bound_directions() {
        for seed in 0..20u64 {
            let n = 6 + (seed % 7) as usize;
            let h = random_gnp(n, 0.5, 100 + seed).unwrap();
            let exact = profile_exact(&h, 2).unwrap();
            let heur = profile_heuristic(&h, 2, 4).unwrap();
            assert!(!heur.exact);
            for k in 0..=n {
                assert!(heur.e[k] <= exact.e[k], "seed={} k={}", seed, k);
                assert!(heur.a[k] >= exact.a[k], "seed={} k={}", seed, k);
            }
        }
    }

    #[test]
    fn heuristic_exact_on_complete() {
        let h = complete(20);
        let heur = profile_heuristic(&h, 2, 1).unwrap();
        for k in 0..=20u64 {
            assert_eq!(heur.e[k as usize], binomial(k, 2));
        }
    }

    #[test]
    fn heuristic_flag_contract() {
        let h = random_gnp(30, 0.5, 7).unwrap();
        assert!(profile_exact(&h, 2).is_err());
        let p = profile_heuristic(&h, 2, 2).unwrap();
        assert!(!p.exact);
        assert_eq!(p.total, count_cliques(&h, 2).unwrap());
    }
}
