//! The integer program behind the covering problem: minimize sum a[k] x_k
//! subject to sum k x_k = N, x >= 0 integral, x_n >= 1, solved exactly by
//! unbounded knapsack DP after reserving one part n, plus enumeration of all
//! optimal part-multisets and the closed forms derived from the program.

use crate::error::{Error, Result};
use crate::graph::binomial;
use crate::profile::CoverageProfile;
use serde::Serialize;

pub const DEFAULT_OPTIMA_CAP: usize = 10_000;

/// Non-increasing list of part sizes in [1..n] summing to the target N.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct PartMultiset {
    pub parts: Vec<usize>,
}

impl PartMultiset {
    pub fn new(mut parts: Vec<usize>) -> PartMultiset {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        PartMultiset { parts }
    }

    pub fn total(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn cost(&self, a: &[u64]) -> u64 {
        self.parts.iter().map(|&k| a[k]).sum()
    }

    pub fn multiplicity(&self, k: usize) -> usize {
        self.parts.iter().filter(|&&p| p == k).count()
    }
}

impl std::fmt::Display for PartMultiset {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:?}", self.parts)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct IpSolution {
    pub target: usize,
    pub value: u64,
    pub optima: Vec<PartMultiset>,
    pub overflow: bool,
}

fn check_exact(p: &CoverageProfile) -> Result<()> {
    if !p.exact {
        return Err(Error::InvalidArgument(
            "integer program needs an exact profile".into(),
        ));
    }
    Ok(())
}

/// dp[s] = minimum cost of writing s as a sum of parts in [1..n] with part
/// costs a[1..n], no x_n constraint. dp[0] = 0.
fn knapsack(a: &[u64], n: usize, upto: usize) -> Vec<u64> {
    let mut dp = vec![u64::MAX; upto + 1];
    dp[0] = 0;
    for s in 1..=upto {
        let mut best = u64::MAX;
        for k in 1..=n.min(s) {
            let prev = dp[s - k];
            if prev != u64::MAX {
                best = best.min(prev.checked_add(a[k]).expect("objective overflow"));
            }
        }
        dp[s] = best;
    }
    dp
}

/// Exact optimal value of the integer program for (profile, N).
pub fn solve_ip(p: &CoverageProfile, target: usize) -> Result<IpSolution> {
    check_exact(p)?;
    let n = p.n;
    if target < n {
        return Err(Error::Infeasible(format!(
            "no H-covered graph exists on fewer than n = {} vertices (N = {})",
            n, target
        )));
    }
    let dp = knapsack(&p.a, n, target - n);
    let value = p.a[n] + dp[target - n];
    let (optima, overflow) = enumerate_optima_inner(p, target, value, DEFAULT_OPTIMA_CAP);
    Ok(IpSolution {
        target,
        value,
        optima,
        overflow,
    })
}

/// All optimal part-multisets, capped. When multisets without a part n tie
/// with the constrained optimum (the unconstrained knapsack reaches the same
/// value), those are listed as well; they reflect decompositions into pieces
/// smaller than H that still attain the minimum.
pub fn enumerate_optima(p: &CoverageProfile, target: usize, cap: usize) -> Result<(Vec<PartMultiset>, bool)> {
    check_exact(p)?;
    let n = p.n;
    if target < n {
        return Err(Error::Infeasible(format!(
            "target {} below n = {}",
            target, n
        )));
    }
    let dp = knapsack(&p.a, n, target - n);
    let value = p.a[n] + dp[target - n];
    Ok(enumerate_optima_inner(p, target, value, cap))
}

fn enumerate_optima_inner(
    p: &CoverageProfile,
    target: usize,
    value: u64,
    cap: usize,
) -> (Vec<PartMultiset>, bool) {
    let n = p.n;
    let dp_full = knapsack(&p.a, n, target);
    let mut out: Vec<PartMultiset> = Vec::new();
    let mut overflow = false;
    let mut acc: Vec<usize> = Vec::new();
    if dp_full[target] == value {
        dfs(&p.a, &dp_full, target, n, 0, value, &mut acc, &mut out, cap, &mut overflow);
    } else {
        // part n is forced; reserve it and decompose the residue
        acc.push(n);
        dfs(
            &p.a,
            &dp_full,
            target - n,
            n,
            p.a[n],
            value,
            &mut acc,
            &mut out,
            cap,
            &mut overflow,
        );
    }
    out.sort();
    out.dedup();
    (out, overflow)
}

#[allow(clippy::too_many_arguments)]
fn dfs(
    a: &[u64],
    dp_full: &[u64],
    s: usize,
    maxp: usize,
    cost: u64,
    value: u64,
    acc: &mut Vec<usize>,
    out: &mut Vec<PartMultiset>,
    cap: usize,
    overflow: &mut bool,
) {
    if *overflow {
        return;
    }
    if s == 0 {
        if cost == value {
            if out.len() >= cap {
                *overflow = true;
            } else {
                out.push(PartMultiset {
                    parts: acc.clone(),
                });
            }
        }
        return;
    }
    for k in (1..=maxp.min(s)).rev() {
        let c2 = cost + a[k];
        // dp_full is a lower bound on any completion cost
        if c2 <= value && c2 + dp_full[s - k] <= value {
            acc.push(k);
            dfs(a, dp_full, s - k, k, c2, value, acc, out, cap, overflow);
            acc.pop();
        }
    }
}

/// (ceil(c N), a[n] + ceil(c N)) with c the exact rational min of a[k]/k;
/// both sides bracket the IP value.
pub fn cov_bounds(p: &CoverageProfile, target: usize) -> Result<(u64, u64)> {
    check_exact(p)?;
    let (c, _) = crate::profile::ratio_min(p);
    let low = c.ceil_mul(target as u64);
    Ok((low, p.a[p.n] + low))
}

/// (q+1) C(n, t) - C(n-r, t) with N = q n + r: the exact minimum K_t count
/// over K_n-covered graphs on N vertices.
pub fn closed_form_clique(n: usize, t: usize, target: usize) -> u64 {
    assert!(target >= n && t <= n && t >= 1);
    let q = (target / n) as u64;
    let r = (target % n) as u64;
    (q + 1) * binomial(n as u64, t as u64) - binomial(n as u64 - r, t as u64)
}

/// Brute-force check that sum C(x_i, 2) over x_i in [0..n] with a fixed sum
/// k n + r is maximized exactly by k slots at n, one at r, the rest at 0.
/// Returns the unique maximizing multiset (descending).
pub fn check_conv_lemma(n: usize, k: usize, r: usize, m: usize) -> Result<Vec<usize>> {
    if r >= n || m <= k {
        return Err(Error::InvalidArgument(
            "need r < n and m > k".into(),
        ));
    }
    if m > 10 || n > 12 {
        return Err(Error::SizeLimit(
            "conv lemma brute force limited to m <= 10, n <= 12".into(),
        ));
    }
    let total = k * n + r;
    let mut best: u64 = 0;
    let mut argmax: Vec<Vec<usize>> = Vec::new();
    let mut acc: Vec<usize> = Vec::new();
    fn rec(
        slots_left: usize,
        rem: usize,
        maxv: usize,
        score: u64,
        acc: &mut Vec<usize>,
        best: &mut u64,
        argmax: &mut Vec<Vec<usize>>,
    ) {
        if slots_left == 0 {
            if rem == 0 {
                if score > *best {
                    *best = score;
                    argmax.clear();
                    argmax.push(acc.clone());
                } else if score == *best {
                    argmax.push(acc.clone());
                }
            }
            return;
        }
        if rem > slots_left * maxv {
            return;
        }
        for x in (0..=maxv.min(rem)).rev() {
            acc.push(x);
            rec(
                slots_left - 1,
                rem - x,
                x,
                score + binomial(x as u64, 2),
                acc,
                best,
                argmax,
            );
            acc.pop();
        }
    }
    rec(m, total, n, 0, &mut acc, &mut best, &mut argmax);
    if argmax.is_empty() {
        return Err(Error::Infeasible("no feasible assignment".into()));
    }
    let mut expected = vec![n; k];
    expected.push(r);
    while expected.len() < m {
        expected.push(0);
    }
    expected.sort_unstable_by(|a, b| b.cmp(a));
    if argmax.len() != 1 || argmax[0] != expected {
        return Err(Error::Contract(format!(
            "maximizer set {:?} does not match the expected pattern {:?}",
            argmax, expected
        )));
    }
    Ok(expected)
}
