//! Desk-scale ground truth: coverage checking with witness assignments,
//! exhaustive search for minimum-K_t H-covered graphs over all N-vertex
//! graphs up to isomorphism, the peel lower bound, and comparison of the
//! oracle's extremal set against the constructed families.

use crate::construct::{build_elementary_extremal, build_ideal_extremal};
use crate::error::{Error, Result};
use crate::graph::{are_isomorphic, count_cliques, find_copy_at, to_graph6, Graph};
use crate::profile::CoverageProfile;
use serde::Serialize;
use std::sync::OnceLock;

pub const DEFAULT_MAX_N: usize = 8;
pub const DEFAULT_MAX_NODES: u64 = 1_000_000_000;

/// Per-vertex cover witness: sets[v] is a mask S(v) with v in S(v),
/// |S(v)| = n, and h embedding into the induced graph on S(v).
#[derive(Clone, Debug)]
pub struct CoverAssignment {
    pub sets: Vec<u64>,
}

#[derive(Clone, Debug)]
pub enum CoverCheck {
    Covered(CoverAssignment),
    /// first vertex with no copy of h through it
    Uncovered(usize),
}

impl CoverCheck {
    pub fn is_covered(&self) -> bool {
        matches!(self, CoverCheck::Covered(_))
    }
}

/// Check that every vertex of `g` lies in a copy of `h`, producing either a
/// full cover assignment or the first uncovered vertex.
pub fn is_covered(g: &Graph, h: &Graph) -> CoverCheck {
    let full = g.full_mask();
    let mut sets = Vec::with_capacity(g.n());
    for v in 0..g.n() {
        match find_copy_at(g, h, v, full) {
            Some(mask) => sets.push(mask),
            None => return CoverCheck::Uncovered(v),
        }
    }
    CoverCheck::Covered(CoverAssignment { sets })
}

pub fn validate_cover(g: &Graph, h: &Graph, cover: &CoverAssignment) -> Result<()> {
    if cover.sets.len() != g.n() {
        return Err(Error::Contract(format!(
            "cover has {} sets for {} vertices",
            cover.sets.len(),
            g.n()
        )));
    }
    for (v, &mask) in cover.sets.iter().enumerate() {
        if mask & (1u64 << v) == 0 {
            return Err(Error::Contract(format!("vertex {v} not in its own S(v)")));
        }
        if mask.count_ones() as usize != h.n() {
            return Err(Error::Contract(format!(
                "S({v}) has {} vertices, expected {}",
                mask.count_ones(),
                h.n()
            )));
        }
        if find_copy_at(g, h, v, mask).is_none() {
            return Err(Error::Contract(format!("no copy of h inside S({v})")));
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Exhaustive enumeration of graphs up to isomorphism
// ---------------------------------------------------------------------------

/// All graphs on `n` vertices up to isomorphism, grown by vertex addition
/// with canonical-form rejection. Cached; n <= 8 intended
/// (1, 2, 4, 11, 34, 156, 1044, 12346 graphs).
pub fn enumerate_graphs(n: usize) -> &'static [Graph] {
    static CACHE: OnceLock<Vec<Vec<Graph>>> = OnceLock::new();
    assert!(
        (1..=DEFAULT_MAX_N).contains(&n),
        "graph enumeration supports 1..={DEFAULT_MAX_N} vertices"
    );
    let all = CACHE.get_or_init(|| {
        let mut levels: Vec<Vec<Graph>> = vec![vec![Graph::new(1).unwrap()]];
        for m in 2..=DEFAULT_MAX_N {
            let mut seen: std::collections::HashSet<String> = Default::default();
            let mut level = Vec::new();
            for g in &levels[m - 2] {
                // attach vertex m-1 with every possible neighborhood
                for nb in 0u64..(1u64 << (m - 1)) {
                    let mut ext = Graph::new(m).unwrap();
                    for (u, v) in g.edges() {
                        ext.add_edge(u, v).unwrap();
                    }
                    for u in 0..m - 1 {
                        if nb & (1u64 << u) != 0 {
                            ext.add_edge(u, m - 1).unwrap();
                        }
                    }
                    let canon = ext.canonical_form();
                    if seen.insert(to_graph6(&canon)) {
                        level.push(canon);
                    }
                }
            }
            levels.push(level);
        }
        levels
    });
    &all[n - 1]
}

#[derive(Clone, Copy, Debug)]
pub struct Budget {
    pub max_n: usize,
    pub max_nodes: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_n: DEFAULT_MAX_N,
            max_nodes: DEFAULT_MAX_NODES,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct OracleResult {
    pub n: usize,
    pub t: usize,
    pub min_count: u64,
    /// all extremal graphs up to isomorphism, as sorted graph6 lines
    pub extremal: Vec<String>,
    pub nodes_explored: u64,
    /// false when the node budget ran out before the level was exhausted
    pub complete: bool,
}

/// Minimum K_t count over all H-covered graphs on `target` vertices,
/// together with every extremal graph up to isomorphism. Candidate counts
/// are scanned upward from zero so the answer never presumes the
/// integer-program bound; a vertex of degree < delta(h) disqualifies a graph
/// before any embedding work.
pub fn min_cover_exhaustive(
    h: &Graph,
    t: usize,
    target: usize,
    budget: Budget,
) -> Result<OracleResult> {
    if t == 0 {
        return Err(Error::InvalidArgument("clique order t must be >= 1".into()));
    }
    if h.n() > target {
        return Err(Error::Infeasible(format!(
            "no H-covered graph on {} < n = {} vertices",
            target,
            h.n()
        )));
    }
    if target > budget.max_n {
        return Err(Error::Budget(format!(
            "oracle refuses N = {target} > cap {}",
            budget.max_n
        )));
    }
    let delta = h.min_degree();
    // bucket candidates by K_t count, then scan counts upward
    let mut by_count: std::collections::BTreeMap<u64, Vec<&Graph>> = Default::default();
    for g in enumerate_graphs(target) {
        if g.min_degree() < delta {
            continue;
        }
        by_count.entry(count_cliques(g, t)?).or_default().push(g);
    }
    let mut nodes = 0u64;
    for (&count, graphs) in &by_count {
        let mut extremal = Vec::new();
        for g in graphs {
            nodes += 1;
            if nodes > budget.max_nodes {
                return Ok(OracleResult {
                    n: target,
                    t,
                    min_count: count,
                    extremal,
                    nodes_explored: nodes,
                    complete: false,
                });
            }
            if is_covered(g, h).is_covered() {
                extremal.push(to_graph6(g));
            }
        }
        if !extremal.is_empty() {
            extremal.sort();
            return Ok(OracleResult {
                n: target,
                t,
                min_count: count,
                extremal,
                nodes_explored: nodes,
                complete: true,
            });
        }
    }
    Err(Error::Infeasible(format!(
        "no H-covered graph found on {target} vertices"
    )))
}

// ---------------------------------------------------------------------------
// Peel bound
// ---------------------------------------------------------------------------

/// The peeling lower bound: walk `order`, and for each vertex v still
/// unpeeled take k_i = |remaining ∩ S(v)|, add a[k_i], and remove S(v).
/// Always a valid lower bound on c_t(g).
pub fn peel_bound(
    g: &Graph,
    h: &Graph,
    t: usize,
    cover: &CoverAssignment,
    p: &CoverageProfile,
    order: &[usize],
) -> Result<u64> {
    validate_cover(g, h, cover)?;
    if p.n != h.n() || p.t != t {
        return Err(Error::Contract(format!(
            "profile is for (n={}, t={}), expected (n={}, t={})",
            p.n,
            p.t,
            h.n(),
            t
        )));
    }
    let mut seen = vec![false; g.n()];
    for &v in order {
        if v >= g.n() || seen[v] {
            return Err(Error::Contract(format!(
                "order is not a permutation of 0..{}",
                g.n()
            )));
        }
        seen[v] = true;
    }
    if order.len() != g.n() {
        return Err(Error::Contract(format!(
            "order has {} entries for {} vertices",
            order.len(),
            g.n()
        )));
    }
    let mut remaining = g.full_mask();
    let mut bound = 0u64;
    for &v in order {
        if remaining & (1u64 << v) == 0 {
            continue;
        }
        let k = (remaining & cover.sets[v]).count_ones() as usize;
        bound += p.a[k];
        remaining &= !cover.sets[v];
    }
    Ok(bound)
}

// ---------------------------------------------------------------------------
// Uniqueness comparison against the constructed families
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, Serialize)]
pub struct UniquenessReport {
    pub n: usize,
    pub t: usize,
    pub min_count: u64,
    /// graph6 of extremal graphs that match some family member
    pub matched: Vec<String>,
    /// extremal graphs outside both families
    pub extremal_outside: Vec<String>,
    /// family members whose K_t count exceeds the minimum
    pub family_nonextremal: Vec<String>,
}

/// All partitions of `target` into parts in [n, 2n), non-increasing.
pub fn m_partitions(n: usize, target: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(rem: usize, max: usize, lo: usize, hi: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rem == 0 {
            out.push(cur.clone());
            return;
        }
        for b in (lo..=max.min(hi).min(rem)).rev() {
            cur.push(b);
            rec(rem - b, b, lo, hi, cur, out);
            cur.pop();
        }
    }
    rec(target, target, n, 2 * n - 1, &mut cur, &mut out);
    out
}

/// Compare the oracle's extremal set against the ideal family member plus
/// every elementary family member, up to isomorphism.
pub fn uniqueness_check(
    h: &Graph,
    t: usize,
    target: usize,
    p: &CoverageProfile,
    budget: Budget,
) -> Result<UniquenessReport> {
    let oracle = min_cover_exhaustive(h, t, target, budget)?;
    let mut family = vec![build_ideal_extremal(h, t, target, p)?];
    for parts in m_partitions(h.n(), target) {
        family.push(build_elementary_extremal(h, target, &parts)?);
    }
    let extremal: Vec<Graph> = oracle
        .extremal
        .iter()
        .map(|s| crate::graph::parse_graph6(s))
        .collect::<Result<_>>()?;
    let mut matched = Vec::new();
    let mut extremal_outside = Vec::new();
    for g in &extremal {
        if family.iter().any(|f| are_isomorphic(g, f)) {
            matched.push(to_graph6(g));
        } else {
            extremal_outside.push(to_graph6(g));
        }
    }
    let mut family_nonextremal = Vec::new();
    for f in &family {
        if count_cliques(f, t)? > oracle.min_count {
            family_nonextremal.push(to_graph6(f));
        }
    }
    family_nonextremal.sort();
    family_nonextremal.dedup();
    Ok(UniquenessReport {
        n: target,
        t,
        min_count: oracle.min_count,
        matched,
        extremal_outside,
        family_nonextremal,
    })
}
