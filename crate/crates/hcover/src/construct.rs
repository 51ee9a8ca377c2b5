//! Extremal and counterexample constructions: L overlap gluings, M
//! minimum-degree-clone gluings, the ideal/elementary assemblies built from
//! them, tightness circulant pairs, and the pendant-clique example.

use crate::error::{Error, Result};
use crate::graph::{binomial, circulant, complete, disjoint_union, mask_to_vertices, Graph};
use crate::profile::CoverageProfile;

/// Two copies of `h` glued along an (n-r)-set maximizing the K_t count
/// inside it (the e[n-r] witness of the profile). The result has n + r
/// vertices, each side induces `h`, and its K_t count is a[n] + a[r].
pub fn build_l(h: &Graph, t: usize, r: usize, p: &CoverageProfile) -> Result<Graph> {
    let n = h.n();
    if p.n != n || p.t != t {
        return Err(Error::Contract(format!(
            "profile is for (n={}, t={}), graph has n={}",
            p.n, p.t, n
        )));
    }
    if r >= n {
        return Err(Error::InvalidArgument(format!(
            "remainder {r} must be < n = {n}"
        )));
    }
    if r == 0 {
        return Ok(h.clone());
    }
    let shared = p.witness_e[n - r];
    // side 1 keeps h's labels; side 2 maps the r private vertices to new ids
    let mut map2 = vec![0usize; n];
    let mut next = n;
    for v in 0..n {
        if shared & (1u64 << v) != 0 {
            map2[v] = v;
        } else {
            map2[v] = next;
            next += 1;
        }
    }
    let mut g = Graph::new(n + r)?;
    for (u, v) in h.edges() {
        g.add_edge(u, v)?;
        if g.has_edge(map2[u], map2[v]) {
            continue;
        }
        g.add_edge(map2[u], map2[v])?;
    }
    Ok(g)
}

/// `h` with N - n clones of one fixed minimum-degree vertex. The chosen
/// vertex (lowest index among minima) is placed at index n-1; every vertex
/// i >= n-1 is adjacent exactly to its neighborhood inside 0..n-2, so
/// {0..n-2} together with any clone induces h.
pub fn build_m(h: &Graph, target: usize) -> Result<Graph> {
    let n = h.n();
    if target < n || target >= 2 * n {
        return Err(Error::InvalidArgument(format!(
            "target {target} must lie in [{n}, {})",
            2 * n
        )));
    }
    let delta = h.min_degree();
    let v_min = (0..n).find(|&v| h.degree(v) == delta).unwrap();
    // swap v_min to index n-1
    let mut perm: Vec<usize> = (0..n).collect();
    perm.swap(v_min, n - 1);
    let base = h.relabeled(&perm);
    let nbhd = mask_to_vertices(base.neighbors(n - 1));
    let mut g = Graph::new(target)?;
    for (u, v) in base.edges() {
        g.add_edge(u, v)?;
    }
    for i in n..target {
        for &u in &nbhd {
            g.add_edge(u, i)?;
        }
    }
    Ok(g)
}

/// (q-1) disjoint copies of `h` plus an L gluing carrying the remainder,
/// where N = q n + r. Its K_t count is q a[n] + a[r].
pub fn build_ideal_extremal(
    h: &Graph,
    t: usize,
    target: usize,
    p: &CoverageProfile,
) -> Result<Graph> {
    let n = h.n();
    if target < n {
        return Err(Error::Infeasible(format!(
            "no H-covered graph on {target} < n = {n} vertices"
        )));
    }
    let q = target / n;
    let r = target % n;
    let mut pieces = vec![h.clone(); q - 1];
    pieces.push(build_l(h, t, r, p)?);
    disjoint_union(&pieces)
}

/// Disjoint union of M gluings, one of order b_i per part.
pub fn build_elementary_extremal(h: &Graph, target: usize, parts: &[usize]) -> Result<Graph> {
    if parts.is_empty() {
        return Err(Error::InvalidArgument("empty partition".into()));
    }
    let sum: usize = parts.iter().sum();
    if sum != target {
        return Err(Error::InvalidArgument(format!(
            "partition sums to {sum}, expected {target}"
        )));
    }
    let pieces = parts
        .iter()
        .map(|&b| build_m(h, b))
        .collect::<Result<Vec<_>>>()?;
    disjoint_union(&pieces)
}

/// The tightness example: a d-regular graph on 2l+1 vertices formed as the
/// disjoint union of circulants on l and l+1 vertices with jumps 1..d/2.
pub fn build_tightness(l: usize, d: usize) -> Result<Graph> {
    if d % 2 != 0 {
        return Err(Error::InvalidArgument(format!("degree {d} must be even")));
    }
    if d >= l {
        return Err(Error::InvalidArgument(format!(
            "degree {d} must be < l = {l}"
        )));
    }
    let jumps: Vec<usize> = (1..=d / 2).collect();
    disjoint_union(&[circulant(l, &jumps)?, circulant(l + 1, &jumps)?])
}

/// K_n with N - n pendant vertices, each adjacent to vertex 0.
pub fn build_pendant_clique(n: usize, target: usize) -> Result<Graph> {
    if target <= n {
        return Err(Error::InvalidArgument(format!(
            "target {target} must exceed n = {n}"
        )));
    }
    let mut g = Graph::new(target)?;
    for (u, v) in complete(n).edges() {
        g.add_edge(u, v)?;
    }
    for i in n..target {
        g.add_edge(0, i)?;
    }
    Ok(g)
}

/// K_n plus one pendant vertex: the base H of the pendant example.
pub fn pendant_graph(n: usize) -> Graph {
    let mut g = Graph::new(n + 1).unwrap();
    for (u, v) in complete(n).edges() {
        g.add_edge(u, v).unwrap();
    }
    g.add_edge(0, n).unwrap();
    g
}

/// Expected edge count of build_pendant_clique: binomial(n,2) + N - n.
pub fn pendant_clique_edges(n: usize, target: usize) -> u64 {
    binomial(n as u64, 2) + (target - n) as u64
}
