//! Simple undirected graphs on at most 62 labeled vertices, stored as
//! per-vertex 64-bit adjacency masks, together with graph6 / edge-list
//! serialization, clique counting, isomorphism machinery and generators.

use crate::error::{Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Any labeled graph here fits one graph6 short form and any vertex set
/// fits a single 64-bit mask.
pub const MAX_VERTICES: usize = 62;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u64 = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Lexicographic order on same-size vertex sets viewed as sorted lists:
/// the set owning the lowest differing bit comes first.
pub fn set_lex_less(x: u64, y: u64) -> bool {
    let d = x ^ y;
    if d == 0 {
        return false;
    }
    x & (d & d.wrapping_neg()) != 0
}

pub fn mask_to_vertices(mask: u64) -> Vec<usize> {
    let mut out = Vec::new();
    let mut m = mask;
    while m != 0 {
        let v = m.trailing_zeros() as usize;
        out.push(v);
        m &= m - 1;
    }
    out
}

pub fn vertices_to_mask(vs: &[usize]) -> u64 {
    vs.iter().fold(0u64, |m, &v| m | (1u64 << v))
}

impl Graph {
    pub fn new(n: usize) -> Result<Graph> {
        if n == 0 || n > MAX_VERTICES {
            return Err(Error::SizeLimit(format!(
                "vertex count {} outside 1..={}",
                n, MAX_VERTICES
            )));
        }
        Ok(Graph {
            n,
            adj: vec![0; n],
        })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        let mut g = Graph::new(n)?;
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn full_mask(&self) -> u64 {
        if self.n == 64 {
            u64::MAX
        } else {
            (1u64 << self.n) - 1
        }
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        if u == v || u >= self.n || v >= self.n {
            return Err(Error::InvalidArgument(format!(
                "bad edge ({}, {}) for n = {}",
                u, v, self.n
            )));
        }
        self.adj[u] |= 1u64 << v;
        self.adj[v] |= 1u64 << u;
        Ok(())
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u] & (1u64 << v) != 0
    }

    pub fn neighbors(&self, v: usize) -> u64 {
        self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap()
    }

    /// Degree sequence sorted ascending, d_1 <= ... <= d_n.
    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = (0..self.n).map(|v| self.degree(v)).collect();
        d.sort_unstable();
        d
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|m| m.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in (u + 1)..self.n {
                if self.has_edge(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn is_regular(&self) -> Option<usize> {
        let d = self.degree(0);
        if (1..self.n).all(|v| self.degree(v) == d) {
            Some(d)
        } else {
            None
        }
    }

    /// Relabel through `perm`, where `perm[v]` is the new label of `v`.
    pub fn relabeled(&self, perm: &[usize]) -> Graph {
        let mut adj = vec![0u64; self.n];
        for v in 0..self.n {
            let mut m = self.adj[v];
            let mut row = 0u64;
            while m != 0 {
                let u = m.trailing_zeros() as usize;
                m &= m - 1;
                row |= 1u64 << perm[u];
            }
            adj[perm[v]] = row;
        }
        Graph { n: self.n, adj }
    }

    /// Number of K_t cliques whose vertices all lie inside `mask`.
    /// Requires t >= 1.
    pub fn cliques_in(&self, t: usize, mask: u64) -> u64 {
        debug_assert!(t >= 1);
        if t == 1 {
            return mask.count_ones() as u64;
        }
        if t == 2 {
            let mut total = 0u64;
            let mut m = mask;
            while m != 0 {
                let v = m.trailing_zeros() as usize;
                m &= m - 1;
                // count each edge once: only neighbors above v
                total += (self.adj[v] & mask & !((2u64 << v) - 1)).count_ones() as u64;
            }
            return total;
        }
        self.clique_rec(mask, t)
    }

    fn clique_rec(&self, cand: u64, need: usize) -> u64 {
        if need == 1 {
            return cand.count_ones() as u64;
        }
        if (cand.count_ones() as usize) < need {
            return 0;
        }
        let mut total = 0u64;
        let mut m = cand;
        while m != 0 {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            let rest = cand & self.adj[v] & !((2u64 << v) - 1);
            total += self.clique_rec(rest, need - 1);
        }
        total
    }
}

/// Exact number of K_t subgraphs of `g`. t = 1 counts vertices; t > n gives 0.
pub fn count_cliques(g: &Graph, t: usize) -> Result<u64> {
    if t == 0 {
        return Err(Error::InvalidArgument("clique order t must be >= 1".into()));
    }
    Ok(g.cliques_in(t, g.full_mask()))
}

// ---------------------------------------------------------------------------
// graph6 and edge-list serialization
// ---------------------------------------------------------------------------

pub fn parse_graph6(text: &str) -> Result<Graph> {
    let bytes = text.trim_end_matches(['\n', '\r']).as_bytes();
    if bytes.is_empty() {
        return Err(Error::Parse {
            offset: 0,
            msg: "empty graph6 input".into(),
        });
    }
    for (i, &b) in bytes.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(Error::Parse {
                offset: i,
                msg: format!("byte {:#04x} outside graph6 range 63..=126", b),
            });
        }
    }
    if bytes[0] == 126 {
        return Err(Error::Parse {
            offset: 0,
            msg: format!("extended graph6 header implies n > {}", MAX_VERTICES),
        });
    }
    let n = (bytes[0] - 63) as usize;
    if n == 0 || n > MAX_VERTICES {
        return Err(Error::Parse {
            offset: 0,
            msg: format!("vertex count {} outside 1..={}", n, MAX_VERTICES),
        });
    }
    let nbits = n * (n - 1) / 2;
    let nbytes = nbits.div_ceil(6);
    if bytes.len() != 1 + nbytes {
        return Err(Error::Parse {
            offset: bytes.len().min(1 + nbytes),
            msg: format!(
                "expected {} data bytes for n = {}, found {}",
                nbytes,
                n,
                bytes.len() - 1
            ),
        });
    }
    let mut g = Graph::new(n)?;
    let mut bit = 0usize;
    for v in 1..n {
        for u in 0..v {
            let byte = bytes[1 + bit / 6] - 63;
            let set = (byte >> (5 - bit % 6)) & 1 == 1;
            if set {
                g.add_edge(u, v)?;
            }
            bit += 1;
        }
    }
    // padding bits of the final byte must be zero
    if nbits % 6 != 0 {
        let last = bytes[1 + nbytes - 1] - 63;
        let pad = 6 - nbits % 6;
        if last & ((1 << pad) - 1) != 0 {
            return Err(Error::Parse {
                offset: nbytes,
                msg: "nonzero padding bits".into(),
            });
        }
    }
    Ok(g)
}

pub fn to_graph6(g: &Graph) -> String {
    let n = g.n;
    let mut out = vec![(n as u8) + 63];
    let nbits = n * (n - 1) / 2;
    let mut acc = 0u8;
    let mut filled = 0usize;
    for v in 1..n {
        for u in 0..v {
            acc <<= 1;
            if g.has_edge(u, v) {
                acc |= 1;
            }
            filled += 1;
            if filled % 6 == 0 {
                out.push(acc + 63);
                acc = 0;
            }
        }
    }
    if nbits % 6 != 0 {
        acc <<= 6 - nbits % 6;
        out.push(acc + 63);
    }
    String::from_utf8(out).unwrap()
}

/// Edge-list text form: first line "n m", then m lines "u v" with u < v.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut lines = text.lines();
    let header = lines.next().ok_or(Error::Parse {
        offset: 0,
        msg: "missing header line".into(),
    })?;
    let mut it = header.split_whitespace();
    let n: usize = it
        .next()
        .and_then(|s| s.parse().ok())
        .ok_or(Error::Parse {
            offset: 0,
            msg: "bad vertex count".into(),
        })?;
    let m: usize = it
        .next()
        .and_then(|s| s.parse().ok())
        .ok_or(Error::Parse {
            offset: 0,
            msg: "bad edge count".into(),
        })?;
    let mut g = Graph::new(n)?;
    let mut count = 0;
    for line in lines {
        if line.trim().is_empty() {
            continue;
        }
        let mut it = line.split_whitespace();
        let u: usize = it
            .next()
            .and_then(|s| s.parse().ok())
            .ok_or(Error::Parse {
                offset: 0,
                msg: format!("bad edge line {:?}", line),
            })?;
        let v: usize = it
            .next()
            .and_then(|s| s.parse().ok())
            .ok_or(Error::Parse {
                offset: 0,
                msg: format!("bad edge line {:?}", line),
            })?;
        if u >= v {
            return Err(Error::Parse {
                offset: 0,
                msg: format!("edge {} {} not in u < v form", u, v),
            });
        }
        g.add_edge(u, v)?;
        count += 1;
    }
    if count != m {
        return Err(Error::Parse {
            offset: 0,
            msg: format!("header promised {} edges, found {}", m, count),
        });
    }
    Ok(g)
}

pub fn to_edge_list(g: &Graph) -> String {
    let edges = g.edges();
    let mut s = format!("{} {}\n", g.n(), edges.len());
    for (u, v) in edges {
        s.push_str(&format!("{} {}\n", u, v));
    }
    s
}

// ---------------------------------------------------------------------------
// Canonical labeling and isomorphism
// ---------------------------------------------------------------------------

impl Graph {
    /// Stable equitable refinement: colors are cell indices ordered so that
    /// the ordered partition is a deterministic function of the input coloring.
    fn refine(&self, colors: &mut [usize]) {
        let n = self.n;
        loop {
            let ncells = colors.iter().max().unwrap() + 1;
            let mut sigs: Vec<(usize, Vec<usize>)> = Vec::with_capacity(n);
            for v in 0..n {
                let mut cnt = vec![0usize; ncells];
                let mut m = self.adj[v];
                while m != 0 {
                    let u = m.trailing_zeros() as usize;
                    m &= m - 1;
                    cnt[colors[u]] += 1;
                }
                sigs.push((colors[v], cnt));
            }
            let mut order: Vec<usize> = (0..n).collect();
            order.sort_by(|&a, &b| sigs[a].cmp(&sigs[b]));
            let mut next = 0usize;
            let mut new_colors = vec![0usize; n];
            for i in 0..n {
                if i > 0 && sigs[order[i]] != sigs[order[i - 1]] {
                    next += 1;
                }
                new_colors[order[i]] = next;
            }
            let new_ncells = next + 1;
            colors.copy_from_slice(&new_colors);
            if new_ncells == ncells {
                break;
            }
        }
    }

    /// True when every vertex of `cell` is interchangeable with every other:
    /// the cell induces a complete or empty graph and is joined completely or
    /// not at all to every other cell. Then all branches below are equivalent.
    fn cell_interchangeable(&self, colors: &[usize], color: usize, cell: &[usize]) -> bool {
        let cell_mask = vertices_to_mask(cell);
        let mut internal_deg = None;
        for &v in cell {
            let d = (self.adj[v] & cell_mask).count_ones() as usize;
            if d != 0 && d != cell.len() - 1 {
                return false;
            }
            match internal_deg {
                None => internal_deg = Some(d),
                Some(x) if x != d => return false,
                _ => {}
            }
        }
        let ncells = colors.iter().max().unwrap() + 1;
        for c in 0..ncells {
            if c == color {
                continue;
            }
            let dmask = (0..self.n)
                .filter(|&v| colors[v] == c)
                .fold(0u64, |m, v| m | (1u64 << v));
            let mut kind = None;
            for &v in cell {
                let inter = self.adj[v] & dmask;
                let k = if inter == dmask {
                    1
                } else if inter == 0 {
                    0
                } else {
                    return false;
                };
                match kind {
                    None => kind = Some(k),
                    Some(x) if x != k => return false,
                    _ => {}
                }
            }
        }
        true
    }

    fn canon_rec(&self, colors: Vec<usize>, best: &mut Option<Vec<u64>>) {
        let n = self.n;
        let ncells = colors.iter().max().unwrap() + 1;
        if ncells == n {
            // discrete: colors is the labeling
            let cand = self.relabeled(&colors).adj;
            match best {
                Some(b) if *b <= cand => {}
                _ => *best = Some(cand),
            }
            return;
        }
        let target = (0..ncells)
            .find(|&c| colors.iter().filter(|&&x| x == c).count() > 1)
            .unwrap();
        let cell: Vec<usize> = (0..n).filter(|&v| colors[v] == target).collect();
        let reps: Vec<usize> = if self.cell_interchangeable(&colors, target, &cell) {
            vec![cell[0]]
        } else {
            cell
        };
        for v in reps {
            let mut c2 = colors.clone();
            for u in 0..n {
                if c2[u] > target {
                    c2[u] += 1;
                } else if c2[u] == target && u != v {
                    c2[u] = target + 1;
                }
            }
            self.refine(&mut c2);
            self.canon_rec(c2, best);
        }
    }

    /// Deterministic canonically labeled copy: neighborhood-degree refinement,
    /// then backtracking over the first non-singleton cell, taking the
    /// lexicographically least relabeled adjacency over all leaves.
    pub fn canonical_form(&self) -> Graph {
        let mut colors = vec![0usize; self.n];
        self.refine(&mut colors);
        let mut best: Option<Vec<u64>> = None;
        self.canon_rec(colors, &mut best);
        Graph {
            n: self.n,
            adj: best.unwrap(),
        }
    }
}

pub fn are_isomorphic(g1: &Graph, g2: &Graph) -> bool {
    if g1.n != g2.n || g1.edge_count() != g2.edge_count() {
        return false;
    }
    if g1.degree_sequence() != g2.degree_sequence() {
        return false;
    }
    g1.canonical_form() == g2.canonical_form()
}

// ---------------------------------------------------------------------------
// Subgraph copies
// ---------------------------------------------------------------------------

fn embedding_order(h: &Graph) -> Vec<usize> {
    // greedy: max degree first, then most neighbors among already-placed
    let n = h.n();
    let mut order = Vec::with_capacity(n);
    let mut placed = 0u64;
    for _ in 0..n {
        let best = (0..n)
            .filter(|&v| placed & (1u64 << v) == 0)
            .max_by_key(|&v| {
                (
                    (h.neighbors(v) & placed).count_ones(),
                    h.degree(v),
                    usize::MAX - v,
                )
            })
            .unwrap();
        order.push(best);
        placed |= 1u64 << best;
    }
    order
}

fn embed_rec(
    g: &Graph,
    h: &Graph,
    order: &[usize],
    pos: usize,
    pinned: (usize, usize), // (h vertex, g vertex)
    map: &mut [usize],
    used: u64,
    allowed: u64,
) -> bool {
    if pos == order.len() {
        return true;
    }
    let u = order[pos];
    let du = h.degree(u);
    let cands: Vec<usize> = if u == pinned.0 {
        vec![pinned.1]
    } else {
        mask_to_vertices(allowed & !used)
    };
    for w in cands {
        if used & (1u64 << w) != 0 {
            continue;
        }
        if ((g.neighbors(w) & allowed).count_ones() as usize) < du {
            continue;
        }
        let mut ok = true;
        for p in 0..pos {
            let hv = order[p];
            if h.has_edge(u, hv) && !g.has_edge(w, map[hv]) {
                ok = false;
                break;
            }
        }
        if !ok {
            continue;
        }
        map[u] = w;
        if embed_rec(g, h, order, pos + 1, pinned, map, used | (1u64 << w), allowed) {
            return true;
        }
    }
    false
}

/// Find an injective map of V(h) into `allowed` vertices of `g` that sends
/// every edge of h to an edge of g (copies are subgraphs, not necessarily
/// induced) and puts `v` in the image. Returns the image as a mask.
pub fn find_copy_at(g: &Graph, h: &Graph, v: usize, allowed: u64) -> Option<u64> {
    if h.n() > (allowed.count_ones() as usize) || allowed & (1u64 << v) == 0 {
        return None;
    }
    let order = embedding_order(h);
    let mut map = vec![usize::MAX; h.n()];
    // try pinning each h-vertex whose degree fits at v
    let dv = (g.neighbors(v) & allowed).count_ones() as usize;
    for u in 0..h.n() {
        if h.degree(u) > dv {
            continue;
        }
        if embed_rec(g, h, &order, 0, (u, v), &mut map, 0, allowed) {
            return Some(vertices_to_mask(&map));
        }
    }
    None
}

/// True iff some copy of `h` in `g` contains vertex `v`.
pub fn subgraph_copy_at(g: &Graph, h: &Graph, v: usize) -> bool {
    find_copy_at(g, h, v, g.full_mask()).is_some()
}

// ---------------------------------------------------------------------------
// Generators
// ---------------------------------------------------------------------------

pub fn disjoint_union(gs: &[Graph]) -> Result<Graph> {
    if gs.is_empty() {
        return Err(Error::InvalidArgument("empty disjoint union".into()));
    }
    let total: usize = gs.iter().map(|g| g.n()).sum();
    let mut out = Graph::new(total)?;
    let mut off = 0;
    for g in gs {
        for (u, v) in g.edges() {
            out.add_edge(off + u, off + v)?;
        }
        off += g.n();
    }
    Ok(out)
}

/// Vertex i adjacent to i +- j (mod m) for each jump j; 1 <= j <= m/2.
pub fn circulant(m: usize, jumps: &[usize]) -> Result<Graph> {
    let mut g = Graph::new(m)?;
    for &j in jumps {
        if j == 0 || 2 * j > m {
            return Err(Error::InvalidArgument(format!(
                "jump {} out of range 1..={}",
                j,
                m / 2
            )));
        }
        for i in 0..m {
            let k = (i + j) % m;
            if i != k {
                g.add_edge(i.min(k), i.max(k))?;
            }
        }
    }
    Ok(g)
}

pub fn complete(n: usize) -> Graph {
    let mut g = Graph::new(n).unwrap();
    for u in 0..n {
        for v in (u + 1)..n {
            g.add_edge(u, v).unwrap();
        }
    }
    g
}

pub fn path(n: usize) -> Graph {
    let mut g = Graph::new(n).unwrap();
    for v in 1..n {
        g.add_edge(v - 1, v).unwrap();
    }
    g
}

pub fn cycle(n: usize) -> Graph {
    circulant(n, &[1]).unwrap()
}

/// G_{n,p}: each pair (u, v), u < v, in lexicographic order independently an
/// edge with probability p, driven by ChaCha8 seeded from `seed`.
pub fn random_gnp(n: usize, p: f64, seed: u64) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidArgument(format!("p = {} outside [0, 1]", p)));
    }
    let mut g = Graph::new(n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.gen::<f64>() < p {
                g.add_edge(u, v)?;
            }
        }
    }
    Ok(g)
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, g6={:?})", self.n, to_graph6(self))
    }
}
