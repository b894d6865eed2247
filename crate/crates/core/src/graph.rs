//! Simple undirected graphs on at most 64 vertices, with exact clique search.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MAX_VERTICES: usize = 64;

/// Simple graph: no loops, no parallel edges. Edges are stored as `(u, v)`
/// with `u < v`, sorted; edge `k` owns the variable `y_k` in graph cubics.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    nverts: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<u64>,
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    nverts: usize,
    edges: Vec<[usize; 2]>,
}

impl Graph {
    pub fn new(nverts: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if nverts > MAX_VERTICES {
            return Err(Error::Budget(format!("graphs are limited to {MAX_VERTICES} vertices")));
        }
        let mut set = BTreeSet::new();
        for &(a, b) in edges {
            if a == b {
                return Err(Error::Contract(format!("loop at vertex {a}")));
            }
            if a >= nverts || b >= nverts {
                return Err(Error::Contract(format!("edge ({a},{b}) out of range for {nverts} vertices")));
            }
            if !set.insert((a.min(b), a.max(b))) {
                return Err(Error::Contract(format!("duplicate edge ({a},{b})")));
            }
        }
        let edges: Vec<(usize, usize)> = set.into_iter().collect();
        let mut adj = vec![0u64; nverts];
        for &(a, b) in &edges {
            adj[a] |= 1 << b;
            adj[b] |= 1 << a;
        }
        Ok(Graph { nverts, edges, adj })
    }

    pub fn complete(n: usize) -> Result<Self> {
        let edges: Vec<_> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        Graph::new(n, &edges)
    }

    pub fn path(n: usize) -> Result<Self> {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::new(n, &edges)
    }

    pub fn nverts(&self) -> usize {
        self.nverts
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        a < self.nverts && self.adj[a] >> b & 1 == 1
    }

    pub fn edge_index(&self, a: usize, b: usize) -> Option<usize> {
        self.edges.binary_search(&(a.min(b), a.max(b))).ok()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn neighbors(&self, v: usize) -> u64 {
        self.adj[v]
    }

    /// Parses `"u v"` lines (0-indexed). Blank lines and `#` comments are
    /// skipped; an optional `nverts N` line fixes the vertex count, which
    /// otherwise is one more than the largest endpoint.
    pub fn parse_edge_list(text: &str) -> Result<Self> {
        let mut edges = Vec::new();
        let mut declared = None;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let parts: Vec<&str> = line.split_whitespace().collect();
            let bad = || Error::Parse(format!("line {}: expected \"u v\", got {raw:?}", lineno + 1));
            match parts.as_slice() {
                ["nverts", n] => declared = Some(n.parse::<usize>().map_err(|_| bad())?),
                [a, b] => {
                    let a = a.parse::<usize>().map_err(|_| bad())?;
                    let b = b.parse::<usize>().map_err(|_| bad())?;
                    if a >= MAX_VERTICES || b >= MAX_VERTICES {
                        return Err(Error::Budget(format!("graphs are limited to {MAX_VERTICES} vertices")));
                    }
                    edges.push((a, b));
                }
                _ => return Err(bad()),
            }
        }
        let inferred = edges.iter().map(|&(a, b)| a.max(b) + 1).max().unwrap_or(0);
        let n = declared.unwrap_or(inferred);
        Graph::new(n, &edges)
    }

    pub fn to_edge_list(&self) -> String {
        let mut s = format!("nverts {}\n", self.nverts);
        for (a, b) in &self.edges {
            s.push_str(&format!("{a} {b}\n"));
        }
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let g: GraphJson = serde_json::from_str(text)?;
        let edges: Vec<(usize, usize)> = g.edges.iter().map(|e| (e[0], e[1])).collect();
        Graph::new(g.nverts, &edges)
    }

    pub fn to_json(&self) -> String {
        let g = GraphJson { nverts: self.nverts, edges: self.edges.iter().map(|&(a, b)| [a, b]).collect() };
        serde_json::to_string(&g).expect("plain data")
    }

    pub fn triangles(&self) -> Vec<[usize; 3]> {
        let mut out = Vec::new();
        for &(a, b) in &self.edges {
            let mut c = self.adj[a] & self.adj[b] & mask_above(b);
            while c != 0 {
                let v = c.trailing_zeros() as usize;
                out.push([a, b, v]);
                c &= c - 1;
            }
        }
        out
    }

    /// All-pairs shortest path lengths by BFS; `None` when disconnected.
    pub fn distances(&self) -> Vec<Vec<Option<usize>>> {
        (0..self.nverts)
            .map(|s| {
                let mut dist = vec![None; self.nverts];
                dist[s] = Some(0);
                let mut frontier = 1u64 << s;
                let mut seen = frontier;
                let mut level = 0;
                while frontier != 0 {
                    level += 1;
                    let mut next = 0u64;
                    let mut f = frontier;
                    while f != 0 {
                        let v = f.trailing_zeros() as usize;
                        next |= self.adj[v];
                        f &= f - 1;
                    }
                    next &= !seen;
                    seen |= next;
                    let mut n = next;
                    while n != 0 {
                        dist[n.trailing_zeros() as usize] = Some(level);
                        n &= n - 1;
                    }
                    frontier = next;
                }
                dist
            })
            .collect()
    }

    pub fn is_connected(&self) -> bool {
        self.nverts == 0 || self.distances()[0].iter().all(Option::is_some)
    }

    pub fn diameter(&self) -> Option<usize> {
        let d = self.distances();
        d.iter().flatten().copied().collect::<Option<Vec<_>>>().map(|v| v.into_iter().max().unwrap_or(0))
    }

    /// Vertex pairs at maximum distance (the diameter).
    pub fn antipodal_pairs(&self) -> Vec<(usize, usize)> {
        let Some(diam) = self.diameter() else { return Vec::new() };
        let d = self.distances();
        let mut out = Vec::new();
        for a in 0..self.nverts {
            for b in a + 1..self.nverts {
                if d[a][b] == Some(diam) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// Clique number and one maximum clique (sorted).
    pub fn clique_number(&self) -> (usize, Vec<usize>) {
        let mut best = Vec::new();
        let all = mask_below(self.nverts);
        let mut current = Vec::new();
        self.expand(&mut current, all, &mut best);
        best.sort_unstable();
        (best.len(), best)
    }

    /// Branch and bound; greedy colouring of the candidate set bounds the
    /// size of any clique it can still contribute.
    fn expand(&self, current: &mut Vec<usize>, cand: u64, best: &mut Vec<usize>) {
        let (order, colors) = self.color_sort(cand);
        let mut cand = cand;
        for (v, c) in order.into_iter().zip(colors).rev() {
            if current.len() + c <= best.len() {
                return;
            }
            current.push(v);
            let next = cand & self.adj[v];
            if next == 0 {
                if current.len() > best.len() {
                    *best = current.clone();
                }
            } else {
                self.expand(current, next, best);
            }
            current.pop();
            cand &= !(1u64 << v);
        }
    }

    /// Vertices of `cand` ordered by non-decreasing greedy colour number.
    fn color_sort(&self, cand: u64) -> (Vec<usize>, Vec<usize>) {
        let mut order = Vec::new();
        let mut colors = Vec::new();
        let mut uncolored = cand;
        let mut color = 0;
        while uncolored != 0 {
            color += 1;
            let mut avail = uncolored;
            while avail != 0 {
                let v = avail.trailing_zeros() as usize;
                avail &= !(1u64 << v);
                avail &= !self.adj[v];
                uncolored &= !(1u64 << v);
                order.push(v);
                colors.push(color);
            }
        }
        (order, colors)
    }

    /// Every clique of size `k`, each sorted, in lexicographic order.
    pub fn cliques_of_size(&self, k: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        self.cliques_rec(&mut cur, mask_below(self.nverts), k, &mut out);
        out
    }

    fn cliques_rec(&self, cur: &mut Vec<usize>, cand: u64, k: usize, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        if (cand.count_ones() as usize) + cur.len() < k {
            return;
        }
        let mut c = cand;
        while c != 0 {
            let v = c.trailing_zeros() as usize;
            c &= c - 1;
            cur.push(v);
            self.cliques_rec(cur, c & self.adj[v], k, out);
            cur.pop();
        }
    }

    pub fn maximum_cliques(&self) -> Vec<Vec<usize>> {
        let (w, _) = self.clique_number();
        self.cliques_of_size(w)
    }

    /// Icosahedron: vertex 0 on top, rings `1..=5` and `6..=10`, vertex 11
    /// at the bottom.
    pub fn icosahedron() -> Self {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((0, 1 + i));
            edges.push((6 + i, 11));
            edges.push((1 + i, 1 + (i + 1) % 5));
            edges.push((6 + i, 6 + (i + 1) % 5));
            edges.push((1 + i, 6 + i));
            edges.push((1 + i, 6 + (i + 1) % 5));
        }
        Graph::new(12, &edges).expect("valid literal")
    }

    /// Canonical code: the lexicographically smallest edge bitmask over
    /// all vertex relabellings. Exhaustive, so only for tiny graphs.
    pub fn canonical_code(&self) -> Result<u64> {
        let n = self.nverts;
        if n > 8 {
            return Err(Error::Budget("canonical codes are limited to 8 vertices".into()));
        }
        let mut perm: Vec<usize> = (0..n).collect();
        let mut best = u64::MAX;
        permute_all(&mut perm, 0, &mut |p| {
            let code = self.edges.iter().fold(0u64, |acc, &(a, b)| acc | 1 << pair_index(n, p[a], p[b]));
            best = best.min(code);
        });
        Ok(best)
    }
}

fn mask_below(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

fn mask_above(b: usize) -> u64 {
    if b >= 63 {
        0
    } else {
        !((1u64 << (b + 1)) - 1)
    }
}

fn pair_index(n: usize, a: usize, b: usize) -> usize {
    let (a, b) = (a.min(b), a.max(b));
    a * n - a * (a + 1) / 2 + (b - a - 1)
}

fn permute_all(p: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == p.len() {
        f(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permute_all(p, k + 1, f);
        p.swap(k, i);
    }
}

/// One representative of every isomorphism class of simple graphs on
/// exactly `n` vertices (`n <= 7`). A mask is kept iff no relabelling
/// produces a smaller mask.
pub fn graphs_on(n: usize) -> Result<Vec<Graph>> {
    if n > 7 {
        return Err(Error::Budget("exhaustive graph enumeration is limited to 7 vertices".into()));
    }
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let mut perms = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    permute_all(&mut p, 0, &mut |p| {
        perms.push(pairs.iter().map(|&(a, b)| pair_index(n, p[a], p[b])).collect::<Vec<_>>())
    });
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << pairs.len()) {
        let minimal = perms.iter().all(|img| {
            let code = img.iter().enumerate().fold(0u64, |acc, (k, &t)| acc | (mask >> k & 1) << t);
            code >= mask
        });
        if minimal {
            let edges: Vec<_> =
                pairs.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, &e)| e).collect();
            out.push(Graph::new(n, &edges)?);
        }
    }
    Ok(out)
}

/// Isomorphism classes on `1..=max_n` vertices.
pub fn graphs_up_to(max_n: usize) -> Result<Vec<Graph>> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        out.extend(graphs_on(n)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn icosahedron_invariants() {
        let g = Graph::icosahedron();
        assert_eq!(g.nverts(), 12);
        assert_eq!(g.edges().len(), 30);
        assert!((0..12).all(|v| g.degree(v) == 5));
        assert_eq!(g.triangles().len(), 20);
        assert_eq!(g.diameter(), Some(3));
        assert_eq!(g.antipodal_pairs().len(), 6);
        let (w, c) = g.clique_number();
        assert_eq!(w, 3);
        assert_eq!(c.len(), 3);
        assert_eq!(g.maximum_cliques().len(), 20);
    }

    #[test]
    fn clique_numbers() {
        assert_eq!(Graph::complete(5).unwrap().clique_number().0, 5);
        assert_eq!(Graph::path(4).unwrap().clique_number().0, 2);
        assert_eq!(Graph::new(3, &[]).unwrap().clique_number().0, 1);
        assert_eq!(Graph::new(0, &[]).unwrap().clique_number().0, 0);
    }

    #[test]
    fn rejects_bad_edges() {
        assert!(Graph::new(3, &[(1, 1)]).is_err());
        assert!(Graph::new(3, &[(0, 1), (1, 0)]).is_err());
        assert!(Graph::new(3, &[(0, 3)]).is_err());
        assert!(Graph::parse_edge_list("0 1\nfoo").is_err());
    }

    #[test]
    fn edge_list_round_trip() {
        let g = Graph::icosahedron();
        assert_eq!(Graph::parse_edge_list(&g.to_edge_list()).unwrap(), g);
        assert_eq!(Graph::from_json(&g.to_json()).unwrap(), g);
        let iso = Graph::parse_edge_list("nverts 4\n# comment\n0 1\n\n").unwrap();
        assert_eq!(iso.nverts(), 4);
    }

    #[test]
    fn small_graph_counts() {
        let counts: Vec<usize> = (1..=5).map(|n| graphs_on(n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 2, 4, 11, 34]);
    }
}
