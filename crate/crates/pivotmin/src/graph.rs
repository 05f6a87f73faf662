//! Simple undirected graphs with dense bitset adjacency rows.
//!
//! Vertex identity is positional (`0..n-1`). Deletions elsewhere in the crate
//! are expressed through keep-sets plus remapping tables; `Graph` itself never
//! renumbers silently.

use crate::{Error, Result};
use serde::{Deserialize, Serialize};

const WORD: usize = 64;

fn words_for(n: usize) -> usize {
    (n + WORD - 1) / WORD
}

/// Subset of the vertices of a specific host graph.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VertexSet {
    n: usize,
    bits: Vec<u64>,
}

impl VertexSet {
    pub fn empty(n: usize) -> Self {
        VertexSet {
            n,
            bits: vec![0; words_for(n)],
        }
    }

    pub fn full(n: usize) -> Self {
        let mut s = Self::empty(n);
        for v in 0..n {
            s.insert(v);
        }
        s
    }

    pub fn from_iter<I: IntoIterator<Item = usize>>(n: usize, it: I) -> Result<Self> {
        let mut s = Self::empty(n);
        for v in it {
            if v >= n {
                return Err(Error::VertexOutOfRange(v, n));
            }
            s.insert(v);
        }
        Ok(s)
    }

    pub fn host_size(&self) -> usize {
        self.n
    }

    pub fn insert(&mut self, v: usize) {
        self.bits[v / WORD] |= 1u64 << (v % WORD);
    }

    pub fn remove(&mut self, v: usize) {
        self.bits[v / WORD] &= !(1u64 << (v % WORD));
    }

    pub fn contains(&self, v: usize) -> bool {
        v < self.n && self.bits[v / WORD] >> (v % WORD) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&v| self.contains(v))
    }

    pub fn complement_set(&self) -> VertexSet {
        let mut out = VertexSet::empty(self.n);
        for v in 0..self.n {
            if !self.contains(v) {
                out.insert(v);
            }
        }
        out
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.bits
            .iter()
            .zip(&other.bits)
            .all(|(a, b)| a & b == 0)
    }

    pub fn union_with(&mut self, other: &VertexSet) {
        for (a, b) in self.bits.iter_mut().zip(&other.bits) {
            *a |= b;
        }
    }
}

/// Two disjoint vertex sets, complete or anticomplete to each other.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PairKind {
    Complete,
    Anticomplete,
}

#[derive(Clone, Debug)]
pub struct PurePair {
    pub a: VertexSet,
    pub b: VertexSet,
    pub kind: PairKind,
}

impl PurePair {
    /// Checks disjointness, nonemptiness, and the complete/anticomplete claim.
    pub fn verify(&self, g: &Graph) -> Result<()> {
        if self.a.is_empty() || self.b.is_empty() {
            return Err(Error::InvalidInput("pure pair with an empty side".into()));
        }
        if !self.a.is_disjoint(&self.b) {
            return Err(Error::InvalidInput("pure pair sides overlap".into()));
        }
        for u in self.a.iter() {
            for v in self.b.iter() {
                let adj = g.adjacent(u, v);
                let want = matches!(self.kind, PairKind::Complete);
                if adj != want {
                    return Err(Error::InvalidInput(format!(
                        "pure pair violated by pair {u}-{v} (kind {:?})",
                        self.kind
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn flipped_kind(&self) -> PurePair {
        PurePair {
            a: self.a.clone(),
            b: self.b.clone(),
            kind: match self.kind {
                PairKind::Complete => PairKind::Anticomplete,
                PairKind::Anticomplete => PairKind::Complete,
            },
        }
    }
}

/// Simple undirected graph, no loops, dense adjacency rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    rows: Vec<Vec<u64>>,
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph {
            n,
            rows: vec![vec![0; words_for(n)]; n],
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            g.check_vertex(u)?;
            g.check_vertex(v)?;
            if u != v {
                g.set_edge(u, v, true);
            }
        }
        Ok(g)
    }

    /// Cycle v0-v1-...-v(n-1)-v0.
    pub fn cycle(n: usize) -> Self {
        let mut g = Graph::new(n);
        if n >= 2 {
            for v in 0..n {
                g.set_edge(v, (v + 1) % n, true);
            }
        }
        g
    }

    /// Path v0-v1-...-v(n-1).
    pub fn path(n: usize) -> Self {
        let mut g = Graph::new(n);
        for v in 1..n {
            g.set_edge(v - 1, v, true);
        }
        g
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                g.set_edge(u, v, true);
            }
        }
        g
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n {
            Err(Error::VertexOutOfRange(v, self.n))
        } else {
            Ok(())
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.rows[u][v / WORD] >> (v % WORD) & 1 == 1
    }

    pub fn set_edge(&mut self, u: usize, v: usize, present: bool) {
        debug_assert!(u != v && u < self.n && v < self.n);
        if present {
            self.rows[u][v / WORD] |= 1u64 << (v % WORD);
            self.rows[v][u / WORD] |= 1u64 << (u % WORD);
        } else {
            self.rows[u][v / WORD] &= !(1u64 << (v % WORD));
            self.rows[v][u / WORD] &= !(1u64 << (u % WORD));
        }
    }

    pub fn toggle_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u != v);
        self.rows[u][v / WORD] ^= 1u64 << (v % WORD);
        self.rows[v][u / WORD] ^= 1u64 << (u % WORD);
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        let row = &self.rows[v];
        (0..self.n).filter(move |&u| row[u / WORD] >> (u % WORD) & 1 == 1)
    }

    pub fn neighbor_set(&self, v: usize) -> VertexSet {
        VertexSet {
            n: self.n,
            bits: self.rows[v].clone(),
        }
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).sum::<usize>() / 2
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in u + 1..self.n {
                if self.adjacent(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Removes all edges incident to `v` (used by witness replay, where
    /// deleted vertices stay in place as isolated ids).
    pub fn isolate(&mut self, v: usize) {
        let nbrs: Vec<usize> = self.neighbors(v).collect();
        for u in nbrs {
            self.set_edge(u, v, false);
        }
    }

    pub fn complement(&self) -> Graph {
        let mut g = Graph::new(self.n);
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.adjacent(u, v) {
                    g.set_edge(u, v, true);
                }
            }
        }
        g
    }

    /// Toggles adjacency on every pair with both ends in `s`.
    pub fn partial_complement(&self, s: &VertexSet) -> Graph {
        let mut g = self.clone();
        let members: Vec<usize> = s.iter().collect();
        for (i, &u) in members.iter().enumerate() {
            for &v in &members[i + 1..] {
                g.toggle_edge(u, v);
            }
        }
        g
    }

    /// Induced subgraph on `s` with a remapping table: `remap[new_id] = old_id`.
    pub fn induced_subgraph(&self, s: &VertexSet) -> Result<(Graph, Vec<usize>)> {
        if s.is_empty() {
            return Err(Error::EmptySet);
        }
        let remap: Vec<usize> = s.iter().collect();
        let mut g = Graph::new(remap.len());
        for (i, &u) in remap.iter().enumerate() {
            for (j, &v) in remap.iter().enumerate().skip(i + 1) {
                if self.adjacent(u, v) {
                    g.set_edge(i, j, true);
                }
            }
        }
        Ok((g, remap))
    }

    /// Maximal connected pieces, as a partition of the vertex set.
    pub fn components(&self) -> Vec<VertexSet> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            let mut comp = VertexSet::empty(self.n);
            let mut stack = vec![start];
            seen[start] = true;
            while let Some(v) = stack.pop() {
                comp.insert(v);
                for u in self.neighbors(v) {
                    if !seen[u] {
                        seen[u] = true;
                        stack.push(u);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.components().len() == 1
    }

    /// True iff `order` traces an induced cycle: consecutive pairs adjacent
    /// (including the closing pair), all other pairs non-adjacent.
    pub fn is_induced_cycle(&self, order: &[usize]) -> Result<bool> {
        self.check_sequence(order)?;
        if order.len() < 3 {
            return Err(Error::InvalidInput(
                "cycle needs at least 3 vertices".into(),
            ));
        }
        let m = order.len();
        for i in 0..m {
            for j in i + 1..m {
                let consecutive = j == i + 1 || (i == 0 && j == m - 1);
                if self.adjacent(order[i], order[j]) != consecutive {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// True iff `order` traces an induced path.
    pub fn is_induced_path(&self, order: &[usize]) -> Result<bool> {
        self.check_sequence(order)?;
        if order.is_empty() {
            return Err(Error::InvalidInput("path needs at least 1 vertex".into()));
        }
        let m = order.len();
        for i in 0..m {
            for j in i + 1..m {
                if self.adjacent(order[i], order[j]) != (j == i + 1) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    fn check_sequence(&self, order: &[usize]) -> Result<()> {
        let mut seen = VertexSet::empty(self.n);
        for &v in order {
            self.check_vertex(v)?;
            if seen.contains(v) {
                return Err(Error::RepeatedVertex);
            }
            seen.insert(v);
        }
        Ok(())
    }

    /// True iff the graph is a single cycle on exactly `k` vertices.
    pub fn is_single_cycle(&self, k: usize) -> bool {
        self.n == k && k >= 3 && (0..self.n).all(|v| self.degree(v) == 2) && self.is_connected()
    }

    /// Live vertices under a keep-set view: true single cycle check restricted
    /// to `live`, ignoring isolated leftovers elsewhere.
    pub fn live_is_single_cycle(&self, live: &VertexSet, k: usize) -> bool {
        if live.len() != k || k < 3 {
            return false;
        }
        match self.induced_subgraph(live) {
            Ok((sub, _)) => sub.is_single_cycle(k),
            Err(_) => false,
        }
    }

    /// Hex SHA-256 of the graph6 encoding; stable input identity for reports.
    pub fn fingerprint(&self) -> String {
        use sha2::{Digest, Sha256};
        let mut h = Sha256::new();
        h.update(graph6_encode(self).as_bytes());
        format!("{:x}", h.finalize())
    }
}

// ---------------------------------------------------------------------------
// graph6 format
// ---------------------------------------------------------------------------

/// Encodes per the published graph6 format: upper-triangle bits in column-major
/// order, packed into 6-bit chunks offset by 63.
pub fn graph6_encode(g: &Graph) -> String {
    let n = g.n();
    let mut out = Vec::new();
    if n <= 62 {
        out.push(63 + n as u8);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(63 + ((n >> shift) & 0x3f) as u8);
        }
    } else {
        out.push(126);
        out.push(126);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(63 + ((n >> shift) & 0x3f) as u8);
        }
    }
    let mut acc = 0u8;
    let mut nbits = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.adjacent(i, j) as u8;
            nbits += 1;
            if nbits == 6 {
                out.push(63 + acc);
                acc = 0;
                nbits = 0;
            }
        }
    }
    if nbits > 0 {
        out.push(63 + (acc << (6 - nbits)));
    }
    String::from_utf8(out).expect("graph6 bytes are ascii")
}

pub fn graph6_decode(text: &str) -> Result<Graph> {
    let bytes = text.trim().as_bytes();
    if bytes.is_empty() {
        return Err(Error::Graph6("empty input".into()));
    }
    for &b in bytes {
        if !(63..=126).contains(&b) {
            return Err(Error::Graph6(format!("byte {b} out of range 63..=126")));
        }
    }
    let (n, mut pos) = if bytes[0] == 126 {
        if bytes.len() >= 2 && bytes[1] == 126 {
            if bytes.len() < 8 {
                return Err(Error::Graph6("truncated size header".into()));
            }
            let mut n = 0usize;
            for &b in &bytes[2..8] {
                n = n << 6 | (b - 63) as usize;
            }
            (n, 8)
        } else {
            if bytes.len() < 4 {
                return Err(Error::Graph6("truncated size header".into()));
            }
            let mut n = 0usize;
            for &b in &bytes[1..4] {
                n = n << 6 | (b - 63) as usize;
            }
            (n, 4)
        }
    } else {
        ((bytes[0] - 63) as usize, 1)
    };
    let nbits = n * n.saturating_sub(1) / 2;
    let need = (nbits + 5) / 6;
    if bytes.len() - pos != need {
        return Err(Error::Graph6(format!(
            "expected {need} body bytes for n={n}, got {}",
            bytes.len() - pos
        )));
    }
    let mut g = Graph::new(n);
    let mut acc = 0u32;
    let mut have = 0;
    let mut next = || -> bool {
        if have == 0 {
            acc = (bytes[pos] - 63) as u32;
            pos += 1;
            have = 6;
        }
        have -= 1;
        acc >> have & 1 == 1
    };
    for j in 1..n {
        for i in 0..j {
            if next() {
                g.set_edge(i, j, true);
            }
        }
    }
    Ok(g)
}

// ---------------------------------------------------------------------------
// edge-list text format: header "n m", then one "u v" line per edge
// ---------------------------------------------------------------------------

pub fn edgelist_decode(text: &str) -> Result<Graph> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header = lines
        .next()
        .ok_or_else(|| Error::EdgeList("missing header".into()))?;
    let mut it = header.split_whitespace();
    let n: usize = it
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| Error::EdgeList("bad vertex count".into()))?;
    let m: usize = it
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| Error::EdgeList("bad edge count".into()))?;
    let mut g = Graph::new(n);
    let mut count = 0;
    for line in lines {
        let mut it = line.split_whitespace();
        let u: usize = it
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| Error::EdgeList(format!("bad edge line: {line}")))?;
        let v: usize = it
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| Error::EdgeList(format!("bad edge line: {line}")))?;
        if u >= n || v >= n || u == v {
            return Err(Error::EdgeList(format!("invalid edge {u} {v}")));
        }
        g.set_edge(u, v, true);
        count += 1;
    }
    if count != m {
        return Err(Error::EdgeList(format!(
            "header claims {m} edges, found {count}"
        )));
    }
    Ok(g)
}

pub fn edgelist_encode(g: &Graph) -> String {
    let edges = g.edges();
    let mut out = format!("{} {}\n", g.n(), edges.len());
    for (u, v) in edges {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}
