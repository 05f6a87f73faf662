//! Pivoting, replayable pivot-minor witnesses, and an exhaustive small-scale
//! pivot-minor oracle backed by breadth-first orbit enumeration.

use crate::canon::canonical_key;
use crate::graph::{graph6_encode, Graph, VertexSet};
use crate::{Error, Result};
use serde::{Deserialize, Serialize};

/// Applies the three-class toggle of pivoting edge `uv` and swaps the labels
/// of `u` and `v`. Rejected when `uv` is not an edge.
pub fn pivot(g: &Graph, u: usize, v: usize) -> Result<Graph> {
    let mut out = g.clone();
    pivot_in_place(&mut out, u, v)?;
    Ok(out)
}

pub(crate) fn pivot_in_place(g: &mut Graph, u: usize, v: usize) -> Result<()> {
    if !g.adjacent(u, v) {
        return Err(Error::PivotNonEdge(u, v));
    }
    let nu = g.neighbor_set(u);
    let nv = g.neighbor_set(v);
    let n = g.n();
    let mut c1 = Vec::new();
    let mut c2 = Vec::new();
    let mut c3 = Vec::new();
    for w in 0..n {
        if w == u || w == v {
            continue;
        }
        match (nu.contains(w), nv.contains(w)) {
            (true, true) => c1.push(w),
            (true, false) => c2.push(w),
            (false, true) => c3.push(w),
            (false, false) => {}
        }
    }
    // complement adjacency across every pair of distinct classes
    for &a in &c1 {
        for &b in c2.iter().chain(&c3) {
            g.toggle_edge(a, b);
        }
    }
    for &a in &c2 {
        for &b in &c3 {
            g.toggle_edge(a, b);
        }
    }
    // swap the labels of u and v
    for w in 0..n {
        if w == u || w == v {
            continue;
        }
        let au = g.adjacent(u, w);
        let av = g.adjacent(v, w);
        if au != av {
            g.toggle_edge(u, w);
            g.toggle_edge(v, w);
        }
    }
    Ok(())
}

/// One replay step, in source numbering.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WitnessOp {
    Pivot([usize; 2]),
    Delete(usize),
}

/// Replayable pivot/delete sequence certifying a `C_k` pivot-minor claim.
///
/// JSON shape: `{"source": <graph6>, "k": int, "ops": [{"pivot": [u,v]} |
/// {"delete": v}, ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    #[serde(rename = "source")]
    pub source_g6: String,
    #[serde(rename = "k")]
    pub target_k: usize,
    pub ops: Vec<WitnessOp>,
}

impl Witness {
    pub fn new(source: &Graph, target_k: usize) -> Self {
        Witness {
            source_g6: graph6_encode(source),
            target_k,
            ops: Vec::new(),
        }
    }

    pub fn matches_source(&self, g: &Graph) -> bool {
        self.source_g6 == graph6_encode(g)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("witness serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

/// Mutable replay state. Deleted vertices keep their ids and are isolated, so
/// later ops never shift numbering.
pub struct Replay {
    graph: Graph,
    live: VertexSet,
    ops: Vec<WitnessOp>,
}

impl Replay {
    pub fn new(g: &Graph) -> Self {
        Replay {
            graph: g.clone(),
            live: VertexSet::full(g.n()),
            ops: Vec::new(),
        }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn live(&self) -> &VertexSet {
        &self.live
    }

    pub fn live_count(&self) -> usize {
        self.live.len()
    }

    pub fn pivot(&mut self, u: usize, v: usize) -> Result<()> {
        let step = self.ops.len();
        if !self.live.contains(u) || !self.live.contains(v) {
            return Err(Error::WitnessStep {
                step,
                reason: format!("pivot {u}-{v} references a dead vertex"),
            });
        }
        if !self.graph.adjacent(u, v) {
            return Err(Error::WitnessStep {
                step,
                reason: format!("pivot {u}-{v} is not an edge at this point"),
            });
        }
        pivot_in_place(&mut self.graph, u, v)?;
        self.ops.push(WitnessOp::Pivot([u, v]));
        Ok(())
    }

    pub fn delete(&mut self, v: usize) -> Result<()> {
        let step = self.ops.len();
        if !self.live.contains(v) {
            return Err(Error::WitnessStep {
                step,
                reason: format!("delete of dead vertex {v}"),
            });
        }
        self.graph.isolate(v);
        self.live.remove(v);
        self.ops.push(WitnessOp::Delete(v));
        Ok(())
    }

    /// Deletes every live vertex outside `keep`.
    pub fn keep_only(&mut self, keep: &VertexSet) -> Result<()> {
        let doomed: Vec<usize> = self.live.iter().filter(|&v| !keep.contains(v)).collect();
        for v in doomed {
            self.delete(v)?;
        }
        Ok(())
    }

    pub fn ops(&self) -> &[WitnessOp] {
        &self.ops
    }

    pub fn into_witness(self, source: &Graph, target_k: usize) -> Witness {
        Witness {
            source_g6: graph6_encode(source),
            target_k,
            ops: self.ops,
        }
    }

    /// Result graph on surviving vertices, with `remap[new_id] = source_id`.
    pub fn result(&self) -> Result<(Graph, Vec<usize>)> {
        if self.live.is_empty() {
            return Err(Error::EmptySet);
        }
        self.graph.induced_subgraph(&self.live)
    }
}

/// Replays `w` against `g`; errors carry the failing step index.
pub fn apply_witness(g: &Graph, w: &Witness) -> Result<(Graph, Vec<usize>)> {
    if !w.matches_source(g) {
        return Err(Error::FingerprintMismatch);
    }
    let mut r = Replay::new(g);
    for &op in &w.ops {
        match op {
            WitnessOp::Pivot([u, v]) => r.pivot(u, v)?,
            WitnessOp::Delete(v) => r.delete(v)?,
        }
    }
    r.result()
}

/// Detailed verification: replay must succeed and leave a single cycle on
/// exactly `target_k` vertices.
pub fn verify_ck_witness_detail(g: &Graph, w: &Witness) -> Result<()> {
    let (result, _) = apply_witness(g, w)?;
    if result.n() != w.target_k {
        return Err(Error::InvalidInput(format!(
            "replay left {} vertices, target k={}",
            result.n(),
            w.target_k
        )));
    }
    if !result.is_single_cycle(w.target_k) {
        return Err(Error::InvalidInput(format!(
            "replay result is not a single cycle of length {}",
            w.target_k
        )));
    }
    Ok(())
}

pub fn verify_ck_witness(g: &Graph, w: &Witness) -> bool {
    verify_ck_witness_detail(g, w).is_ok()
}

/// Moves all pivots before all deletes, preserving both relative orders.
/// Valid by the commutation identity (G-w) pivot uv = (G pivot uv) - w for
/// w outside {u,v}; replayable witnesses never pivot a deleted endpoint.
pub fn normalize_witness(g: &Graph, w: &Witness) -> Result<Witness> {
    apply_witness(g, w)?;
    let mut pivots = Vec::new();
    let mut deletes = Vec::new();
    for &op in &w.ops {
        match op {
            WitnessOp::Pivot(_) => pivots.push(op),
            WitnessOp::Delete(_) => deletes.push(op),
        }
    }
    pivots.extend(deletes);
    let normal = Witness {
        source_g6: w.source_g6.clone(),
        target_k: w.target_k,
        ops: pivots,
    };
    apply_witness(g, &normal)?;
    Ok(normal)
}

// ---------------------------------------------------------------------------
// Orbit enumeration and the exhaustive oracle
// ---------------------------------------------------------------------------

pub const DEFAULT_ORBIT_N_CAP: usize = 10;
pub const DEFAULT_ORBIT_MEMBER_CAP: usize = 1_000_000;

fn pack(g: &Graph) -> u64 {
    let n = g.n();
    debug_assert!(n * (n - 1) / 2 <= 64);
    let mut bits = 0u64;
    let mut b = 0;
    for u in 0..n {
        for v in u + 1..n {
            if g.adjacent(u, v) {
                bits |= 1 << b;
            }
            b += 1;
        }
    }
    bits
}

fn unpack(bits: u64, n: usize) -> Graph {
    let mut g = Graph::new(n);
    let mut b = 0;
    for u in 0..n {
        for v in u + 1..n {
            if bits >> b & 1 == 1 {
                g.set_edge(u, v, true);
            }
            b += 1;
        }
    }
    g
}

struct Member {
    bits: u64,
    parent: usize,
    step: Option<(usize, usize)>,
}

/// All graphs reachable from a seed by pivot sequences, deduplicated by
/// canonical form, with enough bookkeeping to reconstruct a pivot path.
pub struct OrbitIndex {
    n: usize,
    members: Vec<Member>,
    complete: bool,
}

impl OrbitIndex {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// True when the enumeration closed under pivoting every edge of every
    /// member (no cap was hit).
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn member(&self, idx: usize) -> Graph {
        unpack(self.members[idx].bits, self.n)
    }

    fn pivot_path(&self, mut idx: usize) -> Vec<(usize, usize)> {
        let mut path = Vec::new();
        while let Some(step) = self.members[idx].step {
            path.push(step);
            idx = self.members[idx].parent;
        }
        path.reverse();
        path
    }
}

/// Breadth-first pivot-orbit enumeration with canonical-form dedup.
/// Errors out when the member cap would be exceeded.
pub fn enumerate_orbit(g: &Graph, member_cap: usize, n_cap: usize) -> Result<OrbitIndex> {
    let n = g.n();
    if n > n_cap {
        return Err(Error::SizeCapExceeded(n, n_cap));
    }
    let mut seen = std::collections::HashSet::new();
    seen.insert(canonical_key(g));
    let mut members = vec![Member {
        bits: pack(g),
        parent: 0,
        step: None,
    }];
    let mut next = 0usize;
    while next < members.len() {
        let cur = unpack(members[next].bits, n);
        for (u, v) in cur.edges() {
            let child = pivot(&cur, u, v)?;
            let key = canonical_key(&child);
            if seen.insert(key) {
                if members.len() >= member_cap {
                    return Err(Error::OrbitCapExceeded(member_cap));
                }
                members.push(Member {
                    bits: pack(&child),
                    parent: next,
                    step: Some((u, v)),
                });
            }
        }
        next += 1;
    }
    Ok(OrbitIndex {
        n,
        members,
        complete: true,
    })
}

/// Finds an induced cycle of length exactly `k`, returned in cyclic order.
pub fn find_induced_ck(g: &Graph, k: usize) -> Option<Vec<usize>> {
    let n = g.n();
    if k < 3 || k > n {
        return None;
    }
    let mut subset = Vec::with_capacity(k);
    find_ck_rec(g, k, 0, &mut subset)
}

fn find_ck_rec(g: &Graph, k: usize, start: usize, subset: &mut Vec<usize>) -> Option<Vec<usize>> {
    if subset.len() == k {
        return cycle_order_of(g, subset);
    }
    let n = g.n();
    let remaining = k - subset.len();
    for v in start..n {
        if n - v < remaining {
            break;
        }
        subset.push(v);
        if let Some(order) = find_ck_rec(g, k, v + 1, subset) {
            return Some(order);
        }
        subset.pop();
    }
    None
}

/// If `subset` induces a single cycle, recover the cyclic order.
fn cycle_order_of(g: &Graph, subset: &[usize]) -> Option<Vec<usize>> {
    let k = subset.len();
    for &v in subset {
        let deg = subset.iter().filter(|&&u| u != v && g.adjacent(u, v)).count();
        if deg != 2 {
            return None;
        }
    }
    let mut order = vec![subset[0]];
    let mut prev = usize::MAX;
    while order.len() < k {
        let cur = *order.last().unwrap();
        let next = subset
            .iter()
            .copied()
            .find(|&u| u != cur && u != prev && g.adjacent(cur, u))?;
        prev = cur;
        order.push(next);
    }
    // connectivity: the walk must close back to the start
    if g.adjacent(*order.last().unwrap(), order[0]) && order.len() == k {
        Some(order)
    } else {
        None
    }
}

/// Exhaustive oracle: does some pivot-orbit member of `g` contain an induced
/// `C_k`? Searches the normal form "pivots first, then one induced-subgraph
/// pass"; returns a witness when true.
pub fn find_ck_pivot_minor(
    g: &Graph,
    k: usize,
    member_cap: usize,
    n_cap: usize,
) -> Result<Option<Witness>> {
    let n = g.n();
    if n > n_cap {
        return Err(Error::SizeCapExceeded(n, n_cap));
    }
    let orbit = enumerate_orbit(g, member_cap, n_cap)?;
    for idx in 0..orbit.len() {
        let member = orbit.member(idx);
        if let Some(order) = find_induced_ck(&member, k) {
            let mut r = Replay::new(g);
            for (u, v) in orbit.pivot_path(idx) {
                r.pivot(u, v)?;
            }
            let keep = VertexSet::from_iter(n, order.iter().copied())?;
            r.keep_only(&keep)?;
            let w = r.into_witness(g, k);
            debug_assert!(verify_ck_witness(g, &w));
            return Ok(Some(w));
        }
    }
    Ok(None)
}

pub fn has_pivot_minor(g: &Graph, k: usize) -> Result<bool> {
    Ok(find_ck_pivot_minor(g, k, DEFAULT_ORBIT_MEMBER_CAP, DEFAULT_ORBIT_N_CAP)?.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pivot_rejects_non_edge() {
        let g = Graph::path(3);
        assert!(pivot(&g, 0, 2).is_err());
    }

    #[test]
    fn pivot_k3_fixed() {
        let k3 = Graph::complete(3);
        assert_eq!(pivot(&k3, 0, 1).unwrap(), k3);
    }

    #[test]
    fn pivot_p3_swaps_ends() {
        // P3 a-b-c pivoted on ab: no class pairs to toggle, a and b swap roles
        let p3 = Graph::path(3);
        let res = pivot(&p3, 0, 1).unwrap();
        assert!(res.adjacent(0, 1));
        assert!(res.adjacent(0, 2));
        assert!(!res.adjacent(1, 2));
    }

    #[test]
    fn pivot_c4_gives_p4() {
        // C4 a=0,b=1,c=2,d=3 (edges ab,bc,cd,da); pivot ab -> path c,a,b,d
        let c4 = Graph::cycle(4);
        let res = pivot(&c4, 0, 1).unwrap();
        assert!(res.is_induced_path(&[2, 0, 1, 3]).unwrap());
    }

    #[test]
    fn pivot_is_involution() {
        let g = Graph::from_edges(
            6,
            &[(0, 1), (0, 2), (1, 3), (2, 3), (3, 4), (4, 5), (1, 5), (2, 5)],
        )
        .unwrap();
        for (u, v) in g.edges() {
            let back = pivot(&pivot(&g, u, v).unwrap(), u, v).unwrap();
            assert_eq!(back, g, "pivot twice on {u}-{v}");
        }
    }

    #[test]
    fn witness_replay_c6_to_c4() {
        let c6 = Graph::cycle(6);
        let mut w = Witness::new(&c6, 4);
        w.ops = vec![
            WitnessOp::Pivot([0, 1]),
            WitnessOp::Delete(0),
            WitnessOp::Delete(1),
        ];
        let (res, remap) = apply_witness(&c6, &w).unwrap();
        assert!(res.is_single_cycle(4));
        assert_eq!(remap, vec![2, 3, 4, 5]);
        assert!(verify_ck_witness(&c6, &w));
    }

    #[test]
    fn empty_witness_is_identity() {
        let g = Graph::cycle(5);
        let w = Witness::new(&g, 5);
        let (res, _) = apply_witness(&g, &w).unwrap();
        assert_eq!(res, g);
    }

    #[test]
    fn witness_errors() {
        let c6 = Graph::cycle(6);
        let mut w = Witness::new(&c6, 4);
        w.ops = vec![WitnessOp::Pivot([0, 2])];
        assert!(matches!(
            apply_witness(&c6, &w),
            Err(Error::WitnessStep { step: 0, .. })
        ));
        // wrong source graph
        let w2 = Witness::new(&c6, 4);
        assert!(matches!(
            apply_witness(&Graph::cycle(5), &w2),
            Err(Error::FingerprintMismatch)
        ));
        // truncated witness: wrong vertex count
        let mut w3 = Witness::new(&c6, 4);
        w3.ops = vec![WitnessOp::Pivot([0, 1]), WitnessOp::Delete(0)];
        assert!(!verify_ck_witness(&c6, &w3));
    }

    #[test]
    fn normalize_reorders_and_preserves_result() {
        let g = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)]).unwrap();
        let mut w = Witness::new(&g, 4);
        w.ops = vec![
            WitnessOp::Delete(5),
            WitnessOp::Pivot([0, 1]),
            WitnessOp::Delete(0),
        ];
        let norm = normalize_witness(&g, &w).unwrap();
        assert_eq!(
            norm.ops,
            vec![
                WitnessOp::Pivot([0, 1]),
                WitnessOp::Delete(5),
                WitnessOp::Delete(0),
            ]
        );
        let (a, ra) = apply_witness(&g, &w).unwrap();
        let (b, rb) = apply_witness(&g, &norm).unwrap();
        assert_eq!(ra, rb);
        assert!(crate::canon::small_isomorphic(&a, &b).unwrap());
        // already-normal witness unchanged
        assert_eq!(normalize_witness(&g, &norm).unwrap(), norm);
        // empty stays empty
        let e = Witness::new(&g, 6);
        assert_eq!(normalize_witness(&g, &e).unwrap().ops, vec![]);
    }

    #[test]
    fn deletion_pivot_commutation() {
        let g = Graph::from_edges(
            7,
            &[(0, 1), (0, 2), (1, 3), (2, 3), (3, 4), (4, 5), (5, 6), (1, 6), (2, 5)],
        )
        .unwrap();
        for (u, v) in g.edges() {
            for w in 0..7 {
                if w == u || w == v {
                    continue;
                }
                let mut del_first = g.clone();
                del_first.isolate(w);
                if !del_first.adjacent(u, v) {
                    continue;
                }
                let a = pivot(&del_first, u, v).unwrap();
                let mut b = pivot(&g, u, v).unwrap();
                b.isolate(w);
                assert_eq!(a, b);
            }
        }
    }

    #[test]
    fn oracle_small_cycles() {
        assert!(has_pivot_minor(&Graph::cycle(5), 3).unwrap());
        assert!(!has_pivot_minor(&Graph::cycle(6), 5).unwrap());
        assert!(has_pivot_minor(&Graph::cycle(6), 4).unwrap());
    }

    #[test]
    fn oracle_produces_verified_witness() {
        let c7 = Graph::cycle(7);
        let w = find_ck_pivot_minor(&c7, 5, DEFAULT_ORBIT_MEMBER_CAP, DEFAULT_ORBIT_N_CAP)
            .unwrap()
            .unwrap();
        assert!(verify_ck_witness(&c7, &w));
    }

    #[test]
    fn witness_json_round_trip() {
        let c6 = Graph::cycle(6);
        let mut w = Witness::new(&c6, 4);
        w.ops = vec![
            WitnessOp::Pivot([0, 1]),
            WitnessOp::Delete(0),
            WitnessOp::Delete(1),
        ];
        let text = w.to_json();
        let back = Witness::from_json(&text).unwrap();
        assert_eq!(back, w);
        assert!(verify_ck_witness(&c6, &back));
    }
}
