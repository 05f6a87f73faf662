//! Structural decomposition tools: dominating skeleton, weighted-tree split,
//! connected-piece extraction, stable-set trimming, and the sparse-restriction
//! finder.

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::graph::{Graph, PairKind, PurePair, VertexSet};
use crate::{Error, RationalWeight, Result};

// ---------------------------------------------------------------------------
// dominating skeleton
// ---------------------------------------------------------------------------

/// A rooted tree embedded in a host graph together with an assignment of every
/// host vertex to an adjacent tree vertex. The contract is deliberately weaker
/// than an induced subtree (which does not always exist): tree edges are host
/// edges, every root-to-node path is induced, and host-adjacent vertices map
/// to related tree nodes.
#[derive(Clone, Debug)]
pub struct Skeleton {
    pub host: Graph,
    pub root: usize,
    /// `parent[v] = Some(p)` for non-root tree vertices; `None` otherwise.
    pub parent: Vec<Option<usize>>,
    /// `rmap[v]` is the tree vertex dominating `v`.
    pub rmap: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct SkeletonJson {
    root: usize,
    parent: Vec<Option<usize>>,
    rmap: Vec<usize>,
}

impl Skeleton {
    pub fn is_tree_vertex(&self, v: usize) -> bool {
        v == self.root || self.parent[v].is_some()
    }

    pub fn tree_vertices(&self) -> Vec<usize> {
        (0..self.host.n()).filter(|&v| self.is_tree_vertex(v)).collect()
    }

    /// Tree path root..v inclusive; errors if `v` is not a tree vertex.
    pub fn root_path(&self, v: usize) -> Result<Vec<usize>> {
        if !self.is_tree_vertex(v) {
            return Err(Error::InvalidInput(format!("{v} is not a skeleton tree vertex")));
        }
        let mut path = vec![v];
        let mut cur = v;
        while let Some(p) = self.parent[cur] {
            path.push(p);
            cur = p;
            if path.len() > self.host.n() {
                return Err(Error::Internal("parent pointers contain a cycle".into()));
            }
        }
        path.reverse();
        Ok(path)
    }

    /// Ancestor order, inclusive.
    pub fn related(&self, a: usize, b: usize) -> Result<bool> {
        Ok(self.root_path(a)?.contains(&b) || self.root_path(b)?.contains(&a))
    }

    /// Host vertices mapped onto the given tree nodes.
    pub fn preimage<I: IntoIterator<Item = usize>>(&self, nodes: I) -> Result<VertexSet> {
        let mut mark = vec![false; self.host.n()];
        for t in nodes {
            if !self.is_tree_vertex(t) {
                return Err(Error::InvalidInput(format!("{t} is not a skeleton tree vertex")));
            }
            mark[t] = true;
        }
        VertexSet::from_iter(
            self.host.n(),
            (0..self.host.n()).filter(|&v| mark[self.rmap[v]]),
        )
    }

    /// Validates the four type invariants.
    pub fn check(&self) -> Result<()> {
        let n = self.host.n();
        if self.root >= n || self.parent.len() != n || self.rmap.len() != n {
            return Err(Error::InvalidInput("skeleton arrays sized wrong".into()));
        }
        if self.parent[self.root].is_some() {
            return Err(Error::InvalidInput("root has a parent".into()));
        }
        for v in 0..n {
            if let Some(p) = self.parent[v] {
                if !self.host.adjacent(v, p) {
                    return Err(Error::InvalidInput(format!("tree edge {v}-{p} not a host edge")));
                }
                if !self.is_tree_vertex(p) {
                    return Err(Error::InvalidInput(format!("parent {p} of {v} not in tree")));
                }
            }
        }
        // every tree vertex reaches the root (acyclic parent structure)
        for v in 0..n {
            if self.is_tree_vertex(v) {
                let path = self.root_path(v)?;
                if path[0] != self.root {
                    return Err(Error::InvalidInput("root path does not start at root".into()));
                }
                if !self.host.is_induced_path(&path)? && path.len() > 1 {
                    return Err(Error::InvalidInput(format!("root path to {v} not induced")));
                }
            }
        }
        if self.rmap[self.root] != self.root {
            return Err(Error::InvalidInput("rmap(root) != root".into()));
        }
        for v in 0..n {
            let t = self.rmap[v];
            if !self.is_tree_vertex(t) {
                return Err(Error::InvalidInput(format!("rmap({v}) not a tree vertex")));
            }
            if v != self.root && !self.host.adjacent(v, t) {
                return Err(Error::InvalidInput(format!("rmap({v})={t} not a host neighbor")));
            }
        }
        for (x, y) in self.host.edges() {
            if !self.related(self.rmap[x], self.rmap[y])? {
                return Err(Error::InvalidInput(format!(
                    "host edge {x}-{y} maps to unrelated tree nodes"
                )));
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&SkeletonJson {
            root: self.root,
            parent: self.parent.clone(),
            rmap: self.rmap.clone(),
        })
        .expect("skeleton serializes")
    }

    pub fn from_json(host: &Graph, text: &str) -> Result<Skeleton> {
        let j: SkeletonJson = serde_json::from_str(text)?;
        let s = Skeleton {
            host: host.clone(),
            root: j.root,
            parent: j.parent,
            rmap: j.rmap,
        };
        s.check()?;
        Ok(s)
    }
}

/// Territory recursion: each tree vertex dominates its immediate territory,
/// leftover components are handed to a lowest-index adjacent connector, which
/// joins the tree as a child.
pub fn dominating_skeleton(g: &Graph, root: usize) -> Result<Skeleton> {
    let n = g.n();
    if root >= n {
        return Err(Error::VertexOutOfRange(root, n));
    }
    if !g.is_connected() {
        return Err(Error::Precondition("dominating skeleton needs a connected host".into()));
    }
    let mut parent: Vec<Option<usize>> = vec![None; n];
    let mut rmap: Vec<usize> = vec![usize::MAX; n];
    rmap[root] = root;

    let mut territory0 = VertexSet::full(n);
    territory0.remove(root);
    let mut stack: Vec<(usize, VertexSet)> = vec![(root, territory0)];

    while let Some((t, c)) = stack.pop() {
        let x: Vec<usize> = c.iter().filter(|&v| g.adjacent(t, v)).collect();
        for &v in &x {
            rmap[v] = t;
        }
        let mut rest = c.clone();
        for &v in &x {
            rest.remove(v);
        }
        if rest.is_empty() {
            continue;
        }
        let (sub, remap) = g.induced_subgraph(&rest)?;
        // bucket leftover components by their chosen connector
        let mut assigned: Vec<(usize, VertexSet)> = Vec::new();
        for comp in sub.components() {
            let verts: Vec<usize> = comp.iter().map(|i| remap[i]).collect();
            let connector = x
                .iter()
                .copied()
                .find(|&cx| verts.iter().any(|&q| g.adjacent(cx, q)))
                .ok_or_else(|| {
                    Error::Internal("territory component with no boundary connector".into())
                })?;
            match assigned.iter_mut().find(|(cx, _)| *cx == connector) {
                Some((_, set)) => {
                    for &q in &verts {
                        set.insert(q);
                    }
                }
                None => {
                    assigned.push((connector, VertexSet::from_iter(n, verts.iter().copied())?))
                }
            }
        }
        for (connector, sub_territory) in assigned {
            parent[connector] = Some(t);
            stack.push((connector, sub_territory));
        }
    }

    let s = Skeleton {
        host: g.clone(),
        root,
        parent,
        rmap,
    };
    s.check()?;
    Ok(s)
}

// ---------------------------------------------------------------------------
// weighted trees and the 1/4 split
// ---------------------------------------------------------------------------

/// Scalar type for tree-split weights. Exact rationals get a zero tolerance;
/// floats accept a small slack in the total-weight check.
pub trait Weight:
    Clone
    + PartialOrd
    + std::ops::Add<Output = Self>
    + std::ops::Sub<Output = Self>
    + std::ops::Div<Output = Self>
    + num_traits::Zero
    + num_traits::One
{
    fn tolerance() -> Self {
        Self::zero()
    }
    fn quarter() -> Self {
        let four = Self::one() + Self::one() + Self::one() + Self::one();
        Self::one() / four
    }
}

impl Weight for f64 {
    fn tolerance() -> Self {
        1e-9
    }
}

impl Weight for Ratio<i64> {}

/// Abstract rooted tree on nodes `0..len`, one weight per node, total 1.
#[derive(Clone, Debug)]
pub struct WeightedTree<W: Weight> {
    /// `parent[v] = None` exactly for the root.
    pub parent: Vec<Option<usize>>,
    pub root: usize,
    pub weight: Vec<W>,
}

impl<W: Weight> WeightedTree<W> {
    pub fn new(parent: Vec<Option<usize>>, weight: Vec<W>) -> Result<Self> {
        let m = parent.len();
        if weight.len() != m || m == 0 {
            return Err(Error::InvalidInput("tree arrays empty or sized wrong".into()));
        }
        let roots: Vec<usize> = (0..m).filter(|&v| parent[v].is_none()).collect();
        if roots.len() != 1 {
            return Err(Error::InvalidInput(format!("expected one root, found {}", roots.len())));
        }
        let t = WeightedTree {
            parent,
            root: roots[0],
            weight,
        };
        t.validate()?;
        Ok(t)
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn validate(&self) -> Result<()> {
        let m = self.len();
        let mut total = W::zero();
        for w in &self.weight {
            if *w < W::zero() {
                return Err(Error::InvalidInput("negative weight".into()));
            }
            total = total + w.clone();
        }
        let diff = if total < W::one() {
            W::one() - total
        } else {
            total - W::one()
        };
        if diff > W::tolerance() {
            return Err(Error::InvalidInput("weights do not sum to 1".into()));
        }
        for v in 0..m {
            let mut cur = v;
            let mut hops = 0;
            while let Some(p) = self.parent[cur] {
                cur = p;
                hops += 1;
                if hops > m {
                    return Err(Error::InvalidInput("parent pointers contain a cycle".into()));
                }
            }
            if cur != self.root {
                return Err(Error::InvalidInput("node does not reach the root".into()));
            }
        }
        Ok(())
    }

    pub fn root_path(&self, v: usize) -> Vec<usize> {
        let mut path = vec![v];
        let mut cur = v;
        while let Some(p) = self.parent[cur] {
            path.push(p);
            cur = p;
        }
        path.reverse();
        path
    }

    pub fn related(&self, a: usize, b: usize) -> bool {
        self.root_path(a).contains(&b) || self.root_path(b).contains(&a)
    }

    pub fn children(&self) -> Vec<Vec<usize>> {
        let mut ch = vec![Vec::new(); self.len()];
        for v in 0..self.len() {
            if let Some(p) = self.parent[v] {
                ch[p].push(v);
            }
        }
        ch
    }

    /// Subtree weights, computed bottom-up.
    pub fn subtree_weights(&self) -> Vec<W> {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&v| std::cmp::Reverse(self.root_path(v).len()));
        let mut sw: Vec<W> = self.weight.clone();
        for &v in &order {
            if let Some(p) = self.parent[v] {
                sw[p] = sw[p].clone() + sw[v].clone();
            }
        }
        sw
    }

    pub fn subtree_nodes(&self, v: usize) -> Vec<usize> {
        (0..self.len()).filter(|&u| self.root_path(u).contains(&v)).collect()
    }

    pub fn weight_of<I: IntoIterator<Item = usize>>(&self, nodes: I) -> W {
        nodes
            .into_iter()
            .fold(W::zero(), |acc, v| acc + self.weight[v].clone())
    }
}

#[derive(Clone, Debug)]
pub enum TreeSplit {
    /// Root-to-node path of weight at least 1/4.
    RootPath(Vec<usize>),
    /// Two unrelated node sets, each of weight at least 1/4.
    Unrelated(Vec<usize>, Vec<usize>),
}

/// Validates a split against its tree: genuine root path with enough weight,
/// or genuinely unrelated sets with enough weight on both sides.
pub fn validate_split<W: Weight>(t: &WeightedTree<W>, split: &TreeSplit) -> Result<()> {
    match split {
        TreeSplit::RootPath(path) => {
            if path.is_empty() || *path != t.root_path(*path.last().unwrap()) {
                return Err(Error::InvalidInput("not a root path".into()));
            }
            if t.weight_of(path.iter().copied()) < W::quarter() {
                return Err(Error::InvalidInput("root path weight below 1/4".into()));
            }
        }
        TreeSplit::Unrelated(a, b) => {
            for &x in a {
                for &y in b {
                    if x == y || t.related(x, y) {
                        return Err(Error::InvalidInput(format!(
                            "nodes {x} and {y} are related across the split"
                        )));
                    }
                }
            }
            if t.weight_of(a.iter().copied()) < W::quarter()
                || t.weight_of(b.iter().copied()) < W::quarter()
            {
                return Err(Error::InvalidInput("a split side weighs below 1/4".into()));
            }
        }
    }
    Ok(())
}

/// Either a heavy root path or two heavy unrelated sets. Core/fringe argument:
/// when no root path reaches 1/4, the nodes with heavy subtrees form either a
/// branching core (two incomparable heavy subtrees) or a light chain whose
/// fringe subtrees are pairwise unrelated and carry at least 3/4 in total.
pub fn heavy_path_or_unrelated<W: Weight>(t: &WeightedTree<W>) -> Result<TreeSplit> {
    t.validate()?;
    let m = t.len();
    let quarter = W::quarter();

    let mut best: Option<usize> = None;
    let mut best_w = W::zero();
    for v in 0..m {
        let w = t.weight_of(t.root_path(v));
        if best.is_none() || w > best_w {
            best = Some(v);
            best_w = w;
        }
    }
    let best = best.expect("nonempty tree");
    if best_w >= quarter {
        let split = TreeSplit::RootPath(t.root_path(best));
        validate_split(t, &split)?;
        return Ok(split);
    }

    let sw = t.subtree_weights();
    let in_core = |v: usize| sw[v] >= quarter;
    let children = t.children();
    let core_leaves: Vec<usize> = (0..m)
        .filter(|&v| in_core(v) && !children[v].iter().any(|&c| in_core(c)))
        .collect();
    debug_assert!(in_core(t.root), "root subtree carries total weight 1");
    let split = if core_leaves.len() >= 2 {
        TreeSplit::Unrelated(t.subtree_nodes(core_leaves[0]), t.subtree_nodes(core_leaves[1]))
    } else {
        // single core leaf: the core is a root chain of path weight < 1/4;
        // its fringe subtrees each weigh < 1/4 and total > 3/4
        let chain = t.root_path(core_leaves[0]);
        let fringe_roots: Vec<usize> = chain
            .iter()
            .flat_map(|&v| children[v].iter().copied())
            .filter(|&c| !chain.contains(&c))
            .collect();
        let mut a: Vec<usize> = Vec::new();
        let mut a_w = W::zero();
        let mut rest: Vec<usize> = Vec::new();
        for &f in &fringe_roots {
            if a_w < quarter {
                a_w = a_w + sw[f].clone();
                a.extend(t.subtree_nodes(f));
            } else {
                rest.extend(t.subtree_nodes(f));
            }
        }
        TreeSplit::Unrelated(a, rest)
    };
    validate_split(t, &split)?;
    Ok(split)
}

/// Weighted tree over a skeleton's tree vertices, node `i` standing for the
/// `i`-th tree vertex (returned as the node-to-host map); weights count rmap
/// preimages over the host size.
pub fn skeleton_weighted_tree(s: &Skeleton) -> Result<(WeightedTree<RationalWeight>, Vec<usize>)> {
    let nodes = s.tree_vertices();
    let index: std::collections::HashMap<usize, usize> =
        nodes.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let n = s.host.n() as i64;
    let mut weight = vec![Ratio::new(0, 1); nodes.len()];
    for v in 0..s.host.n() {
        weight[index[&s.rmap[v]]] += Ratio::new(1, n);
    }
    let parent: Vec<Option<usize>> = nodes.iter().map(|&v| s.parent[v].map(|p| index[&p])).collect();
    Ok((WeightedTree::new(parent, weight)?, nodes))
}

// ---------------------------------------------------------------------------
// connected piece or pure pair
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
pub enum Piece {
    /// Vertex set of size >= n/3 inducing a connected subgraph.
    Connected(VertexSet),
    /// Anticomplete pair with both sides >= n/3.
    Pure(PurePair),
}

pub fn connected_or_purepair(g: &Graph) -> Result<Piece> {
    let n = g.n();
    if n == 0 {
        return Err(Error::Precondition("empty graph".into()));
    }
    let comps = g.components();
    if let Some(c) = comps.iter().find(|c| 3 * c.len() >= n) {
        return Ok(Piece::Connected(c.clone()));
    }
    let mut a = VertexSet::empty(n);
    for c in &comps {
        a.union_with(c);
        if 3 * a.len() >= n {
            break;
        }
    }
    let pair = PurePair {
        a: a.clone(),
        b: a.complement_set(),
        kind: PairKind::Anticomplete,
    };
    pair.verify(g)?;
    if 3 * pair.b.len() < n {
        return Err(Error::Internal("greedy packing overshot 2n/3".into()));
    }
    Ok(Piece::Pure(pair))
}

// ---------------------------------------------------------------------------
// stable trimming
// ---------------------------------------------------------------------------

/// Keeps the vertices of `u` whose degree inside `g[u]` is at most
/// `2*eps*|u|`. Returns the trimmed set and whether the sparsity precondition
/// (at most `eps*C(|u|,2)` edges inside `u`) held; the size and max-degree
/// postconditions are re-checked whenever it did.
pub fn stable_trim(g: &Graph, u: &VertexSet, eps: f64) -> Result<(VertexSet, bool)> {
    if u.is_empty() {
        return Err(Error::EmptySet);
    }
    let m = u.len();
    let deg_in = |v: usize, s: &VertexSet| g.neighbors(v).filter(|&w| s.contains(w)).count();
    let inner_edges: usize = u.iter().map(|v| deg_in(v, u)).sum::<usize>() / 2;
    let pre_ok = inner_edges as f64 <= eps * (m * (m - 1)) as f64 / 2.0;
    let bound = 2.0 * eps * m as f64;
    let kept = VertexSet::from_iter(g.n(), u.iter().filter(|&v| deg_in(v, u) as f64 <= bound))?;
    if pre_ok {
        if 2 * kept.len() < m {
            return Err(Error::Internal("trim kept fewer than half the vertices".into()));
        }
        let max_deg = kept.iter().map(|v| deg_in(v, &kept)).max().unwrap_or(0);
        if max_deg as f64 > 4.0 * eps * kept.len() as f64 {
            return Err(Error::Internal("trim exceeded the 4*eps degree bound".into()));
        }
    }
    Ok((kept, pre_ok))
}

// ---------------------------------------------------------------------------
// restriction finder
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Direct,
    Complement,
}

/// Greedy max-degree peeling on `g` and on its complement; returns the larger
/// surviving set with its side. Postcondition-verified, no size guarantee.
pub fn restriction_finder(g: &Graph, alpha: f64) -> Result<(VertexSet, Side)> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::Precondition(format!("alpha must be in (0,1), got {alpha}")));
    }
    if g.n() == 0 {
        return Err(Error::Precondition("empty graph".into()));
    }
    let peel = |h: &Graph| -> VertexSet {
        let mut u = VertexSet::full(h.n());
        loop {
            let degs: Vec<(usize, usize)> = u
                .iter()
                .map(|v| (h.neighbors(v).filter(|&w| u.contains(w)).count(), v))
                .collect();
            let &(dmax, vmax) = degs.iter().max_by_key(|&&(d, v)| (d, std::cmp::Reverse(v))).unwrap();
            if dmax as f64 <= alpha * u.len() as f64 {
                return u;
            }
            u.remove(vmax);
        }
    };
    let direct = peel(g);
    let comp = peel(&g.complement());
    let (u, side, h) = if direct.len() >= comp.len() {
        (direct, Side::Direct, g.clone())
    } else {
        (comp, Side::Complement, g.complement())
    };
    let max_deg = u
        .iter()
        .map(|v| h.neighbors(v).filter(|&w| u.contains(w)).count())
        .max()
        .unwrap_or(0);
    if max_deg as f64 > alpha * u.len() as f64 {
        return Err(Error::Internal("peeled set violates its own degree bound".into()));
    }
    Ok((u, side))
}

// ---------------------------------------------------------------------------
// exhaustive small-tree instruments (used by the oracle tests)
// ---------------------------------------------------------------------------

/// All rooted trees on `n` nodes up to isomorphism, as parent vectors with
/// `parent[0] = None` and `parent[i] < i`. Test instrument.
pub fn enumerate_rooted_trees(n: usize) -> Vec<Vec<Option<usize>>> {
    if n == 0 {
        return Vec::new();
    }
    let mut out: Vec<Vec<Option<usize>>> = Vec::new();
    let mut seen: std::collections::HashSet<String> = std::collections::HashSet::new();
    let mut parent: Vec<Option<usize>> = vec![None; n];
    fn rec(
        i: usize,
        n: usize,
        parent: &mut Vec<Option<usize>>,
        seen: &mut std::collections::HashSet<String>,
        out: &mut Vec<Vec<Option<usize>>>,
    ) {
        if i == n {
            let sig = shape_signature(parent);
            if seen.insert(sig) {
                out.push(parent.clone());
            }
            return;
        }
        for p in 0..i {
            parent[i] = Some(p);
            rec(i + 1, n, parent, seen, out);
        }
    }
    rec(1, n, &mut parent, &mut seen, &mut out);
    out
}

/// Canonical shape string: sorted child signatures, recursively.
fn shape_signature(parent: &[Option<usize>]) -> String {
    let n = parent.len();
    let mut children = vec![Vec::new(); n];
    let mut root = 0;
    for v in 0..n {
        match parent[v] {
            Some(p) => children[p].push(v),
            None => root = v,
        }
    }
    fn sig(v: usize, children: &[Vec<usize>]) -> String {
        let mut parts: Vec<String> = children[v].iter().map(|&c| sig(c, children)).collect();
        parts.sort();
        format!("({})", parts.join(""))
    }
    sig(root, &children)
}

/// Exhaustive oracle: does the tree admit a >= 1/4 root path, or a pair of
/// unrelated sets each >= 1/4? Test instrument for trees of at most ~10 nodes.
pub fn split_exists_oracle<W: Weight>(t: &WeightedTree<W>) -> bool {
    let m = t.len();
    let quarter = W::quarter();
    if (0..m).any(|v| t.weight_of(t.root_path(v)) >= quarter) {
        return true;
    }
    // any unrelated split can be closed downward, so it suffices to scan
    // antichains of subtree roots and two-color them by subtree weight
    let sw = t.subtree_weights();
    let nodes: Vec<usize> = (0..m).collect();
    for mask in 1u32..(1 << m) {
        let r: Vec<usize> = nodes.iter().copied().filter(|&v| mask >> v & 1 == 1).collect();
        if r.len() < 2 || r.iter().any(|&a| r.iter().any(|&b| a != b && t.related(a, b))) {
            continue;
        }
        let total = r.iter().fold(W::zero(), |acc, &v| acc + sw[v].clone());
        for sub in 0u32..(1 << r.len()) {
            let wa = r
                .iter()
                .enumerate()
                .filter(|(i, _)| sub >> i & 1 == 1)
                .fold(W::zero(), |acc, (_, &v)| acc + sw[v].clone());
            if wa >= quarter && total.clone() - wa >= quarter {
                return true;
            }
        }
    }
    false
}
