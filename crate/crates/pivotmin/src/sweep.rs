//! Window-sweep engine over a dominating induced path: in pivot mode it
//! returns a verified pure pair or a witness to a `C_k` pivot-minor; in hole
//! mode (the parity-free variant) a pure pair or a long hole.

use serde::{Deserialize, Serialize};

use crate::constructions::{classify_fan, cycle_reduce, fan_extract};
use crate::graph::{Graph, PairKind, PurePair, VertexSet};
use crate::pivot::{verify_ck_witness_detail, Witness};
use crate::{Error, Result};

// ---------------------------------------------------------------------------
// certificates
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
pub enum Certificate {
    PurePair(PurePair),
    Witness(Witness),
    /// Induced cycle, listed in cyclic order.
    Hole(Vec<usize>),
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
enum CertJson {
    PurePair {
        a: Vec<usize>,
        b: Vec<usize>,
        kind: PairKind,
    },
    Witness {
        witness: Witness,
    },
    Hole {
        order: Vec<usize>,
    },
}

impl Certificate {
    pub fn kind_str(&self) -> &'static str {
        match self {
            Certificate::PurePair(_) => "pure_pair",
            Certificate::Witness(_) => "witness",
            Certificate::Hole(_) => "hole",
        }
    }

    pub fn to_json(&self) -> String {
        let j = match self {
            Certificate::PurePair(p) => CertJson::PurePair {
                a: p.a.iter().collect(),
                b: p.b.iter().collect(),
                kind: p.kind,
            },
            Certificate::Witness(w) => CertJson::Witness { witness: w.clone() },
            Certificate::Hole(order) => CertJson::Hole {
                order: order.clone(),
            },
        };
        serde_json::to_string_pretty(&j).expect("certificate serializes")
    }

    pub fn from_json(g: &Graph, text: &str) -> Result<Certificate> {
        Ok(match serde_json::from_str(text)? {
            CertJson::PurePair { a, b, kind } => Certificate::PurePair(PurePair {
                a: VertexSet::from_iter(g.n(), a)?,
                b: VertexSet::from_iter(g.n(), b)?,
                kind,
            }),
            CertJson::Witness { witness } => Certificate::Witness(witness),
            CertJson::Hole { order } => Certificate::Hole(order),
        })
    }

    /// Verifies against the host: pure pairs check all cross pairs, witnesses
    /// replay to a single `C_k`, holes must be induced cycles of length at
    /// least `min_hole`.
    pub fn verify(&self, g: &Graph, k: usize, min_hole: usize) -> Result<()> {
        match self {
            Certificate::PurePair(p) => p.verify(g),
            Certificate::Witness(w) => {
                if w.target_k != k {
                    return Err(Error::InvalidInput(format!(
                        "witness targets k={}, expected {k}",
                        w.target_k
                    )));
                }
                verify_ck_witness_detail(g, w)
            }
            Certificate::Hole(order) => {
                if order.len() < min_hole {
                    return Err(Error::InvalidInput(format!(
                        "hole length {} below bound {min_hole}",
                        order.len()
                    )));
                }
                if !g.is_induced_cycle(order)? {
                    return Err(Error::InvalidInput("hole is not an induced cycle".into()));
                }
                Ok(())
            }
        }
    }
}

// ---------------------------------------------------------------------------
// sweep state
// ---------------------------------------------------------------------------

/// Per-window classification of the off-path vertices. Path positions are the
/// 1-based labels `1..=s`; `U^- = {1..i-1}`, `U^0 = {i..i+width-1}`,
/// `U^+ = {i+width..s}`.
#[derive(Clone, Debug)]
pub struct SweepState {
    pub i: usize,
    pub width: usize,
    pub s: usize,
    /// Off-path vertices with a neighbor in the window `U^0`.
    pub a: Vec<usize>,
    /// Neighbors on both outer sides, none in the window.
    pub b: Vec<usize>,
    /// Neighbors only below the window, split by the parity of `m^-`.
    pub c1: Vec<usize>,
    pub c2: Vec<usize>,
    /// Neighbors only above the window, split by `m^+` against `width`.
    pub d1: Vec<usize>,
    pub d2: Vec<usize>,
    /// Largest path-neighbor label in `U^-`, per host vertex.
    pub m_minus: Vec<Option<usize>>,
    /// Smallest path-neighbor label in `U^+`, per host vertex.
    pub m_plus: Vec<Option<usize>>,
}

impl SweepState {
    pub fn f(&self) -> usize {
        self.c1.len() + self.c2.len()
    }
}

pub fn build_sweep_state(g: &Graph, p: &[usize], i: usize, width: usize) -> Result<SweepState> {
    let s = p.len();
    if i < 1 || i + width > s + 2 || i > s {
        return Err(Error::InvalidInput(format!("window index {i} out of range for s={s}")));
    }
    let mut label: Vec<Option<usize>> = vec![None; g.n()];
    for (idx, &v) in p.iter().enumerate() {
        label[v] = Some(idx + 1);
    }
    let mut st = SweepState {
        i,
        width,
        s,
        a: Vec::new(),
        b: Vec::new(),
        c1: Vec::new(),
        c2: Vec::new(),
        d1: Vec::new(),
        d2: Vec::new(),
        m_minus: vec![None; g.n()],
        m_plus: vec![None; g.n()],
    };
    for u in 0..g.n() {
        if label[u].is_some() {
            continue;
        }
        let labels: Vec<usize> = g.neighbors(u).filter_map(|w| label[w]).collect();
        if labels.is_empty() {
            return Err(Error::Precondition(format!("vertex {u} is not dominated by the path")));
        }
        let m_minus = labels.iter().copied().filter(|&j| j < i).max();
        let m_plus = labels.iter().copied().filter(|&j| j >= i + width).min();
        st.m_minus[u] = m_minus;
        st.m_plus[u] = m_plus;
        let in_window = labels.iter().any(|&j| j >= i && j < i + width);
        if in_window {
            st.a.push(u);
        } else if m_minus.is_some() && m_plus.is_some() {
            st.b.push(u);
        } else if let Some(m) = m_minus {
            if m % 2 == 1 {
                st.c1.push(u);
            } else {
                st.c2.push(u);
            }
        } else {
            let m = m_plus.expect("off-window vertex has a path neighbor on some side");
            if m % 2 == width % 2 {
                st.d1.push(u);
            } else {
                st.d2.push(u);
            }
        }
    }
    let classified =
        st.a.len() + st.b.len() + st.c1.len() + st.c2.len() + st.d1.len() + st.d2.len();
    if classified + s != g.n() {
        return Err(Error::Internal("seven-way partition does not cover the graph".into()));
    }
    Ok(st)
}

// ---------------------------------------------------------------------------
// shared helpers
// ---------------------------------------------------------------------------

/// Path segment by 1-based labels, inclusive, ascending.
fn seg(p: &[usize], lo: usize, hi: usize) -> Vec<usize> {
    (lo..=hi).map(|j| p[j - 1]).collect()
}

/// Same segment, descending.
fn seg_rev(p: &[usize], hi: usize, lo: usize) -> Vec<usize> {
    (lo..=hi).rev().map(|j| p[j - 1]).collect()
}

fn cert_cycle(g: &Graph, order: &[usize], k: usize) -> Result<Certificate> {
    if order.len() < k || order.len() % 2 != k % 2 {
        return Err(Error::Internal(format!(
            "sweep produced a cycle of length {} for k={k}",
            order.len()
        )));
    }
    if !g.is_induced_cycle(order)? {
        return Err(Error::Internal("sweep cycle is not induced".into()));
    }
    Ok(Certificate::Witness(cycle_reduce(g, order, k)?))
}

fn cert_fan(g: &Graph, center: usize, main_path: &[usize], k: usize) -> Result<Certificate> {
    let d = classify_fan(g, center, main_path)?;
    if !d.strongly_k_good(k) {
        return Err(Error::Internal("sweep fan is not strongly k-good".into()));
    }
    Ok(Certificate::Witness(fan_extract(&d, k)?))
}

fn singleton_pair(g: &Graph) -> Result<Certificate> {
    let n = g.n();
    for u in 0..n {
        for v in u + 1..n {
            if !g.adjacent(u, v) {
                let pair = PurePair {
                    a: VertexSet::from_iter(n, [u])?,
                    b: VertexSet::from_iter(n, [v])?,
                    kind: PairKind::Anticomplete,
                };
                pair.verify(g)?;
                return Ok(Certificate::PurePair(pair));
            }
        }
    }
    // complete graph: any edge
    let pair = PurePair {
        a: VertexSet::from_iter(n, [0])?,
        b: VertexSet::from_iter(n, [1])?,
        kind: PairKind::Complete,
    };
    pair.verify(g)?;
    Ok(Certificate::PurePair(pair))
}

fn path_halves(g: &Graph, p: &[usize]) -> Result<Certificate> {
    let s = p.len();
    let a_end = (s - 1) / 2;
    let pair = PurePair {
        a: VertexSet::from_iter(g.n(), p[..a_end].iter().copied())?,
        b: VertexSet::from_iter(g.n(), p[a_end + 1..].iter().copied())?,
        kind: PairKind::Anticomplete,
    };
    pair.verify(g)?;
    Ok(Certificate::PurePair(pair))
}

fn check_path(g: &Graph, p: &[usize]) -> Result<()> {
    if p.len() < 2 {
        return Err(Error::Precondition("path needs at least two vertices".into()));
    }
    if !g.is_induced_path(p)? {
        return Err(Error::Precondition("supplied order is not an induced path".into()));
    }
    let on = VertexSet::from_iter(g.n(), p.iter().copied())?;
    for v in 0..g.n() {
        if !on.contains(v) && !g.neighbors(v).any(|w| on.contains(w)) {
            return Err(Error::Precondition(format!("vertex {v} is not dominated by the path")));
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// pivot mode
// ---------------------------------------------------------------------------

/// Window sweep along a dominating path. Returns, at the first clause that fires, either an
/// anticomplete pure pair with both sides at least `eps*n` or a verified
/// witness to `C_k`. Total for k >= 5 under the stated preconditions.
pub fn sweep_pivot_mode(
    g: &Graph,
    p: &[usize],
    k: usize,
    alpha: f64,
    eps: f64,
) -> Result<Certificate> {
    let n = g.n();
    if n < 2 || k < 3 {
        return Err(Error::Precondition("need n >= 2 and k >= 3".into()));
    }
    if g.max_degree() as f64 > alpha * n as f64 {
        return Err(Error::Precondition(format!(
            "max degree {} exceeds alpha*n = {}",
            g.max_degree(),
            alpha * n as f64
        )));
    }
    if !(alpha > 0.0 && alpha < 1.0 / (2.0 * k as f64)) {
        return Err(Error::Precondition(format!("alpha={alpha} outside (0, 1/(2k))")));
    }
    if !(eps > 0.0 && eps <= (1.0 - (k as f64 + 3.0) * alpha) / 20.0) {
        return Err(Error::Precondition(format!(
            "eps={eps} outside (0, (1-(k+3)alpha)/20]"
        )));
    }
    check_path(g, p)?;
    let s = p.len();
    let nf = n as f64;

    // (0) trivial outs: a long path gives its two halves; tiny eps*n gives
    // two singletons
    if s as f64 >= 2.0 * eps * nf + 2.0 {
        return path_halves(g, p);
    }
    if eps * nf <= 1.0 {
        return singleton_pair(g);
    }
    if s < k {
        return Err(Error::Precondition(format!("path length {s} shorter than the window {k}")));
    }

    let mut f_prev = 0usize;
    let mut at_star: Option<SweepState> = None;
    for i in 1..=s - k + 1 {
        let st = build_sweep_state(g, p, i, k)?;
        let f = st.f();
        if f < f_prev {
            return Err(Error::Internal("C-classes shrank along the sweep".into()));
        }
        if i > 1 && f - f_prev > g.degree(p[i - 2]) {
            return Err(Error::Internal("window bookkeeping: f moved too fast".into()));
        }
        f_prev = f;

        // (1) a B-vertex whose outer reach has the wrong parity closes a
        // long same-parity cycle
        for &u in &st.b {
            let (mm, mp) = (st.m_minus[u].unwrap(), st.m_plus[u].unwrap());
            if (mp - mm) % 2 == k % 2 {
                let mut order = vec![u];
                order.extend(seg(p, mm, mp));
                return cert_cycle(g, &order, k);
            }
        }
        // (2) a B-vertex with two opposite-parity neighbors on one outer
        // side centers a strongly k-good fan
        for &u in &st.b {
            let labels: Vec<usize> = p
                .iter()
                .enumerate()
                .filter(|(_, &w)| g.adjacent(u, w))
                .map(|(idx, _)| idx + 1)
                .collect();
            let (mm, mp) = (st.m_minus[u].unwrap(), st.m_plus[u].unwrap());
            if let Some(b_lab) = labels
                .iter()
                .copied()
                .filter(|&j| j >= i + k && j % 2 != mp % 2)
                .min()
            {
                let main = seg(p, mm, b_lab);
                return cert_fan(g, u, &main, k);
            }
            if let Some(a_lab) = labels
                .iter()
                .copied()
                .filter(|&j| j < i && j % 2 != mm % 2)
                .max()
            {
                let main = seg(p, a_lab, mp);
                return cert_fan(g, u, &main, k);
            }
        }
        // (3) an oversized B forces either a certificate from one of its
        // edges or a pure pair from its small components
        if st.b.len() as f64 >= 2.0 * (alpha + 2.0 * eps) * nf {
            if let Some(cert) = clause_big_b(g, p, &st, k, alpha, eps)? {
                return Ok(cert);
            }
        }
        if f as f64 >= 6.0 * eps * nf {
            if (f as f64) >= (6.0 * eps + alpha) * nf {
                return Err(Error::Internal("f overshot its window at the first crossing".into()));
            }
            at_star = Some(st);
            break;
        }
    }

    let st = at_star
        .ok_or_else(|| Error::Internal("no window accumulated enough C-vertices".into()))?;
    clause_cd(g, p, &st, k, eps)
}

/// Oversized-`B_i` clause: inside the majority-parity core, an edge
/// whose endpoints disagree on `(m^-, m^+)` yields a fan or cycle; if all
/// edges agree, the components are small and group into a pure pair.
fn clause_big_b(
    g: &Graph,
    p: &[usize],
    st: &SweepState,
    k: usize,
    alpha: f64,
    eps: f64,
) -> Result<Option<Certificate>> {
    let nf = g.n() as f64;
    let odd: Vec<usize> = st
        .b
        .iter()
        .copied()
        .filter(|&u| st.m_minus[u].unwrap() % 2 == 1)
        .collect();
    let even: Vec<usize> = st
        .b
        .iter()
        .copied()
        .filter(|&u| st.m_minus[u].unwrap() % 2 == 0)
        .collect();
    let bp = if odd.len() >= even.len() { odd } else { even };

    for (ai, &u) in bp.iter().enumerate() {
        for &v in &bp[ai + 1..] {
            if !g.adjacent(u, v) {
                continue;
            }
            let (um, up) = (st.m_minus[u].unwrap(), st.m_plus[u].unwrap());
            let (vm, vp) = (st.m_minus[v].unwrap(), st.m_plus[v].unwrap());
            if (um, up) == (vm, vp) {
                continue;
            }
            if um != vm {
                // orient so x has the smaller m^-; y is the fan center
                let (x, y) = if um < vm { (u, v) } else { (v, u) };
                let (xm, xp) = (st.m_minus[x].unwrap(), st.m_plus[x].unwrap());
                let (ym, yp) = (st.m_minus[y].unwrap(), st.m_plus[y].unwrap());
                debug_assert!(xm < ym && yp >= 1);
                if xp >= yp {
                    let mut main = seg(p, ym, xp);
                    main.push(x);
                    return cert_fan(g, y, &main, k).map(Some);
                }
                let mut order = seg(p, ym, xp);
                order.push(x);
                order.push(y);
                return cert_cycle(g, &order, k).map(Some);
            }
            // equal m^-, differing m^+: mirror image with the path reversed
            let (x, y) = if up > vp { (u, v) } else { (v, u) };
            let (xm, _) = (st.m_minus[x].unwrap(), st.m_plus[x].unwrap());
            let yp = st.m_plus[y].unwrap();
            let mut main = seg_rev(p, yp, xm);
            main.push(x);
            return cert_fan(g, y, &main, k).map(Some);
        }
    }

    // all components of g[B'] share one (m^-, m^+) pair: each fits inside a
    // single common neighborhood, so they are small; group greedily
    let bset = VertexSet::from_iter(g.n(), bp.iter().copied())?;
    let (sub, remap) = g.induced_subgraph(&bset)?;
    let mut a = VertexSet::empty(g.n());
    for comp in sub.components() {
        if comp.len() as f64 > alpha * nf {
            return Err(Error::Internal("uniform B-component exceeds the degree bound".into()));
        }
        if (a.len() as f64) < eps * nf {
            for idx in comp.iter() {
                a.insert(remap[idx]);
            }
        }
    }
    if (a.len() as f64) < eps * nf || a.len() as f64 > (alpha + eps) * nf {
        return Err(Error::Internal("B-component grouping missed its size window".into()));
    }
    let mut b = bset.clone();
    for v in a.iter() {
        b.remove(v);
    }
    if (b.len() as f64) < eps * nf {
        return Err(Error::Internal("B-component remainder too small".into()));
    }
    let pair = PurePair {
        a,
        b,
        kind: PairKind::Anticomplete,
    };
    pair.verify(g)?;
    Ok(Some(Certificate::PurePair(pair)))
}

/// At the located window: same-class C/D edges close cycles, a large
/// anticomplete C/D pair is pure, and otherwise the mixed-triple analysis
/// either yields a certificate or groups small components.
fn clause_cd(g: &Graph, p: &[usize], st: &SweepState, k: usize, eps: f64) -> Result<Certificate> {
    let nf = g.n() as f64;
    let classes = [(&st.c1, &st.d1), (&st.c2, &st.d2)];
    for (c, d) in classes {
        let dset = VertexSet::from_iter(g.n(), d.iter().copied())?;
        for &u in c.iter() {
            if let Some(v) = g.neighbors(u).find(|&w| dset.contains(w)) {
                let mut order = vec![u];
                order.extend(seg(p, st.m_minus[u].unwrap(), st.m_plus[v].unwrap()));
                order.push(v);
                return cert_cycle(g, &order, k);
            }
        }
        if c.len() as f64 >= eps * nf && d.len() as f64 >= eps * nf {
            let pair = PurePair {
                a: VertexSet::from_iter(g.n(), c.iter().copied())?,
                b: dset,
                kind: PairKind::Anticomplete,
            };
            pair.verify(g)?;
            return Ok(Certificate::PurePair(pair));
        }
    }

    let bound = 3.0 * eps * nf;
    let (cstar, dstar) = if st.c1.len() as f64 >= bound && st.d2.len() as f64 >= bound {
        (&st.c1, &st.d2)
    } else if st.c2.len() as f64 >= bound && st.d1.len() as f64 >= bound {
        (&st.c2, &st.d1)
    } else {
        return Err(Error::Internal("no opposite-class C/D pair is large enough".into()));
    };

    let cset = VertexSet::from_iter(g.n(), cstar.iter().copied())?;
    let dset = VertexSet::from_iter(g.n(), dstar.iter().copied())?;
    let comps = |set: &VertexSet| -> Result<Vec<VertexSet>> {
        let (sub, remap) = g.induced_subgraph(set)?;
        Ok(sub
            .components()
            .into_iter()
            .map(|c| {
                VertexSet::from_iter(g.n(), c.iter().map(|i| remap[i])).expect("remapped component")
            })
            .collect())
    };
    let c_comps = comps(&cset)?;
    let d_comps = comps(&dset)?;

    for cc in &c_comps {
        for dd in &d_comps {
            // a vertex with both a neighbor and a non-neighbor across the
            // pair breaks pureness and yields a certificate
            if let Some((u, v, vp)) = find_mixed(g, cc, dd) {
                return mixed_certificate(g, p, st, k, u, v, vp, true);
            }
            if let Some((u, v, vp)) = find_mixed(g, dd, cc) {
                return mixed_certificate(g, p, st, k, u, v, vp, false);
            }
        }
    }

    // every (C-component, D-component) pair is pure
    if let (Some(cc), Some(dd)) = (
        c_comps.iter().find(|c| c.len() as f64 >= eps * nf),
        d_comps.iter().find(|d| d.len() as f64 >= eps * nf),
    ) {
        let u = cc.iter().next().expect("nonempty component");
        let v = dd.iter().next().expect("nonempty component");
        let pair = PurePair {
            a: cc.clone(),
            b: dd.clone(),
            kind: if g.adjacent(u, v) {
                PairKind::Complete
            } else {
                PairKind::Anticomplete
            },
        };
        pair.verify(g)?;
        return Ok(Certificate::PurePair(pair));
    }
    // one side has only small components: greedily cover [eps*n, 2*eps*n]
    let (side_set, side_comps) = if c_comps.iter().all(|c| (c.len() as f64) < eps * nf) {
        (&cset, &c_comps)
    } else {
        (&dset, &d_comps)
    };
    let mut a = VertexSet::empty(g.n());
    for comp in side_comps {
        if (a.len() as f64) < eps * nf {
            a.union_with(comp);
        }
    }
    if (a.len() as f64) < eps * nf || a.len() as f64 > 2.0 * eps * nf {
        return Err(Error::Internal("component cover missed its size window".into()));
    }
    let mut b = side_set.clone();
    for v in a.iter() {
        b.remove(v);
    }
    if (b.len() as f64) < eps * nf {
        return Err(Error::Internal("component cover remainder too small".into()));
    }
    let pair = PurePair {
        a,
        b,
        kind: PairKind::Anticomplete,
    };
    pair.verify(g)?;
    Ok(Certificate::PurePair(pair))
}

/// Looks for `u` in `side_a` with a neighbor `v` and a non-neighbor adjacent
/// to `v`, both inside the connected `side_b`.
fn find_mixed(g: &Graph, side_a: &VertexSet, side_b: &VertexSet) -> Option<(usize, usize, usize)> {
    for u in side_a.iter() {
        let nbrs: Vec<usize> = g.neighbors(u).filter(|&w| side_b.contains(w)).collect();
        if nbrs.is_empty() || nbrs.len() == side_b.len() {
            continue;
        }
        for &v in &nbrs {
            if let Some(vp) = g
                .neighbors(v)
                .find(|&w| side_b.contains(w) && !g.adjacent(u, w) && w != u)
            {
                return Some((u, v, vp));
            }
        }
    }
    None
}

/// Constructions for a mixed triple: `u` on one class side,
/// `v, v'` connected on the other, `uv` an edge, `uv'` a non-edge. `forward`
/// means `u` lies on the C side (below the window).
#[allow(clippy::too_many_arguments)]
fn mixed_certificate(
    g: &Graph,
    p: &[usize],
    st: &SweepState,
    k: usize,
    u: usize,
    v: usize,
    vp: usize,
    forward: bool,
) -> Result<Certificate> {
    let s = st.s;
    let (i, width) = (st.i, st.width);
    if forward {
        let um = st.m_minus[u].unwrap();
        let vplus = st.m_plus[v].unwrap();
        let vpplus = st.m_plus[vp].unwrap();
        // a v-neighbor above the window at odd offset from m^+(v) centers a fan
        let odd_l = (vplus..=s)
            .filter(|&l| l >= i + width && g.adjacent(v, p[l - 1]) && (l - vplus) % 2 == 1)
            .min();
        if let Some(l) = odd_l {
            let mut main = vec![u];
            main.extend(seg(p, um, l));
            return cert_fan(g, v, &main, k);
        }
        if vplus <= vpplus {
            let mut main = vec![u];
            main.extend(seg(p, um, vpplus));
            main.push(vp);
            return cert_fan(g, v, &main, k);
        }
        let mut order = vec![u];
        order.extend(seg(p, um, vpplus));
        order.push(vp);
        order.push(v);
        cert_cycle(g, &order, k)
    } else {
        // mirror image: u sits above the window, v, v' below
        let up = st.m_plus[u].unwrap();
        let vminus = st.m_minus[v].unwrap();
        let vpminus = st.m_minus[vp].unwrap();
        let odd_l = (1..=vminus)
            .filter(|&l| l < i && g.adjacent(v, p[l - 1]) && (vminus - l) % 2 == 1)
            .max();
        if let Some(l) = odd_l {
            let mut main = vec![u];
            main.extend(seg_rev(p, up, l));
            return cert_fan(g, v, &main, k);
        }
        if vminus >= vpminus {
            let mut main = vec![u];
            main.extend(seg_rev(p, up, vpminus));
            main.push(vp);
            return cert_fan(g, v, &main, k);
        }
        let mut order = vec![u];
        order.extend(seg_rev(p, up, vpminus));
        order.push(vp);
        order.push(v);
        cert_cycle(g, &order, k)
    }
}

// ---------------------------------------------------------------------------
// hole mode
// ---------------------------------------------------------------------------

/// Parity-free sweep: returns an anticomplete pure pair with both sides at
/// least `eps*n`, or a hole of length at least `L`. The feasibility condition
/// `(L-1)*alpha + 6*eps <= 1/2` guarantees totality; infeasible constants are
/// still attempted, and only a fruitless sweep errors out.
pub fn sweep_hole_mode(
    g: &Graph,
    p: &[usize],
    l: usize,
    alpha: f64,
    eps: f64,
) -> Result<Certificate> {
    let n = g.n();
    if n < 2 || l < 4 {
        return Err(Error::Precondition("need n >= 2 and L >= 4".into()));
    }
    if g.max_degree() as f64 > alpha * n as f64 {
        return Err(Error::Precondition(format!(
            "max degree {} exceeds alpha*n = {}",
            g.max_degree(),
            alpha * n as f64
        )));
    }
    if !(eps > 0.0 && alpha > 0.0) {
        return Err(Error::Precondition("alpha and eps must be positive".into()));
    }
    let feasible = (l as f64 - 1.0) * alpha + 6.0 * eps <= 0.5;

    // the supplied order may close an induced cycle: that is already a hole
    if p.len() >= l && g.is_induced_cycle(p)? {
        let cert = Certificate::Hole(p.to_vec());
        cert.verify(g, 0, l)?;
        return Ok(cert);
    }
    check_path(g, p)?;
    let s = p.len();
    let nf = n as f64;
    let width = l - 2;

    // first pass: scan every window for a hole so that witness-grade
    // structure is preferred over pure pairs; remember the first window
    // whose anticomplete C/D split is large on both sides
    let mut pure_window: Option<(Vec<usize>, Vec<usize>)> = None;
    let mut f_prev = 0usize;
    if s >= width {
        for i in 1..=s - width + 1 {
            let st = build_sweep_state(g, p, i, width)?;
            let f = st.f();
            if f < f_prev {
                return Err(Error::Internal("C-classes shrank along the sweep".into()));
            }
            f_prev = f;

            // any B-vertex closes a hole spanning the window
            if let Some(&u) = st.b.first() {
                let mut order = vec![u];
                order.extend(seg(p, st.m_minus[u].unwrap(), st.m_plus[u].unwrap()));
                let cert = Certificate::Hole(order);
                cert.verify(g, 0, l)?;
                return Ok(cert);
            }
            // a C-D edge closes a hole through the window
            let c: Vec<usize> = st.c1.iter().chain(st.c2.iter()).copied().collect();
            let d: Vec<usize> = st.d1.iter().chain(st.d2.iter()).copied().collect();
            let dset = VertexSet::from_iter(n, d.iter().copied())?;
            for &u in &c {
                if let Some(v) = g.neighbors(u).find(|&w| dset.contains(w)) {
                    let mut order = vec![u];
                    order.extend(seg(p, st.m_minus[u].unwrap(), st.m_plus[v].unwrap()));
                    order.push(v);
                    let cert = Certificate::Hole(order);
                    cert.verify(g, 0, l)?;
                    return Ok(cert);
                }
            }
            if pure_window.is_none() && c.len() as f64 >= eps * nf && d.len() as f64 >= eps * nf
            {
                pure_window = Some((c, d));
            }
        }
    }

    // no hole anywhere: C and D at the recorded window are anticomplete
    if let Some((c, d)) = pure_window {
        let pair = PurePair {
            a: VertexSet::from_iter(n, c)?,
            b: VertexSet::from_iter(n, d)?,
            kind: PairKind::Anticomplete,
        };
        pair.verify(g)?;
        return Ok(Certificate::PurePair(pair));
    }
    if s as f64 >= 2.0 * eps * nf + 2.0 {
        return path_halves(g, p);
    }
    if eps * nf <= 1.0 {
        return singleton_pair(g);
    }
    Err(Error::Internal(format!(
        "hole-mode sweep exhausted without a certificate (feasible constants: {feasible})"
    )))
}
