//! End-to-end pipeline: restriction, decomposition, sweep, and certificate
//! assembly, plus seeded generators and report plumbing for the CLI.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::constructions::{antihole_extract, fan_graph};
use crate::decomposition::{
    connected_or_purepair, dominating_skeleton, heavy_path_or_unrelated, restriction_finder,
    skeleton_weighted_tree, Piece, Side, TreeSplit,
};
use crate::graph::{Graph, PairKind, PurePair, VertexSet};
use crate::pivot::{verify_ck_witness_detail, Witness, WitnessOp};
use crate::sweep::{sweep_hole_mode, sweep_pivot_mode, Certificate};
use crate::{Error, Result};

// ---------------------------------------------------------------------------
// constants
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ConstantsBundle {
    pub k: usize,
    /// Anti-hole length threshold: ceil(3k/2) + 6.
    pub l: usize,
    pub alpha: f64,
    pub alpha_hole: f64,
    pub eps0: f64,
    pub eps: f64,
    /// Measured restriction fraction |U|/n, not a guarantee.
    pub delta: f64,
}

impl ConstantsBundle {
    pub fn validate(&self) -> Result<()> {
        let k = self.k as f64;
        if 4.0 * self.alpha > self.alpha_hole {
            return Err(Error::Internal("4*alpha exceeds the hole-mode alpha".into()));
        }
        if self.alpha >= 1.0 / (8.0 * k) {
            return Err(Error::Internal("alpha not below 1/(8k)".into()));
        }
        let caps = [
            self.delta / 12.0,
            (1.0 - 4.0 * (k + 3.0) * self.alpha) * self.delta / 240.0,
            self.eps0 * self.delta / 12.0,
        ];
        if !(self.eps > 0.0) || caps.iter().any(|&c| self.eps >= c) {
            return Err(Error::Internal("eps outside its three-term bound".into()));
        }
        Ok(())
    }
}

pub fn make_constants(k: usize, delta: f64) -> Result<ConstantsBundle> {
    if k < 3 {
        return Err(Error::Precondition("k >= 3 required".into()));
    }
    if !(delta > 0.0 && delta <= 1.0) {
        return Err(Error::Precondition(format!("delta must be in (0,1], got {delta}")));
    }
    let l = (3 * k).div_ceil(2) + 6;
    let alpha_hole = 1.0 / (8.0 * (l + 2) as f64);
    let eps0 = 1.0 / 48.0;
    // largest power of two meeting both alpha bounds
    let mut alpha = 0.5;
    while !(4.0 * alpha <= alpha_hole && alpha < 1.0 / (8.0 * k as f64)) {
        alpha /= 2.0;
    }
    let caps = [
        delta / 12.0,
        (1.0 - 4.0 * (k as f64 + 3.0) * alpha) * delta / 240.0,
        eps0 * delta / 12.0,
    ];
    let eps = caps.iter().cloned().fold(f64::INFINITY, f64::min) / 2.0;
    let bundle = ConstantsBundle {
        k,
        l,
        alpha,
        alpha_hole,
        eps0,
        eps,
        delta,
    };
    bundle.validate()?;
    Ok(bundle)
}

// ---------------------------------------------------------------------------
// run reports
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub fingerprint: String,
    pub n: usize,
    pub k: usize,
    pub constants: ConstantsBundle,
    pub side: Side,
    /// Which pipeline branch produced the outcome.
    pub branch: String,
    pub trace: Vec<String>,
    pub outcome: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<serde_json::Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a_frac: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b_frac: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_ops: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failure_reason: Option<String>,
    pub wall_ms: u128,
}

impl RunReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn verified(&self) -> bool {
        self.outcome == "verified"
    }

    pub fn csv_header() -> &'static str {
        "n,k,side,branch,outcome,a_frac,b_frac,witness_ops,wall_ms"
    }

    pub fn csv_line(&self) -> String {
        let opt = |x: Option<f64>| x.map(|v| format!("{v:.6}")).unwrap_or_default();
        format!(
            "{},{},{:?},{},{},{},{},{},{}",
            self.n,
            self.k,
            self.side,
            self.branch,
            self.outcome,
            opt(self.a_frac),
            opt(self.b_frac),
            self.witness_ops.map(|v| v.to_string()).unwrap_or_default(),
            self.wall_ms
        )
    }
}

// ---------------------------------------------------------------------------
// pipeline
// ---------------------------------------------------------------------------

/// Degree-peel threshold for the restriction stage. The theoretical delta is
/// non-constructive; at desk scale a fixed mild bound keeps the surviving set
/// large while the achieved density is simply measured and reported.
const RESTRICTION_ALPHA: f64 = 0.125;

struct Ctx<'a> {
    g: &'a Graph,
    k: usize,
    trace: Vec<String>,
}

impl Ctx<'_> {
    fn note(&mut self, msg: impl Into<String>) {
        self.trace.push(msg.into());
    }
}

/// Two-singleton pure pair in `g`, preferring a non-edge.
fn trivial_pair(g: &Graph) -> Result<PurePair> {
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
                return Ok(pair);
            }
        }
    }
    let pair = PurePair {
        a: VertexSet::from_iter(n, [0])?,
        b: VertexSet::from_iter(n, [1])?,
        kind: PairKind::Complete,
    };
    pair.verify(g)?;
    Ok(pair)
}

/// Re-expresses a pure pair found in a relabeled subgraph in the original
/// graph, flipping the kind when it was found in the complement view.
fn lift_pair(
    g: &Graph,
    pair: &PurePair,
    to_g: &[usize],
    side: Side,
) -> Result<PurePair> {
    let mut lifted = PurePair {
        a: VertexSet::from_iter(g.n(), pair.a.iter().map(|i| to_g[i]))?,
        b: VertexSet::from_iter(g.n(), pair.b.iter().map(|i| to_g[i]))?,
        kind: pair.kind,
    };
    if side == Side::Complement {
        lifted = lifted.flipped_kind();
    }
    lifted.verify(g)?;
    Ok(lifted)
}

/// Lifts a witness produced on an induced subgraph back to the original
/// graph: delete everything outside the subgraph first, then replay the ops
/// under the id translation.
fn lift_witness(g: &Graph, w: &Witness, to_g: &[usize]) -> Result<Witness> {
    let mut keep = vec![false; g.n()];
    for &v in to_g {
        keep[v] = true;
    }
    let mut lifted = Witness::new(g, w.target_k);
    for v in 0..g.n() {
        if !keep[v] {
            lifted.ops.push(WitnessOp::Delete(v));
        }
    }
    for op in &w.ops {
        lifted.ops.push(match *op {
            WitnessOp::Pivot([u, v]) => WitnessOp::Pivot([to_g[u], to_g[v]]),
            WitnessOp::Delete(v) => WitnessOp::Delete(to_g[v]),
        });
    }
    verify_ck_witness_detail(g, &lifted)?;
    Ok(lifted)
}

enum Outcome {
    Pair(PurePair, &'static str),
    Witness(Witness, &'static str),
}

pub fn strong_eh_pipeline(g: &Graph, k: usize) -> Result<RunReport> {
    if g.n() < 2 {
        return Err(Error::Precondition("pipeline needs n >= 2".into()));
    }
    if k < 3 {
        return Err(Error::Precondition("k >= 3 required".into()));
    }
    let start = std::time::Instant::now();
    let n = g.n();
    let mut ctx = Ctx {
        g,
        k,
        trace: Vec::new(),
    };

    ctx.note(format!("restriction peel at alpha={RESTRICTION_ALPHA}"));
    let (u, side) = restriction_finder(g, RESTRICTION_ALPHA)?;
    let delta = u.len() as f64 / n as f64;
    ctx.note(format!(
        "restriction kept {}/{n} vertices on the {side:?} side (delta={delta:.4})",
        u.len()
    ));
    ctx.note("stable trim skipped: the peel already enforces the degree bound".to_string());
    let constants = make_constants(k, delta)?;

    let result = run_stages(&mut ctx, &constants, &u, side);
    let mut report = RunReport {
        fingerprint: g.fingerprint(),
        n,
        k,
        constants,
        side,
        branch: String::new(),
        trace: Vec::new(),
        outcome: String::new(),
        certificate: None,
        a_frac: None,
        b_frac: None,
        witness_ops: None,
        failure_reason: None,
        wall_ms: 0,
    };
    match result {
        Ok(Outcome::Pair(pair, branch)) => {
            pair.verify(g)?;
            report.branch = branch.into();
            report.outcome = "verified".into();
            report.a_frac = Some(pair.a.len() as f64 / n as f64);
            report.b_frac = Some(pair.b.len() as f64 / n as f64);
            let cert = Certificate::PurePair(pair);
            report.certificate = Some(serde_json::from_str(&cert.to_json())?);
        }
        Ok(Outcome::Witness(w, branch)) => {
            verify_ck_witness_detail(g, &w)?;
            report.branch = branch.into();
            report.outcome = "verified".into();
            report.witness_ops = Some(w.ops.len());
            let cert = Certificate::Witness(w);
            report.certificate = Some(serde_json::from_str(&cert.to_json())?);
        }
        Err(e) => {
            ctx.note(format!("stage error: {e}"));
            report.branch = "failure".into();
            report.outcome = "failure".into();
            report.failure_reason = Some(e.to_string());
        }
    }
    report.trace = ctx.trace;
    report.wall_ms = start.elapsed().as_millis();
    Ok(report)
}

fn run_stages(
    ctx: &mut Ctx,
    constants: &ConstantsBundle,
    u: &VertexSet,
    side: Side,
) -> Result<Outcome> {
    let g = ctx.g;
    let k = ctx.k;
    let n = g.n();

    // the theoretical eps is tiny, so gate only graphs too small for the
    // decomposition machinery; the sweeps handle their own trivial cases
    if n <= 4 {
        ctx.note("tiny graph: trivial singleton pair");
        return Ok(Outcome::Pair(trivial_pair(g)?, "trivial"));
    }

    let g0 = match side {
        Side::Direct => g.clone(),
        Side::Complement => g.complement(),
    };
    let (gp, to_g0) = g0.induced_subgraph(u)?;

    let piece = connected_or_purepair(&gp)?;
    let conn = match piece {
        Piece::Pure(pair) => {
            ctx.note("restricted graph splits into small components");
            return Ok(Outcome::Pair(lift_pair(g, &pair, &to_g0, side)?, "disconnected"));
        }
        Piece::Connected(c) => c,
    };
    ctx.note(format!("connected piece of {} vertices", conn.len()));
    let (h, to_gp) = gp.induced_subgraph(&conn)?;
    let to_g: Vec<usize> = (0..h.n()).map(|i| to_g0[to_gp[i]]).collect();

    let skel = dominating_skeleton(&h, 0)?;
    let (wt, nodes) = skeleton_weighted_tree(&skel)?;
    ctx.note(format!("skeleton with {} tree vertices", nodes.len()));

    match heavy_path_or_unrelated(&wt)? {
        TreeSplit::Unrelated(a, b) => {
            ctx.note("tree split: two heavy unrelated sets");
            let pa = skel.preimage(a.iter().map(|&i| nodes[i]))?;
            let pb = skel.preimage(b.iter().map(|&i| nodes[i]))?;
            let pair = PurePair {
                a: pa,
                b: pb,
                kind: PairKind::Anticomplete,
            };
            pair.verify(&h)?;
            Ok(Outcome::Pair(lift_pair(g, &pair, &to_g, side)?, "unrelated"))
        }
        TreeSplit::RootPath(path_nodes) => {
            ctx.note(format!("tree split: heavy root path of {} nodes", path_nodes.len()));
            let path_h: Vec<usize> = path_nodes.iter().map(|&i| nodes[i]).collect();
            // the sweep host: the path and everything it dominates
            let mut w = VertexSet::from_iter(h.n(), path_h.iter().copied())?;
            for &v in &path_h {
                w.union_with(&h.neighbor_set(v));
            }
            let (gs, to_h) = h.induced_subgraph(&w)?;
            let mut pos = vec![usize::MAX; h.n()];
            for (i, &v) in to_h.iter().enumerate() {
                pos[v] = i;
            }
            let p_gs: Vec<usize> = path_h.iter().map(|&v| pos[v]).collect();
            let to_g_s: Vec<usize> = (0..gs.n()).map(|i| to_g[to_h[i]]).collect();
            let ns = gs.n() as f64;
            let measured_alpha = gs.max_degree() as f64 / ns;
            match side {
                Side::Direct => {
                    let alpha = measured_alpha.max(4.0 * constants.alpha);
                    if alpha >= 1.0 / (2.0 * k as f64) {
                        return Err(Error::Precondition(format!(
                            "sweep host too dense: Delta/n = {measured_alpha:.4} >= 1/(2k)"
                        )));
                    }
                    let eps = (1.0 - (k as f64 + 3.0) * alpha) / 20.0;
                    ctx.note(format!(
                        "pivot-mode sweep on {} vertices (alpha={alpha:.4}, eps={eps:.4})",
                        gs.n()
                    ));
                    match sweep_pivot_mode(&gs, &p_gs, k, alpha, eps)? {
                        Certificate::PurePair(pair) => {
                            Ok(Outcome::Pair(lift_pair(g, &pair, &to_g_s, side)?, "sweep_pure_pair"))
                        }
                        Certificate::Witness(w) => {
                            Ok(Outcome::Witness(lift_witness(g, &w, &to_g_s)?, "sweep_witness"))
                        }
                        Certificate::Hole(_) => {
                            Err(Error::Internal("pivot mode returned a hole".into()))
                        }
                    }
                }
                Side::Complement => {
                    let alpha = measured_alpha.max(constants.alpha_hole);
                    let eps = constants.eps0;
                    ctx.note(format!(
                        "hole-mode sweep on {} vertices (L={}, alpha={alpha:.4})",
                        gs.n(),
                        constants.l
                    ));
                    match sweep_hole_mode(&gs, &p_gs, constants.l, alpha, eps)? {
                        Certificate::PurePair(pair) => {
                            Ok(Outcome::Pair(lift_pair(g, &pair, &to_g_s, side)?, "sweep_pure_pair"))
                        }
                        Certificate::Hole(order) => {
                            // a hole in the complement view is an anti-hole
                            // of g itself
                            let order_g: Vec<usize> = order.iter().map(|&i| to_g_s[i]).collect();
                            ctx.note(format!("anti-hole of length {} found", order_g.len()));
                            let w = antihole_extract(g, &order_g, k)?;
                            Ok(Outcome::Witness(w, "antihole"))
                        }
                        Certificate::Witness(_) => {
                            Err(Error::Internal("hole mode returned a witness".into()))
                        }
                    }
                }
            }
        }
    }
}

// ---------------------------------------------------------------------------
// generators
// ---------------------------------------------------------------------------

pub mod gen {
    use super::*;

    pub fn gnp(n: usize, p: f64, seed: u64) -> Result<Graph> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidInput(format!("edge probability {p} outside [0,1]")));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut g = Graph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(p) {
                    g.set_edge(u, v, true);
                }
            }
        }
        Ok(g)
    }

    /// Spine path with random pendant leaves, at most `max_leaf` per spine
    /// vertex, exactly `n` vertices in total.
    pub fn caterpillar(n: usize, max_leaf: usize, seed: u64) -> Result<Graph> {
        if n < 2 {
            return Err(Error::InvalidInput("caterpillar needs n >= 2".into()));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut g = Graph::new(n);
        let mut spine: Vec<usize> = vec![0];
        let mut next = 1;
        while next < n {
            let leaves = rng.gen_range(0..=max_leaf).min(n - next - if next + 1 < n { 1 } else { 0 });
            let anchor = *spine.last().unwrap();
            for _ in 0..leaves {
                g.set_edge(anchor, next, true);
                next += 1;
            }
            if next < n {
                g.set_edge(anchor, next, true);
                spine.push(next);
                next += 1;
            }
        }
        Ok(g)
    }

    pub fn long_cycle(n: usize) -> Result<Graph> {
        if n < 3 {
            return Err(Error::InvalidInput("cycle needs n >= 3".into()));
        }
        Ok(Graph::cycle(n))
    }

    pub fn anti_hole(n: usize) -> Result<Graph> {
        if n < 5 {
            return Err(Error::InvalidInput("anti-hole needs n >= 5".into()));
        }
        Ok(Graph::cycle(n).complement())
    }

    pub fn fan(intervals: &[usize]) -> Result<Graph> {
        fan_graph(intervals)
    }

    /// Random graph with all degrees at most `d`.
    pub fn bounded_degree(n: usize, d: usize, seed: u64) -> Result<Graph> {
        if d == 0 || n == 0 {
            return Err(Error::InvalidInput("need n > 0 and d > 0".into()));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut g = Graph::new(n);
        for _ in 0..n * d {
            let u = rng.gen_range(0..n);
            let v = rng.gen_range(0..n);
            if u != v && !g.adjacent(u, v) && g.degree(u) < d && g.degree(v) < d {
                g.set_edge(u, v, true);
            }
        }
        Ok(g)
    }

    /// Induced path `0..s` dominating the rest: every other vertex attaches
    /// to a few clustered path positions, with sparse off-path edges.
    pub fn planted_dominating_path(
        n: usize,
        s: usize,
        attach_max: usize,
        cross_p: f64,
        seed: u64,
    ) -> Result<(Graph, Vec<usize>)> {
        if s < 2 || s > n || attach_max == 0 {
            return Err(Error::InvalidInput("need 2 <= s <= n and attach_max > 0".into()));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut g = Graph::new(n);
        for i in 0..s - 1 {
            g.set_edge(i, i + 1, true);
        }
        for v in s..n {
            let base = rng.gen_range(0..s);
            let count = rng.gen_range(1..=attach_max);
            g.set_edge(v, base, true);
            for _ in 1..count {
                let span = rng.gen_range(0..6);
                let j = (base + span).min(s - 1);
                g.set_edge(v, j, true);
            }
        }
        for u in s..n {
            for v in u + 1..n {
                if cross_p > 0.0 && rng.gen_bool(cross_p) {
                    g.set_edge(u, v, true);
                }
            }
        }
        Ok((g, (0..s).collect()))
    }
}
