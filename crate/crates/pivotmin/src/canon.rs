//! Canonical forms for small graphs via degree-refined backtracking.
//!
//! The canonical key is the lexicographically smallest packed upper-triangle
//! adjacency matrix over all labelings reachable through individualization +
//! refinement. Equal keys therefore always mean isomorphic; completeness comes
//! from branching over every vertex of the chosen target cell.

use crate::graph::Graph;
use crate::{Error, Result};

/// Default cap for the generic isomorphism check. It exists to verify
/// certificates whose targets are small cycles; use `Graph::is_single_cycle`
/// first where applicable.
pub const DEFAULT_ISO_CAP: usize = 12;

/// 1-WL color refinement until stable. Colors are consecutive small integers
/// whose order is isomorphism-invariant.
fn refine(g: &Graph, colors: &mut Vec<usize>) {
    let n = g.n();
    loop {
        let mut sigs: Vec<(usize, Vec<usize>, usize)> = (0..n)
            .map(|u| {
                let mut nb: Vec<usize> = g.neighbors(u).map(|v| colors[v]).collect();
                nb.sort_unstable();
                (colors[u], nb, u)
            })
            .collect();
        let before = distinct(colors);
        sigs.sort();
        let mut next = vec![0usize; n];
        let mut c = 0usize;
        for i in 0..n {
            if i > 0 && (sigs[i].0, &sigs[i].1) != (sigs[i - 1].0, &sigs[i - 1].1) {
                c += 1;
            }
            next[sigs[i].2] = c;
        }
        let after = c + 1;
        *colors = next;
        if after == before {
            return;
        }
    }
}

fn distinct(colors: &[usize]) -> usize {
    let mut seen: Vec<usize> = colors.to_vec();
    seen.sort_unstable();
    seen.dedup();
    seen.len()
}

fn pack_under(g: &Graph, perm: &[usize]) -> Vec<u64> {
    // perm[pos] = original vertex placed at pos
    let n = g.n();
    let mut out = vec![0u64; (n * (n - 1) / 2 + 63) / 64];
    let mut bit = 0usize;
    for j in 1..n {
        for i in 0..j {
            if g.adjacent(perm[i], perm[j]) {
                out[bit / 64] |= 1u64 << (bit % 64);
            }
            bit += 1;
        }
    }
    out
}

fn search(g: &Graph, colors: Vec<usize>, best: &mut Option<Vec<u64>>) {
    let n = g.n();
    // find first smallest-color cell with more than one member
    let ncolors = distinct(&colors);
    if ncolors == n {
        let mut perm: Vec<usize> = (0..n).collect();
        perm.sort_by_key(|&v| colors[v]);
        let key = pack_under(g, &perm);
        match best {
            Some(b) if *b <= key => {}
            _ => *best = Some(key),
        }
        return;
    }
    let cell_color = (0..n)
        .map(|v| colors[v])
        .filter(|&c| colors.iter().filter(|&&x| x == c).count() > 1)
        .min()
        .expect("non-discrete coloring has a non-singleton cell");
    let members: Vec<usize> = (0..n).filter(|&v| colors[v] == cell_color).collect();
    for &v in &members {
        let mut next: Vec<usize> = colors.iter().map(|&c| 2 * c).collect();
        for &u in &members {
            if u != v {
                next[u] += 1;
            }
        }
        refine(g, &mut next);
        search(g, next, best);
    }
}

/// Canonical packed adjacency key; equal keys iff isomorphic.
pub fn canonical_key(g: &Graph) -> Vec<u64> {
    let n = g.n();
    if n == 0 {
        return Vec::new();
    }
    let mut colors = vec![0usize; n];
    refine(g, &mut colors);
    let mut best = None;
    search(g, colors, &mut best);
    best.expect("at least one labeling explored")
}

/// Adjacency-preserving bijection existence for graphs of at most `cap`
/// vertices (default 12).
pub fn small_isomorphic_with_cap(g: &Graph, h: &Graph, cap: usize) -> Result<bool> {
    if g.n() > cap || h.n() > cap {
        return Err(Error::SizeCapExceeded(g.n().max(h.n()), cap));
    }
    if g.n() != h.n() || g.edge_count() != h.edge_count() {
        return Ok(false);
    }
    let mut dg: Vec<usize> = (0..g.n()).map(|v| g.degree(v)).collect();
    let mut dh: Vec<usize> = (0..h.n()).map(|v| h.degree(v)).collect();
    dg.sort_unstable();
    dh.sort_unstable();
    if dg != dh {
        return Ok(false);
    }
    Ok(canonical_key(g) == canonical_key(h))
}

pub fn small_isomorphic(g: &Graph, h: &Graph) -> Result<bool> {
    small_isomorphic_with_cap(g, h, DEFAULT_ISO_CAP)
}

/// Brute-force permutation-search oracle; test instrument for small n.
pub fn brute_force_isomorphic(g: &Graph, h: &Graph) -> bool {
    if g.n() != h.n() {
        return false;
    }
    let n = g.n();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut found = false;
    heap_permute(&mut perm, n, &mut |p: &[usize]| {
        if found {
            return;
        }
        let ok = (0..n).all(|u| (u + 1..n).all(|v| g.adjacent(u, v) == h.adjacent(p[u], p[v])));
        if ok {
            found = true;
        }
    });
    found
}

fn heap_permute<F: FnMut(&[usize])>(arr: &mut Vec<usize>, k: usize, f: &mut F) {
    if k <= 1 {
        f(arr);
        return;
    }
    for i in 0..k {
        heap_permute(arr, k - 1, f);
        if k % 2 == 0 {
            arr.swap(i, k - 1);
        } else {
            arr.swap(0, k - 1);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn c5_self_complementary() {
        let c5 = Graph::cycle(5);
        assert!(small_isomorphic(&c5, &c5.complement()).unwrap());
    }

    #[test]
    fn p4_vs_c4() {
        // K4 minus a perfect matching is C4; edge counts differ from P4
        let p4 = Graph::path(4);
        let c4 = Graph::cycle(4);
        assert!(!small_isomorphic(&p4, &c4).unwrap());
    }

    #[test]
    fn identity() {
        let g = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (0, 3), (3, 4)]).unwrap();
        assert!(small_isomorphic(&g, &g).unwrap());
    }

    #[test]
    fn cap_enforced() {
        let g = Graph::path(13);
        assert!(small_isomorphic(&g, &g).is_err());
    }

    #[test]
    fn agrees_with_brute_force_exhaustive_n4() {
        let graphs: Vec<Graph> = (0u32..64)
            .map(|mask| {
                let mut g = Graph::new(4);
                let mut b = 0;
                for u in 0..4 {
                    for v in u + 1..4 {
                        if mask >> b & 1 == 1 {
                            g.set_edge(u, v, true);
                        }
                        b += 1;
                    }
                }
                g
            })
            .collect();
        for g in &graphs {
            for h in &graphs {
                assert_eq!(
                    small_isomorphic(g, h).unwrap(),
                    brute_force_isomorphic(g, h),
                    "mismatch on {g:?} vs {h:?}"
                );
            }
        }
    }

    #[test]
    fn agrees_with_brute_force_random_n7() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..300 {
            let n = rng.gen_range(2..=7);
            let g = random_graph(&mut rng, n);
            let h = random_graph(&mut rng, n);
            assert_eq!(
                small_isomorphic(&g, &h).unwrap(),
                brute_force_isomorphic(&g, &h)
            );
            // a permuted copy must always match
            let mut perm: Vec<usize> = (0..n).collect();
            for i in (1..n).rev() {
                let j = rng.gen_range(0..=i);
                perm.swap(i, j);
            }
            let mut gp = Graph::new(n);
            for u in 0..n {
                for v in u + 1..n {
                    if g.adjacent(u, v) {
                        gp.set_edge(perm[u], perm[v], true);
                    }
                }
            }
            assert!(small_isomorphic(&g, &gp).unwrap());
        }
    }

    fn random_graph(rng: &mut ChaCha8Rng, n: usize) -> Graph {
        let mut g = Graph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(0.5) {
                    g.set_edge(u, v, true);
                }
            }
        }
        g
    }
}
