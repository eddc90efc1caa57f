//! Test helpers and independent oracles. Nothing here calls into the
//! library's spectral or canonical-form code.
#![allow(dead_code)]

use std::collections::BTreeSet;

use coxeter_core::{classical_diagram, BondLabel, CoxeterGraph, DiagramFamily};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn graph(n: usize, edges: &[(usize, usize, BondLabel)]) -> CoxeterGraph {
    let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let edges = edges
        .iter()
        .map(|&(i, j, m)| (names[i].clone(), names[j].clone(), m));
    CoxeterGraph::new(names.clone(), edges).expect("valid test graph")
}

pub fn simple(n: usize, edges: &[(usize, usize)]) -> CoxeterGraph {
    let e: Vec<_> = edges.iter().map(|&(i, j)| (i, j, BondLabel::THREE)).collect();
    graph(n, &e)
}

pub fn m(k: u32) -> BondLabel {
    BondLabel::finite(k).unwrap()
}

pub fn edge_triples(g: &CoxeterGraph) -> Vec<(usize, usize, BondLabel)> {
    g.edges().collect()
}

/// Relabels vertex `i` as `perm[i]`, keeping names attached to indices.
pub fn permuted(g: &CoxeterGraph, perm: &[usize]) -> CoxeterGraph {
    let e: Vec<_> = g.edges().map(|(i, j, l)| (perm[i], perm[j], l)).collect();
    graph(g.len(), &e)
}

/// Random connected graph: a random spanning tree plus each other pair with
/// probability `p`. Labels are drawn uniformly from `labels`.
pub fn random_connected<R: Rng>(rng: &mut R, n: usize, p: f64, labels: &[BondLabel]) -> CoxeterGraph {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut adj = vec![vec![false; n]; n];
    let mut e = Vec::new();
    for k in 1..n {
        let parent = order[rng.gen_range(0..k)];
        let child = order[k];
        adj[parent][child] = true;
        adj[child][parent] = true;
        e.push((parent.min(child), parent.max(child), *labels.choose(rng).unwrap()));
    }
    for i in 0..n {
        for j in i + 1..n {
            if !adj[i][j] && rng.gen_bool(p) {
                e.push((i, j, *labels.choose(rng).unwrap()));
            }
        }
    }
    graph(n, &e)
}

/// Random graph, possibly disconnected.
pub fn random_graph<R: Rng>(rng: &mut R, n: usize, p: f64, labels: &[BondLabel]) -> CoxeterGraph {
    let mut e = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(p) {
                e.push((i, j, *labels.choose(rng).unwrap()));
            }
        }
    }
    graph(n, &e)
}

/// `2cos(pi/m)`, written out independently of the library.
pub fn weight(l: BondLabel) -> f64 {
    match l.order() {
        None => 2.0,
        Some(k) => 2.0 * (std::f64::consts::PI / k as f64).cos(),
    }
}

pub fn adjacency_rows(g: &CoxeterGraph) -> Vec<Vec<f64>> {
    let n = g.len();
    let mut a = vec![vec![0.0; n]; n];
    for (i, j, l) in g.edges() {
        a[i][j] = weight(l);
        a[j][i] = weight(l);
    }
    a
}

/// Cyclic Jacobi eigenvalues of a symmetric matrix, descending.
pub fn jacobi_eigenvalues(m: &[Vec<f64>]) -> Vec<f64> {
    let n = m.len();
    let mut a: Vec<Vec<f64>> = m.to_vec();
    for _sweep in 0..200 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i][j] * a[i][j])
            .sum();
        if off < 1e-30 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k][p];
                    let akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p][k];
                    let aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut ev: Vec<f64> = (0..n).map(|i| a[i][i]).collect();
    ev.sort_by(|x, y| y.partial_cmp(x).unwrap());
    ev
}

pub fn graph_eigenvalues(g: &CoxeterGraph) -> Vec<f64> {
    jacobi_eigenvalues(&adjacency_rows(g))
}

/// Integer form matrix `C = 2I - A` for labels 3 and infinity.
pub fn integer_form(g: &CoxeterGraph) -> Option<Vec<Vec<i64>>> {
    let n = g.len();
    let mut c = vec![vec![0i64; n]; n];
    for (i, row) in c.iter_mut().enumerate() {
        row[i] = 2;
    }
    for (i, j, l) in g.edges() {
        let w = match l.order() {
            None => 2,
            Some(3) => 1,
            Some(_) => return None,
        };
        c[i][j] = -w;
        c[j][i] = -w;
    }
    Some(c)
}

/// Coefficients of `det(xI - M)` from the constant term up (Faddeev-LeVerrier,
/// exact in i128).
pub fn charpoly(m: &[Vec<i64>]) -> Vec<i128> {
    let n = m.len();
    let a: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut coeff = vec![0i128; n + 1];
    coeff[n] = 1;
    let mut mk = vec![vec![0i128; n]; n];
    for k in 1..=n {
        let mut next = vec![vec![0i128; n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut s = 0i128;
                for l in 0..n {
                    s = s.checked_add(a[i][l].checked_mul(mk[l][j]).unwrap()).unwrap();
                }
                next[i][j] = s;
            }
            next[i][i] += coeff[n - k + 1];
        }
        mk = next;
        let mut tr = 0i128;
        for i in 0..n {
            for l in 0..n {
                tr = tr.checked_add(a[i][l].checked_mul(mk[l][i]).unwrap()).unwrap();
            }
        }
        assert_eq!(tr % k as i128, 0, "Faddeev-LeVerrier division must be exact");
        coeff[n - k] = -tr / k as i128;
    }
    coeff
}

/// Inertia `(p, q, r)` of a symmetric integer matrix from its characteristic
/// polynomial: the roots are real, so Descartes' rule of signs is exact.
pub fn descartes_inertia(m: &[Vec<i64>]) -> (usize, usize, usize) {
    let n = m.len();
    let c = charpoly(m);
    let r = c.iter().position(|&x| x != 0).unwrap();
    let nonzero: Vec<i128> = c.iter().copied().filter(|&x| x != 0).collect();
    let p = nonzero.windows(2).filter(|w| (w[0] < 0) != (w[1] < 0)).count();
    (p, n - p - r, r)
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        let n = used.len();
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        for v in 0..n {
            if !used[v] {
                used[v] = true;
                prefix.push(v);
                go(prefix, used, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

fn label_matrix(g: &CoxeterGraph) -> Vec<Vec<u32>> {
    let n = g.len();
    let mut t = vec![vec![0u32; n]; n];
    for (i, j, l) in g.edges() {
        t[i][j] = l.code();
        t[j][i] = l.code();
    }
    t
}

/// Isomorphism by trying every bijection.
pub fn brute_isomorphic(a: &CoxeterGraph, b: &CoxeterGraph) -> bool {
    if a.len() != b.len() || a.edge_count() != b.edge_count() {
        return false;
    }
    let (ta, tb) = (label_matrix(a), label_matrix(b));
    let n = a.len();
    permutations(n)
        .iter()
        .any(|p| (0..n).all(|i| (0..n).all(|j| ta[i][j] == tb[p[i]][p[j]])))
}

/// Least edge bitmask over all relabelings (simple graphs only).
pub fn brute_canonical_mask(n: usize, edges: &[(usize, usize)], perms: &[Vec<usize>]) -> u64 {
    let bit = |i: usize, j: usize| {
        let (i, j) = (i.min(j), i.max(j));
        i * n + j
    };
    perms
        .iter()
        .map(|p| edges.iter().fold(0u64, |acc, &(i, j)| acc | 1 << bit(p[i], p[j])))
        .min()
        .unwrap()
}

pub fn mask_connected(n: usize, edges: &[(usize, usize)]) -> bool {
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for &(i, j) in edges {
            for (a, b) in [(i, j), (j, i)] {
                if a == v && !seen[b] {
                    seen[b] = true;
                    stack.push(b);
                }
            }
        }
    }
    seen.iter().all(|&s| s)
}

/// Number of connected unlabeled simple graphs on `n` vertices, by brute
/// force over edge bitmasks.
pub fn brute_connected_graph_count(n: usize) -> usize {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let perms = permutations(n);
    let mut classes = BTreeSet::new();
    for mask in 0u64..1 << pairs.len() {
        let edges: Vec<_> = (0..pairs.len()).filter(|b| mask >> b & 1 == 1).map(|b| pairs[b]).collect();
        if edges.len() + 1 < n || !mask_connected(n, &edges) {
            continue;
        }
        classes.insert(brute_canonical_mask(n, &edges, &perms));
    }
    classes.len()
}

/// AHU encoding of a tree rooted at `root`.
fn ahu(adj: &[Vec<usize>], v: usize, parent: usize) -> String {
    let mut kids: Vec<String> = adj[v].iter().filter(|&&u| u != parent).map(|&u| ahu(adj, u, v)).collect();
    kids.sort();
    format!("({})", kids.concat())
}

/// Canonical string of a free tree: least AHU code over its centers.
pub fn tree_code(n: usize, edges: &[(usize, usize)]) -> String {
    let mut adj = vec![Vec::new(); n];
    for &(i, j) in edges {
        adj[i].push(j);
        adj[j].push(i);
    }
    let mut degree: Vec<usize> = adj.iter().map(Vec::len).collect();
    let mut layer: Vec<usize> = (0..n).filter(|&v| degree[v] <= 1).collect();
    let mut remaining = n;
    while remaining > 2 {
        remaining -= layer.len();
        let mut next = Vec::new();
        for &leaf in &layer {
            for &u in &adj[leaf] {
                if degree[u] > 1 {
                    degree[u] -= 1;
                    if degree[u] == 1 {
                        next.push(u);
                    }
                }
            }
            degree[leaf] = 0;
        }
        layer = next;
    }
    layer.iter().map(|&c| ahu(&adj, c, usize::MAX)).min().unwrap()
}

/// Number of unlabeled trees on `n` vertices, by decoding every Pruefer
/// sequence and collecting AHU codes.
pub fn prufer_tree_count(n: usize) -> usize {
    if n <= 2 {
        return 1;
    }
    let mut classes = BTreeSet::new();
    let total = n.pow(n as u32 - 2);
    for code in 0..total {
        let mut seq = Vec::with_capacity(n - 2);
        let mut c = code;
        for _ in 0..n - 2 {
            seq.push(c % n);
            c /= n;
        }
        let mut deg = vec![1usize; n];
        for &s in &seq {
            deg[s] += 1;
        }
        let mut edges = Vec::with_capacity(n - 1);
        for &s in &seq {
            let leaf = (0..n).find(|&v| deg[v] == 1).unwrap();
            edges.push((leaf, s));
            deg[leaf] -= 1;
            deg[s] -= 1;
        }
        let rest: Vec<usize> = (0..n).filter(|&v| deg[v] == 1).collect();
        edges.push((rest[0], rest[1]));
        classes.insert(tree_code(n, &edges));
    }
    classes.len()
}

pub fn is_tree(g: &CoxeterGraph) -> bool {
    g.edge_count() + 1 == g.len() && g.is_connected()
}

pub fn simple_edges(g: &CoxeterGraph) -> Vec<(usize, usize)> {
    g.edges().map(|(i, j, _)| (i, j)).collect()
}

/// Random cone-vertex graph: spherical or affine components plus a vertex
/// joined to some vertices of each. Returns the graph and the cone index.
pub fn planted_cone<R: Rng>(rng: &mut R, pool: &[CoxeterGraph]) -> (CoxeterGraph, usize) {
    let labels = [BondLabel::THREE, m(4), m(5), m(6), BondLabel::INFINITY];
    let k = rng.gen_range(1..=4);
    let mut edges = Vec::new();
    let mut offset = 0;
    let mut attach = Vec::new();
    for _ in 0..k {
        let g = pool.choose(rng).unwrap();
        edges.extend(g.edges().map(|(i, j, l)| (offset + i, offset + j, l)));
        let mut picked: Vec<usize> = (0..g.len()).filter(|_| rng.gen_bool(0.4)).collect();
        if picked.is_empty() {
            picked.push(rng.gen_range(0..g.len()));
        }
        attach.extend(picked.into_iter().map(|v| offset + v));
        offset += g.len();
    }
    let n = offset + 1;
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let cone = offset;
    for v in attach {
        edges.push((cone, v, *labels.choose(rng).unwrap()));
    }
    let edges: Vec<_> = edges.into_iter().map(|(i, j, l)| (perm[i], perm[j], l)).collect();
    (graph(n, &edges), perm[cone])
}

pub fn cone_pool() -> Vec<CoxeterGraph> {
    let mut out = Vec::new();
    for n in 1..=6 {
        out.push(classical_diagram(DiagramFamily::A, n).unwrap());
        out.push(classical_diagram(DiagramFamily::AffineA, n).unwrap());
    }
    for n in 4..=6 {
        out.push(classical_diagram(DiagramFamily::D, n).unwrap());
        out.push(classical_diagram(DiagramFamily::AffineD, n).unwrap());
    }
    out.push(classical_diagram(DiagramFamily::E, 6).unwrap());
    out.push(classical_diagram(DiagramFamily::AffineE, 6).unwrap());
    out.push(graph(2, &[(0, 1, m(5))]));
    out.push(graph(3, &[(0, 1, m(4)), (1, 2, m(4))]));
    out
}
