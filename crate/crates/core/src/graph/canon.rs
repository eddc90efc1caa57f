//! Canonical labeling of labeled Coxeter graphs.
//!
//! Individualization-refinement: the vertex partition is refined until
//! equitable with respect to (cell, bond label) neighbor counts, then a
//! non-singleton cell is split by individualizing each of its vertices in
//! turn. Every discrete leaf yields a vertex order; the canonical order is the
//! one whose upper-triangular label table is lexicographically least.
//! Automorphisms found between equal leaves prune the search.

use std::fmt;

use super::CoxeterGraph;

/// Isomorphism-invariant encoding of a labeled graph. Vertex names are not
/// part of it; bond labels are.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm(Vec<u8>);

impl CanonicalForm {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn to_hex(&self) -> String {
        self.0.iter().map(|b| format!("{b:02x}")).collect()
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

pub fn canonical_form(graph: &CoxeterGraph) -> CanonicalForm {
    canonical_labeling(graph).0
}

/// Canonical form together with the canonical order: `order[k]` is the
/// original index of the vertex placed at canonical position `k`.
pub fn canonical_labeling(graph: &CoxeterGraph) -> (CanonicalForm, Vec<usize>) {
    let n = graph.len();
    let mut codes = vec![0u32; n * n];
    for (i, j, m) in graph.edges() {
        codes[i * n + j] = m.code();
        codes[j * n + i] = m.code();
    }
    let mut search = Search {
        n,
        codes,
        first: None,
        best: None,
        autos: Vec::new(),
    };
    let root = search.refine(vec![(0..n).collect()]);
    search.descend(root, &mut Vec::new());
    let order = search.best.map(|leaf| leaf.order).unwrap_or_default();
    (encode(graph, &order), order)
}

fn encode(graph: &CoxeterGraph, order: &[usize]) -> CanonicalForm {
    let n = order.len();
    let mut bytes = Vec::with_capacity(4 + 8 * n);
    bytes.extend_from_slice(&(n as u32).to_be_bytes());
    for a in 0..n {
        for b in (a + 1)..n {
            if let Some(m) = graph.bond(order[a], order[b]) {
                bytes.extend_from_slice(&(a as u16).to_be_bytes());
                bytes.extend_from_slice(&(b as u16).to_be_bytes());
                bytes.extend_from_slice(&m.code().to_be_bytes());
            }
        }
    }
    CanonicalForm(bytes)
}

struct Leaf {
    path: Vec<usize>,
    order: Vec<usize>,
    table: Vec<u32>,
}

struct Search {
    n: usize,
    codes: Vec<u32>,
    first: Option<Leaf>,
    best: Option<Leaf>,
    autos: Vec<Vec<usize>>,
}

type Partition = Vec<Vec<usize>>;

impl Search {
    fn refine(&self, mut cells: Partition) -> Partition {
        let n = self.n;
        let mut cell_of = vec![0usize; n];
        loop {
            for (c, cell) in cells.iter().enumerate() {
                for &v in cell {
                    cell_of[v] = c;
                }
            }
            let mut split = false;
            let mut next = Vec::with_capacity(cells.len());
            for cell in cells {
                if cell.len() == 1 {
                    next.push(cell);
                    continue;
                }
                let mut keyed: Vec<(Vec<(usize, u32)>, usize)> = cell
                    .iter()
                    .map(|&v| {
                        let mut sig: Vec<(usize, u32)> = (0..n)
                            .filter(|&u| self.codes[v * n + u] != 0)
                            .map(|u| (cell_of[u], self.codes[v * n + u]))
                            .collect();
                        sig.sort_unstable();
                        (sig, v)
                    })
                    .collect();
                keyed.sort_by(|a, b| a.0.cmp(&b.0));
                let before = next.len();
                let mut start = 0;
                for k in 1..=keyed.len() {
                    if k == keyed.len() || keyed[k].0 != keyed[start].0 {
                        next.push(keyed[start..k].iter().map(|(_, v)| *v).collect());
                        start = k;
                    }
                }
                split |= next.len() - before > 1;
            }
            cells = next;
            if !split {
                return cells;
            }
        }
    }

    fn table(&self, order: &[usize]) -> Vec<u32> {
        let n = self.n;
        let mut t = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        for a in 0..n {
            for b in (a + 1)..n {
                t.push(self.codes[order[a] * n + order[b]]);
            }
        }
        t
    }

    /// Returns `Some(d)` when every node deeper than `d` on the current path
    /// can be abandoned (its subtree is an automorphic image of one already
    /// searched).
    fn descend(&mut self, cells: Partition, path: &mut Vec<usize>) -> Option<usize> {
        if cells.len() == self.n {
            return self.leaf(cells.into_iter().map(|c| c[0]).collect(), path);
        }
        let target = cells.iter().position(|c| c.len() > 1).expect("non-discrete partition");
        let mut tried: Vec<usize> = Vec::new();
        for &v in &cells[target] {
            if !tried.is_empty() && self.equivalent_to_tried(path, &tried, v) {
                continue;
            }
            let mut child = Vec::with_capacity(cells.len() + 1);
            child.extend_from_slice(&cells[..target]);
            child.push(vec![v]);
            child.push(cells[target].iter().copied().filter(|&u| u != v).collect());
            child.extend_from_slice(&cells[target + 1..]);
            let child = self.refine(child);
            path.push(v);
            let jump = self.descend(child, path);
            path.pop();
            tried.push(v);
            if let Some(d) = jump {
                if d < path.len() {
                    return Some(d);
                }
            }
        }
        None
    }

    fn leaf(&mut self, order: Vec<usize>, path: &[usize]) -> Option<usize> {
        let table = self.table(&order);
        let leaf = Leaf {
            path: path.to_vec(),
            order,
            table,
        };
        let Some(first) = &self.first else {
            self.first = Some(Leaf {
                path: leaf.path.clone(),
                order: leaf.order.clone(),
                table: leaf.table.clone(),
            });
            self.best = Some(leaf);
            return None;
        };
        if first.table == leaf.table {
            let (auto, d) = automorphism(first, &leaf);
            self.autos.push(auto);
            return Some(d);
        }
        let best = self.best.as_ref().expect("best is set with first");
        match leaf.table.cmp(&best.table) {
            std::cmp::Ordering::Less => {
                self.best = Some(leaf);
                None
            }
            std::cmp::Ordering::Equal => {
                let (auto, d) = automorphism(best, &leaf);
                self.autos.push(auto);
                Some(d)
            }
            std::cmp::Ordering::Greater => None,
        }
    }

    fn equivalent_to_tried(&self, path: &[usize], tried: &[usize], v: usize) -> bool {
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut any = false;
        for auto in &self.autos {
            if path.iter().any(|&p| auto[p] != p) {
                continue;
            }
            any = true;
            for (x, &y) in auto.iter().enumerate() {
                let (rx, ry) = (find(&mut parent, x), find(&mut parent, y));
                if rx != ry {
                    parent[rx] = ry;
                }
            }
        }
        if !any {
            return false;
        }
        let rv = find(&mut parent, v);
        tried.iter().any(|&u| find(&mut parent, u) == rv)
    }
}

/// The automorphism carrying leaf `a` onto leaf `b`, and the depth at which
/// their paths diverge.
fn automorphism(a: &Leaf, b: &Leaf) -> (Vec<usize>, usize) {
    let mut auto = vec![0usize; a.order.len()];
    for (k, &v) in a.order.iter().enumerate() {
        auto[v] = b.order[k];
    }
    let d = a.path.iter().zip(&b.path).take_while(|(x, y)| x == y).count();
    (auto, d)
}
