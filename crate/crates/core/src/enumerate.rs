//! Unlabeled graph and tree corpora, classical diagrams, figure fixtures,
//! subhyperbolic triples and the corpus-wide verifications built on them.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{canonical_labeling, connected_components, induced_subgraph, BondLabel, CanonicalForm, CoxeterGraph, VertexSet};
use crate::spectral::{
    classify, classify_adjacency, float_signature, generalized_adjacency, spectrum, Classification, CoxeterClass,
    Tolerance,
};

pub const MAX_GRAPH_ORDER: usize = 8;
pub const MAX_TREE_ORDER: usize = 16;

/// The graph relabeled into canonical order, with vertices `v0, v1, ...`.
pub fn canonical_representative(graph: &CoxeterGraph) -> (CanonicalForm, CoxeterGraph) {
    let (form, order) = canonical_labeling(graph);
    let mut position = vec![0usize; order.len()];
    for (k, &v) in order.iter().enumerate() {
        position[v] = k;
    }
    let edges: Vec<_> = graph
        .edges()
        .map(|(i, j, m)| {
            let (a, b) = (position[i], position[j]);
            (a.min(b), a.max(b), m)
        })
        .collect();
    (form, CoxeterGraph::numbered(graph.len(), edges))
}

/// Extends every representative by one vertex in all ways `attachments`
/// yields, keeping one graph per canonical form.
fn extend_classes(
    level: &BTreeMap<CanonicalForm, CoxeterGraph>,
    attachments: impl Fn(usize) -> Vec<u64>,
) -> BTreeMap<CanonicalForm, CoxeterGraph> {
    let mut next = BTreeMap::new();
    for graph in level.values() {
        let k = graph.len();
        for mask in attachments(k) {
            let edges = graph
                .edges()
                .chain((0..k).filter(|i| mask >> i & 1 == 1).map(|i| (i, k, BondLabel::THREE)));
            let candidate = CoxeterGraph::numbered(k + 1, edges);
            let (form, rep) = canonical_representative(&candidate);
            next.entry(form).or_insert(rep);
        }
    }
    next
}

fn single_vertex() -> BTreeMap<CanonicalForm, CoxeterGraph> {
    let (form, rep) = canonical_representative(&CoxeterGraph::numbered(1, []));
    BTreeMap::from([(form, rep)])
}

/// One simply-laced representative per isomorphism class of connected graphs
/// on `n` vertices, sorted by canonical form.
///
/// Generated by vertex extension: every connected graph has a vertex whose
/// removal leaves it connected, so attaching a new vertex to every nonempty
/// subset of each smaller class reaches all classes.
pub fn connected_graphs(n: usize) -> Result<Vec<CoxeterGraph>> {
    Ok(connected_graph_classes(n)?.into_values().collect())
}

pub fn connected_graph_classes(n: usize) -> Result<BTreeMap<CanonicalForm, CoxeterGraph>> {
    if !(1..=MAX_GRAPH_ORDER).contains(&n) {
        return Err(Error::Domain(format!(
            "connected graph enumeration supports 1 <= n <= {MAX_GRAPH_ORDER}, got {n}"
        )));
    }
    let mut level = single_vertex();
    for _ in 1..n {
        level = extend_classes(&level, |k| (1u64..(1u64 << k)).collect());
    }
    Ok(level)
}

/// One representative per isomorphism class of trees on `n` vertices,
/// generated by leaf extension, sorted by canonical form.
pub fn free_trees(n: usize) -> Result<Vec<CoxeterGraph>> {
    Ok(free_tree_classes(n)?.into_values().collect())
}

pub fn free_tree_classes(n: usize) -> Result<BTreeMap<CanonicalForm, CoxeterGraph>> {
    if !(1..=MAX_TREE_ORDER).contains(&n) {
        return Err(Error::Domain(format!("tree enumeration supports 1 <= n <= {MAX_TREE_ORDER}, got {n}")));
    }
    let mut level = single_vertex();
    for _ in 1..n {
        level = extend_classes(&level, |k| (0..k).map(|i| 1u64 << i).collect());
    }
    Ok(level)
}

/// Simply-laced spherical and affine diagram families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DiagramFamily {
    A,
    D,
    E,
    AffineA,
    AffineD,
    AffineE,
}

impl FromStr for DiagramFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "A" => DiagramFamily::A,
            "D" => DiagramFamily::D,
            "E" => DiagramFamily::E,
            "A~" => DiagramFamily::AffineA,
            "D~" => DiagramFamily::AffineD,
            "E~" => DiagramFamily::AffineE,
            _ => return Err(Error::Domain(format!("unknown diagram family {s:?}"))),
        })
    }
}

impl fmt::Display for DiagramFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DiagramFamily::A => "A",
            DiagramFamily::D => "D",
            DiagramFamily::E => "E",
            DiagramFamily::AffineA => "A~",
            DiagramFamily::AffineD => "D~",
            DiagramFamily::AffineE => "E~",
        })
    }
}

fn named(names: &[String], edges: &[(usize, usize)], m: BondLabel) -> CoxeterGraph {
    CoxeterGraph::from_index_edges(names.to_vec(), edges.iter().map(|&(i, j)| (i, j, m)))
}

/// A path on `len` vertices starting at index `from`, as index edges.
fn path_edges(from: usize, len: usize) -> Vec<(usize, usize)> {
    (from..from + len.saturating_sub(1)).map(|i| (i, i + 1)).collect()
}

/// The diagram `X_n` with vertices `s1, s2, ...`. Affine families have
/// `n + 1` vertices; `A~_1` is the single infinite bond.
pub fn classical_diagram(family: DiagramFamily, n: usize) -> Result<CoxeterGraph> {
    let invalid = || Err(Error::Domain(format!("{family}_{n} is not a valid diagram")));
    let (vertices, edges, label) = match family {
        DiagramFamily::A if n >= 1 => (n, path_edges(0, n), BondLabel::THREE),
        DiagramFamily::D if n >= 4 => {
            let mut e = path_edges(0, n - 1);
            e.push((n - 3, n - 1));
            (n, e, BondLabel::THREE)
        }
        DiagramFamily::E if (6..=8).contains(&n) => {
            let mut e = path_edges(0, n - 1);
            e.push((2, n - 1));
            (n, e, BondLabel::THREE)
        }
        DiagramFamily::AffineA if n == 1 => (2, vec![(0, 1)], BondLabel::INFINITY),
        DiagramFamily::AffineA if n >= 2 => {
            let mut e = path_edges(0, n + 1);
            e.push((0, n));
            (n + 1, e, BondLabel::THREE)
        }
        DiagramFamily::AffineD if n >= 4 => {
            let mut e = path_edges(0, n - 1);
            e.push((1, n - 1));
            e.push((n - 3, n));
            (n + 1, e, BondLabel::THREE)
        }
        DiagramFamily::AffineE if n == 6 => {
            let mut e = path_edges(0, 5);
            e.extend([(2, 5), (5, 6)]);
            (7, e, BondLabel::THREE)
        }
        DiagramFamily::AffineE if n == 7 => {
            let mut e = path_edges(0, 7);
            e.push((3, 7));
            (8, e, BondLabel::THREE)
        }
        DiagramFamily::AffineE if n == 8 => {
            let mut e = path_edges(0, 8);
            e.push((2, 8));
            (9, e, BondLabel::THREE)
        }
        _ => return invalid(),
    };
    let names: Vec<String> = (1..=vertices).map(|i| format!("s{i}")).collect();
    Ok(named(&names, &edges, label))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Figure {
    /// Two spiders with three 3-vertex legs, centers joined (20 vertices).
    Fig1,
    /// The 14-vertex higher-rank tree without separated hyperbolic pairs.
    Fig2,
    /// The subhyperbolic triple with three single-vertex components.
    Fig3Example,
}

impl FromStr for Figure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fig1" => Ok(Figure::Fig1),
            "fig2" => Ok(Figure::Fig2),
            "fig3_example" => Ok(Figure::Fig3Example),
            _ => Err(Error::Domain(format!("unknown figure {s:?} (expected fig1, fig2 or fig3_example)"))),
        }
    }
}

fn graph_from_names(vertices: &[&str], edges: &[(&str, &str)]) -> CoxeterGraph {
    let names: Vec<String> = vertices.iter().map(|s| s.to_string()).collect();
    CoxeterGraph::new(
        names,
        edges.iter().map(|(u, v)| (u.to_string(), v.to_string(), BondLabel::THREE)),
    )
    .expect("figure fixture is well formed")
}

pub fn paper_figure(figure: Figure) -> CoxeterGraph {
    match figure {
        Figure::Fig1 => {
            let mut vertices = Vec::new();
            let mut edges = Vec::new();
            for c in ["u", "v"] {
                vertices.push(c.to_string());
                for leg in 1..=3 {
                    let mut prev = c.to_string();
                    for k in 1..=3 {
                        let name = format!("{c}{leg}{k}");
                        vertices.push(name.clone());
                        edges.push((prev, name.clone()));
                        prev = name;
                    }
                }
            }
            edges.push(("u".into(), "v".into()));
            let v: Vec<&str> = vertices.iter().map(String::as_str).collect();
            let e: Vec<(&str, &str)> = edges.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
            graph_from_names(&v, &e)
        }
        Figure::Fig2 => graph_from_names(
            &["u1", "u2", "u3", "u4", "u5", "u6", "u", "v", "v1", "v2", "v3", "v4", "v5", "v6"],
            &[
                ("u", "v"),
                ("u", "u1"),
                ("u2", "u1"),
                ("u3", "u1"),
                ("u5", "u1"),
                ("u5", "u6"),
                ("u3", "u4"),
                ("v", "v1"),
                ("v2", "v1"),
                ("v3", "v1"),
                ("v5", "v1"),
                ("v5", "v6"),
                ("v3", "v4"),
            ],
        ),
        Figure::Fig3Example => graph_from_names(&["v1", "v2", "v3"], &[("v1", "v2"), ("v1", "v3"), ("v3", "v2")]),
    }
}

/// Three spherical or affine graphs, a chosen vertex in each, and the labels
/// `m_12, m_13, m_23` of the bonds joining the chosen vertices (`None` for
/// `m = 2`).
#[derive(Debug, Clone, PartialEq)]
pub struct TripleSpec {
    components: [CoxeterGraph; 3],
    chosen: [usize; 3],
    labels: [Option<BondLabel>; 3],
}

impl TripleSpec {
    pub fn new(components: [CoxeterGraph; 3], chosen: [usize; 3], labels: [Option<BondLabel>; 3]) -> Result<Self> {
        for (k, (g, &v)) in components.iter().zip(&chosen).enumerate() {
            if g.is_empty() {
                return Err(Error::Domain(format!("component G{} is empty", k + 1)));
            }
            if v >= g.len() {
                return Err(Error::Domain(format!("chosen vertex {v} is not in component G{}", k + 1)));
            }
            let class = classify(g, Tolerance::default())?.class;
            if !class.is_spherical_or_affine() {
                return Err(Error::Domain(format!(
                    "component G{} is {class}, not spherical or affine",
                    k + 1
                )));
            }
        }
        Ok(TripleSpec {
            components,
            chosen,
            labels,
        })
    }

    pub fn components(&self) -> &[CoxeterGraph; 3] {
        &self.components
    }

    pub fn chosen(&self) -> [usize; 3] {
        self.chosen
    }

    pub fn labels(&self) -> [Option<BondLabel>; 3] {
        self.labels
    }
}

/// Disjoint union of the components plus the three joining bonds. Vertex
/// `x` of component `k` is renamed `g{k}_x`.
pub fn make_subhyperbolic_triple(spec: &TripleSpec) -> CoxeterGraph {
    join_triple(
        [&spec.components[0], &spec.components[1], &spec.components[2]],
        spec.chosen,
        spec.labels,
    )
}

fn join_triple(components: [&CoxeterGraph; 3], chosen: [usize; 3], labels: [Option<BondLabel>; 3]) -> CoxeterGraph {
    let mut names = Vec::new();
    let mut edges = Vec::new();
    let mut offsets = [0usize; 3];
    for (k, g) in components.iter().enumerate() {
        offsets[k] = names.len();
        names.extend(g.vertices().iter().map(|x| format!("g{}_{x}", k + 1)));
        edges.extend(g.edges().map(|(i, j, m)| (offsets[k] + i, offsets[k] + j, m)));
    }
    for ((a, b), m) in [(0, 1), (0, 2), (1, 2)].into_iter().zip(labels) {
        if let Some(m) = m {
            edges.push((offsets[a] + chosen[a], offsets[b] + chosen[b], m));
        }
    }
    CoxeterGraph::from_index_edges(names, edges)
}

/// Classifications of every component of `graph`, in component order.
fn component_classes(graph: &CoxeterGraph) -> Result<Vec<CoxeterClass>> {
    connected_components(graph)
        .iter()
        .map(|c| Ok(classify(&induced_subgraph(graph, c)?, Tolerance::default())?.class))
        .collect()
}

/// The least-index vertex whose removal leaves only spherical and affine
/// components.
pub fn cone_vertex_witness(graph: &CoxeterGraph) -> Result<Option<usize>> {
    for s in 0..graph.len() {
        let rest = VertexSet::from_indices((0..graph.len()).filter(|&i| i != s));
        let classes = component_classes(&induced_subgraph(graph, &rest)?)?;
        if classes.iter().all(|c| c.is_spherical_or_affine()) {
            return Ok(Some(s));
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Witness {
    pub canonical_form: CanonicalForm,
    pub graph: CoxeterGraph,
    pub classification: Classification,
}

/// Tallies from [`verify_corpus`].
#[derive(Debug, Clone, PartialEq, Default)]
pub struct CorpusReport {
    pub max_n: usize,
    pub per_size: BTreeMap<usize, usize>,
    pub per_class: BTreeMap<CoxeterClass, usize>,
    pub witnesses: Vec<Witness>,
    /// Every classification in the corpus was decided exactly.
    pub exact: bool,
    /// Graphs where the exact signature differs from the floating one, or the
    /// eigenvalue thresholds disagree with the signature.
    pub route_mismatches: usize,
    /// Largest eigen-reconstruction residual divided by its bound.
    pub max_residual_ratio: f64,
}

impl CorpusReport {
    pub fn total(&self) -> usize {
        self.per_size.values().sum()
    }

    pub fn verified(&self) -> bool {
        self.witnesses.is_empty()
    }
}

/// Classifies every graph, tallies classes and collects higher-rank
/// witnesses. Also cross-checks the exact and floating signature routes.
pub fn verify_corpus<'a, I>(graphs: I) -> Result<CorpusReport>
where
    I: IntoIterator<Item = &'a CoxeterGraph>,
{
    let mut report = CorpusReport {
        exact: true,
        ..CorpusReport::default()
    };
    for graph in graphs {
        let n = graph.len();
        report.max_n = report.max_n.max(n);
        *report.per_size.entry(n).or_default() += 1;
        let a = generalized_adjacency(graph)?;
        let c = classify_adjacency(&a, Tolerance::default())?;
        *report.per_class.entry(c.class).or_default() += 1;
        report.exact &= c.exact;

        let spec = spectrum(&a, c.tolerance)?;
        let bound = crate::spectral::reconstruction_bound(a.as_matrix());
        if bound > 0.0 {
            report.max_residual_ratio = report.max_residual_ratio.max(spec.residual() / bound);
        }
        let float = float_signature(&spec);
        let threshold = CoxeterClass::from_leading_eigenvalues(c.lambda1, c.lambda2, c.tolerance);
        if float.counts() != c.signature.counts() || threshold != c.class {
            report.route_mismatches += 1;
        }

        if c.class == CoxeterClass::HigherRank {
            report.witnesses.push(Witness {
                canonical_form: crate::graph::canonical_form(graph),
                graph: graph.clone(),
                classification: c,
            });
        }
    }
    Ok(report)
}

/// The spherical and affine connected simply-laced graphs on at most
/// `max_vertices` vertices.
pub fn small_spherical_affine_components(max_vertices: usize) -> Result<Vec<CoxeterGraph>> {
    let mut out = Vec::new();
    for n in 1..=max_vertices {
        for g in connected_graphs(n)? {
            if classify(&g, Tolerance::default())?.class.is_spherical_or_affine() {
                out.push(g);
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct TripleSweepReport {
    pub components: usize,
    pub graphs: usize,
    pub per_class: BTreeMap<CoxeterClass, usize>,
    pub witnesses: Vec<Witness>,
}

impl TripleSweepReport {
    pub fn verified(&self) -> bool {
        self.witnesses.is_empty()
    }
}

/// Classifies every subhyperbolic triple over the given components, all
/// vertex choices and all joining labels.
///
/// Triples are taken as nondecreasing sequences of (component, vertex)
/// choices; together with all label assignments this covers every ordered
/// triple up to isomorphism.
pub fn sweep_subhyperbolic_triples(components: &[CoxeterGraph], labels: &[Option<BondLabel>]) -> Result<TripleSweepReport> {
    let choices: Vec<(usize, usize)> = components
        .iter()
        .enumerate()
        .flat_map(|(c, g)| (0..g.len()).map(move |v| (c, v)))
        .collect();
    let mut report = TripleSweepReport {
        components: components.len(),
        ..TripleSweepReport::default()
    };
    for a in 0..choices.len() {
        for b in a..choices.len() {
            for c in b..choices.len() {
                let picks = [choices[a], choices[b], choices[c]];
                let graphs = picks.map(|(g, _)| &components[g]);
                let chosen = picks.map(|(_, v)| v);
                for &m12 in labels {
                    for &m13 in labels {
                        for &m23 in labels {
                            let g = join_triple(graphs, chosen, [m12, m13, m23]);
                            let class = classify(&g, Tolerance::default())?;
                            report.graphs += 1;
                            *report.per_class.entry(class.class).or_default() += 1;
                            if class.class == CoxeterClass::HigherRank {
                                report.witnesses.push(Witness {
                                    canonical_form: crate::graph::canonical_form(&g),
                                    graph: g,
                                    classification: class,
                                });
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(report)
}

/// One line of a corpus export.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CorpusRow {
    pub canonical_form: String,
    pub n: usize,
    pub edge_list: String,
    pub class: CoxeterClass,
    pub p: usize,
    pub q: usize,
    pub r: usize,
    pub lambda1: f64,
    pub lambda2: Option<f64>,
    pub exact: bool,
}

/// `u-v:m` bonds joined by `;`, using vertex names.
pub fn edge_list(graph: &CoxeterGraph) -> String {
    graph
        .edges()
        .map(|(i, j, m)| format!("{}-{}:{m}", graph.vertex_name(i), graph.vertex_name(j)))
        .collect::<Vec<_>>()
        .join(";")
}

pub fn corpus_row(graph: &CoxeterGraph) -> Result<CorpusRow> {
    let c = classify(graph, Tolerance::default())?;
    Ok(CorpusRow {
        canonical_form: crate::graph::canonical_form(graph).to_hex(),
        n: graph.len(),
        edge_list: edge_list(graph),
        class: c.class,
        p: c.signature.p,
        q: c.signature.q,
        r: c.signature.r,
        lambda1: c.lambda1,
        lambda2: c.lambda2,
        exact: c.exact,
    })
}
