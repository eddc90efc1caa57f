//! Sign-split decomposition of higher-rank graphs, the Rayleigh bound check
//! behind it, and exhaustive searches over connected induced subgraphs.
//!
//! For a connected higher-rank graph the second eigenvector `v_2` of `A` has
//! coordinates of both signs. Restricting `A` to the positive vertices `P`
//! (respectively the negative vertices `N`, with the sign flipped) gives a
//! nonnegative vector `x` with `(A_P x)_i >= lambda_2 x_i`, so `A_P` has an
//! eigenvalue at least `lambda_2 > 2`. Certificates record those
//! componentwise residuals together with the eigensolver's cross-check.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::graph::{are_separated, connected_components, induced_subgraph, mask_is_connected, CoxeterGraph, VertexSet};
use crate::spectral::{
    classify, classify_adjacency, generalized_adjacency, restrict_label, spectrum, symmetric_spectrum, AdjacencyMatrix,
    Classification, CoxeterClass, Label, Tolerance,
};

/// Default vertex bound for exhaustive subgraph searches.
pub const DEFAULT_SEARCH_BOUND: usize = 20;

/// Searches keep one table entry per vertex subset; this caps the table.
pub const MAX_SEARCH_VERTICES: usize = 28;

/// `1e-8 * n * max|M|`.
pub fn certificate_tolerance(m: &DMatrix<f64>) -> f64 {
    crate::spectral::reconstruction_bound(m)
}

/// Outcome of [`rayleigh_check`].
#[derive(Debug, Clone, PartialEq)]
pub struct RayleighCheck {
    /// `(Mv)_i >= mu v_i` held for every `i`, up to the tolerance.
    pub holds: bool,
    /// `(Mv)_i - mu v_i`.
    pub residuals: Vec<f64>,
    pub lambda_max: f64,
    pub tolerance: f64,
}

impl RayleighCheck {
    pub fn min_residual(&self) -> f64 {
        self.residuals.iter().copied().fold(f64::INFINITY, f64::min)
    }
}

/// Componentwise test of `(Mv)_i >= mu v_i`; see [`rayleigh_check`].
pub fn rayleigh_bound_check(m: &DMatrix<f64>, v: &[f64], mu: f64) -> Result<bool> {
    Ok(rayleigh_check(m, v, mu)?.holds)
}

/// Tests `(Mv)_i >= mu v_i - eps |v|_inf` for all `i`, where
/// `eps = 1e-8 * n * max|M|`.
///
/// When the test passes, the largest eigenvalue of `M` must be at least `mu`
/// minus the propagated slack `eps (1 + |v|_inf |v|_1 / |v|_2^2)`; the
/// eigensolver's answer is checked against that and a shortfall is reported
/// as [`Error::InvariantBreach`].
pub fn rayleigh_check(m: &DMatrix<f64>, v: &[f64], mu: f64) -> Result<RayleighCheck> {
    let n = m.nrows();
    if !m.is_square() || (0..n).any(|i| (0..i).any(|j| m[(i, j)] != m[(j, i)])) {
        return Err(Error::Domain("Rayleigh check needs a symmetric matrix".into()));
    }
    if v.len() != n {
        return Err(Error::Domain(format!("vector has length {} for a {n}x{n} matrix", v.len())));
    }
    let inf_norm = v.iter().fold(0.0f64, |a, x| a.max(x.abs()));
    if inf_norm == 0.0 {
        return Err(Error::Domain("Rayleigh check needs a nonzero vector".into()));
    }
    let x = DVector::from_column_slice(v);
    let y = m * &x;
    let residuals: Vec<f64> = (0..n).map(|i| y[i] - mu * x[i]).collect();
    let eps = certificate_tolerance(m);
    let holds = residuals.iter().all(|&r| r >= -eps * inf_norm);
    let spec = symmetric_spectrum(m, Tolerance::default().resolve(n))?;
    let lambda_max = spec.values()[0];
    if holds {
        let l1: f64 = v.iter().map(|x| x.abs()).sum();
        let l2sq: f64 = v.iter().map(|x| x * x).sum();
        let slack = eps * (1.0 + inf_norm * l1 / l2sq);
        if lambda_max < mu - slack {
            return Err(Error::InvariantBreach(format!(
                "componentwise bound holds for mu = {mu} but the largest eigenvalue is {lambda_max}"
            )));
        }
    }
    Ok(RayleighCheck {
        holds,
        residuals,
        lambda_max,
        tolerance: eps,
    })
}

/// Partition of the vertices by the sign of the second eigenvector.
#[derive(Debug, Clone, PartialEq)]
pub struct SignSplit {
    pub positive: VertexSet,
    pub negative: VertexSet,
    /// Coordinates with magnitude at most `zero_tolerance`.
    pub zero: VertexSet,
    pub vector: Label,
    pub lambda2: f64,
    /// Multiplicity of `lambda2` within the spectral tolerance. Above 1 the
    /// split depends on the solver's basis of the eigenspace.
    pub multiplicity: usize,
    pub zero_tolerance: f64,
}

/// Sign split of `v_2`; `zero_tol` defaults to `1e-9 |v_2|_inf`.
pub fn sign_split(graph: &CoxeterGraph, zero_tol: Option<f64>) -> Result<SignSplit> {
    if graph.len() < 2 {
        return Err(Error::Precondition("sign split needs at least two vertices".into()));
    }
    if connected_components(graph).len() != 1 {
        return Err(Error::Precondition("sign split needs a connected graph".into()));
    }
    let a = generalized_adjacency(graph)?;
    let tau = Tolerance::default().resolve(graph.len());
    let spec = spectrum(&a, tau)?;
    let v2 = spec.vector(1);
    let inf_norm = v2.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let zero_tolerance = zero_tol.unwrap_or(1e-9 * inf_norm);
    let (mut pos, mut neg, mut zero) = (Vec::new(), Vec::new(), Vec::new());
    for (i, &x) in v2.iter().enumerate() {
        if x.abs() <= zero_tolerance {
            zero.push(i);
        } else if x > 0.0 {
            pos.push(i);
        } else {
            neg.push(i);
        }
    }
    Ok(SignSplit {
        positive: VertexSet::from_indices(pos),
        negative: VertexSet::from_indices(neg),
        zero: VertexSet::from_indices(zero),
        vector: Label::new(graph.all_vertices(), v2)?,
        lambda2: spec.values()[1],
        multiplicity: spec.multiplicity(1, tau),
        zero_tolerance,
    })
}

/// One side of a [`DecompositionCertificate`].
#[derive(Debug, Clone, PartialEq)]
pub struct PartCertificate {
    pub vertices: VertexSet,
    pub graph: CoxeterGraph,
    /// Inherited label, sign-flipped on the negative side so it is positive.
    pub label: Label,
    /// `(A_part x)_i - lambda_2 x_i` per vertex of the part.
    pub residuals: Vec<f64>,
    pub lambda_max: f64,
    pub classification: Classification,
}

impl PartCertificate {
    pub fn min_residual(&self) -> f64 {
        self.residuals.iter().copied().fold(f64::INFINITY, f64::min)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DecompositionCertificate {
    pub lambda2: f64,
    pub split: SignSplit,
    pub positive: PartCertificate,
    pub negative: PartCertificate,
    /// `eps_cert = 1e-8 * n * max|A|` of the whole graph.
    pub tolerance: f64,
}

/// Splits a connected higher-rank graph into two disjoint induced subgraphs
/// that are each hyperbolic or higher rank, with a full certificate.
pub fn decompose_higher_rank(graph: &CoxeterGraph) -> Result<DecompositionCertificate> {
    if graph.is_empty() || connected_components(graph).len() != 1 {
        return Err(Error::Precondition("decomposition needs a connected, nonempty graph".into()));
    }
    let class = classify(graph, Tolerance::default())?;
    if class.class != CoxeterClass::HigherRank {
        return Err(Error::Precondition(format!(
            "decomposition needs a HigherRank graph, this one is {}",
            class.class
        )));
    }
    let a = generalized_adjacency(graph)?;
    let eps = certificate_tolerance(a.as_matrix());
    let split = sign_split(graph, None)?;
    if split.positive.is_empty() || split.negative.is_empty() {
        return Err(Error::InvariantBreach(
            "second eigenvector of a connected graph has no sign change".into(),
        ));
    }
    let positive = certify_part(graph, &a, &split, &split.positive, 1.0, eps)?;
    let negative = certify_part(graph, &a, &split, &split.negative, -1.0, eps)?;
    Ok(DecompositionCertificate {
        lambda2: split.lambda2,
        split,
        positive,
        negative,
        tolerance: eps,
    })
}

fn certify_part(
    graph: &CoxeterGraph,
    a: &AdjacencyMatrix,
    split: &SignSplit,
    part: &VertexSet,
    sign: f64,
    eps: f64,
) -> Result<PartCertificate> {
    let inherited = restrict_label(&split.vector, part)?;
    let label = Label::new(part.clone(), inherited.values().iter().map(|x| sign * x).collect())?;
    let sub = a.principal(part.indices());
    let check = rayleigh_check(sub.as_matrix(), label.values(), split.lambda2)?;
    let min = check.min_residual();
    if !check.holds || min < -eps {
        return Err(Error::InvariantBreach(format!(
            "claim residual {min:e} is below -{eps:e}"
        )));
    }
    if check.lambda_max < split.lambda2 - eps {
        return Err(Error::InvariantBreach(format!(
            "part has largest eigenvalue {} below lambda_2 = {}",
            check.lambda_max, split.lambda2
        )));
    }
    let classification = classify_adjacency(&sub, Tolerance::default())?;
    if !classification.class.is_hyperbolic_or_higher() {
        return Err(Error::InvariantBreach(format!(
            "part classified {} although its largest eigenvalue is {}",
            classification.class, check.lambda_max
        )));
    }
    Ok(PartCertificate {
        vertices: part.clone(),
        graph: induced_subgraph(graph, part)?,
        label,
        residuals: check.residuals,
        lambda_max: check.lambda_max,
        classification,
    })
}

/// Evidence that a graph is higher rank: two separated induced subgraphs
/// that are each hyperbolic.
#[derive(Debug, Clone, PartialEq)]
pub struct SeparationCertificate {
    pub first: VertexSet,
    pub second: VertexSet,
    pub first_class: Classification,
    pub second_class: Classification,
    pub separated: bool,
    pub whole: Classification,
}

/// Checks that `x` and `y` are separated and hyperbolic, then confirms the
/// implied higher rank of the whole graph with the spectral route.
pub fn certify_higher_rank_via_separation(
    graph: &CoxeterGraph,
    x: &VertexSet,
    y: &VertexSet,
) -> Result<SeparationCertificate> {
    if x.is_empty() || y.is_empty() {
        return Err(Error::Domain("separated subgraphs must be nonempty".into()));
    }
    if !are_separated(graph, x, y)? {
        return Err(Error::Domain("the two vertex sets are not separated".into()));
    }
    let tol = Tolerance::default();
    let first_class = classify(&induced_subgraph(graph, x)?, tol)?;
    let second_class = classify(&induced_subgraph(graph, y)?, tol)?;
    for (c, which) in [(&first_class, "first"), (&second_class, "second")] {
        if !c.class.is_hyperbolic() {
            return Err(Error::Domain(format!("{which} subgraph is {}, not hyperbolic", c.class)));
        }
    }
    let whole = classify(graph, tol)?;
    if whole.class != CoxeterClass::HigherRank {
        return Err(Error::InvariantBreach(format!(
            "separated hyperbolic subgraphs found but the graph classifies {}",
            whole.class
        )));
    }
    Ok(SeparationCertificate {
        first: x.clone(),
        second: y.clone(),
        first_class,
        second_class,
        separated: true,
        whole,
    })
}

fn check_bound(graph: &CoxeterGraph, bound: usize) -> Result<()> {
    let n = graph.len();
    if n > bound {
        return Err(Error::Resource(format!(
            "exhaustive search over {n} vertices exceeds the bound of {bound}"
        )));
    }
    if n > MAX_SEARCH_VERTICES {
        return Err(Error::Resource(format!(
            "exhaustive search supports at most {MAX_SEARCH_VERTICES} vertices, got {n}"
        )));
    }
    Ok(())
}

/// Masks of the connected induced subgraphs whose class passes `keep`.
fn connected_subsets(graph: &CoxeterGraph, keep: impl Fn(CoxeterClass) -> bool) -> Result<Vec<u32>> {
    let n = graph.len();
    if n == 0 {
        return Ok(Vec::new());
    }
    let nbr = graph.neighbor_masks().expect("bounded search graph");
    let a = generalized_adjacency(graph)?;
    let mut rows = Vec::with_capacity(n);
    let mut out = Vec::new();
    for mask in 1u64..(1u64 << n) {
        if !mask_is_connected(&nbr, mask) {
            continue;
        }
        rows.clear();
        rows.extend((0..n).filter(|i| mask >> i & 1 == 1));
        let class = classify_adjacency(&a.principal(&rows), Tolerance::default())?.class;
        if keep(class) {
            out.push(mask as u32);
        }
    }
    Ok(out)
}

/// Smaller size first, then the set whose least differing vertex it contains.
fn precedes(a: u32, b: u32) -> bool {
    match a.count_ones().cmp(&b.count_ones()) {
        std::cmp::Ordering::Less => true,
        std::cmp::Ordering::Greater => false,
        std::cmp::Ordering::Equal => {
            let d = a ^ b;
            d != 0 && a & d & d.wrapping_neg() != 0
        }
    }
}

/// `table[t]` is the least (by [`precedes`]) member of `members` contained
/// in `t`, or 0 when none is.
fn least_subset_table(n: usize, members: &[u32]) -> Vec<u32> {
    let mut table = vec![0u32; 1 << n];
    for &m in members {
        table[m as usize] = m;
    }
    for bit in 0..n {
        let b = 1usize << bit;
        for t in 0..table.len() {
            if t & b != 0 {
                let cand = table[t ^ b];
                if cand != 0 && (table[t] == 0 || precedes(cand, table[t])) {
                    table[t] = cand;
                }
            }
        }
    }
    table
}

fn closed_neighborhood(nbr: &[u64], mask: u32) -> u32 {
    let mut out = mask;
    let mut m = mask;
    while m != 0 {
        let i = m.trailing_zeros() as usize;
        m &= m - 1;
        out |= nbr[i] as u32;
    }
    out
}

/// Least pair under (total size, then the sets in order).
fn least_pair(
    members: &[u32],
    table: &[u32],
    available: impl Fn(u32) -> u32,
) -> Option<(u32, u32)> {
    let mut best: Option<(u32, u32)> = None;
    for &x in members {
        let y = table[available(x) as usize];
        if y == 0 {
            continue;
        }
        let pair = if precedes(x, y) { (x, y) } else { (y, x) };
        let better = match best {
            None => true,
            Some((bx, by)) => {
                let (size, bsize) = (pair.0.count_ones() + pair.1.count_ones(), bx.count_ones() + by.count_ones());
                size < bsize
                    || (size == bsize && (precedes(pair.0, bx) || (pair.0 == bx && precedes(pair.1, by))))
            }
        };
        if better {
            best = Some(pair);
        }
    }
    best
}

/// Two disjoint connected induced subgraphs that are each hyperbolic or
/// higher rank, if any exist.
pub fn find_disjoint_hyperbolic_pair(graph: &CoxeterGraph, bound: usize) -> Result<Option<(VertexSet, VertexSet)>> {
    check_bound(graph, bound)?;
    let n = graph.len();
    let members = connected_subsets(graph, CoxeterClass::is_hyperbolic_or_higher)?;
    if members.len() < 2 {
        return Ok(None);
    }
    let full = ((1u64 << n) - 1) as u32;
    let table = least_subset_table(n, &members);
    Ok(least_pair(&members, &table, |x| full & !x)
        .map(|(x, y)| (VertexSet::from_mask(x as u64), VertexSet::from_mask(y as u64))))
}

/// Whether a connected graph contains two disjoint connected induced
/// subgraphs that are each hyperbolic or higher rank. When it does not, the
/// graph cannot be higher rank.
pub fn corollary4_hypothesis(graph: &CoxeterGraph, bound: usize) -> Result<bool> {
    if graph.is_empty() || connected_components(graph).len() != 1 {
        return Err(Error::Precondition("the disjoint-pair test needs a connected graph".into()));
    }
    Ok(find_disjoint_hyperbolic_pair(graph, bound)?.is_some())
}

/// Searches for separated induced subgraphs that are each hyperbolic.
///
/// Only connected candidates are enumerated: a hyperbolic induced subgraph
/// has exactly one component with a negative direction, and that component
/// is hyperbolic and still separated from the partner. The least pair by
/// total size, then vertex indices, is returned and certified.
pub fn find_separated_hyperbolic_pair(graph: &CoxeterGraph, bound: usize) -> Result<Option<SeparationCertificate>> {
    check_bound(graph, bound)?;
    let n = graph.len();
    let members = connected_subsets(graph, CoxeterClass::is_hyperbolic)?;
    if members.len() < 2 {
        return Ok(None);
    }
    let nbr = graph.neighbor_masks().expect("bounded search graph");
    let full = ((1u64 << n) - 1) as u32;
    let table = least_subset_table(n, &members);
    match least_pair(&members, &table, |x| full & !closed_neighborhood(&nbr, x)) {
        None => Ok(None),
        Some((x, y)) => certify_higher_rank_via_separation(
            graph,
            &VertexSet::from_mask(x as u64),
            &VertexSet::from_mask(y as u64),
        )
        .map(Some),
    }
}
