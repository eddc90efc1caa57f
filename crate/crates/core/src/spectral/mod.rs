//! Form and adjacency matrices, spectra, signatures and the five-way
//! classification of Coxeter graphs.
//!
//! Two routes decide a signature. When every bond label is 3 or infinity the
//! form matrix is integral and its inertia is computed exactly; otherwise the
//! eigenvalues of the adjacency matrix are compared against 2 with a
//! tolerance band, and results touching the band are marked approximate.

use std::fmt;

use nalgebra::DMatrix;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{connected_components, CoxeterGraph, VertexSet};

mod eigen;
mod inertia;

pub use eigen::{reconstruction_bound, spectrum, symmetric_spectrum, Spectrum};
pub use inertia::exact_inertia;

/// Scale of the "equals 2" band. The default is `1e-8 * n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Tolerance {
    PerVertex(f64),
    Absolute(f64),
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance::PerVertex(1e-8)
    }
}

impl Tolerance {
    pub fn resolve(self, n: usize) -> f64 {
        match self {
            Tolerance::PerVertex(s) => s * n.max(1) as f64,
            Tolerance::Absolute(t) => t,
        }
    }
}

/// The Coxeter form matrix `C_ij = -2 cos(pi / m_ij)`.
#[derive(Debug, Clone, PartialEq)]
pub struct FormMatrix(DMatrix<f64>);

/// The generalized adjacency matrix `A = 2I - C`.
#[derive(Debug, Clone, PartialEq)]
pub struct AdjacencyMatrix(DMatrix<f64>);

fn check_symmetric(m: &DMatrix<f64>) -> Result<()> {
    if !m.is_square() {
        return Err(Error::Domain(format!("matrix is {}x{}, not square", m.nrows(), m.ncols())));
    }
    for i in 0..m.nrows() {
        for j in (i + 1)..m.ncols() {
            if m[(i, j)] != m[(j, i)] {
                return Err(Error::Domain(format!("matrix is not symmetric at ({i}, {j})")));
            }
        }
    }
    Ok(())
}

fn is_integral(m: &DMatrix<f64>) -> bool {
    m.iter().all(|x| x.fract() == 0.0)
}

impl FormMatrix {
    pub fn from_matrix(m: DMatrix<f64>) -> Result<Self> {
        check_symmetric(&m)?;
        Ok(FormMatrix(m))
    }

    pub fn as_matrix(&self) -> &DMatrix<f64> {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn to_adjacency(&self) -> AdjacencyMatrix {
        AdjacencyMatrix(DMatrix::identity(self.dim(), self.dim()) * 2.0 - &self.0)
    }

    pub fn is_integral(&self) -> bool {
        is_integral(&self.0)
    }
}

impl AdjacencyMatrix {
    pub fn from_matrix(m: DMatrix<f64>) -> Result<Self> {
        check_symmetric(&m)?;
        Ok(AdjacencyMatrix(m))
    }

    pub fn as_matrix(&self) -> &DMatrix<f64> {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn to_form(&self) -> FormMatrix {
        FormMatrix(DMatrix::identity(self.dim(), self.dim()) * 2.0 - &self.0)
    }

    pub fn is_integral(&self) -> bool {
        is_integral(&self.0)
    }

    pub fn max_abs(&self) -> f64 {
        self.0.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    /// Principal submatrix on the given rows, in the given order.
    pub fn principal(&self, rows: &[usize]) -> AdjacencyMatrix {
        AdjacencyMatrix(DMatrix::from_fn(rows.len(), rows.len(), |a, b| self.0[(rows[a], rows[b])]))
    }
}

fn require_nonempty(graph: &CoxeterGraph) -> Result<()> {
    if graph.is_empty() {
        return Err(Error::Domain("the empty graph has no form matrix".into()));
    }
    Ok(())
}

pub fn form_matrix(graph: &CoxeterGraph) -> Result<FormMatrix> {
    Ok(generalized_adjacency(graph)?.to_form())
}

pub fn generalized_adjacency(graph: &CoxeterGraph) -> Result<AdjacencyMatrix> {
    require_nonempty(graph)?;
    let n = graph.len();
    let mut a = DMatrix::zeros(n, n);
    for (i, j, m) in graph.edges() {
        a[(i, j)] = m.weight();
        a[(j, i)] = m.weight();
    }
    Ok(AdjacencyMatrix(a))
}

/// Inertia `(p, q, r)` of the form matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Signature {
    pub p: usize,
    pub q: usize,
    pub r: usize,
    /// Computed in exact arithmetic rather than from floating eigenvalues.
    pub exact: bool,
}

impl Signature {
    pub fn counts(&self) -> (usize, usize, usize) {
        (self.p, self.q, self.r)
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.p, self.q, self.r)
    }
}

/// Signature of `C`, exact when `C` is integral.
pub fn inertia(c: &FormMatrix) -> Result<Signature> {
    inertia_with_tolerance(c, Tolerance::default())
}

pub fn inertia_with_tolerance(c: &FormMatrix, tol: Tolerance) -> Result<Signature> {
    if c.is_integral() {
        return Ok(exact_signature(c));
    }
    let spec = spectrum(&c.to_adjacency(), tol.resolve(c.dim()))?;
    Ok(float_signature(&spec))
}

/// Exact route; the caller guarantees `c` is integral.
pub fn exact_signature(c: &FormMatrix) -> Signature {
    let n = c.dim();
    let entries: Vec<i64> = (0..n * n).map(|k| c.0[(k / n, k % n)] as i64).collect();
    let (p, q, r) = exact_inertia(n, &entries);
    Signature { p, q, r, exact: true }
}

/// Floating route: C-eigenvalue `2 - lambda` with a zero band of the
/// spectrum's tolerance.
pub fn float_signature(spec: &Spectrum) -> Signature {
    let tau = spec.tolerance();
    let mut sig = Signature {
        p: 0,
        q: 0,
        r: 0,
        exact: false,
    };
    for &lambda in spec.values() {
        if (lambda - 2.0).abs() <= tau {
            sig.r += 1;
        } else if lambda < 2.0 {
            sig.p += 1;
        } else {
            sig.q += 1;
        }
    }
    sig
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum CoxeterClass {
    Spherical,
    Affine,
    StronglyHyperbolic,
    WeaklyHyperbolic,
    HigherRank,
}

impl CoxeterClass {
    pub const ALL: [CoxeterClass; 5] = [
        CoxeterClass::Spherical,
        CoxeterClass::Affine,
        CoxeterClass::StronglyHyperbolic,
        CoxeterClass::WeaklyHyperbolic,
        CoxeterClass::HigherRank,
    ];

    pub fn from_signature(sig: &Signature) -> Self {
        match (sig.q, sig.r) {
            (0, 0) => CoxeterClass::Spherical,
            (0, _) => CoxeterClass::Affine,
            (1, 0) => CoxeterClass::StronglyHyperbolic,
            (1, _) => CoxeterClass::WeaklyHyperbolic,
            _ => CoxeterClass::HigherRank,
        }
    }

    /// Classification from the two largest adjacency eigenvalues, with
    /// `|lambda - 2| <= tau` read as equality.
    pub fn from_leading_eigenvalues(lambda1: f64, lambda2: Option<f64>, tau: f64) -> Self {
        let equals_two = |x: f64| (x - 2.0).abs() <= tau;
        if lambda1 <= 2.0 + tau || lambda1.is_nan() {
            return if equals_two(lambda1) {
                CoxeterClass::Affine
            } else {
                CoxeterClass::Spherical
            };
        }
        match lambda2 {
            Some(l2) if equals_two(l2) => CoxeterClass::WeaklyHyperbolic,
            Some(l2) if l2 > 2.0 => CoxeterClass::HigherRank,
            _ => CoxeterClass::StronglyHyperbolic,
        }
    }

    pub fn is_hyperbolic(self) -> bool {
        matches!(self, CoxeterClass::StronglyHyperbolic | CoxeterClass::WeaklyHyperbolic)
    }

    pub fn is_hyperbolic_or_higher(self) -> bool {
        self.is_hyperbolic() || self == CoxeterClass::HigherRank
    }

    pub fn is_spherical_or_affine(self) -> bool {
        matches!(self, CoxeterClass::Spherical | CoxeterClass::Affine)
    }

    pub fn name(self) -> &'static str {
        match self {
            CoxeterClass::Spherical => "Spherical",
            CoxeterClass::Affine => "Affine",
            CoxeterClass::StronglyHyperbolic => "StronglyHyperbolic",
            CoxeterClass::WeaklyHyperbolic => "WeaklyHyperbolic",
            CoxeterClass::HigherRank => "HigherRank",
        }
    }
}

impl fmt::Display for CoxeterClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Result of [`classify`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Classification {
    pub class: CoxeterClass,
    pub signature: Signature,
    pub lambda1: f64,
    pub lambda2: Option<f64>,
    pub tolerance: f64,
    /// Class decided exactly (integral form matrix).
    pub exact: bool,
    /// Float route with some eigenvalue inside the band around 2.
    pub approximate: bool,
}

pub fn classify(graph: &CoxeterGraph, tol: Tolerance) -> Result<Classification> {
    classify_adjacency(&generalized_adjacency(graph)?, tol)
}

pub fn classify_adjacency(a: &AdjacencyMatrix, tol: Tolerance) -> Result<Classification> {
    let n = a.dim();
    if n == 0 {
        return Err(Error::Domain("cannot classify the empty graph".into()));
    }
    let tau = tol.resolve(n);
    let spec = spectrum(a, tau)?;
    let lambda1 = spec.values()[0];
    let lambda2 = spec.values().get(1).copied();
    let (class, signature, approximate) = if a.is_integral() {
        let sig = exact_signature(&a.to_form());
        (CoxeterClass::from_signature(&sig), sig, false)
    } else {
        let sig = float_signature(&spec);
        let near_two = spec.values().iter().any(|l| (l - 2.0).abs() <= tau);
        (CoxeterClass::from_leading_eigenvalues(lambda1, lambda2, tau), sig, near_two)
    };
    Ok(Classification {
        class,
        signature,
        lambda1,
        lambda2,
        tolerance: tau,
        exact: signature.exact,
        approximate,
    })
}

/// A real value on each vertex of a domain, aligned with the domain's
/// sorted indices.
#[derive(Debug, Clone, PartialEq)]
pub struct Label {
    domain: VertexSet,
    values: Vec<f64>,
}

impl Label {
    pub fn new(domain: VertexSet, values: Vec<f64>) -> Result<Self> {
        if domain.len() != values.len() {
            return Err(Error::Domain(format!(
                "label has {} values for {} vertices",
                values.len(),
                domain.len()
            )));
        }
        Ok(Label { domain, values })
    }

    pub fn domain(&self) -> &VertexSet {
        &self.domain
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn get(&self, vertex: usize) -> Option<f64> {
        self.domain
            .indices()
            .binary_search(&vertex)
            .ok()
            .map(|k| self.values[k])
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.domain.iter().zip(self.values.iter().copied())
    }
}

/// The inherited label on `x`.
pub fn restrict_label(label: &Label, x: &VertexSet) -> Result<Label> {
    let values = x
        .iter()
        .map(|i| {
            label
                .get(i)
                .ok_or_else(|| Error::Domain(format!("vertex {i} is outside the label's domain")))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Label {
        domain: x.clone(),
        values,
    })
}

/// Perron root and positive Perron vector of a connected graph.
#[derive(Debug, Clone, PartialEq)]
pub struct PerronData {
    pub lambda1: f64,
    pub vector: Label,
    /// `lambda1 - lambda2`, or infinity for a single vertex.
    pub gap: f64,
}

pub fn perron_data(graph: &CoxeterGraph, tol: Tolerance) -> Result<PerronData> {
    require_nonempty(graph)?;
    if connected_components(graph).len() != 1 {
        return Err(Error::Precondition(
            "Perron data needs a connected graph (irreducible adjacency matrix)".into(),
        ));
    }
    let n = graph.len();
    let tau = tol.resolve(n);
    let spec = spectrum(&generalized_adjacency(graph)?, tau)?;
    let lambda1 = spec.values()[0];
    let gap = spec.values().get(1).map_or(f64::INFINITY, |l2| lambda1 - l2);
    if gap <= tau {
        return Err(Error::InvariantBreach(format!(
            "Perron root {lambda1} is not separated from the next eigenvalue (gap {gap})"
        )));
    }
    let v = spec.vector(0);
    if let Some(k) = v.iter().position(|&x| x <= 0.0) {
        return Err(Error::InvariantBreach(format!(
            "Perron vector coordinate {k} is {} (expected positive)",
            v[k]
        )));
    }
    Ok(PerronData {
        lambda1,
        vector: Label::new(graph.all_vertices(), v)?,
        gap,
    })
}
