//! JSON report documents. Field order is fixed by the struct definitions so
//! identical inputs serialize to identical bytes.

use serde::Serialize;

use crate::decompose::{DecompositionCertificate, PartCertificate, SeparationCertificate};
use crate::graph::{canonical_form, CoxeterGraph, VertexSet};
use crate::spectral::{Classification, CoxeterClass};

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    pub input: InputEcho,
    pub classification: ClassificationReport,
    pub certificate: Option<Certificate>,
}

#[derive(Debug, Clone, Serialize)]
pub struct InputEcho {
    pub canonical_form: String,
    pub n: usize,
    pub vertices: Vec<String>,
    pub edges: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassificationReport {
    pub class: CoxeterClass,
    pub p: usize,
    pub q: usize,
    pub r: usize,
    pub lambda1: f64,
    pub lambda2: Option<f64>,
    pub tolerance: f64,
    pub exact: bool,
    pub approximate: bool,
}

impl From<&Classification> for ClassificationReport {
    fn from(c: &Classification) -> Self {
        ClassificationReport {
            class: c.class,
            p: c.signature.p,
            q: c.signature.q,
            r: c.signature.r,
            lambda1: c.lambda1,
            lambda2: c.lambda2,
            tolerance: c.tolerance,
            exact: c.exact,
            approximate: c.approximate,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    Decomposition(DecompositionReport),
    Separation(SeparationReport),
}

#[derive(Debug, Clone, Serialize)]
pub struct VertexValue {
    pub vertex: String,
    pub value: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct PartReport {
    pub vertices: Vec<String>,
    pub label: Vec<VertexValue>,
    pub residuals: Vec<VertexValue>,
    pub lambda_max: f64,
    pub classification: ClassificationReport,
}

#[derive(Debug, Clone, Serialize)]
pub struct DecompositionReport {
    pub lambda2: f64,
    pub lambda2_multiplicity: usize,
    pub tolerance: f64,
    pub zero_tolerance: f64,
    pub zero_vertices: Vec<String>,
    pub second_eigenvector: Vec<VertexValue>,
    pub positive: PartReport,
    pub negative: PartReport,
}

#[derive(Debug, Clone, Serialize)]
pub struct SeparationReport {
    pub first: Vec<String>,
    pub second: Vec<String>,
    pub first_classification: ClassificationReport,
    pub second_classification: ClassificationReport,
    pub separated: bool,
    pub conclusion: CoxeterClass,
}

pub fn names(graph: &CoxeterGraph, set: &VertexSet) -> Vec<String> {
    set.iter().map(|i| graph.vertex_name(i).to_string()).collect()
}

fn values(graph: &CoxeterGraph, set: &VertexSet, xs: &[f64]) -> Vec<VertexValue> {
    set.iter()
        .zip(xs)
        .map(|(i, &value)| VertexValue {
            vertex: graph.vertex_name(i).to_string(),
            value,
        })
        .collect()
}

fn part_report(graph: &CoxeterGraph, part: &PartCertificate) -> PartReport {
    PartReport {
        vertices: names(graph, &part.vertices),
        label: values(graph, &part.vertices, part.label.values()),
        residuals: values(graph, &part.vertices, &part.residuals),
        lambda_max: part.lambda_max,
        classification: (&part.classification).into(),
    }
}

pub fn decomposition_report(graph: &CoxeterGraph, cert: &DecompositionCertificate) -> DecompositionReport {
    DecompositionReport {
        lambda2: cert.lambda2,
        lambda2_multiplicity: cert.split.multiplicity,
        tolerance: cert.tolerance,
        zero_tolerance: cert.split.zero_tolerance,
        zero_vertices: names(graph, &cert.split.zero),
        second_eigenvector: values(graph, cert.split.vector.domain(), cert.split.vector.values()),
        positive: part_report(graph, &cert.positive),
        negative: part_report(graph, &cert.negative),
    }
}

pub fn separation_report(graph: &CoxeterGraph, cert: &SeparationCertificate) -> SeparationReport {
    SeparationReport {
        first: names(graph, &cert.first),
        second: names(graph, &cert.second),
        first_classification: (&cert.first_class).into(),
        second_classification: (&cert.second_class).into(),
        separated: cert.separated,
        conclusion: cert.whole.class,
    }
}

pub fn report(command: &str, graph: &CoxeterGraph, classification: &Classification, certificate: Option<Certificate>) -> Report {
    Report {
        command: command.to_string(),
        input: InputEcho {
            canonical_form: canonical_form(graph).to_hex(),
            n: graph.len(),
            vertices: graph.vertices().to_vec(),
            edges: graph.edge_count(),
        },
        classification: classification.into(),
        certificate,
    }
}

pub fn to_json(report: &Report) -> String {
    serde_json::to_string_pretty(report).expect("reports contain only finite numbers and strings")
}
