//! Exact Ollivier curvature for edges of finite simple graphs.
//!
//! The Wasserstein distance between the uniform neighbour measures of the two
//! endpoints of an edge is computed along four independent routes that
//! cross-check each other exactly (no floating point anywhere):
//!
//! * a full linear programme over the core neighbourhood of the edge,
//! * reduced per-component linear programmes after classifying the core
//!   neighbourhood into triangle/square/pentagon classes,
//! * a closed-form expression valid when every component of the cycle region
//!   meets the two neighbourhoods in at most two vertices,
//! * brute-force enumeration of integral Lipschitz maps.
//!
//! The crate also ships reference implementations of the Bhattacharya–Mukherjee
//! closed forms for bipartite and girth-5 graphs together with builders for the
//! two counterexample families that refute them, and the Forman curvature for
//! comparison on locally tree-like graphs.

pub mod counterexamples;
pub mod curvature;
pub mod enumerate;
pub mod graph;
pub mod lp;
pub mod partition;
pub mod rational;
pub mod report;
pub mod run;

pub use curvature::{CurvatureResult, LipschitzMap, Method};
pub use graph::{Distance, Graph, VertexId};
pub use lp::{LinearProgramme, LpSolution};
pub use partition::{CorePartition, RComponent, RefinedCounts};
pub use rational::Rational;

use std::fmt;

/// Crate-wide error type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// An input edge joins a vertex to itself.
    SelfLoop { label: String },
    /// A line of an edge-list file could not be parsed.
    EdgeListParse { line: usize, message: String },
    /// The requested vertex pair is not an edge of the graph.
    NotAnEdge { u: String, v: String },
    /// A label is not a vertex of the graph.
    UnknownVertex { label: String },
    /// A Lipschitz map lacks a value required by the transport profit.
    MissingAssignment { label: String },
    /// The linear programme has an empty feasible region.
    Infeasible { constraint: String },
    /// The linear programme is unbounded along the named improving ray.
    Unbounded { ray: String },
    /// Integer data of a scaled linear programme does not fit machine words.
    LpDataTooLarge,
    /// Brute-force enumeration over the given integer box is too expensive.
    TooLargeForBruteForce { assignments: u128, budget: u128 },
    /// The core neighbourhood exceeds the brute-force vertex budget.
    CoreTooLarge { size: usize, budget: usize },
    /// The closed-form expression does not apply to this edge.
    ClosedFormNotApplicable,
    /// Refined square/pentagon counts violate the pairing equalities implied
    /// by closed-form applicability; indicates a classifier bug.
    RefinedCountMismatch { detail: String },
    /// A reference formula was invoked on a graph outside its hypothesis.
    HypothesisViolated { hypothesis: String },
    /// An argument is outside the documented range.
    BadParameter { message: String },
    /// Requested edge filter matched nothing.
    EdgeFilterNotFound { u: String, v: String },
    /// Underlying I/O failure.
    Io { message: String },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::SelfLoop { label } => write!(f, "self-loop at vertex '{label}'"),
            Error::EdgeListParse { line, message } => {
                write!(f, "edge list line {line}: {message}")
            }
            Error::NotAnEdge { u, v } => write!(f, "not an edge: ({u}, {v})"),
            Error::UnknownVertex { label } => write!(f, "unknown vertex '{label}'"),
            Error::MissingAssignment { label } => {
                write!(f, "map lacks an assignment for vertex '{label}'")
            }
            Error::Infeasible { constraint } => write!(f, "infeasible: {constraint}"),
            Error::Unbounded { ray } => write!(f, "unbounded along {ray}"),
            Error::LpDataTooLarge => write!(f, "scaled LP data exceeds machine integers"),
            Error::TooLargeForBruteForce {
                assignments,
                budget,
            } => write!(
                f,
                "too large for brute force: {assignments} assignments exceed budget {budget}"
            ),
            Error::CoreTooLarge { size, budget } => write!(
                f,
                "core neighbourhood too large: {size} free vertices exceed budget {budget}"
            ),
            Error::ClosedFormNotApplicable => write!(f, "closed form not applicable"),
            Error::RefinedCountMismatch { detail } => {
                write!(f, "refined count pairing violated: {detail}")
            }
            Error::HypothesisViolated { hypothesis } => {
                write!(f, "formula hypothesis violated: requires {hypothesis}")
            }
            Error::BadParameter { message } => write!(f, "bad parameter: {message}"),
            Error::EdgeFilterNotFound { u, v } => {
                write!(f, "edge filter matched nothing: ({u}, {v})")
            }
            Error::Io { message } => write!(f, "i/o error: {message}"),
        }
    }
}

impl std::error::Error for Error {}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io {
            message: e.to_string(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
