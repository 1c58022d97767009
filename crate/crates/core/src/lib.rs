//! Planar maps, face augmentation and vertex truncation, Apollonian
//! networks, and circuit double covers.
//!
//! The pieces fit together around one question: which 3-connected planar
//! graphs have exactly one orientable circuit double cover? The answer
//! checked by [`census`] is "precisely the duals of Apollonian networks".
//!
//! * [`planar_map`]: dart-based rotation systems, faces, duals, JSON I/O.
//! * [`surgery`]: augmentation and truncation with their correspondences.
//! * [`apollonian`]: generation, recognition, separating triangles.
//! * [`iso`]: canonical codes and the dual/surgery commuting square.
//! * [`cdc`]: circuits, covers, orientability, enumeration, translation.

pub mod apollonian;
pub mod cdc;
pub mod census;
pub mod cli;
pub mod corpus;
pub mod graph;
pub mod iso;
pub mod planar_map;
pub mod surgery;

use thiserror::Error;

/// Any error raised by this crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Graph(#[from] graph::GraphError),
    #[error(transparent)]
    Map(#[from] planar_map::MapError),
    #[error(transparent)]
    Surgery(#[from] surgery::SurgeryError),
    #[error(transparent)]
    Apollonian(#[from] apollonian::ApollonianError),
    #[error(transparent)]
    Iso(#[from] iso::IsoError),
    #[error(transparent)]
    Cdc(#[from] cdc::CdcError),
    #[error(transparent)]
    Corpus(#[from] corpus::CorpusError),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
