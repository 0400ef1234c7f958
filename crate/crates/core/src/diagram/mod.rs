//! Planar diagram codes, orientation, checkerboard coloring and Tait graphs.

mod construct;
mod ops;
mod pd;
mod tait;

pub use construct::{braid_closure, pretzel, Corner, PortGraph};
pub use ops::{resolve_crossing, Smoothing};
pub use pd::{parse_pd, LinkDiagram, Sign};
pub use tait::{build_tait, Color, ColorSide, Face, TaitGraph, TaitStructure};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("malformed diagram code: {0}")]
    MalformedCode(String),
    #[error("arc {arc} appears {count} times (expected 2)")]
    ArcMultiplicity { arc: u32, count: usize },
    #[error("diagram is disconnected")]
    Disconnected,
    #[error("checkerboard coloring failed")]
    ColoringFailure,
    #[error("no arc labelled {0}")]
    UnknownArc(u32),
}
