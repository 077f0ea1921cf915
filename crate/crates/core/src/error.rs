use thiserror::Error;

use crate::planar::Vertex;

/// Errors raised while building, tracing or editing an embedded graph.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("unknown vertex {0}")]
    UnknownVertex(Vertex),
    #[error("vertex {0} has a self-loop")]
    SelfLoop(Vertex),
    #[error("vertex {vertex} lists neighbor {neighbor} more than once")]
    RepeatedNeighbor { vertex: Vertex, neighbor: Vertex },
    #[error("rotation is not symmetric: {from} lists {to} but not conversely")]
    Asymmetric { from: Vertex, to: Vertex },
    #[error("graph is not connected")]
    NotConnected,
    #[error("rotation system is not a planar embedding: n - m + f = {n} - {m} + {f} != 2")]
    EmbeddingInvalid { n: usize, m: usize, f: usize },
    #[error("edge {0}-{1} does not exist")]
    MissingEdge(Vertex, Vertex),
    #[error("cannot add edge {0}-{1}: endpoints share no face")]
    SurgeryNotPlanar(Vertex, Vertex),
    #[error("surgery disconnects the graph")]
    SurgeryDisconnects,
    #[error("vertex {vertex} would reach degree {degree} above the cap {cap}")]
    DegreeBudgetExceeded {
        vertex: Vertex,
        degree: usize,
        cap: usize,
    },
    #[error("vertex {0} is not a cut vertex")]
    NotACutVertex(Vertex),
}
