//! File formats, random generation and the gap hunter.

pub mod generate;
pub mod hunt;
pub mod io;

pub use generate::{gen_planar, gen_with, GenOptions, GenerationFailed};
pub use hunt::{hunt, hunt_trial, hunt_with, HuntObserver, HuntOptions, HuntReport};
pub use io::{parse_coloring, parse_graph, write_coloring, write_graph, ParseError};
