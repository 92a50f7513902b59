pub mod animate;
pub mod attr;
pub mod backend;
pub mod cli;
pub mod dot;
pub mod error;
pub mod factbase;
pub mod ingest;
pub mod parse;
pub mod pipeline;
mod quantize;
pub mod solver;
pub mod svg;
mod template;
pub mod term;
