//! Text grammar, JSON I/O, problem files and the CLI.

mod cli;
mod json;
mod parse;
mod problem;

pub use cli::{run_cli, CliError};
pub use json::{
    components_document, operator_document, points_document, to_json_string, write_json,
    AtPointDoc, AtPointResult, CoeffJson, ComponentsDoc, ErrorDoc, OperatorDoc, PointJson,
    PointsDoc, RingDoc,
};
pub use parse::{parse_operator, parse_polynomial};
pub use problem::ProblemFile;
