//! Map files, the polynomial expression parser and JSON reports.

mod mapfile;
mod parse;
mod report;

pub use mapfile::{parse_center, parse_pairs, parse_scalar, MapFile, MapFileError, SCHEMA_VERSION};
pub use parse::{parse_polynomial, ParseError};
pub use report::{
    analyze_any, analyze_map, decimal, ClassificationOut, ClosureOut, ComplexOut, LemmaOut, PointOut, Report, RungOut,
    TransferOut, WitnessOut,
};
