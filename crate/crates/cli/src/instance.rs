//! Instance sources: an edge-list file or a generator spec such as
//! `toroidal:1`, `product:3:3`, `cycle:8`, `figure1:2`, `complete:5` or
//! `cayley:product 3 3:(1,0),(0,1)`.

use std::path::Path;

use vtc::automorphism::AutomorphismFamily;
use vtc::cayley::{left_translations, CayleySpec};
use vtc::digraph::Digraph;
use vtc::families::{figure1_chain, toroidal_gadget};
use vtc::format::parse_edge_list;

use crate::error::CliError;

pub struct Instance {
    pub name: String,
    pub digraph: Digraph,
    /// Transitivity certificate known from the construction.
    pub translations: Option<AutomorphismFamily>,
}

fn number(s: &str) -> Result<usize, CliError> {
    s.trim().parse().map_err(|_| CliError::Instance(format!("`{s}` is not a number")))
}

fn from_cayley(name: String, spec: CayleySpec) -> Instance {
    Instance { name, digraph: spec.digraph(), translations: Some(left_translations(&spec)) }
}

pub fn load(source: &str) -> Result<Instance, CliError> {
    if Path::new(source).is_file() {
        let text = std::fs::read_to_string(source)?;
        return Ok(Instance { name: source.to_string(), digraph: parse_edge_list(&text)?, translations: None });
    }
    let (kind, rest) = source.split_once(':').unwrap_or((source, ""));
    let args: Vec<&str> = rest.split(':').collect();
    let name = source.to_string();
    match (kind, args.as_slice()) {
        ("cycle", [n]) => {
            let n = number(n)?;
            Ok(from_cayley(name, CayleySpec::cyclic(n, &[1])?))
        }
        ("complete", [n]) => {
            let n = number(n)?;
            let gens: Vec<usize> = (1..n).collect();
            Ok(from_cayley(name, CayleySpec::cyclic(n, &gens)?))
        }
        ("product", [a, b]) => {
            let spec = CayleySpec::product(number(a)?, number(b)?, &[(1, 0), (0, 1)])?;
            Ok(from_cayley(name, spec))
        }
        ("toroidal", [n]) => {
            let (spec, _, _) = toroidal_gadget(number(n)?)?;
            Ok(from_cayley(name, spec))
        }
        ("figure1", [k]) => {
            let (digraph, _) = figure1_chain(number(k)?)?;
            Ok(Instance { name, digraph, translations: None })
        }
        ("cayley", [group, gens]) => Ok(from_cayley(name, CayleySpec::parse_parts(group, gens)?)),
        _ => Err(CliError::Instance(format!("`{source}` is neither a file nor a known generator"))),
    }
}
