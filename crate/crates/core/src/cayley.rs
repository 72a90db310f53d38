//! Cayley digraphs `Cay(Γ, S)`: arc `x -> x·s` for every `s ∈ S`.
//!
//! Text format for a spec: line 1 names the group (`cyclic n`,
//! `product n1 n2` or `dihedral n`), line 2 lists generators. Cyclic
//! generators are integers; product and dihedral generators are pairs
//! `(a,b)` (for dihedral, `(k,f)` is `r^k s^f`). Separators are commas or
//! whitespace.

use std::fmt;

use thiserror::Error;

use crate::automorphism::AutomorphismFamily;
use crate::digraph::Digraph;
use crate::group::{Element, GroupError, GroupTable};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CayleyError {
    #[error("generator {0} is not a group element")]
    NotAnElement(Element),
    #[error("identity in the generator set would create self-loops")]
    IdentityGenerator,
    #[error("generators {0:?} do not generate the group")]
    NotGenerating(Vec<Element>),
    #[error("empty generator set")]
    NoGenerators,
    #[error("cannot parse Cayley spec: {0}")]
    Parse(String),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// Which named family a group table came from; used for parsing and printing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroupKind {
    Cyclic(usize),
    Product(usize, usize),
    Dihedral(usize),
    Table,
}

impl GroupKind {
    pub fn build(self) -> Result<GroupTable, CayleyError> {
        Ok(match self {
            GroupKind::Cyclic(n) => GroupTable::cyclic(n)?,
            GroupKind::Product(a, b) => {
                GroupTable::direct_product(&GroupTable::cyclic(a)?, &GroupTable::cyclic(b)?)
            }
            GroupKind::Dihedral(n) => GroupTable::dihedral(n)?,
            GroupKind::Table => return Err(CayleyError::Parse("raw tables have no text name".into())),
        })
    }

    fn format_element(self, x: Element) -> String {
        match self {
            GroupKind::Cyclic(_) | GroupKind::Table => x.to_string(),
            GroupKind::Product(_, b) => format!("({},{})", x / b, x % b),
            GroupKind::Dihedral(_) => format!("({},{})", x / 2, x % 2),
        }
    }

    fn parse_element(self, token: &str) -> Result<Element, CayleyError> {
        let bad = || CayleyError::Parse(format!("bad generator `{token}`"));
        let num = |s: &str| s.trim().parse::<usize>().map_err(|_| bad());
        match self {
            GroupKind::Cyclic(n) => {
                let k = num(token)?;
                if k >= n {
                    return Err(CayleyError::NotAnElement(k));
                }
                Ok(k)
            }
            GroupKind::Product(..) | GroupKind::Dihedral(_) if token.starts_with('(') => {
                let (n1, n2) = match self {
                    GroupKind::Product(n1, n2) => (n1, n2),
                    GroupKind::Dihedral(n) => (n, 2),
                    _ => unreachable!(),
                };
                let inner = token
                    .strip_prefix('(')
                    .and_then(|t| t.strip_suffix(')'))
                    .ok_or_else(bad)?;
                let (a, b) = inner.split_once(',').ok_or_else(bad)?;
                let (a, b) = (num(a)?, num(b)?);
                if a >= n1 || b >= n2 {
                    return Err(CayleyError::Parse(format!("`{token}` out of range")));
                }
                Ok(a * n2 + b)
            }
            _ => Err(bad()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CayleySpec {
    group: GroupTable,
    kind: GroupKind,
    generators: Vec<Element>,
}

impl CayleySpec {
    pub fn new(group: GroupTable, generators: Vec<Element>) -> Result<Self, CayleyError> {
        Self::with_kind(group, GroupKind::Table, generators)
    }

    pub fn with_kind(
        group: GroupTable,
        kind: GroupKind,
        mut generators: Vec<Element>,
    ) -> Result<Self, CayleyError> {
        generators.sort_unstable();
        generators.dedup();
        if generators.is_empty() {
            return Err(CayleyError::NoGenerators);
        }
        if let Some(&g) = generators.iter().find(|&&g| g >= group.order()) {
            return Err(CayleyError::NotAnElement(g));
        }
        if generators.contains(&group.identity()) {
            return Err(CayleyError::IdentityGenerator);
        }
        if !group.generates(&generators) {
            return Err(CayleyError::NotGenerating(generators));
        }
        Ok(CayleySpec { group, kind, generators })
    }

    pub fn cyclic(n: usize, generators: &[Element]) -> Result<Self, CayleyError> {
        let kind = GroupKind::Cyclic(n);
        Self::with_kind(kind.build()?, kind, generators.to_vec())
    }

    /// `Z_{n1} x Z_{n2}` with generators given as pairs.
    pub fn product(n1: usize, n2: usize, generators: &[(usize, usize)]) -> Result<Self, CayleyError> {
        let kind = GroupKind::Product(n1, n2);
        let ids = generators
            .iter()
            .map(|&(a, b)| {
                if a < n1 && b < n2 {
                    Ok(a * n2 + b)
                } else {
                    Err(CayleyError::Parse(format!("({a},{b}) out of range")))
                }
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::with_kind(kind.build()?, kind, ids)
    }

    /// Dihedral group of order `2n`; generator `(k, f)` is `r^k s^f`.
    pub fn dihedral(n: usize, generators: &[(usize, usize)]) -> Result<Self, CayleyError> {
        let kind = GroupKind::Dihedral(n);
        let ids = generators.iter().map(|&(k, f)| 2 * k + f).collect();
        Self::with_kind(kind.build()?, kind, ids)
    }

    pub fn parse(text: &str) -> Result<Self, CayleyError> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let head = lines.next().ok_or_else(|| CayleyError::Parse("missing group line".into()))?;
        let gens = lines.next().unwrap_or("");
        Self::parse_parts(head, gens)
    }

    /// Parses the two halves separately (`"product 2 3"`, `"(1,0),(0,1)"`).
    pub fn parse_parts(group: &str, generators: &str) -> Result<Self, CayleyError> {
        let words: Vec<&str> = group.split_whitespace().collect();
        let int = |s: &str| {
            s.parse::<usize>()
                .map_err(|_| CayleyError::Parse(format!("`{s}` is not a size")))
        };
        let kind = match words.as_slice() {
            ["cyclic", n] => GroupKind::Cyclic(int(n)?),
            ["product", a, b] => GroupKind::Product(int(a)?, int(b)?),
            ["dihedral", n] => GroupKind::Dihedral(int(n)?),
            _ => return Err(CayleyError::Parse(format!("unknown group `{group}`"))),
        };
        let ids = split_generators(generators)
            .into_iter()
            .map(|t| kind.parse_element(&t))
            .collect::<Result<Vec<_>, _>>()?;
        Self::with_kind(kind.build()?, kind, ids)
    }

    pub fn group(&self) -> &GroupTable {
        &self.group
    }

    pub fn kind(&self) -> GroupKind {
        self.kind
    }

    pub fn generators(&self) -> &[Element] {
        &self.generators
    }

    pub fn digraph(&self) -> Digraph {
        cayley_digraph(self)
    }
}

impl fmt::Display for CayleySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            GroupKind::Cyclic(n) => writeln!(f, "cyclic {n}")?,
            GroupKind::Product(a, b) => writeln!(f, "product {a} {b}")?,
            GroupKind::Dihedral(n) => writeln!(f, "dihedral {n}")?,
            GroupKind::Table => writeln!(f, "table {}", self.group.order())?,
        }
        let gens: Vec<String> = self
            .generators
            .iter()
            .map(|&g| self.kind.format_element(g))
            .collect();
        writeln!(f, "{}", gens.join(","))
    }
}

/// Splits on commas and whitespace that are not inside parentheses.
fn split_generators(s: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut depth = 0usize;
    for ch in s.chars() {
        match ch {
            '(' => {
                depth += 1;
                cur.push(ch);
            }
            ')' => {
                depth = depth.saturating_sub(1);
                cur.push(ch);
            }
            ',' | ' ' | '\t' if depth == 0 => {
                if !cur.is_empty() {
                    out.push(std::mem::take(&mut cur));
                }
            }
            c if c.is_whitespace() => {}
            c => cur.push(c),
        }
    }
    if !cur.is_empty() {
        out.push(cur);
    }
    out
}

/// `Cay(Γ, S)` on vertex set `Γ` (vertex id = element id).
pub fn cayley_digraph(spec: &CayleySpec) -> Digraph {
    let g = &spec.group;
    Digraph::from_out_lists(
        (0..g.order())
            .map(|x| spec.generators.iter().map(|&s| g.mul(x, s)).collect())
            .collect(),
    )
}

/// Left multiplications `x -> g·x`, one per group element in id order.
pub fn left_translations(spec: &CayleySpec) -> AutomorphismFamily {
    let g = &spec.group;
    AutomorphismFamily::from_trusted(
        (0..g.order())
            .map(|a| (0..g.order()).map(|x| g.mul(a, x)).collect())
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automorphism::{compose, identity, is_automorphism};

    #[test]
    fn single_generator_gives_directed_cycle() {
        for n in 2..8 {
            let spec = CayleySpec::cyclic(n, &[1]).unwrap();
            assert_eq!(spec.digraph(), Digraph::directed_cycle(n));
        }
    }

    #[test]
    fn product_matches_cartesian_product() {
        let spec = CayleySpec::product(2, 3, &[(1, 0), (0, 1)]).unwrap();
        let c = Digraph::directed_cycle(2).cartesian_product(&Digraph::directed_cycle(3));
        assert_eq!(spec.digraph(), c);
    }

    #[test]
    fn rejects_bad_generators() {
        assert_eq!(
            CayleySpec::cyclic(4, &[2]),
            Err(CayleyError::NotGenerating(vec![2]))
        );
        assert_eq!(CayleySpec::cyclic(4, &[0, 1]), Err(CayleyError::IdentityGenerator));
        assert_eq!(CayleySpec::cyclic(4, &[]), Err(CayleyError::NoGenerators));
        assert!(CayleySpec::cyclic(4, &[7]).is_err());
    }

    #[test]
    fn translations_certify_transitivity() {
        let spec = CayleySpec::cyclic(3, &[1]).unwrap();
        let fam = left_translations(&spec);
        // rotation by 1 maps arc (0,1) to (1,2)
        let rot = &fam.members()[1];
        assert_eq!((rot[0], rot[1]), (1, 2));

        let spec = CayleySpec::product(2, 3, &[(1, 0), (0, 1)]).unwrap();
        let fam = left_translations(&spec);
        let d = spec.digraph();
        assert_eq!(fam.len(), 6);
        assert!(fam.maps_every_pair());
        assert!(fam.members().iter().all(|p| is_automorphism(&d, p)));
        let g = spec.group();
        for a in 0..g.order() {
            let back = compose(&fam.members()[g.inv(a)], &fam.members()[a]);
            assert_eq!(back, identity(6));
        }
    }

    #[test]
    fn text_format() {
        let spec = CayleySpec::parse("product 2 3\n(1,0),(0,1)\n").unwrap();
        assert_eq!(spec, CayleySpec::product(2, 3, &[(1, 0), (0, 1)]).unwrap());
        assert_eq!(spec.to_string(), "product 2 3\n(0,1),(1,0)\n");
        assert_eq!(CayleySpec::parse(&spec.to_string()).unwrap(), spec);
        let c = CayleySpec::parse("cyclic 8\n1 3").unwrap();
        assert_eq!(c.generators(), &[1, 3]);
        let d = CayleySpec::parse_parts("dihedral 4", "(1,0) (0,1)").unwrap();
        assert_eq!(d.digraph().regularity(), Some(2));
        assert!(CayleySpec::parse("torus 3\n1").is_err());
        assert!(CayleySpec::parse("cyclic 3\n(1,0)").is_err());
    }
}
