//! Small Cayley digraphs used by the verification suites.

use crate::cayley::CayleySpec;

/// Named instances, all of order at most 18.
pub fn small_cayley() -> Vec<(String, CayleySpec)> {
    const ENTRIES: &[(&str, &str)] = &[
        ("cyclic 5", "1"),
        ("cyclic 6", "1,2"),
        ("cyclic 8", "1,3"),
        ("cyclic 9", "1,3"),
        ("cyclic 12", "1,4"),
        ("cyclic 13", "1,5"),
        ("product 2 3", "(1,0),(0,1)"),
        ("product 3 3", "(1,0),(0,1)"),
        ("product 6 2", "(1,0),(5,1)"),
        ("product 3 4", "(1,0),(0,1)"),
        ("product 4 4", "(1,0),(0,1)"),
        ("product 3 5", "(1,0),(0,1)"),
        ("product 3 6", "(1,0),(0,1)"),
        ("dihedral 3", "(1,0),(0,1)"),
        ("dihedral 4", "(1,0),(0,1)"),
        ("dihedral 5", "(0,1),(1,1)"),
        ("dihedral 6", "(1,0),(0,1)"),
        ("dihedral 9", "(1,0),(0,1)"),
    ];
    ENTRIES
        .iter()
        .map(|&(g, s)| {
            let spec = CayleySpec::parse_parts(g, s).expect("corpus entries are valid");
            (format!("Cay({g}; {s})"), spec)
        })
        .collect()
}
