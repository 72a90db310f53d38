//! Vertex expansion: `α(D) = min min(|N⁺(U)|, |N⁻(U)|) / |U|` over all
//! `U` with `1 <= |U| <= 2n/3`.

use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::digraph::{Digraph, Distance, VertexSet};

/// Largest order accepted by the exhaustive subset scan.
pub const EXPANSION_EXACT_MAX_ORDER: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExpansionError {
    #[error("exact expansion needs 2 <= n <= {EXPANSION_EXACT_MAX_ORDER}, got n = {0}")]
    OrderOutOfRange(usize),
    #[error("digraph is not strongly connected")]
    NotStronglyConnected,
}

pub(crate) fn serialize_ratio<S: Serializer>(r: &Ratio<u64>, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(&format_args!("{}/{}", r.numer(), r.denom()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExpansionReport {
    #[serde(serialize_with = "serialize_ratio")]
    pub alpha_lower: Ratio<u64>,
    pub witness_set: Option<VertexSet>,
    /// Exhaustive when set; otherwise `alpha_lower` only refutes larger values.
    pub exact: bool,
    pub sets_examined: u64,
}

fn masks(d: &Digraph, inward: bool) -> Vec<u32> {
    (0..d.vertex_count())
        .map(|v| {
            let nb = if inward { d.in_neighbors(v) } else { d.out_neighbors(v) };
            nb.iter().fold(0u32, |m, &w| m | 1 << w)
        })
        .collect()
}

/// Smaller of the two external neighbourhood sizes of `mask`.
fn boundary(out: &[u32], inn: &[u32], mask: u32) -> u32 {
    let (mut o, mut i) = (0u32, 0u32);
    let mut rest = mask;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        o |= out[v];
        i |= inn[v];
    }
    (o & !mask).count_ones().min((i & !mask).count_ones())
}

/// Whether `a` precedes `b` as sorted member lists.
fn lex_less(a: u32, b: u32) -> bool {
    let diff = a ^ b;
    if diff == 0 {
        return false;
    }
    let low = diff.trailing_zeros();
    let above = |m: u32| low < 31 && m >> (low + 1) != 0;
    // a proper prefix sorts first
    if a >> low & 1 == 1 {
        above(b)
    } else {
        !above(a)
    }
}

/// Exhaustive expansion over every admissible subset; ties broken by the
/// lexicographically smallest member list.
pub fn expansion_exact(d: &Digraph) -> Result<ExpansionReport, ExpansionError> {
    let n = d.vertex_count();
    if !(2..=EXPANSION_EXACT_MAX_ORDER).contains(&n) {
        return Err(ExpansionError::OrderOutOfRange(n));
    }
    let out = masks(d, false);
    let inn = masks(d, true);
    let max_size = (2 * n / 3) as u32;
    let mut best: Option<(u32, u32, u32)> = None; // (boundary, size, mask)
    let mut examined = 0u64;
    for mask in 1u32..(1 << n) {
        let size = mask.count_ones();
        if size > max_size {
            continue;
        }
        examined += 1;
        let b = boundary(&out, &inn, mask);
        let better = match best {
            None => true,
            Some((bb, bs, bm)) => {
                let (lhs, rhs) = (b as u64 * bs as u64, bb as u64 * size as u64);
                lhs < rhs || (lhs == rhs && lex_less(mask, bm))
            }
        };
        if better {
            best = Some((b, size, mask));
        }
    }
    let (b, size, mask) = best.expect("n >= 2 gives a nonempty admissible set");
    Ok(ExpansionReport {
        alpha_lower: Ratio::new(b as u64, size as u64),
        witness_set: Some(VertexSet::from_mask(mask as u64)),
        exact: true,
        sets_examined: examined,
    })
}

/// Random-subset estimate for larger digraphs: the minimum over `samples`
/// seeded draws, an upper bound on the true expansion.
pub fn expansion_sampled(d: &Digraph, samples: u64, seed: u64) -> Result<ExpansionReport, ExpansionError> {
    let n = d.vertex_count();
    if n < 2 {
        return Err(ExpansionError::OrderOutOfRange(n));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let max_size = 2 * n / 3;
    let mut best: Option<(Ratio<u64>, VertexSet)> = None;
    for _ in 0..samples {
        let size = rng.gen_range(1..=max_size);
        let members = rand::seq::index::sample(&mut rng, n, size).into_vec();
        let u = VertexSet::new(members);
        let o = d.out_neighborhood(&u).expect("in range").len();
        let i = d.in_neighborhood(&u).expect("in range").len();
        let r = Ratio::new(o.min(i) as u64, size as u64);
        if best.as_ref().is_none_or(|(b, _)| r < *b) {
            best = Some((r, u));
        }
    }
    let (alpha, witness) = match best {
        Some((r, u)) => (r, Some(u)),
        None => (Ratio::from_integer(n as u64), None),
    };
    Ok(ExpansionReport { alpha_lower: alpha, witness_set: witness, exact: false, sets_examined: samples })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TransitiveBoundCheck {
    #[serde(serialize_with = "serialize_ratio")]
    pub alpha: Ratio<u64>,
    pub diameter: usize,
    #[serde(serialize_with = "serialize_ratio")]
    pub bound: Ratio<u64>,
    pub holds: bool,
}

/// Compares the exact expansion against `1 / (3d)`.
pub fn expansion_check_transitive_bound(d: &Digraph) -> Result<TransitiveBoundCheck, ExpansionError> {
    let diameter = match d.directed_diameter() {
        Distance::Finite(k) => k,
        Distance::Infinite => return Err(ExpansionError::NotStronglyConnected),
    };
    let alpha = expansion_exact(d)?.alpha_lower;
    let bound = Ratio::new(1, 3 * diameter.max(1) as u64);
    Ok(TransitiveBoundCheck { alpha, diameter, bound, holds: alpha >= bound })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lex_order_on_masks() {
        // {0,2} < {1}; {0} < {0,1}; {0,1} < {0,2}
        assert!(lex_less(0b101, 0b010));
        assert!(lex_less(0b001, 0b011));
        assert!(lex_less(0b011, 0b101));
        assert!(!lex_less(0b011, 0b001));
        assert!(!lex_less(0b010, 0b101));
    }

    #[test]
    fn known_values() {
        let k6 = expansion_exact(&Digraph::complete_bidirected(6)).unwrap();
        assert_eq!(k6.alpha_lower, Ratio::new(1, 2));
        assert_eq!(k6.witness_set.unwrap().members(), &[0, 1, 2, 3]);
        let c6 = expansion_exact(&Digraph::directed_cycle(6)).unwrap();
        assert_eq!(c6.alpha_lower, Ratio::new(1, 4));
        assert_eq!(c6.witness_set.unwrap().members(), &[0, 1, 2, 3]);
        let digon = expansion_exact(&Digraph::directed_cycle(2)).unwrap();
        assert_eq!(digon.alpha_lower, Ratio::from_integer(1));
        assert!(expansion_exact(&Digraph::directed_cycle(21)).is_err());
    }

    #[test]
    fn transitive_bound() {
        let r = expansion_check_transitive_bound(&Digraph::directed_cycle(6)).unwrap();
        assert_eq!(r.bound, Ratio::new(1, 15));
        assert!(r.holds);
        assert!(expansion_check_transitive_bound(&Digraph::directed_path(3)).is_err());
    }

    #[test]
    fn sampling_is_an_upper_bound() {
        let d = Digraph::directed_cycle(3).cartesian_product(&Digraph::directed_cycle(4));
        let exact = expansion_exact(&d).unwrap().alpha_lower;
        let s = expansion_sampled(&d, 500, 0).unwrap();
        assert!(s.alpha_lower >= exact);
        assert_eq!(s, expansion_sampled(&d, 500, 0).unwrap());
    }
}
