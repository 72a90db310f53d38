//! Finite groups as multiplication tables over canonical element ids.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

/// Group element id.
pub type Element = usize;

/// Tables up to this order are checked for associativity on every triple.
pub const EXACT_ASSOCIATIVITY_MAX_ORDER: usize = 256;
/// Number of sampled triples above [`EXACT_ASSOCIATIVITY_MAX_ORDER`].
pub const SAMPLED_ASSOCIATIVITY_TRIPLES: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("empty table")]
    Empty,
    #[error("row {row} has {len} entries, expected {order}")]
    NotSquare { row: usize, len: usize, order: usize },
    #[error("closure fails: {a} * {b} = {value} is not an element")]
    NotClosed { a: Element, b: Element, value: Element },
    #[error("associativity fails: ({a} * {b}) * {c} != {a} * ({b} * {c})")]
    NotAssociative { a: Element, b: Element, c: Element },
    #[error("no two-sided identity")]
    NoIdentity,
    #[error("element {0} has no two-sided inverse")]
    NoInverse(Element),
    #[error("order must be at least 1")]
    ZeroOrder,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupTable {
    order: usize,
    mult: Vec<Element>,
    identity: Element,
    inverse: Vec<Element>,
}

impl GroupTable {
    /// Validates a raw table with the default sampling seed.
    pub fn from_table(raw: &[Vec<Element>]) -> Result<Self, GroupError> {
        Self::from_table_seeded(raw, 0)
    }

    pub fn from_table_seeded(raw: &[Vec<Element>], seed: u64) -> Result<Self, GroupError> {
        let order = raw.len();
        if order == 0 {
            return Err(GroupError::Empty);
        }
        let mut mult = Vec::with_capacity(order * order);
        for (a, row) in raw.iter().enumerate() {
            if row.len() != order {
                return Err(GroupError::NotSquare { row: a, len: row.len(), order });
            }
            for (b, &value) in row.iter().enumerate() {
                if value >= order {
                    return Err(GroupError::NotClosed { a, b, value });
                }
                mult.push(value);
            }
        }
        let m = |a: Element, b: Element| mult[a * order + b];

        let assoc = |a, b, c| m(m(a, b), c) == m(a, m(b, c));
        if order <= EXACT_ASSOCIATIVITY_MAX_ORDER {
            for a in 0..order {
                for b in 0..order {
                    for c in 0..order {
                        if !assoc(a, b, c) {
                            return Err(GroupError::NotAssociative { a, b, c });
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..SAMPLED_ASSOCIATIVITY_TRIPLES {
                let (a, b, c) = (
                    rng.gen_range(0..order),
                    rng.gen_range(0..order),
                    rng.gen_range(0..order),
                );
                if !assoc(a, b, c) {
                    return Err(GroupError::NotAssociative { a, b, c });
                }
            }
        }

        let identity = (0..order)
            .find(|&e| (0..order).all(|x| m(e, x) == x && m(x, e) == x))
            .ok_or(GroupError::NoIdentity)?;
        let inverse = (0..order)
            .map(|a| {
                (0..order)
                    .find(|&b| m(a, b) == identity && m(b, a) == identity)
                    .ok_or(GroupError::NoInverse(a))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(GroupTable { order, mult, identity, inverse })
    }

    /// `Z_n` with element `k` standing for `k mod n`.
    pub fn cyclic(n: usize) -> Result<Self, GroupError> {
        if n == 0 {
            return Err(GroupError::ZeroOrder);
        }
        let mult = (0..n * n).map(|i| (i / n + i % n) % n).collect();
        let inverse = (0..n).map(|k| (n - k) % n).collect();
        Ok(GroupTable { order: n, mult, identity: 0, inverse })
    }

    /// Direct product; `(a, b)` has id `a * |G2| + b`.
    pub fn direct_product(g1: &GroupTable, g2: &GroupTable) -> Self {
        let n2 = g2.order;
        let order = g1.order * n2;
        let pair = |x: Element| (x / n2, x % n2);
        let mut mult = Vec::with_capacity(order * order);
        for x in 0..order {
            let (a1, b1) = pair(x);
            for y in 0..order {
                let (a2, b2) = pair(y);
                mult.push(g1.mul(a1, a2) * n2 + g2.mul(b1, b2));
            }
        }
        let inverse = (0..order)
            .map(|x| {
                let (a, b) = pair(x);
                g1.inv(a) * n2 + g2.inv(b)
            })
            .collect();
        GroupTable {
            order,
            mult,
            identity: g1.identity * n2 + g2.identity,
            inverse,
        }
    }

    /// Dihedral group of order `2n`; `r^k s^f` has id `2k + f`.
    pub fn dihedral(n: usize) -> Result<Self, GroupError> {
        if n == 0 {
            return Err(GroupError::ZeroOrder);
        }
        let order = 2 * n;
        let table: Vec<Vec<Element>> = (0..order)
            .map(|x| {
                let (a, f) = (x / 2, x % 2);
                (0..order)
                    .map(|y| {
                        let (b, g) = (y / 2, y % 2);
                        let k = if f == 0 { (a + b) % n } else { (a + n - b) % n };
                        2 * k + (f ^ g)
                    })
                    .collect()
            })
            .collect();
        Self::from_table(&table)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> Element {
        self.identity
    }

    pub fn mul(&self, a: Element, b: Element) -> Element {
        self.mult[a * self.order + b]
    }

    pub fn inv(&self, a: Element) -> Element {
        self.inverse[a]
    }

    pub fn element_order(&self, a: Element) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Sorted multiset of element orders.
    pub fn order_profile(&self) -> Vec<usize> {
        let mut v: Vec<usize> = (0..self.order).map(|a| self.element_order(a)).collect();
        v.sort_unstable();
        v
    }

    /// Elements of the subgroup generated by `gens`, as a membership mask.
    pub fn generated_subgroup(&self, gens: &[Element]) -> Vec<bool> {
        let mut seen = vec![false; self.order];
        seen[self.identity] = true;
        let mut stack = vec![self.identity];
        while let Some(x) = stack.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        seen
    }

    pub fn generates(&self, gens: &[Element]) -> bool {
        self.generated_subgroup(gens).iter().all(|&b| b)
    }

    /// An isomorphism `self -> other` as an element map, if one exists.
    ///
    /// Order profiles are compared first; then images of a greedy generating
    /// sequence are tried among elements of matching order.
    pub fn find_isomorphism(&self, other: &GroupTable) -> Option<Vec<Element>> {
        if self.order != other.order || self.order_profile() != other.order_profile() {
            return None;
        }
        let mut gens = Vec::new();
        let mut covered = self.generated_subgroup(&gens);
        for x in 0..self.order {
            if !covered[x] {
                gens.push(x);
                covered = self.generated_subgroup(&gens);
            }
        }
        let mut images = Vec::with_capacity(gens.len());
        self.extend_isomorphism(other, &gens, &mut images)
    }

    fn extend_isomorphism(
        &self,
        other: &GroupTable,
        gens: &[Element],
        images: &mut Vec<Element>,
    ) -> Option<Vec<Element>> {
        if images.len() == gens.len() {
            return self.map_from_generators(other, gens, images);
        }
        let want = self.element_order(gens[images.len()]);
        for y in 0..other.order {
            if other.element_order(y) == want {
                images.push(y);
                if let Some(map) = self.extend_isomorphism(other, gens, images) {
                    return Some(map);
                }
                images.pop();
            }
        }
        None
    }

    fn map_from_generators(
        &self,
        other: &GroupTable,
        gens: &[Element],
        images: &[Element],
    ) -> Option<Vec<Element>> {
        let mut map = vec![usize::MAX; self.order];
        map[self.identity] = other.identity;
        let mut stack = vec![self.identity];
        while let Some(x) = stack.pop() {
            for (&g, &img) in gens.iter().zip(images) {
                let y = self.mul(x, g);
                let fy = other.mul(map[x], img);
                if map[y] == usize::MAX {
                    map[y] = fy;
                    stack.push(y);
                } else if map[y] != fy {
                    return None;
                }
            }
        }
        let mut hit = vec![false; self.order];
        for &y in &map {
            if y == usize::MAX || std::mem::replace(&mut hit[y], true) {
                return None;
            }
        }
        let homomorphism = (0..self.order).all(|a| {
            (0..self.order).all(|b| map[self.mul(a, b)] == other.mul(map[a], map[b]))
        });
        homomorphism.then_some(map)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_and_cyclic() {
        let t = GroupTable::cyclic(1).unwrap();
        assert_eq!((t.order(), t.identity(), t.mul(0, 0)), (1, 0, 0));
        let z5 = GroupTable::cyclic(5).unwrap();
        assert_eq!(z5.mul(3, 4), 2);
        assert_eq!(z5.inv(2), 3);
        assert_eq!(z5.element_order(0), 1);
        assert_eq!(z5.element_order(2), 5);
        assert_eq!(GroupTable::cyclic(0), Err(GroupError::ZeroOrder));
    }

    #[test]
    fn product_is_cyclic_of_order_six() {
        let z2 = GroupTable::cyclic(2).unwrap();
        let z3 = GroupTable::cyclic(3).unwrap();
        let p = GroupTable::direct_product(&z2, &z3);
        let z6 = GroupTable::cyclic(6).unwrap();
        assert_eq!(p.order_profile(), vec![1, 2, 3, 3, 6, 6]);
        let map = p.find_isomorphism(&z6).expect("Z2 x Z3 is cyclic");
        for a in 0..6 {
            for b in 0..6 {
                assert_eq!(map[p.mul(a, b)], z6.mul(map[a], map[b]));
            }
        }
        let z2z2 = GroupTable::direct_product(&z2, &z2);
        assert!(z2z2.find_isomorphism(&GroupTable::cyclic(4).unwrap()).is_none());
        let d3 = GroupTable::dihedral(3).unwrap();
        assert!(d3.find_isomorphism(&z6).is_none());
    }

    #[test]
    fn table_round_trip() {
        let d4 = GroupTable::dihedral(4).unwrap();
        let raw: Vec<Vec<_>> = (0..8).map(|a| (0..8).map(|b| d4.mul(a, b)).collect()).collect();
        assert_eq!(GroupTable::from_table(&raw).unwrap(), d4);
        // r * s != s * r in D4
        assert_ne!(d4.mul(2, 1), d4.mul(1, 2));
    }

    #[test]
    fn axiom_violations() {
        // subtraction mod 3 is closed but not associative
        let sub: Vec<Vec<_>> = (0..3).map(|a| (0..3).map(|b| (a + 3 - b) % 3).collect()).collect();
        let err = GroupTable::from_table(&sub).unwrap_err();
        let GroupError::NotAssociative { a, b, c } = err else {
            panic!("expected associativity witness, got {err:?}");
        };
        let m = |x: usize, y: usize| sub[x][y];
        assert_ne!(m(m(a, b), c), m(a, m(b, c)));

        assert!(matches!(
            GroupTable::from_table(&[vec![0, 2], vec![1, 0]]),
            Err(GroupError::NotClosed { .. })
        ));
        assert!(matches!(
            GroupTable::from_table(&[vec![0, 1], vec![1]]),
            Err(GroupError::NotSquare { .. })
        ));
        // constant table: associative, no identity
        assert_eq!(
            GroupTable::from_table(&[vec![0, 0], vec![0, 0]]),
            Err(GroupError::NoIdentity)
        );
        // max semilattice on {0,1}: identity 0, element 1 has no inverse
        assert_eq!(
            GroupTable::from_table(&[vec![0, 1], vec![1, 1]]),
            Err(GroupError::NoInverse(1))
        );
    }

    #[test]
    fn generation() {
        let z4 = GroupTable::cyclic(4).unwrap();
        assert!(!z4.generates(&[2]));
        assert!(z4.generates(&[3]));
    }
}
