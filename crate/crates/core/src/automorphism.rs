//! Vertex permutations that preserve arcs, and an individualisation/refinement
//! search deciding vertex transitivity of small digraphs.

use thiserror::Error;

use crate::budget::Budget;
use crate::digraph::{Digraph, Vertex};
use crate::graph::Graph;

/// A permutation `v -> perm[v]` of the vertex set.
pub type Permutation = Vec<Vertex>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AutomorphismError {
    #[error("member {index} is not a permutation of 0..{n}")]
    NotPermutation { index: usize, n: usize },
    #[error("member {index} maps ({u}, {v}) to a non-adjacent pair")]
    BreaksArc { index: usize, u: Vertex, v: Vertex },
}

pub fn identity(n: usize) -> Permutation {
    (0..n).collect()
}

/// `(outer ∘ inner)(x) = outer[inner[x]]`.
pub fn compose(outer: &[Vertex], inner: &[Vertex]) -> Permutation {
    inner.iter().map(|&x| outer[x]).collect()
}

pub fn invert(perm: &[Vertex]) -> Permutation {
    let mut inv = vec![0; perm.len()];
    for (x, &y) in perm.iter().enumerate() {
        inv[y] = x;
    }
    inv
}

pub fn is_permutation(perm: &[Vertex], n: usize) -> bool {
    let mut seen = vec![false; n];
    perm.len() == n && perm.iter().all(|&y| y < n && !std::mem::replace(&mut seen[y], true))
}

/// Arc count is preserved by a bijection, so mapping arcs into arcs suffices.
pub fn is_automorphism(d: &Digraph, perm: &[Vertex]) -> bool {
    is_permutation(perm, d.vertex_count()) && d.arcs().all(|(u, v)| d.has_arc(perm[u], perm[v]))
}

pub fn is_graph_automorphism(g: &Graph, perm: &[Vertex]) -> bool {
    is_permutation(perm, g.vertex_count()) && g.edges().all(|(u, v)| g.has_edge(perm[u], perm[v]))
}

/// A list of automorphisms of some host.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AutomorphismFamily {
    perms: Vec<Permutation>,
}

impl AutomorphismFamily {
    /// Checks every member against the host digraph.
    pub fn new(host: &Digraph, perms: Vec<Permutation>) -> Result<Self, AutomorphismError> {
        let n = host.vertex_count();
        for (index, p) in perms.iter().enumerate() {
            if !is_permutation(p, n) {
                return Err(AutomorphismError::NotPermutation { index, n });
            }
            if let Some((u, v)) = host.arcs().find(|&(u, v)| !host.has_arc(p[u], p[v])) {
                return Err(AutomorphismError::BreaksArc { index, u, v });
            }
        }
        Ok(AutomorphismFamily { perms })
    }

    /// Checks every member against an undirected host graph.
    pub fn for_graph(host: &Graph, perms: Vec<Permutation>) -> Result<Self, AutomorphismError> {
        let n = host.vertex_count();
        for (index, p) in perms.iter().enumerate() {
            if !is_permutation(p, n) {
                return Err(AutomorphismError::NotPermutation { index, n });
            }
            if let Some((u, v)) = host.edges().find(|&(u, v)| !host.has_edge(p[u], p[v])) {
                return Err(AutomorphismError::BreaksArc { index, u, v });
            }
        }
        Ok(AutomorphismFamily { perms })
    }

    pub(crate) fn from_trusted(perms: Vec<Permutation>) -> Self {
        AutomorphismFamily { perms }
    }

    pub fn identity_only(n: usize) -> Self {
        AutomorphismFamily { perms: vec![identity(n)] }
    }

    pub fn members(&self) -> &[Permutation] {
        &self.perms
    }

    pub fn len(&self) -> usize {
        self.perms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perms.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.perms.first().map_or(0, Vec::len)
    }

    /// For every ordered pair `(u, v)` some member maps `u` to `v`.
    pub fn maps_every_pair(&self) -> bool {
        let n = self.degree();
        let mut hit = vec![false; n * n];
        for p in &self.perms {
            for (u, &v) in p.iter().enumerate() {
                hit[u * n + v] = true;
            }
        }
        hit.iter().all(|&b| b)
    }

    /// Every vertex is the image of vertex 0 under some member.
    pub fn moves_base_everywhere(&self) -> bool {
        let n = self.degree();
        let mut hit = vec![false; n];
        for p in &self.perms {
            hit[p[0]] = true;
        }
        n > 0 && hit.iter().all(|&b| b)
    }

    /// From a transversal `{φ_w : φ_w(0) = w}`, the family `{φ_u ∘ φ_v⁻¹}`,
    /// which maps every vertex to every vertex. Deduplicated and sorted.
    pub fn pairwise_closure(&self) -> AutomorphismFamily {
        let inverses: Vec<Permutation> = self.perms.iter().map(|p| invert(p)).collect();
        let mut out: Vec<Permutation> = self
            .perms
            .iter()
            .flat_map(|a| inverses.iter().map(move |b| compose(a, b)))
            .collect();
        out.sort_unstable();
        out.dedup();
        AutomorphismFamily { perms: out }
    }
}

/// Outcome of the transitivity decision.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Transitivity {
    /// Transitive; carries a transversal `φ_w` with `φ_w(0) = w` for every `w`.
    Transitive(AutomorphismFamily),
    /// No automorphism maps vertex 0 to `target`.
    NotTransitive { target: Vertex },
    /// Budget exhausted before a decision.
    Unknown,
}

impl Transitivity {
    pub fn is_transitive(&self) -> Option<bool> {
        match self {
            Transitivity::Transitive(_) => Some(true),
            Transitivity::NotTransitive { .. } => Some(false),
            Transitivity::Unknown => None,
        }
    }
}

/// Decides whether the automorphism group of `d` acts transitively.
///
/// Automorphisms sending 0 to each target are searched by individualisation
/// and colour refinement; orbits are closed under the automorphisms found so
/// far, so only one search per orbit representative is needed.
pub fn is_vertex_transitive(d: &Digraph, budget: &mut Budget) -> Transitivity {
    let n = d.vertex_count();
    if n <= 1 {
        return Transitivity::Transitive(AutomorphismFamily::identity_only(n));
    }
    let mut generators: Vec<Permutation> = Vec::new();
    let mut reps = orbit_transversal(n, &generators);
    for target in 1..n {
        if reps[target].is_some() {
            continue;
        }
        match find_automorphism(d, &[0], &[target], budget) {
            Found::Yes(p) => {
                generators.push(p);
                reps = orbit_transversal(n, &generators);
            }
            Found::No => return Transitivity::NotTransitive { target },
            Found::OutOfBudget => return Transitivity::Unknown,
        }
    }
    let perms = reps.into_iter().map(|r| r.expect("orbit is complete")).collect();
    Transitivity::Transitive(AutomorphismFamily::from_trusted(perms))
}

/// Schreier transversal of the orbit of 0 under the group generated by `gens`.
fn orbit_transversal(n: usize, gens: &[Permutation]) -> Vec<Option<Permutation>> {
    let mut reps: Vec<Option<Permutation>> = vec![None; n];
    reps[0] = Some(identity(n));
    let mut queue = std::collections::VecDeque::from([0usize]);
    while let Some(w) = queue.pop_front() {
        for g in gens {
            let x = g[w];
            if reps[x].is_none() {
                reps[x] = Some(compose(g, reps[w].as_ref().unwrap()));
                queue.push_back(x);
            }
        }
    }
    reps
}

enum Found {
    Yes(Permutation),
    No,
    OutOfBudget,
}

type Signature = (u32, Vec<u32>, Vec<u32>);

/// Equitable refinement from an individualised colouring. Returns final
/// colours and the per-round signature tables used to compare two runs.
fn refine(d: &Digraph, individualised: &[Vertex]) -> (Vec<u32>, Vec<Vec<Signature>>) {
    let n = d.vertex_count();
    let mut colors = vec![0u32; n];
    for (i, &v) in individualised.iter().enumerate() {
        colors[v] = i as u32 + 1;
    }
    let mut classes = {
        let mut c = colors.clone();
        c.sort_unstable();
        c.dedup();
        c.len()
    };
    let mut trace = Vec::new();
    loop {
        let sigs: Vec<Signature> = (0..n)
            .map(|v| {
                let mut o: Vec<u32> = d.out_neighbors(v).iter().map(|&w| colors[w]).collect();
                let mut i: Vec<u32> = d.in_neighbors(v).iter().map(|&w| colors[w]).collect();
                o.sort_unstable();
                i.sort_unstable();
                (colors[v], o, i)
            })
            .collect();
        let mut distinct = sigs.clone();
        distinct.sort();
        distinct.dedup();
        for (v, s) in sigs.iter().enumerate() {
            colors[v] = distinct.binary_search(s).unwrap() as u32;
        }
        let mut census = sigs;
        census.sort();
        trace.push(census);
        if distinct.len() == classes {
            break;
        }
        classes = distinct.len();
    }
    (colors, trace)
}

fn find_automorphism(d: &Digraph, from: &[Vertex], to: &[Vertex], budget: &mut Budget) -> Found {
    if !budget.spend() {
        return Found::OutOfBudget;
    }
    let (ca, ta) = refine(d, from);
    let (cb, tb) = refine(d, to);
    if ta != tb {
        return Found::No;
    }
    let n = d.vertex_count();
    let mut cells: Vec<Vec<Vertex>> = vec![Vec::new(); n];
    for v in 0..n {
        cells[ca[v] as usize].push(v);
    }
    match cells.iter().position(|c| c.len() > 1) {
        None => {
            let mut perm = vec![0; n];
            let mut by_color = vec![0; n];
            for w in 0..n {
                by_color[cb[w] as usize] = w;
            }
            for v in 0..n {
                perm[v] = by_color[ca[v] as usize];
            }
            if is_automorphism(d, &perm) {
                Found::Yes(perm)
            } else {
                Found::No
            }
        }
        Some(cell) => {
            let a = cells[cell][0];
            let candidates: Vec<Vertex> = (0..n).filter(|&w| cb[w] as usize == cell).collect();
            let mut from = from.to_vec();
            from.push(a);
            for b in candidates {
                let mut to = to.to_vec();
                to.push(b);
                match find_automorphism(d, &from, &to, budget) {
                    Found::No => continue,
                    other => return other,
                }
            }
            Found::No
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn composition_helpers() {
        let p = vec![1, 2, 0];
        assert_eq!(compose(&p, &invert(&p)), identity(3));
        assert_eq!(compose(&p, &p), vec![2, 0, 1]);
        assert!(!is_permutation(&[0, 0, 1], 3));
    }

    #[test]
    fn cycles_are_transitive() {
        for n in 2..9 {
            let t = is_vertex_transitive(&Digraph::directed_cycle(n), &mut Budget::default());
            let Transitivity::Transitive(fam) = t else { panic!("C{n}") };
            assert!(fam.moves_base_everywhere());
            assert!(fam.pairwise_closure().maps_every_pair());
        }
    }

    #[test]
    fn path_is_not_transitive() {
        let t = is_vertex_transitive(&Digraph::directed_path(3), &mut Budget::default());
        assert_eq!(t, Transitivity::NotTransitive { target: 1 });
    }

    #[test]
    fn complete_digraph_and_lollipop() {
        let k = Digraph::complete_bidirected(7);
        assert_eq!(is_vertex_transitive(&k, &mut Budget::default()).is_transitive(), Some(true));
        // triangle with a pendant digon: regular in no sense, clearly not transitive
        let lolli = Digraph::from_arcs(4, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 2)]).unwrap();
        assert_eq!(is_vertex_transitive(&lolli, &mut Budget::default()).is_transitive(), Some(false));
    }

    #[test]
    fn regular_but_not_transitive() {
        // disjoint union of a directed 3-cycle and a directed 4-cycle: 1-regular,
        // but no automorphism mixes the two components
        let d = Digraph::directed_cycle(3).disjoint_union(&Digraph::directed_cycle(4));
        assert_eq!(d.regularity(), Some(1));
        assert_eq!(is_vertex_transitive(&d, &mut Budget::default()).is_transitive(), Some(false));
    }

    #[test]
    fn budget_exhaustion_reports_unknown() {
        let k = Digraph::complete_bidirected(6);
        assert_eq!(is_vertex_transitive(&k, &mut Budget::new(0)), Transitivity::Unknown);
    }

    #[test]
    fn family_validation() {
        let c = Digraph::directed_cycle(4);
        assert!(AutomorphismFamily::new(&c, vec![vec![1, 2, 3, 0]]).is_ok());
        assert!(matches!(
            AutomorphismFamily::new(&c, vec![vec![1, 0, 2, 3]]),
            Err(AutomorphismError::BreaksArc { .. })
        ));
        assert!(matches!(
            AutomorphismFamily::new(&c, vec![vec![0, 0, 1, 2]]),
            Err(AutomorphismError::NotPermutation { .. })
        ));
    }
}
