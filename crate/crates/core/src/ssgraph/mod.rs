//! Supersingular ℓ-isogeny graphs `Λ_p(ℓ)` over `F_{p^2}`.
//!
//! Construction starts from a supersingular j-invariant in `F_p` found by
//! point counting, then explores the graph breadth-first: the neighbours of
//! `j` are the roots of `Φ_ℓ(j, Y)`, and the multiplicity of a root is the
//! number of order-ℓ subgroups leading to that curve, i.e. the Brandt entry.
//!
//! Only `p ≡ 1 (mod 12)` is supported, so `j = 0` and `j = 1728` are never
//! supersingular and every adjacency matrix is symmetric.

mod modpoly;
mod modpoly_data;

use std::collections::{BTreeMap, HashMap, VecDeque};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub use modpoly::{ModularPolynomial, ReducedModularPolynomial, SUPPORTED_ELLS};

use crate::arith::{is_prime, roots_with_multiplicity, Fp2, Fp2Field};
use crate::brandt::BrandtMatrix;
use crate::error::{Error, Result};

/// Number of supersingular j-invariants in characteristic `p >= 5`.
pub fn expected_vertex_count(p: u64) -> u64 {
    p / 12
        + match p % 12 {
            1 => 0,
            5 | 7 => 1,
            _ => 2,
        }
}

fn check_graph_prime(p: u64) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::domain(format!("p = {p} is not prime")));
    }
    if p % 12 != 1 {
        return Err(Error::domain(format!(
            "graph construction needs p ≡ 1 mod 12 (p = {p} ≡ {} mod 12); \
             otherwise j = 0 or 1728 is supersingular and carries extra automorphisms",
            p % 12
        )));
    }
    Ok(())
}

/// A supersingular j-invariant in `F_p`, found by scanning `j = 1, 2, ...`.
///
/// `E_j: y^2 = x^3 + 3j(1728 - j) x + 2j(1728 - j)^2` has j-invariant `j`; it
/// is supersingular exactly when `#E_j(F_p) = p + 1`.
pub fn find_supersingular_seed(p: u64) -> Result<Fp2> {
    check_graph_prime(p)?;
    if p < 13 {
        return Err(Error::domain(format!("p = {p} must be at least 13")));
    }
    let chi = legendre_table(p);
    let j1728 = 1728 % p;
    for j in 1..p {
        if j == j1728 {
            continue;
        }
        let k = (1728 + p - j) % p;
        let a = 3 * j % p * k % p;
        let b = 2 * j % p * (k * k % p) % p;
        if character_sum(p, a, b, &chi) == 0 {
            return Ok(Fp2::new(j, 0));
        }
    }
    Err(Error::violation(
        "existence of an F_p-rational supersingular j",
        format!("no supersingular j-invariant found in F_{p}"),
    ))
}

/// `χ(x)` for every `x ∈ F_p`, as -1, 0, 1.
fn legendre_table(p: u64) -> Vec<i8> {
    let mut chi = vec![-1i8; p as usize];
    chi[0] = 0;
    for x in 1..p {
        chi[(x * x % p) as usize] = 1;
    }
    chi
}

/// `Σ_x χ(x^3 + a x + b)`, so that `#E(F_p) = p + 1 + sum`.
fn character_sum(p: u64, a: u64, b: u64, chi: &[i8]) -> i64 {
    (0..p)
        .map(|x| {
            let v = (x * x % p * x % p + a * x % p + b) % p;
            chi[v as usize] as i64
        })
        .sum()
}

/// `#E(F_p)` for `y^2 = x^3 + a x + b`.
pub fn point_count(p: u64, a: u64, b: u64) -> u64 {
    let chi = legendre_table(p);
    (p as i64 + 1 + character_sum(p, a % p, b % p, &chi)) as u64
}

/// Everything needed to compute neighbour multisets for one `(p, ℓ)`.
#[derive(Clone, Debug)]
pub struct NeighborContext {
    field: Fp2Field,
    phi: ReducedModularPolynomial,
    seed: u64,
}

impl NeighborContext {
    pub fn new(p: u64, ell: u64, seed: u64) -> Result<Self> {
        let field = Fp2Field::new(p)?;
        if ell == p {
            return Err(Error::domain("ℓ must differ from p"));
        }
        let phi = ModularPolynomial::get(ell)?;
        phi.self_check()?;
        Ok(NeighborContext {
            field,
            phi: phi.over(field),
            seed,
        })
    }

    pub fn field(&self) -> &Fp2Field {
        &self.field
    }

    pub fn ell(&self) -> u64 {
        self.phi.ell()
    }

    /// Roots of `Φ_ℓ(j, Y)` in `F_{p^2}` with multiplicity; always `ℓ + 1` in total.
    pub fn neighbors(&self, j: Fp2) -> Result<BTreeMap<Fp2, u32>> {
        let poly = self.phi.specialize(j);
        // per-vertex stream so the result never depends on visiting order
        let mut rng = ChaCha8Rng::seed_from_u64(
            self.seed
                .wrapping_mul(0x9E37_79B9_7F4A_7C15)
                .wrapping_add(j.c0.wrapping_mul(self.field.p()).wrapping_add(j.c1)),
        );
        let roots = roots_with_multiplicity(&self.field, &poly, &mut rng)?;
        let total: u32 = roots.values().sum();
        if total as u64 != self.ell() + 1 {
            return Err(Error::violation(
                "out-degree ℓ + 1",
                format!(
                    "Φ_{}({j}, Y) has {total} roots in F_p^2 counted with multiplicity, expected {}",
                    self.ell(),
                    self.ell() + 1
                ),
            ));
        }
        Ok(roots)
    }
}

/// `Λ_p(ℓ)`: canonically ordered vertices and the adjacency matrix `B(ℓ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsogenyGraph {
    p: u64,
    ell: u64,
    nonresidue: u64,
    vertices: Vec<Fp2>,
    adjacency: Vec<Vec<u32>>,
}

impl IsogenyGraph {
    /// Assemble a graph from parts and check every structural invariant.
    pub fn from_parts(
        p: u64,
        ell: u64,
        vertices: Vec<Fp2>,
        adjacency: Vec<Vec<u32>>,
    ) -> Result<Self> {
        check_graph_prime(p)?;
        let field = Fp2Field::new(p)?;
        if !SUPPORTED_ELLS.contains(&ell) {
            return Err(Error::domain(format!("ℓ = {ell} is not one of 2, 3, 5, 7")));
        }
        let g = IsogenyGraph {
            p,
            ell,
            nonresidue: field.nonresidue(),
            vertices,
            adjacency,
        };
        g.validate()?;
        Ok(g)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn ell(&self) -> u64 {
        self.ell
    }

    pub fn nonresidue(&self) -> u64 {
        self.nonresidue
    }

    pub fn n(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[Fp2] {
        &self.vertices
    }

    pub fn adjacency(&self) -> &[Vec<u32>] {
        &self.adjacency
    }

    pub fn multiplicity(&self, i: usize, j: usize) -> u32 {
        self.adjacency[i][j]
    }

    pub fn index_of(&self, j: Fp2) -> Option<usize> {
        self.vertices
            .binary_search_by_key(&j.canonical_key(), Fp2::canonical_key)
            .ok()
    }

    /// The adjacency matrix as `B(ℓ)`.
    pub fn brandt(&self) -> BrandtMatrix {
        BrandtMatrix::from_adjacency(self.p, self.ell, &self.adjacency)
            .expect("adjacency is square")
    }

    /// Number of loops, `Tr B(ℓ)`.
    pub fn loop_count(&self) -> u64 {
        (0..self.n()).map(|i| self.adjacency[i][i] as u64).sum()
    }

    /// Undirected edge count `Σ_{i <= j} B_ij`.
    pub fn edge_count(&self) -> u64 {
        (0..self.n())
            .map(|i| {
                (i..self.n())
                    .map(|j| self.adjacency[i][j] as u64)
                    .sum::<u64>()
            })
            .sum()
    }

    /// Checks vertex count, row sums, symmetry, canonical order, connectivity
    /// and the absence of `j = 0, 1728`.
    pub fn validate(&self) -> Result<()> {
        let n = self.n();
        let expected = expected_vertex_count(self.p);
        if n as u64 != expected {
            return Err(Error::violation(
                "supersingular vertex count",
                format!(
                    "Λ_{}({}) has {n} vertices, expected {expected}",
                    self.p, self.ell
                ),
            ));
        }
        if self.adjacency.len() != n || self.adjacency.iter().any(|r| r.len() != n) {
            return Err(Error::domain(
                "adjacency matrix shape does not match vertex list",
            ));
        }
        if self
            .vertices
            .iter()
            .any(|v| v.c0 >= self.p || v.c1 >= self.p)
        {
            return Err(Error::domain("vertex coordinates are not reduced mod p"));
        }
        if !self
            .vertices
            .windows(2)
            .all(|w| w[0].canonical_key() < w[1].canonical_key())
        {
            return Err(Error::domain(
                "vertices are not in canonical (c1, c0) order",
            ));
        }
        let forbidden = [Fp2::ZERO, Fp2::new(1728 % self.p, 0)];
        if let Some(v) = self.vertices.iter().find(|v| forbidden.contains(v)) {
            return Err(Error::violation(
                "j = 0, 1728 not supersingular for p ≡ 1 mod 12",
                format!("vertex {v} appears in Λ_{}({})", self.p, self.ell),
            ));
        }
        for (i, row) in self.adjacency.iter().enumerate() {
            let s: u64 = row.iter().map(|&x| x as u64).sum();
            if s != self.ell + 1 {
                return Err(Error::violation(
                    "out-degree ℓ + 1",
                    format!("row {i} sums to {s}, expected {}", self.ell + 1),
                ));
            }
        }
        for i in 0..n {
            for j in 0..i {
                if self.adjacency[i][j] != self.adjacency[j][i] {
                    return Err(Error::violation(
                        "undirected for p ≡ 1 mod 12",
                        format!(
                            "B_{i}{j} = {} but B_{j}{i} = {}",
                            self.adjacency[i][j], self.adjacency[j][i]
                        ),
                    ));
                }
            }
        }
        if n > 0 {
            let mut seen = vec![false; n];
            let mut queue = VecDeque::from([0usize]);
            seen[0] = true;
            while let Some(u) = queue.pop_front() {
                for (v, &m) in self.adjacency[u].iter().enumerate() {
                    if m > 0 && !seen[v] {
                        seen[v] = true;
                        queue.push_back(v);
                    }
                }
            }
            if let Some(v) = seen.iter().position(|s| !s) {
                return Err(Error::violation(
                    "connectivity",
                    format!("vertex {v} is unreachable from vertex 0"),
                ));
            }
        }
        Ok(())
    }
}

/// Breadth-first construction of `Λ_p(ℓ)` for `p ≡ 1 (mod 12)`.
pub fn build_graph(p: u64, ell: u64, seed: u64) -> Result<IsogenyGraph> {
    check_graph_prime(p)?;
    if !SUPPORTED_ELLS.contains(&ell) {
        return Err(Error::domain(format!("ℓ = {ell} is not one of 2, 3, 5, 7")));
    }
    let ctx = NeighborContext::new(p, ell, seed)?;
    let start = find_supersingular_seed(p)?;

    let mut index: HashMap<Fp2, usize> = HashMap::from([(start, 0)]);
    let mut order = vec![start];
    let mut edges: Vec<BTreeMap<Fp2, u32>> = Vec::new();
    let mut queue = VecDeque::from([start]);
    let cap = expected_vertex_count(p) as usize;
    while let Some(j) = queue.pop_front() {
        let nbrs = ctx.neighbors(j)?;
        for &k in nbrs.keys() {
            if let std::collections::hash_map::Entry::Vacant(e) = index.entry(k) {
                e.insert(order.len());
                order.push(k);
                queue.push_back(k);
                if order.len() > cap {
                    return Err(Error::violation(
                        "supersingular vertex count",
                        format!("BFS from {start} found more than {cap} vertices"),
                    ));
                }
            }
        }
        edges.push(nbrs);
    }

    let mut vertices = order.clone();
    vertices.sort_by_key(Fp2::canonical_key);
    let pos: HashMap<Fp2, usize> = vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let n = vertices.len();
    let mut adjacency = vec![vec![0u32; n]; n];
    for (bfs_idx, nbrs) in edges.into_iter().enumerate() {
        let i = pos[&order[bfs_idx]];
        for (k, m) in nbrs {
            adjacency[i][pos[&k]] = m;
        }
    }
    IsogenyGraph::from_parts(p, ell, vertices, adjacency)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// O(p^2) point count by enumerating every affine point.
    fn brute_point_count(p: u64, a: u64, b: u64) -> u64 {
        let mut count = 1; // point at infinity
        for x in 0..p {
            let rhs = (x * x % p * x + a * x + b) % p;
            for y in 0..p {
                if y * y % p == rhs {
                    count += 1;
                }
            }
        }
        count
    }

    fn curve(p: u64, j: u64) -> (u64, u64) {
        let k = (1728 + p - j % p) % p;
        (3 * j % p * k % p, 2 * j % p * (k * k % p) % p)
    }

    #[test]
    fn vertex_count_formula() {
        assert_eq!(expected_vertex_count(109), 9);
        assert_eq!(expected_vertex_count(13), 1);
        assert_eq!(expected_vertex_count(11), 2);
        assert_eq!(expected_vertex_count(113), 10);
    }

    #[test]
    fn seed_at_13_is_5() {
        let j = find_supersingular_seed(13).unwrap();
        assert_eq!(j, Fp2::new(5, 0));
        // exhaustive: 5 is the only supersingular j in F_13 besides 0 and 1728
        let supersingular: Vec<u64> = (1..13)
            .filter(|&j| j != 1728 % 13)
            .filter(|&j| {
                let (a, b) = curve(13, j);
                brute_point_count(13, a, b) == 14
            })
            .collect();
        assert_eq!(supersingular, vec![5]);
    }

    #[test]
    fn seed_at_109_has_trace_zero() {
        let j = find_supersingular_seed(109).unwrap();
        assert!(j.is_in_base_field());
        let (a, b) = curve(109, j.c0);
        assert_eq!(brute_point_count(109, a, b), 110);
        assert_eq!(point_count(109, a, b), 110);
    }

    #[test]
    fn seed_rejects_wrong_residue() {
        assert!(find_supersingular_seed(11).is_err());
        assert!(find_supersingular_seed(113).is_err());
        assert!(find_supersingular_seed(121).is_err());
    }

    #[test]
    fn single_vertex_graph() {
        let g = build_graph(13, 2, 0).unwrap();
        assert_eq!(g.vertices(), &[Fp2::new(5, 0)]);
        assert_eq!(g.adjacency(), &[vec![3]]);
        let ctx = NeighborContext::new(13, 2, 0).unwrap();
        let nb = ctx.neighbors(Fp2::new(5, 0)).unwrap();
        assert_eq!(
            nb.into_iter().collect::<Vec<_>>(),
            vec![(Fp2::new(5, 0), 3)]
        );
    }

    #[test]
    fn p109_neighbor_multisets() {
        let g = build_graph(109, 2, 0).unwrap();
        assert_eq!(g.n(), 9);
        let ctx = NeighborContext::new(109, 2, 0).unwrap();
        let total: u32 = g
            .vertices()
            .iter()
            .map(|&v| ctx.neighbors(v).unwrap().values().sum::<u32>())
            .sum();
        assert_eq!(total, 27);
        let ctx3 = NeighborContext::new(109, 3, 0).unwrap();
        for &v in g.vertices() {
            assert_eq!(ctx3.neighbors(v).unwrap().values().sum::<u32>(), 4);
        }
    }

    #[test]
    fn construction_is_seed_independent() {
        let a = build_graph(157, 3, 0).unwrap();
        let b = build_graph(157, 3, 12345).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn build_rejects_bad_inputs() {
        assert!(build_graph(113, 2, 0).is_err());
        assert!(build_graph(109, 11, 0).is_err());
        assert!(build_graph(111, 2, 0).is_err());
    }

    #[test]
    fn tampered_graph_fails_validation() {
        let g = build_graph(109, 2, 0).unwrap();
        let mut adj = g.adjacency().to_vec();
        let row0 = adj[0].clone();
        let k = row0.iter().position(|&x| x > 0).unwrap();
        adj[0][k] -= 1;
        let err = IsogenyGraph::from_parts(109, 2, g.vertices().to_vec(), adj).unwrap_err();
        assert!(err.is_theorem_violation());
        let mut verts = g.vertices().to_vec();
        verts.swap(0, 1);
        assert!(IsogenyGraph::from_parts(109, 2, verts, g.adjacency().to_vec()).is_err());
    }
}
