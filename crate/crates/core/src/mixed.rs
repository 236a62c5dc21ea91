//! Mixed graphs, treks, the trek rule and t-separation for linear structural
//! equation models.
//!
//! Parameters live in one ring: `l_i_j` for each directed edge `i -> j`,
//! `w_i_i` for every vertex and `w_i_j` (`i < j`) for each bidirected edge.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::ci::subsets;
use crate::error::{Error, Result};
use crate::poly::{determinant, mat_mul, transpose, MonomialOrder, Polynomial, Ring, RingContext};

/// Directed edges `i -> j` and bidirected edges `i <-> j` on `1..=m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MixedGraph {
    m: usize,
    directed: BTreeSet<(usize, usize)>,
    bidirected: BTreeSet<(usize, usize)>,
}

/// JSON form: `{"vertices":4, "directed":[[1,2]], "bidirected":[[3,4]]}`.
#[derive(Debug, Clone, Default, Deserialize, Serialize)]
pub struct MixedGraphSpec {
    pub vertices: usize,
    #[serde(default)]
    pub directed: Vec<[usize; 2]>,
    #[serde(default)]
    pub bidirected: Vec<[usize; 2]>,
}

impl MixedGraphSpec {
    pub fn build(&self) -> Result<MixedGraph> {
        let d: Vec<_> = self.directed.iter().map(|e| (e[0], e[1])).collect();
        let b: Vec<_> = self.bidirected.iter().map(|e| (e[0], e[1])).collect();
        MixedGraph::new(self.vertices, &d, &b)
    }
}

impl MixedGraph {
    pub fn new(m: usize, directed: &[(usize, usize)], bidirected: &[(usize, usize)]) -> Result<Self> {
        let check = |u: usize, v: usize| {
            if u == v {
                Err(Error::InvalidGraph(format!("self-loop at vertex {u}")))
            } else if u == 0 || v == 0 || u > m || v > m {
                Err(Error::InvalidGraph(format!("edge {u}-{v} out of range 1..={m}")))
            } else {
                Ok(())
            }
        };
        for &(u, v) in directed.iter().chain(bidirected) {
            check(u, v)?;
        }
        let g = MixedGraph {
            m,
            directed: directed.iter().copied().collect(),
            bidirected: bidirected.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect(),
        };
        if let Some(v) = g.find_cycle_vertex() {
            return Err(Error::CyclicGraph(v));
        }
        Ok(g)
    }

    /// The example graph 1->2, 1->3, 2->3, 3->4, 3<->4.
    pub fn figure_one() -> Self {
        Self::new(4, &[(1, 2), (1, 3), (2, 3), (3, 4)], &[(3, 4)]).expect("acyclic")
    }

    pub fn vertices(&self) -> usize {
        self.m
    }

    pub fn directed(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.directed.iter().copied()
    }

    pub fn bidirected(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.bidirected.iter().copied()
    }

    fn has_bidirected(&self, u: usize, v: usize) -> bool {
        self.bidirected.contains(&(u.min(v), u.max(v)))
    }

    fn parents(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.directed.iter().filter(move |e| e.1 == v).map(|e| e.0)
    }

    fn find_cycle_vertex(&self) -> Option<usize> {
        // Kahn's algorithm; any vertex left over lies on or below a cycle
        let mut indeg = vec![0usize; self.m + 1];
        for &(_, v) in &self.directed {
            indeg[v] += 1;
        }
        let mut stack: Vec<usize> = (1..=self.m).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(u) = stack.pop() {
            seen += 1;
            for &(a, b) in &self.directed {
                if a == u {
                    indeg[b] -= 1;
                    if indeg[b] == 0 {
                        stack.push(b);
                    }
                }
            }
        }
        (seen < self.m).then(|| (1..=self.m).find(|&v| indeg[v] > 0).expect("cycle vertex"))
    }

    /// All directed paths ending at `v`, as vertex lists from source to `v`,
    /// including the trivial path `[v]`.
    pub fn paths_into(&self, v: usize) -> Vec<Vec<usize>> {
        let mut out = vec![vec![v]];
        for p in self.parents(v) {
            for mut path in self.paths_into(p) {
                path.push(v);
                out.push(path);
            }
        }
        out
    }
}

/// How the two sides of a trek are joined at the top.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub enum TrekSource {
    Common(usize),
    Bidirected(usize, usize),
}

/// A pair of directed paths `(P_L, P_R)` ending at `i` and `j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Trek {
    pub left: Vec<usize>,
    pub right: Vec<usize>,
    pub source: TrekSource,
}

fn path_edges(p: &[usize]) -> impl Iterator<Item = (usize, usize)> + '_ {
    p.windows(2).map(|w| (w[0], w[1]))
}

/// All treks from `i` to `j`.
pub fn enumerate_treks(g: &MixedGraph, i: usize, j: usize) -> Vec<Trek> {
    let lefts = g.paths_into(i);
    let rights = g.paths_into(j);
    let mut out = Vec::new();
    for l in &lefts {
        for r in &rights {
            let (s, t) = (l[0], r[0]);
            let source = if s == t {
                TrekSource::Common(s)
            } else if g.has_bidirected(s, t) {
                TrekSource::Bidirected(s.min(t), s.max(t))
            } else {
                continue;
            };
            out.push(Trek {
                left: l.clone(),
                right: r.clone(),
                source,
            });
        }
    }
    out
}

/// The parameter ring of a mixed graph.
#[derive(Debug, Clone)]
pub struct SemParameters {
    ring: Ring,
}

pub fn lambda_name(i: usize, j: usize) -> String {
    format!("l_{i}_{j}")
}

pub fn omega_name(i: usize, j: usize) -> String {
    format!("w_{}_{}", i.min(j), i.max(j))
}

impl SemParameters {
    pub fn new(g: &MixedGraph) -> Self {
        let mut names: Vec<String> = g.directed().map(|(i, j)| lambda_name(i, j)).collect();
        names.extend((1..=g.m).map(|i| omega_name(i, i)));
        names.extend(g.bidirected().map(|(i, j)| omega_name(i, j)));
        let ring = RingContext::new(&names, MonomialOrder::Grevlex).expect("distinct parameter names");
        SemParameters { ring }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn lambda(&self, i: usize, j: usize) -> Polynomial {
        Polynomial::var(&self.ring, &lambda_name(i, j)).expect("directed edge")
    }

    pub fn omega(&self, i: usize, j: usize) -> Polynomial {
        Polynomial::var(&self.ring, &omega_name(i, j)).expect("diagonal or bidirected edge")
    }
}

pub fn trek_monomial(t: &Trek, params: &SemParameters) -> Polynomial {
    let mut m = match t.source {
        TrekSource::Common(s) => params.omega(s, s),
        TrekSource::Bidirected(s, u) => params.omega(s, u),
    };
    for (a, b) in path_edges(&t.left).chain(path_edges(&t.right)) {
        m = &m * &params.lambda(a, b);
    }
    m
}

/// `σ_ij` as the sum of trek monomials over all treks from `i` to `j`.
pub fn sigma_trek_rule(g: &MixedGraph, params: &SemParameters, i: usize, j: usize) -> Polynomial {
    enumerate_treks(g, i, j)
        .iter()
        .fold(Polynomial::zero(params.ring()), |acc, t| &acc + &trek_monomial(t, params))
}

/// `Σ = (I - Λ)^{-T} Ω (I - Λ)^{-1}` with the inverse expanded as the finite
/// sum `Σ_k Λ^k`. Rows and columns are 0-based.
pub fn sigma_matrix_formula(g: &MixedGraph, params: &SemParameters) -> Vec<Vec<Polynomial>> {
    let ring = params.ring();
    let m = g.m;
    let zero = || vec![vec![Polynomial::zero(ring); m]; m];
    let mut lambda = zero();
    for (i, j) in g.directed() {
        lambda[i - 1][j - 1] = params.lambda(i, j);
    }
    let mut omega = zero();
    for i in 1..=m {
        omega[i - 1][i - 1] = params.omega(i, i);
    }
    for (i, j) in g.bidirected() {
        omega[i - 1][j - 1] = params.omega(i, j);
        omega[j - 1][i - 1] = params.omega(i, j);
    }
    let mut power = zero();
    for (i, row) in power.iter_mut().enumerate() {
        row[i] = Polynomial::one(ring);
    }
    let mut inverse = power.clone();
    for _ in 1..m {
        power = mat_mul(ring, &power, &lambda);
        for (r, p) in inverse.iter_mut().zip(&power) {
            for (x, y) in r.iter_mut().zip(p) {
                *x = &*x + y;
            }
        }
    }
    mat_mul(ring, &mat_mul(ring, &transpose(&inverse), &omega), &inverse)
}

/// Whether `(c_a, c_b)` t-separates `a` from `b`: every trek between them has
/// a left-path vertex in `c_a` or a right-path vertex in `c_b`.
pub fn t_separates(g: &MixedGraph, c_a: &[usize], c_b: &[usize], a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|&i| {
        b.iter().all(|&j| {
            enumerate_treks(g, i, j).iter().all(|t| {
                t.left.iter().any(|v| c_a.contains(v)) || t.right.iter().any(|v| c_b.contains(v))
            })
        })
    })
}

/// Smallest `(C_A, C_B)` with `|C_A| + |C_B| < |A|` that t-separates `A` from
/// `B`; ties broken by `|C_A|`, then lexicographically.
pub fn find_tsep_certificate(g: &MixedGraph, a: &[usize], b: &[usize]) -> Result<Option<(Vec<usize>, Vec<usize>)>> {
    validate_sets(g, a, b)?;
    let verts: Vec<usize> = (1..=g.m).collect();
    for total in 0..a.len() {
        for na in 0..=total {
            for ca in subsets(&verts, na) {
                for cb in subsets(&verts, total - na) {
                    if t_separates(g, &ca, &cb, a, b) {
                        return Ok(Some((ca, cb)));
                    }
                }
            }
        }
    }
    Ok(None)
}

fn validate_sets(g: &MixedGraph, a: &[usize], b: &[usize]) -> Result<()> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch(format!(
            "|A| = {} but |B| = {}",
            a.len(),
            b.len()
        )));
    }
    for s in [a, b] {
        let set: BTreeSet<_> = s.iter().collect();
        if set.len() != s.len() {
            return Err(Error::InvalidStatement("repeated vertex".into()));
        }
        if let Some(v) = s.iter().find(|&&v| v == 0 || v > g.m) {
            return Err(Error::InvalidStatement(format!("vertex {v} out of range")));
        }
    }
    Ok(())
}

/// `det Σ_{A,B}` from the matrix formula.
pub fn sigma_minor(g: &MixedGraph, params: &SemParameters, a: &[usize], b: &[usize]) -> Result<Polynomial> {
    validate_sets(g, a, b)?;
    let sigma = sigma_matrix_formula(g, params);
    let sub: Vec<Vec<Polynomial>> = a
        .iter()
        .map(|&i| b.iter().map(|&j| sigma[i - 1][j - 1].clone()).collect())
        .collect();
    Ok(determinant(params.ring(), &sub))
}

/// Whether `det Σ_{A,B}` is identically zero.
pub fn check_vanishing_minor(g: &MixedGraph, a: &[usize], b: &[usize]) -> Result<bool> {
    Ok(sigma_minor(g, &SemParameters::new(g), a, b)?.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_polynomial;
    use proptest::prelude::*;

    fn p(params: &SemParameters, s: &str) -> Polynomial {
        parse_polynomial(s, params.ring()).unwrap()
    }

    #[test]
    fn rejects_bad_graphs() {
        assert!(matches!(
            MixedGraph::new(3, &[(1, 2), (2, 3), (3, 1)], &[]),
            Err(Error::CyclicGraph(_))
        ));
        assert!(MixedGraph::new(2, &[(1, 1)], &[]).is_err());
        assert!(MixedGraph::new(2, &[], &[(2, 2)]).is_err());
        assert!(MixedGraph::new(2, &[(1, 3)], &[]).is_err());
        // both edge types on one pair are allowed
        assert!(MixedGraph::new(2, &[(1, 2)], &[(2, 1)]).is_ok());
    }

    #[test]
    fn figure_one_treks() {
        let g = MixedGraph::figure_one();
        let treks = enumerate_treks(&g, 3, 3);
        assert!(treks.contains(&Trek {
            left: vec![1, 2, 3],
            right: vec![1, 3],
            source: TrekSource::Common(1),
        }));
        let params = SemParameters::new(&g);
        let t = Trek {
            left: vec![1, 2, 3],
            right: vec![1, 3],
            source: TrekSource::Common(1),
        };
        assert_eq!(trek_monomial(&t, &params), p(&params, "w_1_1*l_1_2*l_2_3*l_1_3"));
        let bi = Trek {
            left: vec![3],
            right: vec![4],
            source: TrekSource::Bidirected(3, 4),
        };
        assert!(enumerate_treks(&g, 3, 4).contains(&bi));
        assert_eq!(trek_monomial(&bi, &params), p(&params, "w_3_4"));
        let distinct: BTreeSet<_> = treks.iter().map(|t| format!("{t:?}")).collect();
        assert_eq!(distinct.len(), treks.len());
        assert_eq!(sigma_trek_rule(&g, &params, 1, 2), p(&params, "w_1_1*l_1_2"));
    }

    #[test]
    fn trivial_graphs() {
        let g = MixedGraph::new(2, &[], &[]).unwrap();
        assert!(enumerate_treks(&g, 1, 2).is_empty());
        let single = MixedGraph::new(1, &[], &[]).unwrap();
        assert_eq!(
            enumerate_treks(&single, 1, 1),
            vec![Trek {
                left: vec![1],
                right: vec![1],
                source: TrekSource::Common(1)
            }]
        );
        let params = SemParameters::new(&g);
        assert!(sigma_trek_rule(&g, &params, 1, 2).is_zero());
        assert_eq!(sigma_trek_rule(&g, &params, 2, 2), p(&params, "w_2_2"));
        let sigma = sigma_matrix_formula(&g, &params);
        assert_eq!(sigma[0][0], p(&params, "w_1_1"));
        assert!(sigma[0][1].is_zero());
    }

    #[test]
    fn single_edge_sigma() {
        let g = MixedGraph::new(2, &[(1, 2)], &[]).unwrap();
        let params = SemParameters::new(&g);
        let sigma = sigma_matrix_formula(&g, &params);
        assert_eq!(sigma[1][1], p(&params, "w_2_2 + w_1_1*l_1_2^2"));
        assert_eq!(sigma[0][1], p(&params, "w_1_1*l_1_2"));
    }

    #[test]
    fn figure_one_sigma_matches_trek_rule() {
        let g = MixedGraph::figure_one();
        let params = SemParameters::new(&g);
        let sigma = sigma_matrix_formula(&g, &params);
        for i in 1..=4 {
            for j in 1..=4 {
                assert_eq!(sigma[i - 1][j - 1], sigma_trek_rule(&g, &params, i, j), "({i},{j})");
            }
        }
    }

    #[test]
    fn figure_one_separation() {
        let g = MixedGraph::figure_one();
        assert!(t_separates(&g, &[], &[3], &[1, 2], &[3, 4]));
        assert!(!t_separates(&g, &[], &[], &[1, 2], &[3, 4]));
        assert!(t_separates(&g, &[1, 2], &[], &[1, 2], &[3, 4]));
        assert_eq!(
            find_tsep_certificate(&g, &[1, 2], &[3, 4]).unwrap(),
            Some((vec![], vec![3]))
        );
        assert!(check_vanishing_minor(&g, &[1, 2], &[3, 4]).unwrap());
    }

    #[test]
    fn small_certificates() {
        let g = MixedGraph::new(2, &[(1, 2)], &[]).unwrap();
        assert_eq!(find_tsep_certificate(&g, &[1], &[2]).unwrap(), None);
        assert!(!check_vanishing_minor(&g, &[1], &[2]).unwrap());
        assert!(!check_vanishing_minor(&g, &[2], &[2]).unwrap());
        let h = MixedGraph::new(2, &[], &[]).unwrap();
        assert_eq!(find_tsep_certificate(&h, &[1], &[2]).unwrap(), Some((vec![], vec![])));
        assert!(find_tsep_certificate(&h, &[1], &[1, 2]).is_err());
    }

    fn arb_graph(max: usize) -> impl Strategy<Value = MixedGraph> {
        (1..=max).prop_flat_map(|m| {
            let pairs: Vec<(usize, usize)> = (1..=m).flat_map(|i| (i + 1..=m).map(move |j| (i, j))).collect();
            let n = pairs.len();
            (
                Just(pairs),
                proptest::collection::vec(0u8..3, n),
                proptest::collection::vec(0u8..4, n),
                Just((1..=m).collect::<Vec<_>>()).prop_shuffle(),
            )
                .prop_map(move |(pairs, d, b, perm)| {
                    let mut dir = Vec::new();
                    let mut bi = Vec::new();
                    for (k, &(i, j)) in pairs.iter().enumerate() {
                        if d[k] == 0 {
                            dir.push((perm[i - 1], perm[j - 1]));
                        }
                        if b[k] == 0 {
                            bi.push((perm[i - 1], perm[j - 1]));
                        }
                    }
                    MixedGraph::new(m, &dir, &bi).unwrap()
                })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]
        #[test]
        fn trek_rule_matches_matrix_formula(g in arb_graph(6)) {
            let params = SemParameters::new(&g);
            let sigma = sigma_matrix_formula(&g, &params);
            for i in 1..=g.vertices() {
                for j in 1..=g.vertices() {
                    prop_assert_eq!(&sigma[i - 1][j - 1], &sigma_trek_rule(&g, &params, i, j));
                    prop_assert_eq!(&sigma[i - 1][j - 1], &sigma[j - 1][i - 1]);
                }
            }
        }

        #[test]
        fn separation_is_monotone(g in arb_graph(5), extra in 1usize..6) {
            let m = g.vertices();
            let a: Vec<usize> = vec![1];
            let b: Vec<usize> = vec![m];
            if let Some((ca, cb)) = find_tsep_certificate(&g, &a, &b).unwrap() {
                let mut ca2 = ca.clone();
                let mut cb2 = cb.clone();
                let v = (extra - 1) % m + 1;
                ca2.push(v);
                cb2.push(v);
                prop_assert!(t_separates(&g, &ca2, &cb, &a, &b));
                prop_assert!(t_separates(&g, &ca, &cb2, &a, &b));
            }
        }
    }
}
