//! Integer kernels, toric ideals and design matrices of undirected graphical
//! models.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::ci::{states, CiStatement};
use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::poly::{Monomial, Polynomial, Ring};
use crate::Rational;

/// Dense integer matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<BigInt>>,
}

impl IntMatrix {
    pub fn new(entries: Vec<Vec<BigInt>>) -> Result<Self> {
        let rows = entries.len();
        let cols = entries.first().map_or(0, |r| r.len());
        if entries.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("rows of unequal length".into()));
        }
        Ok(IntMatrix { rows, cols, entries })
    }

    pub fn from_i64(rows: &[Vec<i64>]) -> Result<Self> {
        Self::new(rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect())
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            entries: vec![vec![BigInt::zero(); cols]; rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i][i] = BigInt::one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i][j]
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i]
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        self.entries
            .iter()
            .map(|r| r.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for r in &self.entries {
            let line: Vec<String> = r.iter().map(|x| x.to_string()).collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
        out
    }
}

/// A basis of `ker_Z A`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeBasis {
    pub vectors: Vec<Vec<BigInt>>,
}

impl LatticeBasis {
    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn axpy(a: &mut [BigInt], q: &BigInt, b: &[BigInt]) {
    for (x, y) in a.iter_mut().zip(b) {
        *x -= q * y;
    }
}

/// Pairwise size reduction: subtract rounded projections while that shrinks
/// a vector.
fn size_reduce(vs: &mut [Vec<BigInt>]) {
    let two = BigInt::from(2);
    loop {
        let mut changed = false;
        for i in 0..vs.len() {
            for j in 0..vs.len() {
                if i == j {
                    continue;
                }
                let nj = dot(&vs[j], &vs[j]);
                let num = dot(&vs[i], &vs[j]);
                // q = round(num / nj)
                let q = (&num * &two + &nj).div_floor(&(&nj * &two));
                if q.is_zero() {
                    continue;
                }
                let mut cand = vs[i].clone();
                axpy(&mut cand, &q, &vs[j]);
                if dot(&cand, &cand) < dot(&vs[i], &vs[i]) {
                    vs[i] = cand;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
}

/// Basis of `{u ∈ Z^r : A u = 0}` by unimodular row reduction of `[Aᵀ | I]`.
pub fn integer_kernel(a: &IntMatrix) -> LatticeBasis {
    let (h, r) = (a.rows, a.cols);
    let mut m: Vec<Vec<BigInt>> = (0..r)
        .map(|j| {
            let mut row: Vec<BigInt> = (0..h).map(|i| a.entries[i][j].clone()).collect();
            row.extend((0..r).map(|k| if k == j { BigInt::one() } else { BigInt::zero() }));
            row
        })
        .collect();
    let mut pivot = 0;
    for c in 0..h {
        if pivot == r {
            break;
        }
        loop {
            // smallest nonzero |entry| in column c at or below the pivot row
            let best = (pivot..r)
                .filter(|&i| !m[i][c].is_zero())
                .min_by(|&x, &y| m[x][c].abs().cmp(&m[y][c].abs()));
            let Some(best) = best else { break };
            m.swap(pivot, best);
            let mut done = true;
            for i in pivot + 1..r {
                if m[i][c].is_zero() {
                    continue;
                }
                let q = m[i][c].div_floor(&m[pivot][c]);
                let (head, tail) = m.split_at_mut(i);
                axpy(&mut tail[0], &q, &head[pivot]);
                if !tail[0][c].is_zero() {
                    done = false;
                }
            }
            if done {
                pivot += 1;
                break;
            }
        }
    }
    let mut vectors: Vec<Vec<BigInt>> = m[pivot..].iter().map(|row| row[h..].to_vec()).collect();
    size_reduce(&mut vectors);
    for v in &mut vectors {
        if v.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
            for x in v.iter_mut() {
                *x = -&*x;
            }
        }
    }
    LatticeBasis { vectors }
}

/// `p^{u+} - p^{u-}` for an integer vector `u`.
pub fn lattice_binomial(ring: &Ring, u: &[BigInt]) -> Result<Polynomial> {
    let n = ring.nvars();
    if u.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "vector of length {} for a ring with {n} variables",
            u.len()
        )));
    }
    let exp = |x: &BigInt| {
        x.to_u32()
            .ok_or_else(|| Error::Unsupported("exponent too large".into()))
    };
    let mut plus = vec![0u32; n];
    let mut minus = vec![0u32; n];
    for (i, x) in u.iter().enumerate() {
        if x.is_positive() {
            plus[i] = exp(x)?;
        } else if x.is_negative() {
            minus[i] = exp(&-x)?;
        }
    }
    Ok(Polynomial::from_terms(
        ring,
        [
            (Rational::one(), Monomial::new(plus)),
            (-Rational::one(), Monomial::new(minus)),
        ],
    ))
}

/// The lattice ideal of `ker_Z A` saturated by the product of all variables,
/// one variable at a time.
pub fn toric_ideal(a: &IntMatrix, ring: &Ring) -> Result<Ideal> {
    if a.cols != ring.nvars() {
        return Err(Error::DimensionMismatch(format!(
            "matrix has {} columns, ring has {} variables",
            a.cols,
            ring.nvars()
        )));
    }
    let basis = integer_kernel(a);
    if basis.is_empty() {
        return Ok(Ideal::zero(ring));
    }
    let gens = basis
        .vectors
        .iter()
        .map(|u| lattice_binomial(ring, u))
        .collect::<Result<Vec<_>>>()?;
    let mut ideal = Ideal::new(ring, gens)?;
    for i in 0..ring.nvars() {
        ideal = ideal.saturate(&Polynomial::var_at(ring, i))?;
    }
    Ok(ideal)
}

/// A simple undirected graph on vertices `1..=m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UndirectedGraph {
    m: usize,
    edges: BTreeSet<(usize, usize)>,
}

/// JSON form: `{"vertices": 4, "edges": [[1,2],[2,3],[3,4],[1,4]]}`.
#[derive(Debug, Clone, Deserialize, Serialize)]
pub struct GraphSpec {
    pub vertices: usize,
    pub edges: Vec<[usize; 2]>,
}

impl GraphSpec {
    pub fn build(&self) -> Result<UndirectedGraph> {
        let edges: Vec<_> = self.edges.iter().map(|e| (e[0], e[1])).collect();
        UndirectedGraph::new(self.vertices, &edges)
    }
}

impl UndirectedGraph {
    pub fn new(m: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut set = BTreeSet::new();
        for &(u, v) in edges {
            if u == v {
                return Err(Error::InvalidGraph(format!("loop at vertex {u}")));
            }
            if u == 0 || v == 0 || u > m || v > m {
                return Err(Error::InvalidGraph(format!("edge {u}-{v} out of range 1..={m}")));
            }
            set.insert((u.min(v), u.max(v)));
        }
        Ok(UndirectedGraph { m, edges: set })
    }

    pub fn path(m: usize) -> Self {
        let edges: Vec<_> = (1..m).map(|i| (i, i + 1)).collect();
        Self::new(m, &edges).expect("valid path")
    }

    pub fn cycle(m: usize) -> Self {
        let mut edges: Vec<_> = (1..m).map(|i| (i, i + 1)).collect();
        edges.push((1, m));
        Self::new(m, &edges).expect("valid cycle")
    }

    pub fn complete(m: usize) -> Self {
        let edges: Vec<_> = (1..=m).flat_map(|i| (i + 1..=m).map(move |j| (i, j))).collect();
        Self::new(m, &edges).expect("valid complete graph")
    }

    pub fn vertices(&self) -> usize {
        self.m
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&(u.min(v), u.max(v)))
    }

    fn neighbors(&self, v: usize) -> BTreeSet<usize> {
        (1..=self.m).filter(|&u| u != v && self.adjacent(u, v)).collect()
    }

    /// Maximal cliques (Bron–Kerbosch with pivoting), each sorted, listed in
    /// lexicographic order.
    pub fn maximal_cliques(&self) -> Vec<Vec<usize>> {
        fn bk(
            g: &UndirectedGraph,
            r: &mut Vec<usize>,
            p: BTreeSet<usize>,
            mut x: BTreeSet<usize>,
            out: &mut Vec<Vec<usize>>,
        ) {
            if p.is_empty() && x.is_empty() {
                let mut c = r.clone();
                c.sort_unstable();
                out.push(c);
                return;
            }
            let pivot = p
                .union(&x)
                .max_by_key(|&&u| p.iter().filter(|&&v| g.adjacent(u, v)).count())
                .copied()
                .expect("nonempty");
            let candidates: Vec<usize> = p.iter().copied().filter(|&v| !g.adjacent(pivot, v)).collect();
            let mut p = p;
            for v in candidates {
                let nv = g.neighbors(v);
                r.push(v);
                bk(
                    g,
                    r,
                    p.intersection(&nv).copied().collect(),
                    x.intersection(&nv).copied().collect(),
                    out,
                );
                r.pop();
                p.remove(&v);
                x.insert(v);
            }
        }
        let mut out = Vec::new();
        bk(self, &mut Vec::new(), (1..=self.m).collect(), BTreeSet::new(), &mut out);
        out.sort();
        out
    }

    /// Perfect elimination test on a maximum-cardinality-search order.
    pub fn is_chordal(&self) -> bool {
        let n = self.m;
        let mut weight = vec![0usize; n + 1];
        let mut visited = vec![false; n + 1];
        let mut order = Vec::with_capacity(n);
        for _ in 0..n {
            let v = (1..=n)
                .filter(|&v| !visited[v])
                .max_by_key(|&v| (weight[v], std::cmp::Reverse(v)))
                .expect("unvisited vertex");
            visited[v] = true;
            order.push(v);
            for u in self.neighbors(v) {
                if !visited[u] {
                    weight[u] += 1;
                }
            }
        }
        let pos: Vec<usize> = {
            let mut p = vec![0; n + 1];
            for (i, &v) in order.iter().enumerate() {
                p[v] = i;
            }
            p
        };
        for &v in &order {
            let earlier: Vec<usize> = self
                .neighbors(v)
                .into_iter()
                .filter(|&u| pos[u] < pos[v])
                .collect();
            let Some(&parent) = earlier.iter().max_by_key(|&&u| pos[u]) else {
                continue;
            };
            for &u in &earlier {
                if u != parent && !self.adjacent(u, parent) {
                    return false;
                }
            }
        }
        true
    }

    /// Global Markov statements for the graphs with a known list: the path
    /// 1-2-3 and the four-cycle 1-2-3-4-1.
    pub fn global_markov_statements(&self) -> Result<Vec<CiStatement>> {
        if *self == Self::path(3) {
            Ok(vec![CiStatement::new(&[1], &[3], &[2])])
        } else if *self == Self::cycle(4) {
            Ok(vec![
                CiStatement::new(&[1], &[3], &[2, 4]),
                CiStatement::new(&[2], &[4], &[1, 3]),
            ])
        } else {
            Err(Error::Unsupported(
                "global Markov statements are only tabulated for the path 1-2-3 and the four-cycle".into(),
            ))
        }
    }
}

/// 0/1 matrix with a row per (maximal clique, clique cell) and a column per
/// joint state, both in row-major order.
pub fn design_matrix(g: &UndirectedGraph, sizes: &[usize]) -> Result<IntMatrix> {
    if sizes.len() != g.m {
        return Err(Error::DimensionMismatch(format!(
            "{} sizes for a graph with {} vertices",
            sizes.len(),
            g.m
        )));
    }
    let columns = states(sizes);
    let mut rows = Vec::new();
    for clique in g.maximal_cliques() {
        let csizes: Vec<usize> = clique.iter().map(|&v| sizes[v - 1]).collect();
        for cell in states(&csizes) {
            rows.push(
                columns
                    .iter()
                    .map(|s| {
                        let hit = clique.iter().zip(&cell).all(|(&v, &x)| s[v - 1] == x);
                        BigInt::from(hit as i64)
                    })
                    .collect(),
            );
        }
    }
    IntMatrix::new(rows)
}
