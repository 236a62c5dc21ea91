//! Conditional independence ideals for discrete and Gaussian models.
//!
//! Variable naming: a discrete joint state `(i_1, ..., i_m)` is the variable
//! `p_i1i2...im` (indices joined by `_` if any state space has 10 or more
//! states); a covariance entry is `s_i_j` with `i <= j`. All indices are
//! 1-based.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::poly::{determinant, MonomialOrder, Polynomial, Ring, RingContext};

/// A statement `A ⊥ B | C` on variables `1..=m`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CiStatement {
    #[serde(rename = "A")]
    pub a: Vec<usize>,
    #[serde(rename = "B")]
    pub b: Vec<usize>,
    #[serde(rename = "C", default)]
    pub c: Vec<usize>,
}

impl CiStatement {
    pub fn new(a: &[usize], b: &[usize], c: &[usize]) -> Self {
        let sorted = |v: &[usize]| {
            let mut v = v.to_vec();
            v.sort_unstable();
            v.dedup();
            v
        };
        CiStatement {
            a: sorted(a),
            b: sorted(b),
            c: sorted(c),
        }
    }

    pub fn validate(&self, m: usize) -> Result<()> {
        if self.a.is_empty() || self.b.is_empty() {
            return Err(Error::InvalidStatement("A and B must be nonempty".into()));
        }
        let mut seen = BTreeSet::new();
        for &v in self.a.iter().chain(&self.b).chain(&self.c) {
            if v == 0 || v > m {
                return Err(Error::InvalidStatement(format!(
                    "index {v} out of range 1..={m}"
                )));
            }
            if !seen.insert(v) {
                return Err(Error::InvalidStatement(format!(
                    "index {v} appears in more than one of A, B, C"
                )));
            }
        }
        Ok(())
    }

    /// `D = [m] \ (A ∪ B ∪ C)`.
    pub fn marginalized(&self, m: usize) -> Vec<usize> {
        (1..=m)
            .filter(|v| !self.a.contains(v) && !self.b.contains(v) && !self.c.contains(v))
            .collect()
    }

    pub fn swapped(&self) -> Self {
        CiStatement {
            a: self.b.clone(),
            b: self.a.clone(),
            c: self.c.clone(),
        }
    }
}

impl std::fmt::Display for CiStatement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let set = |v: &[usize]| {
            v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
        };
        write!(f, "{{{}}} _||_ {{{}}}", set(&self.a), set(&self.b))?;
        if !self.c.is_empty() {
            write!(f, " | {{{}}}", set(&self.c))?;
        }
        Ok(())
    }
}

/// Models that compile CI statements into ideals.
pub trait CiModel {
    fn ring(&self) -> &Ring;
    fn num_variables(&self) -> usize;
    fn ci_ideal(&self, stmt: &CiStatement) -> Result<Ideal>;

    /// Sum of the CI ideals of all statements; the zero ideal for none.
    fn ci_collection_ideal(&self, stmts: &[CiStatement]) -> Result<Ideal> {
        let mut gens = Vec::new();
        for s in stmts {
            gens.extend(self.ci_ideal(s)?.generators().iter().cloned());
        }
        Ideal::new(self.ring(), gens)
    }
}

/// Discrete random variables with state spaces `[r_1], ..., [r_m]`.
#[derive(Debug, Clone)]
pub struct DiscreteModel {
    sizes: Vec<usize>,
    ring: Ring,
}

/// Row-major enumeration (last index fastest) of all states, 1-based.
pub fn states(sizes: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::with_capacity(sizes.len())];
    for &r in sizes {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (1..=r).map(move |i| {
                    let mut s = prefix.clone();
                    s.push(i);
                    s
                })
            })
            .collect();
    }
    out
}

/// Position of a state in the row-major enumeration.
pub fn state_index(sizes: &[usize], state: &[usize]) -> usize {
    state
        .iter()
        .zip(sizes)
        .fold(0, |acc, (&i, &r)| acc * r + (i - 1))
}

pub fn probability_variable_name(sizes: &[usize], state: &[usize]) -> String {
    let sep = if sizes.iter().any(|&r| r >= 10) { "_" } else { "" };
    let idx: Vec<String> = state.iter().map(|i| i.to_string()).collect();
    format!("p_{}", idx.join(sep))
}

impl DiscreteModel {
    pub fn new(sizes: &[usize]) -> Result<Self> {
        if sizes.is_empty() {
            return Err(Error::InvalidModel("no random variables".into()));
        }
        if let Some(r) = sizes.iter().find(|&&r| r < 2) {
            return Err(Error::InvalidModel(format!(
                "state spaces need at least 2 states, got {r}"
            )));
        }
        let names: Vec<String> = states(sizes)
            .iter()
            .map(|s| probability_variable_name(sizes, s))
            .collect();
        let ring = RingContext::new(&names, MonomialOrder::Grevlex)?;
        Ok(DiscreteModel {
            sizes: sizes.to_vec(),
            ring,
        })
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    /// The variable `p_state`.
    pub fn variable(&self, state: &[usize]) -> Polynomial {
        Polynomial::var_at(&self.ring, state_index(&self.sizes, state))
    }

    fn sizes_of(&self, vars: &[usize]) -> Vec<usize> {
        vars.iter().map(|&v| self.sizes[v - 1]).collect()
    }

    /// `p_{i_A, i_B, i_C, +}`: the sum over all states of `D`.
    fn marginal(&self, stmt: &CiStatement, d: &[usize], ia: &[usize], ib: &[usize], ic: &[usize]) -> Polynomial {
        let mut acc = Polynomial::zero(&self.ring);
        for id in states(&self.sizes_of(d)) {
            let mut full = vec![0; self.sizes.len()];
            for (vars, vals) in [(&stmt.a, ia), (&stmt.b, ib), (&stmt.c, ic), (&d.to_vec(), &id[..])] {
                for (&v, &x) in vars.iter().zip(vals) {
                    full[v - 1] = x;
                }
            }
            acc = &acc + &self.variable(&full);
        }
        acc
    }
}

/// The Markov ring of a discrete model.
pub fn markov_ring(model: &DiscreteModel) -> &Ring {
    &model.ring
}

impl CiModel for DiscreteModel {
    fn ring(&self) -> &Ring {
        &self.ring
    }

    fn num_variables(&self) -> usize {
        self.sizes.len()
    }

    /// 2x2 minors of the `R_A x R_B` matrix of `D`-marginals, one matrix per
    /// state of `C`; enumeration is `i_C`, then row pairs, then column pairs.
    fn ci_ideal(&self, stmt: &CiStatement) -> Result<Ideal> {
        stmt.validate(self.sizes.len())?;
        let d = stmt.marginalized(self.sizes.len());
        let ra = states(&self.sizes_of(&stmt.a));
        let rb = states(&self.sizes_of(&stmt.b));
        let rc = states(&self.sizes_of(&stmt.c));
        let mut gens = Vec::new();
        for ic in &rc {
            let m: Vec<Vec<Polynomial>> = ra
                .iter()
                .map(|ia| rb.iter().map(|ib| self.marginal(stmt, &d, ia, ib, ic)).collect())
                .collect();
            for i in 0..ra.len() {
                for j in i + 1..ra.len() {
                    for k in 0..rb.len() {
                        for l in k + 1..rb.len() {
                            let minor = &(&m[i][k] * &m[j][l]) - &(&m[i][l] * &m[j][k]);
                            gens.push(minor);
                        }
                    }
                }
            }
        }
        Ideal::new(&self.ring, gens)
    }
}

/// Jointly Gaussian variables `X_1..X_m` with symmetric covariance matrix.
#[derive(Debug, Clone)]
pub struct GaussianContext {
    m: usize,
    ring: Ring,
}

pub fn covariance_variable_name(i: usize, j: usize) -> String {
    let (i, j) = if i <= j { (i, j) } else { (j, i) };
    format!("s_{i}_{j}")
}

/// All `k`-subsets of `items` in lexicographic order.
pub fn subsets<T: Clone>(items: &[T], k: usize) -> Vec<Vec<T>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if items.len() < k {
        return Vec::new();
    }
    let mut out = Vec::new();
    for (i, x) in items.iter().enumerate() {
        for mut rest in subsets(&items[i + 1..], k - 1) {
            rest.insert(0, x.clone());
            out.push(rest);
        }
    }
    out
}

impl GaussianContext {
    pub fn new(m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidModel("no random variables".into()));
        }
        let names: Vec<String> = (1..=m)
            .flat_map(|i| (i..=m).map(move |j| covariance_variable_name(i, j)))
            .collect();
        let ring = RingContext::new(&names, MonomialOrder::Grevlex)?;
        Ok(GaussianContext { m, ring })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// `σ_ij`, with `σ_ji` folded onto it.
    pub fn sigma(&self, i: usize, j: usize) -> Polynomial {
        Polynomial::var(&self.ring, &covariance_variable_name(i, j)).expect("index in range")
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Vec<Vec<Polynomial>> {
        rows.iter()
            .map(|&i| cols.iter().map(|&j| self.sigma(i, j)).collect())
            .collect()
    }

    /// One `(#C+1)`-minor per pair `(a, b)`: `det Σ_{{a}∪C, {b}∪C}`.
    pub fn alt_gaussian_generators(&self, stmt: &CiStatement) -> Result<Ideal> {
        stmt.validate(self.m)?;
        let mut gens = Vec::new();
        for &a in &stmt.a {
            for &b in &stmt.b {
                let mut rows = vec![a];
                rows.extend(&stmt.c);
                rows.sort_unstable();
                let mut cols = vec![b];
                cols.extend(&stmt.c);
                cols.sort_unstable();
                gens.push(determinant(&self.ring, &self.submatrix(&rows, &cols)));
            }
        }
        Ideal::new(&self.ring, gens)
    }
}

impl CiModel for GaussianContext {
    fn ring(&self) -> &Ring {
        &self.ring
    }

    fn num_variables(&self) -> usize {
        self.m
    }

    /// All `(#C+1)`-minors of `Σ_{A∪C, B∪C}`, row subsets then column
    /// subsets in lexicographic order.
    fn ci_ideal(&self, stmt: &CiStatement) -> Result<Ideal> {
        stmt.validate(self.m)?;
        let mut rows: Vec<usize> = stmt.a.iter().chain(&stmt.c).copied().collect();
        rows.sort_unstable();
        let mut cols: Vec<usize> = stmt.b.iter().chain(&stmt.c).copied().collect();
        cols.sort_unstable();
        let k = stmt.c.len() + 1;
        let mut gens = Vec::new();
        for rs in subsets(&rows, k) {
            for cs in subsets(&cols, k) {
                gens.push(determinant(&self.ring, &self.submatrix(&rs, &cs)));
            }
        }
        Ideal::new(&self.ring, gens)
    }
}

/// JSON model descriptor: `{"type":"discrete","sizes":[2,2,2]}` or
/// `{"type":"gaussian","m":4}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum ModelSpec {
    Discrete { sizes: Vec<usize> },
    Gaussian { m: usize },
}

/// A built model of either kind.
#[derive(Debug, Clone)]
pub enum Model {
    Discrete(DiscreteModel),
    Gaussian(GaussianContext),
}

impl ModelSpec {
    pub fn build(&self) -> Result<Model> {
        match self {
            ModelSpec::Discrete { sizes } => Ok(Model::Discrete(DiscreteModel::new(sizes)?)),
            ModelSpec::Gaussian { m } => Ok(Model::Gaussian(GaussianContext::new(*m)?)),
        }
    }
}

impl CiModel for Model {
    fn ring(&self) -> &Ring {
        match self {
            Model::Discrete(d) => d.ring(),
            Model::Gaussian(g) => g.ring(),
        }
    }

    fn num_variables(&self) -> usize {
        match self {
            Model::Discrete(d) => d.num_variables(),
            Model::Gaussian(g) => g.num_variables(),
        }
    }

    fn ci_ideal(&self, stmt: &CiStatement) -> Result<Ideal> {
        match self {
            Model::Discrete(d) => d.ci_ideal(stmt),
            Model::Gaussian(g) => g.ci_ideal(stmt),
        }
    }
}
