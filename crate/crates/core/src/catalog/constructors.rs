use std::collections::BTreeSet;

use super::{DecompositionClaim, Expectation};
use crate::ci::{states, CiModel, CiStatement, DiscreteModel, GaussianContext};
use crate::error::Result;
use crate::ideal::Ideal;
use crate::poly::{parse_polynomial, MonomialOrder, Polynomial, Ring, RingContext};
use crate::toric::{design_matrix, toric_ideal, UndirectedGraph};

fn st(a: &[usize], b: &[usize], c: &[usize]) -> CiStatement {
    CiStatement::new(a, b, c)
}

pub fn gaussoid_binary_claim() -> Result<DecompositionClaim> {
    let m = DiscreteModel::new(&[2, 2, 2])?;
    Ok(DecompositionClaim {
        name: "gaussoid-binary".into(),
        target: m.ci_collection_ideal(&[st(&[1], &[3], &[2]), st(&[1], &[3], &[])])?,
        components: vec![
            ("I(12_||_3)".into(), m.ci_ideal(&st(&[1, 2], &[3], &[]))?),
            ("I(1_||_23)".into(), m.ci_ideal(&st(&[1], &[2, 3], &[]))?),
        ],
        expectation: Expectation::Radical,
    })
}

pub fn gaussoid_gaussian_claim() -> Result<DecompositionClaim> {
    let g = GaussianContext::new(3)?;
    Ok(DecompositionClaim {
        name: "gaussoid-gaussian".into(),
        target: g.ci_collection_ideal(&[st(&[1], &[3], &[2]), st(&[1], &[3], &[])])?,
        components: vec![
            ("J(1_||_23)".into(), g.ci_ideal(&st(&[1], &[2, 3], &[]))?),
            ("J(12_||_3)".into(), g.ci_ideal(&st(&[1, 2], &[3], &[]))?),
        ],
        expectation: Expectation::Radical,
    })
}

pub fn contraction_gaussian_claim() -> Result<DecompositionClaim> {
    let g = GaussianContext::new(3)?;
    let ring = g.ring();
    Ok(DecompositionClaim {
        name: "contraction-gaussian".into(),
        target: g.ci_collection_ideal(&[st(&[1], &[2], &[3]), st(&[2], &[3], &[])])?,
        components: vec![
            ("J(13_||_2)".into(), g.ci_ideal(&st(&[1, 3], &[2], &[]))?),
            ("<s33, s23>".into(), Ideal::parse("s_3_3, s_2_3", ring)?),
        ],
        expectation: Expectation::Radical,
    })
}

pub fn contraction_binary_claim() -> Result<DecompositionClaim> {
    let m = DiscreteModel::new(&[2, 2, 2])?;
    let ring = m.ring();
    Ok(DecompositionClaim {
        name: "contraction-binary".into(),
        target: m.ci_collection_ideal(&[st(&[1], &[2], &[3]), st(&[2], &[3], &[])])?,
        components: vec![
            ("I(13_||_2)".into(), m.ci_ideal(&st(&[1, 3], &[2], &[]))?),
            (
                "Q2".into(),
                Ideal::parse("p_122 + p_222, p_112 + p_212, p_121*p_211 - p_111*p_221", ring)?,
            ),
            (
                "Q3".into(),
                Ideal::parse("p_121 + p_221, p_111 + p_211, p_122*p_212 - p_112*p_222", ring)?,
            ),
        ],
        expectation: Expectation::Radical,
    })
}

/// Set partitions of `1..=n`, blocks ordered by their minimum.
pub fn set_partitions(n: usize) -> Vec<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    fn go(k: usize, n: usize, cur: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        if k > n {
            out.push(cur.clone());
            return;
        }
        for b in 0..cur.len() {
            cur[b].push(k);
            go(k + 1, n, cur, out);
            cur[b].pop();
        }
        cur.push(vec![k]);
        go(k + 1, n, cur, out);
        cur.pop();
    }
    go(1, n, &mut Vec::new(), &mut out);
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

/// A pair of partitions of `[r2]` and `[r3]` with matched blocks: block `j`
/// of the first is paired with block `j` of the second.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionPair {
    pub left: Vec<Vec<usize>>,
    pub right: Vec<Vec<usize>>,
}

impl std::fmt::Display for PartitionPair {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let show = |p: &[Vec<usize>]| {
            p.iter()
                .map(|b| b.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
                .collect::<Vec<_>>()
                .join("|")
        };
        write!(f, "P[{} ; {}]", show(&self.left), show(&self.right))
    }
}

/// All matched partition pairs, left blocks ordered by minimum.
pub fn partition_pairs(r2: usize, r3: usize) -> Vec<PartitionPair> {
    let lefts = set_partitions(r2);
    let rights = set_partitions(r3);
    let mut out = Vec::new();
    for s in 1..=r2.min(r3) {
        for l in lefts.iter().filter(|p| p.len() == s) {
            for r in rights.iter().filter(|p| p.len() == s) {
                for perm in permutations(s) {
                    out.push(PartitionPair {
                        left: l.clone(),
                        right: perm.iter().map(|&k| r[k].clone()).collect(),
                    });
                }
            }
        }
    }
    out
}

/// The prime of a partition pair: variables with `i2`, `i3` in unmatched
/// blocks, plus the 2x2 minors of the `r1 x (A_j x B_j)` flattenings.
pub fn partition_pair_prime(model: &DiscreteModel, pp: &PartitionPair) -> Result<Ideal> {
    let r1 = model.sizes()[0];
    let block_of = |blocks: &[Vec<usize>], x: usize| blocks.iter().position(|b| b.contains(&x)).expect("covered");
    let mut gens = Vec::new();
    for s in states(model.sizes()) {
        if block_of(&pp.left, s[1]) != block_of(&pp.right, s[2]) {
            gens.push(model.variable(&s));
        }
    }
    for (a, b) in pp.left.iter().zip(&pp.right) {
        let cells: Vec<(usize, usize)> = a.iter().flat_map(|&x| b.iter().map(move |&y| (x, y))).collect();
        for i in 1..=r1 {
            for i2 in i + 1..=r1 {
                for (k, &(x, y)) in cells.iter().enumerate() {
                    for &(x2, y2) in &cells[k + 1..] {
                        let f = &(&model.variable(&[i, x, y]) * &model.variable(&[i2, x2, y2]))
                            - &(&model.variable(&[i, x2, y2]) * &model.variable(&[i2, x, y]));
                        gens.push(f);
                    }
                }
            }
        }
    }
    Ideal::new(model.ring(), gens)
}

pub fn intersection_axiom_primes(r1: usize, r2: usize, r3: usize) -> Result<Vec<(String, Ideal)>> {
    let model = DiscreteModel::new(&[r1, r2, r3])?;
    partition_pairs(r2, r3)
        .iter()
        .map(|pp| Ok((pp.to_string(), partition_pair_prime(&model, pp)?)))
        .collect()
}

pub fn intersection_axiom_target(r1: usize, r2: usize, r3: usize) -> Result<Ideal> {
    DiscreteModel::new(&[r1, r2, r3])?.ci_collection_ideal(&[st(&[1], &[2], &[3]), st(&[1], &[3], &[2])])
}

pub fn intersection_axiom_claim(r1: usize, r2: usize, r3: usize) -> Result<DecompositionClaim> {
    Ok(DecompositionClaim {
        name: format!("intersection-axiom-{r1}{r2}{r3}"),
        target: intersection_axiom_target(r1, r2, r3)?,
        components: intersection_axiom_primes(r1, r2, r3)?,
        expectation: Expectation::Radical,
    })
}

/// `I_global(C4)` for sizes `(r1, r2, r3, r4)`.
pub fn four_cycle_global_ideal(sizes: &[usize]) -> Result<Ideal> {
    let model = DiscreteModel::new(sizes)?;
    model.ci_collection_ideal(&UndirectedGraph::cycle(4).global_markov_statements()?)
}

/// Vanishing ideal of the four-cycle model.
pub fn four_cycle_toric(sizes: &[usize]) -> Result<Ideal> {
    let model = DiscreteModel::new(sizes)?;
    toric_ideal(&design_matrix(&UndirectedGraph::cycle(4), sizes)?, model.ring())
}

/// Toric ideal plus `P_i = <p_x : x_i = x_{i+1}>` and
/// `P_i' = <p_x : x_i != x_{i+1}>`, for `i = 1..3`, or `i = 1..4` with
/// `x_5 = x_1` when `cyclic`.
pub fn four_cycle_binary_primes(cyclic: bool) -> Result<Vec<(String, Ideal)>> {
    let sizes = [2, 2, 2, 2];
    let model = DiscreteModel::new(&sizes)?;
    let all = states(&sizes);
    let mut out = vec![("toric".to_string(), four_cycle_toric(&sizes)?)];
    let last = if cyclic { 4 } else { 3 };
    for i in 1..=last {
        let j = i % 4 + 1;
        for (name, equal) in [(format!("P{i}"), true), (format!("P{i}'"), false)] {
            let vars = all
                .iter()
                .enumerate()
                .filter(|(_, s)| (s[i - 1] == s[j - 1]) == equal)
                .map(|(k, _)| k);
            out.push((name, Ideal::from_variables(model.ring(), vars)));
        }
    }
    Ok(out)
}

pub fn four_cycle_binary_claim(cyclic: bool) -> Result<DecompositionClaim> {
    Ok(DecompositionClaim {
        name: if cyclic { "four-cycle-binary-cyclic" } else { "four-cycle-binary-printed" }.into(),
        target: four_cycle_global_ideal(&[2, 2, 2, 2])?,
        components: four_cycle_binary_primes(cyclic)?,
        expectation: Expectation::Radical,
    })
}

fn proper_subsets(r: usize) -> Vec<Vec<usize>> {
    let items: Vec<usize> = (1..=r).collect();
    (1..r).flat_map(|k| crate::ci::subsets(&items, k)).collect()
}

/// `P_{i,C,D}` for binary `X1`, `X3`: four monomial blocks plus
/// `I_global(C4)`.
pub fn four_cycle_pcd(r2: usize, r4: usize, i: usize, c: &[usize], d: &[usize]) -> Result<Ideal> {
    let sizes = [2, r2, 2, r4];
    let model = DiscreteModel::new(&sizes)?;
    let global = four_cycle_global_ideal(&sizes)?;
    let mut gens: Vec<Polynomial> = Vec::new();
    for s in states(&sizes) {
        let xi = s[i - 1];
        let hit = match (s[0], s[2]) {
            (1, 1) => c.contains(&xi),
            (1, 2) => d.contains(&xi),
            (2, 1) => !d.contains(&xi),
            _ => !c.contains(&xi),
        };
        if hit {
            gens.push(model.variable(&s));
        }
    }
    let monomials = Ideal::new(model.ring(), gens)?;
    let sum = monomials.sum(&global)?;
    Ok(sum)
}

fn show_set(s: &[usize]) -> String {
    let inner: Vec<String> = s.iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", inner.join(","))
}

pub fn four_cycle_general_primes(r2: usize, r4: usize) -> Result<Vec<(String, Ideal)>> {
    let sizes = [2, r2, 2, r4];
    let mut out = vec![("toric".to_string(), four_cycle_toric(&sizes)?)];
    for (i, r) in [(2, r2), (4, r4)] {
        for c in proper_subsets(r) {
            for d in proper_subsets(r) {
                out.push((
                    format!("P[{i};{};{}]", show_set(&c), show_set(&d)),
                    four_cycle_pcd(r2, r4, i, &c, &d)?,
                ));
            }
        }
    }
    Ok(out)
}

pub fn four_cycle_general_claim(r2: usize, r4: usize) -> Result<DecompositionClaim> {
    Ok(DecompositionClaim {
        name: format!("four-cycle-general-{r2}{r4}"),
        target: four_cycle_global_ideal(&[2, r2, 2, r4])?,
        components: four_cycle_general_primes(r2, r4)?,
        expectation: Expectation::Radical,
    })
}

pub fn embedded_claim() -> Result<DecompositionClaim> {
    let ring = RingContext::new(&["x", "y"], MonomialOrder::Grevlex)?;
    Ok(DecompositionClaim {
        name: "embedded-minimal-prime".into(),
        target: Ideal::parse("x^2, x*y", &ring)?,
        components: vec![("<x>".into(), Ideal::parse("x", &ring)?)],
        expectation: Expectation::ContainmentOnly,
    })
}

/// The binary four-cycle quartic outside `I_global(C4)`.
pub const FOUR_CYCLE_QUARTIC: &str = "p_1111*p_1222*p_2122*p_2211 - p_1122*p_1211*p_2111*p_2222";

/// Orbit of a binomial in the binary four-cycle ring under the dihedral
/// symmetries of the cycle and the state flips of each variable, with each
/// binomial normalized to a positive leading coefficient.
pub fn four_cycle_orbit(f: &Polynomial) -> Result<Vec<Polynomial>> {
    let sizes = [2usize; 4];
    let ring = f.ring().clone();
    let all = states(&sizes);
    let rotations: Vec<[usize; 4]> = (0..4)
        .flat_map(|r| {
            let rot = [r, (r + 1) % 4, (r + 2) % 4, (r + 3) % 4];
            let refl = [r, (r + 3) % 4, (r + 2) % 4, (r + 1) % 4];
            [rot, refl]
        })
        .collect();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for perm in &rotations {
        for flips in 0..16u32 {
            let map: Vec<Option<usize>> = all
                .iter()
                .map(|s| {
                    let t: Vec<usize> = (0..4)
                        .map(|k| {
                            let v = s[perm[k]];
                            if flips >> k & 1 == 1 {
                                3 - v
                            } else {
                                v
                            }
                        })
                        .collect();
                    Some(crate::ci::state_index(&sizes, &t))
                })
                .collect();
            let g = f.map_vars(&ring, &map)?.monic();
            if seen.insert(g.to_string()) {
                out.push(g);
            }
        }
    }
    Ok(out)
}

/// The 8 CI quadrics of `I_global(C4)` and the orbit of the quartic.
pub fn four_cycle_sixteen_binomials() -> Result<(Vec<Polynomial>, Vec<Polynomial>)> {
    let global = four_cycle_global_ideal(&[2, 2, 2, 2])?;
    let ring: &Ring = global.ring();
    let quartic = parse_polynomial(FOUR_CYCLE_QUARTIC, ring)?;
    Ok((global.generators().to_vec(), four_cycle_orbit(&quartic)?))
}

/// Whether the toric ideal of the graph equals the ideal of its global
/// Markov statements.
pub fn chordal_equality_check(g: &UndirectedGraph, sizes: &[usize]) -> Result<bool> {
    let model = DiscreteModel::new(sizes)?;
    let toric = toric_ideal(&design_matrix(g, sizes)?, model.ring())?;
    let ci = model.ci_collection_ideal(&g.global_markov_statements()?)?;
    toric.equals(&ci)
}
