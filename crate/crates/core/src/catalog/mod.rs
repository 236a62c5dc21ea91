//! Named decomposition claims and their verification by exact ideal
//! arithmetic.
//!
//! A claim lists a target ideal and candidate components. Verification
//! checks that each component contains the target, that the components
//! intersect back to the target (or, for containment-only claims, that the
//! intersection lies in the radical of the target), and that no component
//! contains another.

mod constructors;

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::ideal::{Ideal, Region};

pub use constructors::*;

/// What a claim asserts about its components.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Expectation {
    /// The target equals the intersection of the components.
    Radical,
    /// The intersection of the components lies in the radical of the target.
    ContainmentOnly,
}

#[derive(Debug, Clone)]
pub struct DecompositionClaim {
    pub name: String,
    pub target: Ideal,
    pub components: Vec<(String, Ideal)>,
    pub expectation: Expectation,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Verified,
    Failed,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentReport {
    pub name: String,
    pub contains_target: bool,
    pub pruned_simplex: Option<bool>,
    pub pruned_pdcone: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub claim: String,
    pub expectation: Expectation,
    pub components: Vec<ComponentReport>,
    pub intersection_equal: bool,
    /// Only computed for containment-only claims or when equality fails.
    pub radical_contained: Option<bool>,
    pub minimal: bool,
    pub verdict: Verdict,
    pub millis: u64,
}

fn prune(ideal: &Ideal, region: Region) -> Result<Option<bool>> {
    if region.applies_to(ideal.ring()) {
        ideal.positivity_prune(region).map(Some)
    } else {
        Ok(None)
    }
}

/// Run every check on a claim.
pub fn verify_decomposition(claim: &DecompositionClaim) -> Result<VerificationReport> {
    let start = Instant::now();
    let ring = claim.target.ring();
    let mut components = Vec::with_capacity(claim.components.len());
    for (name, c) in &claim.components {
        components.push(ComponentReport {
            name: name.clone(),
            contains_target: c.contains(&claim.target)?,
            pruned_simplex: prune(c, Region::Simplex)?,
            pruned_pdcone: prune(c, Region::PdCone)?,
        });
    }
    let ideals: Vec<Ideal> = claim.components.iter().map(|(_, c)| c.clone()).collect();
    let meet = Ideal::intersect_all(ring, &ideals)?;
    let intersection_equal = meet.equals(&claim.target)?;
    let radical_contained = if claim.expectation == Expectation::ContainmentOnly || !intersection_equal {
        let mut all = true;
        for g in meet.generators() {
            if !claim.target.radical_member(g)? {
                all = false;
                break;
            }
        }
        Some(all)
    } else {
        None
    };
    let mut minimal = true;
    'outer: for (i, a) in ideals.iter().enumerate() {
        for (j, b) in ideals.iter().enumerate() {
            if i != j && a.contains(b)? {
                minimal = false;
                break 'outer;
            }
        }
    }
    let contained = components.iter().all(|c| c.contains_target);
    let core = match claim.expectation {
        Expectation::Radical => intersection_equal,
        Expectation::ContainmentOnly => radical_contained == Some(true),
    };
    let verdict = if contained && core && minimal {
        Verdict::Verified
    } else {
        Verdict::Failed
    };
    Ok(VerificationReport {
        claim: claim.name.clone(),
        expectation: claim.expectation,
        components,
        intersection_equal,
        radical_contained,
        minimal,
        verdict,
        millis: start.elapsed().as_millis() as u64,
    })
}

/// A registered claim: a name, the statement it checks, and a builder.
pub struct CatalogEntry {
    pub name: &'static str,
    pub statement: &'static str,
    /// Excluded from default runs.
    pub slow: bool,
    /// The verdict this claim is known to produce.
    pub expected: Verdict,
    pub build: fn() -> Result<DecompositionClaim>,
}

impl CatalogEntry {
    pub fn run(&self) -> Result<VerificationReport> {
        verify_decomposition(&(self.build)()?)
    }
}

impl std::fmt::Debug for CatalogEntry {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("CatalogEntry")
            .field("name", &self.name)
            .field("slow", &self.slow)
            .finish()
    }
}

/// All claims in canonical order.
pub fn catalog() -> Vec<CatalogEntry> {
    use Verdict::*;
    vec![
        CatalogEntry {
            name: "gaussoid-binary",
            statement: "binary X1,X2,X3: I(1_||_3|2) + I(1_||_3) = I(12_||_3) ∩ I(1_||_23)",
            slow: false,
            expected: Verified,
            build: gaussoid_binary_claim,
        },
        CatalogEntry {
            name: "gaussoid-gaussian",
            statement: "Gaussian m=3: <s13*s22 - s12*s23, s13> = <s12, s13> ∩ <s23, s13>",
            slow: false,
            expected: Verified,
            build: gaussoid_gaussian_claim,
        },
        CatalogEntry {
            name: "contraction-gaussian",
            statement: "Gaussian m=3: <s12*s33 - s13*s23, s23> = <s12, s23> ∩ <s33, s23>; the second component misses the PD cone",
            slow: false,
            expected: Verified,
            build: contraction_gaussian_claim,
        },
        CatalogEntry {
            name: "contraction-binary",
            statement: "binary X1,X2,X3: I(1_||_2|3) + I(2_||_3) is the intersection of I(13_||_2) and two components that meet the simplex inside it",
            slow: false,
            expected: Verified,
            build: contraction_binary_claim,
        },
        CatalogEntry {
            name: "intersection-axiom-222",
            statement: "sizes (2,2,2): I(1_||_2|3) + I(1_||_3|2) is the intersection of its 3 partition-pair primes",
            slow: false,
            expected: Verified,
            build: || intersection_axiom_claim(2, 2, 2),
        },
        CatalogEntry {
            name: "intersection-axiom-223",
            statement: "sizes (2,2,3): I(1_||_2|3) + I(1_||_3|2) is the intersection of its 7 partition-pair primes",
            slow: true,
            expected: Verified,
            build: || intersection_axiom_claim(2, 2, 3),
        },
        CatalogEntry {
            name: "intersection-axiom-233",
            statement: "sizes (2,3,3): I(1_||_2|3) + I(1_||_3|2) is the intersection of its 25 partition-pair primes",
            slow: true,
            expected: Verified,
            build: || intersection_axiom_claim(2, 3, 3),
        },
        CatalogEntry {
            name: "four-cycle-binary-printed",
            statement: "binary four-cycle: toric ideal and monomial primes P_i, P_i' for i = 1, 2, 3 only; the edge (4,1) is left out, so the intersection is too large",
            slow: false,
            expected: Failed,
            build: || four_cycle_binary_claim(false),
        },
        CatalogEntry {
            name: "four-cycle-binary-cyclic",
            statement: "binary four-cycle: I_global(C4) is the intersection of the toric ideal and the monomial primes P_i, P_i' over all four edges",
            slow: false,
            expected: Verified,
            build: || four_cycle_binary_claim(true),
        },
        CatalogEntry {
            name: "four-cycle-general-22",
            statement: "four-cycle with binary X1, X3 and (r2, r4) = (2, 2): toric ideal and the 8 primes P_{i,C,D}",
            slow: false,
            expected: Verified,
            build: || four_cycle_general_claim(2, 2),
        },
        CatalogEntry {
            name: "four-cycle-general-23",
            statement: "four-cycle with binary X1, X3 and (r2, r4) = (2, 3): toric ideal and the 40 primes P_{i,C,D}",
            slow: true,
            expected: Verified,
            build: || four_cycle_general_claim(2, 3),
        },
        CatalogEntry {
            name: "embedded-minimal-prime",
            statement: "<x^2, x*y> = <x> ∩ <x^2, y>: <x> is its only minimal prime and lies over the radical",
            slow: false,
            expected: Verified,
            build: embedded_claim,
        },
    ]
}

pub fn find(name: &str) -> Option<CatalogEntry> {
    catalog().into_iter().find(|e| e.name == name)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ci::{CiModel, CiStatement, DiscreteModel};
    use crate::poly::{MonomialOrder, RingContext};
    use crate::toric::UndirectedGraph;

    fn stirling2(n: usize, k: usize) -> usize {
        match (n, k) {
            (0, 0) => 1,
            (_, 0) | (0, _) => 0,
            _ => k * stirling2(n - 1, k) + stirling2(n - 1, k - 1),
        }
    }

    fn factorial(n: usize) -> usize {
        (1..=n).product()
    }

    #[test]
    fn partition_counts() {
        assert_eq!(set_partitions(4).len(), 15);
        for (r2, r3) in [(2, 2), (2, 3), (3, 3), (3, 4)] {
            let expected: usize = (1..=r2.min(r3))
                .map(|s| stirling2(r2, s) * stirling2(r3, s) * factorial(s))
                .sum();
            assert_eq!(partition_pairs(r2, r3).len(), expected, "({r2},{r3})");
        }
        assert_eq!(partition_pairs(2, 2).len(), 3);
    }

    #[test]
    fn single_block_prime_is_independence_ideal() {
        for sizes in [[2, 2, 2], [2, 2, 3], [3, 2, 2]] {
            let m = DiscreteModel::new(&sizes).unwrap();
            let pp = &partition_pairs(sizes[1], sizes[2])[0];
            assert_eq!(pp.left.len(), 1);
            let prime = partition_pair_prime(&m, pp).unwrap();
            let ind = m.ci_ideal(&CiStatement::new(&[1], &[2, 3], &[])).unwrap();
            assert!(prime.equals(&ind).unwrap());
        }
    }

    #[test]
    fn matched_blocks_give_flattening_minors() {
        // restricted to one matched block pair, the binomials are the
        // independence minors of that block's flattening
        let m = DiscreteModel::new(&[2, 3, 3]).unwrap();
        for pp in partition_pairs(3, 3) {
            let prime = partition_pair_prime(&m, &pp).unwrap();
            for (a, b) in pp.left.iter().zip(&pp.right) {
                for &x in a {
                    for &y in b {
                        for &x2 in a {
                            for &y2 in b {
                                let f = &(&m.variable(&[1, x, y]) * &m.variable(&[2, x2, y2]))
                                    - &(&m.variable(&[1, x2, y2]) * &m.variable(&[2, x, y]));
                                assert!(prime.is_member(&f).unwrap(), "{pp}");
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn binary_four_cycle_components() {
        let printed = four_cycle_binary_primes(false).unwrap();
        let cyclic = four_cycle_binary_primes(true).unwrap();
        assert_eq!(printed.len(), 7);
        assert_eq!(cyclic.len(), 9);
        let (name, p1) = &cyclic[1];
        assert_eq!(name, "P1");
        assert_eq!(p1.generators().len(), 8);
        assert!(cyclic[1..].iter().all(|(_, c)| c.is_variable_generated()));
    }

    #[test]
    fn general_primes_at_binary_sizes_match_monomial_primes() {
        let general = four_cycle_general_primes(2, 2).unwrap();
        assert_eq!(general.len(), 9);
        let binary = four_cycle_binary_primes(true).unwrap();
        let global = four_cycle_global_ideal(&[2, 2, 2, 2]).unwrap();
        let mut matched = std::collections::BTreeSet::new();
        for (name, p) in &general[1..] {
            assert!(p.contains(&global).unwrap());
            let hit = binary[1..]
                .iter()
                .position(|(_, q)| q.equals(p).unwrap())
                .unwrap_or_else(|| panic!("{name} matches no monomial prime"));
            matched.insert(hit);
        }
        assert_eq!(matched.len(), 8);
    }

    #[test]
    fn quartic_orbit() {
        let (quadrics, orbit) = four_cycle_sixteen_binomials().unwrap();
        assert_eq!(quadrics.len(), 8);
        assert_eq!(orbit.len(), 8);
    }

    #[test]
    fn chordal_path() {
        assert!(chordal_equality_check(&UndirectedGraph::path(3), &[2, 2, 2]).unwrap());
        assert!(!chordal_equality_check(&UndirectedGraph::cycle(4), &[2, 2, 2, 2]).unwrap());
        assert!(chordal_equality_check(&UndirectedGraph::complete(3), &[2, 2, 2]).is_err());
    }

    #[test]
    fn embedded_report_distinguishes_checks() {
        let mut claim = embedded_claim().unwrap();
        let r = verify_decomposition(&claim).unwrap();
        assert_eq!(r.verdict, Verdict::Verified);
        assert!(!r.intersection_equal);
        assert_eq!(r.radical_contained, Some(true));
        claim.expectation = Expectation::Radical;
        let r = verify_decomposition(&claim).unwrap();
        assert_eq!(r.verdict, Verdict::Failed);
        assert!(!r.intersection_equal);
        assert_eq!(r.radical_contained, Some(true));
    }

    #[test]
    fn redundant_component_breaks_minimality() {
        let ring = RingContext::new(&["x", "y"], MonomialOrder::Grevlex).unwrap();
        let claim = DecompositionClaim {
            name: "redundant".into(),
            target: Ideal::parse("x*y", &ring).unwrap(),
            components: vec![
                ("<x>".into(), Ideal::parse("x", &ring).unwrap()),
                ("<y>".into(), Ideal::parse("y", &ring).unwrap()),
                ("<x, y>".into(), Ideal::parse("x, y", &ring).unwrap()),
            ],
            expectation: Expectation::Radical,
        };
        let r = verify_decomposition(&claim).unwrap();
        assert!(r.intersection_equal);
        assert!(!r.minimal);
        assert_eq!(r.verdict, Verdict::Failed);
        assert!(r.components.iter().all(|c| c.pruned_simplex.is_none()));
    }

    #[test]
    fn pruning_tags() {
        let r = verify_decomposition(&contraction_gaussian_claim().unwrap()).unwrap();
        assert_eq!(r.components[0].pruned_pdcone, Some(false));
        assert_eq!(r.components[1].pruned_pdcone, Some(true));
        assert_eq!(r.components[1].pruned_simplex, None);
        let r = verify_decomposition(&contraction_binary_claim().unwrap()).unwrap();
        let tags: Vec<_> = r.components.iter().map(|c| c.pruned_simplex).collect();
        assert_eq!(tags, vec![Some(false), Some(true), Some(true)]);
    }

    #[test]
    fn default_catalog_meets_expectations() {
        let entries = catalog();
        let names: std::collections::BTreeSet<_> = entries.iter().map(|e| e.name).collect();
        assert_eq!(names.len(), entries.len());
        for e in entries.iter().filter(|e| !e.slow) {
            let r = e.run().unwrap();
            assert_eq!(r.verdict, e.expected, "{}", e.name);
            assert_eq!(r.claim, e.name);
        }
        assert!(find("gaussoid-binary").is_some());
        assert!(find("nonsense").is_none());
    }
}
