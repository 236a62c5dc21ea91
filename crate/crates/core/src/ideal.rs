//! Ideals of `Q[x_1, ..., x_n]` and the arithmetic needed to certify
//! decompositions: sums, intersections, elimination, saturation and
//! radical membership.

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::groebner::{buchberger, GroebnerBasis};
use crate::poly::{Monomial, MonomialOrder, Polynomial, Ring, RingContext};
use crate::rational::Rational;

/// A finitely generated ideal together with a lazily computed reduced
/// Groebner basis for the order of its ring.
#[derive(Clone, Debug)]
pub struct Ideal {
    ring: Ring,
    generators: Vec<Polynomial>,
    gb: OnceLock<Arc<GroebnerBasis>>,
}

/// Semialgebraic regions used to discard statistically irrelevant
/// components.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Region {
    /// Open probability simplex; variables named `p_*`.
    Simplex,
    /// Positive definite cone; variables named `s_i_j`.
    PdCone,
}

impl Region {
    fn tag(self) -> &'static str {
        match self {
            Region::Simplex => "simplex",
            Region::PdCone => "pd-cone",
        }
    }

    /// Whether every variable of `ring` carries this region's naming tag.
    pub fn applies_to(self, ring: &RingContext) -> bool {
        ring.nvars() > 0
            && ring.variables().iter().all(|v| match self {
                Region::Simplex => v.starts_with("p_"),
                Region::PdCone => covariance_indices(v).is_some(),
            })
    }
}

/// Parses `s_i_j` into `(i, j)`.
pub(crate) fn covariance_indices(name: &str) -> Option<(usize, usize)> {
    let rest = name.strip_prefix("s_")?;
    let (i, j) = rest.split_once('_')?;
    Some((i.parse().ok()?, j.parse().ok()?))
}

fn check_same(a: &Ring, b: &Ring) -> Result<()> {
    if RingContext::same_ring(a, b) {
        Ok(())
    } else {
        Err(Error::RingMismatch)
    }
}

/// Runs a Groebner basis computation in `ext`, whose first `k` variables
/// are to be eliminated, and returns the basis elements free of them mapped
/// into `target` via `back`.
fn eliminate_block(
    ext: &Ring,
    gens: &[Polynomial],
    k: usize,
    target: &Ring,
    back: &[Option<usize>],
) -> Result<Vec<Polynomial>> {
    let gb = buchberger(ext, gens)?;
    gb.elements()
        .iter()
        .filter(|g| g.variables_used().iter().all(|&v| v >= k))
        .map(|g| g.map_vars(target, back))
        .collect()
}

/// Ring `[fresh, vars...]` with `fresh` in its own elimination block, plus
/// the embedding of the original variables.
fn with_leading_variable(ring: &Ring, base: &str) -> Result<(Ring, Vec<Option<usize>>, Vec<Option<usize>>)> {
    let t = ring.fresh_name(base);
    let mut names = vec![t];
    names.extend(ring.variables().iter().cloned());
    let order = if ring.nvars() == 0 {
        MonomialOrder::Grevlex
    } else {
        MonomialOrder::Block(1)
    };
    let ext = RingContext::new(&names, order)?;
    let into: Vec<Option<usize>> = (0..ring.nvars()).map(|i| Some(i + 1)).collect();
    let back: Vec<Option<usize>> = std::iter::once(None)
        .chain((0..ring.nvars()).map(Some))
        .collect();
    Ok((ext, into, back))
}

impl Ideal {
    /// The ideal generated by `generators`; zero polynomials are dropped.
    pub fn new(ring: &Ring, generators: Vec<Polynomial>) -> Result<Self> {
        for g in &generators {
            check_same(ring, g.ring())?;
        }
        Ok(Ideal {
            ring: ring.clone(),
            generators: generators.into_iter().filter(|g| !g.is_zero()).collect(),
            gb: OnceLock::new(),
        })
    }

    pub fn zero(ring: &Ring) -> Self {
        Ideal {
            ring: ring.clone(),
            generators: Vec::new(),
            gb: OnceLock::new(),
        }
    }

    pub fn unit(ring: &Ring) -> Self {
        Ideal {
            ring: ring.clone(),
            generators: vec![Polynomial::one(ring)],
            gb: OnceLock::new(),
        }
    }

    /// Parses a comma separated generator list such as `<x^2 - y, y^3>`.
    pub fn parse(text: &str, ring: &Ring) -> Result<Self> {
        Self::new(ring, crate::poly::parse_polynomial_list(text, ring)?)
    }

    /// The ideal generated by the given ring variables.
    pub fn from_variables(ring: &Ring, vars: impl IntoIterator<Item = usize>) -> Self {
        let gens = vars.into_iter().map(|i| Polynomial::var_at(ring, i)).collect();
        Ideal {
            ring: ring.clone(),
            generators: gens,
            gb: OnceLock::new(),
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    /// Reduced Groebner basis for the ring's order, computed once. Racing
    /// callers may both compute it; exactly one result is published.
    pub fn groebner_basis(&self) -> &GroebnerBasis {
        self.gb.get_or_init(|| {
            Arc::new(buchberger(&self.ring, &self.generators).expect("generators share the ring"))
        })
    }

    /// The same ideal in the same variables under another monomial order.
    pub fn with_order(&self, order: MonomialOrder) -> Result<Ideal> {
        let ring = self.ring.with_order(order)?;
        let gens = self
            .generators
            .iter()
            .map(|g| g.to_ring(&ring))
            .collect::<Result<Vec<_>>>()?;
        Ideal::new(&ring, gens)
    }

    /// Moves the ideal into another ring containing all variables it uses.
    pub fn to_ring(&self, ring: &Ring) -> Result<Ideal> {
        let gens = self
            .generators
            .iter()
            .map(|g| g.to_ring(ring))
            .collect::<Result<Vec<_>>>()?;
        Ideal::new(ring, gens)
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.groebner_basis().is_unit()
    }

    pub fn is_member(&self, f: &Polynomial) -> Result<bool> {
        check_same(&self.ring, f.ring())?;
        self.groebner_basis().contains(f)
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        check_same(&self.ring, &other.ring)?;
        let mut gens = self.generators.clone();
        gens.extend(other.generators.iter().cloned());
        Ideal::new(&self.ring, gens)
    }

    /// `I ∩ J`, computed as the elimination of `t` from `t*I + (1 - t)*J`.
    pub fn intersect(&self, other: &Ideal) -> Result<Ideal> {
        check_same(&self.ring, &other.ring)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Ideal::zero(&self.ring));
        }
        if self.is_unit() {
            return Ok(other.clone());
        }
        if other.is_unit() {
            return Ok(self.clone());
        }
        let (ext, into, back) = with_leading_variable(&self.ring, "t")?;
        let t = Polynomial::var_at(&ext, 0);
        let one_minus_t = &Polynomial::one(&ext) - &t;
        let mut gens = Vec::with_capacity(self.generators.len() + other.generators.len());
        for g in self.groebner_basis().elements() {
            gens.push(&t * &g.map_vars(&ext, &into)?);
        }
        for g in other.groebner_basis().elements() {
            gens.push(&one_minus_t * &g.map_vars(&ext, &into)?);
        }
        let result = eliminate_block(&ext, &gens, 1, &self.ring, &back)?;
        Ideal::new(&self.ring, result)
    }

    /// Intersection of several ideals, folded pairwise in a balanced tree.
    pub fn intersect_all(ring: &Ring, ideals: &[Ideal]) -> Result<Ideal> {
        match ideals {
            [] => Ok(Ideal::unit(ring)),
            [single] => {
                check_same(ring, &single.ring)?;
                Ok(single.clone())
            }
            _ => {
                let (l, r) = ideals.split_at(ideals.len() / 2);
                Self::intersect_all(ring, l)?.intersect(&Self::intersect_all(ring, r)?)
            }
        }
    }

    /// `I ∩ Q[remaining variables]`, living in the ring of the remaining
    /// variables (same relative order).
    pub fn eliminate(&self, drop: &[&str]) -> Result<Ideal> {
        let mut dropped = vec![false; self.ring.nvars()];
        for name in drop {
            let i = self
                .ring
                .var_index(name)
                .ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
            dropped[i] = true;
        }
        if !dropped.iter().any(|&d| d) {
            return Ok(self.clone());
        }
        let k = dropped.iter().filter(|&&d| d).count();
        let kept: Vec<usize> = (0..self.ring.nvars()).filter(|&i| !dropped[i]).collect();
        let first: Vec<usize> = (0..self.ring.nvars()).filter(|&i| dropped[i]).collect();

        let sub_order = match self.ring.order() {
            MonomialOrder::Block(_) => MonomialOrder::Grevlex,
            o => o,
        };
        let sub_names: Vec<&str> = kept.iter().map(|&i| self.ring.var_name(i)).collect();
        let sub = RingContext::new(&sub_names, sub_order)?;

        let ext_names: Vec<&str> = first
            .iter()
            .chain(kept.iter())
            .map(|&i| self.ring.var_name(i))
            .collect();
        let ext_order = if kept.is_empty() {
            MonomialOrder::Grevlex
        } else {
            MonomialOrder::Block(k)
        };
        let ext = RingContext::new(&ext_names, ext_order)?;
        let gens = self
            .generators
            .iter()
            .map(|g| g.to_ring(&ext))
            .collect::<Result<Vec<_>>>()?;
        let back: Vec<Option<usize>> = (0..ext.nvars())
            .map(|i| if i < k { None } else { Some(i - k) })
            .collect();
        let result = eliminate_block(&ext, &gens, k, &sub, &back)?;
        Ideal::new(&sub, result)
    }

    /// `I : f^∞`. Computed as the elimination of `t` from `I + <1 - t*f>`.
    pub fn saturate(&self, f: &Polynomial) -> Result<Ideal> {
        check_same(&self.ring, f.ring())?;
        if f.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if f.is_constant() || self.is_zero() {
            return Ok(self.clone());
        }
        let (ext, into, back) = with_leading_variable(&self.ring, "t")?;
        let t = Polynomial::var_at(&ext, 0);
        let mut gens: Vec<Polynomial> = self
            .groebner_basis()
            .elements()
            .iter()
            .map(|g| g.map_vars(&ext, &into))
            .collect::<Result<_>>()?;
        gens.push(&Polynomial::one(&ext) - &(&t * &f.map_vars(&ext, &into)?));
        let result = eliminate_block(&ext, &gens, 1, &self.ring, &back)?;
        Ideal::new(&self.ring, result)
    }

    /// Whether some power of `f` lies in the ideal (radical over an
    /// algebraically closed field), via `1 ∈ I + <1 - t*f>`.
    pub fn radical_member(&self, f: &Polynomial) -> Result<bool> {
        check_same(&self.ring, f.ring())?;
        if f.is_zero() {
            return Ok(true);
        }
        if self.is_member(f)? {
            return Ok(true);
        }
        let t = self.ring.fresh_name("t");
        let mut names: Vec<String> = self.ring.variables().to_vec();
        names.push(t);
        let ext = RingContext::new(&names, MonomialOrder::Grevlex)?;
        let into: Vec<Option<usize>> = (0..self.ring.nvars()).map(Some).collect();
        let tv = Polynomial::var_at(&ext, self.ring.nvars());
        let mut gens: Vec<Polynomial> = self
            .generators
            .iter()
            .map(|g| g.map_vars(&ext, &into))
            .collect::<Result<_>>()?;
        gens.push(&Polynomial::one(&ext) - &(&tv * &f.map_vars(&ext, &into)?));
        Ok(buchberger(&ext, &gens)?.is_unit())
    }

    /// Ideal equality by comparing reduced Groebner bases.
    pub fn equals(&self, other: &Ideal) -> Result<bool> {
        check_same(&self.ring, &other.ring)?;
        Ok(self.groebner_basis().elements() == other.groebner_basis().elements())
    }

    /// `other ⊆ self`, generator by generator.
    pub fn contains(&self, other: &Ideal) -> Result<bool> {
        check_same(&self.ring, &other.ring)?;
        let gb = self.groebner_basis();
        for g in &other.generators {
            if !gb.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Sound test that the variety of this ideal misses the open `region`.
    ///
    /// Returns `true` when some generator cannot vanish there: on the open
    /// simplex all coordinates are positive, so a nonzero generator whose
    /// coefficients share one sign is nonzero; on the positive definite cone
    /// the same holds for generators built only from diagonal entries
    /// `s_i_i`. `false` means inconclusive.
    pub fn positivity_prune(&self, region: Region) -> Result<bool> {
        if !region.applies_to(&self.ring) {
            return Err(Error::UntaggedRing(region.tag()));
        }
        let diagonal: Vec<bool> = self
            .ring
            .variables()
            .iter()
            .map(|v| covariance_indices(v).is_some_and(|(i, j)| i == j))
            .collect();
        Ok(self.generators.iter().any(|g| {
            let one_sign = g.terms().iter().all(|t| t.coeff.is_positive())
                || g.terms().iter().all(|t| t.coeff.is_negative());
            one_sign
                && match region {
                    Region::Simplex => true,
                    Region::PdCone => g
                        .terms()
                        .iter()
                        .all(|t| t.mono.support().all(|i| diagonal[i])),
                }
        }))
    }

    /// Whether the ideal is generated by ring variables (hence prime).
    pub fn is_variable_generated(&self) -> bool {
        self.generators.iter().all(|g| {
            g.len() == 1 && g.terms()[0].mono.degree() == 1
        })
    }

    /// Evaluates every generator at `point`; true iff all vanish.
    pub fn vanishes_at(&self, point: &[Rational]) -> bool {
        self.generators.iter().all(|g| g.evaluate(point).is_zero())
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("<")?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{g}")?;
        }
        f.write_str(">")
    }
}

/// Product of all ring variables, the usual saturation target for toric
/// ideals.
pub fn product_of_variables(ring: &Ring) -> Polynomial {
    Polynomial::term(ring, Rational::one(), Monomial::new(vec![1; ring.nvars()]))
}
