use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::monomial::Monomial;
use super::ring::{MonomialOrder, Ring, RingContext};
use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub coeff: Rational,
    pub mono: Monomial,
}

/// Sparse polynomial with exact rational coefficients.
///
/// Terms are kept with nonzero coefficients, pairwise distinct monomials and
/// strictly decreasing in the ring's order, so structural equality is
/// polynomial equality.
#[derive(Clone, Debug)]
pub struct Polynomial {
    ring: Ring,
    terms: Vec<Term>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        RingContext::same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl std::hash::Hash for Polynomial {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

impl Polynomial {
    pub fn zero(ring: &Ring) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn one(ring: &Ring) -> Self {
        Self::constant(ring, Rational::one())
    }

    pub fn constant(ring: &Ring, c: Rational) -> Self {
        Self::term(ring, c, Monomial::one(ring.nvars()))
    }

    pub fn term(ring: &Ring, c: Rational, mono: Monomial) -> Self {
        assert_eq!(mono.nvars(), ring.nvars(), "monomial arity does not match ring");
        let terms = if c.is_zero() {
            Vec::new()
        } else {
            vec![Term { coeff: c, mono }]
        };
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn var(ring: &Ring, name: &str) -> Result<Self> {
        let i = ring
            .var_index(name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
        Ok(Self::var_at(ring, i))
    }

    pub fn var_at(ring: &Ring, i: usize) -> Self {
        Self::term(ring, Rational::one(), Monomial::var(ring.nvars(), i, 1))
    }

    /// Canonicalizes an arbitrary list of terms: sorts, merges duplicates,
    /// drops zeros.
    pub fn from_terms<I>(ring: &Ring, terms: I) -> Self
    where
        I: IntoIterator<Item = (Rational, Monomial)>,
    {
        let order = ring.order();
        let mut raw: Vec<Term> = terms
            .into_iter()
            .filter(|(c, _)| !c.is_zero())
            .map(|(coeff, mono)| {
                assert_eq!(mono.nvars(), ring.nvars(), "monomial arity does not match ring");
                Term { coeff, mono }
            })
            .collect();
        raw.sort_by(|a, b| order.compare(&b.mono, &a.mono));
        let mut terms: Vec<Term> = Vec::with_capacity(raw.len());
        for t in raw {
            match terms.last_mut() {
                Some(last) if last.mono == t.mono => {
                    last.coeff = &last.coeff + &t.coeff;
                    if last.coeff.is_zero() {
                        terms.pop();
                    }
                }
                _ => terms.push(t),
            }
        }
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    /// Wraps terms that are already canonical (sorted, distinct, nonzero).
    pub(crate) fn from_sorted_terms(ring: &Ring, terms: Vec<Term>) -> Self {
        debug_assert!(terms.iter().all(|t| !t.coeff.is_zero()));
        debug_assert!(terms
            .windows(2)
            .all(|w| ring.order().compare(&w[0].mono, &w[1].mono) == Ordering::Greater));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|t| t.mono.is_one())
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].mono.is_one() && self.terms[0].coeff.is_one()
    }

    /// Leading coefficient and monomial in the ring's own order.
    pub fn leading_term(&self) -> Result<(&Rational, &Monomial)> {
        self.terms
            .first()
            .map(|t| (&t.coeff, &t.mono))
            .ok_or(Error::ZeroPolynomial)
    }

    /// Leading term under an arbitrary order on the same exponent vectors.
    pub fn leading_term_under(&self, order: MonomialOrder) -> Result<(Rational, Monomial)> {
        self.terms
            .iter()
            .max_by(|a, b| order.compare(&a.mono, &b.mono))
            .map(|t| (t.coeff.clone(), t.mono.clone()))
            .ok_or(Error::ZeroPolynomial)
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.mono)
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.terms.first().map(|t| &t.coeff)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.mono.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some(t) => self.terms.iter().all(|s| s.mono.degree() == t.mono.degree()),
        }
    }

    fn check_ring(&self, other: &Polynomial) -> Result<()> {
        if RingContext::same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.merge(other, &Rational::one(), None))
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.merge(other, &-Rational::one(), None))
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Polynomial::zero(&self.ring));
        }
        let (small, big) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut acc = Polynomial::zero(&self.ring);
        for t in &small.terms {
            acc = acc.merge(big, &t.coeff, Some(&t.mono));
        }
        Ok(acc)
    }

    /// `self + c * m * other`, where `m` defaults to 1. Both sorted, so this
    /// is a linear merge.
    pub(crate) fn merge(&self, other: &Polynomial, c: &Rational, m: Option<&Monomial>) -> Polynomial {
        let order = self.ring.order();
        let scaled = |t: &Term| Term {
            coeff: &t.coeff * c,
            mono: match m {
                Some(m) => t.mono.mul(m),
                None => t.mono.clone(),
            },
        };
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = other.terms.iter().map(scaled).peekable();
        loop {
            let ord = match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => Ordering::Greater,
                (None, Some(_)) => Ordering::Less,
                (Some(x), Some(y)) => order.compare(&x.mono, &y.mono),
            };
            match ord {
                Ordering::Greater => out.push(a.next().unwrap().clone()),
                Ordering::Less => out.push(b.next().unwrap()),
                Ordering::Equal => {
                    let x = a.next().unwrap();
                    let y = b.next().unwrap();
                    let s = &x.coeff + &y.coeff;
                    if !s.is_zero() {
                        out.push(Term {
                            coeff: s,
                            mono: y.mono,
                        });
                    }
                }
            }
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: out,
        }
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    coeff: &t.coeff * c,
                    mono: t.mono.clone(),
                })
                .collect(),
        }
    }

    /// `c * m * self`; multiplication by a monomial preserves term order.
    pub fn mul_term(&self, c: &Rational, m: &Monomial) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    coeff: &t.coeff * c,
                    mono: t.mono.mul(m),
                })
                .collect(),
        }
    }

    /// Divides by the leading coefficient. The zero polynomial is returned
    /// unchanged.
    pub fn monic(&self) -> Polynomial {
        match self.leading_coeff() {
            Some(c) if !c.is_one() => self.scale(&c.recip()),
            _ => self.clone(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one(&self.ring);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn evaluate(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.ring.nvars(), "point has wrong dimension");
        let mut acc = Rational::zero();
        for t in &self.terms {
            let mut v = t.coeff.clone();
            for i in t.mono.support() {
                v = &v * &point[i].pow(t.mono.exponent(i));
            }
            acc = &acc + &v;
        }
        acc
    }

    /// Indices of variables occurring in some term.
    pub fn variables_used(&self) -> Vec<usize> {
        let mut used = vec![false; self.ring.nvars()];
        for t in &self.terms {
            for i in t.mono.support() {
                used[i] = true;
            }
        }
        used.iter().enumerate().filter(|(_, &u)| u).map(|(i, _)| i).collect()
    }

    /// Re-expresses the polynomial in `target`, sending variable `i` of the
    /// source ring to variable `map[i]` of the target ring. Variables mapped
    /// to `None` must not occur.
    pub fn map_vars(&self, target: &Ring, map: &[Option<usize>]) -> Result<Polynomial> {
        assert_eq!(map.len(), self.ring.nvars());
        let n = target.nvars();
        let mut terms = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            let mut exps = vec![0u32; n];
            for i in t.mono.support() {
                match map[i] {
                    Some(j) => exps[j] += t.mono.exponent(i),
                    None => {
                        return Err(Error::UnknownVariable(self.ring.var_name(i).to_string()))
                    }
                }
            }
            terms.push((t.coeff.clone(), Monomial::new(exps)));
        }
        Ok(Polynomial::from_terms(target, terms))
    }

    /// Moves the polynomial into another ring by matching variable names.
    pub fn to_ring(&self, target: &Ring) -> Result<Polynomial> {
        if RingContext::same_ring(&self.ring, target) {
            return Ok(self.clone());
        }
        let map: Vec<Option<usize>> = self
            .ring
            .variables()
            .iter()
            .map(|v| target.var_index(v))
            .collect();
        self.map_vars(target, &map)
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.checked_add(rhs).expect("polynomial ring mismatch")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.checked_sub(rhs).expect("polynomial ring mismatch")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.checked_mul(rhs).expect("polynomial ring mismatch")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-Rational::one())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        super::parse::write_polynomial(f, self)
    }
}
