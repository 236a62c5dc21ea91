//! Multivariate division and Buchberger's algorithm over `Q`.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::poly::{Monomial, MonomialOrder, Polynomial, Ring, RingContext, Term};
use crate::rational::Rational;

/// Reduced Groebner basis of an ideal with respect to the order of its ring.
///
/// Elements are monic, inter-reduced and sorted by decreasing leading
/// monomial, so two bases of the same ideal compare equal structurally.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    ring: Ring,
    elements: Vec<Polynomial>,
}

impl GroebnerBasis {
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn order(&self) -> MonomialOrder {
        self.ring.order()
    }

    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// True iff the basis is `{1}`, i.e. the ideal is the whole ring.
    pub fn is_unit(&self) -> bool {
        self.elements.len() == 1 && self.elements[0].is_one()
    }

    pub fn reduce(&self, f: &Polynomial) -> Result<Polynomial> {
        normal_form(f, &self.elements)
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        Ok(self.reduce(f)?.is_zero())
    }
}

/// `a - c * m * b` on sorted term slices.
fn sub_scaled(a: &[Term], c: &Rational, m: &Monomial, b: &[Term], order: MonomialOrder) -> Vec<Term> {
    let neg = -c;
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut i = 0;
    let mut bi = b.iter().map(|t| Term {
        coeff: &t.coeff * &neg,
        mono: t.mono.mul(m),
    });
    let mut next_b = bi.next();
    while let Some(y) = next_b.take() {
        while i < a.len() && order.compare(&a[i].mono, &y.mono) == Ordering::Greater {
            out.push(a[i].clone());
            i += 1;
        }
        if i < a.len() && a[i].mono == y.mono {
            let s = &a[i].coeff + &y.coeff;
            if !s.is_zero() {
                out.push(Term { coeff: s, mono: y.mono });
            }
            i += 1;
        } else {
            out.push(y);
        }
        next_b = bi.next();
    }
    out.extend_from_slice(&a[i..]);
    out
}

/// Fully reduces `terms` modulo `basis`; when `top_only` is set, stops at the
/// first leading term that no basis element divides.
fn reduce_terms(mut p: Vec<Term>, basis: &[&Polynomial], order: MonomialOrder, top_only: bool) -> (Vec<Term>, Vec<Term>) {
    let mut rem = Vec::new();
    let mut start = 0;
    while start < p.len() {
        let lead = &p[start];
        let reducer = basis
            .iter()
            .find(|g| g.leading_monomial().is_some_and(|lm| lm.divides(&lead.mono)));
        match reducer {
            Some(g) => {
                let (gc, gm) = g.leading_term().expect("reducers are nonzero");
                let q = gm.quotient_of(&lead.mono).expect("divisibility checked");
                let c = &lead.coeff / gc;
                let before = lead.mono.clone();
                p = sub_scaled(&p[start..], &c, &q, g.terms(), order);
                start = 0;
                debug_assert!(p
                    .first()
                    .map_or(true, |t| order.compare(&t.mono, &before) == Ordering::Less));
            }
            None if top_only => break,
            None => {
                rem.push(p[start].clone());
                start += 1;
            }
        }
    }
    p.drain(..start);
    (rem, p)
}

/// Remainder of multivariate division of `f` by `basis` in the order of
/// `f`'s ring. No term of the result is divisible by a leading monomial of
/// `basis`, and `f - result` lies in the ideal generated by `basis`.
pub fn normal_form(f: &Polynomial, basis: &[Polynomial]) -> Result<Polynomial> {
    for g in basis {
        if !RingContext::same_ring(f.ring(), g.ring()) {
            return Err(Error::RingMismatch);
        }
    }
    let refs: Vec<&Polynomial> = basis.iter().filter(|g| !g.is_zero()).collect();
    let (rem, rest) = reduce_terms(f.terms().to_vec(), &refs, f.ring().order(), false);
    debug_assert!(rest.is_empty());
    Ok(Polynomial::from_sorted_terms(f.ring(), rem))
}

/// S-polynomial `lcm/lt(f) * f - lcm/lt(g) * g`, normalized by leading
/// coefficients.
pub fn s_polynomial(f: &Polynomial, g: &Polynomial) -> Result<Polynomial> {
    if !RingContext::same_ring(f.ring(), g.ring()) {
        return Err(Error::RingMismatch);
    }
    let (fc, fm) = f.leading_term()?;
    let (gc, gm) = g.leading_term()?;
    let l = fm.lcm(gm);
    let a = f.mul_term(&fc.recip(), &fm.quotient_of(&l).expect("lcm"));
    let b = g.mul_term(&gc.recip(), &gm.quotient_of(&l).expect("lcm"));
    Ok(&a - &b)
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

struct Builder {
    ring: Ring,
    order: MonomialOrder,
    polys: Vec<Polynomial>,
    active: Vec<bool>,
    pairs: Vec<Pair>,
}

impl Builder {
    fn lm(&self, i: usize) -> &Monomial {
        self.polys[i].leading_monomial().expect("basis elements are nonzero")
    }

    /// Gebauer-Moeller installation of a new element `h`.
    fn update(&mut self, h: Polynomial) {
        let hi = self.polys.len();
        self.polys.push(h);
        self.active.push(true);
        let lh = self.lm(hi).clone();

        let mut cands: Vec<Pair> = (0..hi)
            .filter(|&g| self.active[g])
            .map(|g| Pair {
                i: g,
                j: hi,
                lcm: self.lm(g).lcm(&lh),
            })
            .collect();
        // Chain criterion among the new pairs: drop (g, h) when another new
        // pair has a properly dividing lcm, keeping one representative of
        // each set of equal lcms (preferring a coprime one).
        cands.sort_by(|a, b| {
            self.order.compare(&a.lcm, &b.lcm).then_with(|| {
                let ca = self.lm(a.i).is_coprime(&lh);
                let cb = self.lm(b.i).is_coprime(&lh);
                cb.cmp(&ca).then(a.i.cmp(&b.i))
            })
        });
        let mut kept: Vec<Pair> = Vec::new();
        for p in cands {
            if kept.iter().any(|k| k.lcm.divides(&p.lcm)) {
                continue;
            }
            kept.push(p);
        }
        // Product criterion.
        kept.retain(|p| !self.lm(p.i).is_coprime(&lh));

        // Chain criterion on old pairs.
        let old = std::mem::take(&mut self.pairs);
        let polys = &self.polys;
        let lm = |i: usize| polys[i].leading_monomial().expect("nonzero");
        self.pairs = old
            .into_iter()
            .filter(|p| {
                !lh.divides(&p.lcm)
                    || lm(p.i).lcm(&lh) == p.lcm
                    || lm(p.j).lcm(&lh) == p.lcm
            })
            .collect();
        self.pairs.extend(kept);

        for g in 0..hi {
            if self.active[g] && lh.divides(self.lm(g)) {
                self.active[g] = false;
            }
        }
    }

    /// Normal selection: smallest lcm first, ties by index.
    fn select(&mut self) -> Option<Pair> {
        let order = self.order;
        let best = self
            .pairs
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| {
                order
                    .compare(&a.lcm, &b.lcm)
                    .then(a.j.cmp(&b.j))
                    .then(a.i.cmp(&b.i))
            })
            .map(|(k, _)| k)?;
        Some(self.pairs.swap_remove(best))
    }

    /// Active elements, smallest leading monomial first.
    fn reducers(&self) -> Vec<&Polynomial> {
        let mut refs: Vec<&Polynomial> = self
            .polys
            .iter()
            .zip(&self.active)
            .filter(|(_, &a)| a)
            .map(|(p, _)| p)
            .collect();
        refs.sort_by(|a, b| {
            self.order.compare(
                a.leading_monomial().expect("nonzero"),
                b.leading_monomial().expect("nonzero"),
            )
        });
        refs
    }

    fn run(mut self) -> GroebnerBasis {
        while let Some(pair) = self.select() {
            let s = s_polynomial(&self.polys[pair.i], &self.polys[pair.j]).expect("same ring");
            let (rem, _) = reduce_terms(s.terms().to_vec(), &self.reducers(), self.order, false);
            if rem.is_empty() {
                continue;
            }
            let h = Polynomial::from_sorted_terms(&self.ring, rem).monic();
            if h.is_constant() {
                return unit_basis(&self.ring);
            }
            self.update(h);
        }
        self.finish()
    }

    fn finish(self) -> GroebnerBasis {
        let candidates: Vec<Polynomial> = self
            .polys
            .into_iter()
            .zip(self.active)
            .filter(|(_, a)| *a)
            .map(|(p, _)| p)
            .collect();
        interreduce(&self.ring, candidates)
    }
}

fn unit_basis(ring: &Ring) -> GroebnerBasis {
    GroebnerBasis {
        ring: ring.clone(),
        elements: vec![Polynomial::one(ring)],
    }
}

/// Replaces each generator by its remainder modulo the ones before it until
/// nothing changes; zero remainders are dropped.
fn reduce_inputs(mut f: Vec<Polynomial>) -> Vec<Polynomial> {
    loop {
        let mut next = Vec::with_capacity(f.len());
        for i in 0..f.len() {
            let before: Vec<&Polynomial> = f[..i].iter().collect();
            let (rem, _) = reduce_terms(f[i].terms().to_vec(), &before, f[i].ring().order(), false);
            if !rem.is_empty() {
                next.push(Polynomial::from_sorted_terms(f[i].ring(), rem).monic());
            }
        }
        if next == f {
            return f;
        }
        f = next;
    }
}

/// Minimizes and tail-reduces a Groebner basis, making it the reduced one.
fn interreduce(ring: &Ring, mut gb: Vec<Polynomial>) -> GroebnerBasis {
    let order = ring.order();
    gb.sort_by(|a, b| {
        order.compare(
            a.leading_monomial().expect("nonzero"),
            b.leading_monomial().expect("nonzero"),
        )
    });
    let mut minimal: Vec<Polynomial> = Vec::with_capacity(gb.len());
    for g in gb {
        let lm = g.leading_monomial().expect("nonzero");
        if minimal
            .iter()
            .any(|k| k.leading_monomial().expect("nonzero").divides(lm))
        {
            continue;
        }
        minimal.push(g);
    }
    let mut reduced = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let others: Vec<&Polynomial> = minimal
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != k)
            .map(|(_, p)| p)
            .collect();
        let (lc, lm) = minimal[k].leading_term().expect("nonzero");
        let head = Term {
            coeff: lc.clone(),
            mono: lm.clone(),
        };
        let (tail, _) = reduce_terms(minimal[k].terms()[1..].to_vec(), &others, order, false);
        let mut terms = Vec::with_capacity(tail.len() + 1);
        terms.push(head);
        terms.extend(tail);
        reduced.push(Polynomial::from_sorted_terms(ring, terms).monic());
    }
    reduced.sort_by(|a, b| {
        order.compare(
            b.leading_monomial().expect("nonzero"),
            a.leading_monomial().expect("nonzero"),
        )
    });
    GroebnerBasis {
        ring: ring.clone(),
        elements: reduced,
    }
}

/// Reduced Groebner basis of the ideal generated by `gens` in `ring`, with
/// respect to the ring's order. Normal selection with the Gebauer-Moeller
/// product and chain criteria.
pub fn buchberger(ring: &Ring, gens: &[Polynomial]) -> Result<GroebnerBasis> {
    for g in gens {
        if !RingContext::same_ring(ring, g.ring()) {
            return Err(Error::RingMismatch);
        }
    }
    let input: Vec<Polynomial> = gens.iter().filter(|g| !g.is_zero()).map(|g| g.monic()).collect();
    let mut input = reduce_inputs(input);
    if input.iter().any(|g| g.is_constant()) {
        return Ok(unit_basis(ring));
    }
    let order = ring.order();
    input.sort_by(|a, b| {
        order.compare(
            a.leading_monomial().expect("nonzero"),
            b.leading_monomial().expect("nonzero"),
        )
    });
    let mut builder = Builder {
        ring: ring.clone(),
        order,
        polys: Vec::new(),
        active: Vec::new(),
        pairs: Vec::new(),
    };
    for g in input {
        builder.update(g);
    }
    Ok(builder.run())
}

/// Checks Buchberger's criterion directly: every S-polynomial of `basis`
/// reduces to zero modulo `basis`.
pub fn satisfies_buchberger_criterion(basis: &[Polynomial]) -> Result<bool> {
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            let s = s_polynomial(&basis[i], &basis[j])?;
            if !normal_form(&s, basis)?.is_zero() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_polynomial;
    use proptest::prelude::*;

    fn ring(vars: &[&str], order: MonomialOrder) -> Ring {
        RingContext::new(vars, order).unwrap()
    }

    fn ps(r: &Ring, list: &[&str]) -> Vec<Polynomial> {
        list.iter().map(|s| parse_polynomial(s, r).unwrap()).collect()
    }

    #[test]
    fn normal_form_examples() {
        let r = ring(&["x", "y"], MonomialOrder::Lex);
        let g = ps(&r, &["x^2 - y"]);
        let f = parse_polynomial("x^4 + x^2 - 1", &r).unwrap();
        // x^2 -> y: x^4 + x^2 - 1 -> y^2 + y - 1
        assert_eq!(normal_form(&f, &g).unwrap(), parse_polynomial("y^2 + y - 1", &r).unwrap());
        assert!(normal_form(&g[0], &g).unwrap().is_zero());
        let one = Polynomial::one(&r);
        assert_eq!(normal_form(&one, &ps(&r, &["x", "y"])).unwrap(), one);
    }

    #[test]
    fn parabola_circle_basis() {
        let r = ring(&["x", "y"], MonomialOrder::Lex);
        let gb = buchberger(&r, &ps(&r, &["x^2 - y", "x^2 + y^2 - 1"])).unwrap();
        assert_eq!(gb.elements(), ps(&r, &["x^2 - y", "y^2 + y - 1"]).as_slice());
        let alt = buchberger(&r, &ps(&r, &["x^2 - y", "x^4 + x^2 - 1"])).unwrap();
        assert_eq!(gb, alt);
        assert!(gb.contains(&parse_polynomial("x^4 + x^2 - 1", &r).unwrap()).unwrap());
        assert!(!gb.contains(&parse_polynomial("x", &r).unwrap()).unwrap());
    }

    #[test]
    fn empty_and_unit_ideals() {
        let r = ring(&["x", "y"], MonomialOrder::Grevlex);
        assert!(buchberger(&r, &[]).unwrap().is_empty());
        assert!(buchberger(&r, &[Polynomial::zero(&r)]).unwrap().is_empty());
        let gb = buchberger(&r, &ps(&r, &["x", "y"])).unwrap();
        assert!(!gb.contains(&Polynomial::one(&r)).unwrap());
        assert!(buchberger(&r, &ps(&r, &["x*y - 1", "x"])).unwrap().is_unit());
    }

    #[test]
    fn coprime_binomials_are_already_a_basis() {
        let vars = ["p111", "p112", "p121", "p122", "p211", "p212", "p221", "p222"];
        let r = ring(&vars, MonomialOrder::Grevlex);
        let gens = ps(&r, &["p111*p212 - p211*p112", "p121*p222 - p221*p122"]);
        let gb = buchberger(&r, &gens).unwrap();
        let mut expected: Vec<Polynomial> = gens.iter().map(|g| g.monic()).collect();
        expected.sort_by(|a, b| {
            r.order().compare(b.leading_monomial().unwrap(), a.leading_monomial().unwrap())
        });
        assert_eq!(gb.elements(), expected.as_slice());
    }

    #[test]
    fn rejects_mixed_rings() {
        let a = ring(&["x"], MonomialOrder::Lex);
        let b = ring(&["y"], MonomialOrder::Lex);
        let f = parse_polynomial("x", &a).unwrap();
        let g = parse_polynomial("y", &b).unwrap();
        assert_eq!(normal_form(&f, &[g.clone()]), Err(Error::RingMismatch));
        assert_eq!(buchberger(&a, &[g]).err(), Some(Error::RingMismatch));
    }

    #[test]
    fn twisted_cubic_lex() {
        let r = ring(&["t", "x", "y", "z"], MonomialOrder::Lex);
        let gb = buchberger(&r, &ps(&r, &["x - t", "y - t^2", "z - t^3"])).unwrap();
        assert_eq!(gb.elements(), ps(&r, &["t - x", "x^2 - y", "x*y - z", "x*z - y^2", "y^3 - z^2"]).as_slice());
    }

    fn random_poly(r: &Ring) -> impl Strategy<Value = Polynomial> {
        let r = r.clone();
        prop::collection::vec((-3i64..=3, prop::collection::vec(0u32..3, 3)), 1..4).prop_map(
            move |ts| {
                Polynomial::from_terms(
                    &r,
                    ts.into_iter().map(|(c, e)| (Rational::from_int(c), Monomial::new(e))),
                )
            },
        )
    }

    fn case() -> impl Strategy<Value = (Ring, Vec<Polynomial>, Vec<Polynomial>, Polynomial)> {
        prop_oneof![Just(MonomialOrder::Lex), Just(MonomialOrder::Grevlex), Just(MonomialOrder::Block(1))]
            .prop_flat_map(|order| {
                let r = ring(&["x", "y", "z"], order);
                (
                    Just(r.clone()),
                    prop::collection::vec(random_poly(&r), 1..4),
                    prop::collection::vec(random_poly(&r), 3),
                    random_poly(&r),
                )
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn basis_properties((r, gens, mult, f) in case()) {
            let gb = buchberger(&r, &gens).unwrap();
            for g in &gens {
                prop_assert!(gb.contains(g).unwrap());
            }
            prop_assert!(satisfies_buchberger_criterion(gb.elements()).unwrap());
            for g in gb.elements() {
                prop_assert!(g.leading_coeff().unwrap().is_one());
            }
            // canonical: regenerate the ideal from a different generating set
            let mut regen = gens.clone();
            for (k, m) in mult.iter().enumerate() {
                let a = &gens[k % gens.len()];
                let b = &gens[(k + 1) % gens.len()];
                regen.push(&(m * a) + b);
            }
            regen.reverse();
            prop_assert_eq!(&buchberger(&r, &regen).unwrap(), &gb);
            let nf = gb.reduce(&f).unwrap();
            prop_assert_eq!(&gb.reduce(&nf).unwrap(), &nf);
            prop_assert!(gb.contains(&(&f - &nf)).unwrap());
        }
    }
}
