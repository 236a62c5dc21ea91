//! Exact sparse multivariate polynomials over the rationals.

mod matrix;
mod monomial;
mod parse;
mod polynomial;
mod ring;

pub use matrix::{determinant, mat_mul, transpose};
pub use monomial::Monomial;
pub use parse::{parse_polynomial, parse_polynomial_list};
pub use polynomial::{Polynomial, Term};
pub use ring::{MonomialOrder, Ring, RingContext};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::Rational;
    use proptest::prelude::*;

    fn ring(order: MonomialOrder) -> Ring {
        RingContext::new(&["x", "y"], order).unwrap()
    }

    fn p(r: &Ring, s: &str) -> Polynomial {
        parse_polynomial(s, r).unwrap()
    }

    #[test]
    fn addition_examples() {
        let r = ring(MonomialOrder::Lex);
        assert_eq!(&p(&r, "x^2 - y") + &p(&r, "y"), p(&r, "x^2"));
        let f = p(&r, "x^2 - y");
        assert_eq!(&f + &Polynomial::zero(&r), f);
        assert_eq!(
            &p(&r, "x^2 - y") + &p(&r, "x^2 + y^2 - 1"),
            Polynomial::from_terms(
                &r,
                [
                    (Rational::from_int(2), Monomial::new(vec![2, 0])),
                    (Rational::from_int(1), Monomial::new(vec![0, 2])),
                    (Rational::from_int(-1), Monomial::new(vec![0, 1])),
                    (Rational::from_int(-1), Monomial::new(vec![0, 0])),
                ]
            )
        );
        assert!((&f - &f).is_zero());
    }

    #[test]
    fn multiplication_examples() {
        let r = ring(MonomialOrder::Grevlex);
        assert_eq!(&p(&r, "x") * &p(&r, "y"), p(&r, "x*y"));
        assert_eq!(&p(&r, "x + y") * &p(&r, "x - y"), p(&r, "x^2 - y^2"));
        let m = RingContext::new(&["p11", "p12", "p21", "p22"], MonomialOrder::Grevlex).unwrap();
        let d = p(&m, "p11*p22 - p12*p21");
        assert_eq!(&d * &Polynomial::one(&m), d);
    }

    #[test]
    fn leading_terms() {
        let lex = ring(MonomialOrder::Lex);
        let (c, m) = p(&lex, "x^2 - y").leading_term().map(|(c, m)| (c.clone(), m.clone())).unwrap();
        assert_eq!((c, m), (Rational::one(), Monomial::new(vec![2, 0])));
        let grevlex = ring(MonomialOrder::Grevlex);
        let f = p(&grevlex, "x^2 - y^3");
        assert_eq!(f.leading_term().unwrap(), (&Rational::from_int(-1), &Monomial::new(vec![0, 3])));
        assert_eq!(
            f.leading_term_under(MonomialOrder::Lex).unwrap(),
            (Rational::one(), Monomial::new(vec![2, 0]))
        );
        let g = p(&lex, "x*y - x^2");
        assert_eq!(g.leading_term().unwrap(), (&Rational::from_int(-1), &Monomial::new(vec![2, 0])));
        assert_eq!(Polynomial::zero(&lex).leading_term(), Err(crate::Error::ZeroPolynomial));
    }

    #[test]
    fn ring_mismatch_is_an_error() {
        let a = ring(MonomialOrder::Lex);
        let b = ring(MonomialOrder::Grevlex);
        assert_eq!(p(&a, "x").checked_add(&p(&b, "x")), Err(crate::Error::RingMismatch));
        assert_eq!(p(&a, "x").checked_mul(&p(&b, "x")), Err(crate::Error::RingMismatch));
    }

    #[test]
    fn paper_style_binomial_parses() {
        let names = ["p_111", "p_112", "p_211", "p_212"];
        let r = RingContext::new(&names, MonomialOrder::Grevlex).unwrap();
        let f = p(&r, "p_111*p_212 - p_211*p_112");
        assert_eq!(f.len(), 2);
        assert!(f.is_homogeneous());
        // grevlex: the smaller exponent in the last differing variable wins
        assert_eq!(f.to_string(), "-p_112*p_211 + p_111*p_212");
    }

    fn small_poly(r: Ring) -> impl Strategy<Value = Polynomial> {
        prop::collection::vec((-5i64..5, prop::collection::vec(0u32..3, 2)), 0..5).prop_map(
            move |ts| {
                Polynomial::from_terms(
                    &r,
                    ts.into_iter().map(|(c, e)| (Rational::from_int(c), Monomial::new(e))),
                )
            },
        )
    }

    proptest! {
        #[test]
        fn ring_axioms_hold(
            f in small_poly(ring(MonomialOrder::Grevlex)),
            g in small_poly(ring(MonomialOrder::Grevlex)),
            h in small_poly(ring(MonomialOrder::Grevlex)),
        ) {
            prop_assert_eq!(&f + &g, &g + &f);
            prop_assert_eq!(&f * &g, &g * &f);
            prop_assert_eq!(&(&f + &g) + &h, &f + &(&g + &h));
            prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
            prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
            prop_assert!((&f + &(-&f)).is_zero());
        }

        #[test]
        fn terms_stay_canonical(
            f in small_poly(ring(MonomialOrder::Lex)),
            g in small_poly(ring(MonomialOrder::Lex)),
        ) {
            let prod = &f * &g;
            let order = prod.ring().order();
            for w in prod.terms().windows(2) {
                prop_assert_eq!(order.compare(&w[0].mono, &w[1].mono), std::cmp::Ordering::Greater);
            }
            prop_assert!(prod.terms().iter().all(|t| !t.coeff.is_zero()));
        }
    }
}
