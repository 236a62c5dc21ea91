use super::polynomial::Polynomial;
use super::ring::Ring;

/// Determinant of a square polynomial matrix by cofactor expansion along
/// the first row. Only used for the small minors met in this crate.
pub fn determinant(ring: &Ring, m: &[Vec<Polynomial>]) -> Polynomial {
    let n = m.len();
    assert!(m.iter().all(|row| row.len() == n), "determinant of non-square matrix");
    match n {
        0 => Polynomial::one(ring),
        1 => m[0][0].clone(),
        2 => &(&m[0][0] * &m[1][1]) - &(&m[0][1] * &m[1][0]),
        _ => {
            let mut acc = Polynomial::zero(ring);
            for j in 0..n {
                if m[0][j].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<Polynomial>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|(k, _)| *k != j)
                            .map(|(_, p)| p.clone())
                            .collect()
                    })
                    .collect();
                let term = &m[0][j] * &determinant(ring, &minor);
                acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
            }
            acc
        }
    }
}

/// Product of polynomial matrices.
pub fn mat_mul(ring: &Ring, a: &[Vec<Polynomial>], b: &[Vec<Polynomial>]) -> Vec<Vec<Polynomial>> {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            assert_eq!(row.len(), inner, "matrix shapes do not compose");
            (0..cols)
                .map(|j| {
                    row.iter()
                        .zip(b)
                        .filter(|(x, brow)| !x.is_zero() && !brow[j].is_zero())
                        .fold(Polynomial::zero(ring), |acc, (x, brow)| &acc + &(x * &brow[j]))
                })
                .collect()
        })
        .collect()
}

pub fn transpose(a: &[Vec<Polynomial>]) -> Vec<Vec<Polynomial>> {
    let cols = a.first().map_or(0, Vec::len);
    (0..cols).map(|j| a.iter().map(|row| row[j].clone()).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_polynomial, MonomialOrder, RingContext};

    #[test]
    fn three_by_three_determinant() {
        let r = RingContext::new(&["a", "b", "c"], MonomialOrder::Grevlex).unwrap();
        let p = |s: &str| parse_polynomial(s, &r).unwrap();
        let m = vec![
            vec![p("a"), p("b"), p("c")],
            vec![p("b"), p("c"), p("a")],
            vec![p("c"), p("a"), p("b")],
        ];
        // circulant determinant: 3abc - a^3 - b^3 - c^3
        assert_eq!(determinant(&r, &m), p("3*a*b*c - a^3 - b^3 - c^3"));
        let prod = mat_mul(&r, &m, &transpose(&m));
        assert_eq!(prod[0][0], p("a^2 + b^2 + c^2"));
    }
}
