use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::monomial::Monomial;
use crate::error::{Error, Result};

/// Total monomial orders on `k[x_1, ..., x_n]`. Variables earlier in the
/// ring are larger.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MonomialOrder {
    Lex,
    Grevlex,
    /// Grevlex on the first `k` variables, ties broken by grevlex on the
    /// rest. Any monomial containing one of the first `k` variables beats
    /// every monomial free of them, which makes it an elimination order.
    Block(usize),
}

fn grevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&e| e as u64).sum();
    let db: u64 = b.iter().map(|&e| e as u64).sum();
    da.cmp(&db).then_with(|| {
        for (x, y) in a.iter().zip(b).rev() {
            if x != y {
                return y.cmp(x);
            }
        }
        Ordering::Equal
    })
}

impl MonomialOrder {
    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let (x, y) = (a.exponents(), b.exponents());
        match *self {
            MonomialOrder::Lex => x.cmp(y),
            MonomialOrder::Grevlex => a.degree().cmp(&b.degree()).then_with(|| {
                for (p, q) in x.iter().zip(y).rev() {
                    if p != q {
                        return q.cmp(p);
                    }
                }
                Ordering::Equal
            }),
            MonomialOrder::Block(k) => {
                grevlex(&x[..k], &y[..k]).then_with(|| grevlex(&x[k..], &y[k..]))
            }
        }
    }

    pub fn parse(name: &str) -> Option<Self> {
        match name {
            "lex" => Some(MonomialOrder::Lex),
            "grevlex" => Some(MonomialOrder::Grevlex),
            _ => name
                .strip_prefix("block:")
                .and_then(|k| k.parse().ok())
                .map(MonomialOrder::Block),
        }
    }
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonomialOrder::Lex => f.write_str("lex"),
            MonomialOrder::Grevlex => f.write_str("grevlex"),
            MonomialOrder::Block(k) => write!(f, "block:{k}"),
        }
    }
}

/// Shared handle to a ring. Polynomials hold one of these.
pub type Ring = Arc<RingContext>;

/// The polynomial ring `Q[vars]` together with the monomial order used to
/// keep polynomials sorted.
#[derive(Debug)]
pub struct RingContext {
    vars: Vec<String>,
    order: MonomialOrder,
    index: HashMap<String, usize>,
}

pub(crate) fn is_valid_var_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl RingContext {
    pub fn new<S: AsRef<str>>(vars: &[S], order: MonomialOrder) -> Result<Ring> {
        let vars: Vec<String> = vars.iter().map(|v| v.as_ref().to_string()).collect();
        let mut index = HashMap::with_capacity(vars.len());
        for (i, v) in vars.iter().enumerate() {
            if !is_valid_var_name(v) {
                return Err(Error::InvalidRing(format!("bad variable name `{v}`")));
            }
            if index.insert(v.clone(), i).is_some() {
                return Err(Error::InvalidRing(format!("duplicate variable `{v}`")));
            }
        }
        if let MonomialOrder::Block(k) = order {
            if k == 0 || k >= vars.len() {
                return Err(Error::InvalidRing(format!(
                    "block order needs 1 <= k < {}, got {k}",
                    vars.len()
                )));
            }
        }
        Ok(Arc::new(RingContext { vars, order, index }))
    }

    /// Parses a ring declaration: variable names separated by commas or
    /// whitespace, optionally wrapped in `[...]`.
    pub fn parse(decl: &str, order: MonomialOrder) -> Result<Ring> {
        let body = decl.trim();
        let body = body
            .strip_prefix('[')
            .and_then(|b| b.strip_suffix(']'))
            .unwrap_or(body);
        let vars: Vec<&str> = body
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|s| !s.is_empty())
            .collect();
        Self::new(&vars, order)
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn variables(&self) -> &[String] {
        &self.vars
    }

    pub fn var_name(&self, i: usize) -> &str {
        &self.vars[i]
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    /// Same variables, different order. Block orders that do not fit fall
    /// back to an error.
    pub fn with_order(&self, order: MonomialOrder) -> Result<Ring> {
        Self::new(&self.vars, order)
    }

    /// A variable name not present in this ring, derived from `base`.
    pub fn fresh_name(&self, base: &str) -> String {
        if !self.index.contains_key(base) {
            return base.to_string();
        }
        (0..)
            .map(|i| format!("{base}{i}"))
            .find(|n| !self.index.contains_key(n))
            .expect("unbounded search")
    }

    pub fn same_ring(a: &Ring, b: &Ring) -> bool {
        Arc::ptr_eq(a, b) || (a.order == b.order && a.vars == b.vars)
    }

    pub fn declaration(&self) -> String {
        self.vars.join(", ")
    }
}

impl PartialEq for RingContext {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.vars == other.vars
    }
}

impl Eq for RingContext {}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rejects_bad_rings() {
        assert!(RingContext::new(&["x", "x"], MonomialOrder::Lex).is_err());
        assert!(RingContext::new(&["1x"], MonomialOrder::Lex).is_err());
        assert!(RingContext::new(&["x", "y"], MonomialOrder::Block(2)).is_err());
        assert!(RingContext::new(&["x", "y"], MonomialOrder::Block(1)).is_ok());
    }

    #[test]
    fn parses_declarations() {
        let r = RingContext::parse("[x, y,z]", MonomialOrder::Grevlex).unwrap();
        assert_eq!(r.variables(), &["x", "y", "z"]);
        assert_eq!(r.var_index("z"), Some(2));
        assert_eq!(r.fresh_name("t"), "t");
        assert_eq!(r.fresh_name("x"), "x0");
    }

    fn orders() -> Vec<MonomialOrder> {
        vec![
            MonomialOrder::Lex,
            MonomialOrder::Grevlex,
            MonomialOrder::Block(1),
            MonomialOrder::Block(2),
        ]
    }

    fn mono() -> impl Strategy<Value = Monomial> {
        prop::collection::vec(0u32..4, 3).prop_map(Monomial::new)
    }

    proptest! {
        #[test]
        fn orders_are_total_multiplicative_and_well_founded(
            a in mono(), b in mono(), c in mono(), w in mono()
        ) {
            let one = Monomial::one(3);
            for ord in orders() {
                let ab = ord.compare(&a, &b);
                prop_assert_eq!(ab.reverse(), ord.compare(&b, &a));
                prop_assert_eq!(ab == Ordering::Equal, a == b);
                if ab == Ordering::Less && ord.compare(&b, &c) == Ordering::Less {
                    prop_assert_eq!(ord.compare(&a, &c), Ordering::Less);
                }
                prop_assert_eq!(ord.compare(&a.mul(&w), &b.mul(&w)), ab);
                if a != one {
                    prop_assert_eq!(ord.compare(&one, &a), Ordering::Less);
                }
            }
        }
    }

    #[test]
    fn lex_grevlex_examples() {
        let x2 = Monomial::new(vec![2, 0]);
        let y3 = Monomial::new(vec![0, 3]);
        assert_eq!(MonomialOrder::Lex.compare(&x2, &y3), Ordering::Greater);
        assert_eq!(MonomialOrder::Grevlex.compare(&x2, &y3), Ordering::Less);
    }
}
