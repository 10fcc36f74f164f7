//! Monomial orders.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use super::mpoly::{MPoly, Monomial};
use super::rational::Rational;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OrderKind {
    Lex,
    Degrevlex,
}

/// A monomial order together with a variable priority list.
///
/// `priority[0]` is the index of the largest variable. The default priority
/// is the variable list itself, so for the deformation ring
/// `x0 > x > x12 > x21 > y0 > y > y12 > y21`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialOrder {
    kind: OrderKind,
    priority: Vec<usize>,
}

impl MonomialOrder {
    pub fn new(kind: OrderKind, priority: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; priority.len()];
        for &i in &priority {
            if i >= priority.len() || seen[i] {
                return Err(Error::InvalidInput(format!(
                    "priority {priority:?} is not a permutation"
                )));
            }
            seen[i] = true;
        }
        Ok(MonomialOrder { kind, priority })
    }

    pub fn lex(nvars: usize) -> Self {
        MonomialOrder { kind: OrderKind::Lex, priority: (0..nvars).collect() }
    }

    pub fn degrevlex(nvars: usize) -> Self {
        MonomialOrder { kind: OrderKind::Degrevlex, priority: (0..nvars).collect() }
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    pub fn priority(&self) -> &[usize] {
        &self.priority
    }

    pub fn nvars(&self) -> usize {
        self.priority.len()
    }

    pub fn cmp(&self, a: &[u32], b: &[u32]) -> Ordering {
        match self.kind {
            OrderKind::Lex => {
                for &i in &self.priority {
                    match a[i].cmp(&b[i]) {
                        Ordering::Equal => continue,
                        o => return o,
                    }
                }
                Ordering::Equal
            }
            OrderKind::Degrevlex => {
                let da: u32 = a.iter().sum();
                let db: u32 = b.iter().sum();
                if da != db {
                    return da.cmp(&db);
                }
                // Ties: smaller exponent in the lowest-priority differing variable wins.
                for &i in self.priority.iter().rev() {
                    match a[i].cmp(&b[i]) {
                        Ordering::Equal => continue,
                        o => return o.reverse(),
                    }
                }
                Ordering::Equal
            }
        }
    }

    /// Leading monomial and coefficient, `None` for the zero polynomial.
    pub fn leading_term<'a>(&self, p: &'a MPoly) -> Option<(&'a Monomial, &'a Rational)> {
        p.terms().max_by(|a, b| self.cmp(a.0, b.0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn degrevlex_examples() {
        let o = MonomialOrder::degrevlex(3);
        // x*z < y^2 under degrevlex with x > y > z
        assert_eq!(o.cmp(&[1, 0, 1], &[0, 2, 0]), Ordering::Less);
        assert_eq!(o.cmp(&[2, 0, 0], &[1, 1, 0]), Ordering::Greater);
        assert_eq!(o.cmp(&[0, 0, 3], &[1, 1, 0]), Ordering::Greater);
        let l = MonomialOrder::lex(3);
        assert_eq!(l.cmp(&[1, 0, 1], &[0, 2, 0]), Ordering::Greater);
    }

    #[test]
    fn priority_must_be_permutation() {
        assert!(MonomialOrder::new(OrderKind::Lex, vec![0, 0]).is_err());
        assert!(MonomialOrder::new(OrderKind::Lex, vec![1, 0]).is_ok());
    }

    fn mono() -> impl Strategy<Value = Vec<u32>> {
        prop::collection::vec(0u32..4, 4)
    }

    proptest! {
        #[test]
        fn orders_are_multiplicative_and_total(a in mono(), b in mono(), c in mono(), lex in any::<bool>()) {
            let o = if lex { MonomialOrder::lex(4) } else { MonomialOrder::degrevlex(4) };
            let ac: Vec<u32> = a.iter().zip(&c).map(|(x, y)| x + y).collect();
            let bc: Vec<u32> = b.iter().zip(&c).map(|(x, y)| x + y).collect();
            prop_assert_eq!(o.cmp(&a, &b), o.cmp(&ac, &bc));
            prop_assert_eq!(o.cmp(&a, &b), o.cmp(&b, &a).reverse());
            prop_assert_eq!(o.cmp(&a, &b) == Ordering::Equal, a == b);
            // 1 is the smallest monomial
            prop_assert_ne!(o.cmp(&a, &[0, 0, 0, 0]), Ordering::Less);
        }
    }
}
