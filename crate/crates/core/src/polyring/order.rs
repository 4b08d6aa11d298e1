use std::cmp::Ordering;

use super::Monomial;
use crate::{Error, Result};

/// Admissible monomial orders.
///
/// `Block(k)` compares the first `k` variables by degrevlex and breaks
/// ties with degrevlex on the rest, so it eliminates the first `k`
/// variables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub enum MonomialOrder {
    #[default]
    DegRevLex,
    Lex,
    Block(usize),
}

impl MonomialOrder {
    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Result<Ordering> {
        if a.nvars() != b.nvars() {
            return Err(Error::LengthMismatch {
                expected: a.nvars(),
                found: b.nvars(),
            });
        }
        Ok(self.cmp_exps(&a.0, &b.0))
    }

    pub(crate) fn cmp_exps(&self, a: &[u32], b: &[u32]) -> Ordering {
        match *self {
            MonomialOrder::DegRevLex => degrevlex(a, b),
            MonomialOrder::Lex => a.cmp(b),
            MonomialOrder::Block(k) => {
                let k = k.min(a.len());
                degrevlex(&a[..k], &b[..k]).then_with(|| degrevlex(&a[k..], &b[k..]))
            }
        }
    }
}

fn degrevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    da.cmp(&db).then_with(|| {
        for (x, y) in a.iter().zip(b).rev() {
            if x != y {
                // smaller exponent in the last differing variable wins
                return y.cmp(x);
            }
        }
        Ordering::Equal
    })
}
