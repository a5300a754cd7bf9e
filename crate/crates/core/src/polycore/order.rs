use std::cmp::Ordering;

use super::Monomial;
use crate::error::{Error, Result};

/// Monomial orders. `Block` compares the front variables first (graded
/// reverse lexicographic inside each block), so it eliminates them.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum TermOrder {
    Grevlex,
    Lex,
    Block { front: Vec<usize>, back: Vec<usize> },
}

impl TermOrder {
    /// A block order; `front` and `back` must partition `0..nvars`.
    pub fn block(front: Vec<usize>, back: Vec<usize>, nvars: usize) -> Result<TermOrder> {
        let mut seen = vec![false; nvars];
        for &i in front.iter().chain(&back) {
            if i >= nvars || seen[i] {
                return Err(Error::Precondition(
                    "block order variables must partition the ring variables".into(),
                ));
            }
            seen[i] = true;
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::Precondition(
                "block order variables must partition the ring variables".into(),
            ));
        }
        Ok(TermOrder::Block { front, back })
    }

    /// Checked comparison; fails when the monomials have different arity.
    pub fn try_compare(&self, a: &Monomial, b: &Monomial) -> Result<Ordering> {
        if a.nvars() != b.nvars() {
            return Err(Error::RingMismatch);
        }
        if let TermOrder::Block { front, back } = self {
            if front.len() + back.len() != a.nvars() {
                return Err(Error::RingMismatch);
            }
        }
        Ok(self.compare(a, b))
    }

    pub fn compare(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let (ea, eb) = (a.exponents(), b.exponents());
        match self {
            TermOrder::Grevlex => grevlex(ea, eb),
            TermOrder::Lex => ea.cmp(eb),
            TermOrder::Block { front, back } => {
                let f = |v: &[usize], e: &[u16]| v.iter().map(|&i| e[i]).collect::<Vec<_>>();
                let (fa, fb) = (f(front, ea), f(front, eb));
                grevlex(&fa, &fb).then_with(|| grevlex(&f(back, ea), &f(back, eb)))
            }
        }
    }

    pub fn is_degree_compatible(&self) -> bool {
        matches!(self, TermOrder::Grevlex)
    }
}

fn grevlex(a: &[u16], b: &[u16]) -> Ordering {
    let da: u32 = a.iter().map(|&e| u32::from(e)).sum();
    let db: u32 = b.iter().map(|&e| u32::from(e)).sum();
    da.cmp(&db).then_with(|| {
        for (x, y) in a.iter().rev().zip(b.iter().rev()) {
            if x != y {
                // smaller exponent in the last differing variable wins
                return y.cmp(&x);
            }
        }
        Ordering::Equal
    })
}
