use crate::error::{Error, Result};

/// Exponent vector over the variables of the ambient ring.
///
/// Derived `Ord` is plain lexicographic comparison of the exponent vectors;
/// term orders live in [`TermOrder`](super::TermOrder).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<u16>);

impl Monomial {
    pub fn one(nvars: usize) -> Monomial {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Monomial {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn from_exponents(exps: &[u32]) -> Result<Monomial> {
        exps.iter()
            .map(|&e| u16::try_from(e).map_err(|_| Error::ExponentOverflow))
            .collect::<Result<Vec<_>>>()
            .map(Monomial)
    }

    pub fn exponents(&self) -> &[u16] {
        &self.0
    }

    pub fn exponent(&self, i: usize) -> u16 {
        self.0[i]
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn checked_mul(&self, other: &Monomial) -> Option<Monomial> {
        debug_assert_eq!(self.0.len(), other.0.len());
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_add(*b))
            .collect::<Option<Vec<_>>>()
            .map(Monomial)
    }

    /// Panics on exponent overflow past `u16::MAX`.
    pub fn mul(&self, other: &Monomial) -> Monomial {
        self.checked_mul(other).expect("monomial exponent overflow")
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| b - a).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// True when only the listed variables occur.
    pub fn supported_in(&self, vars: &[usize]) -> bool {
        self.0
            .iter()
            .enumerate()
            .all(|(i, &e)| e == 0 || vars.contains(&i))
    }

    /// Keep the listed coordinates, in the listed order.
    pub fn restrict(&self, vars: &[usize]) -> Monomial {
        Monomial(vars.iter().map(|&i| self.0[i]).collect())
    }

    /// Embed into a larger ring; `positions[i]` is the target index of variable `i`.
    pub fn embed(&self, nvars: usize, positions: &[usize]) -> Monomial {
        let mut e = vec![0; nvars];
        for (i, &p) in positions.iter().enumerate() {
            e[p] = self.0[i];
        }
        Monomial(e)
    }

    /// The variable index when this is a single variable.
    pub fn as_variable(&self) -> Option<usize> {
        if self.degree() != 1 {
            return None;
        }
        self.0.iter().position(|&e| e == 1)
    }

    /// Index of the only variable occurring, if the monomial is a pure power.
    pub fn pure_power_of(&self) -> Option<usize> {
        let mut found = None;
        for (i, &e) in self.0.iter().enumerate() {
            if e > 0 {
                if found.is_some() {
                    return None;
                }
                found = Some(i);
            }
        }
        found
    }
}

/// All monomials in `nvars` variables of exactly the given degree, in
/// descending lexicographic order of exponent vectors.
pub fn monomials_of_degree(nvars: usize, degree: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut cur = vec![0u16; nvars];
    fn rec(i: usize, left: u32, cur: &mut Vec<u16>, out: &mut Vec<Monomial>) {
        let n = cur.len();
        if i + 1 == n {
            cur[i] = left as u16;
            out.push(Monomial(cur.clone()));
            cur[i] = 0;
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e as u16;
            rec(i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    if nvars == 0 {
        if degree == 0 {
            out.push(Monomial(Vec::new()));
        }
        return out;
    }
    rec(0, degree, &mut cur, &mut out);
    out
}
