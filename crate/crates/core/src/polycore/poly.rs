use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::{Field, Monomial, Scalar, TermOrder};
use crate::error::{Error, Result};

/// The ambient polynomial ring: a field and an ordered list of variable names.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PolyRing {
    field: Field,
    vars: Vec<String>,
}

impl PolyRing {
    pub fn new(field: Field, vars: Vec<String>) -> Arc<PolyRing> {
        Arc::new(PolyRing { field, vars })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }
}

/// Which arithmetic operation [`poly_arith`] performs.
#[derive(Clone, Debug)]
pub enum ArithOp {
    Add,
    Mul,
    ScalarMul(Scalar),
}

/// Sparse polynomial. Terms are stored with nonzero coefficients, sorted
/// decreasingly in graded reverse lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    ring: Arc<PolyRing>,
    terms: Vec<(Monomial, Scalar)>,
}

impl Polynomial {
    pub fn zero(ring: &Arc<PolyRing>) -> Polynomial {
        Polynomial {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(ring: &Arc<PolyRing>, c: Scalar) -> Polynomial {
        Polynomial::from_terms(ring, [(Monomial::one(ring.nvars()), c)])
    }

    pub fn one(ring: &Arc<PolyRing>) -> Polynomial {
        Polynomial::constant(ring, ring.field().one())
    }

    pub fn var(ring: &Arc<PolyRing>, i: usize) -> Polynomial {
        Polynomial::from_terms(ring, [(Monomial::var(ring.nvars(), i), ring.field().one())])
    }

    pub fn monomial(ring: &Arc<PolyRing>, m: Monomial) -> Polynomial {
        Polynomial::from_terms(ring, [(m, ring.field().one())])
    }

    /// Collects like terms, drops zeros and sorts.
    pub fn from_terms(
        ring: &Arc<PolyRing>,
        terms: impl IntoIterator<Item = (Monomial, Scalar)>,
    ) -> Polynomial {
        let mut acc: BTreeMap<Monomial, Scalar> = BTreeMap::new();
        for (m, c) in terms {
            debug_assert_eq!(m.nvars(), ring.nvars());
            match acc.get_mut(&m) {
                Some(e) => *e = &*e + &c,
                None => {
                    acc.insert(m, c);
                }
            }
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| TermOrder::Grevlex.compare(&b.0, &a.0));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn field(&self) -> Field {
        self.ring.field()
    }

    /// Terms in decreasing graded reverse lexicographic order.
    pub fn terms(&self) -> &[(Monomial, Scalar)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms
            .iter()
            .find(|(t, _)| t == m)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(|| self.field().zero())
    }

    /// Largest term under `order`.
    pub fn leading_term(&self, order: &TermOrder) -> Option<&(Monomial, Scalar)> {
        self.terms.iter().max_by(|a, b| order.compare(&a.0, &b.0))
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    /// Smallest degree of a term, i.e. the degree of the lowest form.
    pub fn order(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).min()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.terms.windows(2).all(|w| w[0].0.degree() == w[1].0.degree())
    }

    pub fn homogeneous_component(&self, d: u32) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .cloned()
                .collect(),
        }
    }

    /// Lowest-degree homogeneous component; zero for the zero polynomial.
    pub fn lowest_form(&self) -> Polynomial {
        match self.order() {
            Some(d) => self.homogeneous_component(d),
            None => self.clone(),
        }
    }

    pub fn variables_used(&self) -> Vec<usize> {
        (0..self.ring.nvars())
            .filter(|&i| self.terms.iter().any(|(m, _)| m.exponent(i) > 0))
            .collect()
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        // multiplying by a monomial preserves grevlex order
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(t, a)| (t.mul(m), a.clone())).collect(),
        }
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(Polynomial::from_terms(
            &self.ring,
            self.terms.iter().chain(&other.terms).cloned(),
        ))
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(Polynomial::from_terms(
            &self.ring,
            self.terms
                .iter()
                .cloned()
                .chain(other.terms.iter().map(|(m, c)| (m.clone(), -c))),
        ))
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        let mut out = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.push((
                    ma.checked_mul(mb).ok_or(Error::ExponentOverflow)?,
                    ca * cb,
                ));
            }
        }
        Ok(Polynomial::from_terms(&self.ring, out))
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one(&self.ring);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    fn check_ring(&self, other: &Polynomial) -> Result<()> {
        if Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    /// Move into another ring; `positions[i]` is the index in `target` of
    /// this ring's variable `i`. Fields must agree.
    pub fn embed(&self, target: &Arc<PolyRing>, positions: &[usize]) -> Polynomial {
        Polynomial::from_terms(
            target,
            self.terms
                .iter()
                .map(|(m, c)| (m.embed(target.nvars(), positions), c.clone())),
        )
    }

    /// Embed by matching variable names; fails if a used variable is missing.
    pub fn embed_by_name(&self, target: &Arc<PolyRing>) -> Result<Polynomial> {
        if target.field() != self.field() {
            return Err(Error::RingMismatch);
        }
        let used = self.variables_used();
        let mut positions = vec![0; self.ring.nvars()];
        for (i, name) in self.ring.vars().iter().enumerate() {
            match target.var_index(name) {
                Some(p) => positions[i] = p,
                None if !used.contains(&i) => {
                    // unused variables may be absent; map them onto a dummy
                    positions[i] = usize::MAX;
                }
                None => return Err(Error::RingMismatch),
            }
        }
        let n = target.nvars();
        Ok(Polynomial::from_terms(
            target,
            self.terms.iter().map(|(m, c)| {
                let mut e = vec![0u32; n];
                for (i, &p) in positions.iter().enumerate() {
                    if m.exponent(i) > 0 {
                        e[p] = m.exponent(i) as u32;
                    }
                }
                (Monomial::from_exponents(&e).expect("fits"), c.clone())
            }),
        ))
    }

    /// Restrict to the sub-ring on `vars` (indices into this ring, kept in
    /// the given order). `None` if another variable occurs.
    pub fn restrict(&self, target: &Arc<PolyRing>, vars: &[usize]) -> Option<Polynomial> {
        if self.terms.iter().any(|(m, _)| !m.supported_in(vars)) {
            return None;
        }
        Some(Polynomial::from_terms(
            target,
            self.terms.iter().map(|(m, c)| (m.restrict(vars), c.clone())),
        ))
    }

    /// Substitute `images[i]` for variable `i`; all images share one ring.
    pub fn substitute(&self, images: &[Polynomial]) -> Polynomial {
        assert_eq!(images.len(), self.ring.nvars());
        let target = images
            .first()
            .map(|p| p.ring.clone())
            .unwrap_or_else(|| self.ring.clone());
        let mut acc = Polynomial::zero(&target);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(&target, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    t = &t * &images[i].pow(e as u32);
                }
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Normalise so the leading grevlex coefficient is one.
    pub fn monic(&self) -> Polynomial {
        match self.terms.first() {
            Some((_, c)) => self.scale(&c.inv().expect("nonzero")),
            None => self.clone(),
        }
    }
}

/// Arithmetic with an explicit ring check.
pub fn poly_arith(a: &Polynomial, b: &Polynomial, op: ArithOp) -> Result<Polynomial> {
    match op {
        ArithOp::Add => a.try_add(b),
        ArithOp::Mul => a.try_mul(b),
        ArithOp::ScalarMul(c) => {
            if c.field() != a.field() {
                return Err(Error::RingMismatch);
            }
            Ok(a.scale(&c))
        }
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.try_add(rhs).expect("ring mismatch in polynomial addition")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.try_sub(rhs).expect("ring mismatch in polynomial subtraction")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.try_mul(rhs).expect("ring mismatch in polynomial multiplication")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

pub(crate) fn write_monomial(f: &mut impl fmt::Write, m: &Monomial, vars: &[String]) -> fmt::Result {
    let mut first = true;
    for (i, &e) in m.exponents().iter().enumerate() {
        if e == 0 {
            continue;
        }
        if !first {
            f.write_char('*')?;
        }
        first = false;
        f.write_str(&vars[i])?;
        if e > 1 {
            write!(f, "^{e}")?;
        }
    }
    Ok(())
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            if k == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            let a = c.abs();
            if m.is_one() {
                write!(f, "{a}")?;
            } else {
                if !a.is_one() {
                    write!(f, "{a}*")?;
                }
                write_monomial(f, m, self.ring.vars())?;
            }
        }
        Ok(())
    }
}

/// Sort by grevlex, largest first. Used to present bases canonically.
pub fn sort_desc(polys: &mut [Polynomial], order: &TermOrder) {
    polys.sort_by(|a, b| match (a.leading_term(order), b.leading_term(order)) {
        (Some(x), Some(y)) => order.compare(&y.0, &x.0),
        (None, None) => Ordering::Equal,
        (None, _) => Ordering::Greater,
        (_, None) => Ordering::Less,
    });
}
