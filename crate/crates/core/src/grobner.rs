//! Reduced Gröbner bases, normal forms and elimination.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::polycore::{Monomial, PolyRing, Polynomial, Scalar, TermOrder};

/// Resource limits for Buchberger's algorithm.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GbConfig {
    /// Abort when an S-polynomial or remainder exceeds this total degree.
    pub max_degree: u32,
}

impl Default for GbConfig {
    fn default() -> Self {
        GbConfig { max_degree: 64 }
    }
}

/// Polynomial with terms sorted decreasingly under a working order.
#[derive(Clone, Debug)]
struct Work {
    terms: Vec<(Monomial, Scalar)>,
}

impl Work {
    fn from_poly(p: &Polynomial, order: &TermOrder) -> Work {
        let mut terms = p.terms().to_vec();
        terms.sort_by(|a, b| order.compare(&b.0, &a.0));
        Work { terms }
    }

    fn lm(&self) -> &Monomial {
        &self.terms[0].0
    }

    fn degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0)
    }

    fn make_monic(&mut self) {
        if let Some(inv) = self.terms.first().and_then(|(_, c)| c.inv()) {
            for t in &mut self.terms {
                t.1 = &t.1 * &inv;
            }
        }
    }

    /// `self - c * m * other`, keeping the order.
    fn sub_mul(&self, c: &Scalar, m: &Monomial, other: &Work, order: &TermOrder) -> Work {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = other.terms.iter().map(|(t, k)| (t.mul(m), k * c)).peekable();
        loop {
            match (a.peek(), b.peek()) {
                (Some(x), Some(y)) => match order.compare(&x.0, &y.0) {
                    Ordering::Greater => out.push(a.next().unwrap().clone()),
                    Ordering::Less => {
                        let (t, k) = b.next().unwrap();
                        out.push((t, -&k));
                    }
                    Ordering::Equal => {
                        let x = a.next().unwrap();
                        let (_, k) = b.next().unwrap();
                        let s = &x.1 - &k;
                        if !s.is_zero() {
                            out.push((x.0.clone(), s));
                        }
                    }
                },
                (Some(_), None) => out.push(a.next().unwrap().clone()),
                (None, Some(_)) => {
                    let (t, k) = b.next().unwrap();
                    out.push((t, -&k));
                }
                (None, None) => break,
            }
        }
        Work { terms: out }
    }

    fn into_poly(self, ring: &Arc<PolyRing>) -> Polynomial {
        Polynomial::from_terms(ring, self.terms)
    }
}

/// Fully reduce `f` modulo `basis` (all monic).
fn reduce_full(f: Work, basis: &[Work], order: &TermOrder, cfg: &GbConfig) -> Result<Work> {
    let mut rem: Vec<(Monomial, Scalar)> = Vec::new();
    let mut p = f;
    while !p.terms.is_empty() {
        let (lm, lc) = p.terms[0].clone();
        if let Some(g) = basis.iter().find(|g| g.lm().divides(&lm)) {
            let q = g.lm().quotient_of(&lm);
            p = p.sub_mul(&lc, &q, g, order);
            let d = p.degree();
            if d > cfg.max_degree {
                return Err(Error::DegreeGuard { degree: d, limit: cfg.max_degree });
            }
        } else {
            rem.push(p.terms.remove(0));
        }
    }
    Ok(Work { terms: rem })
}

fn s_poly(a: &Work, b: &Work, order: &TermOrder) -> Work {
    let l = a.lm().lcm(b.lm());
    let ma = a.lm().quotient_of(&l);
    let mb = b.lm().quotient_of(&l);
    let one = a.terms[0].1.field().one();
    let zero = Work { terms: Vec::new() };
    // both operands are monic
    let left = zero.sub_mul(&-&one, &ma, a, order);
    left.sub_mul(&one, &mb, b, order)
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Pair {
    degree: u32,
    lcm: Monomial,
    i: usize,
    j: usize,
}

/// Reduced Gröbner basis of the ideal generated by `gens`.
///
/// Returns the unique reduced basis (monic, sorted by decreasing leading
/// monomial). The empty list stands for the zero ideal and `[1]` for the
/// unit ideal.
pub fn groebner_basis(gens: &[Polynomial], order: &TermOrder, cfg: &GbConfig) -> Result<Vec<Polynomial>> {
    let Some(ring) = gens.first().map(|g| g.ring().clone()) else {
        return Ok(Vec::new());
    };
    if gens.iter().any(|g| g.ring() != &ring) {
        return Err(Error::RingMismatch);
    }
    let mut basis: Vec<Work> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();
    let mut done: BTreeSet<(usize, usize)> = BTreeSet::new();

    let mut initial: Vec<Work> = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| Work::from_poly(g, order))
        .collect();
    initial.sort_by(|a, b| order.compare(a.lm(), b.lm()));
    for g in initial {
        let d = g.degree();
        if d > cfg.max_degree {
            return Err(Error::DegreeGuard { degree: d, limit: cfg.max_degree });
        }
        let mut r = reduce_full(g, &basis, order, cfg)?;
        if r.terms.is_empty() {
            continue;
        }
        r.make_monic();
        add_element(&mut basis, &mut pairs, r, order);
    }

    while !pairs.is_empty() {
        // normal strategy: smallest lcm degree, then smallest lcm, then indices
        let (best, _) = pairs
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| {
                a.degree
                    .cmp(&b.degree)
                    .then_with(|| order.compare(&a.lcm, &b.lcm))
                    .then_with(|| (a.i, a.j).cmp(&(b.i, b.j)))
            })
            .expect("nonempty");
        let pair = pairs.swap_remove(best);
        done.insert((pair.i, pair.j));
        if chain_criterion(&pair, &basis, &pairs, &done) {
            continue;
        }
        let s = s_poly(&basis[pair.i], &basis[pair.j], order);
        let d = s.degree();
        if d > cfg.max_degree {
            return Err(Error::DegreeGuard { degree: d, limit: cfg.max_degree });
        }
        let mut r = reduce_full(s, &basis, order, cfg)?;
        if r.terms.is_empty() {
            continue;
        }
        r.make_monic();
        add_element(&mut basis, &mut pairs, r, order);
    }

    Ok(interreduce(basis, order, cfg)?
        .into_iter()
        .map(|w| w.into_poly(&ring))
        .collect())
}

fn add_element(basis: &mut Vec<Work>, pairs: &mut Vec<Pair>, g: Work, _order: &TermOrder) {
    let j = basis.len();
    for (i, b) in basis.iter().enumerate() {
        if b.lm().coprime(g.lm()) {
            // product criterion: the S-polynomial reduces to zero
            continue;
        }
        let lcm = b.lm().lcm(g.lm());
        pairs.push(Pair { degree: lcm.degree(), lcm, i, j });
    }
    basis.push(g);
}

/// Buchberger's second criterion: some third leading monomial divides the
/// lcm and both pairs through it have already been treated.
fn chain_criterion(pair: &Pair, basis: &[Work], pending: &[Pair], done: &BTreeSet<(usize, usize)>) -> bool {
    let key = |a: usize, b: usize| if a < b { (a, b) } else { (b, a) };
    let treated = |a: usize, b: usize| {
        let k = key(a, b);
        done.contains(&k) || !pending.iter().any(|p| (p.i, p.j) == k)
    };
    basis.iter().enumerate().any(|(k, g)| {
        k != pair.i && k != pair.j && g.lm().divides(&pair.lcm) && treated(pair.i, k) && treated(pair.j, k)
    })
}

fn interreduce(basis: Vec<Work>, order: &TermOrder, cfg: &GbConfig) -> Result<Vec<Work>> {
    // drop elements whose leading monomial is divisible by another's
    let mut minimal: Vec<Work> = Vec::new();
    for (i, g) in basis.iter().enumerate() {
        let redundant = basis.iter().enumerate().any(|(j, h)| {
            j != i && h.lm().divides(g.lm()) && (h.lm() != g.lm() || j < i)
        });
        if !redundant {
            minimal.push(g.clone());
        }
    }
    let mut out = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<Work> = minimal
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, w)| w.clone())
            .collect();
        let head = minimal[i].terms[0].clone();
        let tail = Work { terms: minimal[i].terms[1..].to_vec() };
        let mut r = reduce_full(tail, &others, order, cfg)?;
        r.terms.insert(0, head);
        r.make_monic();
        out.push(r);
    }
    out.sort_by(|a, b| order.compare(b.lm(), a.lm()));
    Ok(out)
}

/// Remainder of `f` modulo a reduced basis; zero exactly when `f` lies in the ideal.
pub fn normal_form(f: &Polynomial, basis: &[Polynomial], order: &TermOrder) -> Result<Polynomial> {
    if basis.iter().any(|g| g.ring() != f.ring()) {
        return Err(Error::RingMismatch);
    }
    let work: Vec<Work> = basis
        .iter()
        .map(|g| {
            let mut w = Work::from_poly(g, order);
            w.make_monic();
            w
        })
        .collect();
    let cfg = GbConfig { max_degree: u32::MAX };
    Ok(reduce_full(Work::from_poly(f, order), &work, order, &cfg)?.into_poly(f.ring()))
}

/// Leading monomials of a basis under `order`.
pub fn leading_monomials(basis: &[Polynomial], order: &TermOrder) -> Vec<Monomial> {
    basis
        .iter()
        .filter_map(|g| g.leading_term(order).map(|(m, _)| m.clone()))
        .collect()
}

/// Standard monomials of a zero-dimensional basis, ascending under `order`.
/// `None` if there are infinitely many.
pub fn standard_monomials(basis: &[Polynomial], nvars: usize, order: &TermOrder) -> Option<Vec<Monomial>> {
    let lms = leading_monomials(basis, order);
    if !(0..nvars).all(|i| lms.iter().any(|m| m.pure_power_of() == Some(i) || m.is_one())) {
        return None;
    }
    let standard = |m: &Monomial| !lms.iter().any(|l| l.divides(m));
    let mut seen: BTreeSet<Monomial> = BTreeSet::new();
    let mut frontier = vec![Monomial::one(nvars)];
    while let Some(m) = frontier.pop() {
        if !standard(&m) || !seen.insert(m.clone()) {
            continue;
        }
        for i in 0..nvars {
            frontier.push(m.mul(&Monomial::var(nvars, i)));
        }
    }
    let mut out: Vec<Monomial> = seen.into_iter().collect();
    out.sort_by(|a, b| order.compare(a, b));
    Some(out)
}

/// An ideal given by generators, with a write-once cache of reduced bases.
#[derive(Debug)]
pub struct IdealPresentation {
    ring: Arc<PolyRing>,
    generators: Vec<Polynomial>,
    config: GbConfig,
    cache: Mutex<Vec<(TermOrder, Arc<Vec<Polynomial>>)>>,
}

impl Clone for IdealPresentation {
    fn clone(&self) -> Self {
        IdealPresentation {
            ring: self.ring.clone(),
            generators: self.generators.clone(),
            config: self.config,
            cache: Mutex::new(self.cache.lock().expect("cache lock").clone()),
        }
    }
}

impl PartialEq for IdealPresentation {
    /// Ideal equality: same ring and same reduced grevlex basis.
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring
            && match (self.reduced_basis(), other.reduced_basis()) {
                (Ok(a), Ok(b)) => a == b,
                _ => false,
            }
    }
}

impl IdealPresentation {
    pub fn new(ring: &Arc<PolyRing>, generators: Vec<Polynomial>) -> Result<Self> {
        if generators.iter().any(|g| g.ring() != ring) {
            return Err(Error::RingMismatch);
        }
        Ok(IdealPresentation {
            ring: ring.clone(),
            generators: generators.into_iter().filter(|g| !g.is_zero()).collect(),
            config: GbConfig::default(),
            cache: Mutex::new(Vec::new()),
        })
    }

    pub fn from_presentation(p: &crate::polycore::Presentation) -> Self {
        Self::new(&p.ring, p.generators.clone()).expect("parsed generators share the ring")
    }

    pub fn with_config(mut self, config: GbConfig) -> Self {
        self.config = config;
        self
    }

    pub fn config(&self) -> GbConfig {
        self.config
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    /// Reduced basis under `order`, computed once and cached.
    pub fn groebner(&self, order: &TermOrder) -> Result<Arc<Vec<Polynomial>>> {
        if let Some((_, gb)) = self.cache.lock().expect("cache lock").iter().find(|(o, _)| o == order) {
            return Ok(gb.clone());
        }
        let gb = Arc::new(groebner_basis(&self.generators, order, &self.config)?);
        let mut cache = self.cache.lock().expect("cache lock");
        if let Some((_, existing)) = cache.iter().find(|(o, _)| o == order) {
            return Ok(existing.clone());
        }
        cache.push((order.clone(), gb.clone()));
        Ok(gb)
    }

    /// Reduced basis in the default (grevlex) order.
    pub fn reduced_basis(&self) -> Result<Arc<Vec<Polynomial>>> {
        self.groebner(&TermOrder::Grevlex)
    }

    pub(crate) fn seed_cache(&self, order: TermOrder, gb: Vec<Polynomial>) {
        self.cache.lock().expect("cache lock").push((order, Arc::new(gb)));
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        Ok(normal_form(f, &self.reduced_basis()?, &TermOrder::Grevlex)?.is_zero())
    }

    pub fn is_unit(&self) -> Result<bool> {
        let gb = self.reduced_basis()?;
        Ok(gb.len() == 1 && gb[0].terms()[0].0.is_one())
    }

    /// Presentation of the ideal by its reduced grevlex basis.
    pub fn canonical(&self) -> Result<IdealPresentation> {
        let gb = self.reduced_basis()?;
        let out = IdealPresentation::new(&self.ring, gb.to_vec())?.with_config(self.config);
        out.seed_cache(TermOrder::Grevlex, gb.to_vec());
        Ok(out)
    }

    /// `I + <extra>`.
    pub fn extend(&self, extra: impl IntoIterator<Item = Polynomial>) -> Result<IdealPresentation> {
        let mut gens = self.generators.clone();
        gens.extend(extra);
        Ok(IdealPresentation::new(&self.ring, gens)?.with_config(self.config))
    }

    pub fn to_presentation(&self) -> Result<crate::polycore::Presentation> {
        Ok(crate::polycore::Presentation {
            ring: self.ring.clone(),
            generators: self.reduced_basis()?.to_vec(),
        })
    }
}

/// `I ∩ k[keep]`, computed with a block order eliminating the other
/// variables. The result lives in the ring of the kept variables (in their
/// original relative order) and carries its reduced grevlex basis.
pub fn contract(ideal: &IdealPresentation, keep: &[usize]) -> Result<IdealPresentation> {
    let ring = ideal.ring();
    let n = ring.nvars();
    let mut keep: Vec<usize> = keep.to_vec();
    keep.sort_unstable();
    keep.dedup();
    if keep.iter().any(|&i| i >= n) {
        return Err(Error::Precondition("contraction variable out of range".into()));
    }
    let front: Vec<usize> = (0..n).filter(|i| !keep.contains(i)).collect();
    let sub = PolyRing::new(ring.field(), keep.iter().map(|&i| ring.vars()[i].clone()).collect());
    let gb = if front.is_empty() {
        ideal.reduced_basis()?.to_vec()
    } else {
        let order = TermOrder::block(front, keep.clone(), n)?;
        ideal.groebner(&order)?.to_vec()
    };
    let gens: Vec<Polynomial> = gb.iter().filter_map(|g| g.restrict(&sub, &keep)).collect();
    let mut gens_sorted = gens.clone();
    crate::polycore::sort_desc(&mut gens_sorted, &TermOrder::Grevlex);
    let out = IdealPresentation::new(&sub, gens_sorted.clone())?.with_config(ideal.config());
    out.seed_cache(TermOrder::Grevlex, gens_sorted);
    Ok(out)
}

/// [`contract`] with variables given by name.
pub fn contract_by_names(ideal: &IdealPresentation, keep: &[&str]) -> Result<IdealPresentation> {
    let idx = keep
        .iter()
        .map(|name| {
            ideal
                .ring()
                .var_index(name)
                .ok_or_else(|| Error::Precondition(format!("unknown variable `{name}`")))
        })
        .collect::<Result<Vec<_>>>()?;
    contract(ideal, &idx)
}

/// True when `k[X]/I` is finite-dimensional (the unit ideal included).
pub fn is_zero_dimensional(ideal: &IdealPresentation) -> Result<bool> {
    let gb = ideal.reduced_basis()?;
    let lms = leading_monomials(&gb, &TermOrder::Grevlex);
    if lms.iter().any(|m| m.is_one()) {
        return Ok(true);
    }
    Ok((0..ideal.ring().nvars()).all(|i| lms.iter().any(|m| m.pure_power_of() == Some(i))))
}
