//! Fibre products, connected sums and apolar algebras.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::grobner::IdealPresentation;
use crate::polycore::{monomials_of_degree, Monomial, PolyRing, Polynomial, Scalar};
use crate::quotient::{build_algebra, evaluate_monomials, kernel_ideal, ArtinAlgebra, Vector};

/// A constructed algebra, flagged when one factor was degenerate and the
/// other factor is returned unchanged.
#[derive(Clone, Debug)]
pub struct SumResult {
    pub algebra: ArtinAlgebra,
    pub trivial: bool,
}

fn joint_ring(r: &ArtinAlgebra, s: &ArtinAlgebra) -> Result<Arc<PolyRing>> {
    if r.field() != s.field() {
        return Err(Error::RingMismatch);
    }
    if let Some(v) = r.ring().vars().iter().find(|v| s.ring().vars().contains(v)) {
        return Err(Error::VariableCollision(v.clone()));
    }
    let vars = r.ring().vars().iter().chain(s.ring().vars()).cloned().collect();
    Ok(PolyRing::new(r.field(), vars))
}

/// Generators of `I_R^e + I_S^e + <Y_i Z_j>` in the joint ring.
fn fibre_generators(r: &ArtinAlgebra, s: &ArtinAlgebra, ring: &Arc<PolyRing>) -> Vec<Polynomial> {
    let m = r.nvars();
    let n = s.nvars();
    let left: Vec<usize> = (0..m).collect();
    let right: Vec<usize> = (m..m + n).collect();
    let mut gens: Vec<Polynomial> = r.reduced_basis().iter().map(|g| g.embed(ring, &left)).collect();
    gens.extend(s.reduced_basis().iter().map(|g| g.embed(ring, &right)));
    for i in 0..m {
        for j in m..m + n {
            gens.push(&Polynomial::var(ring, i) * &Polynomial::var(ring, j));
        }
    }
    gens
}

/// `R ×_k S = k[Y,Z]/(I_R + I_S + <Y*Z>)`.
pub fn fibre_product(r: &ArtinAlgebra, s: &ArtinAlgebra) -> Result<SumResult> {
    let ring = joint_ring(r, s)?;
    if s.length() == 1 {
        return Ok(SumResult { algebra: r.clone(), trivial: true });
    }
    if r.length() == 1 {
        return Ok(SumResult { algebra: s.clone(), trivial: true });
    }
    let gens = fibre_generators(r, s, &ring);
    let algebra = build_algebra(&IdealPresentation::new(&ring, gens)?)?;
    Ok(SumResult { algebra, trivial: false })
}

/// The socle generator whose largest standard monomial has coefficient one.
pub fn socle_generator(r: &ArtinAlgebra) -> Result<Polynomial> {
    let soc = r.socle();
    if soc.dim() != 1 {
        return Err(Error::NotGorenstein(soc.dim()));
    }
    Ok(r.lift(&soc.rows()[0]))
}

/// Data of a connected sum `R #_k S` along `Δ_R = u Δ_S`.
#[derive(Clone, Debug)]
pub struct ConnectedSumSpec {
    pub left: ArtinAlgebra,
    pub right: ArtinAlgebra,
    pub socle_left: Polynomial,
    pub socle_right: Polynomial,
    pub unit: Scalar,
}

impl ConnectedSumSpec {
    /// Canonical socle generators and `u = 1`.
    pub fn new(left: ArtinAlgebra, right: ArtinAlgebra) -> Result<Self> {
        let socle_left = socle_generator(&left)?;
        let socle_right = socle_generator(&right)?;
        let unit = left.field().one();
        Ok(ConnectedSumSpec { left, right, socle_left, socle_right, unit })
    }

    pub fn with_unit(mut self, unit: Scalar) -> Self {
        self.unit = unit;
        self
    }
}

fn socle_vector(a: &ArtinAlgebra, delta: &Polynomial, side: &str) -> Result<Vector> {
    let v = a.element(delta).map_err(|_| Error::BadSocleElement(format!("{side}: `{delta}` is not in the ring")))?;
    if v.iter().all(Scalar::is_zero) || !a.socle().contains(&v) {
        return Err(Error::BadSocleElement(format!("{side}: `{delta}` does not generate the socle")));
    }
    Ok(v)
}

/// `R #_k S = k[Y,Z]/(I_R + I_S + <Y*Z> + <Δ_R - u Δ_S>)`.
pub fn connected_sum(spec: &ConnectedSumSpec) -> Result<SumResult> {
    let (r, s) = (&spec.left, &spec.right);
    for a in [r, s] {
        if !a.is_gorenstein() {
            return Err(Error::NotGorenstein(a.socle_type()));
        }
        if a.length() == 1 {
            return Err(Error::Precondition("a connected sum factor equals the residue field".into()));
        }
    }
    if spec.unit.is_zero() || spec.unit.field() != r.field() {
        return Err(Error::Precondition("the unit must be a nonzero scalar of the base field".into()));
    }
    let ring = joint_ring(r, s)?;
    let dr = r.lift(&socle_vector(r, &spec.socle_left, "left")?);
    let ds = s.lift(&socle_vector(s, &spec.socle_right, "right")?);
    if s.length() == 2 {
        return Ok(SumResult { algebra: r.clone(), trivial: true });
    }
    if r.length() == 2 {
        return Ok(SumResult { algebra: s.clone(), trivial: true });
    }
    let m = r.nvars();
    let left: Vec<usize> = (0..m).collect();
    let right: Vec<usize> = (m..m + s.nvars()).collect();
    let mut gens = fibre_generators(r, s, &ring);
    gens.push(&dr.embed(&ring, &left) - &ds.embed(&ring, &right).scale(&spec.unit));
    let algebra = build_algebra(&IdealPresentation::new(&ring, gens)?)?;
    Ok(SumResult { algebra, trivial: false })
}

/// A nonzero polynomial in dual variables, over a field of characteristic
/// zero or larger than its degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualPolynomial {
    poly: Polynomial,
}

impl DualPolynomial {
    pub fn new(poly: Polynomial) -> Result<Self> {
        let Some(degree) = poly.total_degree() else {
            return Err(Error::Precondition("dual polynomial must be nonzero".into()));
        };
        let characteristic = poly.field().characteristic();
        if characteristic != 0 && characteristic <= degree as u64 {
            return Err(Error::CharacteristicTooSmall { characteristic, degree });
        }
        Ok(DualPolynomial { poly })
    }

    pub fn poly(&self) -> &Polynomial {
        &self.poly
    }

    pub fn degree(&self) -> u32 {
        self.poly.total_degree().unwrap_or(0)
    }
}

/// Default names of the acting variables: `X` or `X1..Xn`.
pub fn default_apolar_names(n: usize) -> Vec<String> {
    if n == 1 {
        vec!["X".to_string()]
    } else {
        (1..=n).map(|i| format!("X{i}")).collect()
    }
}

/// `k[X]/Ann(F)` with variables named `X` or `X1..Xn`.
pub fn apolar_algebra(f: &DualPolynomial) -> Result<ArtinAlgebra> {
    apolar_algebra_named(f, default_apolar_names(f.poly.ring().nvars()))
}

/// `k[X]/Ann(F)`, where `X_i` acts on `F` as the partial derivative in the
/// `i`-th dual variable.
pub fn apolar_algebra_named(f: &DualPolynomial, names: Vec<String>) -> Result<ArtinAlgebra> {
    let dual = f.poly.ring();
    let n = dual.nvars();
    if names.len() != n {
        return Err(Error::Precondition(format!("expected {n} variable names, got {}", names.len())));
    }
    let field = dual.field();
    let d = f.degree();
    // dual monomials of degree <= d index the space of derivatives of F
    let dual_monos: Vec<Monomial> = (0..=d).flat_map(|k| monomials_of_degree(n, k)).collect();
    let index: HashMap<&Monomial, usize> = dual_monos.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let dim = dual_monos.len();
    // deriv[i][j]: derivative of dual monomial j in variable i
    let deriv: Vec<Vec<Option<(usize, Scalar)>>> = (0..n)
        .map(|i| {
            dual_monos
                .iter()
                .map(|m| {
                    let e = m.exponent(i);
                    (e > 0).then(|| {
                        let lower = Monomial::var(n, i).quotient_of(m);
                        (index[&lower], field.from_i64(e as i64))
                    })
                })
                .collect()
        })
        .collect();
    let mut start = vec![field.zero(); dim];
    for (m, c) in f.poly.terms() {
        start[index[m]] = c.clone();
    }
    let values = evaluate_monomials(n, d + 1, start, |i, v| {
        let mut out = vec![field.zero(); dim];
        for (j, c) in v.iter().enumerate() {
            if let (false, Some((t, e))) = (c.is_zero(), &deriv[i][j]) {
                out[*t] = &out[*t] + &(c * e);
            }
        }
        out
    });
    let ring = PolyRing::new(field, names);
    build_algebra(&kernel_ideal(&ring, values, dim)?)
}

/// Outcome of comparing `apolar(F+G)` with `apolar(F) # apolar(G)`.
#[derive(Clone, Debug)]
pub struct ApolarSumReport {
    pub sum: ArtinAlgebra,
    pub left: ArtinAlgebra,
    pub right: ArtinAlgebra,
    /// The `u` with `Δ_R = u Δ_S` in `apolar(F+G)`.
    pub unit: Option<Scalar>,
    pub connected: Option<SumResult>,
    pub matches: bool,
}

/// Acting-variable names `X_v` for the dual variables `v`.
fn prefixed_names(ring: &PolyRing) -> Vec<String> {
    ring.vars().iter().map(|v| format!("X_{v}")).collect()
}

/// Check that `F + G` in disjoint dual variables is apolar to a connected
/// sum of the apolar algebras of `F` and `G`, and recover the unit.
pub fn apolar_sum_check(f: &DualPolynomial, g: &DualPolynomial) -> Result<ApolarSumReport> {
    let (fr, gr) = (f.poly.ring(), g.poly.ring());
    if fr.field() != gr.field() {
        return Err(Error::RingMismatch);
    }
    if let Some(v) = fr.vars().iter().find(|v| gr.vars().contains(v)) {
        return Err(Error::VariableCollision(v.clone()));
    }
    let joint = PolyRing::new(fr.field(), fr.vars().iter().chain(gr.vars()).cloned().collect());
    let m = fr.nvars();
    let fe = f.poly.embed(&joint, &(0..m).collect::<Vec<_>>());
    let ge = g.poly.embed(&joint, &(m..m + gr.nvars()).collect::<Vec<_>>());
    let total = DualPolynomial::new(&fe + &ge)?;
    let sum = apolar_algebra_named(&total, prefixed_names(&joint))?;
    let left = apolar_algebra_named(f, prefixed_names(fr))?;
    let right = apolar_algebra_named(g, prefixed_names(gr))?;

    let dr = socle_generator(&left)?;
    let ds = socle_generator(&right)?;
    let a = sum.element(&dr.embed_by_name(&PolyRing::new(joint.field(), prefixed_names(&joint)))?)?;
    let b = sum.element(&ds.embed_by_name(&PolyRing::new(joint.field(), prefixed_names(&joint)))?)?;
    let unit = b
        .iter()
        .position(|x| !x.is_zero())
        .and_then(|p| b[p].inv().map(|inv| &a[p] * &inv))
        .filter(|u| !u.is_zero() && sum.scale(u, &b) == a);
    let mut report = ApolarSumReport { sum, left, right, unit: unit.clone(), connected: None, matches: false };
    if let Some(u) = unit {
        let spec = ConnectedSumSpec::new(report.left.clone(), report.right.clone())?.with_unit(u);
        let cs = connected_sum(&spec)?;
        report.matches = cs.algebra == report.sum;
        report.connected = Some(cs);
    }
    Ok(report)
}
