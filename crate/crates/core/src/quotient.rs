//! Artinian local algebras `k[X]/I` as finite-dimensional vector spaces.
//!
//! Elements are dense coordinate vectors over the standard-monomial basis,
//! which is stored in decreasing grevlex order (the last basis element is 1).
//! Echelon pivots therefore sit on the largest monomial of a vector.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::grobner::{contract, normal_form, standard_monomials, IdealPresentation};
use crate::linalg::{kernel, rref, transpose, Echelon, ScalarOps};
use crate::polycore::{monomials_of_degree, Field, Monomial, PolyRing, Polynomial, Scalar, TermOrder};

/// A coordinate vector over the basis of an [`ArtinAlgebra`].
pub type Vector = Vec<Scalar>;

/// A linear subspace of an algebra, stored in reduced echelon form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    field: Field,
    ambient: usize,
    rows: Vec<Vector>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: Field, ambient: usize) -> Subspace {
        Subspace { field, ambient, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn span(field: Field, ambient: usize, vectors: impl IntoIterator<Item = Vector>) -> Subspace {
        let (rows, pivots) = rref(&ScalarOps(field), vectors.into_iter().collect(), ambient);
        Subspace { field, ambient, rows, pivots }
    }

    pub fn full(field: Field, ambient: usize) -> Subspace {
        Subspace::span(field, ambient, (0..ambient).map(|i| unit(field, ambient, i)))
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn rows(&self) -> &[Vector] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub(crate) fn echelon(&self) -> Echelon<ScalarOps> {
        let mut e = Echelon::new(ScalarOps(self.field), self.ambient);
        for r in &self.rows {
            e.insert(r.clone());
        }
        e
    }

    /// Canonical representative of `v` modulo the subspace.
    pub fn reduce(&self, v: &[Scalar]) -> Vector {
        let mut w = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !w[p].is_zero() {
                let f = w[p].clone();
                for (x, r) in w.iter_mut().zip(row) {
                    if !r.is_zero() {
                        *x = &*x - &(&f * r);
                    }
                }
            }
        }
        w
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v).iter().all(Scalar::is_zero)
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.rows.iter().all(|r| self.contains(r))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        Subspace::span(self.field, self.ambient, self.rows.iter().chain(&other.rows).cloned())
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        if self.is_zero() || other.is_zero() {
            return Subspace::zero(self.field, self.ambient);
        }
        // left kernel of the stacked rows: a*U + b*W = 0 gives a*U in both
        let stacked: Vec<Vector> = self.rows.iter().chain(&other.rows).cloned().collect();
        let ops = ScalarOps(self.field);
        let ker = kernel(&ops, transpose(&stacked, self.ambient), stacked.len());
        let vectors = ker.into_iter().map(|c| {
            let mut v = vec![self.field.zero(); self.ambient];
            for (a, row) in c.iter().take(self.dim()).zip(&self.rows) {
                if !a.is_zero() {
                    for (x, r) in v.iter_mut().zip(row) {
                        *x = &*x + &(a * r);
                    }
                }
            }
            v
        });
        Subspace::span(self.field, self.ambient, vectors)
    }
}

fn unit(field: Field, n: usize, i: usize) -> Vector {
    let mut v = vec![field.zero(); n];
    v[i] = field.one();
    v
}

fn axpy(acc: &mut [Scalar], a: &Scalar, x: &[(usize, Scalar)]) {
    for (j, c) in x {
        acc[*j] = &acc[*j] + &(a * c);
    }
}

/// The local algebra `k[X]/I` with `I` zero-dimensional and contained in
/// `<X>^2`.
#[derive(Clone, Debug)]
pub struct ArtinAlgebra {
    ideal: IdealPresentation,
    gb: Arc<Vec<Polynomial>>,
    basis: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    /// `table[i][j]` = normal form of `basis[i] * basis[j]` as a sparse vector.
    table: Vec<Vec<Vec<(usize, Scalar)>>>,
    var_images: Vec<Vector>,
    /// `powers[i]` spans `m^i`, for `i = 0..=s+1`.
    powers: Vec<Subspace>,
    source: Option<(Arc<PolyRing>, Vec<Polynomial>)>,
}

impl PartialEq for ArtinAlgebra {
    /// Equality of presentations: same variables and same reduced basis.
    fn eq(&self, other: &Self) -> bool {
        self.ideal.ring() == other.ideal.ring() && self.gb == other.gb
    }
}

/// Build the algebra `k[X]/I`.
///
/// Linear parts of the relations are eliminated first, so the result is
/// presented by an ideal inside `<X>^2` in the surviving variables; the
/// images of the original variables are kept for [`ArtinAlgebra::element`].
pub fn build_algebra(pres: &IdealPresentation) -> Result<ArtinAlgebra> {
    let ring = pres.ring().clone();
    if pres.is_unit()? {
        return Err(Error::UnitIdeal);
    }
    let gb = pres.reduced_basis()?;
    let n = ring.nvars();
    let Some(std) = standard_monomials(&gb, n, &TermOrder::Grevlex) else {
        return Err(Error::NotZeroDimensional);
    };
    let lambda = std.len() as u32;
    for i in 0..n {
        let p = Polynomial::var(&ring, i).pow(lambda);
        if !normal_form(&p, &gb, &TermOrder::Grevlex)?.is_zero() {
            return Err(Error::NotLocal(ring.vars()[i].clone()));
        }
    }

    // linear parts of I, in echelon form over the variables
    let field = ring.field();
    let lin: Vec<Vector> = gb
        .iter()
        .map(|g| {
            let l = g.homogeneous_component(1);
            (0..n).map(|i| l.coefficient(&Monomial::var(n, i))).collect()
        })
        .collect();
    let (_, pivots) = rref(&ScalarOps(field), lin, n);
    if pivots.is_empty() {
        return ArtinAlgebra::from_minimal(pres.canonical()?, None);
    }
    let keep: Vec<usize> = (0..n).filter(|i| !pivots.contains(i)).collect();
    let reduced = contract(pres, &keep)?;
    let sub = reduced.ring().clone();
    // with the eliminating order every standard monomial lies in k[keep]
    let order = TermOrder::block(pivots.clone(), keep.clone(), n)?;
    let egb = pres.groebner(&order)?;
    let images = (0..n)
        .map(|i| {
            let nf = normal_form(&Polynomial::var(&ring, i), &egb, &order)?;
            nf.restrict(&sub, &keep)
                .ok_or_else(|| Error::Precondition("elimination left a pivot variable".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    ArtinAlgebra::from_minimal(reduced, Some((ring, images)))
}

impl ArtinAlgebra {
    fn from_minimal(ideal: IdealPresentation, source: Option<(Arc<PolyRing>, Vec<Polynomial>)>) -> Result<Self> {
        let ring = ideal.ring().clone();
        let n = ring.nvars();
        let field = ring.field();
        let gb = ideal.reduced_basis()?;
        let mut basis = standard_monomials(&gb, n, &TermOrder::Grevlex).ok_or(Error::NotZeroDimensional)?;
        basis.reverse();
        let index: HashMap<Monomial, usize> = basis.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let lambda = basis.len();

        let sparse = |p: &Polynomial| -> Vec<(usize, Scalar)> {
            p.terms().iter().map(|(m, c)| (index[m], c.clone())).collect()
        };
        let mut table = vec![vec![Vec::new(); lambda]; lambda];
        for i in 0..lambda {
            for j in i..lambda {
                let prod = Polynomial::monomial(&ring, basis[i].mul(&basis[j]));
                let nf = normal_form(&prod, &gb, &TermOrder::Grevlex)?;
                let s = sparse(&nf);
                table[j][i] = s.clone();
                table[i][j] = s;
            }
        }
        let var_images = (0..n)
            .map(|k| {
                let nf = normal_form(&Polynomial::var(&ring, k), &gb, &TermOrder::Grevlex)?;
                let mut v = vec![field.zero(); lambda];
                for (j, c) in sparse(&nf) {
                    v[j] = c;
                }
                Ok(v)
            })
            .collect::<Result<Vec<_>>>()?;

        let mut alg = ArtinAlgebra {
            ideal,
            gb,
            basis,
            index,
            table,
            var_images,
            powers: Vec::new(),
            source,
        };
        alg.powers = alg.compute_powers();
        Ok(alg)
    }

    fn compute_powers(&self) -> Vec<Subspace> {
        let field = self.field();
        let lambda = self.length();
        let mut powers = vec![Subspace::full(field, lambda)];
        let m = Subspace::span(field, lambda, (0..lambda - 1).map(|i| unit(field, lambda, i)));
        let mut cur = m;
        loop {
            let done = cur.is_zero();
            let next = self.mul_by_max(&cur);
            powers.push(cur);
            if done {
                break;
            }
            cur = next;
        }
        powers
    }

    pub fn field(&self) -> Field {
        self.ring().field()
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        self.ideal.ring()
    }

    /// The defining ideal, presented by its reduced grevlex basis.
    pub fn ideal(&self) -> &IdealPresentation {
        &self.ideal
    }

    pub fn reduced_basis(&self) -> &[Polynomial] {
        &self.gb
    }

    /// Standard monomials, largest first.
    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    pub fn basis_index(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// The ring of the input presentation and the images of its variables,
    /// when linear relations were eliminated.
    pub fn source(&self) -> Option<(&Arc<PolyRing>, &[Polynomial])> {
        self.source.as_ref().map(|(r, im)| (r, im.as_slice()))
    }

    pub fn length(&self) -> usize {
        self.basis.len()
    }

    pub fn zero(&self) -> Vector {
        vec![self.field().zero(); self.length()]
    }

    pub fn one(&self) -> Vector {
        unit(self.field(), self.length(), self.length() - 1)
    }

    /// Image of the `k`-th variable.
    pub fn var(&self, k: usize) -> &Vector {
        &self.var_images[k]
    }

    pub fn nvars(&self) -> usize {
        self.ring().nvars()
    }

    /// Coordinates of a polynomial in this ring or in the source ring.
    pub fn element(&self, f: &Polynomial) -> Result<Vector> {
        let f = if f.ring() == self.ring() {
            f.clone()
        } else {
            match &self.source {
                Some((src, images)) if f.ring() == src => f.substitute(images),
                _ => f.embed_by_name(self.ring())?,
            }
        };
        let nf = normal_form(&f, &self.gb, &TermOrder::Grevlex)?;
        let mut v = self.zero();
        for (m, c) in nf.terms() {
            v[self.index[m]] = c.clone();
        }
        Ok(v)
    }

    /// The polynomial `sum c_j b_j` over the standard monomials.
    pub fn lift(&self, v: &[Scalar]) -> Polynomial {
        Polynomial::from_terms(
            self.ring(),
            v.iter()
                .zip(&self.basis)
                .filter(|(c, _)| !c.is_zero())
                .map(|(c, m)| (m.clone(), c.clone())),
        )
    }

    pub fn mul(&self, a: &[Scalar], b: &[Scalar]) -> Vector {
        let mut out = self.zero();
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    axpy(&mut out, &(x * y), &self.table[i][j]);
                }
            }
        }
        out
    }

    pub fn add(&self, a: &[Scalar], b: &[Scalar]) -> Vector {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }

    pub fn scale(&self, c: &Scalar, a: &[Scalar]) -> Vector {
        a.iter().map(|x| c * x).collect()
    }

    pub fn mul_var(&self, k: usize, a: &[Scalar]) -> Vector {
        self.mul(&self.var_images[k], a)
    }

    /// The matrix (rows indexed by output coordinates) of `v -> g*v`.
    pub fn mult_matrix(&self, g: &[Scalar]) -> Vec<Vector> {
        let cols: Vec<Vector> = (0..self.length())
            .map(|j| self.mul(g, &unit(self.field(), self.length(), j)))
            .collect();
        transpose(&cols, self.length())
    }

    pub fn span(&self, vectors: impl IntoIterator<Item = Vector>) -> Subspace {
        Subspace::span(self.field(), self.length(), vectors)
    }

    /// `m^i` (zero for `i > s`).
    pub fn power(&self, i: usize) -> Subspace {
        self.powers
            .get(i)
            .cloned()
            .unwrap_or_else(|| Subspace::zero(self.field(), self.length()))
    }

    pub fn max_ideal(&self) -> Subspace {
        self.power(1)
    }

    /// `m * W`.
    pub fn mul_by_max(&self, w: &Subspace) -> Subspace {
        self.span(
            w.rows()
                .iter()
                .flat_map(|r| (0..self.nvars()).map(move |k| self.mul_var(k, r))),
        )
    }

    /// Span of all products `u*w`.
    pub fn product(&self, u: &Subspace, w: &Subspace) -> Subspace {
        self.span(u.rows().iter().flat_map(|a| w.rows().iter().map(move |b| self.mul(a, b))))
    }

    /// Loewy length: the largest `s` with `m^s != 0`.
    pub fn loewy_length(&self) -> usize {
        self.powers.len() - 2
    }

    pub fn embedding_dimension(&self) -> usize {
        self.power(1).dim() - self.power(2).dim()
    }

    pub fn socle(&self) -> Subspace {
        self.annihilator(&self.var_images)
    }

    /// Dimension of the socle.
    pub fn socle_type(&self) -> usize {
        self.socle().dim()
    }

    pub fn is_gorenstein(&self) -> bool {
        self.socle_type() == 1
    }

    /// `H(i) = dim m^i/m^{i+1}` for `i = 0..=s`.
    pub fn hilbert_function(&self) -> Vec<usize> {
        self.powers.windows(2).map(|w| w[0].dim() - w[1].dim()).collect()
    }

    /// `{v : v*g = 0 for all g in gens}`.
    pub fn annihilator(&self, gens: &[Vector]) -> Subspace {
        let rows: Vec<Vector> = gens.iter().flat_map(|g| self.mult_matrix(g)).collect();
        if rows.is_empty() {
            return Subspace::full(self.field(), self.length());
        }
        self.span(kernel(&ScalarOps(self.field()), rows, self.length()))
    }

    /// `0 : W`.
    pub fn colon(&self, w: &Subspace) -> Subspace {
        self.annihilator(w.rows())
    }

    /// The ideal generated by `gens`.
    pub fn ideal_generated(&self, gens: &[Vector]) -> Subspace {
        let mut cur = self.span(gens.iter().cloned());
        loop {
            let next = cur.sum(&self.mul_by_max(&cur));
            if next.dim() == cur.dim() {
                return cur;
            }
            cur = next;
        }
    }

    pub fn is_ideal(&self, w: &Subspace) -> bool {
        w.contains_subspace(&self.mul_by_max(w))
    }

    /// `mu(W) = dim W/mW` and representatives of a basis of `W/mW`,
    /// chosen from the echelon basis of `W`.
    pub fn minimal_generators(&self, w: &Subspace) -> Result<(usize, Vec<Vector>)> {
        let mw = self.mul_by_max(w);
        if !w.contains_subspace(&mw) {
            return Err(Error::NotAnIdeal);
        }
        let mut e = mw.echelon();
        let reps: Vec<Vector> = w.rows().iter().filter(|r| e.insert((*r).clone()).is_some()).cloned().collect();
        Ok((reps.len(), reps))
    }

    /// `A / W` for an ideal `W`, minimalized.
    pub fn quotient(&self, w: &Subspace) -> Result<ArtinAlgebra> {
        if !self.is_ideal(w) {
            return Err(Error::NotAnIdeal);
        }
        let pres = self.ideal.extend(w.rows().iter().map(|r| self.lift(r)))?;
        build_algebra(&pres)
    }

    /// Kernel of `k[T] -> A`, `T_i -> gens[i]`, for elements of `m`.
    ///
    /// The kernel contains every monomial of degree `s+1`, so its reduced
    /// grevlex basis is read off the echelon form of the evaluation kernel
    /// in degrees up to `s+1`.
    pub fn present_by_generators(&self, gens: &[Vector], ring: &Arc<PolyRing>) -> Result<IdealPresentation> {
        if ring.nvars() != gens.len() || ring.field() != self.field() {
            return Err(Error::RingMismatch);
        }
        let m = self.max_ideal();
        if gens.iter().any(|g| !m.contains(g)) {
            return Err(Error::Precondition("generators must lie in the maximal ideal".into()));
        }
        let bound = self.loewy_length() as u32 + 1;
        let values = evaluate_monomials(gens.len(), bound, self.one(), |i, v| self.mul(&gens[i], v));
        kernel_ideal(ring, values, self.length())
    }

    /// Reduced presentation text.
    pub fn to_presentation(&self) -> crate::polycore::Presentation {
        crate::polycore::Presentation { ring: self.ring().clone(), generators: self.gb.to_vec() }
    }
}

/// Values of all monomials of degree at most `bound`, built by multiplying
/// with one variable at a time.
pub(crate) fn evaluate_monomials<F>(nvars: usize, bound: u32, one: Vector, step: F) -> Vec<(Monomial, Vector)>
where
    F: Fn(usize, &[Scalar]) -> Vector,
{
    let mut values: HashMap<Monomial, Vector> = HashMap::new();
    let mut out = Vec::new();
    let m1 = Monomial::one(nvars);
    values.insert(m1.clone(), one.clone());
    out.push((m1, one));
    for d in 1..=bound {
        for m in monomials_of_degree(nvars, d) {
            let i = (0..nvars).find(|&i| m.exponent(i) > 0).expect("positive degree");
            let prev = Monomial::var(nvars, i).quotient_of(&m);
            let v = step(i, &values[&prev]);
            values.insert(m.clone(), v.clone());
            out.push((m, v));
        }
    }
    out
}

/// The ideal of all polynomials whose evaluation vanishes, given the values
/// of every monomial up to a degree bound that the ideal already contains in
/// full (all monomials of the top degree must evaluate to zero).
pub(crate) fn kernel_ideal(ring: &Arc<PolyRing>, mut values: Vec<(Monomial, Vector)>, dim: usize) -> Result<IdealPresentation> {
    let field = ring.field();
    values.sort_by(|a, b| TermOrder::Grevlex.compare(&b.0, &a.0));
    let ncols = values.len();
    let rows: Vec<Vector> = (0..dim).map(|r| values.iter().map(|(_, v)| v[r].clone()).collect()).collect();
    let ops = ScalarOps(field);
    let ker = if dim == 0 {
        (0..ncols).map(|j| unit(field, ncols, j)).collect()
    } else {
        kernel(&ops, rows, ncols)
    };
    let (rows, pivots) = rref(&ops, ker, ncols);
    let lead: Vec<&Monomial> = pivots.iter().map(|&p| &values[p].0).collect();
    let mut gens = Vec::new();
    for (row, &p) in rows.iter().zip(&pivots) {
        let u = &values[p].0;
        if lead.iter().any(|v| *v != u && v.divides(u)) {
            continue;
        }
        gens.push(Polynomial::from_terms(
            ring,
            row.iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(j, c)| (values[j].0.clone(), c.clone())),
        ));
    }
    let out = IdealPresentation::new(ring, gens.clone())?;
    out.seed_cache(TermOrder::Grevlex, gens);
    Ok(out)
}
