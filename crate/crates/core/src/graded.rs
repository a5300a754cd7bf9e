//! Associated graded rings, the GLS predicate, Iarrobino's quotient and
//! Hilbert-function classifiers.

use crate::error::{Error, Result};
use crate::grobner::IdealPresentation;
use crate::linalg::{solve_combination, ScalarOps};
use crate::polycore::{Monomial, Polynomial};
use crate::quotient::{build_algebra, evaluate_monomials, kernel_ideal, ArtinAlgebra, Subspace, Vector};

/// A standard graded algebra `k[X]/I*` with `I*` homogeneous.
#[derive(Clone, Debug)]
pub struct GradedAlgebra {
    algebra: ArtinAlgebra,
}

/// A homogeneous ideal of a [`GradedAlgebra`], one subspace per degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedIdeal {
    pub components: Vec<Subspace>,
}

impl GradedIdeal {
    pub fn total(&self, g: &GradedAlgebra) -> Subspace {
        self.components
            .iter()
            .fold(Subspace::zero(g.algebra.field(), g.algebra.length()), |acc, c| acc.sum(c))
    }

    pub fn dims(&self) -> Vec<usize> {
        self.components.iter().map(Subspace::dim).collect()
    }
}

impl GradedAlgebra {
    /// Wrap an algebra whose defining ideal is homogeneous.
    pub fn from_homogeneous(algebra: ArtinAlgebra) -> Result<Self> {
        if algebra.reduced_basis().iter().all(Polynomial::is_homogeneous) {
            Ok(GradedAlgebra { algebra })
        } else {
            Err(Error::Precondition("defining ideal is not homogeneous".into()))
        }
    }

    pub fn algebra(&self) -> &ArtinAlgebra {
        &self.algebra
    }

    /// The homogeneous ideal `I*`.
    pub fn presentation(&self) -> &IdealPresentation {
        self.algebra.ideal()
    }

    pub fn hilbert_function(&self) -> Vec<usize> {
        self.algebra.hilbert_function()
    }

    pub fn loewy_length(&self) -> usize {
        self.algebra.loewy_length()
    }

    /// `G_i`, spanned by the standard monomials of degree `i`.
    pub fn piece(&self, i: usize) -> Subspace {
        let a = &self.algebra;
        let n = a.length();
        a.span(a.basis().iter().enumerate().filter(|(_, m)| m.degree() as usize == i).map(|(j, _)| {
            let mut v = a.zero();
            v[j] = a.field().one();
            debug_assert_eq!(v.len(), n);
            v
        }))
    }

    /// `soc(G)_i` for `i = 0..=s`.
    pub fn socle_by_degree(&self) -> Vec<Subspace> {
        let soc = self.algebra.socle();
        (0..=self.loewy_length()).map(|i| soc.intersect(&self.piece(i))).collect()
    }

    /// `dim soc(G) ∩ (G_+)^2`.
    pub fn socle_in_square(&self) -> usize {
        self.socle_by_degree().iter().skip(2).map(Subspace::dim).sum()
    }

    /// `soc(G) ∩ G_1`.
    pub fn linear_socle(&self) -> Subspace {
        self.algebra.socle().intersect(&self.piece(1))
    }
}

/// The associated graded ring, presented by the ideal of initial forms.
///
/// In degree `d` the relations are the forms whose value lies in `m^{d+1}`;
/// every monomial of degree `s+1` is a relation.
pub fn associated_graded(a: &ArtinAlgebra) -> Result<GradedAlgebra> {
    let s = a.loewy_length();
    let lambda = a.length();
    let blocks = s + 2;
    let powers: Vec<Subspace> = (0..=s + 2).map(|i| a.power(i)).collect();
    let values = evaluate_monomials(a.nvars(), s as u32 + 1, a.one(), |i, v| a.mul(a.var(i), v));
    let field = a.field();
    let graded: Vec<(Monomial, Vector)> = values
        .into_iter()
        .map(|(m, v)| {
            let d = m.degree() as usize;
            let mut out = vec![field.zero(); lambda * blocks];
            let r = powers[d + 1].reduce(&v);
            out[d * lambda..(d + 1) * lambda].clone_from_slice(&r);
            (m, out)
        })
        .collect();
    let ideal = kernel_ideal(a.ring(), graded, lambda * blocks)?;
    GradedAlgebra::from_homogeneous(build_algebra(&ideal)?)
}

/// Result of [`is_gls`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GlsTest {
    pub gls: bool,
    /// `dim soc(G) ∩ (G_+)^2`.
    pub socle_in_square: usize,
    /// Echelon basis of `soc(G) ∩ G_1`.
    pub witness: Subspace,
}

/// Gorenstein up to linear socle: `dim soc(G) ∩ (G_+)^2 = 1`.
pub fn is_gls(g: &GradedAlgebra) -> Result<GlsTest> {
    if g.loewy_length() < 2 {
        return Err(Error::Precondition("Loewy length below 2".into()));
    }
    let socle_in_square = g.socle_in_square();
    Ok(GlsTest { gls: socle_in_square == 1, socle_in_square, witness: g.linear_socle() })
}

/// `G = A ×_k B` with `A` graded Gorenstein and `B` square-zero.
#[derive(Clone, Debug)]
pub struct GlsSplit {
    pub a: GradedAlgebra,
    pub b: ArtinAlgebra,
    /// The linear socle forms, as polynomials in the variables of `G`.
    pub socle_forms: Vec<Polynomial>,
    /// Variables of `G` replaced by the socle forms.
    pub replaced: Vec<usize>,
    /// `G` presented in the new coordinates equals `I_A + <Z>^2 + <Y*Z>`.
    pub fibre_product_verified: bool,
    /// The kernel of `G -> A` meets `(G_+)^2` trivially.
    pub kernel_meets_square_trivially: bool,
}

/// Split a GLS algebra along its linear socle.
///
/// The socle forms are taken in reduced echelon form over the variables in
/// declaration order; the variable at each pivot is replaced by its form.
pub fn gls_split(g: &GradedAlgebra) -> Result<GlsSplit> {
    let test = is_gls(g)?;
    if !test.gls {
        return Err(Error::Precondition("not Gorenstein up to linear socle".into()));
    }
    let alg = g.algebra();
    let ring = alg.ring().clone();
    let n = ring.nvars();
    let field = ring.field();

    // linear forms as coefficient rows over the variables
    let coeff_rows: Vec<Vector> = test
        .witness
        .rows()
        .iter()
        .map(|r| {
            let l = alg.lift(r);
            (0..n).map(|i| l.coefficient(&Monomial::var(n, i))).collect()
        })
        .collect();
    let (forms, replaced) = crate::linalg::rref(&ScalarOps(field), coeff_rows, n);
    let socle_forms: Vec<Polynomial> = forms
        .iter()
        .map(|c| {
            Polynomial::from_terms(
                &ring,
                c.iter()
                    .enumerate()
                    .filter(|(_, x)| !x.is_zero())
                    .map(|(i, x)| (Monomial::var(n, i), x.clone())),
            )
        })
        .collect();

    let v = alg.span(socle_forms.iter().map(|f| alg.element(f)).collect::<Result<Vec<_>>>()?);
    let a = GradedAlgebra::from_homogeneous(alg.quotient(&v)?)?;
    let kernel_meets_square_trivially = alg.ideal_generated(v.rows()).intersect(&alg.power(2)).is_zero();

    let b_ring = crate::polycore::PolyRing::new(field, replaced.iter().map(|&i| ring.vars()[i].clone()).collect());
    let b_gens: Vec<Polynomial> = crate::polycore::monomials_of_degree(replaced.len(), 2)
        .into_iter()
        .map(|m| Polynomial::monomial(&b_ring, m))
        .collect();
    let b = build_algebra(&IdealPresentation::new(&b_ring, b_gens)?)?;

    // present G with the replaced variables standing for the socle forms
    let images: Vec<Vector> = (0..n)
        .map(|j| match replaced.iter().position(|&p| p == j) {
            Some(k) => alg.element(&socle_forms[k]),
            None => Ok(alg.var(j).clone()),
        })
        .collect::<Result<_>>()?;
    let presented = alg.present_by_generators(&images, &ring)?;
    let mut expected: Vec<Polynomial> = Vec::new();
    for f in a.algebra().reduced_basis() {
        expected.push(f.embed_by_name(&ring)?);
    }
    for &p in &replaced {
        for j in 0..n {
            expected.push(&Polynomial::var(&ring, p) * &Polynomial::var(&ring, j));
        }
    }
    let expected = IdealPresentation::new(&ring, expected)?;
    let fibre_product_verified = *presented.reduced_basis()? == *expected.reduced_basis()?;

    Ok(GlsSplit { a, b, socle_forms, replaced, fibre_product_verified, kernel_meets_square_trivially })
}

/// Iarrobino's ideal `C` of `G = gr(A)` and the quotient `Q0 = G/C`.
#[derive(Clone, Debug)]
pub struct Iarrobino {
    pub graded: GradedAlgebra,
    pub c: GradedIdeal,
    pub q0: GradedAlgebra,
}

/// `C_i = ((0:m^{s-i}) ∩ m^i + m^{i+1}) / m^{i+1}`, carried into `G_i`.
pub fn iarrobino(a: &ArtinAlgebra) -> Result<Iarrobino> {
    if !a.is_gorenstein() {
        return Err(Error::NotGorenstein(a.socle_type()));
    }
    let g = associated_graded(a)?;
    let s = a.loewy_length();
    let galg = g.algebra();
    let ops = ScalarOps(a.field());
    let mut components = Vec::with_capacity(s + 1);
    for i in 0..=s {
        let next = a.power(i + 1);
        let k = a.colon(&a.power(s - i)).intersect(&a.power(i));
        // G_i basis monomials and their values modulo m^{i+1}
        let idx: Vec<usize> = (0..galg.length()).filter(|&j| galg.basis()[j].degree() as usize == i).collect();
        let vals: Vec<Vector> = idx
            .iter()
            .map(|&j| Ok(next.reduce(&a.element(&Polynomial::monomial(a.ring(), galg.basis()[j].clone()))?)))
            .collect::<Result<_>>()?;
        let mut vecs = Vec::new();
        for r in k.rows() {
            let target = next.reduce(r);
            let coeffs = solve_combination(&ops, &vals, &target)
                .ok_or_else(|| Error::Precondition("graded piece does not span m^i/m^(i+1)".into()))?;
            let mut v = galg.zero();
            for (c, &j) in coeffs.iter().zip(&idx) {
                v[j] = c.clone();
            }
            vecs.push(v);
        }
        components.push(galg.span(vecs));
    }
    let c = GradedIdeal { components };
    let total = c.total(&g);
    if !galg.is_ideal(&total) {
        return Err(Error::NotAnIdeal);
    }
    let q0 = GradedAlgebra::from_homogeneous(galg.quotient(&total)?)?;
    Ok(Iarrobino { graded: g, c, q0 })
}

/// Hilbert-function shape of a Gorenstein algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Classification {
    pub short: bool,
    pub stretched: bool,
    pub compressed: bool,
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// The largest Hilbert function for embedding dimension `d` and socle degree `s`.
pub fn compressed_hilbert_function(d: usize, s: usize) -> Vec<usize> {
    (0..=s)
        .map(|i| {
            let up = if d == 0 { usize::from(i == 0) } else { binomial(d + i - 1, i) };
            let down = if d == 0 { usize::from(i == s) } else { binomial(d + s - i - 1, s - i) };
            up.min(down)
        })
        .collect()
}

/// Short: `H = (1,h,n,1)`. Stretched: `H = (1,h,1,...,1)` with `m^3 != 0`.
/// Compressed: `H` is the maximal function for its `d` and `s`.
pub fn classify_hilbert(h: &[usize]) -> Classification {
    let s = h.len().saturating_sub(1);
    let d = h.get(1).copied().unwrap_or(0);
    Classification {
        short: h.len() == 4 && h[3] == 1,
        stretched: s >= 3 && h[2..].iter().all(|&x| x == 1),
        compressed: h == compressed_hilbert_function(d, s).as_slice(),
    }
}

pub fn classify(a: &ArtinAlgebra) -> Result<Classification> {
    if !a.is_gorenstein() {
        return Err(Error::NotGorenstein(a.socle_type()));
    }
    Ok(classify_hilbert(&a.hilbert_function()))
}
