//! Minimal free resolutions of the residue field, Betti numbers and
//! truncated Poincaré series.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::decompose::minimal_generator_count;
use crate::error::{Error, Result};
use crate::graded::binomial;
use crate::linalg::{kernel, Echelon, FieldOps, PrimeOps, RationalOps};
use crate::polycore::{Field, Scalar};
use crate::quotient::ArtinAlgebra;
use crate::sums::{connected_sum, fibre_product, ConnectedSumSpec};

pub const DEFAULT_TRUNCATION: usize = 6;
pub const DEFAULT_RANK_LIMIT: usize = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ResolutionConfig {
    /// Largest free rank allowed at any step.
    pub max_rank: usize,
}

impl Default for ResolutionConfig {
    fn default() -> Self {
        ResolutionConfig { max_rank: DEFAULT_RANK_LIMIT }
    }
}

/// `β_0..β_N` of the residue field, with the checks made while resolving.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiData {
    pub betti: Vec<usize>,
    pub truncation: usize,
    /// Every differential has all entries in `m`.
    pub minimal: bool,
    /// `d_i d_{i+1} = 0` and `rank d_{i+1} = dim ker d_i` at every step.
    pub exact: bool,
}

impl BettiData {
    /// `ε_1 = β_1`.
    pub fn epsilon1(&self) -> usize {
        self.betti.get(1).copied().unwrap_or(0)
    }

    /// `ε_2 = β_2 - C(β_1, 2)`.
    pub fn epsilon2(&self) -> i64 {
        let b2 = self.betti.get(2).copied().unwrap_or(0) as i64;
        b2 - binomial(self.epsilon1(), 2) as i64
    }

    pub fn poincare(&self) -> SeriesTrunc {
        SeriesTrunc::from_ints(self.betti.iter().map(|&b| b as i64), self.truncation)
    }
}

/// A power series modulo `t^{N+1}` with rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesTrunc {
    coeffs: Vec<BigRational>,
}

impl SeriesTrunc {
    pub fn zero(n: usize) -> Self {
        SeriesTrunc { coeffs: vec![BigRational::zero(); n + 1] }
    }

    pub fn one(n: usize) -> Self {
        Self::monomial(1, 0, n)
    }

    /// `c t^k`.
    pub fn monomial(c: i64, k: usize, n: usize) -> Self {
        let mut s = Self::zero(n);
        if k <= n {
            s.coeffs[k] = BigRational::from_integer(BigInt::from(c));
        }
        s
    }

    pub fn from_ints(c: impl IntoIterator<Item = i64>, n: usize) -> Self {
        let mut s = Self::zero(n);
        for (i, x) in c.into_iter().take(n + 1).enumerate() {
            s.coeffs[i] = BigRational::from_integer(BigInt::from(x));
        }
        s
    }

    pub fn truncation(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coefficients(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Coefficients as integers, when they all are.
    pub fn integer_coefficients(&self) -> Option<Vec<BigInt>> {
        self.coeffs.iter().map(|c| c.is_integer().then(|| c.to_integer())).collect()
    }

    fn zip(&self, other: &Self, f: impl Fn(&BigRational, &BigRational) -> BigRational) -> Self {
        let n = self.truncation().min(other.truncation());
        SeriesTrunc { coeffs: (0..=n).map(|i| f(&self.coeffs[i], &other.coeffs[i])).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a - b)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.truncation().min(other.truncation());
        let mut out = Self::zero(n);
        for i in 0..=n {
            for j in 0..=n - i {
                out.coeffs[i + j] += &self.coeffs[i] * &other.coeffs[j];
            }
        }
        out
    }

    /// `1/f`, when the constant term is nonzero.
    pub fn reciprocal(&self) -> Option<Self> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return None;
        }
        let n = self.truncation();
        let inv0 = c0.recip();
        let mut out = Self::zero(n);
        out.coeffs[0] = inv0.clone();
        for k in 1..=n {
            let mut acc = BigRational::zero();
            for i in 1..=k {
                acc += &self.coeffs[i] * &out.coeffs[k - i];
            }
            out.coeffs[k] = -(acc * &inv0);
        }
        Some(out)
    }
}

impl std::fmt::Display for SeriesTrunc {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c < &BigRational::zero();
            let a = if neg { -c } else { c.clone() };
            let sep = match (first, neg) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => " - ",
                (false, false) => " + ",
            };
            let coef = if a.is_one() && i > 0 { String::new() } else { a.to_string() };
            let pow = match i {
                0 => String::new(),
                1 => "t".into(),
                _ => format!("t^{i}"),
            };
            write!(f, "{sep}{coef}{pow}")?;
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(t^{})", self.truncation() + 1)
    }
}

/// Structure constants of the algebra in the arithmetic of `K`.
struct Mult<K: FieldOps> {
    ops: K,
    lambda: usize,
    /// `left[t]` = matrix of multiplication by `b_t`, column-major.
    left: Vec<Vec<Vec<K::E>>>,
    /// Multiplication by each variable, column-major.
    vars: Vec<Vec<Vec<K::E>>>,
}

impl<K: FieldOps + Clone> Mult<K> {
    fn new(ops: K, a: &ArtinAlgebra) -> Self {
        let lambda = a.length();
        let unit = |i: usize| {
            let mut v = a.zero();
            v[i] = a.field().one();
            v
        };
        let conv = |v: Vec<Scalar>| v.iter().map(|x| ops.from_scalar(x)).collect::<Vec<_>>();
        let left = (0..lambda)
            .map(|t| (0..lambda).map(|u| conv(a.mul(&unit(t), &unit(u)))).collect())
            .collect();
        let vars = (0..a.nvars())
            .map(|k| (0..lambda).map(|u| conv(a.mul(a.var(k), &unit(u)))).collect())
            .collect();
        Mult { ops, lambda, left, vars }
    }

    /// `M v` for a column-major `λ × λ` matrix.
    fn apply(&self, m: &[Vec<K::E>], v: &[K::E], out: &mut [K::E]) {
        for (u, c) in v.iter().enumerate() {
            if self.ops.is_zero(c) {
                continue;
            }
            for (o, x) in out.iter_mut().zip(&m[u]) {
                if !self.ops.is_zero(x) {
                    *o = self.ops.add(o, &self.ops.mul(c, x));
                }
            }
        }
    }

    /// Componentwise action on a free module element.
    fn apply_free(&self, m: &[Vec<K::E>], v: &[K::E]) -> Vec<K::E> {
        let mut out = vec![self.ops.zero(); v.len()];
        for (src, dst) in v.chunks(self.lambda).zip(out.chunks_mut(self.lambda)) {
            self.apply(m, src, dst);
        }
        out
    }

    /// `Σ_c v[c] * gens[c]`: the image of `v ∈ A^r` under `e_c -> gens[c]`.
    fn image(&self, v: &[K::E], gens: &[Vec<K::E>]) -> Vec<K::E> {
        let width = gens.first().map_or(0, Vec::len);
        let mut out = vec![self.ops.zero(); width];
        for (c, block) in v.chunks(self.lambda).enumerate() {
            for (t, x) in block.iter().enumerate() {
                if self.ops.is_zero(x) {
                    continue;
                }
                let prod = self.apply_free(&self.left[t], &gens[c]);
                for (o, p) in out.iter_mut().zip(prod) {
                    if !self.ops.is_zero(&p) {
                        *o = self.ops.add(o, &self.ops.mul(x, &p));
                    }
                }
            }
        }
        out
    }
}

fn resolve<K: FieldOps + Clone>(ops: K, a: &ArtinAlgebra, n: usize, cfg: &ResolutionConfig) -> Result<BettiData> {
    let lambda = a.length();
    let mult = Mult::new(ops.clone(), a);
    let one_index = lambda - 1;
    let mut betti = vec![1];
    let mut minimal = true;
    let mut exact = true;

    // ker(A -> k) = m, a subspace of A^1
    let mut kernel_basis: Vec<Vec<K::E>> = (0..lambda - 1)
        .map(|i| {
            let mut v = vec![ops.zero(); lambda];
            v[i] = ops.one();
            v
        })
        .collect();
    let mut prev_gens: Option<Vec<Vec<K::E>>> = None;

    for _ in 1..=n {
        let width = kernel_basis.first().map_or(0, Vec::len);
        // minimal generators: kernel modulo m * kernel
        let mut e = Echelon::new(ops.clone(), width);
        for v in &kernel_basis {
            for m in &mult.vars {
                e.insert(mult.apply_free(m, v));
            }
        }
        let gens: Vec<Vec<K::E>> = kernel_basis.iter().filter(|v| e.insert((*v).clone()).is_some()).cloned().collect();
        let b = gens.len();
        if b > cfg.max_rank {
            return Err(Error::RankGuard { rank: b, limit: cfg.max_rank });
        }
        betti.push(b);
        minimal &= gens.iter().all(|g| g.chunks(lambda).all(|blk| ops.is_zero(&blk[one_index])));
        if let Some(p) = &prev_gens {
            exact &= gens.iter().all(|g| mult.image(g, p).iter().all(|x| ops.is_zero(x)));
        }
        if b == 0 {
            break;
        }

        // d: A^b -> A^width, columns are b_t * gens[j]
        let ncols = b * lambda;
        let mut rows = vec![vec![ops.zero(); ncols]; width];
        for (j, g) in gens.iter().enumerate() {
            for t in 0..lambda {
                let col = mult.apply_free(&mult.left[t], g);
                for (r, x) in col.into_iter().enumerate() {
                    rows[r][j * lambda + t] = x;
                }
            }
        }
        let next = kernel(&ops, rows, ncols);
        exact &= ncols - next.len() == kernel_basis.len();
        kernel_basis = next;
        prev_gens = Some(gens);
    }
    while betti.len() <= n {
        betti.push(0);
    }
    if !minimal {
        return Err(Error::Precondition("resolution differential has a unit entry".into()));
    }
    Ok(BettiData { betti, truncation: n, minimal, exact })
}

/// Betti numbers `β_0..β_N` of the residue field.
pub fn betti_numbers(a: &ArtinAlgebra, n: usize) -> Result<BettiData> {
    betti_numbers_with(a, n, &ResolutionConfig::default())
}

pub fn betti_numbers_with(a: &ArtinAlgebra, n: usize, cfg: &ResolutionConfig) -> Result<BettiData> {
    if n < 2 {
        return Err(Error::Precondition("truncation must be at least 2".into()));
    }
    match a.field() {
        Field::Prime(p) => resolve(PrimeOps(p), a, n, cfg),
        Field::Rationals => resolve(RationalOps, a, n, cfg),
    }
}

/// `1/P(t)` modulo `t^{N+1}`.
pub fn inverse_poincare(a: &ArtinAlgebra, n: usize) -> Result<SeriesTrunc> {
    Ok(betti_numbers(a, n)?.poincare().reciprocal().expect("β_0 = 1"))
}

/// `μ(I) = β_2 - C(edim, 2)`.
pub fn mu_from_betti(a: &ArtinAlgebra) -> Result<usize> {
    let b = betti_numbers(a, 2)?;
    usize::try_from(b.epsilon2()).map_err(|_| Error::Precondition("negative second deviation".into()))
}

/// `1/P^P = 1/P^R + 1/P^S - 1` for `P = R ×_k S`.
pub fn verify_fp_series(r: &ArtinAlgebra, s: &ArtinAlgebra, p: &ArtinAlgebra, n: usize) -> Result<bool> {
    let lhs = inverse_poincare(p, n)?;
    let rhs = inverse_poincare(r, n)?.add(&inverse_poincare(s, n)?).sub(&SeriesTrunc::one(n));
    Ok(lhs == rhs)
}

/// Series data for a connected sum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CsSeriesReport {
    pub holds: bool,
    /// `1/P^Q - (1/P^R + 1/P^S - 1)`, computed.
    pub phi: SeriesTrunc,
    /// `-t^2`, `t^2` or `0` by the embedding dimensions.
    pub expected_phi: SeriesTrunc,
}

/// The correction term `φ` for embedding dimensions `m`, `n`.
pub fn expected_phi(m: usize, n: usize, trunc: usize) -> SeriesTrunc {
    match (m, n) {
        (1, 1) => SeriesTrunc::monomial(1, 2, trunc),
        (m, n) if m >= 2 && n >= 2 => SeriesTrunc::monomial(-1, 2, trunc),
        _ => SeriesTrunc::zero(trunc),
    }
}

/// `1/P^Q = 1/P^R + 1/P^S - 1 + φ(t)` for `Q = R #_k S`.
pub fn verify_cs_series(r: &ArtinAlgebra, s: &ArtinAlgebra, q: &ArtinAlgebra, n: usize) -> Result<CsSeriesReport> {
    if r.loewy_length() < 2 || s.loewy_length() < 2 {
        return Err(Error::Precondition("both factors need Loewy length at least 2".into()));
    }
    let fp = inverse_poincare(r, n)?.add(&inverse_poincare(s, n)?).sub(&SeriesTrunc::one(n));
    let phi = inverse_poincare(q, n)?.sub(&fp);
    let expected_phi = expected_phi(r.embedding_dimension(), s.embedding_dimension(), n);
    Ok(CsSeriesReport { holds: phi == expected_phi, phi, expected_phi })
}

/// `1/P^T = 1/P^{T/soc T} + t^2` for Gorenstein `T` of embedding dimension
/// at least two.
pub fn verify_socle_quotient(t: &ArtinAlgebra, n: usize) -> Result<bool> {
    if !t.is_gorenstein() {
        return Err(Error::NotGorenstein(t.socle_type()));
    }
    if t.embedding_dimension() < 2 {
        return Err(Error::Precondition("embedding dimension below 2".into()));
    }
    let bar = t.quotient(&t.socle())?;
    let lhs = inverse_poincare(t, n)?;
    let rhs = inverse_poincare(&bar, n)?.add(&SeriesTrunc::monomial(1, 2, n));
    Ok(lhs == rhs)
}

/// The minimal-generator formulas for `P = R ×_k S` and `Q = R #_k S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MuReport {
    pub m: usize,
    pub n: usize,
    pub mu_r: usize,
    pub mu_s: usize,
    pub mu_p: usize,
    pub mu_q: usize,
    /// `μ(I_Q) - μ(I_P)`.
    pub psi: i64,
    pub expected_psi: i64,
    /// `μ(I_P) = μ(I_R) + μ(I_S) + mn`.
    pub fibre_holds: bool,
    /// `μ(I_Q) = μ(I_P) + ψ`.
    pub connected_holds: bool,
    /// Betti-derived counts agree with direct counts on all four rings.
    pub direct_agrees: bool,
}

pub fn expected_psi(m: usize, n: usize) -> i64 {
    match (m, n) {
        (1, 1) => -1,
        (m, n) if m >= 2 && n >= 2 => 1,
        _ => 0,
    }
}

pub fn verify_mu_formulas(r: &ArtinAlgebra, s: &ArtinAlgebra) -> Result<MuReport> {
    let p = fibre_product(r, s)?.algebra;
    let q = connected_sum(&ConnectedSumSpec::new(r.clone(), s.clone())?)?.algebra;
    let rings = [r, s, &p, &q];
    let mut mus = Vec::with_capacity(4);
    let mut direct_agrees = true;
    for a in rings {
        let mu = mu_from_betti(a)?;
        direct_agrees &= mu == minimal_generator_count(a);
        mus.push(mu);
    }
    let (m, n) = (r.embedding_dimension(), s.embedding_dimension());
    let psi = mus[3] as i64 - mus[2] as i64;
    let expected_psi = expected_psi(m, n);
    Ok(MuReport {
        m,
        n,
        mu_r: mus[0],
        mu_s: mus[1],
        mu_p: mus[2],
        mu_q: mus[3],
        psi,
        expected_psi,
        fibre_holds: mus[2] == mus[0] + mus[1] + m * n,
        connected_holds: psi == expected_psi,
        direct_agrees,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grobner::IdealPresentation;
    use crate::polycore::parse_presentation;
    use crate::quotient::build_algebra;

    fn alg(text: &str) -> ArtinAlgebra {
        build_algebra(&IdealPresentation::from_presentation(&parse_presentation(text).unwrap())).unwrap()
    }

    #[test]
    fn cubic_line() {
        let b = betti_numbers(&alg("field QQ; vars Y; ideal Y^3"), 6).unwrap();
        assert_eq!(b.betti, [1, 1, 1, 1, 1, 1, 1]);
        assert!(b.minimal && b.exact);
        assert_eq!(b.poincare().reciprocal().unwrap(), SeriesTrunc::from_ints([1, -1], 6));
    }

    #[test]
    fn square_zero_plane() {
        let b = betti_numbers(&alg("field QQ; vars Y Z; ideal Y^2, Z^2, Y*Z"), 6).unwrap();
        assert_eq!(b.betti, [1, 2, 4, 8, 16, 32, 64]);
        assert_eq!(b.epsilon2(), 3);
    }

    #[test]
    fn stretched_example() {
        let b = betti_numbers(&alg("field GF(101); vars Y Z; ideal Y*Z, Z^2 - Y^3"), 6).unwrap();
        assert_eq!(b.betti, [1, 2, 3, 4, 5, 6, 7]);
        assert_eq!(b.poincare().reciprocal().unwrap(), SeriesTrunc::from_ints([1, -2, 1], 6));
    }

    #[test]
    fn mu_values() {
        assert_eq!(mu_from_betti(&alg("field QQ; vars Y Z; ideal Y*Z, Y^2 - Z^2")).unwrap(), 2);
        assert_eq!(mu_from_betti(&alg("field QQ; vars Y; ideal Y^3")).unwrap(), 1);
        assert_eq!(mu_from_betti(&alg("field QQ; vars Y Z; ideal Y^2, Z^2, Y*Z")).unwrap(), 3);
    }

    #[test]
    fn series_arithmetic() {
        let p = SeriesTrunc::from_ints([1, 2, 4, 8, 16], 4);
        let inv = p.reciprocal().unwrap();
        assert_eq!(inv, SeriesTrunc::from_ints([1, -2], 4));
        assert_eq!(p.mul(&inv), SeriesTrunc::one(4));
        assert_eq!(inv.to_string(), "1 - 2t + O(t^5)");
        assert!(SeriesTrunc::zero(3).reciprocal().is_none());
    }

    #[test]
    fn fibre_series() {
        let r = alg("field QQ; vars Y; ideal Y^3");
        let s = alg("field QQ; vars Z; ideal Z^2");
        let p = fibre_product(&r, &s).unwrap().algebra;
        assert!(verify_fp_series(&r, &s, &p, 6).unwrap());
        assert_eq!(inverse_poincare(&p, 6).unwrap(), SeriesTrunc::from_ints([1, -2], 6));
    }

    #[test]
    fn connected_series_of_lines() {
        let r = alg("field QQ; vars Y; ideal Y^3");
        let s = alg("field QQ; vars Z; ideal Z^3");
        let q = connected_sum(&ConnectedSumSpec::new(r.clone(), s.clone()).unwrap()).unwrap().algebra;
        let rep = verify_cs_series(&r, &s, &q, 6).unwrap();
        assert!(rep.holds);
        assert_eq!(rep.phi, SeriesTrunc::monomial(1, 2, 6));
        assert_eq!(betti_numbers(&q, 6).unwrap().betti, [1, 2, 3, 4, 5, 6, 7]);
    }

    #[test]
    fn socle_quotient() {
        assert!(verify_socle_quotient(&alg("field QQ; vars Y Z; ideal Y*Z, Y^2 - Z^2"), 6).unwrap());
        let line = alg("field QQ; vars Y; ideal Y^3");
        assert!(matches!(verify_socle_quotient(&line, 6), Err(Error::Precondition(_))));
    }

    #[test]
    fn mu_formulas_for_lines() {
        let r = alg("field QQ; vars Y; ideal Y^3");
        let s = alg("field QQ; vars Z; ideal Z^3");
        let rep = verify_mu_formulas(&r, &s).unwrap();
        assert_eq!((rep.mu_p, rep.mu_q, rep.psi), (3, 2, -1));
        assert!(rep.fibre_holds && rep.connected_holds && rep.direct_agrees);
    }

    #[test]
    fn rank_guard() {
        let a = alg("field GF(101); vars Y Z; ideal Y^2, Z^2, Y*Z");
        let err = betti_numbers_with(&a, 6, &ResolutionConfig { max_rank: 10 }).unwrap_err();
        assert_eq!(err, Error::RankGuard { rank: 16, limit: 10 });
    }
}
