#![allow(dead_code)]

use std::sync::Arc;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use artinsum::grobner::IdealPresentation;
use artinsum::linalg::{rank, ScalarOps};
use artinsum::polycore::{monomials_of_degree, parse_presentation};
use artinsum::quotient::{build_algebra, ArtinAlgebra, Vector};
use artinsum::sums::{apolar_algebra_named, connected_sum, ConnectedSumSpec, DualPolynomial};
use artinsum::{Field, Monomial, PolyRing, Polynomial, Scalar};

pub const P: u64 = 101;

pub fn gf() -> Field {
    Field::prime(P).unwrap()
}

pub fn alg(text: &str) -> ArtinAlgebra {
    build_algebra(&IdealPresentation::from_presentation(&parse_presentation(text).unwrap())).unwrap()
}

pub fn names(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

pub fn random_scalar(rng: &mut ChaCha8Rng, nonzero: bool) -> Scalar {
    let lo = i64::from(nonzero);
    gf().from_i64(rng.gen_range(lo..P as i64))
}

/// A random form of degree `d` in `ring`, every coefficient nonzero.
pub fn random_form(rng: &mut ChaCha8Rng, ring: &Arc<PolyRing>, d: u32) -> Polynomial {
    Polynomial::from_terms(
        ring,
        monomials_of_degree(ring.nvars(), d).into_iter().map(|m| (m, random_scalar(rng, true))).collect::<Vec<_>>(),
    )
}

/// A random dual polynomial of exact degree `d` with lower-order terms.
pub fn random_dual(rng: &mut ChaCha8Rng, nvars: usize, d: u32) -> DualPolynomial {
    let ring = PolyRing::new(gf(), names("u", nvars));
    let mut f = random_form(rng, &ring, d);
    for e in 2..d {
        if rng.gen_bool(0.5) {
            f = &f + &random_form(rng, &ring, e);
        }
    }
    DualPolynomial::new(f).unwrap()
}

/// A random Gorenstein algebra with at most two variables named `prefix1..`
/// and Loewy length `d`.
pub fn random_gorenstein(rng: &mut ChaCha8Rng, prefix: &str, d: u32) -> ArtinAlgebra {
    let n = rng.gen_range(1..=2);
    apolar_algebra_named(&random_dual(rng, n, d), names(prefix, n)).unwrap()
}

/// The seeded corpus of pairs with `2 <= ll <= 4`, `edim <= 2`.
pub fn gorenstein_pairs(rng: &mut ChaCha8Rng, count: usize) -> Vec<(ArtinAlgebra, ArtinAlgebra)> {
    (0..count)
        .map(|_| {
            let dr = rng.gen_range(2..=4);
            let ds = rng.gen_range(2..=4);
            (random_gorenstein(rng, "Y", dr), random_gorenstein(rng, "Z", ds))
        })
        .collect()
}

/// `k[prefix]/Ann(sum c_i u_i^2)`: Loewy length two, embedding dimension `n`.
pub fn square_zero_quadric(rng: &mut ChaCha8Rng, prefix: &str, n: usize) -> ArtinAlgebra {
    let ring = PolyRing::new(gf(), names("u", n));
    let f = Polynomial::from_terms(
        &ring,
        (0..n).map(|i| (Monomial::var(n, i).mul(&Monomial::var(n, i)), random_scalar(rng, true))).collect::<Vec<_>>(),
    );
    apolar_algebra_named(&DualPolynomial::new(f).unwrap(), names(prefix, n)).unwrap()
}

/// Graded Gorenstein with `H = (1,h,h,1)`.
pub fn graded_cubic(rng: &mut ChaCha8Rng, prefix: &str, h: usize) -> ArtinAlgebra {
    let ring = PolyRing::new(gf(), names("u", h));
    loop {
        let a = apolar_algebra_named(&DualPolynomial::new(random_form(rng, &ring, 3)).unwrap(), names(prefix, h)).unwrap();
        if a.embedding_dimension() == h {
            return a;
        }
    }
}

pub fn truncated_line(prefix: &str, s: u32) -> ArtinAlgebra {
    alg(&format!("field GF({P}); vars {prefix}; ideal {prefix}^{};", s + 1))
}

/// Present `a` in random linear coordinates `X1..Xn`.
pub fn scramble(rng: &mut ChaCha8Rng, a: &ArtinAlgebra) -> ArtinAlgebra {
    let n = a.nvars();
    let ops = ScalarOps(a.field());
    loop {
        let coeffs: Vec<Vector> = (0..n).map(|_| (0..n).map(|_| random_scalar(rng, false)).collect()).collect();
        if rank(&ops, coeffs.clone(), n) < n {
            continue;
        }
        let gens: Vec<Vector> = coeffs
            .iter()
            .map(|row| {
                row.iter().enumerate().fold(a.zero(), |acc, (i, c)| a.add(&acc, &a.scale(c, a.var(i))))
            })
            .collect();
        let ring = PolyRing::new(a.field(), names("X", n));
        return build_algebra(&a.present_by_generators(&gens, &ring).unwrap()).unwrap();
    }
}

pub struct Instance {
    pub label: String,
    pub q: ArtinAlgebra,
    pub r: ArtinAlgebra,
    pub s: ArtinAlgebra,
}

/// Connected sums `R # S` with `ll(S) = 2` and `R` graded of Loewy length at
/// least three: stretched when `R` is a truncated line, short when `R` has
/// `H = (1,h,h,1)`. Odd-numbered instances are scrambled by a random linear
/// change of coordinates.
pub fn structure_instances(rng: &mut ChaCha8Rng, count: usize) -> Vec<Instance> {
    (0..count)
        .map(|k| {
            let n = 1 + k % 3;
            let (r, kind) = if k % 2 == 0 {
                let s = 3 + (k as u32 / 2) % 3;
                (truncated_line("Y", s), format!("stretched s={s}"))
            } else {
                let h = 2 + (k / 2) % 2;
                (graded_cubic(rng, "Y", h), format!("short h={h}"))
            };
            let s = square_zero_quadric(rng, "Z", n);
            let unit = random_scalar(rng, true);
            let q = connected_sum(&ConnectedSumSpec::new(r.clone(), s.clone()).unwrap().with_unit(unit)).unwrap().algebra;
            let (q, label) = if k % 4 >= 2 {
                (scramble(rng, &q), format!("{kind} n={n} scrambled"))
            } else {
                (q, format!("{kind} n={n}"))
            };
            Instance { label, q, r, s }
        })
        .collect()
}
