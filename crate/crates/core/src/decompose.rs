//! Splitting Gorenstein algebras as connected sums and certifying that no
//! split exists.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::graded::{associated_graded, binomial, classify_hilbert, gls_split, is_gls};
use crate::grobner::{contract, IdealPresentation};
use crate::linalg::{kernel, rank, solve_combination, ScalarOps};
use crate::polycore::{Monomial, PolyRing, Polynomial, Scalar};
use crate::quotient::{build_algebra, evaluate_monomials, ArtinAlgebra, Subspace, Vector};
use crate::sums::{connected_sum, socle_generator, ConnectedSumSpec};

/// Outcome of testing one variable partition.
#[derive(Clone, Debug)]
pub struct SplitCheck {
    pub ok: bool,
    /// Products `Y_i Z_j` outside the ideal.
    pub offending: Vec<Polynomial>,
    /// `k[Y]/(I ∩ k[Y])`.
    pub r: ArtinAlgebra,
    /// `k[Z]/(I ∩ k[Z])`.
    pub s: ArtinAlgebra,
    /// `Δ_R = u Δ_S` in the algebra, when both socle generators survive
    /// and are proportional.
    pub unit: Option<Scalar>,
    /// `λ(R) + λ(S) = λ(Q) + 2`.
    pub length_identity: bool,
    /// `connected_sum(R, S, u)` has the same reduced presentation.
    pub reconstructs: bool,
    pub reasons: Vec<String>,
}

fn resolve_names(ring: &PolyRing, names: &[&str]) -> Result<Vec<usize>> {
    names
        .iter()
        .map(|n| ring.var_index(n).ok_or_else(|| Error::Precondition(format!("unknown variable `{n}` in partition"))))
        .collect()
}

/// [`check_split`] with the partition given by variable names.
pub fn check_split_by_names(q: &ArtinAlgebra, y: &[&str], z: &[&str]) -> Result<SplitCheck> {
    let yi = resolve_names(q.ring(), y)?;
    let zi = resolve_names(q.ring(), z)?;
    check_split(q, &yi, &zi)
}

/// Test whether the variable partition `(Y, Z)` exhibits the algebra as a
/// connected sum: every `Y_i Z_j` must vanish and both contractions must be
/// Gorenstein.
pub fn check_split(q: &ArtinAlgebra, y: &[usize], z: &[usize]) -> Result<SplitCheck> {
    if !q.is_gorenstein() {
        return Err(Error::NotGorenstein(q.socle_type()));
    }
    let n = q.nvars();
    let mut seen = vec![false; n];
    for &i in y.iter().chain(z) {
        if i >= n || seen[i] {
            return Err(Error::Precondition("partition must list every variable exactly once".into()));
        }
        seen[i] = true;
    }
    if seen.iter().any(|s| !s) || y.is_empty() || z.is_empty() {
        return Err(Error::Precondition("partition must list every variable exactly once".into()));
    }
    let ring = q.ring();
    let mut reasons = Vec::new();

    let mut offending = Vec::new();
    for &i in y {
        for &j in z {
            let p = &Polynomial::var(ring, i) * &Polynomial::var(ring, j);
            if q.element(&p)?.iter().any(|c| !c.is_zero()) {
                reasons.push(format!("{p} is not in the ideal"));
                offending.push(p);
            }
        }
    }

    let r = build_algebra(&contract(q.ideal(), y)?)?;
    let s = build_algebra(&contract(q.ideal(), z)?)?;
    for (name, a) in [("Y", &r), ("Z", &s)] {
        if !a.is_gorenstein() {
            let gens: Vec<String> = a.reduced_basis().iter().map(ToString::to_string).collect();
            reasons.push(format!(
                "{name}-contraction <{}> has type {}",
                gens.join(", "),
                a.socle_type()
            ));
        }
    }

    let length_identity = r.length() + s.length() == q.length() + 2;
    if !length_identity {
        reasons.push(format!(
            "lengths {} + {} differ from {} + 2",
            r.length(),
            s.length(),
            q.length()
        ));
    }

    let mut unit = None;
    let mut reconstructs = false;
    if r.is_gorenstein() && s.is_gorenstein() {
        let dr = q.element(&socle_generator(&r)?.embed_by_name(ring)?)?;
        let ds = q.element(&socle_generator(&s)?.embed_by_name(ring)?)?;
        unit = proportion(q, &dr, &ds);
        match &unit {
            None => reasons.push("socle generators of the contractions are not proportional".into()),
            Some(u) if r.length() > 1 && s.length() > 1 => {
                let spec = ConnectedSumSpec::new(r.clone(), s.clone())?.with_unit(u.clone());
                let sum = connected_sum(&spec)?;
                let joint = sum.algebra.ring().clone();
                let mut gens = Vec::new();
                for g in q.reduced_basis() {
                    gens.push(g.embed_by_name(&joint)?);
                }
                let here = IdealPresentation::new(&joint, gens)?;
                reconstructs = !sum.trivial && *here.reduced_basis()? == *sum.algebra.reduced_basis();
                if !reconstructs {
                    reasons.push("the connected sum of the contractions differs from the input".into());
                }
            }
            Some(_) => reasons.push("a contraction equals the residue field".into()),
        }
    }

    let ok = offending.is_empty() && r.is_gorenstein() && s.is_gorenstein() && unit.is_some() && length_identity && reconstructs;
    Ok(SplitCheck { ok, offending, r, s, unit, length_identity, reconstructs, reasons })
}

/// `u` with `a = u b`, both nonzero.
fn proportion(q: &ArtinAlgebra, a: &[Scalar], b: &[Scalar]) -> Option<Scalar> {
    let p = b.iter().position(|x| !x.is_zero())?;
    let u = &a[p] * &b[p].inv()?;
    (!u.is_zero() && q.scale(&u, b) == a).then_some(u)
}

/// An invertible substitution `X -> (Y, Z)` of the algebra's variables.
#[derive(Clone, Debug)]
pub struct CoordinateChange {
    pub old_ring: Arc<PolyRing>,
    pub new_ring: Arc<PolyRing>,
    /// Each new variable as a polynomial in the old ones.
    pub forward: Vec<Polynomial>,
    /// Linear parts of `forward`; an invertible matrix.
    pub linear: Vec<Polynomial>,
    /// Each old variable as a polynomial in the new ones, modulo the ideal.
    pub inverse: Vec<Polynomial>,
}

impl fmt::Display for CoordinateChange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (v, p) in self.new_ring.vars().iter().zip(&self.forward) {
            writeln!(f, "{v} = {p}")?;
        }
        Ok(())
    }
}

/// The ideals `J = <z>` and `I = 0 : J` that split off a square-zero
/// connected summand.
#[derive(Clone, Debug)]
pub struct SplitWitness {
    /// `0 : m^2`.
    pub square_annihilator: Subspace,
    /// Lifts of an echelon basis of `(0 : m^2)/m^{s-1}`.
    pub z_elements: Vec<Vector>,
    /// Minimal generators of `I`.
    pub y_elements: Vec<Vector>,
    pub j: Subspace,
    pub i: Subspace,
    pub coordinate_change: CoordinateChange,
}

fn var_names(prefix: &str, n: usize) -> Vec<String> {
    if n == 1 {
        vec![prefix.to_string()]
    } else {
        (1..=n).map(|i| format!("{prefix}{i}")).collect()
    }
}

fn check(cond: bool, what: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Precondition(what.to_string()))
    }
}

fn is_zero_vec(v: &[Scalar]) -> bool {
    v.iter().all(Scalar::is_zero)
}

/// Find `J` and `I` for a Gorenstein algebra of Loewy length at least three
/// whose associated graded ring is GLS. `None` when the associated graded
/// ring is itself Gorenstein.
pub fn split_witness(q: &ArtinAlgebra) -> Result<Option<SplitWitness>> {
    if !q.is_gorenstein() {
        return Err(Error::NotGorenstein(q.socle_type()));
    }
    let s = q.loewy_length();
    check(s >= 3, "Loewy length below 3")?;
    let g = associated_graded(q)?;
    check(is_gls(&g)?.gls, "associated graded ring is not Gorenstein up to linear socle")?;
    let n = g.algebra().socle_type() - 1;
    if n == 0 {
        return Ok(None);
    }

    let m2 = q.power(2);
    let top = q.power(s - 1);
    let w = q.colon(&m2);
    check(w.intersect(&m2) == top, "(0 : m^2) ∩ m^2 differs from m^(s-1)")?;
    check(w.dim() == top.dim() + n, "dim (0 : m^2)/m^(s-1) differs from type(gr) - 1")?;

    let mut e = top.echelon();
    let z: Vec<Vector> = w.rows().iter().filter(|r| e.insert((*r).clone()).is_some()).cloned().collect();
    let soc = q.socle();
    for v in &z {
        check(q.mul_by_max(&q.span([v.clone()])) == soc, "a witness w does not satisfy w*m = soc")?;
    }

    let j = q.ideal_generated(&z);
    let i = q.colon(&j);
    let m = q.max_ideal();
    check(q.product(&j, &m2).is_zero(), "J*m^2 is not zero")?;
    check(soc.contains_subspace(&q.mul_by_max(&j)), "J*m is not inside the socle")?;
    check(q.product(&i, &j).is_zero(), "I*J is not zero")?;
    check(i.sum(&j) == m, "I + J differs from m")?;
    let mut ir = q.product(&i, &i);
    for r in 2..=s {
        check(ir == q.power(r), "a power of I differs from the power of m")?;
        ir = q.product(&ir, &i);
    }
    let (mu_j, _) = q.minimal_generators(&j)?;
    let (mu_i, y) = q.minimal_generators(&i)?;
    check(mu_j == n, "J needs more generators than type(gr) - 1")?;
    check(mu_i + mu_j == q.embedding_dimension(), "mu(I) + mu(J) differs from the embedding dimension")?;

    let mut names = var_names("Y", y.len());
    names.extend(var_names("Z", z.len()));
    let new_ring = PolyRing::new(q.field(), names);
    let gens: Vec<Vector> = y.iter().chain(&z).cloned().collect();
    let coordinate_change = coordinate_change(q, &gens, &new_ring)?;
    Ok(Some(SplitWitness { square_annihilator: w, z_elements: z, y_elements: y, j, i, coordinate_change }))
}

fn coordinate_change(q: &ArtinAlgebra, gens: &[Vector], new_ring: &Arc<PolyRing>) -> Result<CoordinateChange> {
    let old_ring = q.ring().clone();
    let nv = old_ring.nvars();
    let ops = ScalarOps(q.field());
    let forward: Vec<Polynomial> = gens.iter().map(|g| q.lift(g)).collect();
    let linear: Vec<Polynomial> = forward.iter().map(|p| p.homogeneous_component(1)).collect();
    let matrix: Vec<Vector> = linear
        .iter()
        .map(|l| (0..nv).map(|k| l.coefficient(&Monomial::var(nv, k))).collect())
        .collect();
    check(gens.len() == nv && rank(&ops, matrix, nv) == nv, "coordinate change is not invertible")?;

    let values = evaluate_monomials(gens.len(), q.loewy_length() as u32, q.one(), |i, v| q.mul(&gens[i], v));
    let rows: Vec<Vector> = values.iter().map(|(_, v)| v.clone()).collect();
    let inverse = (0..nv)
        .map(|k| {
            let c = solve_combination(&ops, &rows, q.var(k))
                .ok_or_else(|| Error::Precondition("coordinate change is not invertible".into()))?;
            Ok(Polynomial::from_terms(
                new_ring,
                c.into_iter()
                    .zip(&values)
                    .filter(|(c, _)| !c.is_zero())
                    .map(|(c, (m, _))| (m.clone(), c)),
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CoordinateChange { old_ring, new_ring: new_ring.clone(), forward, linear, inverse })
}

/// Reasons an algebra cannot be a non-trivial connected sum.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Certificate {
    /// `H(2) >= C(d,2) + 2`.
    Hilbert2,
    /// A complete intersection of embedding dimension at least three.
    CompleteIntersection,
    /// Compressed with Loewy length at least four.
    Compressed,
}

impl Certificate {
    pub fn name(self) -> &'static str {
        match self {
            Certificate::Hilbert2 => "HILBERT2",
            Certificate::CompleteIntersection => "COMPLETE_INTERSECTION",
            Certificate::Compressed => "COMPRESSED",
        }
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// `μ(I)` for the defining ideal `I ⊆ <X>^2`, counted as `dim I/<X>I` in
/// degrees up to `s+1`.
pub fn minimal_generator_count(a: &ArtinAlgebra) -> usize {
    let n = a.nvars();
    let bound = a.loewy_length() as u32 + 1;
    let values = evaluate_monomials(n, bound, a.one(), |i, v| a.mul(a.var(i), v));
    let ops = ScalarOps(a.field());
    let ncols = values.len();
    let index: std::collections::HashMap<&Monomial, usize> = values.iter().enumerate().map(|(j, (m, _))| (m, j)).collect();
    let rows: Vec<Vector> = (0..a.length()).map(|r| values.iter().map(|(_, v)| v[r].clone()).collect()).collect();
    let ker = kernel(&ops, rows, ncols);
    let mut shifted = Vec::new();
    for v in &ker {
        for k in 0..n {
            let x = Monomial::var(n, k);
            let mut out = vec![a.field().zero(); ncols];
            for (j, c) in v.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let m = values[j].0.mul(&x);
                if let Some(&t) = index.get(&m) {
                    out[t] = c.clone();
                }
            }
            shifted.push(out);
        }
    }
    ker.len() - rank(&ops, shifted, ncols)
}

/// Every indecomposability certificate that applies.
pub fn certify_indecomposable(q: &ArtinAlgebra) -> Vec<Certificate> {
    let mut out = Vec::new();
    if !q.is_gorenstein() {
        return out;
    }
    let h = q.hilbert_function();
    let d = q.embedding_dimension();
    if h.get(2).is_some_and(|&h2| h2 >= binomial(d, 2) + 2) {
        out.push(Certificate::Hilbert2);
    }
    if d >= 3 && minimal_generator_count(q) == d {
        out.push(Certificate::CompleteIntersection);
    }
    if q.loewy_length() >= 4 && classify_hilbert(&h).compressed {
        out.push(Certificate::Compressed);
    }
    out
}

/// `H_Q(2) <= C(m+n+1, 2) - mn` with `m`, `n` the embedding dimensions of
/// the factors.
pub fn h2_bound_check(r: &ArtinAlgebra, s: &ArtinAlgebra, q: &ArtinAlgebra) -> bool {
    let (m, n) = (r.embedding_dimension(), s.embedding_dimension());
    let h2 = q.hilbert_function().get(2).copied().unwrap_or(0);
    h2 + m * n <= binomial(m + n + 1, 2)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Decomposed,
    IndecomposableCertified,
    Inconclusive,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Decomposed => "decomposed",
            Status::IndecomposableCertified => "indecomposable-certified",
            Status::Inconclusive => "inconclusive",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A named equality checked during decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Identity {
    pub name: String,
    pub holds: bool,
}

#[derive(Clone, Debug)]
pub struct DecompositionReport {
    pub status: Status,
    /// `R = Q` and `S = k[Z]/<Z^2>`.
    pub trivial: bool,
    pub components: Option<(ArtinAlgebra, ArtinAlgebra)>,
    pub unit: Option<Scalar>,
    pub coordinate_change: Option<CoordinateChange>,
    pub certificates: Vec<Certificate>,
    pub identities: Vec<Identity>,
    pub reasons: Vec<String>,
}

impl DecompositionReport {
    fn new(status: Status) -> Self {
        DecompositionReport {
            status,
            trivial: false,
            components: None,
            unit: None,
            coordinate_change: None,
            certificates: Vec::new(),
            identities: Vec::new(),
            reasons: Vec::new(),
        }
    }

    fn record(&mut self, name: &str, holds: bool) {
        self.identities.push(Identity { name: name.to_string(), holds });
    }

    pub fn all_identities_hold(&self) -> bool {
        self.identities.iter().all(|i| i.holds)
    }
}

fn square_zero_line(q: &ArtinAlgebra) -> Result<ArtinAlgebra> {
    let ring = PolyRing::new(q.field(), vec!["Z".into()]);
    build_algebra(&IdealPresentation::new(&ring, vec![Polynomial::var(&ring, 0).pow(2)])?)
}

/// Split off a square-zero summand along `0 : m^2` when the associated
/// graded ring is Gorenstein up to linear socle.
pub fn structure_decompose(q: &ArtinAlgebra) -> Result<DecompositionReport> {
    if !q.is_gorenstein() {
        return Err(Error::NotGorenstein(q.socle_type()));
    }
    if q.loewy_length() < 3 {
        return Err(Error::Precondition("Loewy length below 3".into()));
    }
    let g = associated_graded(q)?;
    if g.algebra().is_gorenstein() {
        let mut rep = DecompositionReport::new(Status::Decomposed);
        rep.trivial = true;
        rep.components = Some((q.clone(), square_zero_line(q)?));
        rep.unit = Some(q.field().one());
        rep.record("gr(Q) is Gorenstein", true);
        return Ok(rep);
    }
    if !is_gls(&g)?.gls {
        let certificates = certify_indecomposable(q);
        let mut rep = DecompositionReport::new(if certificates.is_empty() {
            Status::Inconclusive
        } else {
            Status::IndecomposableCertified
        });
        rep.certificates = certificates;
        rep.reasons.push("gr(Q) is not Gorenstein up to linear socle".into());
        return Ok(rep);
    }

    let witness = split_witness(q)?.expect("gr is not Gorenstein");
    let cc = &witness.coordinate_change;
    let gens: Vec<Vector> = witness.y_elements.iter().chain(&witness.z_elements).cloned().collect();
    let qn = build_algebra(&q.present_by_generators(&gens, &cc.new_ring)?)?;
    let m = witness.y_elements.len();
    let y: Vec<usize> = (0..m).collect();
    let z: Vec<usize> = (m..qn.nvars()).collect();
    let split = check_split(&qn, &y, &z)?;

    let mut rep = DecompositionReport::new(Status::Inconclusive);
    let back = (0..q.nvars()).all(|k| {
        let p = cc.inverse[k].substitute(&cc.forward);
        q.element(&p).map(|v| v == *q.var(k)).unwrap_or(false)
    });
    rep.record("coordinate change composes to the identity", back);
    rep.record("Y*Z vanishes", split.offending.is_empty());
    rep.record("contractions are Gorenstein", split.r.is_gorenstein() && split.s.is_gorenstein());
    rep.record("l(R) + l(S) = l(Q) + 2", split.length_identity);
    rep.record("connected sum of R and S reproduces Q", split.reconstructs);
    rep.record("ll(S) = 2", split.s.loewy_length() == 2);
    rep.record("gr(R) = gr(Q)/<soc(gr Q) ∩ G_1>", gr_matches(q, &g, &witness, &split.r)?);
    rep.reasons = split.reasons.clone();
    rep.unit = split.unit.clone();
    rep.coordinate_change = Some(witness.coordinate_change.clone());
    if split.ok && rep.all_identities_hold() {
        rep.status = Status::Decomposed;
    }
    rep.components = Some((split.r, split.s));
    Ok(rep)
}

/// Present `G/<soc(G) ∩ G_1>` by the initial forms of the `y` witnesses and
/// compare with `gr(R)` in the variables of `R`.
fn gr_matches(
    q: &ArtinAlgebra,
    g: &crate::graded::GradedAlgebra,
    witness: &SplitWitness,
    r: &ArtinAlgebra,
) -> Result<bool> {
    let a = gls_split(g)?.a;
    let m2 = q.power(2);
    let ops = ScalarOps(q.field());
    let n = q.nvars();
    let linear_rows: Vec<Vector> = (0..n).map(|k| m2.reduce(q.var(k))).collect();
    let mut images = Vec::new();
    for y in &witness.y_elements {
        let c = solve_combination(&ops, &linear_rows, &m2.reduce(y))
            .ok_or_else(|| Error::Precondition("witness is not in the maximal ideal".into()))?;
        let form = Polynomial::from_terms(
            q.ring(),
            c.into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| (Monomial::var(n, k), c)),
        );
        images.push(a.algebra().element(&form)?);
    }
    if images.len() != r.nvars() || images.iter().any(|v| is_zero_vec(v)) {
        return Ok(false);
    }
    let presented = a.algebra().present_by_generators(&images, r.ring())?;
    let gr = associated_graded(r)?;
    Ok(*presented.reduced_basis()? == *gr.presentation().reduced_basis()?)
}

/// Certificates first; then the structure route when the Loewy length
/// allows it.
pub fn decompose(q: &ArtinAlgebra) -> Result<DecompositionReport> {
    let certificates = certify_indecomposable(q);
    if !certificates.is_empty() {
        let mut rep = DecompositionReport::new(Status::IndecomposableCertified);
        rep.certificates = certificates;
        return Ok(rep);
    }
    if q.loewy_length() < 3 {
        if !q.is_gorenstein() {
            return Err(Error::NotGorenstein(q.socle_type()));
        }
        let mut rep = DecompositionReport::new(Status::Inconclusive);
        rep.reasons.push("Loewy length below 3".into());
        return Ok(rep);
    }
    structure_decompose(q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::parse_presentation;

    fn alg(text: &str) -> ArtinAlgebra {
        build_algebra(&IdealPresentation::from_presentation(&parse_presentation(text).unwrap())).unwrap()
    }

    fn gens(a: &ArtinAlgebra) -> Vec<String> {
        a.reduced_basis().iter().map(|p| p.to_string()).collect()
    }

    #[test]
    fn splits_the_cubic_sum() {
        let q = alg("field QQ; vars Y Z; ideal Y*Z, Y^2 - Z^2");
        let c = check_split_by_names(&q, &["Y"], &["Z"]).unwrap();
        assert!(c.ok, "{:?}", c.reasons);
        assert_eq!(gens(&c.r), ["Y^3"]);
        assert_eq!(gens(&c.s), ["Z^3"]);
        assert!(c.unit.unwrap().is_one());
    }

    #[test]
    fn splits_the_stretched_example() {
        let q = alg("field QQ; vars Y Z; ideal Y*Z, Y^3 - Z^2");
        let c = check_split_by_names(&q, &["Y"], &["Z"]).unwrap();
        assert!(c.ok, "{:?}", c.reasons);
        assert_eq!(gens(&c.r), ["Y^4"]);
        assert_eq!(gens(&c.s), ["Z^3"]);
        assert!(c.length_identity);
    }

    #[test]
    fn rejects_a_mixed_partition() {
        let q = alg("field QQ; vars Y1 Z1 Z2; ideal Y1*Z1 - Z2^2, Y1^2, Z1^2");
        let c = check_split_by_names(&q, &["Y1"], &["Z1", "Z2"]).unwrap();
        assert!(!c.ok);
        assert_eq!(c.offending.iter().map(ToString::to_string).collect::<Vec<_>>(), ["Y1*Z1", "Y1*Z2"]);
        assert_eq!(gens(&c.s), ["Z2^4", "Z1*Z2^2", "Z1^2"]);
        assert_eq!(c.s.socle_type(), 2);
    }

    #[test]
    fn bad_partitions() {
        let q = alg("field QQ; vars Y Z; ideal Y*Z, Y^2 - Z^2");
        assert!(matches!(check_split(&q, &[0], &[0]), Err(Error::Precondition(_))));
        assert!(matches!(check_split(&q, &[0, 1], &[]), Err(Error::Precondition(_))));
        let p = alg("field QQ; vars Y Z; ideal Y^2, Z^2, Y*Z");
        assert_eq!(check_split(&p, &[0], &[1]).unwrap_err(), Error::NotGorenstein(2));
    }

    #[test]
    fn witness_of_the_stretched_example() {
        let q = alg("field QQ; vars Y Z; ideal Y*Z, Z^2 - Y^3");
        let w = split_witness(&q).unwrap().unwrap();
        assert_eq!(w.z_elements.len(), 1);
        assert_eq!(w.y_elements.len(), 1);
        assert_eq!(w.square_annihilator.dim(), 3);
        assert_eq!(q.lift(&w.z_elements[0]).to_string(), "Z");
        assert_eq!(w.coordinate_change.new_ring.vars(), ["Y", "Z"]);
    }

    #[test]
    fn no_witness_for_graded_gorenstein() {
        let q = alg("field QQ; vars Y; ideal Y^4");
        assert!(split_witness(&q).unwrap().is_none());
        let short = alg("field QQ; vars Y; ideal Y^3");
        assert!(matches!(split_witness(&short), Err(Error::Precondition(_))));
    }

    #[test]
    fn structure_route_on_the_stretched_example() {
        let q = alg("field QQ; vars Y Z; ideal Y*Z, Z^2 - Y^3");
        let rep = structure_decompose(&q).unwrap();
        assert_eq!(rep.status, Status::Decomposed, "{:?} {:?}", rep.identities, rep.reasons);
        let (r, s) = rep.components.unwrap();
        assert_eq!(gens(&r), ["Y^4"]);
        assert_eq!(s.loewy_length(), 2);
        assert_eq!(s.length(), 3);
    }

    #[test]
    fn structure_route_with_two_square_zero_generators() {
        let r = alg("field QQ; vars Y; ideal Y^4");
        let s = crate::sums::apolar_algebra(&crate::sums::DualPolynomial::new(
            crate::polycore::parse_polynomial("Z1^2 + Z2^2", &PolyRing::new(q_field(), vec!["Z1".into(), "Z2".into()]))
                .unwrap(),
        )
        .unwrap())
        .unwrap();
        let q = connected_sum(&ConnectedSumSpec::new(r, s).unwrap()).unwrap().algebra;
        assert_eq!(q.hilbert_function(), [1, 3, 1, 1]);
        let w = split_witness(&q).unwrap().unwrap();
        assert_eq!(w.z_elements.len(), 2);
        let rep = structure_decompose(&q).unwrap();
        assert_eq!(rep.status, Status::Decomposed, "{:?} {:?}", rep.identities, rep.reasons);
        let (r, s) = rep.components.unwrap();
        assert_eq!(r.length(), 4);
        assert_eq!(s.length(), 4);
        assert_eq!(s.loewy_length(), 2);
    }

    fn q_field() -> crate::polycore::Field {
        crate::polycore::Field::Rationals
    }

    #[test]
    fn trivial_branch_for_graded_gorenstein() {
        let q = alg("field QQ; vars Y1 Y2; ideal Y1^3, Y2^3");
        let rep = structure_decompose(&q).unwrap();
        assert!(rep.trivial);
        assert_eq!(rep.status, Status::Decomposed);
        assert_eq!(rep.components.unwrap().1.length(), 2);
    }

    #[test]
    fn certificates() {
        let ci = alg("field QQ; vars X1 X2 X3; ideal X1^2, X2^2, X3^2");
        assert_eq!(minimal_generator_count(&ci), 3);
        assert_eq!(certify_indecomposable(&ci), [Certificate::CompleteIntersection]);
        let sum = alg("field QQ; vars Y Z; ideal Y*Z, Y^2 - Z^2");
        assert!(certify_indecomposable(&sum).is_empty());
        let rep = decompose(&ci).unwrap();
        assert_eq!(rep.status, Status::IndecomposableCertified);
    }

    #[test]
    fn hilbert_threshold() {
        // H(2) = 3 stays below C(3,2) + 2 = 5
        let q = alg("field QQ; vars X1 X2 X3; ideal X1^2, X2^2, X3^2");
        assert_eq!(q.hilbert_function(), [1, 3, 3, 1]);
        assert!(!certify_indecomposable(&q).contains(&Certificate::Hilbert2));
    }

    #[test]
    fn mu_counts() {
        assert_eq!(minimal_generator_count(&alg("field QQ; vars Y; ideal Y^3")), 1);
        assert_eq!(minimal_generator_count(&alg("field QQ; vars Y Z; ideal Y*Z, Y^2 - Z^2")), 2);
        assert_eq!(minimal_generator_count(&alg("field QQ; vars Y Z; ideal Y^2, Z^2, Y*Z")), 3);
    }

    #[test]
    fn second_hilbert_bound() {
        let r = alg("field QQ; vars Y; ideal Y^3");
        let s = alg("field QQ; vars Z; ideal Z^3");
        let q = connected_sum(&ConnectedSumSpec::new(r.clone(), s.clone()).unwrap()).unwrap().algebra;
        assert!(h2_bound_check(&r, &s, &q));
    }
}
