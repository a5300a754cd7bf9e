mod common;

use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use artinsum::decompose::{
    certify_indecomposable, check_split, h2_bound_check, split_witness, structure_decompose, Certificate, Status,
};
use artinsum::graded::{associated_graded, classify, iarrobino, is_gls};
use artinsum::grobner::{contract, contract_by_names, IdealPresentation};
use artinsum::polycore::parse_presentation;
use artinsum::quotient::{build_algebra, ArtinAlgebra};
use artinsum::resolution::{
    betti_numbers, inverse_poincare, verify_cs_series, verify_fp_series, verify_mu_formulas, verify_socle_quotient,
    SeriesTrunc,
};
use artinsum::sums::{apolar_algebra, connected_sum, fibre_product, ConnectedSumSpec, DualPolynomial};
use artinsum::PolyRing;

use common::*;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn qq(text: &str) -> ArtinAlgebra {
    alg(&format!("field QQ; {text}"))
}

fn elimination() -> Outcome {
    let pres = parse_presentation("field QQ; vars Y1 Z1 Z2; ideal Y1*Z1 - Z2^2, Y1^2, Z1^2;").map_err(|e| e.to_string())?;
    let c = contract_by_names(&IdealPresentation::from_presentation(&pres), &["Z1", "Z2"]).map_err(|e| e.to_string())?;
    let got: Vec<String> = c.reduced_basis().map_err(|e| e.to_string())?.iter().map(ToString::to_string).collect();
    ensure(got == ["Z2^4", "Z1*Z2^2", "Z1^2"], || format!("got {got:?}"))?;
    Ok(format!("<{}>", got.join(", ")))
}

fn additivity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let pairs = gorenstein_pairs(&mut rng, 100);
    for (k, (r, s)) in pairs.iter().enumerate() {
        let p = fibre_product(r, s).map_err(|e| e.to_string())?.algebra;
        ensure(p.length() + 1 == r.length() + s.length(), || format!("pair {k}: fibre length"))?;
        ensure(p.embedding_dimension() == r.embedding_dimension() + s.embedding_dimension(), || {
            format!("pair {k}: fibre edim")
        })?;
        ensure(p.socle_type() == r.socle_type() + s.socle_type(), || format!("pair {k}: fibre type"))?;
        let q = connected_sum(&ConnectedSumSpec::new(r.clone(), s.clone()).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?
            .algebra;
        ensure(q.length() + 2 == r.length() + s.length(), || format!("pair {k}: sum length"))?;
        ensure(q.embedding_dimension() == r.embedding_dimension() + s.embedding_dimension(), || {
            format!("pair {k}: sum edim")
        })?;
    }
    Ok(format!("{} pairs", pairs.len()))
}

fn round_trip() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let pairs = gorenstein_pairs(&mut rng, 100);
    for (k, (r, s)) in pairs.iter().enumerate() {
        let u = random_scalar(&mut rng, true);
        let q = connected_sum(&ConnectedSumSpec::new(r.clone(), s.clone()).map_err(|e| e.to_string())?.with_unit(u))
            .map_err(|e| e.to_string())?
            .algebra;
        let y: Vec<usize> = (0..r.nvars()).collect();
        let z: Vec<usize> = (r.nvars()..q.nvars()).collect();
        let c = check_split(&q, &y, &z).map_err(|e| format!("pair {k}: {e}"))?;
        ensure(c.ok, || format!("pair {k}: {:?}", c.reasons))?;
        ensure(c.r.reduced_basis() == r.reduced_basis(), || format!("pair {k}: I_R differs"))?;
        ensure(c.s.reduced_basis() == s.reduced_basis(), || format!("pair {k}: I_S differs"))?;
    }
    Ok(format!("{} sums split back", pairs.len()))
}

fn structure_pipeline() -> Outcome {
    let mut cases = vec![("stretched <YZ, Z^2 - Y^3>".to_string(), qq("vars Y Z; ideal Y*Z, Z^2 - Y^3;"))];
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    cases.extend(structure_instances(&mut rng, 25).into_iter().map(|i| (i.label, i.q)));
    for (label, q) in &cases {
        let rep = structure_decompose(q).map_err(|e| format!("{label}: {e}"))?;
        ensure(rep.status == Status::Decomposed, || format!("{label}: {} {:?}", rep.status.as_str(), rep.reasons))?;
        let (_, s) = rep.components.as_ref().unwrap();
        ensure(s.loewy_length() == 2, || format!("{label}: ll(S) = {}", s.loewy_length()))?;
        for id in &rep.identities {
            ensure(id.holds, || format!("{label}: {} fails", id.name))?;
        }
        ensure(rep.identities.iter().any(|i| i.name.starts_with("gr(R)")), || format!("{label}: gr(R) unchecked"))?;
    }
    Ok(format!("{} instances decomposed", cases.len()))
}

fn poincare() -> Outcome {
    const N: usize = 6;
    let cubic = qq("vars Y; ideal Y^3;");
    let square = qq("vars Y Z; ideal Y^2, Z^2, Y*Z;");
    let ci = qq("vars Y Z; ideal Y*Z, Y^2 - Z^2;");
    let b = betti_numbers(&cubic, N).map_err(|e| e.to_string())?.betti;
    ensure(b == vec![1; N + 1], || format!("k[Y]/Y^3: {b:?}"))?;
    let b = betti_numbers(&square, N).map_err(|e| e.to_string())?.betti;
    ensure(b == (0..=N).map(|i| 1 << i).collect::<Vec<_>>(), || format!("m^2 = 0: {b:?}"))?;
    let b = betti_numbers(&ci, N).map_err(|e| e.to_string())?.betti;
    ensure(b == (0..=N).map(|i| i + 1).collect::<Vec<_>>(), || format!("complete intersection: {b:?}"))?;
    let inv = inverse_poincare(&ci, N).map_err(|e| e.to_string())?;
    ensure(inv == SeriesTrunc::from_ints([1, -2, 1], N), || format!("1/P = {inv}"))?;

    // (R, S, truncation) for the fibre and connected-sum identities
    let y3 = alg("field GF(101); vars Y; ideal Y^3;");
    let z3 = alg("field GF(101); vars Z; ideal Z^3;");
    let z4 = alg("field GF(101); vars Z; ideal Z^4;");
    let y2 = alg("field GF(101); vars Y1 Y2; ideal Y1*Y2, Y1^2 - Y2^2;");
    let z2 = alg("field GF(101); vars Z1 Z2; ideal Z1*Z2, Z1^2 - Z2^2;");
    let yc = alg("field GF(101); vars Y1 Y2; ideal Y1*Y2, Y1^3 - Y2^3;");
    let pairs = [(&y3, &z3, N), (&y3, &z4, N), (&y2, &z3, N), (&yc, &z4, N), (&y2, &z2, N)];
    let mut checked = 0;
    for (r, s, n) in pairs {
        let p = fibre_product(r, s).map_err(|e| e.to_string())?.algebra;
        ensure(verify_fp_series(r, s, &p, n).map_err(|e| e.to_string())?, || {
            format!("fibre identity fails for {:?} x {:?}", r.reduced_basis(), s.reduced_basis())
        })?;
        let q = connected_sum(&ConnectedSumSpec::new(r.clone(), s.clone()).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?
            .algebra;
        let cs = verify_cs_series(r, s, &q, n).map_err(|e| e.to_string())?;
        ensure(cs.holds, || format!("connected-sum identity: phi = {}, expected {}", cs.phi, cs.expected_phi))?;
        if q.embedding_dimension() >= 2 {
            ensure(verify_socle_quotient(&q, n).map_err(|e| e.to_string())?, || "socle quotient of Q".into())?;
        }
        checked += 1;
    }
    for t in [&y2, &yc, &ci] {
        ensure(verify_socle_quotient(t, N).map_err(|e| e.to_string())?, || "socle quotient".into())?;
    }
    Ok(format!("3 Betti examples, {checked} sum pairs mod t^{}", N + 1))
}

fn mu_formulas() -> Outcome {
    let cases = [
        ("m=n=1", "vars Y; ideal Y^3;", "vars Z; ideal Z^4;"),
        ("m=2,n=1", "vars Y1 Y2; ideal Y1*Y2, Y1^2 - Y2^2;", "vars Z; ideal Z^3;"),
        ("m=n=2", "vars Y1 Y2; ideal Y1*Y2, Y1^2 - Y2^2;", "vars Z1 Z2; ideal Z1*Z2, Z1^3 - Z2^3;"),
    ];
    let mut psis = Vec::new();
    for (label, r, s) in cases {
        let rep = verify_mu_formulas(&qq(r), &qq(s)).map_err(|e| format!("{label}: {e}"))?;
        ensure(rep.fibre_holds && rep.connected_holds && rep.direct_agrees, || format!("{label}: {rep:?}"))?;
        psis.push(format!("{label} psi={}", rep.psi));
    }
    Ok(psis.join(", "))
}

fn certificates() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut sums = 0;
    for (r, s) in gorenstein_pairs(&mut rng, 100) {
        let q = connected_sum(&ConnectedSumSpec::new(r.clone(), s.clone()).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?
            .algebra;
        ensure(h2_bound_check(&r, &s, &q), || format!("H(2) bound fails on {:?}", q.reduced_basis()))?;
        let c = certify_indecomposable(&q);
        ensure(c.is_empty(), || format!("{c:?} fired on {:?}", q.reduced_basis()))?;
        sums += 1;
    }
    for inst in structure_instances(&mut rng, 25) {
        ensure(h2_bound_check(&inst.r, &inst.s, &inst.q), || format!("{}: H(2) bound", inst.label))?;
        ensure(certify_indecomposable(&inst.q).is_empty(), || format!("{}: certificate fired", inst.label))?;
        sums += 1;
    }

    let ci = alg("field GF(101); vars X1 X2 X3; ideal X1^2, X2^2, X3^2;");
    let c = certify_indecomposable(&ci);
    ensure(c.contains(&Certificate::CompleteIntersection), || format!("<X1^2,X2^2,X3^2>: {c:?}"))?;

    let ring = PolyRing::new(gf(), names("u", 3));
    let quartic = apolar_algebra(&DualPolynomial::new(random_form(&mut rng, &ring, 4)).map_err(|e| e.to_string())?)
        .map_err(|e| e.to_string())?;
    let h = quartic.hilbert_function();
    ensure(h == [1, 3, 6, 3, 1], || format!("generic quartic H = {h:?}"))?;
    let c = certify_indecomposable(&quartic);
    ensure(c.contains(&Certificate::Compressed), || format!("generic quartic: {c:?}"))?;
    Ok(format!("{sums} sums silent, both positives fire"))
}

fn iarrobino_values() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut cases = vec![("stretched example".to_string(), qq("vars Y Z; ideal Y*Z, Z^2 - Y^3;"))];
    cases.extend(structure_instances(&mut rng, 25).into_iter().map(|i| (i.label, i.q)));
    for (label, q) in &cases {
        let h = q.hilbert_function();
        let c = classify(q).map_err(|e| e.to_string())?;
        let q0 = iarrobino(q).map_err(|e| format!("{label}: {e}"))?.q0;
        let h0 = q0.hilbert_function();
        ensure(q0.algebra().socle_type() == 1, || format!("{label}: Q0 has type {}", q0.algebra().socle_type()))?;
        if c.stretched {
            ensure(h0 == vec![1; h.len()], || format!("{label}: H(Q0) = {h0:?}"))?;
        } else if c.short {
            ensure(h0 == [1, h[2], h[2], 1], || format!("{label}: H(Q0) = {h0:?}"))?;
        } else {
            return Err(format!("{label}: neither stretched nor short"));
        }
    }
    Ok(format!("{} inputs", cases.len()))
}

fn square_annihilator() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut cases = vec![("stretched example".to_string(), qq("vars Y Z; ideal Y*Z, Z^2 - Y^3;"))];
    cases.extend(structure_instances(&mut rng, 25).into_iter().map(|i| (i.label, i.q)));
    let mut pairs = gorenstein_pairs(&mut rng, 100);
    for (r, s) in pairs.drain(..) {
        let q = connected_sum(&ConnectedSumSpec::new(r, s).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?
            .algebra;
        cases.push(("random sum".into(), q));
    }
    let mut checked = 0;
    for (label, q) in &cases {
        let s = q.loewy_length();
        if s < 3 {
            continue;
        }
        let g = associated_graded(q).map_err(|e| e.to_string())?;
        if g.algebra().is_gorenstein() || !is_gls(&g).map_err(|e| e.to_string())?.gls {
            continue;
        }
        let w = q.colon(&q.power(2));
        let top = q.power(s - 1);
        ensure(w.intersect(&q.power(2)) == top, || format!("{label}: (0:m^2) meets m^2 beyond m^(s-1)"))?;
        ensure(w.dim() - top.dim() == g.algebra().socle_type() - 1, || format!("{label}: dim (0:m^2)/m^(s-1)"))?;
        let soc = q.socle();
        let witness = split_witness(q).map_err(|e| format!("{label}: {e}"))?.ok_or(format!("{label}: no witness"))?;
        for z in &witness.z_elements {
            ensure(q.mul_by_max(&q.span([z.clone()])) == soc, || format!("{label}: w*m differs from soc"))?;
        }
        checked += 1;
    }
    ensure(checked >= 26, || format!("only {checked} instances qualified"))?;
    Ok(format!("{checked} instances"))
}

fn contraction_of_fibre_products() -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for (r, s) in gorenstein_pairs(&mut rng, 10) {
        let p = fibre_product(&r, &s).map_err(|e| e.to_string())?.algebra;
        let y: Vec<usize> = (0..r.nvars()).collect();
        let back = build_algebra(&contract(p.ideal(), &y).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        ensure(back == r, || "fibre product contraction".into())?;
    }
    Ok(())
}

fn main() {
    let criteria: Vec<(usize, &str, u64, fn() -> Outcome)> = vec![
        (1, "elimination golden test", 1, elimination),
        (2, "additivity suite", 30, additivity),
        (3, "round-trip decomposition", 30, round_trip),
        (4, "structure pipeline", 10, structure_pipeline),
        (5, "Poincare identities", 60, poincare),
        (6, "mu formulas", 60, mu_formulas),
        (7, "Hilbert bound and certificates", 60, certificates),
        (8, "Iarrobino quotients", 60, iarrobino_values),
        (9, "square annihilator suite", 60, square_annihilator),
    ];
    let mut failed = 0;
    for (k, name, limit, f) in criteria {
        let start = Instant::now();
        let outcome = f();
        let elapsed = start.elapsed();
        let within = elapsed <= Duration::from_secs(limit);
        let (verdict, detail) = match &outcome {
            Ok(d) if within => ("PASS", d.clone()),
            Ok(d) => ("FAIL", format!("{d}; over time limit")),
            Err(e) => ("FAIL", e.clone()),
        };
        if verdict == "FAIL" {
            failed += 1;
        }
        println!("criterion {k} {verdict} {name}: {detail} [{:.2}s / {limit}s]", elapsed.as_secs_f64());
    }
    if let Err(e) = contraction_of_fibre_products() {
        println!("fibre product contraction FAIL: {e}");
        failed += 1;
    }
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
