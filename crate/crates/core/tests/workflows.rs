use commalg::idealops::{colon, eliminate, intersect, saturate};
use commalg::localstd::{local_dim, LocalDimension};
use commalg::resolutions::{hilbert_data, minimize, resolve_quotient};
use commalg::{run_session, EvalOptions, Field, Ideal, MonomialOrdering, PolyRing, ResultDocument, ResultValue, Ring};
use proptest::prelude::*;

fn ring(field: Field, names: &[&str]) -> Ring {
    PolyRing::new(field, names.iter().copied()).unwrap().into_shared()
}

#[test]
fn implicitization_then_resolution() {
    // eliminate t from a parametrized twisted cubic, then resolve the cone
    let r = ring(Field::Rationals, &["t", "x0", "x1", "x2", "x3"]);
    let i = Ideal::parse(&r, &["x0 - 1", "x1 - t", "x2 - t^2", "x3 - t^3"]).unwrap();
    let e = eliminate(&i, &[0]).unwrap();
    let gb = e.reduced_gb(&MonomialOrdering::DegRevLex).unwrap();
    assert!(gb.elements.iter().all(|p| p.support_vars().iter().all(|&v| v != 0)));

    let p = ring(Field::Rationals, &["x0", "x1", "x2", "x3"]);
    let tc = Ideal::parse(&p, &["x1^2 - x0*x2", "x1*x2 - x0*x3", "x2^2 - x1*x3"]).unwrap();
    let res = minimize(&resolve_quotient(&tc, true).unwrap());
    assert_eq!(res.shape(), "S <- S^3(-2) <- S^2(-3)");
    let h = hilbert_data(&res).unwrap();
    assert_eq!(h.polynomial.to_string(), "3*t + 1");
    assert_eq!(h.arithmetic_genus, 0.into());
}

#[test]
fn colon_and_saturation_agree_with_intersection() {
    let r = ring(Field::Rationals, &["x", "y"]);
    let i = Ideal::parse(&r, &["x"]).unwrap();
    let j = Ideal::parse(&r, &["x", "y"]).unwrap();
    // (x) meet (x,y)^2 has an embedded component at the origin
    let sq = Ideal::parse(&r, &["x^2", "x*y", "y^2"]).unwrap();
    let k = intersect(&i, &sq).unwrap();
    assert!(k.same_ideal(&Ideal::parse(&r, &["x^2", "x*y"]).unwrap()).unwrap());
    assert!(colon(&k, &j).unwrap().same_ideal(&i).unwrap());
    let (s, _) = saturate(&k, &j).unwrap();
    assert!(s.same_ideal(&i).unwrap());
    // the local quotient at the origin is infinite because V(x) passes through it
    assert_eq!(local_dim(&k).unwrap().dimension, LocalDimension::Infinite);
}

#[test]
fn modular_and_rational_bases_match_for_small_examples() {
    let gens = ["x^2 + y*z - 2", "x*y - z^2 + 1", "y^3 - x"];
    let q = ring(Field::Rationals, &["x", "y", "z"]);
    let p = ring(Field::prime(32003).unwrap(), &["x", "y", "z"]);
    let ord = MonomialOrdering::DegRevLex;
    let gq = Ideal::parse(&q, &gens).unwrap().reduced_gb(&ord).unwrap();
    let gp = Ideal::parse(&p, &gens).unwrap().reduced_gb(&ord).unwrap();
    // no denominators divisible by 32003 occur, so the leading monomials agree
    let lead = |g: &commalg::GroebnerBasis| -> Vec<_> {
        g.elements
            .iter()
            .map(|e| e.leading_term(&ord).unwrap().1.clone())
            .collect()
    };
    assert_eq!(lead(&gq), lead(&gp));
}

#[test]
fn session_document_round_trip() {
    let text = "ring R = QQ[x,y,z];
        ideal I = x^2 - y, y^2 - z;
        gb I lex;
        let J = intersect I [x];
        hilbert [x*y, z^2] 3;
        milnor (x^3 + y^3 + z^3) 0:0:0;
        pluecker 3 0 1;";
    let results = run_session(text, EvalOptions::default()).unwrap();
    assert_eq!(results.len(), 5);
    assert_eq!(
        results[3].value,
        ResultValue::Milnor {
            milnor: Some(8),
            tjurina: Some(8)
        }
    );
    let doc = ResultDocument {
        results,
        ..Default::default()
    };
    let back = ResultDocument::from_json(&doc.to_json()).unwrap();
    assert_eq!(back, doc);
    assert_eq!(back.render_text(true), doc.render_text(true));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn milnor_number_of_brieskorn_curves(a in 2u32..7, b in 2u32..7) {
        // x^a + y^b has Milnor number (a-1)(b-1)
        let text = format!("ring R = QQ[x,y]; milnor (x^{a} + y^{b}) 0:0;");
        let r = run_session(&text, EvalOptions::default()).unwrap();
        let mu = Some(u64::from((a - 1) * (b - 1)));
        prop_assert_eq!(&r[0].value, &ResultValue::Milnor { milnor: mu, tjurina: mu });
    }

    #[test]
    fn parallel_sessions_are_deterministic(k in 1usize..6, seed in 0i64..50) {
        let mut text = String::from("ring R = QQ[x,y];\n");
        for i in 0..k {
            text.push_str(&format!("gb [x^{} - {}*y, y^2 - x];\n", i + 2, seed + i as i64));
            text.push_str(&format!("imult (y - x^{}) (y + {}*x^2) 0:0;\n", i + 2, seed + 1));
        }
        let seq = run_session(&text, EvalOptions { jobs: 1 }).unwrap();
        let par = run_session(&text, EvalOptions { jobs: 3 }).unwrap();
        prop_assert_eq!(seq, par);
    }
}
