use proptest::prelude::*;

use super::*;
use crate::field::Field;
use crate::poly::{PolyRing, Ring};

fn ring(names: &[&str]) -> Ring {
    PolyRing::new(Field::Rationals, names.iter().copied())
        .unwrap()
        .into_shared()
}

fn polys(r: &Ring, src: &[&str]) -> Vec<Poly> {
    src.iter().map(|s| r.parse(s).unwrap()).collect()
}

/// The division identity plus conditions (1) and (2), term by term.
fn check_division(f: &Poly, divs: &[Poly], ord: &MonomialOrdering, res: &DivisionResult) {
    let mut sum = res.remainder.clone();
    for (q, d) in res.quotients.iter().zip(divs) {
        sum = &sum + &(q * d);
    }
    assert_eq!(&sum, f, "division identity");
    let leads = leading_monomials(divs, ord);
    for (_, m) in res.remainder.terms() {
        assert!(!leads.iter().any(|l| l.divides(m)), "remainder term divisible");
    }
    for i in 0..divs.len() {
        for (_, m) in res.quotients[i].terms() {
            let t = m.mul(&leads[i]);
            for l in &leads[..i] {
                assert!(!l.divides(&t), "condition (1) violated");
            }
        }
    }
}

#[test]
fn division_examples() {
    let r = ring(&["x", "y"]);
    let lex = MonomialOrdering::Lex;
    let f = r.parse("x^2*y + x*y^2 + y^2").unwrap();
    let divs = polys(&r, &["x*y - 1", "y^2 - 1"]);
    let res = divide_with_remainder(&f, &divs, &lex).unwrap();
    check_division(&f, &divs, &lex, &res);
    assert_eq!(res.quotients, polys(&r, &["x + y", "1"]));
    assert_eq!(res.remainder, r.parse("x + y + 1").unwrap());

    let res = divide_with_remainder(&f, std::slice::from_ref(&f), &lex).unwrap();
    assert_eq!(res.quotients, vec![r.one()]);
    assert!(res.remainder.is_zero());

    let res = divide_with_remainder(&r.one(), &polys(&r, &["x"]), &lex).unwrap();
    assert_eq!(res.quotients, vec![r.zero()]);
    assert_eq!(res.remainder, r.one());
}

#[test]
fn division_rejects_bad_input() {
    let r = ring(&["x", "y"]);
    let f = r.parse("x").unwrap();
    assert_eq!(
        divide_with_remainder(&f, &[r.zero()], &MonomialOrdering::Lex),
        Err(Error::ZeroInput("divisor"))
    );
    assert_eq!(
        divide_with_remainder(&f, std::slice::from_ref(&f), &MonomialOrdering::neg_degrevlex(2)),
        Err(Error::NotGlobal)
    );
}

#[test]
fn twisted_cubic_basis() {
    let r = ring(&["x1", "x2", "x3"]);
    let gens = polys(&r, &["x2 - x1^2", "x3 - x1*x2"]);
    let ord = MonomialOrdering::DegRevLex;
    let gb = buchberger(&gens, &ord).unwrap();
    assert!(is_groebner_basis(&gb.elements, &ord));
    for g in &gens {
        assert!(divide_with_remainder(g, &gb.elements, &ord)
            .unwrap()
            .remainder
            .is_zero());
    }
    let red = reduce_gb(&gb);
    let mut want = polys(&r, &["x1^2 - x2", "x1*x2 - x3", "x2^2 - x1*x3"]);
    want.sort_by(|a, b| ord.cmp(b.leading_term(&ord).unwrap().1, a.leading_term(&ord).unwrap().1));
    assert_eq!(red.elements, want);
}

fn ellipsoid(r: &Ring) -> Ideal {
    Ideal::parse(r, &["x^2 + y^2 + 2*z^2 - 8", "x^2 - y^2 - z^2 + 1", "x - y + z"]).unwrap()
}

#[test]
fn ellipsoid_lex_basis() {
    let r = ring(&["x", "y", "z"]);
    let i = ellipsoid(&r);
    let red = i.reduced_gb(&MonomialOrdering::Lex).unwrap();
    assert_eq!(
        red.elements,
        polys(&r, &["x + 3*z^3 - 8*z", "y + 3*z^3 - 9*z", "z^4 - 3*z^2 + 1/6"])
    );
    assert_eq!(i.standard_monomials(&MonomialOrdering::Lex).unwrap().len(), 4);
}

#[test]
fn ellipsoid_normal_form() {
    let r = ring(&["x", "y", "z"]);
    let i = ellipsoid(&r);
    let f = r.parse("x^2 + y^2 + z^2").unwrap();
    let nf = i.normal_form(&f, &MonomialOrdering::Lex).unwrap();

    // substitute the triangular solution and reduce by the quartic by hand
    let x = r.parse("-3*z^3 + 8*z").unwrap();
    let y = r.parse("-3*z^3 + 9*z").unwrap();
    let z = r.parse("z").unwrap();
    let mut g = f.substitute(&[x, y, z]).unwrap();
    let quartic = r.parse("z^4 - 3*z^2 + 1/6").unwrap();
    loop {
        let Some((c, m)) = g.terms().first().cloned() else {
            break;
        };
        if m.exponents()[2] < 4 {
            break;
        }
        let mut shift = m.clone();
        shift.exponents_mut()[2] -= 4;
        g = &g - &quartic.mul_term(&c, &shift);
    }
    assert_eq!(nf, g);
    assert_eq!(nf, r.parse("-z^2 + 8").unwrap());
}

#[test]
fn reduced_basis_examples() {
    let r = ring(&["x", "y"]);
    let gens = polys(&r, &["x^2", "x^2 + y"]);
    let red = reduce_gb(&buchberger(&gens, &MonomialOrdering::DegRevLex).unwrap());
    assert_eq!(red.elements, polys(&r, &["x^2", "y"]));
    assert!(red.reduced);
    assert_eq!(reduce_gb(&red), red);
}

#[test]
fn staircases() {
    let r = ring(&["x", "y"]);
    let i = Ideal::parse(&r, &["y^2", "x^3"]).unwrap();
    let st = i.standard_monomials(&MonomialOrdering::DegRevLex).unwrap();
    let want: Vec<Monomial> = [[0, 0], [1, 0], [0, 1], [2, 0], [1, 1], [2, 1]]
        .iter()
        .map(|e| Monomial::from_exponents(e))
        .collect();
    assert_eq!(st.len(), 6);
    for m in &want {
        assert!(st.contains(m));
    }
    let j = Ideal::parse(&r, &["x"]).unwrap();
    assert_eq!(
        j.standard_monomials(&MonomialOrdering::DegRevLex),
        Err(Error::InfiniteStaircase)
    );
    assert!(Ideal::unit(r.clone())
        .standard_monomials(&MonomialOrdering::Lex)
        .unwrap()
        .is_empty());
}

#[test]
fn triviality() {
    let r = ring(&["x", "y"]);
    assert!(Ideal::parse(&r, &["x", "x + 1"]).unwrap().is_one().unwrap());
    assert!(!Ideal::parse(&r, &["x"]).unwrap().is_one().unwrap());
    // the forced point (3, 0) is not on the circle
    let i = Ideal::parse(&r, &["x^2 + y^2 - 1", "x - 3", "y"]).unwrap();
    let circle = r.parse("x^2 + y^2 - 1").unwrap();
    let at = circle.evaluate(&[r.field().from_i64(3), r.field().zero()]).unwrap();
    assert!(!at.is_zero());
    assert!(i.is_one().unwrap());
    assert!(i.default_gb().unwrap().elements.iter().any(|g| g == &r.one()));
}

#[test]
fn module_basis_of_koszul_input() {
    let r = ring(&["x", "y"]);
    let ord = ModuleOrdering::PositionOverTerm(MonomialOrdering::DegRevLex);
    let gens: Vec<FreeModElem> = ["x", "y"]
        .iter()
        .map(|s| FreeModElem::new(vec![r.parse(s).unwrap()]).unwrap())
        .collect();
    let gb = module_buchberger(&gens, &ord).unwrap();
    assert_eq!(gb.elements, gens);
    assert!(satisfies_buchberger_criterion(&gb.elements, &ord));
}

#[test]
fn module_division_in_two_components() {
    let r = ring(&["x", "y"]);
    let ord = ModuleOrdering::PositionOverTerm(MonomialOrdering::DegRevLex);
    let v = |a: &str, b: &str| FreeModElem::new(vec![r.parse(a).unwrap(), r.parse(b).unwrap()]).unwrap();
    let divs = vec![v("x", "y"), v("0", "x")];
    let f = v("x^2 + y", "x*y + y^2");
    let res = divide_vec(&f, &divs, &ord).unwrap();
    let mut sum = res.remainder.clone();
    for (q, d) in res.quotients.iter().zip(&divs) {
        sum = sum.checked_add(&d.mul_poly(q).unwrap()).unwrap();
    }
    assert_eq!(sum, f);
    assert_eq!(res.remainder, v("y", "y^2"));
    assert_eq!(res.quotients, polys(&r, &["x", "0"]));
}

#[test]
fn gb_cache_is_reused() {
    let r = ring(&["x", "y"]);
    let i = Ideal::parse(&r, &["x^2 - y", "x*y - 1"]).unwrap();
    let a = i.groebner_basis(&MonomialOrdering::Lex).unwrap();
    let b = i.groebner_basis(&MonomialOrdering::Lex).unwrap();
    assert!(Arc::ptr_eq(&a, &b));
    assert_eq!(i.cached_orderings(), vec![MonomialOrdering::Lex]);
}

fn arb_poly(nvars: usize, maxdeg: u32) -> impl Strategy<Value = Poly> {
    prop::collection::vec((-5i64..=5, prop::collection::vec(0..=maxdeg, nvars)), 1..4).prop_map(move |ts| {
        let f = Field::Rationals;
        Poly::from_terms(
            f,
            nvars,
            ts.into_iter()
                .map(|(c, e)| (f.from_i64(c), Monomial::from_exponents(&e)))
                .collect(),
        )
    })
}

fn arb_ordering() -> impl Strategy<Value = MonomialOrdering> {
    prop_oneof![Just(MonomialOrdering::Lex), Just(MonomialOrdering::DegRevLex)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn division_identity_and_conditions(f in arb_poly(3, 3), divs in prop::collection::vec(arb_poly(3, 2), 1..4), ord in arb_ordering()) {
        let divs: Vec<Poly> = divs.into_iter().filter(|d| !d.is_zero()).collect();
        prop_assume!(!divs.is_empty());
        let res = divide_with_remainder(&f, &divs, &ord).unwrap();
        check_division(&f, &divs, &ord, &res);
    }

    #[test]
    fn groebner_bases_are_sound(gens in prop::collection::vec(arb_poly(3, 2), 1..4), ord in arb_ordering()) {
        let gb = buchberger(&gens, &ord).unwrap();
        prop_assert!(is_groebner_basis(&gb.elements, &ord));
        for g in gens.iter().filter(|g| !g.is_zero()) {
            prop_assert!(divide_with_remainder(g, &gb.elements, &ord).unwrap().remainder.is_zero());
        }
    }

    #[test]
    fn reduced_basis_is_canonical(gens in prop::collection::vec(arb_poly(3, 2), 1..4), seed in 0usize..24, scale in 1i64..5) {
        let ord = MonomialOrdering::DegRevLex;
        let a = reduce_gb(&buchberger(&gens, &ord).unwrap());
        let mut perm = gens.clone();
        let n = perm.len();
        perm.rotate_left(seed % n);
        if n > 1 { perm.swap(0, seed % n); }
        let c = Field::Rationals.from_i64(scale);
        let perm: Vec<Poly> = perm.iter().map(|p| p.scale(&c)).collect();
        let b = reduce_gb(&buchberger(&perm, &ord).unwrap());
        prop_assert_eq!(a, b);
    }
}
