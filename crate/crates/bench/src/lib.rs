//! Benchmark fixtures shared by the criterion benches and their tests.

use commalg::planecurves::PlaneCurve;
use commalg::{Coeff, Field, Ideal, Poly, PolyRing, Ring};

fn ring(field: Field, names: &[&str]) -> Ring {
    PolyRing::new(field, names.iter().copied())
        .expect("valid ring")
        .into_shared()
}

/// The cyclic n-roots system.
pub fn cyclic(n: usize) -> Ideal {
    let names: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
    let r = PolyRing::new(Field::Rationals, names.clone())
        .expect("valid ring")
        .into_shared();
    let mut gens = Vec::new();
    for k in 1..n {
        let terms: Vec<String> = (0..n)
            .map(|i| (0..k).map(|j| names[(i + j) % n].clone()).collect::<Vec<_>>().join("*"))
            .collect();
        gens.push(terms.join(" + "));
    }
    gens.push(format!("{} - 1", names.join("*")));
    let refs: Vec<&str> = gens.iter().map(String::as_str).collect();
    Ideal::parse(&r, &refs).expect("valid generators")
}

/// Ellipsoid, hyperboloid and plane.
pub fn distances() -> Ideal {
    let r = ring(Field::Rationals, &["x", "y", "z"]);
    Ideal::parse(&r, &["x^2+y^2+2*z^2-8", "x^2-y^2-z^2+1", "x-y+z"]).expect("valid generators")
}

/// Five general points in P^3.
pub fn five_points() -> Ideal {
    let r = ring(Field::Rationals, &["w", "x", "y", "z"]);
    Ideal::parse(&r, &["w^2 - x*z", "w*x - y*z", "x^2 - w*y", "x*y - z^2", "y^2 - w*z"]).expect("valid generators")
}

/// `x^a + y^b + z^(3c) + x^(c+2) y^(c-1) + x^(c-1) y^(c-1) z^3 + x^(c-2) y^c (y^2 + t x)^2`
/// over GF(32003).
pub fn milnor_family(a: u32, b: u32, c: u32, t: i64) -> (Poly, Vec<Coeff>) {
    let field = Field::prime(32003).expect("prime");
    let r = ring(field, &["x", "y", "z"]);
    let text = format!(
        "x^{a} + y^{b} + z^{} + x^{}*y^{} + x^{}*y^{}*z^3 + x^{}*y^{c}*(y^2 + {t}*x)^2",
        3 * c,
        c + 2,
        c - 1,
        c - 1,
        c - 1,
        c - 2
    );
    (r.parse(&text).expect("valid polynomial"), vec![field.from_i64(0); 3])
}

/// The Klein quartic.
pub fn klein_quartic() -> PlaneCurve {
    let r = ring(Field::Rationals, &["x", "y", "z"]);
    PlaneCurve::new(r.clone(), r.parse("x^3*y + y^3*z + z^3*x").expect("valid polynomial")).expect("plane curve")
}

/// A session with `n` independent Groebner basis commands.
pub fn session_text(n: usize) -> String {
    let mut s = String::from("ring R = QQ[x,y,z];\n");
    for i in 0..n {
        s.push_str(&format!("gb [x^2 - {}*y*z, y^2 - x + {i}, z^2 - x*y] lex;\n", i + 1));
    }
    s
}
