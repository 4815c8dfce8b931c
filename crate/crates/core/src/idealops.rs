//! Intersections, colon ideals, saturation, elimination, dimension and
//! projective closure.

use crate::error::{Error, Result};
use crate::gbasis::{divide_with_remainder, leading_monomials, Ideal};
use crate::modsyz::syzygy_matrix;
use crate::poly::{monomial::minimalize, Monomial, MonomialOrdering, Poly, PolyMatrix, PolyRing, Ring};

fn same_ring(i: &Ideal, j: &Ideal) -> Result<()> {
    if i.ring() != j.ring() {
        return Err(Error::RingMismatch);
    }
    Ok(())
}

/// `I ∩ J`, read off the first row of the syzygies of
/// `[[1, f_1..f_r, 0..0], [1, 0..0, g_1..g_s]]`.
pub fn intersect(i: &Ideal, j: &Ideal) -> Result<Ideal> {
    same_ring(i, j)?;
    let ring = i.ring().clone();
    if i.is_zero() || j.is_zero() {
        return Ok(Ideal::zero(ring));
    }
    let (r, s) = (i.gens().len(), j.gens().len());
    let zero = ring.zero();
    let mut top = vec![ring.one()];
    top.extend(i.gens().iter().cloned());
    top.extend(std::iter::repeat_n(zero.clone(), s));
    let mut bottom = vec![ring.one()];
    bottom.extend(std::iter::repeat_n(zero, r));
    bottom.extend(j.gens().iter().cloned());
    let a = PolyMatrix::from_rows(ring.field(), ring.nvars(), vec![top, bottom])?;
    let syz = syzygy_matrix(&a, &MonomialOrdering::DegRevLex)?;
    Ideal::new(ring, syz.row(0))
}

/// Exact quotient `f / g`; fails if `g` does not divide `f`.
pub fn exact_div(f: &Poly, g: &Poly) -> Result<Poly> {
    let res = divide_with_remainder(f, std::slice::from_ref(g), &MonomialOrdering::DegRevLex)?;
    if !res.remainder.is_zero() {
        return Err(Error::InvalidArgument("inexact division".into()));
    }
    Ok(res.quotients.into_iter().next().expect("one divisor"))
}

/// `I : J = ∩_g (1/g) (I ∩ (g))` over the generators `g` of `J`.
pub fn colon(i: &Ideal, j: &Ideal) -> Result<Ideal> {
    same_ring(i, j)?;
    if j.is_zero() {
        return Err(Error::ZeroInput("colon by the zero ideal"));
    }
    let ring = i.ring().clone();
    let mut acc: Option<Ideal> = None;
    for g in j.gens() {
        let principal = Ideal::new(ring.clone(), vec![g.clone()])?;
        let cap = intersect(i, &principal)?;
        let part = Ideal::new(
            ring.clone(),
            cap.gens().iter().map(|f| exact_div(f, g)).collect::<Result<_>>()?,
        )?;
        acc = Some(match acc {
            None => part,
            Some(prev) => intersect(&prev, &part)?,
        });
    }
    Ok(acc.expect("J has a generator"))
}

/// `I : J^∞` together with the number `m` of colon steps that changed the
/// ideal, so that `I : J^∞ = I : J^m`.
pub fn saturate(i: &Ideal, j: &Ideal) -> Result<(Ideal, u32)> {
    same_ring(i, j)?;
    if j.is_zero() {
        return Err(Error::ZeroInput("saturation by the zero ideal"));
    }
    let maxdeg = i
        .gens()
        .iter()
        .chain(j.gens())
        .filter_map(Poly::total_degree)
        .max()
        .unwrap_or(0);
    let bound = 1 + maxdeg * (i.gens().len() + j.gens().len()) as u64;
    let mut cur = i.clone();
    let mut steps = 0u32;
    loop {
        let next = colon(&cur, j)?;
        if next.is_subset_of(&cur)? {
            return Ok((cur, steps));
        }
        cur = next;
        steps += 1;
        if steps as u64 > bound {
            return Err(Error::NoConvergence(format!("saturation after {bound} steps")));
        }
    }
}

/// `I ∩ k[remaining variables]`, via a block ordering with the eliminated
/// variables in a leading degrevlex block.
pub fn eliminate(i: &Ideal, vars: &[usize]) -> Result<Ideal> {
    let ring = i.ring().clone();
    let n = ring.nvars();
    if let Some(&v) = vars.iter().find(|&&v| v >= n) {
        return Err(Error::InvalidArgument(format!("no variable with index {v}")));
    }
    let mut elim: Vec<usize> = vars.to_vec();
    elim.sort_unstable();
    elim.dedup();
    if elim.is_empty() {
        return Ok(i.clone());
    }
    if elim.len() == n {
        return Err(Error::InvalidArgument("cannot eliminate every variable".into()));
    }
    let rest: Vec<usize> = (0..n).filter(|v| !elim.contains(v)).collect();
    // perm[old] = new position
    let mut perm = vec![0; n];
    for (pos, &v) in elim.iter().chain(&rest).enumerate() {
        perm[v] = pos;
    }
    let mut inverse = vec![0; n];
    for (old, &new) in perm.iter().enumerate() {
        inverse[new] = old;
    }
    let k = elim.len();
    let ord = MonomialOrdering::block2(MonomialOrdering::DegRevLex, MonomialOrdering::DegRevLex, k, n);
    let permuted: Vec<Poly> = i.gens().iter().map(|g| g.permute_vars(&perm, n)).collect();
    let gb = crate::gbasis::buchberger(&permuted, &ord)?;
    let gens = gb
        .elements
        .iter()
        .filter(|g| {
            g.terms()
                .iter()
                .all(|(_, m)| m.exponents()[..k].iter().all(|&e| e == 0))
        })
        .map(|g| g.permute_vars(&inverse, n))
        .collect();
    Ideal::new(ring, gens)
}

/// Indices of variables by name.
pub fn var_indices(ring: &PolyRing, names: &[&str]) -> Result<Vec<usize>> {
    names
        .iter()
        .map(|s| {
            ring.var_index(s)
                .ok_or_else(|| Error::InvalidArgument(format!("unknown variable {s}")))
        })
        .collect()
}

/// Largest set of variables containing the support of no minimal
/// generator.
fn max_independent_set(leads: &[Monomial], n: usize) -> usize {
    let supports: Vec<u64> = leads
        .iter()
        .map(|m| m.support().fold(0u64, |acc, i| acc | 1 << i))
        .collect();
    fn rec(i: usize, n: usize, chosen: u64, size: usize, supports: &[u64], best: &mut usize) {
        if size + (n - i) <= *best {
            return;
        }
        if i == n {
            *best = size;
            return;
        }
        let with = chosen | 1 << i;
        if !supports.iter().any(|&s| s & !with == 0) {
            rec(i + 1, n, with, size + 1, supports, best);
        }
        rec(i + 1, n, chosen, size, supports, best);
    }
    let mut best = 0;
    rec(0, n, 0, 0, supports.as_slice(), &mut best);
    best
}

/// Krull dimension of `V(I)`: `-1` for the unit ideal.
pub fn affine_dim(i: &Ideal) -> Result<i64> {
    let n = i.ring().nvars();
    if n > 64 {
        return Err(Error::InvalidArgument("dimension is limited to 64 variables".into()));
    }
    if i.is_zero() {
        return Ok(n as i64);
    }
    let ord = MonomialOrdering::DegRevLex;
    let gb = i.groebner_basis(&ord)?;
    let leads = minimalize(leading_monomials(&gb.elements, &ord));
    if leads.iter().any(Monomial::is_one) {
        return Ok(-1);
    }
    Ok(max_independent_set(&leads, n) as i64)
}

fn homogenizing_name(ring: &PolyRing) -> String {
    if ring.var_index("x0").is_none() {
        "x0".into()
    } else {
        ring.fresh_name("h")
    }
}

/// Homogenizes each generator with a new first variable (no Groebner
/// basis involved).
pub fn homogenize_generators(i: &Ideal) -> Result<Ideal> {
    let ring = i.ring();
    let big: Ring = ring.insert_var(0, &homogenizing_name(ring))?.into_shared();
    Ideal::new(big, i.gens().iter().map(|g| g.homogenize(0)).collect())
}

/// Homogenizes the elements of a degrevlex Groebner basis with a new first
/// variable (`x0` when free).
pub fn projective_closure(i: &Ideal) -> Result<Ideal> {
    let ring = i.ring();
    let big: Ring = ring.insert_var(0, &homogenizing_name(ring))?.into_shared();
    let gb = i.reduced_gb(&MonomialOrdering::DegRevLex)?;
    Ideal::new(big, gb.elements.iter().map(|g| g.homogenize(0)).collect())
}

/// `I + J`.
pub fn sum(i: &Ideal, j: &Ideal) -> Result<Ideal> {
    same_ring(i, j)?;
    Ideal::new(i.ring().clone(), i.gens().iter().chain(j.gens()).cloned().collect())
}

/// `I · J`, generated by pairwise products.
pub fn product(i: &Ideal, j: &Ideal) -> Result<Ideal> {
    same_ring(i, j)?;
    let mut gens = Vec::with_capacity(i.gens().len() * j.gens().len());
    for f in i.gens() {
        for g in j.gens() {
            gens.push(f.checked_mul(g)?);
        }
    }
    Ideal::new(i.ring().clone(), gens)
}

/// `I^n`; `I^0` is the unit ideal.
pub fn power(i: &Ideal, n: u32) -> Result<Ideal> {
    let mut acc = Ideal::unit(i.ring().clone());
    for _ in 0..n {
        let next = product(&acc, i)?;
        let gb = next.reduced_gb(&MonomialOrdering::DegRevLex)?;
        acc = Ideal::new(i.ring().clone(), gb.elements)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::gbasis::reduce_gb;
    use proptest::prelude::*;

    fn ring(names: &[&str]) -> Ring {
        PolyRing::new(Field::Rationals, names.iter().copied())
            .unwrap()
            .into_shared()
    }

    fn reduced(i: &Ideal) -> Vec<String> {
        let mut v: Vec<String> = i
            .reduced_gb(&MonomialOrdering::DegRevLex)
            .unwrap()
            .elements
            .iter()
            .map(|p| i.ring().format(p))
            .collect();
        v.sort();
        v
    }

    #[test]
    fn sums_products_powers() {
        let r = ring(&["x", "y"]);
        let m = Ideal::parse(&r, &["x", "y"]).unwrap();
        let m2 = power(&m, 2).unwrap();
        assert_eq!(reduced(&m2), vec!["x*y", "x^2", "y^2"]);
        assert!(power(&m, 0).unwrap().is_one().unwrap());
        let xy = product(&Ideal::parse(&r, &["x"]).unwrap(), &Ideal::parse(&r, &["y"]).unwrap()).unwrap();
        assert_eq!(reduced(&xy), vec!["x*y"]);
        assert!(sum(&m2, &Ideal::parse(&r, &["x-1"]).unwrap())
            .unwrap()
            .is_one()
            .unwrap());
    }

    #[test]
    fn intersections() {
        let r = ring(&["x0", "x1", "x2", "x3"]);
        let i = Ideal::parse(&r, &["x0", "x1"]).unwrap();
        let j = Ideal::parse(&r, &["x2", "x3"]).unwrap();
        assert_eq!(
            reduced(&intersect(&i, &j).unwrap()),
            vec!["x0*x2", "x0*x3", "x1*x2", "x1*x3"]
        );
        assert!(intersect(&i, &i).unwrap().same_ideal(&i).unwrap());
        let s = ring(&["x", "y"]);
        let xy = intersect(&Ideal::parse(&s, &["x"]).unwrap(), &Ideal::parse(&s, &["y"]).unwrap()).unwrap();
        assert_eq!(reduced(&xy), vec!["x*y"]);
        assert!(intersect(&i, &Ideal::parse(&s, &["x"]).unwrap()).is_err());
    }

    #[test]
    fn colon_and_saturation() {
        let s = ring(&["x", "y"]);
        let q = colon(&Ideal::parse(&s, &["x*y"]).unwrap(), &Ideal::parse(&s, &["y"]).unwrap()).unwrap();
        assert_eq!(reduced(&q), vec!["x"]);
        assert!(colon(&Ideal::parse(&s, &["x"]).unwrap(), &Ideal::zero(s.clone())).is_err());

        let r = ring(&["x0", "x1", "x2", "x3"]);
        let j1 = Ideal::parse(&r, &["x0*x2 - x1^2", "x0*x3 - x1*x2"]).unwrap();
        let cubic = Ideal::parse(&r, &["x1^2 - x0*x2", "x1*x2 - x0*x3", "x2^2 - x1*x3"]).unwrap();
        let x0 = Ideal::parse(&r, &["x0"]).unwrap();
        let (sat, m) = saturate(&j1, &x0).unwrap();
        assert!(sat.same_ideal(&cubic).unwrap());
        assert_eq!(m, 1);
        let extra = colon(&j1, &cubic).unwrap();
        assert!(extra.contains(&r.parse("x0").unwrap()).unwrap());
        assert!(extra.contains(&r.parse("x1").unwrap()).unwrap());
        // stable under one more colon
        assert!(colon(&sat, &x0).unwrap().same_ideal(&sat).unwrap());
    }

    #[test]
    fn circle_elimination() {
        let r = ring(&["x", "y", "t"]);
        let i = Ideal::parse(&r, &["x^2 + y^2 - 1", "y - t*x - 1"]).unwrap();
        let no_y = eliminate(&i, &[1]).unwrap();
        let want = Ideal::parse(&r, &["x*((1 + t^2)*x + 2*t)"]).unwrap();
        assert!(no_y.same_ideal(&want).unwrap());
        let no_x = eliminate(&i, &[0]).unwrap();
        let want = Ideal::parse(&r, &["((1 + t^2)*y - (1 - t^2))*(y - 1)"]).unwrap();
        assert!(no_x.same_ideal(&want).unwrap());
        for g in no_x.gens() {
            assert_eq!(g.terms().iter().map(|(_, m)| m.exponents()[0]).max(), Some(0));
        }
        assert!(eliminate(&i, &[]).unwrap().same_ideal(&i).unwrap());
        assert!(eliminate(&i, &[0, 1, 2]).is_err());
    }

    #[test]
    fn dimensions() {
        let r = ring(&["x1", "x2", "x3"]);
        assert_eq!(
            affine_dim(&Ideal::parse(&r, &["x2 - x1^2", "x3 - x1*x2"]).unwrap()).unwrap(),
            1
        );
        assert_eq!(affine_dim(&Ideal::parse(&r, &["x1*x2", "x2*x3"]).unwrap()).unwrap(), 2);
        assert_eq!(affine_dim(&Ideal::unit(r.clone())).unwrap(), -1);
        assert_eq!(affine_dim(&Ideal::zero(r.clone())).unwrap(), 3);
    }

    #[test]
    fn twisted_cubic_closure() {
        let r = ring(&["x1", "x2", "x3"]);
        let i = Ideal::parse(&r, &["x2 - x1^2", "x3 - x1*x2"]).unwrap();
        let c = projective_closure(&i).unwrap();
        assert_eq!(c.ring().names()[0], "x0");
        assert_eq!(c.gens().len(), 3);
        let big = c.ring().clone();
        let want = Ideal::parse(&big, &["x1^2 - x0*x2", "x1*x2 - x0*x3", "x2^2 - x1*x3"]).unwrap();
        assert_eq!(reduced(&c), reduced(&want));
        let naive = homogenize_generators(&i).unwrap();
        assert!(!naive.same_ideal(&c).unwrap());
        let x0 = Ideal::parse(&big, &["x0"]).unwrap();
        assert!(saturate(&naive, &x0).unwrap().0.same_ideal(&c).unwrap());
    }

    fn arb_monomial_ideal() -> impl Strategy<Value = Vec<[u32; 4]>> {
        prop::collection::vec([0u32..=2, 0u32..=2, 0u32..=2, 0u32..=2], 1..5)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]

        #[test]
        fn dimension_matches_brute_force(gens in arb_monomial_ideal()) {
            let r = ring(&["a", "b", "c", "d"]);
            let polys: Vec<Poly> = gens.iter().map(|e| r.monomial(e)).collect();
            let i = Ideal::new(r.clone(), polys).unwrap();
            let leads: Vec<Monomial> = gens.iter().map(|e| Monomial::from_exponents(e)).collect();
            let expected = if leads.iter().any(Monomial::is_one) {
                -1
            } else {
                (0u32..16)
                    .filter(|s| leads.iter().all(|m| m.support().any(|v| s & (1 << v) == 0)))
                    .map(|s| s.count_ones() as i64)
                    .max()
                    .unwrap()
            };
            prop_assert_eq!(affine_dim(&i).unwrap(), expected);
        }

        #[test]
        fn intersection_contains_products(a in arb_monomial_ideal(), b in arb_monomial_ideal()) {
            let r = ring(&["a", "b", "c", "d"]);
            let i = Ideal::new(r.clone(), a.iter().map(|e| &r.monomial(e) + &r.var(0)).collect()).unwrap();
            let j = Ideal::new(r.clone(), b.iter().map(|e| r.monomial(e)).collect()).unwrap();
            let k = intersect(&i, &j).unwrap();
            for f in k.gens() {
                prop_assert!(i.contains(f).unwrap() && j.contains(f).unwrap());
            }
            for f in i.gens() {
                for g in j.gens() {
                    prop_assert!(k.contains(&(f * g)).unwrap());
                }
            }
            let red = reduce_gb(&k.groebner_basis(&MonomialOrdering::DegRevLex).unwrap());
            prop_assert!(red.reduced);
        }

        #[test]
        fn colon_is_annihilating(a in arb_monomial_ideal(), b in arb_monomial_ideal()) {
            let r = ring(&["a", "b", "c", "d"]);
            let i = Ideal::new(r.clone(), a.iter().map(|e| r.monomial(e)).collect()).unwrap();
            let j = Ideal::new(r.clone(), b.iter().map(|e| r.monomial(e)).collect()).unwrap();
            let q = colon(&i, &j).unwrap();
            for f in q.gens() {
                for g in j.gens() {
                    prop_assert!(i.contains(&(f * g)).unwrap());
                }
            }
            // monomials of degree <= 2 multiplying J into I lie in the colon
            for d in 0..=2 {
                for m in crate::poly::monomial::monomials_of_degree(4, d) {
                    let f = Poly::term(r.field().one(), m);
                    if j.gens().iter().all(|g| i.contains(&(&f * g)).unwrap()) {
                        prop_assert!(q.contains(&f).unwrap());
                    }
                }
            }
            let (sat, _) = saturate(&i, &j).unwrap();
            prop_assert!(colon(&sat, &j).unwrap().same_ideal(&sat).unwrap());
        }
    }
}
