//! Mora division and standard bases for local orderings, and the local
//! invariants built on them.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Coeff, Field};
use crate::gbasis::engine::{colon_generators, minimal_indices, sub_mul, Elem, Term};
use crate::gbasis::{staircase, DivisionResult, Ideal};
use crate::poly::{monomial::minimalize, ModuleOrdering, Monomial, MonomialOrdering, Poly};

/// A local quotient dimension, possibly infinite.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LocalDimension {
    Finite(u64),
    Infinite,
}

impl LocalDimension {
    pub fn finite(self) -> Option<u64> {
        match self {
            LocalDimension::Finite(n) => Some(n),
            LocalDimension::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        self == LocalDimension::Infinite
    }
}

impl fmt::Display for LocalDimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LocalDimension::Finite(n) => write!(f, "{n}"),
            LocalDimension::Infinite => f.write_str("infinite"),
        }
    }
}

/// A standard basis at the origin with the dimension of the local quotient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalQuotientResult {
    pub standard_basis: Vec<Poly>,
    pub dimension: LocalDimension,
    /// Monomials outside the leading ideal; empty when infinite.
    pub standard_monomials: Vec<Monomial>,
}

fn require_local(ord: &MonomialOrdering) -> Result<()> {
    if !ord.is_local() {
        return Err(Error::NotLocal);
    }
    Ok(())
}

fn mask(m: &Monomial) -> u64 {
    m.exponents()
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .fold(0, |acc, (i, _)| acc | 1u64 << (i % 64))
}

fn wdeg(m: &Monomial, w: &[u32]) -> u64 {
    m.exponents().iter().zip(w).map(|(&e, &w)| e as u64 * w as u64).sum()
}

fn ecart(e: &Elem, w: &[u32]) -> u64 {
    let top = e.terms.iter().map(|t| wdeg(&t.m, w)).max().unwrap_or(0);
    top - wdeg(&e.lead().m, w)
}

/// `h = a f + Σ b_i g_i`, as term lists in the working ordering.
#[derive(Clone, Debug)]
struct Rep {
    a: Vec<Term>,
    b: Vec<Vec<Term>>,
}

#[derive(Clone, Debug)]
struct Reducer {
    elem: Elem,
    ecart: u64,
    mask: u64,
    rep: Option<Rep>,
}

impl Reducer {
    fn new(elem: Elem, w: &[u32], rep: Option<Rep>) -> Self {
        Reducer {
            ecart: ecart(&elem, w),
            mask: mask(&elem.lead().m),
            elem,
            rep,
        }
    }
}

struct Ctx<'a> {
    ord: &'a ModuleOrdering,
    weights: Vec<u32>,
    /// Terms of weighted degree at least this lie in the ideal and are
    /// dropped.
    cutoff: Option<u64>,
}

impl Ctx<'_> {
    fn truncate(&self, terms: &mut Vec<Term>) {
        if let Some(d) = self.cutoff {
            terms.retain(|t| wdeg(&t.m, &self.weights) < d);
        }
    }
}

/// Mora's weak normal form: stops as soon as the leading term is not
/// divisible by any leading term in `basis` or among the intermediate
/// remainders kept on the side.
fn weak_nf(mut h: Elem, mut rep: Option<Rep>, basis: &[Reducer], ctx: &Ctx) -> (Elem, Option<Rep>) {
    let mut side: Vec<Reducer> = Vec::new();
    ctx.truncate(&mut h.terms);
    while !h.is_zero() {
        let lt = h.lead();
        let lm = mask(&lt.m);
        let mut best: Option<(bool, usize, u64)> = None;
        let candidates = basis.iter().map(|r| (false, r)).chain(side.iter().map(|r| (true, r)));
        for (k, (is_side, r)) in candidates.enumerate() {
            let l = r.elem.lead();
            if r.mask & !lm != 0 || l.comp != lt.comp || !l.m.divides(&lt.m) {
                continue;
            }
            if best.is_none_or(|b| r.ecart < b.2) {
                let idx = if is_side { k - basis.len() } else { k };
                best = Some((is_side, idx, r.ecart));
                if r.ecart == 0 {
                    break;
                }
            }
        }
        let Some((is_side, idx, e)) = best else { break };
        let eh = ecart(&h, &ctx.weights);
        if e > eh {
            side.push(Reducer {
                elem: h.clone(),
                ecart: eh,
                mask: lm,
                rep: rep.clone(),
            });
        }
        let g = if is_side { &side[idx] } else { &basis[idx] };
        let gl = g.elem.lead();
        let c = &lt.c / &gl.c;
        let m = gl.m.quotient_of(&lt.m).expect("divides");
        let mut next = sub_mul(ctx.ord, &h.terms[1..], &c, &m, &g.elem.terms[1..]);
        ctx.truncate(&mut next);
        if let (Some(r), Some(gr)) = (rep.as_mut(), g.rep.as_ref()) {
            r.a = sub_mul(ctx.ord, &r.a, &c, &m, &gr.a);
            for (bi, gbi) in r.b.iter_mut().zip(&gr.b) {
                *bi = sub_mul(ctx.ord, bi, &c, &m, gbi);
            }
        }
        h = Elem { terms: next };
    }
    (h, rep)
}

fn elem_of(p: &Poly, ord: &ModuleOrdering) -> Elem {
    Elem::from_poly(p, 0, ord)
}

fn poly_of(terms: &[Term], field: Field, nvars: usize) -> Poly {
    Poly::from_terms(field, nvars, terms.iter().map(|t| (t.c.clone(), t.m.clone())).collect())
}

/// Division with a unit: returns `u`, `q_i` and `h` with
/// `u f = Σ q_i g_i + h`, `u(0) ≠ 0`, and the leading term of `h` not
/// divisible by any `Lt(g_i)`.
pub fn mora_normal_form(f: &Poly, divisors: &[Poly], ord: &MonomialOrdering) -> Result<DivisionResult> {
    require_local(ord)?;
    let (field, nvars) = (f.field(), f.nvars());
    ord.validate(nvars)?;
    for d in divisors {
        if d.is_zero() {
            return Err(Error::ZeroInput("divisor"));
        }
        if d.nvars() != nvars {
            return Err(Error::RingMismatch);
        }
        if d.field() != field {
            return Err(Error::FieldMismatch(field.to_string(), d.field().to_string()));
        }
    }
    let mord = ModuleOrdering::TermOverPosition(ord.clone());
    let w = ord.ecart_weights(nvars);
    let one = |c: Coeff| Term {
        c,
        m: Monomial::one(nvars),
        comp: 0,
    };
    let basis: Vec<Reducer> = divisors
        .iter()
        .enumerate()
        .map(|(i, d)| {
            let mut b = vec![Vec::new(); divisors.len()];
            b[i] = vec![one(field.one())];
            Reducer::new(elem_of(d, &mord), &w, Some(Rep { a: Vec::new(), b }))
        })
        .collect();
    let rep = Rep {
        a: vec![one(field.one())],
        b: vec![Vec::new(); divisors.len()],
    };
    let ctx = Ctx {
        ord: &mord,
        weights: w,
        cutoff: None,
    };
    let (h, rep) = weak_nf(elem_of(f, &mord), Some(rep), &basis, &ctx);
    let rep = rep.expect("tracked");
    Ok(DivisionResult {
        quotients: rep.b.iter().map(|b| -&poly_of(b, field, nvars)).collect(),
        remainder: h.to_poly(field, nvars),
        unit: poly_of(&rep.a, field, nvars),
    })
}

/// Weighted degree from which every monomial lies in the ideal generated
/// by `leads`, when the staircase is finite.
fn corner_cutoff(leads: &[Monomial], w: &[u32], nvars: usize) -> Option<u64> {
    let mut pure = vec![None; nvars];
    for m in leads {
        let support: Vec<usize> = m.support().collect();
        if let [i] = support[..] {
            let e = m.exponents()[i];
            if pure[i].is_none_or(|p| e < p) {
                pure[i] = Some(e);
            }
        }
    }
    let pure: Vec<u32> = pure.into_iter().collect::<Option<_>>()?;
    let volume: u64 = pure.iter().map(|&a| a as u64).product();
    if volume <= 200_000 {
        let min = minimalize(leads.to_vec());
        if let Ok(st) = staircase(&min, nvars) {
            return Some(st.iter().map(|m| wdeg(m, w)).max().map_or(0, |d| d + 1));
        }
    }
    Some(
        1 + pure
            .iter()
            .zip(w)
            .map(|(&a, &w)| (a as u64 - 1) * w as u64)
            .sum::<u64>(),
    )
}

/// Standard basis of the ideal generated by `gens` in the localization at
/// the origin, minimalized. Pairs are chosen by the same minimal-generator
/// rule as in the global case and reduced with the weak normal form.
fn local_basis(gens: &[Poly], ord: &MonomialOrdering, nvars: usize) -> Vec<Elem> {
    let mord = ModuleOrdering::TermOverPosition(ord.clone());
    let w = ord.ecart_weights(nvars);
    let degree_local = matches!(ord, MonomialOrdering::NegWDegRevLex(_));
    let mut ctx = Ctx {
        ord: &mord,
        weights: w.clone(),
        cutoff: None,
    };
    let mut basis: Vec<Reducer> = Vec::new();
    let mut heap: BinaryHeap<Reverse<(u64, usize, usize)>> = BinaryHeap::new();
    let mut pairs: Vec<(Monomial, usize, Monomial)> = Vec::new();

    let enqueue = |basis: &[Reducer], i: usize, heap: &mut BinaryHeap<_>, pairs: &mut Vec<_>| {
        let elems: Vec<Elem> = basis
            .iter()
            .map(|r| Elem {
                terms: vec![r.elem.lead().clone()],
            })
            .collect();
        let li = &basis[i].elem.lead().m;
        for alpha in colon_generators(&elems, i) {
            let target = alpha.mul(li);
            let j = (0..i)
                .find(|&j| basis[j].elem.lead().m.divides(&target))
                .expect("colon generator has a partner");
            let beta = basis[j].elem.lead().m.quotient_of(&target).expect("divides");
            heap.push(Reverse((wdeg(&target, &w), i, pairs.len())));
            pairs.push((alpha, j, beta));
        }
    };

    let add = |mut e: Elem, basis: &mut Vec<Reducer>, ctx: &mut Ctx, heap: &mut BinaryHeap<_>, pairs: &mut Vec<_>| {
        e.make_monic();
        basis.push(Reducer::new(e, &w, None));
        let k = basis.len() - 1;
        enqueue(basis, k, heap, pairs);
        if degree_local {
            let leads: Vec<Monomial> = basis.iter().map(|r| r.elem.lead().m.clone()).collect();
            let cut = corner_cutoff(&leads, &w, nvars);
            if cut.is_some() && (ctx.cutoff.is_none() || cut < ctx.cutoff) {
                ctx.cutoff = cut;
                for r in basis.iter_mut() {
                    // elements whose lead is already past the cutoff stay as they are
                    if cut.is_some_and(|d| wdeg(&r.elem.lead().m, &w) >= d) {
                        continue;
                    }
                    ctx.truncate(&mut r.elem.terms);
                    r.ecart = ecart(&r.elem, &w);
                }
            }
        }
    };

    for g in gens.iter().filter(|g| !g.is_zero()) {
        let e = elem_of(g, &mord);
        let (h, _) = weak_nf(e, None, &basis, &ctx);
        if !h.is_zero() {
            add(h, &mut basis, &mut ctx, &mut heap, &mut pairs);
        }
    }
    while let Some(Reverse((_, i, seq))) = heap.pop() {
        let (alpha, j, beta) = pairs[seq].clone();
        let (gi, gj) = (&basis[i].elem, &basis[j].elem);
        if gi.is_zero() || gj.is_zero() {
            continue;
        }
        let c = &gi.lead().c / &gj.lead().c;
        let tail_i = gi.mul_monomial(&alpha).terms[1..].to_vec();
        let s = sub_mul(&mord, &tail_i, &c, &beta, &gj.terms[1..]);
        let (h, _) = weak_nf(Elem { terms: s }, None, &basis, &ctx);
        if !h.is_zero() {
            add(h, &mut basis, &mut ctx, &mut heap, &mut pairs);
        }
    }
    let elems: Vec<Elem> = basis.into_iter().map(|r| r.elem).collect();
    minimal_indices(&elems).into_iter().map(|i| elems[i].clone()).collect()
}

/// A minimal standard basis of `(gens)` for the local ordering `ord`.
pub fn standard_basis(gens: &[Poly], ord: &MonomialOrdering) -> Result<Vec<Poly>> {
    require_local(ord)?;
    let Some(first) = gens.first() else {
        return Ok(Vec::new());
    };
    let (field, nvars) = (first.field(), first.nvars());
    ord.validate(nvars)?;
    for g in gens {
        if g.nvars() != nvars {
            return Err(Error::RingMismatch);
        }
    }
    Ok(local_basis(gens, ord, nvars)
        .iter()
        .map(|e| e.to_poly(field, nvars))
        .collect())
}

/// `dim_k O/I O` at the origin, with `O` the local ring.
pub fn local_dim(i: &Ideal) -> Result<LocalQuotientResult> {
    local_dim_of(i.gens(), i.ring().field(), i.ring().nvars())
}

fn local_dim_of(gens: &[Poly], field: Field, nvars: usize) -> Result<LocalQuotientResult> {
    let ord = MonomialOrdering::neg_degrevlex(nvars);
    let basis = local_basis(gens, &ord, nvars);
    let leads = minimalize(basis.iter().map(|e| e.lead().m.clone()).collect());
    let (dimension, standard_monomials) = match staircase(&leads, nvars) {
        Ok(st) => (LocalDimension::Finite(st.len() as u64), st),
        Err(Error::InfiniteStaircase) => (LocalDimension::Infinite, Vec::new()),
        Err(e) => return Err(e),
    };
    Ok(LocalQuotientResult {
        standard_basis: basis.iter().map(|e| e.to_poly(field, nvars)).collect(),
        dimension,
        standard_monomials,
    })
}

fn check_point(f: &Poly, p: &[Coeff]) -> Result<()> {
    if p.len() != f.nvars() {
        return Err(Error::LengthMismatch {
            expected: f.nvars(),
            found: p.len(),
        });
    }
    if p.iter().any(|c| c.field() != f.field()) {
        return Err(Error::FieldMismatch(
            f.field().to_string(),
            "point coordinates outside the ground field".into(),
        ));
    }
    Ok(())
}

/// `dim_k O_p/(f, g)`.
pub fn intersection_multiplicity(f: &Poly, g: &Poly, p: &[Coeff]) -> Result<LocalDimension> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroInput("curve equation"));
    }
    if f.nvars() != g.nvars() {
        return Err(Error::RingMismatch);
    }
    check_point(f, p)?;
    let fs = [f.translate(p)?, g.translate(p)?];
    Ok(local_dim_of(&fs, f.field(), f.nvars())?.dimension)
}

/// Multiplicity of a hypersurface at a point with its tangent cone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveMultiplicity {
    pub multiplicity: u64,
    /// Lowest-degree part after moving the point to the origin.
    pub tangent_cone: Poly,
    /// `m ≥ 2` and the tangent lines are distinct; only decided for plane
    /// curves, false otherwise.
    pub ordinary: bool,
}

/// Dense univariate polynomial over a field, lowest degree first.
fn trim(mut v: Vec<Coeff>) -> Vec<Coeff> {
    while v.last().is_some_and(Coeff::is_zero) {
        v.pop();
    }
    v
}

fn uni_rem(a: &[Coeff], b: &[Coeff]) -> Vec<Coeff> {
    let mut r = a.to_vec();
    let lb = b.last().expect("nonzero divisor").inv().expect("nonzero");
    while r.len() >= b.len() && !r.is_empty() {
        let c = r.last().expect("nonempty") * &lb;
        let shift = r.len() - b.len();
        for (k, bk) in b.iter().enumerate() {
            let d = &c * bk;
            r[shift + k] = &r[shift + k] - &d;
        }
        r.pop();
        r = trim(r);
    }
    r
}

fn uni_gcd_degree(a: Vec<Coeff>, b: Vec<Coeff>) -> usize {
    let (mut a, mut b) = (trim(a), trim(b));
    while !b.is_empty() {
        let r = uni_rem(&a, &b);
        a = b;
        b = r;
    }
    a.len().saturating_sub(1)
}

/// Whether a binary form in two variables has no repeated linear factor.
pub fn binary_form_is_squarefree(form: &Poly) -> bool {
    if form.nvars() != 2 || form.is_zero() {
        return false;
    }
    let exps = |k: usize| form.terms().iter().map(move |(_, m)| m.exponents()[k]);
    let (a, b) = (exps(0).min().unwrap_or(0), exps(1).min().unwrap_or(0));
    if a >= 2 || b >= 2 {
        return false;
    }
    // strip x^a y^b, then set y = 1
    let deg = exps(0).max().unwrap_or(0) - a;
    let mut t = vec![form.field().zero(); deg as usize + 1];
    for (c, m) in form.terms() {
        t[(m.exponents()[0] - a) as usize] = c.clone();
    }
    let field = form.field();
    let dt: Vec<Coeff> = t
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c * &field.from_i64(k as i64))
        .collect();
    if trim(dt.clone()).is_empty() {
        return deg == 0;
    }
    uni_gcd_degree(t, dt) == 0
}

/// Least `m` with a nonzero degree-`m` Taylor part at `p`.
pub fn curve_multiplicity(f: &Poly, p: &[Coeff]) -> Result<CurveMultiplicity> {
    if f.is_zero() {
        return Err(Error::ZeroInput("polynomial"));
    }
    check_point(f, p)?;
    let t = f.translate(p)?;
    let m = t.min_degree().expect("nonzero");
    let cone = t.taylor_part(m);
    let ordinary = m >= 2 && f.nvars() == 2 && binary_form_is_squarefree(&cone);
    Ok(CurveMultiplicity {
        multiplicity: m,
        tangent_cone: cone,
        ordinary,
    })
}

/// Milnor and Tjurina numbers of `f` at `p`.
pub fn milnor_tjurina(f: &Poly, p: &[Coeff]) -> Result<(LocalDimension, LocalDimension)> {
    if f.is_zero() {
        return Err(Error::ZeroInput("polynomial"));
    }
    check_point(f, p)?;
    let t = f.translate(p)?;
    let mut jac: Vec<Poly> = (0..t.nvars()).map(|i| t.derivative(i)).collect();
    let mu = local_dim_of(&jac, t.field(), t.nvars())?.dimension;
    jac.push(t.clone());
    let tau = local_dim_of(&jac, t.field(), t.nvars())?.dimension;
    Ok((mu, tau))
}

/// Milnor number alone.
pub fn milnor_number(f: &Poly, p: &[Coeff]) -> Result<LocalDimension> {
    if f.is_zero() {
        return Err(Error::ZeroInput("polynomial"));
    }
    check_point(f, p)?;
    let t = f.translate(p)?;
    let jac: Vec<Poly> = (0..t.nvars()).map(|i| t.derivative(i)).collect();
    Ok(local_dim_of(&jac, t.field(), t.nvars())?.dimension)
}
