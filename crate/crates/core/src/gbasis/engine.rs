//! The shared division and Buchberger machinery. Ideals are handled as
//! submodules of `R^1`, so one engine serves both cases.

use std::cmp::{Ordering, Reverse};
use std::collections::BinaryHeap;

use crate::field::{Coeff, Field};
use crate::poly::{monomial::minimalize, FreeModElem, ModuleOrdering, Monomial, Poly};

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Term {
    pub c: Coeff,
    pub m: Monomial,
    pub comp: usize,
}

/// A module element as a list of terms, strictly descending in the working
/// ordering.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub(crate) struct Elem {
    pub terms: Vec<Term>,
}

/// Bit `i % 64` is set when variable `i` occurs; a cheap necessary test
/// for divisibility.
fn mask(m: &Monomial) -> u64 {
    m.exponents()
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .fold(0, |acc, (i, _)| acc | 1u64 << (i % 64))
}

fn term_cmp(ord: &ModuleOrdering, a: &Term, b: &Term) -> Ordering {
    ord.cmp((&a.m, a.comp), (&b.m, b.comp))
}

impl Elem {
    pub fn from_poly(p: &Poly, comp: usize, ord: &ModuleOrdering) -> Elem {
        let mut terms: Vec<Term> = p
            .terms()
            .iter()
            .map(|(c, m)| Term {
                c: c.clone(),
                m: m.clone(),
                comp,
            })
            .collect();
        terms.sort_by(|a, b| term_cmp(ord, b, a));
        Elem { terms }
    }

    pub fn from_vec(v: &FreeModElem, ord: &ModuleOrdering) -> Elem {
        let mut terms: Vec<Term> = v
            .components()
            .iter()
            .enumerate()
            .flat_map(|(j, p)| {
                p.terms().iter().map(move |(c, m)| Term {
                    c: c.clone(),
                    m: m.clone(),
                    comp: j,
                })
            })
            .collect();
        terms.sort_by(|a, b| term_cmp(ord, b, a));
        Elem { terms }
    }

    pub fn to_poly(&self, field: Field, nvars: usize) -> Poly {
        Poly::from_terms(
            field,
            nvars,
            self.terms.iter().map(|t| (t.c.clone(), t.m.clone())).collect(),
        )
    }

    pub fn to_vec(&self, field: Field, nvars: usize, rank: usize) -> FreeModElem {
        let mut parts: Vec<Vec<(Coeff, Monomial)>> = vec![Vec::new(); rank];
        for t in &self.terms {
            parts[t.comp].push((t.c.clone(), t.m.clone()));
        }
        FreeModElem::new(parts.into_iter().map(|p| Poly::from_terms(field, nvars, p)).collect())
            .expect("consistent ring")
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> &Term {
        &self.terms[0]
    }

    pub fn scale(&mut self, c: &Coeff) {
        for t in &mut self.terms {
            t.c = &t.c * c;
        }
    }

    pub fn make_monic(&mut self) {
        if let Some(t) = self.terms.first() {
            if !t.c.is_one() {
                let inv = t.c.inv().expect("nonzero leading coefficient");
                self.scale(&inv);
            }
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Elem {
        Elem {
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    c: t.c.clone(),
                    m: t.m.mul(m),
                    comp: t.comp,
                })
                .collect(),
        }
    }
}

/// `a - c * m * b` where both inputs are sorted; the result is sorted.
pub(crate) fn sub_mul(ord: &ModuleOrdering, a: &[Term], c: &Coeff, m: &Monomial, b: &[Term]) -> Vec<Term> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut i = 0;
    let mut bi = b.iter().map(|t| Term {
        c: -&(&t.c * c),
        m: t.m.mul(m),
        comp: t.comp,
    });
    let mut pending = bi.next();
    while let Some(bt) = pending.take() {
        if i >= a.len() {
            out.push(bt);
            out.extend(bi);
            return out;
        }
        match term_cmp(ord, &a[i], &bt) {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
                pending = Some(bt);
            }
            Ordering::Less => {
                out.push(bt);
                pending = bi.next();
            }
            Ordering::Equal => {
                let s = &a[i].c + &bt.c;
                if !s.is_zero() {
                    out.push(Term { c: s, ..bt });
                }
                i += 1;
                pending = bi.next();
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out
}

/// Divisors with precomputed leading data.
pub(crate) struct DivisorSet<'a> {
    elems: Vec<&'a Elem>,
    masks: Vec<u64>,
}

impl<'a> DivisorSet<'a> {
    pub fn new(elems: impl IntoIterator<Item = &'a Elem>) -> Self {
        let elems: Vec<&Elem> = elems.into_iter().collect();
        let masks = elems.iter().map(|e| mask(&e.lead().m)).collect();
        DivisorSet { elems, masks }
    }

    /// First divisor whose leading term divides `t`.
    pub fn find(&self, t: &Term) -> Option<usize> {
        let tm = mask(&t.m);
        (0..self.elems.len()).find(|&j| {
            let l = self.elems[j].lead();
            self.masks[j] & !tm == 0 && l.comp == t.comp && l.m.divides(&t.m)
        })
    }

    pub fn get(&self, j: usize) -> &'a Elem {
        self.elems[j]
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }
}

/// Quotient terms per divisor index.
pub(crate) type Quotients = Vec<Vec<(Coeff, Monomial)>>;

/// Determinate division: repeatedly cancels the leading term with the first
/// divisor whose leading term divides it, else moves it to the remainder.
pub(crate) fn divide(f: Elem, divs: &DivisorSet, ord: &ModuleOrdering, want_quotients: bool) -> (Quotients, Elem) {
    let mut quots: Quotients = if want_quotients {
        vec![Vec::new(); divs.len()]
    } else {
        Vec::new()
    };
    let mut rem = Vec::new();
    let mut p = f.terms;
    let mut head = 0;
    while head < p.len() {
        let t = &p[head];
        match divs.find(t) {
            Some(j) => {
                let d = divs.get(j);
                let l = d.lead();
                let c = &t.c / &l.c;
                let m = l.m.quotient_of(&t.m).expect("divides");
                // the leading terms cancel exactly, so skip both
                p = sub_mul(ord, &p[head + 1..], &c, &m, &d.terms[1..]);
                head = 0;
                if want_quotients {
                    quots[j].push((c, m));
                }
            }
            None => {
                rem.push(p[head].clone());
                head += 1;
            }
        }
    }
    (quots, Elem { terms: rem })
}

/// One processed Buchberger test: `x^alpha f_i = sum q_j f_j + h`, where
/// `h` became element `produced` when nonzero.
#[derive(Clone, Debug)]
pub(crate) struct TestRecord {
    pub i: usize,
    pub alpha: Monomial,
    pub quotients: Vec<(usize, Vec<(Coeff, Monomial)>)>,
    pub produced: Option<usize>,
}

pub(crate) struct GbRun {
    pub elems: Vec<Elem>,
    pub tests: Vec<TestRecord>,
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct GbOptions {
    /// Keep a record of every test (needed for syzygies).
    pub track: bool,
    /// Skip tests whose leading terms are coprime (only valid for ideals
    /// when no syzygies are wanted).
    pub product_criterion: bool,
}

/// The minimal generators `x^alpha` of `(Lt f_j : j < i, same component) :
/// Lt f_i`.
pub(crate) fn colon_generators(elems: &[Elem], i: usize) -> Vec<Monomial> {
    let li = elems[i].lead();
    let gens: Vec<Monomial> = elems[..i]
        .iter()
        .map(|e| e.lead())
        .filter(|l| l.comp == li.comp)
        .map(|l| li.m.quotient_of(&l.m.lcm(&li.m)).expect("divides lcm"))
        .collect();
    let mut out = minimalize(gens);
    out.sort_by(|a, b| a.canonical_cmp(b));
    out
}

/// Buchberger's algorithm with the `M_i` criterion. The input elements
/// keep their positions at the front of the output list.
pub(crate) fn buchberger(input: Vec<Elem>, ord: &ModuleOrdering, opts: GbOptions) -> GbRun {
    let mut elems: Vec<Elem> = input;
    let mut tests = Vec::new();
    let mut heap: BinaryHeap<Reverse<(u64, usize, usize)>> = BinaryHeap::new();
    let mut alphas: Vec<Monomial> = Vec::new();
    let enqueue = |elems: &[Elem], i: usize, heap: &mut BinaryHeap<_>, alphas: &mut Vec<Monomial>| {
        let li = elems[i].lead().clone();
        for alpha in colon_generators(elems, i) {
            if opts.product_criterion
                && elems[..i]
                    .iter()
                    .any(|e| e.lead().m == alpha && alpha.is_coprime(&li.m))
            {
                continue;
            }
            let deg = alpha.degree() + li.m.degree();
            heap.push(Reverse((deg, i, alphas.len())));
            alphas.push(alpha);
        }
    };
    for i in 0..elems.len() {
        enqueue(&elems, i, &mut heap, &mut alphas);
    }
    while let Some(Reverse((_, i, seq))) = heap.pop() {
        let alpha = alphas[seq].clone();
        let f = elems[i].mul_monomial(&alpha);
        let (q, mut h) = {
            let divs = DivisorSet::new(elems.iter());
            divide(f, &divs, ord, opts.track)
        };
        let produced = if h.is_zero() {
            None
        } else {
            if !opts.track {
                h.make_monic();
            }
            elems.push(h);
            let k = elems.len() - 1;
            enqueue(&elems, k, &mut heap, &mut alphas);
            Some(k)
        };
        if opts.track {
            tests.push(TestRecord {
                i,
                alpha,
                quotients: q.into_iter().enumerate().filter(|(_, t)| !t.is_empty()).collect(),
                produced,
            });
        }
    }
    GbRun { elems, tests }
}

/// Indices of the elements kept by minimalization: an element is dropped
/// when its leading term is divisible by that of another kept element
/// (the earlier one wins on equality).
pub(crate) fn minimal_indices(elems: &[Elem]) -> Vec<usize> {
    let mut keep = Vec::new();
    for i in 0..elems.len() {
        let li = elems[i].lead();
        let dominated = elems.iter().enumerate().any(|(j, e)| {
            let lj = e.lead();
            j != i && lj.comp == li.comp && lj.m.divides(&li.m) && (lj.m != li.m || j < i)
        });
        if !dominated {
            keep.push(i);
        }
    }
    keep
}

/// Interreduces a minimal basis: each element is replaced by its monic
/// remainder modulo the others. Output sorted by leading term, descending.
pub(crate) fn reduce_basis(mut elems: Vec<Elem>, ord: &ModuleOrdering) -> Vec<Elem> {
    elems.sort_by(|a, b| term_cmp(ord, b.lead(), a.lead()));
    let mut out: Vec<Elem> = Vec::with_capacity(elems.len());
    for i in 0..elems.len() {
        let lead = elems[i].terms[0].clone();
        let tail = Elem {
            terms: elems[i].terms[1..].to_vec(),
        };
        let others = DivisorSet::new(elems.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, e)| e));
        let (_, r) = divide(tail, &others, ord, false);
        let mut e = Elem {
            terms: std::iter::once(lead).chain(r.terms).collect(),
        };
        e.make_monic();
        out.push(e);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{MonomialOrdering, PolyRing};

    fn setup() -> (PolyRing, ModuleOrdering) {
        let r = PolyRing::new(Field::Rationals, ["x", "y"]).unwrap();
        (r, ModuleOrdering::TermOverPosition(MonomialOrdering::Lex))
    }

    #[test]
    fn merge_cancels() {
        let (r, ord) = setup();
        let a = Elem::from_poly(&r.parse("x^2 + x*y + 1").unwrap(), 0, &ord);
        let b = Elem::from_poly(&r.parse("x + y").unwrap(), 0, &ord);
        let x = Monomial::var(2, 0);
        let d = sub_mul(&ord, &a.terms, &r.field().one(), &x, &b.terms);
        assert_eq!(Elem { terms: d }.to_poly(r.field(), 2), r.parse("1").unwrap());
    }

    #[test]
    fn colon_generators_are_minimal() {
        let (r, ord) = setup();
        let es: Vec<Elem> = ["x^2", "x*y^2", "y^3"]
            .iter()
            .map(|s| Elem::from_poly(&r.parse(s).unwrap(), 0, &ord))
            .collect();
        // (x^2, x y^2) : y^3 = (x)
        assert_eq!(colon_generators(&es, 2), vec![Monomial::var(2, 0)]);
    }
}
