//! Division with remainder, Buchberger's algorithm, Groebner bases of
//! ideals and submodules, normal forms and standard monomials.

pub(crate) mod engine;
mod ideal;

use std::sync::Arc;

use engine::{divide as engine_divide, DivisorSet, Elem, GbOptions};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::{FreeModElem, ModuleOrdering, Monomial, MonomialOrdering, Poly};

pub use ideal::Ideal;

/// `unit * f = sum quotients[i] * divisors[i] + remainder`.
///
/// The unit is 1 for global orderings; Mora division produces other units.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisionResult {
    pub quotients: Vec<Poly>,
    pub remainder: Poly,
    pub unit: Poly,
}

/// Division of a free-module element: `f = sum quotients[i] * divisors[i] +
/// remainder`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleDivisionResult {
    pub quotients: Vec<Poly>,
    pub remainder: FreeModElem,
}

/// A Groebner basis of an ideal with respect to `ordering`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    pub ordering: MonomialOrdering,
    pub elements: Vec<Poly>,
    pub minimal: bool,
    pub reduced: bool,
}

/// A Groebner basis of a submodule of `R^rank`.
#[derive(Clone, Debug)]
pub struct ModuleGroebnerBasis {
    pub ordering: ModuleOrdering,
    pub rank: usize,
    pub elements: Vec<FreeModElem>,
}

fn require_global(ord: &MonomialOrdering) -> Result<()> {
    if ord.is_global() {
        Ok(())
    } else {
        Err(Error::NotGlobal)
    }
}

fn common_ring(polys: &[&Poly]) -> Result<(Field, usize)> {
    let first = polys.first().ok_or(Error::InvalidArgument("empty input".into()))?;
    for p in polys {
        if p.nvars() != first.nvars() {
            return Err(Error::RingMismatch);
        }
        if p.field() != first.field() {
            return Err(Error::FieldMismatch(first.field().to_string(), p.field().to_string()));
        }
    }
    Ok((first.field(), first.nvars()))
}

fn quotient_polys(field: Field, nvars: usize, q: engine::Quotients) -> Vec<Poly> {
    q.into_iter().map(|t| Poly::from_terms(field, nvars, t)).collect()
}

/// Determinate division with remainder by an ordered list of divisors.
pub fn divide_with_remainder(f: &Poly, divisors: &[Poly], ord: &MonomialOrdering) -> Result<DivisionResult> {
    require_global(ord)?;
    ord.validate(f.nvars())?;
    let mut all: Vec<&Poly> = vec![f];
    all.extend(divisors);
    let (field, nvars) = common_ring(&all)?;
    if divisors.iter().any(Poly::is_zero) {
        return Err(Error::ZeroInput("divisor"));
    }
    let mord = ModuleOrdering::TermOverPosition(ord.clone());
    let elems: Vec<Elem> = divisors.iter().map(|d| Elem::from_poly(d, 0, &mord)).collect();
    let divs = DivisorSet::new(elems.iter());
    let (q, r) = engine_divide(Elem::from_poly(f, 0, &mord), &divs, &mord, true);
    Ok(DivisionResult {
        quotients: quotient_polys(field, nvars, q),
        remainder: r.to_poly(field, nvars),
        unit: Poly::one(field, nvars),
    })
}

fn module_ring(vs: &[&FreeModElem]) -> Result<(Field, usize, usize)> {
    let first = vs.first().ok_or(Error::InvalidArgument("empty input".into()))?;
    for v in vs {
        if v.rank() != first.rank() {
            return Err(Error::LengthMismatch {
                expected: first.rank(),
                found: v.rank(),
            });
        }
    }
    let comps: Vec<&Poly> = vs.iter().flat_map(|v| v.components()).collect();
    let (f, n) = common_ring(&comps)?;
    Ok((f, n, first.rank()))
}

/// Determinate division in a free module.
pub fn divide_vec(f: &FreeModElem, divisors: &[FreeModElem], ord: &ModuleOrdering) -> Result<ModuleDivisionResult> {
    if !ord.is_global() {
        return Err(Error::NotGlobal);
    }
    let mut all = vec![f];
    all.extend(divisors);
    let (field, nvars, rank) = module_ring(&all)?;
    if divisors.iter().any(FreeModElem::is_zero) {
        return Err(Error::ZeroInput("divisor"));
    }
    let elems: Vec<Elem> = divisors.iter().map(|d| Elem::from_vec(d, ord)).collect();
    let divs = DivisorSet::new(elems.iter());
    let (q, r) = engine_divide(Elem::from_vec(f, ord), &divs, ord, true);
    Ok(ModuleDivisionResult {
        quotients: quotient_polys(field, nvars, q),
        remainder: r.to_vec(field, nvars, rank),
    })
}

/// A minimal Groebner basis of the ideal generated by `gens`.
pub fn buchberger(gens: &[Poly], ord: &MonomialOrdering) -> Result<GroebnerBasis> {
    require_global(ord)?;
    let mord = ModuleOrdering::TermOverPosition(ord.clone());
    let nonzero: Vec<&Poly> = gens.iter().filter(|g| !g.is_zero()).collect();
    if nonzero.is_empty() {
        return Ok(GroebnerBasis {
            ordering: ord.clone(),
            elements: Vec::new(),
            minimal: true,
            reduced: true,
        });
    }
    let (field, nvars) = common_ring(&nonzero)?;
    ord.validate(nvars)?;
    let input = nonzero.iter().map(|g| {
        let mut e = Elem::from_poly(g, 0, &mord);
        e.make_monic();
        e
    });
    let run = engine::buchberger(
        input.collect(),
        &mord,
        GbOptions {
            track: false,
            product_criterion: true,
        },
    );
    let keep = engine::minimal_indices(&run.elems);
    Ok(GroebnerBasis {
        ordering: ord.clone(),
        elements: keep.into_iter().map(|i| run.elems[i].to_poly(field, nvars)).collect(),
        minimal: true,
        reduced: false,
    })
}

/// The reduced Groebner basis: minimal, monic, with no term of any element
/// divisible by another element's leading term. Sorted by leading term,
/// descending.
pub fn reduce_gb(gb: &GroebnerBasis) -> GroebnerBasis {
    let mord = ModuleOrdering::TermOverPosition(gb.ordering.clone());
    let Some(first) = gb.elements.first() else {
        return gb.clone();
    };
    let (field, nvars) = (first.field(), first.nvars());
    let elems: Vec<Elem> = gb.elements.iter().map(|g| Elem::from_poly(g, 0, &mord)).collect();
    let keep = engine::minimal_indices(&elems);
    let min: Vec<Elem> = keep.into_iter().map(|i| elems[i].clone()).collect();
    GroebnerBasis {
        ordering: gb.ordering.clone(),
        elements: engine::reduce_basis(min, &mord)
            .into_iter()
            .map(|e| e.to_poly(field, nvars))
            .collect(),
        minimal: true,
        reduced: true,
    }
}

/// A Groebner basis of the submodule generated by `gens`, minimalized.
pub fn module_buchberger(gens: &[FreeModElem], ord: &ModuleOrdering) -> Result<ModuleGroebnerBasis> {
    if !ord.is_global() {
        return Err(Error::NotGlobal);
    }
    let all: Vec<&FreeModElem> = gens.iter().collect();
    let (field, nvars, rank) = module_ring(&all)?;
    let input: Vec<Elem> = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| {
            let mut e = Elem::from_vec(g, ord);
            e.make_monic();
            e
        })
        .collect();
    let run = engine::buchberger(
        input,
        ord,
        GbOptions {
            track: false,
            product_criterion: false,
        },
    );
    let keep = engine::minimal_indices(&run.elems);
    Ok(ModuleGroebnerBasis {
        ordering: ord.clone(),
        rank,
        elements: keep
            .into_iter()
            .map(|i| run.elems[i].to_vec(field, nvars, rank))
            .collect(),
    })
}

/// Reduced form of a module Groebner basis (monic, interreduced, sorted by
/// leading term).
pub fn reduce_module_gb(gb: &ModuleGroebnerBasis) -> ModuleGroebnerBasis {
    let Some(first) = gb.elements.first() else {
        return gb.clone();
    };
    let (field, nvars) = (first.field(), first.nvars());
    let elems: Vec<Elem> = gb.elements.iter().map(|g| Elem::from_vec(g, &gb.ordering)).collect();
    let keep = engine::minimal_indices(&elems);
    let min: Vec<Elem> = keep.into_iter().map(|i| elems[i].clone()).collect();
    ModuleGroebnerBasis {
        ordering: gb.ordering.clone(),
        rank: gb.rank,
        elements: engine::reduce_basis(min, &gb.ordering)
            .into_iter()
            .map(|e| e.to_vec(field, nvars, gb.rank))
            .collect(),
    }
}

/// Checks Buchberger's criterion on `basis` as given: for every `i` and
/// every minimal generator `x^alpha` of `M_i`, the remainder of
/// `x^alpha f_i` on division by the list is zero.
pub fn satisfies_buchberger_criterion(basis: &[FreeModElem], ord: &ModuleOrdering) -> bool {
    let elems: Vec<Elem> = basis
        .iter()
        .filter(|b| !b.is_zero())
        .map(|b| Elem::from_vec(b, ord))
        .collect();
    let divs = DivisorSet::new(elems.iter());
    (0..elems.len()).all(|i| {
        engine::colon_generators(&elems, i).into_iter().all(|alpha| {
            let (_, r) = engine_divide(elems[i].mul_monomial(&alpha), &divs, ord, false);
            r.is_zero()
        })
    })
}

/// [`satisfies_buchberger_criterion`] for ideals.
pub fn is_groebner_basis(basis: &[Poly], ord: &MonomialOrdering) -> bool {
    let vs: Vec<FreeModElem> = basis
        .iter()
        .map(|p| FreeModElem::new(vec![p.clone()]).expect("rank 1"))
        .collect();
    satisfies_buchberger_criterion(&vs, &ModuleOrdering::TermOverPosition(ord.clone()))
}

/// Leading monomials of a basis.
pub fn leading_monomials(basis: &[Poly], ord: &MonomialOrdering) -> Vec<Monomial> {
    basis
        .iter()
        .filter_map(|g| g.leading_term(ord).ok().map(|(_, m)| m.clone()))
        .collect()
}

/// Monomials outside the monomial ideal generated by `leads`; errors when
/// there are infinitely many.
pub fn staircase(leads: &[Monomial], nvars: usize) -> Result<Vec<Monomial>> {
    if leads.iter().any(Monomial::is_one) {
        return Ok(Vec::new());
    }
    let mut bounds = vec![0u32; nvars];
    for (i, b) in bounds.iter_mut().enumerate() {
        *b = leads
            .iter()
            .filter(|m| m.support().all(|j| j == i))
            .map(|m| m.exponents()[i])
            .filter(|&e| e > 0)
            .min()
            .ok_or(Error::InfiniteStaircase)?;
    }
    let mut out = Vec::new();
    let mut cur = vec![0u32; nvars];
    fn rec(i: usize, cur: &mut Vec<u32>, bounds: &[u32], leads: &[Monomial], out: &mut Vec<Monomial>) {
        if i == cur.len() {
            let m = Monomial::from_exponents(cur);
            if !leads.iter().any(|l| l.divides(&m)) {
                out.push(m);
            }
            return;
        }
        for e in 0..bounds[i] {
            cur[i] = e;
            // prune: if the partial monomial is already in the ideal, so is
            // everything above it
            let partial = Monomial::from_exponents(cur);
            if leads.iter().any(|l| l.divides(&partial)) {
                break;
            }
            rec(i + 1, cur, bounds, leads, out);
        }
        cur[i] = 0;
    }
    rec(0, &mut cur, &bounds, leads, &mut out);
    out.sort_by(|a, b| a.canonical_cmp(b));
    Ok(out)
}

pub(crate) type SharedGb = Arc<GroebnerBasis>;

#[cfg(test)]
mod tests;
