//! Syzygies, Schreyer's test syzygies, kernels and subquotients.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::gbasis::engine::{self, divide, DivisorSet, Elem, GbOptions};
use crate::poly::{FreeModElem, ModuleOrdering, Monomial, MonomialOrdering, Poly, PolyMatrix};

/// Buchberger's test syzygies of a Groebner basis, a Groebner basis of the
/// syzygy module for the induced ordering.
#[derive(Clone, Debug)]
pub struct SchreyerSyzygies {
    /// The ordering on `R^len(G)` induced by the basis.
    pub ordering: ModuleOrdering,
    pub syzygies: Vec<FreeModElem>,
    /// `(x^alpha, i)` such that the leading term of the syzygy is
    /// `x^alpha e_i`.
    pub leads: Vec<(Monomial, usize)>,
}

fn ring_of(vs: &[FreeModElem]) -> Result<(Field, usize, usize)> {
    let first = vs
        .first()
        .ok_or_else(|| Error::InvalidArgument("no generators".into()))?;
    let (field, nvars, rank) = (first.field(), first.nvars(), first.rank());
    for v in vs {
        if v.rank() != rank {
            return Err(Error::LengthMismatch {
                expected: rank,
                found: v.rank(),
            });
        }
        if v.nvars() != nvars {
            return Err(Error::RingMismatch);
        }
        if v.field() != field {
            return Err(Error::FieldMismatch(field.to_string(), v.field().to_string()));
        }
    }
    Ok((field, nvars, rank))
}

/// For each `i` and each minimal generator `x^alpha` of `M_i`, divides
/// `x^alpha g_i` by the basis and records `x^alpha e_i - sum q_j e_j`.
/// Fails if some remainder is nonzero (the input is then not a Groebner
/// basis).
pub fn schreyer_syzygies(basis: &[FreeModElem], ord: &ModuleOrdering) -> Result<SchreyerSyzygies> {
    if !ord.is_global() {
        return Err(Error::NotGlobal);
    }
    let (field, nvars, _) = ring_of(basis)?;
    if basis.iter().any(FreeModElem::is_zero) {
        return Err(Error::ZeroInput("Groebner basis element"));
    }
    let elems: Vec<Elem> = basis.iter().map(|b| Elem::from_vec(b, ord)).collect();
    let divs = DivisorSet::new(elems.iter());
    let n = elems.len();
    let induced = ModuleOrdering::schreyer(
        elems.iter().map(|e| (e.lead().m.clone(), e.lead().comp)).collect(),
        ord.clone(),
    );
    let mut syzygies = Vec::new();
    let mut leads = Vec::new();
    for i in 0..n {
        for alpha in engine::colon_generators(&elems, i) {
            let (q, r) = divide(elems[i].mul_monomial(&alpha), &divs, ord, true);
            if !r.is_zero() {
                return Err(Error::NotGroebnerBasis(format!(
                    "element {} fails the Buchberger test",
                    i + 1
                )));
            }
            let mut comps: Vec<Poly> = q.into_iter().map(|t| -&Poly::from_terms(field, nvars, t)).collect();
            comps[i] = &comps[i] + &Poly::term(field.one(), alpha.clone());
            syzygies.push(FreeModElem::new(comps)?);
            leads.push((alpha, i));
        }
    }
    Ok(SchreyerSyzygies {
        ordering: induced,
        syzygies,
        leads,
    })
}

/// Generators of the kernel of `R^r -> F, e_i -> gens[i]`, as the columns
/// of an `r x k` matrix.
///
/// The generators are extended to a Groebner basis while every Buchberger
/// test is recorded. The test syzygies of the extended list are split into
/// the block matrix `[[A, B], [C, D]]` (rows: original/new elements,
/// columns: tests that produced a new element/the rest) with `C` unit upper
/// triangular, and the answer is `B - A C^-1 D`.
pub fn syzygies_on_generators(gens: &[FreeModElem], ord: &MonomialOrdering) -> Result<PolyMatrix> {
    let (field, nvars, _) = ring_of(gens)?;
    let r = gens.len();
    let mord = ModuleOrdering::TermOverPosition(ord.clone());
    if !mord.is_global() {
        return Err(Error::NotGlobal);
    }
    let nonzero: Vec<usize> = (0..r).filter(|&i| !gens[i].is_zero()).collect();
    let mut columns: Vec<FreeModElem> = Vec::new();
    if !nonzero.is_empty() {
        let input: Vec<Elem> = nonzero.iter().map(|&i| Elem::from_vec(&gens[i], &mord)).collect();
        let n = input.len();
        let run = engine::buchberger(
            input,
            &mord,
            GbOptions {
                track: true,
                product_criterion: false,
            },
        );
        let total = run.elems.len();
        let m = total - n;
        let zero = Poly::zero(field, nvars);
        // dense test syzygies in R^total
        let mut producing: Vec<Option<Vec<Poly>>> = vec![None; m];
        let mut others: Vec<Vec<Poly>> = Vec::new();
        for t in run.tests {
            let mut v = vec![zero.clone(); total];
            for (j, q) in t.quotients {
                v[j] = -&Poly::from_terms(field, nvars, q);
            }
            v[t.i] = &v[t.i] + &Poly::term(field.one(), t.alpha);
            match t.produced {
                Some(k) => {
                    v[k] = &v[k] - &Poly::one(field, nvars);
                    // normalize the diagonal of C to 1
                    producing[k - n] = Some(v.iter().map(|p| -p).collect());
                }
                None => others.push(v),
            }
        }
        let producing: Vec<Vec<Poly>> = producing
            .into_iter()
            .map(|v| v.expect("one test per new element"))
            .collect();
        for d in others {
            // solve C x = D_col by back substitution; C[i][k] = producing[k][n + i]
            let mut x: Vec<Poly> = vec![zero.clone(); m];
            for i in (0..m).rev() {
                let mut acc = d[n + i].clone();
                for (k, xk) in x.iter().enumerate().skip(i + 1) {
                    let c = &producing[k][n + i];
                    if !c.is_zero() && !xk.is_zero() {
                        acc = &acc - &(c * xk);
                    }
                }
                debug_assert!(producing[i][n + i].is_one());
                x[i] = acc;
            }
            let mut col: Vec<Poly> = d[..n].to_vec();
            for (k, xk) in x.iter().enumerate() {
                if xk.is_zero() {
                    continue;
                }
                for (row, entry) in col.iter_mut().enumerate() {
                    let a = &producing[k][row];
                    if !a.is_zero() {
                        *entry = &*entry - &(a * xk);
                    }
                }
            }
            if col.iter().all(Poly::is_zero) {
                continue;
            }
            let mut full = vec![zero.clone(); r];
            for (pos, &orig) in nonzero.iter().enumerate() {
                full[orig] = col[pos].clone();
            }
            columns.push(FreeModElem::new(full)?);
        }
    }
    for i in (0..r).filter(|&i| gens[i].is_zero()) {
        columns.push(FreeModElem::unit(field, nvars, r, i));
    }
    PolyMatrix::from_columns(field, nvars, r, &columns)
}

/// Syzygies of the columns of `a`.
pub fn syzygy_matrix(a: &PolyMatrix, ord: &MonomialOrdering) -> Result<PolyMatrix> {
    if a.cols() == 0 {
        return Ok(PolyMatrix::zeros(a.field(), a.nvars(), 0, 0));
    }
    if a.rows() == 0 {
        return Ok(PolyMatrix::identity(a.field(), a.nvars(), a.cols()));
    }
    syzygies_on_generators(&a.columns(), ord)
}

/// `(im A + im B) / im B` inside the ambient free module `R^s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subquotient {
    generators: PolyMatrix,
    relations: PolyMatrix,
}

impl Subquotient {
    pub fn new(generators: PolyMatrix, relations: PolyMatrix) -> Result<Self> {
        if generators.rows() != relations.rows() {
            return Err(Error::DimensionMismatch(format!(
                "ambient ranks differ ({} vs {})",
                generators.rows(),
                relations.rows()
            )));
        }
        if generators.nvars() != relations.nvars() {
            return Err(Error::RingMismatch);
        }
        Ok(Subquotient { generators, relations })
    }

    pub fn ambient_rank(&self) -> usize {
        self.generators.rows()
    }

    pub fn generators(&self) -> &PolyMatrix {
        &self.generators
    }

    pub fn relations(&self) -> &PolyMatrix {
        &self.relations
    }

    /// A matrix `P` with `coker(P)` isomorphic to the module: the
    /// generator block of the syzygies of `(A | B)`.
    pub fn presentation(&self, ord: &MonomialOrdering) -> Result<PolyMatrix> {
        let a = self.generators.cols();
        let both = self.generators.hconcat(&self.relations)?;
        let syz = syzygy_matrix(&both, ord)?;
        Ok(syz.row_block(0, a).compact())
    }
}

/// The kernel of a map of finitely presented modules `coker(phi) ->
/// coker(psi)` induced by `phi0`.
#[derive(Clone, Debug)]
pub struct Kernel {
    /// Ambient representatives in `R^{r0}` of the kernel generators.
    pub generators: PolyMatrix,
    /// A presentation matrix of the kernel.
    pub presentation: PolyMatrix,
}

/// Kernel of the map given by the commutative square with rows
/// `R^{r1} --phi--> R^{r0} -> M` and `R^{s1} --psi--> R^{s0} -> N`, where
/// `phi0: R^{r0} -> R^{s0}` lifts the map.
pub fn kernel(phi0: &PolyMatrix, psi: &PolyMatrix, phi: &PolyMatrix, ord: &MonomialOrdering) -> Result<Kernel> {
    if phi0.rows() != psi.rows() {
        return Err(Error::DimensionMismatch(format!(
            "phi0 has {} rows but psi has {}",
            phi0.rows(),
            psi.rows()
        )));
    }
    if phi.rows() != phi0.cols() {
        return Err(Error::DimensionMismatch(format!(
            "phi has {} rows but phi0 has {} columns",
            phi.rows(),
            phi0.cols()
        )));
    }
    let r0 = phi0.cols();
    let step1 = syzygy_matrix(&phi0.hconcat(psi)?, ord)?;
    let a = step1.row_block(0, r0).compact();
    let t0 = a.cols();
    let step2 = syzygy_matrix(&a.hconcat(phi)?, ord)?;
    let c = step2.row_block(0, t0).compact();
    Ok(Kernel {
        generators: a,
        presentation: c,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gbasis::{reduce_gb, satisfies_buchberger_criterion, Ideal};
    use crate::poly::{PolyRing, Ring};
    use proptest::prelude::*;

    fn ring(names: &[&str]) -> Ring {
        PolyRing::new(Field::Rationals, names.iter().copied())
            .unwrap()
            .into_shared()
    }

    fn matrix(r: &Ring, rows: &[&[&str]]) -> PolyMatrix {
        PolyMatrix::from_rows(
            r.field(),
            r.nvars(),
            rows.iter()
                .map(|row| row.iter().map(|s| r.parse(s).unwrap()).collect())
                .collect(),
        )
        .unwrap()
    }

    fn annihilates(a: &PolyMatrix, syz: &PolyMatrix) -> bool {
        syz.cols() == 0 || a.checked_mul(syz).unwrap().is_zero()
    }

    #[test]
    fn koszul_pair() {
        let r = ring(&["x", "y"]);
        let a = matrix(&r, &[&["x", "y"]]);
        let s = syzygy_matrix(&a, &MonomialOrdering::DegRevLex).unwrap();
        assert_eq!(s.cols(), 1);
        assert!(annihilates(&a, &s));
        let col = s.column(0);
        let want = FreeModElem::new(vec![r.parse("y").unwrap(), r.parse("-x").unwrap()]).unwrap();
        let neg = FreeModElem::new(vec![r.parse("-y").unwrap(), r.parse("x").unwrap()]).unwrap();
        assert!(col == want || col == neg);
    }

    #[test]
    fn independent_generator_has_no_syzygies() {
        let r = ring(&["x", "y"]);
        let a = matrix(&r, &[&["x^2 + y"]]);
        assert_eq!(syzygy_matrix(&a, &MonomialOrdering::DegRevLex).unwrap().cols(), 0);
    }

    #[test]
    fn zero_generators_give_unit_syzygies() {
        let r = ring(&["x"]);
        let a = matrix(&r, &[&["x", "0"]]);
        let s = syzygy_matrix(&a, &MonomialOrdering::DegRevLex).unwrap();
        assert_eq!(s.cols(), 1);
        assert_eq!(s.column(0), FreeModElem::unit(r.field(), 1, 2, 1));
    }

    #[test]
    fn intersection_from_first_row() {
        let r = ring(&["x0", "x1", "x2", "x3"]);
        let a = matrix(&r, &[&["1", "x0", "x1", "0", "0"], &["1", "0", "0", "x2", "x3"]]);
        let s = syzygy_matrix(&a, &MonomialOrdering::DegRevLex).unwrap();
        assert!(annihilates(&a, &s));
        let first = Ideal::new(r.clone(), s.row(0)).unwrap();
        let red = reduce_gb(&first.groebner_basis(&MonomialOrdering::DegRevLex).unwrap());
        let mut got: Vec<String> = red.elements.iter().map(|p| r.format(p)).collect();
        got.sort();
        assert_eq!(got, vec!["x0*x2", "x0*x3", "x1*x2", "x1*x3"]);
    }

    #[test]
    fn schreyer_leading_terms() {
        let r = ring(&["w", "x", "y", "z"]);
        let j = Ideal::parse(&r, &["w^2 - x*z", "w*x - y*z", "x^2 - w*y", "x*y - z^2", "y^2 - w*z"]).unwrap();
        let gb = j.groebner_basis(&MonomialOrdering::DegRevLex).unwrap();
        let ord = ModuleOrdering::TermOverPosition(MonomialOrdering::DegRevLex);
        let vs: Vec<FreeModElem> = gb
            .elements
            .iter()
            .map(|g| FreeModElem::new(vec![g.clone()]).unwrap())
            .collect();
        let s = schreyer_syzygies(&vs, &ord).unwrap();
        let mut degs: Vec<u64> = Vec::new();
        for (syz, (alpha, i)) in s.syzygies.iter().zip(&s.leads) {
            let (_, m, c) = syz.leading_term(&s.ordering).unwrap();
            assert_eq!((&m, c), (alpha, *i));
            degs.push(alpha.degree() + 2);
        }
        degs.sort();
        assert_eq!(degs, vec![3, 3, 3, 3, 3, 4]);
        assert!(satisfies_buchberger_criterion(&s.syzygies, &s.ordering));
        let g = PolyMatrix::from_columns(r.field(), 4, 1, &vs).unwrap();
        let m = PolyMatrix::from_columns(r.field(), 4, vs.len(), &s.syzygies).unwrap();
        assert!(annihilates(&g, &m));
    }

    #[test]
    fn schreyer_rejects_non_basis() {
        let r = ring(&["x", "y"]);
        let vs: Vec<FreeModElem> = ["x^2 - y", "x*y - 1"]
            .iter()
            .map(|s| FreeModElem::new(vec![r.parse(s).unwrap()]).unwrap())
            .collect();
        let ord = ModuleOrdering::TermOverPosition(MonomialOrdering::DegRevLex);
        assert!(matches!(schreyer_syzygies(&vs, &ord), Err(Error::NotGroebnerBasis(_))));
        let one = [FreeModElem::new(vec![r.parse("x + y").unwrap()]).unwrap()];
        assert!(schreyer_syzygies(&one, &ord).unwrap().syzygies.is_empty());
    }

    #[test]
    fn kernels() {
        let r = ring(&["x", "y"]);
        let drl = MonomialOrdering::DegRevLex;
        let (f, n) = (r.field(), r.nvars());
        // identity on R
        let k = kernel(
            &matrix(&r, &[&["1"]]),
            &PolyMatrix::zeros(f, n, 1, 0),
            &PolyMatrix::zeros(f, n, 1, 0),
            &drl,
        )
        .unwrap();
        assert_eq!(k.generators.cols(), 0);
        // R^2 -> R, (a, b) -> a x + b y
        let k = kernel(
            &matrix(&r, &[&["x", "y"]]),
            &PolyMatrix::zeros(f, n, 1, 0),
            &PolyMatrix::zeros(f, n, 2, 0),
            &drl,
        )
        .unwrap();
        assert_eq!(k.generators.cols(), 1);
        assert!(annihilates(&matrix(&r, &[&["x", "y"]]), &k.generators));
        assert_eq!(k.presentation.cols(), 0);
        // S -> S/(x)
        let k = kernel(
            &matrix(&r, &[&["1"]]),
            &matrix(&r, &[&["x"]]),
            &PolyMatrix::zeros(f, n, 1, 0),
            &drl,
        )
        .unwrap();
        assert_eq!(k.generators.cols(), 1);
        let g = k.generators.get(0, 0);
        assert!(g == &r.parse("x").unwrap() || g == &r.parse("-x").unwrap());
        assert_eq!(k.presentation.cols(), 0);
        assert!(matches!(
            kernel(
                &matrix(&r, &[&["1"]]),
                &PolyMatrix::zeros(f, n, 2, 0),
                &PolyMatrix::zeros(f, n, 1, 0),
                &drl
            ),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn presentations() {
        let r = ring(&["x", "y"]);
        let drl = MonomialOrdering::DegRevLex;
        let (f, n) = (r.field(), r.nvars());
        let free = Subquotient::new(PolyMatrix::identity(f, n, 2), PolyMatrix::zeros(f, n, 2, 0)).unwrap();
        assert_eq!(free.presentation(&drl).unwrap().cols(), 0);
        let cyclic = Subquotient::new(matrix(&r, &[&["1"]]), matrix(&r, &[&["x"]])).unwrap();
        let p = cyclic.presentation(&drl).unwrap();
        assert_eq!((p.rows(), p.cols()), (1, 1));
        assert!(p.get(0, 0) == &r.parse("x").unwrap() || p.get(0, 0) == &r.parse("-x").unwrap());
        let max = Subquotient::new(matrix(&r, &[&["x", "y"]]), PolyMatrix::zeros(f, n, 1, 0)).unwrap();
        let p = max.presentation(&drl).unwrap();
        let direct = syzygy_matrix(&matrix(&r, &[&["x", "y"]]), &drl).unwrap();
        assert_eq!(p, direct);
        assert!(Subquotient::new(PolyMatrix::identity(f, n, 2), PolyMatrix::zeros(f, n, 1, 0)).is_err());
    }

    fn arb_entry() -> impl Strategy<Value = Vec<(i64, [u32; 3])>> {
        prop::collection::vec((-3i64..=3, [0u32..=2, 0u32..=2, 0u32..=2]), 0..3)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(30))]

        #[test]
        fn syzygies_annihilate(entries in prop::collection::vec(arb_entry(), 2..7), rows in 1usize..3) {
            let f = Field::Rationals;
            let cols = entries.len() / rows;
            prop_assume!(cols >= 1);
            let polys: Vec<Poly> = entries.into_iter().take(rows * cols).map(|ts| {
                Poly::from_terms(f, 3, ts.into_iter().map(|(c, e)| (f.from_i64(c), Monomial::from_exponents(&e))).collect())
            }).collect();
            let a = PolyMatrix::from_rows(f, 3, polys.chunks(cols).map(|c| c.to_vec()).collect()).unwrap();
            let s = syzygy_matrix(&a, &MonomialOrdering::DegRevLex).unwrap();
            prop_assert!(annihilates(&a, &s));
        }
    }
}
