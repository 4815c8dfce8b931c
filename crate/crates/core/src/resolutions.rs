//! Schreyer free resolutions, minimization, Betti tables and Hilbert data.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::field::{Coeff, Field};
use crate::gbasis::{module_buchberger, reduce_module_gb, Ideal};
use crate::modsyz::{schreyer_syzygies, Subquotient};
use crate::poly::{FreeModElem, ModuleOrdering, Monomial, MonomialOrdering, PolyMatrix};

/// A free resolution `F_0 <- F_1 <- ... <- F_c` with `F_i = ⊕ S(-j)`.
///
/// `twists[i][k]` is the degree of the `k`-th basis vector of `F_i` and
/// `differentials[i]` is the matrix of `F_{i+1} -> F_i`. For ungraded
/// input the twists record the degrees of the leading terms and carry no
/// grading.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedFreeResolution {
    field: Field,
    nvars: usize,
    graded: bool,
    twists: Vec<Vec<i64>>,
    differentials: Vec<PolyMatrix>,
}

impl GradedFreeResolution {
    pub fn field(&self) -> Field {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_graded(&self) -> bool {
        self.graded
    }

    /// Twist vectors of `F_0, ..., F_c`.
    pub fn twists(&self) -> &[Vec<i64>] {
        &self.twists
    }

    /// `differentials()[i]` maps `F_{i+1}` to `F_i`.
    pub fn differentials(&self) -> &[PolyMatrix] {
        &self.differentials
    }

    /// Index of the last nonzero module.
    pub fn length(&self) -> usize {
        self.twists.len().saturating_sub(1)
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.twists.iter().map(Vec::len).collect()
    }

    /// Every composition `F_{i+2} -> F_{i+1} -> F_i` is zero.
    pub fn is_complex(&self) -> bool {
        self.differentials.windows(2).all(|w| {
            w[0].cols() == 0 || w[1].cols() == 0 || w[0].checked_mul(&w[1]).map(|p| p.is_zero()).unwrap_or(false)
        })
    }

    /// No differential has a nonzero constant entry.
    pub fn is_minimal(&self) -> bool {
        self.differentials.iter().all(|d| find_unit(d).is_none())
    }

    /// Shape like `S <- S^5(-2) <- S^5(-3)+S(-4)`.
    pub fn shape(&self) -> String {
        self.twists
            .iter()
            .map(|t| format_free_module(t))
            .collect::<Vec<_>>()
            .join(" <- ")
    }
}

fn format_free_module(twists: &[i64]) -> String {
    if twists.is_empty() {
        return "0".into();
    }
    let mut counts: BTreeMap<i64, usize> = BTreeMap::new();
    for &t in twists {
        *counts.entry(t).or_default() += 1;
    }
    counts
        .iter()
        .map(|(&t, &c)| {
            let power = if c > 1 { format!("^{c}") } else { String::new() };
            let twist = if t == 0 { String::new() } else { format!("({})", -t) };
            format!("S{power}{twist}")
        })
        .collect::<Vec<_>>()
        .join("+")
}

/// Key of the resolution sort rule: component, degree of the monomial,
/// then degrevlex descending.
fn sort_key_cmp(a: &(Monomial, usize), b: &(Monomial, usize)) -> std::cmp::Ordering {
    a.1.cmp(&b.1)
        .then_with(|| a.0.degree().cmp(&b.0.degree()))
        .then_with(|| MonomialOrdering::DegRevLex.cmp(&b.0, &a.0))
}

fn sorted_by_leads(
    elems: Vec<FreeModElem>,
    leads: Vec<(Monomial, usize)>,
) -> (Vec<FreeModElem>, Vec<(Monomial, usize)>) {
    let mut idx: Vec<usize> = (0..elems.len()).collect();
    idx.sort_by(|&i, &j| sort_key_cmp(&leads[i], &leads[j]));
    let mut elems: Vec<Option<FreeModElem>> = elems.into_iter().map(Some).collect();
    let e = idx.iter().map(|&i| elems[i].take().expect("permutation")).collect();
    let l = idx.iter().map(|&i| leads[i].clone()).collect();
    (e, l)
}

/// Schreyer's resolution of `coker(F_0 <- kernel generators)`.
fn schreyer(
    field: Field,
    nvars: usize,
    f0_twists: Vec<i64>,
    kernel_gens: Vec<FreeModElem>,
    graded: bool,
) -> Result<GradedFreeResolution> {
    let rank0 = f0_twists.len();
    let base = ModuleOrdering::PositionOverTerm(MonomialOrdering::DegRevLex);
    let mut twists = vec![f0_twists];
    let mut differentials = Vec::new();
    let nonzero: Vec<FreeModElem> = kernel_gens.into_iter().filter(|g| !g.is_zero()).collect();
    if nonzero.is_empty() {
        return finish(field, nvars, graded, twists, differentials);
    }
    let gb = reduce_module_gb(&module_buchberger(&nonzero, &base)?);
    let leads: Vec<(Monomial, usize)> = gb
        .elements
        .iter()
        .map(|g| g.leading_term(&base).map(|(_, m, c)| (m, c)))
        .collect::<Result<_>>()?;
    let (mut basis, mut leads) = sorted_by_leads(gb.elements, leads);
    let mut ord = base;
    for step in 0.. {
        if step > nvars + 1 {
            return Err(Error::NoConvergence(
                "Schreyer resolution exceeded its length bound".into(),
            ));
        }
        let prev = twists.last().expect("F_0");
        let cur: Vec<i64> = leads.iter().map(|(m, c)| m.degree() as i64 + prev[*c]).collect();
        let rows = if step == 0 { rank0 } else { prev.len() };
        differentials.push(PolyMatrix::from_columns(field, nvars, rows, &basis)?);
        twists.push(cur);
        let syz = schreyer_syzygies(&basis, &ord)?;
        if syz.syzygies.is_empty() {
            break;
        }
        let (b, l) = sorted_by_leads(syz.syzygies, syz.leads);
        // the induced ordering refers to `basis` in its current order
        ord = syz.ordering;
        basis = b;
        leads = l;
    }
    finish(field, nvars, graded, twists, differentials)
}

fn finish(
    field: Field,
    nvars: usize,
    graded: bool,
    twists: Vec<Vec<i64>>,
    differentials: Vec<PolyMatrix>,
) -> Result<GradedFreeResolution> {
    let mut differentials = differentials;
    for (i, d) in differentials.iter_mut().enumerate() {
        if graded {
            *d = d.clone().with_twists(twists[i].clone(), twists[i + 1].clone())?;
        } else {
            d.set_twists_unchecked(twists[i].clone(), twists[i + 1].clone());
        }
    }
    Ok(GradedFreeResolution {
        field,
        nvars,
        graded,
        twists,
        differentials,
    })
}

/// Resolution of `S/I`.
pub fn resolve_quotient(i: &Ideal, graded: bool) -> Result<GradedFreeResolution> {
    let ring = i.ring();
    if graded && !(ring.is_standard_graded() && i.is_homogeneous()) {
        return Err(Error::NonHomogeneous(
            "graded resolution of a non-homogeneous ideal".into(),
        ));
    }
    let (field, n) = (ring.field(), ring.nvars());
    let gens = i
        .gens()
        .iter()
        .map(|g| FreeModElem::new(vec![g.clone()]))
        .collect::<Result<Vec<_>>>()?;
    schreyer(field, n, vec![0], gens, graded)
}

/// Degree of each column of `a`, given the twists of the ambient basis.
fn column_degrees(a: &PolyMatrix, ambient: &[i64]) -> Result<Vec<i64>> {
    (0..a.cols())
        .map(|j| {
            let mut deg = None;
            for (i, &t) in ambient.iter().enumerate() {
                for (_, m) in a.get(i, j).terms() {
                    let d = m.degree() as i64 + t;
                    match deg {
                        None => deg = Some(d),
                        Some(e) if e != d => {
                            return Err(Error::NonHomogeneous(format!("column {} is not homogeneous", j + 1)))
                        }
                        _ => {}
                    }
                }
            }
            Ok(deg.unwrap_or(0))
        })
        .collect()
}

/// Resolution of a subquotient, starting from its presentation. The
/// ambient basis is graded by the row twists of the generator matrix
/// (zero when absent).
pub fn resolve_module(m: &Subquotient, graded: bool) -> Result<GradedFreeResolution> {
    let a = m.generators();
    let (field, n) = (a.field(), a.nvars());
    let ambient: Vec<i64> = a.row_twists().map(<[i64]>::to_vec).unwrap_or_else(|| vec![0; a.rows()]);
    let f0 = if graded {
        column_degrees(m.relations(), &ambient)?;
        column_degrees(a, &ambient)?
    } else {
        column_degrees(a, &ambient).unwrap_or_else(|_| vec![0; a.cols()])
    };
    let p = m.presentation(&MonomialOrdering::DegRevLex)?;
    schreyer(field, n, f0, p.columns(), graded)
}

/// Leftmost-topmost nonzero constant entry.
fn find_unit(d: &PolyMatrix) -> Option<(usize, usize)> {
    (0..d.cols()).find_map(|j| {
        (0..d.rows())
            .find(|&i| d.get(i, j).is_constant() && !d.get(i, j).is_zero())
            .map(|i| (i, j))
    })
}

/// Cancels unit entries one pair at a time until none remain; the result
/// resolves the same module.
pub fn minimize(res: &GradedFreeResolution) -> GradedFreeResolution {
    let mut twists = res.twists.clone();
    let mut ds = res.differentials.clone();
    'outer: loop {
        for k in 0..ds.len() {
            let Some((i, j)) = find_unit(&ds[k]) else { continue };
            let d = &ds[k];
            let u_inv = d.get(i, j).constant_coeff().inv().expect("nonzero constant");
            let mut next = d.clone();
            for a in 0..d.rows() {
                let daj = d.get(a, j);
                if a == i || daj.is_zero() {
                    continue;
                }
                let factor = daj.scale(&u_inv);
                for b in 0..d.cols() {
                    if b == j || d.get(i, b).is_zero() {
                        continue;
                    }
                    let corrected = d.get(a, b) - &(&factor * d.get(i, b));
                    next.set(a, b, corrected);
                }
            }
            next.remove_row(i);
            next.remove_col(j);
            ds[k] = next;
            if k + 1 < ds.len() {
                ds[k + 1].remove_row(j);
            }
            if k > 0 {
                ds[k - 1].remove_col(i);
            }
            twists[k + 1].remove(j);
            twists[k].remove(i);
            continue 'outer;
        }
        break;
    }
    while twists.len() > 1 && twists.last().is_some_and(Vec::is_empty) {
        twists.pop();
        ds.pop();
    }
    GradedFreeResolution {
        field: res.field,
        nvars: res.nvars,
        graded: res.graded,
        twists,
        differentials: ds,
    }
}

/// Graded Betti numbers `β_{ij}` keyed by `(i, j)`, displayed as
/// `b_{ij} = β_{i,i+j}`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BettiTable {
    entries: BTreeMap<(usize, i64), usize>,
}

impl BettiTable {
    pub fn from_entries(entries: impl IntoIterator<Item = ((usize, i64), usize)>) -> Self {
        BettiTable {
            entries: entries.into_iter().filter(|&(_, v)| v > 0).collect(),
        }
    }

    /// `β_{ij}`.
    pub fn beta(&self, i: usize, j: i64) -> usize {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    /// `b_{ij} = β_{i,i+j}`.
    pub fn b(&self, i: usize, j: i64) -> usize {
        self.beta(i, i as i64 + j)
    }

    pub fn entries(&self) -> &BTreeMap<(usize, i64), usize> {
        &self.entries
    }

    /// Sum over `j` for each homological index `0..=max`.
    pub fn totals(&self) -> Vec<usize> {
        let Some(max) = self.entries.keys().map(|k| k.0).max() else {
            return Vec::new();
        };
        let mut t = vec![0; max + 1];
        for (&(i, _), &v) in &self.entries {
            t[i] += v;
        }
        t
    }

    /// Text layout with rows `j`, columns `i`, zero entries as `-` and a
    /// total row.
    pub fn render(&self) -> String {
        let totals = self.totals();
        if totals.is_empty() {
            return "(zero module)\n".into();
        }
        let rows: Vec<i64> = {
            let lo = self.entries.keys().map(|&(i, j)| j - i as i64).min().expect("nonempty");
            let hi = self.entries.keys().map(|&(i, j)| j - i as i64).max().expect("nonempty");
            (lo..=hi).collect()
        };
        let width = totals
            .iter()
            .map(|t| t.to_string().len())
            .max()
            .unwrap_or(1)
            .max((0..totals.len()).map(|i| i.to_string().len()).max().unwrap_or(1));
        let label = rows.iter().map(|r| r.to_string().len()).max().unwrap_or(1).max(6);
        let cell = |s: String| format!(" {s:>width$}");
        let mut out = format!("{:label$}", "");
        for i in 0..totals.len() {
            out += &cell(i.to_string());
        }
        let rule = "-".repeat(label + (width + 1) * totals.len());
        out += &format!("\n{rule}\n");
        for &j in &rows {
            out += &format!("{:<label$}", format!("{j}:"));
            for i in 0..totals.len() {
                let v = self.b(i, j);
                out += &cell(if v == 0 { "-".into() } else { v.to_string() });
            }
            out.push('\n');
        }
        out += &format!("{rule}\n{:<label$}", "total:");
        for t in &totals {
            out += &cell(t.to_string());
        }
        out.push('\n');
        out
    }
}

impl fmt::Display for BettiTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Ranks per twist of the given (possibly non-minimal) resolution.
pub fn betti_table(res: &GradedFreeResolution) -> BettiTable {
    let mut entries = BTreeMap::new();
    for (i, t) in res.twists.iter().enumerate() {
        for &j in t {
            *entries.entry((i, j)).or_insert(0) += 1;
        }
    }
    BettiTable::from_entries(entries)
}

fn require_graded(res: &GradedFreeResolution) -> Result<()> {
    if !res.graded {
        return Err(Error::NonHomogeneous("the resolution is not graded".into()));
    }
    Ok(())
}

/// Rank of a matrix over a field by Gaussian elimination.
pub fn rank(mut rows: Vec<Vec<Coeff>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inv().expect("nonzero pivot");
        for i in r + 1..rows.len() {
            if rows[i][c].is_zero() {
                continue;
            }
            let f = &rows[i][c] * &inv;
            for k in c..ncols {
                let delta = &f * &rows[r][k];
                rows[i][k] = &rows[i][k] - &delta;
            }
        }
        r += 1;
    }
    r
}

/// `β_{ij} = dim H_i(F ⊗ k)_j`, from ranks of the constant parts of the
/// differentials restricted to each degree.
pub fn minimal_betti(res: &GradedFreeResolution) -> Result<BettiTable> {
    require_graded(res)?;
    let strand_rank = |k: usize, j: i64| -> usize {
        // rank of F_{k+1} -> F_k in degree j
        let Some(d) = res.differentials.get(k) else { return 0 };
        let rows: Vec<usize> = (0..d.rows()).filter(|&a| res.twists[k][a] == j).collect();
        let cols: Vec<usize> = (0..d.cols()).filter(|&b| res.twists[k + 1][b] == j).collect();
        if rows.is_empty() || cols.is_empty() {
            return 0;
        }
        rank(
            rows.iter()
                .map(|&a| cols.iter().map(|&b| d.get(a, b).constant_coeff()).collect())
                .collect(),
        )
    };
    let mut entries = BTreeMap::new();
    for (i, t) in res.twists.iter().enumerate() {
        let mut degrees: Vec<i64> = t.clone();
        degrees.sort_unstable();
        degrees.dedup();
        for j in degrees {
            let n = t.iter().filter(|&&x| x == j).count();
            let outgoing = if i > 0 { strand_rank(i - 1, j) } else { 0 };
            let incoming = strand_rank(i, j);
            entries.insert((i, j), n - outgoing - incoming);
        }
    }
    Ok(BettiTable::from_entries(entries))
}

/// Minimal Betti numbers of `S/I` for a homogeneous ideal.
pub fn minimal_betti_of_quotient(i: &Ideal) -> Result<BettiTable> {
    minimal_betti(&resolve_quotient(i, true)?)
}

fn binomial(top: i64, k: u32) -> BigInt {
    if top < k as i64 || top < 0 {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for l in 0..k as i64 {
        acc = acc * BigInt::from(top - l) / BigInt::from(l + 1);
    }
    acc
}

/// `H_M(d)` from the alternating sum over the resolution, with binomial
/// coefficients taken as zero when the top is smaller than the bottom.
pub fn hilbert_function(res: &GradedFreeResolution, d: i64) -> Result<BigInt> {
    require_graded(res)?;
    let k = (res.nvars as u32).saturating_sub(1);
    let mut total = BigInt::zero();
    for (i, t) in res.twists.iter().enumerate() {
        for &j in t {
            let term = if res.nvars == 0 {
                BigInt::from((d == j) as i64)
            } else {
                binomial(d - j + k as i64, k)
            };
            if i % 2 == 0 {
                total += term;
            } else {
                total -= term;
            }
        }
    }
    Ok(total)
}

/// A polynomial in `t` with rational coefficients, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly {
    coeffs: Vec<BigRational>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> BigRational {
        self.coeffs.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn eval(&self, t: &BigRational) -> BigRational {
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * t + c)
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        UniPoly::new(
            (0..n)
                .map(|i| {
                    let a = self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero);
                    let b = other.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero);
                    a + b
                })
                .collect(),
        )
    }

    pub fn scale(&self, c: &BigRational) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Multiplies by `t + a`.
    pub fn mul_linear(&self, a: &BigRational) -> UniPoly {
        let mut out = vec![BigRational::zero(); self.coeffs.len() + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i + 1] += c;
            out[i] += c * a;
        }
        UniPoly::new(out)
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (e, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let mono = match e {
                0 => String::new(),
                1 => "t".into(),
                _ => format!("t^{e}"),
            };
            if mono.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                f.write_str(&mono)?;
            } else {
                write!(f, "{abs}*{mono}")?;
            }
        }
        Ok(())
    }
}

/// Hilbert polynomial with the invariants read off it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertData {
    pub polynomial: UniPoly,
    /// Degree of the polynomial, `-1` when it vanishes.
    pub projective_dim: i64,
    pub degree: BigInt,
    pub arithmetic_genus: BigInt,
}

/// The polynomial `Σ (-1)^i β_{ij} C(t+n-j, n)` over `n + 1` variables
/// and the dimension, degree and arithmetic genus it determines.
pub fn hilbert_data(res: &GradedFreeResolution) -> Result<HilbertData> {
    require_graded(res)?;
    let k = res.nvars.saturating_sub(1);
    let mut fact = BigInt::one();
    for l in 1..=k {
        fact *= BigInt::from(l);
    }
    let mut p = UniPoly::zero();
    for (i, t) in res.twists.iter().enumerate() {
        for &j in t {
            let mut term = UniPoly::new(vec![BigRational::one()]);
            for l in 1..=k as i64 {
                term = term.mul_linear(&BigRational::from_integer(BigInt::from(l - j)));
            }
            let sign = if i % 2 == 0 { BigInt::one() } else { -BigInt::one() };
            p = p.add(&term.scale(&BigRational::new(sign, fact.clone())));
        }
    }
    if res.nvars == 0 {
        p = UniPoly::zero();
    }
    let (r, degree) = match p.degree() {
        None => (-1, BigInt::zero()),
        Some(r) => {
            let mut rf = BigInt::one();
            for l in 1..=r {
                rf *= BigInt::from(l);
            }
            (
                r as i64,
                (p.leading_coeff() * BigRational::from_integer(rf)).to_integer(),
            )
        }
    };
    let p0 = p.eval(&BigRational::zero()).to_integer() - BigInt::one();
    let arithmetic_genus = if r.rem_euclid(2) == 0 { p0 } else { -p0 };
    Ok(HilbertData {
        polynomial: p,
        projective_dim: r,
        degree,
        arithmetic_genus,
    })
}

impl HilbertData {
    pub fn eval(&self, d: i64) -> BigRational {
        self.polynomial.eval(&BigRational::from_integer(BigInt::from(d)))
    }

    /// Genus as a machine integer when it fits.
    pub fn genus_i64(&self) -> Option<i64> {
        self.arithmetic_genus.to_i64()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{PolyRing, Ring};
    use proptest::prelude::*;

    fn ring(names: &[&str]) -> Ring {
        PolyRing::new(Field::Rationals, names.iter().copied())
            .unwrap()
            .into_shared()
    }

    fn five_quadrics() -> Ideal {
        let r = ring(&["w", "x", "y", "z"]);
        Ideal::parse(&r, &["w^2 - x*z", "w*x - y*z", "x^2 - w*y", "x*y - z^2", "y^2 - w*z"]).unwrap()
    }

    fn sorted(mut v: Vec<i64>) -> Vec<i64> {
        v.sort_unstable();
        v
    }

    #[test]
    fn five_quadrics_schreyer_shape() {
        let j = five_quadrics();
        let res = resolve_quotient(&j, true).unwrap();
        assert_eq!(res.ranks(), vec![1, 5, 6, 2]);
        assert_eq!(res.twists()[1], vec![2; 5]);
        assert_eq!(sorted(res.twists()[2].clone()), vec![3, 3, 3, 3, 3, 4]);
        assert_eq!(sorted(res.twists()[3].clone()), vec![4, 5]);
        assert!(res.is_complex());
        assert!(!res.is_minimal());
        assert_eq!(res.shape(), "S <- S^5(-2) <- S^5(-3)+S(-4) <- S(-4)+S(-5)");
        let t = betti_table(&res);
        assert_eq!(t.b(2, 2), 1);
        assert_eq!(t.b(3, 1), 1);

        // the first differential lists the generators in the table order
        let r = j.ring();
        let d1: Vec<String> = res.differentials()[0].row(0).iter().map(|p| r.format(p)).collect();
        assert_eq!(
            d1,
            vec!["w^2 - x*z", "w*x - y*z", "x^2 - w*y", "x*y - z^2", "y^2 - w*z"]
        );
    }

    #[test]
    fn five_quadrics_minimal() {
        let res = resolve_quotient(&five_quadrics(), true).unwrap();
        let min = minimize(&res);
        assert_eq!(min.shape(), "S <- S^5(-2) <- S^5(-3) <- S(-5)");
        assert!(min.is_complex());
        assert!(min.is_minimal());
        let expect = BettiTable::from_entries([((0, 0), 1), ((1, 2), 5), ((2, 3), 5), ((3, 5), 1)]);
        assert_eq!(betti_table(&min), expect);
        assert_eq!(minimal_betti(&res).unwrap(), expect);
        assert_eq!(minimize(&min), min);
        for d in 0..12 {
            assert_eq!(hilbert_function(&res, d).unwrap(), hilbert_function(&min, d).unwrap());
        }
    }

    #[test]
    fn five_points_hilbert() {
        let j = five_quadrics();
        let res = resolve_quotient(&j, true).unwrap();
        let oracle = |d: i64| {
            let c = |top: i64| binomial(top, 3);
            c(d + 3) - BigInt::from(5) * c(d + 1) + BigInt::from(5) * c(d) - c(d - 2)
        };
        for d in 1..=3 {
            assert_eq!(hilbert_function(&res, d).unwrap(), oracle(d));
        }
        assert_eq!(hilbert_function(&res, 1).unwrap(), BigInt::from(4));
        assert_eq!(hilbert_function(&res, 2).unwrap(), BigInt::from(5));
        let h = hilbert_data(&res).unwrap();
        assert_eq!(h.polynomial.to_string(), "5");
        assert_eq!(h.projective_dim, 0);
        assert_eq!(h.degree, BigInt::from(5));
    }

    #[test]
    fn complete_intersection_of_quadrics() {
        let r = ring(&["x0", "x1", "x2", "x3"]);
        let i = Ideal::parse(&r, &["x0^2 + x1^2 + x2^2 + x3^2", "x0*x1 + 2*x2*x3 + x0^2 - x3^2"]).unwrap();
        let res = minimize(&resolve_quotient(&i, true).unwrap());
        assert_eq!(res.shape(), "S <- S^2(-2) <- S(-4)");
        let h = hilbert_data(&res).unwrap();
        assert_eq!(h.polynomial.to_string(), "4*t");
        assert_eq!(h.degree, BigInt::from(4));
        assert_eq!(h.arithmetic_genus, BigInt::from(1));
    }

    #[test]
    fn free_and_trivial_modules() {
        let r = ring(&["x", "y"]);
        let res = resolve_quotient(&Ideal::zero(r.clone()), true).unwrap();
        assert_eq!(res.length(), 0);
        assert_eq!(minimal_betti(&res).unwrap(), BettiTable::from_entries([((0, 0), 1)]));
        for d in 0..5 {
            assert_eq!(hilbert_function(&res, d).unwrap(), BigInt::from(d + 1));
        }

        let id = PolyMatrix::identity(r.field(), 2, 2);
        let free = Subquotient::new(id.clone(), PolyMatrix::zeros(r.field(), 2, 2, 0)).unwrap();
        let res = resolve_module(&free, true).unwrap();
        assert_eq!(res.length(), 0);

        let redundant = Subquotient::new(id.hconcat(&id).unwrap(), PolyMatrix::zeros(r.field(), 2, 2, 0)).unwrap();
        let res = resolve_module(&redundant, true).unwrap();
        assert_eq!(res.length(), 1);
        let min = minimize(&res);
        assert_eq!(min.length(), 0);
        assert_eq!(min.ranks(), vec![2]);

        let unit = minimize(&resolve_quotient(&Ideal::unit(r.clone()), true).unwrap());
        assert_eq!(unit.ranks(), vec![0]);
    }

    #[test]
    fn module_resolution() {
        // coker of the 1x2 matrix (x y) is k-module S/(x, y)
        let r = ring(&["x", "y"]);
        let one = PolyMatrix::identity(r.field(), 2, 1);
        let rel =
            PolyMatrix::from_rows(r.field(), 2, vec![vec![r.parse("x").unwrap(), r.parse("y").unwrap()]]).unwrap();
        let m = Subquotient::new(one, rel).unwrap();
        let res = minimize(&resolve_module(&m, true).unwrap());
        assert_eq!(res.shape(), "S <- S^2(-1) <- S(-2)");
        assert!(res.is_complex());
    }

    #[test]
    fn nonhomogeneous_input() {
        let r = ring(&["x", "y"]);
        let i = Ideal::parse(&r, &["x^2 - y", "x*y - 1"]).unwrap();
        assert!(matches!(resolve_quotient(&i, true), Err(Error::NonHomogeneous(_))));
        let res = resolve_quotient(&i, false).unwrap();
        assert!(res.is_complex());
        assert!(res.length() <= 2);
        assert!(hilbert_function(&res, 1).is_err());
    }

    #[test]
    fn betti_rendering() {
        let t = BettiTable::from_entries([((0, 0), 1), ((1, 2), 5), ((2, 3), 5), ((3, 5), 1)]);
        assert_eq!(
            t.render(),
            "       0 1 2 3\n--------------\n0:     1 - - -\n1:     - 5 5 -\n2:     - - - 1\n--------------\ntotal: 1 5 5 1\n"
        );
        assert_eq!(t.totals(), vec![1, 5, 5, 1]);
    }

    fn arb_homogeneous_ideal() -> impl Strategy<Value = (usize, Vec<Vec<(i64, Vec<u32>)>>)> {
        (2usize..=4).prop_flat_map(|n| {
            let gen = (1u32..=3).prop_flat_map(move |deg| {
                prop::collection::vec((-3i64..=3, prop::collection::vec(0u32..=deg, n)), 1..4).prop_map(move |ts| {
                    ts.into_iter()
                        .map(|(c, mut e)| {
                            // push the exponent vector onto degree `deg`
                            let mut s: u32 = e.iter().sum();
                            let mut k = 0;
                            while s > deg {
                                if e[k % n] > 0 {
                                    e[k % n] -= 1;
                                    s -= 1;
                                }
                                k += 1;
                            }
                            e[0] += deg - s;
                            (c, e)
                        })
                        .collect::<Vec<_>>()
                })
            });
            (Just(n), prop::collection::vec(gen, 1..4))
        })
    }

    fn build(n: usize, gens: &[Vec<(i64, Vec<u32>)>]) -> Ideal {
        let names: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
        let r = PolyRing::new(Field::Rationals, names.iter().map(String::as_str))
            .unwrap()
            .into_shared();
        let polys = gens
            .iter()
            .map(|ts| {
                crate::poly::Poly::from_terms(
                    Field::Rationals,
                    n,
                    ts.iter()
                        .map(|(c, e)| (Field::Rationals.from_i64(*c), Monomial::from_exponents(e)))
                        .collect(),
                )
            })
            .collect();
        Ideal::new(r, polys).unwrap()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(50))]

        #[test]
        fn resolutions_are_complexes_with_correct_hilbert_function((n, gens) in arb_homogeneous_ideal()) {
            let i = build(n, &gens);
            let res = resolve_quotient(&i, true).unwrap();
            prop_assert!(res.is_complex());
            prop_assert!(res.length() <= n);
            let min = minimize(&res);
            prop_assert!(min.is_complex());
            prop_assert!(min.is_minimal());
            prop_assert_eq!(minimal_betti(&res).unwrap(), betti_table(&min));
            for d in 0..=12u32 {
                let direct = i.standard_monomials_in_degree(&MonomialOrdering::DegRevLex, d).unwrap();
                prop_assert_eq!(hilbert_function(&res, d as i64).unwrap(), BigInt::from(direct));
                prop_assert_eq!(hilbert_function(&min, d as i64).unwrap(), BigInt::from(direct));
            }
            let h = hilbert_data(&res).unwrap();
            let top = res.twists().iter().flatten().copied().max().unwrap_or(0);
            for d in top..top + 4 {
                prop_assert_eq!(h.eval(d), BigRational::from_integer(hilbert_function(&res, d).unwrap()));
            }
        }
    }
}
