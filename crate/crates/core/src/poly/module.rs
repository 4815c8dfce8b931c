//! Free-module elements and polynomial matrices.
//!
//! Elements of `R^r` are column vectors; a matrix acts by left
//! multiplication and its columns are the images of the basis vectors.
//! Components are 0-based internally and printed 1-based.

use super::monomial::Monomial;
use super::ordering::ModuleOrdering;
use super::poly::Poly;
use crate::error::{Error, Result};
use crate::field::{Coeff, Field};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FreeModElem {
    comps: Vec<Poly>,
}

impl FreeModElem {
    pub fn new(comps: Vec<Poly>) -> Result<Self> {
        if comps.is_empty() {
            return Err(Error::InvalidArgument("a free module element needs rank >= 1".into()));
        }
        let (f, n) = (comps[0].field(), comps[0].nvars());
        if comps.iter().any(|p| p.nvars() != n) {
            return Err(Error::RingMismatch);
        }
        if let Some(p) = comps.iter().find(|p| p.field() != f) {
            return Err(Error::FieldMismatch(f.to_string(), p.field().to_string()));
        }
        Ok(FreeModElem { comps })
    }

    pub fn zero(field: Field, nvars: usize, rank: usize) -> Self {
        FreeModElem {
            comps: vec![Poly::zero(field, nvars); rank],
        }
    }

    /// The basis vector `e_i` (0-based).
    pub fn unit(field: Field, nvars: usize, rank: usize, i: usize) -> Self {
        let mut e = Self::zero(field, nvars, rank);
        e.comps[i] = Poly::one(field, nvars);
        e
    }

    pub fn rank(&self) -> usize {
        self.comps.len()
    }

    pub fn components(&self) -> &[Poly] {
        &self.comps
    }

    pub fn into_components(self) -> Vec<Poly> {
        self.comps
    }

    pub fn component(&self, i: usize) -> &Poly {
        &self.comps[i]
    }

    pub fn field(&self) -> Field {
        self.comps[0].field()
    }

    pub fn nvars(&self) -> usize {
        self.comps[0].nvars()
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Poly::is_zero)
    }

    pub fn checked_add(&self, other: &FreeModElem) -> Result<FreeModElem> {
        self.same_rank(other)?;
        let comps = self
            .comps
            .iter()
            .zip(&other.comps)
            .map(|(a, b)| a.checked_add(b))
            .collect::<Result<_>>()?;
        Ok(FreeModElem { comps })
    }

    pub fn checked_sub(&self, other: &FreeModElem) -> Result<FreeModElem> {
        self.same_rank(other)?;
        let comps = self
            .comps
            .iter()
            .zip(&other.comps)
            .map(|(a, b)| a.checked_sub(b))
            .collect::<Result<_>>()?;
        Ok(FreeModElem { comps })
    }

    pub fn mul_poly(&self, f: &Poly) -> Result<FreeModElem> {
        let comps = self.comps.iter().map(|a| a.checked_mul(f)).collect::<Result<_>>()?;
        Ok(FreeModElem { comps })
    }

    fn same_rank(&self, other: &FreeModElem) -> Result<()> {
        if self.rank() != other.rank() {
            return Err(Error::LengthMismatch {
                expected: self.rank(),
                found: other.rank(),
            });
        }
        Ok(())
    }

    /// Leading term `c x^β e_j` under `ord`.
    pub fn leading_term(&self, ord: &ModuleOrdering) -> Result<(Coeff, Monomial, usize)> {
        let mut best: Option<(&Coeff, &Monomial, usize)> = None;
        for (j, p) in self.comps.iter().enumerate() {
            for (c, m) in p.terms() {
                let better = match best {
                    None => true,
                    Some((_, bm, bj)) => ord.cmp((m, j), (bm, bj)).is_gt(),
                };
                if better {
                    best = Some((c, m, j));
                }
            }
        }
        best.map(|(c, m, j)| (c.clone(), m.clone(), j))
            .ok_or(Error::ZeroInput("leading term"))
    }
}

/// A `rows x cols` matrix of polynomials, optionally graded by twist
/// vectors: entry `(k, l)` is then zero or homogeneous of degree
/// `col_twist[l] - row_twist[k]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    field: Field,
    nvars: usize,
    rows: usize,
    cols: usize,
    entries: Vec<Poly>,
    row_twists: Option<Vec<i64>>,
    col_twists: Option<Vec<i64>>,
}

impl PolyMatrix {
    pub fn zeros(field: Field, nvars: usize, rows: usize, cols: usize) -> Self {
        PolyMatrix {
            field,
            nvars,
            rows,
            cols,
            entries: vec![Poly::zero(field, nvars); rows * cols],
            row_twists: None,
            col_twists: None,
        }
    }

    pub fn identity(field: Field, nvars: usize, n: usize) -> Self {
        let mut m = Self::zeros(field, nvars, n, n);
        for i in 0..n {
            m.set(i, i, Poly::one(field, nvars));
        }
        m
    }

    pub fn from_rows(field: Field, nvars: usize, rows: Vec<Vec<Poly>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(field, nvars, r, c);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != c {
                return Err(Error::DimensionMismatch(format!(
                    "row {} has {} entries, expected {c}",
                    i + 1,
                    row.len()
                )));
            }
            for (j, p) in row.into_iter().enumerate() {
                m.check_entry(&p)?;
                m.set(i, j, p);
            }
        }
        Ok(m)
    }

    /// Columns given as module elements of a common rank.
    pub fn from_columns(field: Field, nvars: usize, rank: usize, cols: &[FreeModElem]) -> Result<Self> {
        let mut m = Self::zeros(field, nvars, rank, cols.len());
        for (j, v) in cols.iter().enumerate() {
            if v.rank() != rank {
                return Err(Error::DimensionMismatch(format!(
                    "column {} has rank {}, expected {rank}",
                    j + 1,
                    v.rank()
                )));
            }
            for (i, p) in v.components().iter().enumerate() {
                m.check_entry(p)?;
                m.set(i, j, p.clone());
            }
        }
        Ok(m)
    }

    fn check_entry(&self, p: &Poly) -> Result<()> {
        if p.nvars() != self.nvars {
            return Err(Error::RingMismatch);
        }
        if p.field() != self.field {
            return Err(Error::FieldMismatch(self.field.to_string(), p.field().to_string()));
        }
        Ok(())
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Poly) {
        self.entries[i * self.cols + j] = p;
    }

    pub fn column(&self, j: usize) -> FreeModElem {
        FreeModElem {
            comps: (0..self.rows).map(|i| self.get(i, j).clone()).collect(),
        }
    }

    pub fn columns(&self) -> Vec<FreeModElem> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn row(&self, i: usize) -> Vec<Poly> {
        self.entries[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Poly::is_zero)
    }

    pub fn row_twists(&self) -> Option<&[i64]> {
        self.row_twists.as_deref()
    }

    pub fn col_twists(&self) -> Option<&[i64]> {
        self.col_twists.as_deref()
    }

    /// Attaches twist vectors after checking that every entry has the
    /// degree they predict.
    pub fn with_twists(mut self, row_twists: Vec<i64>, col_twists: Vec<i64>) -> Result<Self> {
        if row_twists.len() != self.rows || col_twists.len() != self.cols {
            return Err(Error::DimensionMismatch("twist vector length".into()));
        }
        for i in 0..self.rows {
            for j in 0..self.cols {
                let p = self.get(i, j);
                let want = col_twists[j] - row_twists[i];
                if p.terms().iter().any(|(_, m)| m.degree() as i64 != want) {
                    return Err(Error::NonHomogeneous(format!(
                        "entry ({}, {}) is not homogeneous of degree {want}",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        self.row_twists = Some(row_twists);
        self.col_twists = Some(col_twists);
        Ok(self)
    }

    pub(crate) fn set_twists_unchecked(&mut self, row_twists: Vec<i64>, col_twists: Vec<i64>) {
        self.row_twists = Some(row_twists);
        self.col_twists = Some(col_twists);
    }

    pub fn checked_mul(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        if self.nvars != other.nvars {
            return Err(Error::RingMismatch);
        }
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field.to_string(), other.field.to_string()));
        }
        let mut out = PolyMatrix::zeros(self.field, self.nvars, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Poly::zero(self.field, self.nvars);
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    let b = other.get(k, j);
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                out.set(i, j, acc);
            }
        }
        if let (Some(r), Some(c)) = (&self.row_twists, &other.col_twists) {
            out.set_twists_unchecked(r.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn apply(&self, v: &FreeModElem) -> Result<FreeModElem> {
        let col = PolyMatrix::from_columns(self.field, self.nvars, v.rank(), std::slice::from_ref(v))?;
        Ok(self.checked_mul(&col)?.column(0))
    }

    pub fn transpose(&self) -> PolyMatrix {
        let mut t = PolyMatrix::zeros(self.field, self.nvars, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    /// `[self | other]`.
    pub fn hconcat(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot place {} rows beside {} rows",
                self.rows, other.rows
            )));
        }
        let mut cols = self.columns();
        cols.extend(other.columns());
        PolyMatrix::from_columns(self.field, self.nvars, self.rows, &cols)
    }

    /// Rows `start..end` as a new matrix.
    pub fn row_block(&self, start: usize, end: usize) -> PolyMatrix {
        let mut m = PolyMatrix::zeros(self.field, self.nvars, end - start, self.cols);
        for i in start..end {
            for j in 0..self.cols {
                m.set(i - start, j, self.get(i, j).clone());
            }
        }
        m
    }

    /// Columns `start..end` as a new matrix.
    pub fn col_block(&self, start: usize, end: usize) -> PolyMatrix {
        let cols: Vec<FreeModElem> = (start..end).map(|j| self.column(j)).collect();
        PolyMatrix::from_columns(self.field, self.nvars, self.rows, &cols).expect("same shape")
    }

    pub fn remove_row(&mut self, r: usize) {
        let cols = self.cols;
        self.entries.drain(r * cols..(r + 1) * cols);
        self.rows -= 1;
        if let Some(t) = &mut self.row_twists {
            t.remove(r);
        }
    }

    pub fn remove_col(&mut self, c: usize) {
        let cols = self.cols;
        let mut k = 0;
        self.entries.retain(|_| {
            let keep = k % cols != c;
            k += 1;
            keep
        });
        self.cols -= 1;
        if let Some(t) = &mut self.col_twists {
            t.remove(c);
        }
    }

    /// Drops zero columns.
    pub fn compact(&self) -> PolyMatrix {
        let keep: Vec<FreeModElem> = self.columns().into_iter().filter(|c| !c.is_zero()).collect();
        PolyMatrix::from_columns(self.field, self.nvars, self.rows, &keep).expect("same shape")
    }

    /// Rendered as rows in brackets using `names` for the variables.
    pub fn format(&self, names: &[String], ord: &super::ordering::MonomialOrdering) -> String {
        let rows: Vec<String> = (0..self.rows)
            .map(|i| {
                let e: Vec<String> = (0..self.cols).map(|j| self.get(i, j).format(names, ord)).collect();
                format!("[{}]", e.join(", "))
            })
            .collect();
        format!("[{}]", rows.join(", "))
    }
}
