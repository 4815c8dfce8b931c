use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt::Write as _;
use std::ops::{Add, Mul, Neg, Sub};

use super::monomial::Monomial;
use super::ordering::MonomialOrdering;
use crate::error::{Error, Result};
use crate::field::{Coeff, Field};

/// A multivariate polynomial: a canonical list of nonzero terms.
///
/// Terms are stored strictly descending in graded reverse lexicographic
/// order on raw exponents, independent of any working ordering, so equal
/// polynomials compare equal structurally. Algorithms that need a different
/// ordering sort on the fly (see [`Poly::leading_term`]).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    field: Field,
    nvars: usize,
    terms: Vec<(Coeff, Monomial)>,
}

impl Poly {
    pub fn zero(field: Field, nvars: usize) -> Self {
        Poly {
            field,
            nvars,
            terms: Vec::new(),
        }
    }

    pub fn constant(c: Coeff, nvars: usize) -> Self {
        let field = c.field();
        Self::from_terms(field, nvars, vec![(c, Monomial::one(nvars))])
    }

    pub fn one(field: Field, nvars: usize) -> Self {
        Self::constant(field.one(), nvars)
    }

    pub fn var(field: Field, nvars: usize, i: usize) -> Self {
        Self::term(field.one(), Monomial::var(nvars, i))
    }

    pub fn term(c: Coeff, m: Monomial) -> Self {
        let field = c.field();
        let nvars = m.nvars();
        Self::from_terms(field, nvars, vec![(c, m)])
    }

    /// Builds a polynomial from arbitrary terms: duplicates are merged and
    /// zero coefficients dropped.
    pub fn from_terms(field: Field, nvars: usize, mut terms: Vec<(Coeff, Monomial)>) -> Self {
        terms.sort_by(|a, b| b.1.canonical_cmp(&a.1));
        let mut out: Vec<(Coeff, Monomial)> = Vec::with_capacity(terms.len());
        for (c, m) in terms {
            debug_assert_eq!(m.nvars(), nvars);
            match out.last_mut() {
                Some(last) if last.1 == m => last.0 = &last.0 + &c,
                _ => out.push((c, m)),
            }
            if out.last().is_some_and(|t| t.0.is_zero()) {
                out.pop();
            }
        }
        // merging may leave zeros in the middle when a later equal term cancels
        out.retain(|t| !t.0.is_zero());
        Poly {
            field,
            nvars,
            terms: out,
        }
    }

    /// Accumulates terms through a hash map; convenient when many products
    /// land on the same monomial.
    pub(crate) fn from_unsorted_sum(
        field: Field,
        nvars: usize,
        it: impl IntoIterator<Item = (Coeff, Monomial)>,
    ) -> Self {
        let mut acc: HashMap<Monomial, Coeff> = HashMap::new();
        for (c, m) in it {
            match acc.get_mut(&m) {
                Some(v) => *v = &*v + &c,
                None => {
                    acc.insert(m, c);
                }
            }
        }
        let mut terms: Vec<(Coeff, Monomial)> = acc
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(m, c)| (c, m))
            .collect();
        terms.sort_by(|a, b| b.1.canonical_cmp(&a.1));
        Poly { field, nvars, terms }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(Coeff, Monomial)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Coeff, Monomial)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].1.is_one() && self.terms[0].0.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(_, m)| m.is_one())
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn constant_coeff(&self) -> Coeff {
        match self.terms.last() {
            Some((c, m)) if m.is_one() => c.clone(),
            _ => self.field.zero(),
        }
    }

    pub fn coeff_of(&self, m: &Monomial) -> Coeff {
        self.terms
            .binary_search_by(|t| m.canonical_cmp(&t.1))
            .map(|i| self.terms[i].0.clone())
            .unwrap_or_else(|_| self.field.zero())
    }

    fn compatible(&self, other: &Poly) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::RingMismatch);
        }
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field.to_string(), other.field.to_string()));
        }
        Ok(())
    }

    fn merge(&self, other: &Poly, negate: bool) -> Poly {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() && j < b.len() {
            match a[i].1.canonical_cmp(&b[j].1) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate { -&b[j].0 } else { b[j].0.clone() };
                    out.push((c, b[j].1.clone()));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { &a[i].0 - &b[j].0 } else { &a[i].0 + &b[j].0 };
                    if !c.is_zero() {
                        out.push((c, a[i].1.clone()));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        for t in &b[j..] {
            let c = if negate { -&t.0 } else { t.0.clone() };
            out.push((c, t.1.clone()));
        }
        Poly {
            field: self.field,
            nvars: self.nvars,
            terms: out,
        }
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly> {
        self.compatible(other)?;
        Ok(self.merge(other, false))
    }

    pub fn checked_sub(&self, other: &Poly) -> Result<Poly> {
        self.compatible(other)?;
        Ok(self.merge(other, true))
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly> {
        self.compatible(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Poly::zero(self.field, self.nvars));
        }
        if other.terms.len() == 1 {
            let (c, m) = &other.terms[0];
            return Ok(self.mul_term(c, m));
        }
        if self.terms.len() == 1 {
            let (c, m) = &self.terms[0];
            return Ok(other.mul_term(c, m));
        }
        Ok(Poly::from_unsorted_sum(
            self.field,
            self.nvars,
            self.terms
                .iter()
                .flat_map(|(a, m)| other.terms.iter().map(move |(b, n)| (a * b, m.mul(n)))),
        ))
    }

    /// Multiplication by a single term keeps the storage order.
    pub fn mul_term(&self, c: &Coeff, m: &Monomial) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.field, self.nvars);
        }
        Poly {
            field: self.field,
            nvars: self.nvars,
            terms: self.terms.iter().map(|(a, n)| (a * c, n.mul(m))).collect(),
        }
    }

    pub fn scale(&self, c: &Coeff) -> Poly {
        self.mul_term(c, &Monomial::one(self.nvars))
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(self.field, self.nvars);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Leading term with respect to `ord`.
    pub fn leading_term(&self, ord: &MonomialOrdering) -> Result<(&Coeff, &Monomial)> {
        self.terms
            .iter()
            .max_by(|a, b| ord.cmp(&a.1, &b.1))
            .map(|(c, m)| (c, m))
            .ok_or(Error::ZeroInput("leading term"))
    }

    /// Terms sorted descending in `ord`.
    pub fn sorted_terms(&self, ord: &MonomialOrdering) -> Vec<(Coeff, Monomial)> {
        let mut t = self.terms.clone();
        t.sort_by(|a, b| ord.cmp(&b.1, &a.1));
        t
    }

    pub fn total_degree(&self) -> Option<u64> {
        self.terms.first().map(|(_, m)| m.degree())
    }

    pub fn weighted_degree(&self, weights: &[u32]) -> Result<u64> {
        self.terms
            .iter()
            .map(|(_, m)| m.weighted_degree(weights))
            .max()
            .ok_or(Error::ZeroInput("weighted degree"))
    }

    /// Smallest total degree of a term (the order of vanishing at 0).
    pub fn min_degree(&self) -> Option<u64> {
        self.terms.last().map(|(_, m)| m.degree())
    }

    /// The part of total degree `m`.
    pub fn taylor_part(&self, m: u64) -> Poly {
        Poly {
            field: self.field,
            nvars: self.nvars,
            terms: self.terms.iter().filter(|t| t.1.degree() == m).cloned().collect(),
        }
    }

    pub fn is_homogeneous(&self, weights: &[u32]) -> bool {
        let mut it = self.terms.iter().map(|(_, m)| m.weighted_degree(weights));
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    /// Inserts a new variable at `pos` and homogenizes with respect to the
    /// standard grading.
    pub fn homogenize(&self, pos: usize) -> Poly {
        let d = self.total_degree().unwrap_or(0);
        Poly::from_terms(
            self.field,
            self.nvars + 1,
            self.terms
                .iter()
                .map(|(c, m)| (c.clone(), m.insert_var(pos, (d - m.degree()) as u32)))
                .collect(),
        )
    }

    /// Sets the variable at `pos` to 1 and removes it.
    pub fn dehomogenize(&self, pos: usize) -> Poly {
        Poly::from_unsorted_sum(
            self.field,
            self.nvars - 1,
            self.terms.iter().map(|(c, m)| (c.clone(), m.remove_var(pos).0)),
        )
    }

    pub fn derivative(&self, i: usize) -> Poly {
        Poly::from_terms(
            self.field,
            self.nvars,
            self.terms
                .iter()
                .filter(|(_, m)| m.exponents()[i] > 0)
                .map(|(c, m)| {
                    let e = m.exponents()[i];
                    let mut n = m.clone();
                    n.exponents_mut()[i] -= 1;
                    (c * &self.field.from_i64(e as i64), n)
                })
                .collect(),
        )
    }

    pub fn evaluate(&self, point: &[Coeff]) -> Result<Coeff> {
        if point.len() != self.nvars {
            return Err(Error::LengthMismatch {
                expected: self.nvars,
                found: point.len(),
            });
        }
        let mut acc = self.field.zero();
        for (c, m) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m.exponents()) {
                if e > 0 {
                    t = t.checked_mul(&x.pow(e as u64))?;
                }
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }

    /// Substitutes `x_i -> images[i]`.
    pub fn substitute(&self, images: &[Poly]) -> Result<Poly> {
        if images.len() != self.nvars {
            return Err(Error::LengthMismatch {
                expected: self.nvars,
                found: images.len(),
            });
        }
        let target = images.first().map(|p| p.nvars).unwrap_or(0);
        let mut acc = Poly::zero(self.field, target);
        let mut powers: Vec<Vec<Poly>> = images.iter().map(|p| vec![Poly::one(self.field, p.nvars)]).collect();
        for (c, m) in &self.terms {
            let mut t = Poly::constant(c.clone(), target);
            for (i, &e) in m.exponents().iter().enumerate() {
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap().checked_mul(&images[i])?;
                    powers[i].push(next);
                }
                if e > 0 {
                    t = t.checked_mul(&powers[i][e as usize])?;
                }
            }
            acc = acc.checked_add(&t)?;
        }
        Ok(acc)
    }

    /// `f(x + a)`: moves the point `a` to the origin.
    pub fn translate(&self, a: &[Coeff]) -> Result<Poly> {
        let images: Vec<Poly> = (0..self.nvars)
            .map(|i| {
                let x = Poly::var(self.field, self.nvars, i);
                let c = a.get(i).cloned().unwrap_or_else(|| self.field.zero());
                &x + &Poly::constant(c, self.nvars)
            })
            .collect();
        if a.len() != self.nvars {
            return Err(Error::LengthMismatch {
                expected: self.nvars,
                found: a.len(),
            });
        }
        self.substitute(&images)
    }

    /// Renames variables: variable `i` becomes variable `perm[i]` of a ring
    /// with `nvars_out` variables.
    pub fn permute_vars(&self, perm: &[usize], nvars_out: usize) -> Poly {
        Poly::from_terms(
            self.field,
            nvars_out,
            self.terms
                .iter()
                .map(|(c, m)| {
                    let mut e = vec![0u32; nvars_out];
                    for (i, &x) in m.exponents().iter().enumerate() {
                        e[perm[i]] += x;
                    }
                    (c.clone(), Monomial::from_exponents(&e))
                })
                .collect(),
        )
    }

    /// Divides by the leading coefficient under `ord`.
    pub fn monic(&self, ord: &MonomialOrdering) -> Poly {
        match self.leading_term(ord) {
            Ok((c, _)) => self.scale(&c.inv().expect("nonzero")),
            Err(_) => self.clone(),
        }
    }

    /// Variables occurring in the polynomial.
    pub fn support_vars(&self) -> Vec<usize> {
        let mut seen = vec![false; self.nvars];
        for (_, m) in &self.terms {
            for i in m.support() {
                seen[i] = true;
            }
        }
        (0..self.nvars).filter(|&i| seen[i]).collect()
    }

    /// Renders the polynomial in the session grammar, with terms descending
    /// in `ord`.
    pub fn format(&self, names: &[String], ord: &MonomialOrdering) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, (c, m)) in self.sorted_terms(ord).iter().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { -c } else { c.clone() };
            if i == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mono = format_monomial(m, names);
            if mono.is_empty() {
                write!(s, "{abs}").unwrap();
            } else if abs.is_one() {
                s.push_str(&mono);
            } else {
                write!(s, "{abs}*{mono}").unwrap();
            }
        }
        s
    }
}

pub fn format_monomial(m: &Monomial, names: &[String]) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.exponents().iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(names[i].clone()),
            _ => parts.push(format!("{}^{e}", names[i])),
        }
    }
    parts.join("*")
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &'a Poly) -> Poly {
        self.checked_add(rhs).expect("ring mismatch")
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &'a Poly) -> Poly {
        self.checked_sub(rhs).expect("ring mismatch")
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &'a Poly) -> Poly {
        self.checked_mul(rhs).expect("ring mismatch")
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            field: self.field,
            nvars: self.nvars,
            terms: self.terms.iter().map(|(c, m)| (-c, m.clone())).collect(),
        }
    }
}
