use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use super::monomial::Monomial;
use super::ordering::MonomialOrdering;
use super::poly::Poly;
use crate::error::{Error, Result};
use crate::field::{Coeff, Field};

/// `k[x_1..x_n]` together with grading weights and a default ordering.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyRing {
    field: Field,
    names: Vec<String>,
    weights: Vec<u32>,
    ordering: MonomialOrdering,
}

pub type Ring = Arc<PolyRing>;

fn valid_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic()) && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl PolyRing {
    /// Standard grading, degrevlex default.
    pub fn new<S: Into<String>>(field: Field, names: impl IntoIterator<Item = S>) -> Result<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(Error::InvalidRing("a ring needs at least one variable".into()));
        }
        let mut seen = HashSet::new();
        for n in &names {
            if !valid_identifier(n) {
                return Err(Error::InvalidRing(format!("{n:?} is not a valid variable name")));
            }
            if !seen.insert(n.as_str()) {
                return Err(Error::InvalidRing(format!("variable {n} declared twice")));
            }
        }
        let n = names.len();
        Ok(PolyRing {
            field,
            names,
            weights: vec![1; n],
            ordering: MonomialOrdering::DegRevLex,
        })
    }

    /// Sets grading weights; the default ordering becomes `wdegrevlex` when
    /// some weight differs from 1 and no explicit ordering was chosen.
    pub fn with_weights(mut self, weights: Vec<u32>) -> Result<Self> {
        if weights.len() != self.names.len() {
            return Err(Error::InvalidRing(format!(
                "{} weights for {} variables",
                weights.len(),
                self.names.len()
            )));
        }
        if weights.contains(&0) {
            return Err(Error::InvalidRing("weights must be positive".into()));
        }
        if self.ordering == MonomialOrdering::DegRevLex && weights.iter().any(|&w| w != 1) {
            self.ordering = MonomialOrdering::WDegRevLex(weights.clone());
        }
        self.weights = weights;
        Ok(self)
    }

    pub fn with_ordering(mut self, ordering: MonomialOrdering) -> Result<Self> {
        ordering.validate(self.names.len())?;
        self.ordering = ordering;
        Ok(self)
    }

    pub fn into_shared(self) -> Ring {
        Arc::new(self)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn default_ordering(&self) -> &MonomialOrdering {
        &self.ordering
    }

    pub fn is_standard_graded(&self) -> bool {
        self.weights.iter().all(|&w| w == 1)
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn zero(&self) -> Poly {
        Poly::zero(self.field, self.nvars())
    }

    pub fn one(&self) -> Poly {
        Poly::one(self.field, self.nvars())
    }

    pub fn var(&self, i: usize) -> Poly {
        Poly::var(self.field, self.nvars(), i)
    }

    pub fn constant(&self, c: Coeff) -> Poly {
        Poly::constant(c, self.nvars())
    }

    pub fn int(&self, n: i64) -> Poly {
        self.constant(self.field.from_i64(n))
    }

    pub fn monomial(&self, exps: &[u32]) -> Poly {
        Poly::term(self.field.one(), Monomial::from_exponents(exps))
    }

    /// Checks that `f` lives in this ring.
    pub fn check(&self, f: &Poly) -> Result<()> {
        if f.nvars() != self.nvars() {
            return Err(Error::RingMismatch);
        }
        if f.field() != self.field {
            return Err(Error::FieldMismatch(self.field.to_string(), f.field().to_string()));
        }
        Ok(())
    }

    /// Parses a polynomial in the session grammar.
    pub fn parse(&self, text: &str) -> Result<Poly> {
        crate::session::parse_poly(self, text)
    }

    /// Renders `f` with terms in the default ordering.
    pub fn format(&self, f: &Poly) -> String {
        f.format(&self.names, &self.ordering)
    }

    /// A ring with one more variable inserted at `pos`, named `name`.
    pub fn insert_var(&self, pos: usize, name: &str) -> Result<PolyRing> {
        let mut names = self.names.clone();
        names.insert(pos, name.to_string());
        PolyRing::new(self.field, names)
    }

    /// A fresh variable name not used in this ring, trying `preferred`
    /// first.
    pub fn fresh_name(&self, preferred: &str) -> String {
        if self.var_index(preferred).is_none() {
            return preferred.to_string();
        }
        (0..)
            .map(|i| format!("{preferred}_{i}"))
            .find(|n| self.var_index(n).is_none())
            .unwrap()
    }
}

impl fmt::Display for PolyRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.field, self.names.join(","))?;
        if !self.is_standard_graded() {
            let w: Vec<String> = self.weights.iter().map(|w| w.to_string()).collect();
            write!(f, " weights({})", w.join(","))?;
        }
        write!(f, " {}", self.ordering)
    }
}
