use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use super::{buchberger, divide_with_remainder, leading_monomials, reduce_gb, staircase, GroebnerBasis, SharedGb};
use crate::error::{Error, Result};
use crate::poly::{monomial::monomials_of_degree, Monomial, MonomialOrdering, Poly, Ring};

/// An ideal given by generators, with Groebner bases cached per ordering.
pub struct Ideal {
    ring: Ring,
    gens: Vec<Poly>,
    cache: RwLock<HashMap<MonomialOrdering, SharedGb>>,
}

impl Clone for Ideal {
    fn clone(&self) -> Self {
        Ideal {
            ring: self.ring.clone(),
            gens: self.gens.clone(),
            cache: RwLock::new(self.cache.read().expect("cache lock").clone()),
        }
    }
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g: Vec<String> = self.gens.iter().map(|g| self.ring.format(g)).collect();
        write!(f, "Ideal({})", g.join(", "))
    }
}

impl Ideal {
    /// Zero generators are dropped.
    pub fn new(ring: Ring, gens: Vec<Poly>) -> Result<Ideal> {
        for g in &gens {
            ring.check(g)?;
        }
        Ok(Ideal {
            ring,
            gens: gens.into_iter().filter(|g| !g.is_zero()).collect(),
            cache: RwLock::new(HashMap::new()),
        })
    }

    /// Parses each generator in the session grammar.
    pub fn parse(ring: &Ring, gens: &[&str]) -> Result<Ideal> {
        let polys = gens.iter().map(|s| ring.parse(s)).collect::<Result<Vec<_>>>()?;
        Ideal::new(ring.clone(), polys)
    }

    pub fn unit(ring: Ring) -> Ideal {
        let one = ring.one();
        Ideal::new(ring, vec![one]).expect("same ring")
    }

    pub fn zero(ring: Ring) -> Ideal {
        Ideal::new(ring, Vec::new()).expect("same ring")
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn gens(&self) -> &[Poly] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    /// A minimal Groebner basis for `ord`, computed once and cached.
    pub fn groebner_basis(&self, ord: &MonomialOrdering) -> Result<Arc<GroebnerBasis>> {
        if let Some(gb) = self.cache.read().expect("cache lock").get(ord) {
            return Ok(gb.clone());
        }
        let gb = Arc::new(buchberger(&self.gens, ord)?);
        self.cache.write().expect("cache lock").insert(ord.clone(), gb.clone());
        Ok(gb)
    }

    /// Groebner basis for the ring's default ordering.
    pub fn default_gb(&self) -> Result<Arc<GroebnerBasis>> {
        self.groebner_basis(self.ring.default_ordering())
    }

    /// Installs a known Groebner basis in the cache after verifying it.
    pub fn seed_gb(&self, gb: GroebnerBasis) -> Result<()> {
        if !super::is_groebner_basis(&gb.elements, &gb.ordering) {
            return Err(Error::NotGroebnerBasis("criterion fails".into()));
        }
        for g in &self.gens {
            if !divide_with_remainder(g, &gb.elements, &gb.ordering)?
                .remainder
                .is_zero()
            {
                return Err(Error::NotGroebnerBasis("a generator does not reduce to zero".into()));
            }
        }
        self.cache
            .write()
            .expect("cache lock")
            .insert(gb.ordering.clone(), Arc::new(gb));
        Ok(())
    }

    pub fn cached_orderings(&self) -> Vec<MonomialOrdering> {
        self.cache.read().expect("cache lock").keys().cloned().collect()
    }

    pub fn reduced_gb(&self, ord: &MonomialOrdering) -> Result<GroebnerBasis> {
        Ok(reduce_gb(self.groebner_basis(ord)?.as_ref()))
    }

    /// Remainder of `f` on division by the cached Groebner basis.
    pub fn normal_form(&self, f: &Poly, ord: &MonomialOrdering) -> Result<Poly> {
        self.ring.check(f)?;
        let gb = self.groebner_basis(ord)?;
        if gb.elements.is_empty() {
            return Ok(f.clone());
        }
        Ok(divide_with_remainder(f, &gb.elements, ord)?.remainder)
    }

    pub fn contains(&self, f: &Poly) -> Result<bool> {
        Ok(self.normal_form(f, self.ring.default_ordering())?.is_zero())
    }

    /// Every generator of `self` lies in `other`.
    pub fn is_subset_of(&self, other: &Ideal) -> Result<bool> {
        for g in &self.gens {
            if !other.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn same_ideal(&self, other: &Ideal) -> Result<bool> {
        Ok(self.is_subset_of(other)? && other.is_subset_of(self)?)
    }

    /// True iff `1` lies in the ideal (the variety is empty over the
    /// algebraic closure).
    pub fn is_one(&self) -> Result<bool> {
        let gb = self.default_gb()?;
        Ok(gb.elements.iter().any(Poly::is_constant))
    }

    /// The monomial ideal generated by the leading terms of a minimal
    /// Groebner basis.
    pub fn leading_ideal(&self, ord: &MonomialOrdering) -> Result<Ideal> {
        let gb = self.groebner_basis(ord)?;
        let field = self.ring.field();
        let lead = leading_monomials(&gb.elements, ord)
            .into_iter()
            .map(|m| Poly::term(field.one(), m))
            .collect();
        Ideal::new(self.ring.clone(), lead)
    }

    /// All monomials outside the leading ideal, in canonical order; errors
    /// when infinitely many.
    pub fn standard_monomials(&self, ord: &MonomialOrdering) -> Result<Vec<Monomial>> {
        let gb = self.groebner_basis(ord)?;
        staircase(&leading_monomials(&gb.elements, ord), self.ring.nvars())
    }

    /// Number of standard monomials of total degree `d`.
    pub fn standard_monomials_in_degree(&self, ord: &MonomialOrdering, d: u32) -> Result<usize> {
        let gb = self.groebner_basis(ord)?;
        let leads = leading_monomials(&gb.elements, ord);
        Ok(monomials_of_degree(self.ring.nvars(), d)
            .into_iter()
            .filter(|m| !leads.iter().any(|l| l.divides(m)))
            .count())
    }

    /// Every generator is homogeneous for the ring's grading.
    pub fn is_homogeneous(&self) -> bool {
        self.gens.iter().all(|g| g.is_homogeneous(self.ring.weights()))
    }

    pub fn format(&self) -> String {
        let g: Vec<String> = self.gens.iter().map(|g| self.ring.format(g)).collect();
        g.join(", ")
    }
}
