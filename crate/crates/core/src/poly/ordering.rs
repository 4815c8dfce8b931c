//! Monomial orderings on rings and free modules.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::monomial::Monomial;
use crate::error::{Error, Result};

/// A monomial ordering on `k[x_1..x_n]`.
///
/// `Greater` from [`MonomialOrdering::cmp`] means the first argument is the
/// larger monomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MonomialOrdering {
    Lex,
    DegRevLex,
    /// Weighted degree first, ties broken reverse-lexicographically on the
    /// raw exponents (the unit-weight rule).
    WDegRevLex(Vec<u32>),
    /// Local: smaller weighted degree is larger, ties as in degrevlex.
    NegWDegRevLex(Vec<u32>),
    Block(Vec<OrderingBlock>),
}

/// One block of a product ordering, acting on `start..start + len`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OrderingBlock {
    pub ordering: MonomialOrdering,
    pub start: usize,
    pub len: usize,
}

impl MonomialOrdering {
    /// `neg_wdegrevlex` with unit weights (Singular's `ds`).
    pub fn neg_degrevlex(nvars: usize) -> Self {
        MonomialOrdering::NegWDegRevLex(vec![1; nvars])
    }

    /// Product ordering with `first` on the leading `split` variables and
    /// `second` on the rest.
    pub fn block2(first: MonomialOrdering, second: MonomialOrdering, split: usize, nvars: usize) -> Self {
        MonomialOrdering::Block(vec![
            OrderingBlock {
                ordering: first,
                start: 0,
                len: split,
            },
            OrderingBlock {
                ordering: second,
                start: split,
                len: nvars - split,
            },
        ])
    }

    pub fn validate(&self, nvars: usize) -> Result<()> {
        let weights_ok = |w: &Vec<u32>| -> Result<()> {
            if w.len() != nvars {
                return Err(Error::InvalidOrdering(format!(
                    "{} weights for {nvars} variables",
                    w.len()
                )));
            }
            if w.contains(&0) {
                return Err(Error::InvalidOrdering("weights must be positive".into()));
            }
            Ok(())
        };
        match self {
            MonomialOrdering::Lex | MonomialOrdering::DegRevLex => Ok(()),
            MonomialOrdering::WDegRevLex(w) | MonomialOrdering::NegWDegRevLex(w) => weights_ok(w),
            MonomialOrdering::Block(blocks) => {
                let mut next = 0;
                for b in blocks {
                    if b.start != next || b.len == 0 {
                        return Err(Error::InvalidOrdering(
                            "blocks must partition the variables into consecutive nonempty ranges".into(),
                        ));
                    }
                    if matches!(b.ordering, MonomialOrdering::Block(_)) {
                        return Err(Error::InvalidOrdering("nested blocks".into()));
                    }
                    b.ordering.validate(b.len)?;
                    next += b.len;
                }
                if next != nvars {
                    return Err(Error::InvalidOrdering(format!(
                        "blocks cover {next} of {nvars} variables"
                    )));
                }
                Ok(())
            }
        }
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        cmp_slices(self, a.exponents(), b.exponents())
    }

    /// Checked comparison for callers holding unvalidated data.
    pub fn try_cmp(&self, a: &Monomial, b: &Monomial) -> Result<Ordering> {
        if a.nvars() != b.nvars() {
            return Err(Error::LengthMismatch {
                expected: a.nvars(),
                found: b.nvars(),
            });
        }
        Ok(self.cmp(a, b))
    }

    /// Every variable compares above 1.
    pub fn is_global(&self) -> bool {
        match self {
            MonomialOrdering::Lex | MonomialOrdering::DegRevLex | MonomialOrdering::WDegRevLex(_) => true,
            MonomialOrdering::NegWDegRevLex(_) => false,
            MonomialOrdering::Block(b) => b.iter().all(|b| b.ordering.is_global()),
        }
    }

    /// Every variable compares below 1.
    pub fn is_local(&self) -> bool {
        match self {
            MonomialOrdering::NegWDegRevLex(_) => true,
            MonomialOrdering::Block(b) => b.iter().all(|b| b.ordering.is_local()),
            _ => false,
        }
    }

    /// Weights used for the ecart of local orderings.
    pub fn ecart_weights(&self, nvars: usize) -> Vec<u32> {
        match self {
            MonomialOrdering::WDegRevLex(w) | MonomialOrdering::NegWDegRevLex(w) => w.clone(),
            MonomialOrdering::Block(blocks) => blocks.iter().flat_map(|b| b.ordering.ecart_weights(b.len)).collect(),
            _ => vec![1; nvars],
        }
    }

    pub fn name(&self) -> String {
        self.to_string()
    }
}

fn revlex_tie(a: &[u32], b: &[u32]) -> Ordering {
    for (x, y) in a.iter().zip(b).rev() {
        if x != y {
            // last nonzero entry of a - b negative => a is larger
            return y.cmp(x);
        }
    }
    Ordering::Equal
}

fn wdeg(a: &[u32], w: &[u32]) -> u64 {
    a.iter().zip(w).map(|(&e, &w)| e as u64 * w as u64).sum()
}

fn cmp_slices(ord: &MonomialOrdering, a: &[u32], b: &[u32]) -> Ordering {
    match ord {
        MonomialOrdering::Lex => {
            for (x, y) in a.iter().zip(b) {
                if x != y {
                    return x.cmp(y);
                }
            }
            Ordering::Equal
        }
        MonomialOrdering::DegRevLex => {
            let da: u64 = a.iter().map(|&e| e as u64).sum();
            let db: u64 = b.iter().map(|&e| e as u64).sum();
            da.cmp(&db).then_with(|| revlex_tie(a, b))
        }
        MonomialOrdering::WDegRevLex(w) => wdeg(a, w).cmp(&wdeg(b, w)).then_with(|| revlex_tie(a, b)),
        MonomialOrdering::NegWDegRevLex(w) => wdeg(b, w).cmp(&wdeg(a, w)).then_with(|| revlex_tie(a, b)),
        MonomialOrdering::Block(blocks) => {
            for blk in blocks {
                let r = blk.start..blk.start + blk.len;
                match cmp_slices(&blk.ordering, &a[r.clone()], &b[r]) {
                    Ordering::Equal => continue,
                    o => return o,
                }
            }
            Ordering::Equal
        }
    }
}

impl fmt::Display for MonomialOrdering {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |w: &Vec<u32>| w.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        match self {
            MonomialOrdering::Lex => write!(f, "lex"),
            MonomialOrdering::DegRevLex => write!(f, "degrevlex"),
            MonomialOrdering::WDegRevLex(w) => write!(f, "wdegrevlex({})", list(w)),
            MonomialOrdering::NegWDegRevLex(w) => write!(f, "neg_wdegrevlex({})", list(w)),
            MonomialOrdering::Block(bs) => {
                write!(f, "block(")?;
                for (i, b) in bs.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{}:{}", b.ordering, b.len)?;
                }
                write!(f, ")")
            }
        }
    }
}

/// A monomial ordering on a free module `R^r`, comparing pairs
/// `(x^α, component)` with 0-based components.
#[derive(Clone, Debug)]
pub enum ModuleOrdering {
    /// Component first (`e_1 > e_2 > ...`), then the ring ordering.
    PositionOverTerm(MonomialOrdering),
    /// Ring ordering first, then component (`e_1 > e_2 > ...`).
    TermOverPosition(MonomialOrdering),
    /// The ordering induced by the images of the basis vectors.
    Schreyer(Arc<SchreyerOrdering>),
}

/// `x^α e_i > x^β e_j` iff `x^α Lt(f_i) > x^β Lt(f_j)` in the parent
/// ordering, or they agree up to a scalar and `i > j`.
#[derive(Clone, Debug)]
pub struct SchreyerOrdering {
    /// Leading monomial and component of each image `f_i`.
    pub leads: Vec<(Monomial, usize)>,
    pub parent: ModuleOrdering,
}

impl ModuleOrdering {
    pub fn schreyer(leads: Vec<(Monomial, usize)>, parent: ModuleOrdering) -> Self {
        ModuleOrdering::Schreyer(Arc::new(SchreyerOrdering { leads, parent }))
    }

    /// The ordering induced on the ring.
    pub fn base(&self) -> &MonomialOrdering {
        match self {
            ModuleOrdering::PositionOverTerm(o) | ModuleOrdering::TermOverPosition(o) => o,
            ModuleOrdering::Schreyer(s) => s.parent.base(),
        }
    }

    pub fn is_global(&self) -> bool {
        self.base().is_global()
    }

    pub fn cmp(&self, a: (&Monomial, usize), b: (&Monomial, usize)) -> Ordering {
        match self {
            ModuleOrdering::PositionOverTerm(o) => b.1.cmp(&a.1).then_with(|| o.cmp(a.0, b.0)),
            ModuleOrdering::TermOverPosition(o) => o.cmp(a.0, b.0).then_with(|| b.1.cmp(&a.1)),
            ModuleOrdering::Schreyer(s) => {
                let (la, ca) = &s.leads[a.1];
                let (lb, cb) = &s.leads[b.1];
                let pa = a.0.mul(la);
                let pb = b.0.mul(lb);
                s.parent.cmp((&pa, *ca), (&pb, *cb)).then_with(|| a.1.cmp(&b.1))
            }
        }
    }
}
