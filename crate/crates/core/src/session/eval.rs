//! Evaluation of parsed sessions.

use std::collections::HashMap;
use std::sync::{mpsc, Arc, Mutex};

use num_traits::ToPrimitive;

use super::ast::{Arg, FieldSpec, SessionAst, Statement, StatementKind};
use super::lexer::Pos;
use super::result::{BettiEntry, BezoutPointValue, ResultEntry, ResultValue};
use crate::error::{Error, Result};
use crate::field::{Coeff, Field};
use crate::gbasis::{divide_with_remainder, Ideal};
use crate::idealops::{affine_dim, colon, eliminate, homogenize_generators, intersect, projective_closure, saturate};
use crate::localstd::{
    curve_multiplicity, intersection_multiplicity, local_dim, milnor_tjurina, standard_basis, LocalDimension,
};
use crate::modsyz::{kernel, syzygy_matrix, Subquotient};
use crate::planecurves::{
    bezout_certify, dual_curve, ordinary_adjoint_ideal, plane_genus, pluecker, riemann_roch_space, Divisor, PlaneCurve,
    ProjPoint,
};
use crate::poly::{MonomialOrdering, OrderingBlock, Poly, PolyMatrix, PolyRing, Ring};
use crate::resolutions::{
    betti_table, hilbert_data, hilbert_function, minimal_betti, minimize, resolve_module, resolve_quotient,
};

/// A named value in a session.
#[derive(Clone, Debug)]
enum Object {
    Ring(Ring),
    Ideal(Ideal),
    Poly(Ring, Poly),
    Matrix(Ring, PolyMatrix),
    Point(Vec<Coeff>),
    Divisor(Vec<(Vec<Coeff>, i64)>),
}

type Env = Arc<HashMap<String, Object>>;

struct Output {
    value: ResultValue,
    warnings: Vec<String>,
    object: Option<Object>,
}

impl Output {
    fn new(value: ResultValue) -> Output {
        Output {
            value,
            warnings: Vec::new(),
            object: None,
        }
    }

    fn bind(mut self, object: Object) -> Output {
        self.object = Some(object);
        self
    }
}

/// Evaluation settings.
#[derive(Clone, Copy, Debug)]
pub struct EvalOptions {
    /// Worker threads for independent commands; results stay in order.
    pub jobs: usize,
}

impl Default for EvalOptions {
    fn default() -> Self {
        EvalOptions { jobs: 1 }
    }
}

/// Evaluation context: the names visible to a statement and the active
/// ring.
struct Ctx<'a> {
    env: &'a HashMap<String, Object>,
    ring: Option<&'a Ring>,
}

fn wrong(a: &Arg, what: &str) -> Error {
    a.pos().error(format!("expected {what}, found `{a}`"))
}

fn fmt_polys(ring: &Ring, ps: &[Poly]) -> Vec<String> {
    ps.iter().map(|p| ring.format(p)).collect()
}

fn fmt_matrix(ring: &Ring, m: &PolyMatrix) -> Vec<Vec<String>> {
    (0..m.rows()).map(|i| fmt_polys(ring, &m.row(i))).collect()
}

fn global_ordering(ring: &Ring) -> MonomialOrdering {
    let o = ring.default_ordering();
    if o.is_global() {
        o.clone()
    } else {
        MonomialOrdering::DegRevLex
    }
}

/// Reduced Groebner basis under the ring's global ordering, as generator
/// strings.
fn canonical(i: &Ideal) -> Result<Vec<String>> {
    let gb = i.reduced_gb(&global_ordering(i.ring()))?;
    Ok(fmt_polys(i.ring(), &gb.elements))
}

fn ideal_output(i: Ideal) -> Result<Output> {
    let generators = canonical(&i)?;
    Ok(Output::new(ResultValue::Ideal {
        ring: i.ring().to_string(),
        generators,
    })
    .bind(Object::Ideal(i)))
}

fn dim_value(d: LocalDimension) -> ResultValue {
    match d {
        LocalDimension::Finite(n) => ResultValue::Integer(n as i64),
        LocalDimension::Infinite => ResultValue::Infinite,
    }
}

fn field_of(spec: &FieldSpec) -> Result<Field> {
    match spec {
        FieldSpec::Rationals => Ok(Field::Rationals),
        FieldSpec::Prime(p) => Field::prime(*p),
    }
}

/// Resolves an ordering argument for a ring with `n` variables.
fn ordering_arg(a: &Arg, n: usize) -> Result<MonomialOrdering> {
    let weights = |args: &[Arg]| -> Result<Vec<u32>> {
        args.iter()
            .map(|x| {
                let v = int_arg(x)?;
                u32::try_from(v).map_err(|_| x.pos().error("weights must be nonnegative"))
            })
            .collect()
    };
    let ord = match a {
        Arg::Word(w, _) => match w.as_str() {
            "lex" => MonomialOrdering::Lex,
            "degrevlex" | "dp" => MonomialOrdering::DegRevLex,
            "neg_degrevlex" | "negdegrevlex" | "ds" => MonomialOrdering::neg_degrevlex(n),
            _ => return Err(wrong(a, "a monomial ordering")),
        },
        Arg::Call(w, args, _) => match w.as_str() {
            "wdegrevlex" => MonomialOrdering::WDegRevLex(weights(args)?),
            "neg_wdegrevlex" => MonomialOrdering::NegWDegRevLex(weights(args)?),
            "block" => {
                let mut blocks = Vec::new();
                let mut start = 0;
                for b in args {
                    let Arg::Tuple(parts, _) = b else {
                        return Err(wrong(b, "`ordering:length`"));
                    };
                    if parts.len() != 2 {
                        return Err(wrong(b, "`ordering:length`"));
                    }
                    let len =
                        usize::try_from(int_arg(&parts[1])?).map_err(|_| parts[1].pos().error("negative length"))?;
                    let ordering = ordering_arg(&parts[0], len)?;
                    blocks.push(OrderingBlock { ordering, start, len });
                    start += len;
                }
                MonomialOrdering::Block(blocks)
            }
            _ => return Err(wrong(a, "a monomial ordering")),
        },
        _ => return Err(wrong(a, "a monomial ordering")),
    };
    ord.validate(n).map_err(|e| a.pos().error(e.to_string()))?;
    Ok(ord)
}

fn int_arg(a: &Arg) -> Result<i64> {
    super::ast::arg_int(a)
}

fn rational_coeff(a: &Arg, field: Field, lookup: &dyn Fn(&str) -> Option<Poly>) -> Result<Coeff> {
    match a {
        Arg::Num(q, p) => field.from_rational(q).map_err(|e| p.error(e.to_string())),
        Arg::Expr(e, p) => {
            let ring = PolyRing::new(field, ["_"])?;
            let v = e.eval(&ring, lookup)?;
            if !v.is_constant() {
                return Err(p.error("point coordinates must be constants"));
            }
            Ok(v.constant_coeff())
        }
        other => Err(wrong(other, "a number")),
    }
}

fn poly_lookup<'a>(env: &'a HashMap<String, Object>, ring: &Ring) -> impl Fn(&str) -> Option<Poly> + 'a {
    let ring = ring.clone();
    move |n: &str| match env.get(n) {
        Some(Object::Poly(r, p)) if *r == ring => Some(p.clone()),
        _ => None,
    }
}

impl Ctx<'_> {
    fn ring(&self, pos: Pos) -> Result<&Ring> {
        self.ring.ok_or_else(|| pos.error("no ring declared yet"))
    }

    fn lookup_poly(&self, ring: &Ring) -> impl Fn(&str) -> Option<Poly> + '_ {
        poly_lookup(self.env, ring)
    }

    fn poly(&self, a: &Arg) -> Result<(Ring, Poly)> {
        match a {
            Arg::Word(w, p) => match self.env.get(w) {
                Some(Object::Poly(r, f)) => Ok((r.clone(), f.clone())),
                _ => {
                    let ring = self.ring(*p)?;
                    match ring.var_index(w) {
                        Some(i) => Ok((ring.clone(), ring.var(i))),
                        None => Err(wrong(a, "a polynomial")),
                    }
                }
            },
            Arg::Expr(e, p) => {
                let ring = self.ring(*p)?;
                let f = e.eval(ring, &self.lookup_poly(ring))?;
                Ok((ring.clone(), f))
            }
            Arg::Num(q, p) => {
                let ring = self.ring(*p)?;
                let c = ring.field().from_rational(q).map_err(|e| p.error(e.to_string()))?;
                Ok((ring.clone(), ring.constant(c)))
            }
            _ => Err(wrong(a, "a polynomial")),
        }
    }

    fn ideal(&self, a: &Arg) -> Result<Ideal> {
        match a {
            Arg::Word(w, _) => match self.env.get(w) {
                Some(Object::Ideal(i)) => Ok(i.clone()),
                Some(Object::Poly(r, f)) => Ideal::new(r.clone(), vec![f.clone()]),
                _ => Err(wrong(a, "an ideal")),
            },
            Arg::List(items, p) => {
                let ring = self.ring(*p)?.clone();
                let gens = items
                    .iter()
                    .map(|x| {
                        let (r, f) = self.poly(x)?;
                        if r != ring {
                            return Err(x.pos().error("polynomial from another ring"));
                        }
                        Ok(f)
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ideal::new(ring, gens)
            }
            _ => Err(wrong(a, "an ideal")),
        }
    }

    fn matrix(&self, a: &Arg) -> Result<(Ring, PolyMatrix)> {
        match a {
            Arg::Word(w, _) => match self.env.get(w) {
                Some(Object::Matrix(r, m)) => Ok((r.clone(), m.clone())),
                _ => Err(wrong(a, "a matrix")),
            },
            _ => Err(wrong(a, "a matrix")),
        }
    }

    fn point(&self, a: &Arg, field: Field) -> Result<Vec<Coeff>> {
        match a {
            Arg::Word(w, _) => match self.env.get(w) {
                Some(Object::Point(c)) => {
                    if c.first().is_some_and(|x| x.field() != field) {
                        return Err(a.pos().error("point declared over another field"));
                    }
                    Ok(c.clone())
                }
                _ => Err(wrong(a, "a point")),
            },
            Arg::Tuple(items, _) => items.iter().map(|x| rational_coeff(x, field, &|_| None)).collect(),
            Arg::Num(..) => Ok(vec![rational_coeff(a, field, &|_| None)?]),
            _ => Err(wrong(a, "a point")),
        }
    }

    fn proj_point(&self, a: &Arg, field: Field) -> Result<ProjPoint> {
        ProjPoint::new(self.point(a, field)?).map_err(|e| a.pos().error(e.to_string()))
    }

    /// A point with an attached integer: `P:3` or `a:b:c:3`.
    fn point_with_int(&self, a: &Arg, field: Field) -> Result<(ProjPoint, Option<i64>)> {
        match a {
            Arg::Tuple(items, p) if items.len() == 2 && matches!(items[0], Arg::Word(..)) => {
                Ok((self.proj_point(&items[0], field)?, Some(int_arg(&items[1])?)))
            }
            Arg::Tuple(items, p) if items.len() == 4 => {
                let t = Arg::Tuple(items[..3].to_vec(), *p);
                Ok((self.proj_point(&t, field)?, Some(int_arg(&items[3])?)))
            }
            _ => Ok((self.proj_point(a, field)?, None)),
        }
    }

    fn curve(&self, a: &Arg) -> Result<PlaneCurve> {
        let (ring, f) = self.poly(a)?;
        PlaneCurve::new(ring, f).map_err(|e| match e {
            Error::DimensionMismatch(m) | Error::NonHomogeneous(m) => a.pos().error(m),
            other => other,
        })
    }

    fn sing_list(&self, a: &Arg, field: Field) -> Result<Vec<(ProjPoint, u32)>> {
        let Arg::List(items, _) = a else {
            return Err(wrong(a, "a list of singular points `[P:r, ...]`"));
        };
        items
            .iter()
            .map(|x| match self.point_with_int(x, field)? {
                (p, Some(r)) => u32::try_from(r)
                    .map(|r| (p, r))
                    .map_err(|_| x.pos().error("negative multiplicity")),
                (_, None) => Err(wrong(x, "`point:multiplicity`")),
            })
            .collect()
    }

    fn divisor(&self, a: &Arg, field: Field) -> Result<Divisor> {
        let entries = match a {
            Arg::Word(w, _) => match self.env.get(w) {
                Some(Object::Divisor(d)) => d.clone(),
                _ => return Err(wrong(a, "a divisor")),
            },
            Arg::Num(q, _) if q.numer().to_i64() == Some(0) => Vec::new(),
            _ => return Err(wrong(a, "a divisor")),
        };
        let pts = entries
            .into_iter()
            .map(|(c, n)| {
                if c.first().is_some_and(|x| x.field() != field) {
                    return Err(a.pos().error("divisor declared over another field"));
                }
                Ok((ProjPoint::new(c)?, n))
            })
            .collect::<Result<Vec<_>>>()?;
        Divisor::new(pts)
    }

    fn exec(&self, op: &str, args: &[Arg], pos: Pos) -> Result<Output> {
        match op {
            "gb" => {
                let i = self.ideal(&args[0])?;
                let ord = match args.get(1) {
                    Some(a) => ordering_arg(a, i.ring().nvars())?,
                    None => i.ring().default_ordering().clone(),
                };
                if !ord.is_global() {
                    return Err(Error::NotGlobal);
                }
                let gb = i.reduced_gb(&ord)?;
                let elements = gb.elements.iter().map(|p| p.format(i.ring().names(), &ord)).collect();
                Ok(Output::new(ResultValue::Gb {
                    ring: i.ring().to_string(),
                    ordering: ord.to_string(),
                    elements,
                })
                .bind(Object::Ideal(Ideal::new(i.ring().clone(), gb.elements)?)))
            }
            "nf" => {
                let (ring, f) = self.poly(&args[0])?;
                let i = self.ideal(&args[1])?;
                if *i.ring() != ring {
                    return Err(Error::RingMismatch);
                }
                let ord = match args.get(2) {
                    Some(a) => ordering_arg(a, ring.nvars())?,
                    None => ring.default_ordering().clone(),
                };
                let gb = i.groebner_basis(&ord)?;
                let h = divide_with_remainder(&f, &gb.elements, &ord)?.remainder;
                Ok(Output::new(ResultValue::Polynomial {
                    ring: ring.to_string(),
                    poly: h.format(ring.names(), &ord),
                })
                .bind(Object::Poly(ring, h)))
            }
            "contains" => {
                let i = self.ideal(&args[0])?;
                let (ring, f) = self.poly(&args[1])?;
                if *i.ring() != ring {
                    return Err(Error::RingMismatch);
                }
                Ok(Output::new(ResultValue::Boolean(i.contains(&f)?)))
            }
            "eliminate" => {
                let i = self.ideal(&args[0])?;
                let vars = args[1..]
                    .iter()
                    .map(|a| match a {
                        Arg::Word(w, _) => i.ring().var_index(w).ok_or_else(|| wrong(a, "a ring variable")),
                        _ => Err(wrong(a, "a ring variable")),
                    })
                    .collect::<Result<Vec<_>>>()?;
                ideal_output(eliminate(&i, &vars)?)
            }
            "dim" => Ok(Output::new(ResultValue::Integer(affine_dim(&self.ideal(&args[0])?)?))),
            "intersect" => ideal_output(intersect(&self.ideal(&args[0])?, &self.ideal(&args[1])?)?),
            "quotient" => ideal_output(colon(&self.ideal(&args[0])?, &self.ideal(&args[1])?)?),
            "saturate" => {
                let (s, steps) = saturate(&self.ideal(&args[0])?, &self.ideal(&args[1])?)?;
                Ok(Output::new(ResultValue::Saturation {
                    ring: s.ring().to_string(),
                    generators: canonical(&s)?,
                    steps,
                })
                .bind(Object::Ideal(s)))
            }
            "closure" => ideal_output(projective_closure(&self.ideal(&args[0])?)?),
            "homogenize" => {
                let h = homogenize_generators(&self.ideal(&args[0])?)?;
                let generators = fmt_polys(h.ring(), h.gens());
                Ok(Output::new(ResultValue::Ideal {
                    ring: h.ring().to_string(),
                    generators,
                })
                .bind(Object::Ideal(h)))
            }
            "syz" => {
                let (ring, m) = self.matrix(&args[0])?;
                let s = syzygy_matrix(&m, &global_ordering(&ring))?;
                Ok(Output::new(ResultValue::Matrix {
                    ring: ring.to_string(),
                    rows: fmt_matrix(&ring, &s),
                })
                .bind(Object::Matrix(ring, s)))
            }
            "kernel" => {
                let (ring, phi0) = self.matrix(&args[0])?;
                let (r1, psi) = self.matrix(&args[1])?;
                let (r2, phi) = self.matrix(&args[2])?;
                if r1 != ring || r2 != ring {
                    return Err(Error::RingMismatch);
                }
                let k = kernel(&phi0, &psi, &phi, &global_ordering(&ring))?;
                Ok(Output::new(ResultValue::Kernel {
                    ring: ring.to_string(),
                    generators: fmt_matrix(&ring, &k.generators),
                    presentation: fmt_matrix(&ring, &k.presentation),
                })
                .bind(Object::Matrix(ring, k.generators)))
            }
            "resolve" | "betti" | "hilbert" => self.resolution_command(op, args),
            "std" => {
                let i = self.ideal(&args[0])?;
                let ring = i.ring();
                let ord = if ring.default_ordering().is_local() {
                    ring.default_ordering().clone()
                } else {
                    MonomialOrdering::neg_degrevlex(ring.nvars())
                };
                let sb = standard_basis(i.gens(), &ord)?;
                Ok(Output::new(ResultValue::Gb {
                    ring: ring.to_string(),
                    ordering: ord.to_string(),
                    elements: sb.iter().map(|p| p.format(ring.names(), &ord)).collect(),
                }))
            }
            "localdim" => Ok(Output::new(dim_value(local_dim(&self.ideal(&args[0])?)?.dimension))),
            "imult" => {
                let (ring, f) = self.poly(&args[0])?;
                let (r2, g) = self.poly(&args[1])?;
                if ring != r2 {
                    return Err(Error::RingMismatch);
                }
                let p = self.point(&args[2], ring.field())?;
                Ok(Output::new(dim_value(intersection_multiplicity(&f, &g, &p)?)))
            }
            "mult" => {
                let (ring, f) = self.poly(&args[0])?;
                let p = self.point(&args[1], ring.field())?;
                let m = curve_multiplicity(&f, &p)?;
                // the tangent cone lives at the origin after translation
                Ok(Output::new(ResultValue::Multiplicity {
                    ring: ring.to_string(),
                    multiplicity: m.multiplicity,
                    tangent_cone: ring.format(&m.tangent_cone),
                    ordinary: m.ordinary,
                }))
            }
            "milnor" => {
                let (ring, f) = self.poly(&args[0])?;
                let p = self.point(&args[1], ring.field())?;
                let (mu, tau) = milnor_tjurina(&f, &p)?;
                Ok(Output::new(ResultValue::Milnor {
                    milnor: mu.finite(),
                    tjurina: tau.finite(),
                }))
            }
            "dual" => {
                let d = dual_curve(&self.curve(&args[0])?)?;
                Ok(Output::new(ResultValue::Polynomial {
                    ring: d.ring.to_string(),
                    poly: d.ring.format(&d.equation),
                })
                .bind(Object::Poly(d.ring, d.equation)))
            }
            "pluecker" => {
                let p = pluecker(int_arg(&args[0])?, int_arg(&args[1])?, int_arg(&args[2])?)?;
                let mut out = Output::new(ResultValue::Pluecker {
                    genus: p.genus,
                    dual_degree: p.dual_degree,
                    flexes: p.flexes,
                    bitangents: p.bitangents,
                    consistent: p.consistent,
                });
                if !p.consistent {
                    out.warnings
                        .push("the dual-side Pluecker identities do not hold for these numbers".into());
                }
                Ok(out)
            }
            "genus" => {
                let d = int_arg(&args[0])?;
                let deltas = match args.get(1) {
                    None => Vec::new(),
                    Some(Arg::List(items, _)) => items.iter().map(int_arg).collect::<Result<Vec<_>>>()?,
                    Some(other) => return Err(wrong(other, "a list of delta invariants")),
                };
                let g = plane_genus(d, &deltas)?;
                let mut out = Output::new(ResultValue::Integer(g.genus));
                out.warnings.extend(g.warning);
                Ok(out)
            }
            "adjoint" => {
                let c = self.curve(&args[0])?;
                let sing = self.sing_list(&args[1], c.ring().field())?;
                ideal_output(ordinary_adjoint_ideal(&c, &sing)?)
            }
            "rrspace" => {
                let c = self.curve(&args[0])?;
                let field = c.ring().field();
                let d = self.divisor(&args[1], field)?;
                let sing = match args.get(2) {
                    Some(a) => self.sing_list(a, field)?,
                    None => Vec::new(),
                };
                let l = riemann_roch_space(&c, &d, &sing)?;
                let ring = c.ring();
                Ok(Output::new(ResultValue::RationalFunctions {
                    ring: ring.to_string(),
                    dimension: l.dimension,
                    degree: l.degree,
                    functions: l
                        .numerators
                        .iter()
                        .map(|h| (ring.format(h), ring.format(&l.denominator)))
                        .collect(),
                }))
            }
            "bezout" => {
                let f = self.curve(&args[0])?;
                let g = self.curve(&args[1])?;
                let field = f.ring().field();
                let Arg::List(items, _) = &args[2] else {
                    return Err(wrong(&args[2], "a list of points"));
                };
                let pts = items
                    .iter()
                    .map(|x| {
                        let (p, claim) = self.point_with_int(x, field)?;
                        let claim = claim
                            .map(|c| u64::try_from(c).map_err(|_| x.pos().error("negative multiplicity")))
                            .transpose()?;
                        Ok((p, claim))
                    })
                    .collect::<Result<Vec<_>>>()?;
                let residual =
                    u64::try_from(int_arg(&args[3])?).map_err(|_| args[3].pos().error("negative residual count"))?;
                let rep = bezout_certify(&f, &g, &pts, residual)?;
                Ok(Output::new(ResultValue::Bezout {
                    points: rep
                        .points
                        .iter()
                        .map(|p| BezoutPointValue {
                            point: p.point.to_string(),
                            claimed: p.claimed,
                            computed: p.computed,
                        })
                        .collect(),
                    residual: rep.residual,
                    total: rep.total,
                    expected: rep.expected,
                    certified: rep.certified,
                }))
            }
            _ => Err(pos.error(format!("unknown command `{op}`"))),
        }
    }

    fn resolution_command(&self, op: &str, args: &[Arg]) -> Result<Output> {
        let flag = match args.get(1) {
            Some(Arg::Word(w, _)) if op != "hilbert" => Some(w.as_str()),
            Some(a) if op != "hilbert" => return Err(wrong(a, "`minimal` or `schreyer`")),
            _ => None,
        };
        let res = match &args[0] {
            Arg::Word(w, _) if matches!(self.env.get(w), Some(Object::Matrix(..))) => {
                let (_, m) = self.matrix(&args[0])?;
                let id = PolyMatrix::identity(m.field(), m.nvars(), m.rows());
                let graded = m.row_twists().is_some();
                resolve_module(&Subquotient::new(id, m)?, graded)?
            }
            a => {
                let i = self.ideal(a)?;
                let graded = i.ring().is_standard_graded() && i.is_homogeneous();
                resolve_quotient(&i, graded)?
            }
        };
        match op {
            "resolve" => {
                let minimal = match flag {
                    None | Some("schreyer") => false,
                    Some("minimal") => true,
                    Some(_) => return Err(wrong(&args[1], "`minimal` or `schreyer`")),
                };
                let r = if minimal { minimize(&res) } else { res };
                Ok(Output::new(ResultValue::Resolution {
                    shape: r.shape(),
                    ranks: r.ranks(),
                    twists: r.twists().to_vec(),
                    minimal: r.is_minimal(),
                }))
            }
            "betti" => {
                let table = match flag {
                    None | Some("minimal") => minimal_betti(&res)?,
                    Some("schreyer") => betti_table(&res),
                    Some(_) => return Err(wrong(&args[1], "`minimal` or `schreyer`")),
                };
                Ok(Output::new(ResultValue::Betti {
                    entries: table
                        .entries()
                        .iter()
                        .map(|(&(i, j), &value)| BettiEntry { i, j, value })
                        .collect(),
                }))
            }
            _ => {
                let upto = match args.get(1) {
                    Some(a) => Some(int_arg(a)?),
                    None => None,
                };
                let h = hilbert_data(&res)?;
                let values = match upto {
                    Some(u) => (0..=u)
                        .map(|d| Ok((d, hilbert_function(&res, d)?.to_string())))
                        .collect::<Result<Vec<_>>>()?,
                    None => Vec::new(),
                };
                Ok(Output::new(ResultValue::Hilbert {
                    polynomial: h.polynomial.to_string(),
                    degree: h.degree.to_string(),
                    arithmetic_genus: h.arithmetic_genus.to_string(),
                    projective_dim: h.projective_dim,
                    values,
                }))
            }
        }
    }
}

/// Mutable evaluation state: bound names and the active ring.
#[derive(Default)]
struct State {
    env: Env,
    ring: Option<Ring>,
}

fn set(env: &mut Env, name: &str, obj: Object) {
    Arc::make_mut(env).insert(name.to_string(), obj);
}

impl State {
    /// Applies a declaration; `None` for commands.
    fn declare(&mut self, s: &Statement) -> Result<bool> {
        let ctx_ring = self.ring.clone();
        match &s.kind {
            StatementKind::Ring {
                name,
                field,
                vars,
                weights,
                ordering,
            } => {
                let mut r = PolyRing::new(
                    field_of(field).map_err(|e| s.pos.error(e.to_string()))?,
                    vars.iter().cloned(),
                )
                .map_err(|e| s.pos.error(e.to_string()))?;
                if let Some(w) = weights {
                    r = r.with_weights(w.clone()).map_err(|e| s.pos.error(e.to_string()))?;
                }
                if let Some(o) = ordering {
                    r = r.with_ordering(ordering_arg(o, vars.len())?)?;
                }
                let r = r.into_shared();
                set(&mut self.env, name, Object::Ring(r.clone()));
                self.ring = Some(r);
            }
            StatementKind::Use(n) => match self.env.get(n) {
                Some(Object::Ring(r)) => self.ring = Some(r.clone()),
                _ => return Err(s.pos.error(format!("`{n}` is not a ring"))),
            },
            StatementKind::Ideal(name, gens) => {
                let ring = ctx_ring.ok_or_else(|| s.pos.error("no ring declared yet"))?;
                let look = poly_lookup(&self.env, &ring);
                let ps = gens.iter().map(|e| e.eval(&ring, &look)).collect::<Result<Vec<_>>>()?;
                drop(look);
                let i = Ideal::new(ring.clone(), ps)?;
                set(&mut self.env, name, Object::Ideal(i));
            }
            StatementKind::Poly(name, e) => {
                let ring = ctx_ring.ok_or_else(|| s.pos.error("no ring declared yet"))?;
                let f = e.eval(&ring, &poly_lookup(&self.env, &ring))?;
                set(&mut self.env, name, Object::Poly(ring, f));
            }
            StatementKind::Matrix(name, rows) => {
                let ring = ctx_ring.ok_or_else(|| s.pos.error("no ring declared yet"))?;
                let look = poly_lookup(&self.env, &ring);
                let ps = rows
                    .iter()
                    .map(|row| row.iter().map(|e| e.eval(&ring, &look)).collect::<Result<Vec<_>>>())
                    .collect::<Result<Vec<_>>>()?;
                drop(look);
                let m =
                    PolyMatrix::from_rows(ring.field(), ring.nvars(), ps).map_err(|e| s.pos.error(e.to_string()))?;
                set(&mut self.env, name, Object::Matrix(ring, m));
            }
            StatementKind::Point(name, coords) => {
                let ring = ctx_ring.ok_or_else(|| s.pos.error("no ring declared yet"))?;
                let c = coords
                    .iter()
                    .map(|a| rational_coeff(a, ring.field(), &|_| None))
                    .collect::<Result<Vec<_>>>()?;
                set(&mut self.env, name, Object::Point(c));
            }
            StatementKind::Divisor(name, terms) => {
                let mut d = Vec::new();
                for (n, p) in terms {
                    match self.env.get(p) {
                        Some(Object::Point(c)) => d.push((c.clone(), *n)),
                        _ => return Err(s.pos.error(format!("`{p}` is not a point"))),
                    }
                }
                set(&mut self.env, name, Object::Divisor(d));
            }
            StatementKind::Command { .. } => return Ok(false),
        }
        Ok(true)
    }
}

fn run_command(env: &HashMap<String, Object>, ring: Option<&Ring>, s: &Statement) -> Result<Output> {
    let StatementKind::Command { op, args, .. } = &s.kind else {
        unreachable!("only commands are executed");
    };
    Ctx { env, ring }.exec(op, args, s.pos)
}

fn entry(s: &Statement, out: Output) -> ResultEntry {
    ResultEntry {
        statement: s.to_string(),
        value: out.value,
        warnings: out.warnings,
    }
}

/// Runs every statement, handing each result to `sink` in statement order.
/// Stops at the first failing statement.
pub fn evaluate(ast: &SessionAst, opts: EvalOptions, sink: &mut dyn FnMut(ResultEntry)) -> Result<()> {
    if opts.jobs <= 1 {
        let mut st = State::default();
        for s in &ast.statements {
            if st.declare(s)? {
                continue;
            }
            let out = run_command(&st.env, st.ring.as_ref(), s)?;
            bind(&mut st, s, &out);
            sink(entry(s, out));
        }
        return Ok(());
    }
    evaluate_parallel(ast, opts.jobs, sink)
}

fn bind(st: &mut State, s: &Statement, out: &Output) {
    if let StatementKind::Command { bind: Some(name), .. } = &s.kind {
        if let Some(obj) = &out.object {
            set(&mut st.env, name, obj.clone());
        }
    }
}

enum Task<'a> {
    Done(Result<ResultEntry>),
    Pending(&'a Statement, Env, Option<Ring>),
}

fn evaluate_parallel(ast: &SessionAst, jobs: usize, sink: &mut dyn FnMut(ResultEntry)) -> Result<()> {
    // declarations and `let` bindings run up front; other commands only read
    // a snapshot of the names and run on the worker pool
    let mut st = State::default();
    let mut tasks: Vec<Task> = Vec::new();
    for s in &ast.statements {
        match st.declare(s) {
            Ok(true) => continue,
            Ok(false) => {}
            Err(e) => {
                tasks.push(Task::Done(Err(e)));
                break;
            }
        }
        let is_let = matches!(&s.kind, StatementKind::Command { bind: Some(_), .. });
        if is_let {
            match run_command(&st.env, st.ring.as_ref(), s) {
                Ok(out) => {
                    bind(&mut st, s, &out);
                    tasks.push(Task::Done(Ok(entry(s, out))));
                }
                Err(e) => {
                    tasks.push(Task::Done(Err(e)));
                    break;
                }
            }
        } else {
            tasks.push(Task::Pending(s, st.env.clone(), st.ring.clone()));
        }
    }
    let pending: Vec<usize> = (0..tasks.len())
        .filter(|&k| matches!(tasks[k], Task::Pending(..)))
        .collect();
    let queue = Mutex::new(pending.into_iter());
    let (tx, rx) = mpsc::channel::<(usize, Result<ResultEntry>)>();
    let tasks_ref = &tasks;
    std::thread::scope(|scope| {
        for _ in 0..jobs {
            let tx = tx.clone();
            let queue = &queue;
            scope.spawn(move || loop {
                let next = queue.lock().expect("queue lock").next();
                let Some(k) = next else { break };
                let Task::Pending(s, env, ring) = &tasks_ref[k] else {
                    continue;
                };
                let r = run_command(env, ring.as_ref(), s).map(|out| entry(s, out));
                if tx.send((k, r)).is_err() {
                    break;
                }
            });
        }
        drop(tx);
        let mut ready: HashMap<usize, Result<ResultEntry>> = HashMap::new();
        let mut next = 0;
        let mut failed: Option<Error> = None;
        let mut emit = |ready: &mut HashMap<usize, Result<ResultEntry>>, next: &mut usize| -> bool {
            while *next < tasks_ref.len() {
                let r = match &tasks_ref[*next] {
                    Task::Done(r) => r.clone(),
                    Task::Pending(..) => match ready.remove(next) {
                        Some(r) => r,
                        None => return true,
                    },
                };
                match r {
                    Ok(e) => sink(e),
                    Err(e) => {
                        failed = Some(e);
                        return false;
                    }
                }
                *next += 1;
            }
            true
        };
        if emit(&mut ready, &mut next) {
            for (k, r) in rx.iter() {
                ready.insert(k, r);
                if !emit(&mut ready, &mut next) {
                    break;
                }
            }
        }
        // drain so workers can finish
        queue.lock().expect("queue lock").by_ref().for_each(drop);
        match failed {
            Some(e) => Err(e),
            None => Ok(()),
        }
    })
}

/// Parses and evaluates `text`, collecting all results.
pub fn run_session(text: &str, opts: EvalOptions) -> Result<Vec<ResultEntry>> {
    let ast = super::ast::parse_session(text)?;
    let mut out = Vec::new();
    evaluate(&ast, opts, &mut |e| out.push(e))?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::session::parse_session;
    use crate::session::result::ResultDocument;
    use proptest::prelude::*;

    fn run(text: &str) -> Vec<ResultValue> {
        run_session(text, EvalOptions::default())
            .unwrap_or_else(|e| panic!("{e}"))
            .into_iter()
            .map(|r| r.value)
            .collect()
    }

    fn one(text: &str) -> ResultValue {
        run(text).pop().expect("a result")
    }

    #[test]
    fn ideal_commands() {
        let v = run("ring R = QQ[x,y,z] degrevlex;
             ideal I = x^2+y^2+2*z^2-8, x^2-y^2-z^2+1, x-y+z;
             gb I lex;
             nf (x^2+y^2+z^2) I lex;
             contains I (x-y+z);
             dim I;");
        let ResultValue::Gb { elements, ordering, .. } = &v[0] else {
            panic!("{v:?}")
        };
        assert_eq!(ordering, "lex");
        assert_eq!(elements.len(), 3);
        assert_eq!(elements[2], "z^4 - 3*z^2 + 1/6");
        assert_eq!(
            v[1],
            ResultValue::Polynomial {
                ring: "QQ[x,y,z] degrevlex".into(),
                poly: "-z^2 + 8".into()
            }
        );
        assert_eq!(v[2], ResultValue::Boolean(true));
        assert_eq!(v[3], ResultValue::Integer(0));
    }

    #[test]
    fn intersection_and_saturation() {
        let v = run("ring R = QQ[x0,x1,x2,x3];
             intersect [x0, x1] [x2, x3];
             let J = quotient [x0*x2, x0*x3] [x2, x3];
             saturate [x0^2*x1, x0^3] [x0];
             eliminate [x0 - x1^2, x2 - x1^3] x1;");
        let ResultValue::Ideal { generators, .. } = &v[0] else {
            panic!()
        };
        assert_eq!(generators, &["x0*x2", "x1*x2", "x0*x3", "x1*x3"]);
        let ResultValue::Ideal { generators, .. } = &v[1] else {
            panic!()
        };
        assert_eq!(generators, &["x0"]);
        let ResultValue::Saturation { generators, .. } = &v[2] else {
            panic!()
        };
        assert_eq!(generators, &["1"]);
        let ResultValue::Ideal { generators, .. } = &v[3] else {
            panic!()
        };
        assert_eq!(generators.len(), 1);
    }

    #[test]
    fn twisted_cubic() {
        let v = run("ring A = QQ[x,y,z];
             ideal T = y - x^2, z - x^3;
             dim T;
             let C = closure T;
             ring P = QQ[x0,x1,x2,x3];
             ideal H = x0*x2 - x1^2, x0^2*x3 - x1^3;
             saturate H [x0];");
        assert_eq!(v[0], ResultValue::Integer(1));
        let ResultValue::Ideal { generators, .. } = &v[1] else {
            panic!()
        };
        assert_eq!(generators.len(), 3);
        let ResultValue::Saturation { generators, .. } = &v[2] else {
            panic!()
        };
        assert_eq!(generators.len(), 3);
    }

    #[test]
    fn resolutions_and_hilbert() {
        let five = "ring S = QQ[w,x,y,z];
             ideal Q = w^2 - x*z, w*x - y*z, x^2 - w*y, x*y - z^2, y^2 - w*z;";
        let ResultValue::Betti { entries } = one(&format!("{five} betti Q;")) else {
            panic!()
        };
        let got: Vec<_> = entries.iter().map(|e| (e.i, e.j, e.value)).collect();
        assert_eq!(got, [(0, 0, 1), (1, 2, 5), (2, 3, 5), (3, 5, 1)]);
        let ResultValue::Resolution { shape, minimal, .. } = one(&format!("{five} resolve Q;")) else {
            panic!()
        };
        assert_eq!(shape, "S <- S^5(-2) <- S^5(-3)+S(-4) <- S(-4)+S(-5)");
        assert!(!minimal);
        let ResultValue::Resolution { minimal, ranks, .. } = one(&format!("{five} resolve Q minimal;")) else {
            panic!()
        };
        assert!(minimal);
        assert_eq!(ranks, [1, 5, 5, 1]);
        let h = one("ring S = QQ[a,b,c,d]; hilbert [a*b - c*d, a^2 + b^2 - c^2 - d^2] 4;");
        let ResultValue::Hilbert {
            polynomial,
            degree,
            arithmetic_genus,
            values,
            ..
        } = h
        else {
            panic!()
        };
        assert_eq!(polynomial, "4*t");
        assert_eq!(degree, "4");
        assert_eq!(arithmetic_genus, "1");
        assert_eq!(values.len(), 5);
        assert_eq!(values[0], (0, "1".to_string()));
    }

    #[test]
    fn modules() {
        let v = run("ring R = QQ[x,y];
             matrix A = [[x, y]];
             let S = syz A;
             resolve A;");
        let ResultValue::Matrix { rows, .. } = &v[0] else {
            panic!()
        };
        assert_eq!(rows.len(), 2);
        assert!(matches!(v[1], ResultValue::Resolution { .. }));
    }

    #[test]
    fn local_commands() {
        let v = run("ring R = QQ[x,y];
             imult (y^2 - x^3) (2*y^2 - x^3) 0:0;
             milnor (y^2 - x^3) 0:0;
             milnor (x*y) 0:0;
             localdim [y^2 - x^3, 2*y^2 - x^3];
             localdim [x*y];
             mult (y^2 - x^2 - x^3) 0:0;");
        assert_eq!(v[0], ResultValue::Integer(6));
        assert_eq!(
            v[1],
            ResultValue::Milnor {
                milnor: Some(2),
                tjurina: Some(2)
            }
        );
        assert_eq!(
            v[2],
            ResultValue::Milnor {
                milnor: Some(1),
                tjurina: Some(1)
            }
        );
        assert_eq!(v[3], ResultValue::Integer(6));
        assert_eq!(v[4], ResultValue::Infinite);
        let ResultValue::Multiplicity {
            multiplicity, ordinary, ..
        } = &v[5]
        else {
            panic!()
        };
        assert_eq!((*multiplicity, *ordinary), (2, true));
    }

    #[test]
    fn plane_curve_commands() {
        assert_eq!(
            one("pluecker 4 0 0;").render_text(),
            "g=3 dcheck=12 flexes=24 bitangents=28"
        );
        assert_eq!(one("genus 5 [3,1,1,1];"), ResultValue::Integer(0));
        let r = run_session("genus 3 [2];", EvalOptions::default()).unwrap();
        assert_eq!(r[0].value, ResultValue::Integer(-1));
        assert_eq!(r[0].warnings.len(), 1);
        let v = run("ring P = QQ[x,y,z];
             poly F = x^3 + y^3 + z^3;
             point p = 1:-1:0;
             point q = 0:1:-1;
             divisor D = p + q;
             rrspace F D;
             dual (x^2 + y*z);
             adjoint (z*y^2 - x^2*(x + z)) [0:0:1:2];
             bezout (y*z - x^2) y [0:0:1:2] 0;");
        let ResultValue::RationalFunctions {
            dimension, functions, ..
        } = &v[0]
        else {
            panic!()
        };
        assert_eq!((*dimension, functions.len()), (2, 2));
        let ResultValue::Polynomial { poly, ring } = &v[1] else {
            panic!()
        };
        assert_eq!(ring, "QQ[u,v,w] degrevlex");
        assert_eq!(poly, "u^2 + 4*v*w");
        let ResultValue::Ideal { generators, .. } = &v[2] else {
            panic!()
        };
        assert_eq!(generators, &["x", "y"]);
        let ResultValue::Bezout { total, certified, .. } = &v[3] else {
            panic!()
        };
        assert_eq!((*total, *certified), (2, true));
    }

    #[test]
    fn errors() {
        let e = run_session("ring R = QQ[x]; poly f = x; gb f frob;", EvalOptions::default()).unwrap_err();
        assert!(
            matches!(
                e,
                Error::Parse {
                    line: 1,
                    column: 34,
                    ..
                }
            ),
            "{e}"
        );
        let e = run_session("ring R = QQ[x]; matrix M = [[x]]; dim M;", EvalOptions::default()).unwrap_err();
        assert!(e.is_parse(), "{e}");
        let e = run_session("pluecker 1 0 0;", EvalOptions::default()).unwrap_err();
        assert!(!e.is_parse());
        let e = run_session("ring R = QQ[x,y]; milnor 0 1:1;", EvalOptions::default()).unwrap_err();
        assert!(!e.is_parse(), "{e}");
        // results before the failing statement are still delivered
        let ast = parse_session("pluecker 2 0 0; pluecker 1 0 0; pluecker 4 0 0;").unwrap();
        let mut seen = Vec::new();
        assert!(evaluate(&ast, EvalOptions::default(), &mut |r| seen.push(r)).is_err());
        assert_eq!(seen.len(), 1);
    }

    #[test]
    fn parallel_matches_sequential() {
        let text = "ring R = QQ[x,y,z];
             ideal I = x^2 - y, y^2 - z, x*z - 1;
             gb I lex;
             let J = intersect I [x, y];
             dim J;
             pluecker 3 1 0;
             ring S = QQ[a,b];
             milnor (a^3 + b^4) 0:0;
             gb J;
             use R;
             hilbert [x*y, z^2];";
        let seq = run_session(text, EvalOptions { jobs: 1 }).unwrap();
        let par = run_session(text, EvalOptions { jobs: 4 }).unwrap();
        assert_eq!(seq, par);
        assert_eq!(seq.len(), 7);
        let ast = parse_session("pluecker 2 0 0; pluecker 1 0 0; pluecker 4 0 0;").unwrap();
        let mut seen = Vec::new();
        assert!(evaluate(&ast, EvalOptions { jobs: 3 }, &mut |r| seen.push(r)).is_err());
        assert_eq!(seen.len(), 1);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn json_round_trip_of_results(
            polys in prop::collection::vec(
                prop::collection::vec((-3i64..4, 0u32..3, 0u32..3), 1..4), 1..4)
        ) {
            let gens: Vec<String> = polys
                .iter()
                .map(|ts| {
                    ts.iter()
                        .map(|(c, a, b)| format!("({c})*x^{a}*y^{b}"))
                        .collect::<Vec<_>>()
                        .join(" + ")
                })
                .collect();
            let text = format!(
                "ring R = QQ[x,y]; ideal I = {}; gb I; dim I; localdim I; let J = intersect I [x]; resolve J;",
                gens.join(", ")
            );
            let results = run_session(&text, EvalOptions::default()).unwrap();
            let doc = ResultDocument { results, ..Default::default() };
            let back = ResultDocument::from_json(&doc.to_json()).unwrap();
            prop_assert_eq!(&back, &doc);
            // emitted generators parse back in the same ring
            if let ResultValue::Gb { elements, .. } = &doc.results[0].value {
                let again = format!("ring R = QQ[x,y]; ideal K = {}; gb K;", if elements.is_empty() { "0".into() } else { elements.join(", ") });
                let r = run_session(&again, EvalOptions::default()).unwrap();
                prop_assert_eq!(&r[0].value, &doc.results[0].value);
            }
        }
    }
}
