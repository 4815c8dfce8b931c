//! Command results and their text and JSON renderings.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::resolutions::BettiTable;

pub const FORMAT_VERSION: u32 = 1;

/// A local dimension that may be infinite (`null` in JSON).
pub type MaybeInfinite = Option<u64>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiEntry {
    pub i: usize,
    pub j: i64,
    pub value: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BezoutPointValue {
    pub point: String,
    pub claimed: Option<u64>,
    pub computed: u64,
}

/// The payload of a result, tagged by `kind`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value", rename_all = "kebab-case")]
pub enum ResultValue {
    Integer(i64),
    /// An infinite dimension.
    Infinite,
    Boolean(bool),
    Polynomial {
        ring: String,
        poly: String,
    },
    Ideal {
        ring: String,
        generators: Vec<String>,
    },
    Gb {
        ring: String,
        ordering: String,
        elements: Vec<String>,
    },
    Saturation {
        ring: String,
        generators: Vec<String>,
        steps: u32,
    },
    Matrix {
        ring: String,
        rows: Vec<Vec<String>>,
    },
    Kernel {
        ring: String,
        generators: Vec<Vec<String>>,
        presentation: Vec<Vec<String>>,
    },
    Resolution {
        shape: String,
        ranks: Vec<usize>,
        twists: Vec<Vec<i64>>,
        minimal: bool,
    },
    Betti {
        entries: Vec<BettiEntry>,
    },
    Hilbert {
        polynomial: String,
        degree: String,
        arithmetic_genus: String,
        projective_dim: i64,
        values: Vec<(i64, String)>,
    },
    Multiplicity {
        ring: String,
        multiplicity: u64,
        tangent_cone: String,
        ordinary: bool,
    },
    Milnor {
        milnor: MaybeInfinite,
        tjurina: MaybeInfinite,
    },
    Pluecker {
        genus: i64,
        dual_degree: i64,
        flexes: i64,
        bitangents: i64,
        consistent: bool,
    },
    RationalFunctions {
        ring: String,
        dimension: usize,
        degree: u32,
        functions: Vec<(String, String)>,
    },
    Bezout {
        points: Vec<BezoutPointValue>,
        residual: u64,
        total: u64,
        expected: u64,
        certified: bool,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResultEntry {
    /// The statement that produced the result, in canonical form.
    pub statement: String,
    #[serde(flatten)]
    pub value: ResultValue,
    #[serde(default)]
    pub warnings: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResultDocument {
    pub format_version: u32,
    pub results: Vec<ResultEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Default for ResultDocument {
    fn default() -> Self {
        ResultDocument {
            format_version: FORMAT_VERSION,
            results: Vec::new(),
            note: None,
        }
    }
}

fn dim_text(d: &MaybeInfinite) -> String {
    d.map_or_else(|| "infinite".into(), |v| v.to_string())
}

fn matrix_text(rows: &[Vec<String>]) -> String {
    if rows.is_empty() || rows.iter().all(|r| r.is_empty()) {
        return "(empty matrix)".into();
    }
    let ncols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..ncols)
        .map(|j| {
            rows.iter()
                .filter_map(|r| r.get(j))
                .map(|s| s.chars().count())
                .max()
                .unwrap_or(1)
        })
        .collect();
    let lines: Vec<String> = rows
        .iter()
        .map(|r| {
            let cells: Vec<String> = r
                .iter()
                .enumerate()
                .map(|(j, s)| format!("{s:>w$}", w = widths[j]))
                .collect();
            format!("[ {} ]", cells.join("  "))
        })
        .collect();
    lines.join("\n")
}

impl ResultValue {
    /// Plain-text form used by the CLI.
    pub fn render_text(&self) -> String {
        match self {
            ResultValue::Integer(n) => n.to_string(),
            ResultValue::Infinite => "infinite".into(),
            ResultValue::Boolean(b) => b.to_string(),
            ResultValue::Polynomial { poly, .. } => poly.clone(),
            ResultValue::Ideal { generators, .. } => {
                if generators.is_empty() {
                    "(0)".into()
                } else {
                    generators.join("\n")
                }
            }
            ResultValue::Gb { elements, .. } => elements.join("\n"),
            ResultValue::Saturation { generators, steps, .. } => {
                format!("{}\n(stabilized after {steps} steps)", generators.join("\n"))
            }
            ResultValue::Matrix { rows, .. } => matrix_text(rows),
            ResultValue::Kernel {
                generators,
                presentation,
                ..
            } => format!(
                "generators:\n{}\npresentation:\n{}",
                matrix_text(generators),
                matrix_text(presentation)
            ),
            ResultValue::Resolution { shape, minimal, .. } => {
                format!("{shape}{}", if *minimal { "" } else { "  (not minimal)" })
            }
            ResultValue::Betti { entries } => {
                let t = BettiTable::from_entries(entries.iter().map(|e| ((e.i, e.j), e.value)));
                t.render().trim_end().to_string()
            }
            ResultValue::Hilbert {
                polynomial,
                degree,
                arithmetic_genus,
                projective_dim,
                values,
            } => {
                let mut s = format!(
                    "hilbert polynomial: {polynomial}\ndimension: {projective_dim}\ndegree: {degree}\narithmetic genus: {arithmetic_genus}"
                );
                if !values.is_empty() {
                    let v: Vec<String> = values.iter().map(|(d, h)| format!("{d}:{h}")).collect();
                    write!(s, "\nvalues: {}", v.join(" ")).unwrap();
                }
                s
            }
            ResultValue::Multiplicity {
                multiplicity,
                tangent_cone,
                ordinary,
                ..
            } => format!("multiplicity={multiplicity} tangent_cone={tangent_cone} ordinary={ordinary}"),
            ResultValue::Milnor { milnor, tjurina } => {
                format!("milnor={} tjurina={}", dim_text(milnor), dim_text(tjurina))
            }
            ResultValue::Pluecker {
                genus,
                dual_degree,
                flexes,
                bitangents,
                ..
            } => format!("g={genus} dcheck={dual_degree} flexes={flexes} bitangents={bitangents}"),
            ResultValue::RationalFunctions {
                dimension, functions, ..
            } => {
                let mut s = format!("l = {dimension}");
                for (n, d) in functions {
                    write!(s, "\n({n}) / ({d})").unwrap();
                }
                s
            }
            ResultValue::Bezout {
                points,
                residual,
                total,
                expected,
                certified,
            } => {
                let mut s = String::new();
                for p in points {
                    write!(s, "({}) i={}", p.point, p.computed).unwrap();
                    if let Some(c) = p.claimed {
                        write!(s, " claimed={c}{}", if c == p.computed { "" } else { " MISMATCH" }).unwrap();
                    }
                    s.push('\n');
                }
                write!(
                    s,
                    "total={total} (residual {residual}) expected={expected} {}",
                    if *certified { "certified" } else { "not certified" }
                )
                .unwrap();
                s
            }
        }
    }
}

impl ResultDocument {
    /// Text output. With `headers`, each result is preceded by its
    /// statement.
    pub fn render_text(&self, headers: bool) -> String {
        let mut out = String::new();
        for r in &self.results {
            if headers {
                writeln!(out, "-- {}", r.statement).unwrap();
            }
            writeln!(out, "{}", r.value.render_text()).unwrap();
            for w in &r.warnings {
                writeln!(out, "warning: {w}").unwrap();
            }
        }
        if let Some(n) = &self.note {
            writeln!(out, "note: {n}").unwrap();
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<ResultDocument> {
        let doc: ResultDocument =
            serde_json::from_str(text).map_err(|e| Error::parse(e.line(), e.column().max(1), e.to_string()))?;
        if doc.format_version != FORMAT_VERSION {
            return Err(Error::InvalidArgument(format!(
                "unsupported format_version {}",
                doc.format_version
            )));
        }
        Ok(doc)
    }
}
