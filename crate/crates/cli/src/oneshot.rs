//! One-shot subcommands are translated into a small session.

use std::cmp::Ordering;
use std::io::Read;

use crate::{Command, Global};

/// Identifiers in `s` (anything starting with a letter or `_`).
fn identifiers(s: &str, out: &mut Vec<String>) {
    let mut cur = String::new();
    for ch in s.chars().chain(std::iter::once(' ')) {
        if ch.is_ascii_alphanumeric() || ch == '_' {
            cur.push(ch);
        } else {
            if cur.starts_with(|c: char| c.is_ascii_alphabetic() || c == '_') && !out.contains(&cur) {
                out.push(cur.clone());
            }
            cur.clear();
        }
    }
}

/// Natural order: `x2` before `x10`.
fn natural(a: &str, b: &str) -> Ordering {
    let split = |s: &str| {
        let cut = s.trim_end_matches(|c: char| c.is_ascii_digit()).len();
        let (head, digits) = s.split_at(cut);
        (head.to_string(), digits.parse::<u128>().ok())
    };
    split(a).cmp(&split(b)).then_with(|| a.cmp(b))
}

struct Builder<'a> {
    g: &'a Global,
    inputs: Vec<String>,
    extra_names: Vec<String>,
    plane: bool,
}

impl Builder<'_> {
    fn vars(&self) -> Result<Vec<String>, String> {
        if let Some(v) = &self.g.vars {
            return Ok(v.clone());
        }
        let mut found = Vec::new();
        for s in &self.inputs {
            identifiers(s, &mut found);
        }
        for n in &self.extra_names {
            if !found.contains(n) {
                found.push(n.clone());
            }
        }
        found.sort_by(|a, b| natural(a, b));
        if self.plane && found.iter().all(|v| ["x", "y", "z"].contains(&v.as_str())) {
            return Ok(vec!["x".into(), "y".into(), "z".into()]);
        }
        if found.is_empty() {
            found.push("x".into());
        }
        Ok(found)
    }

    fn ring(&self) -> Result<String, String> {
        let vars = self.vars()?;
        let ord = self.g.ordering.as_deref().map(|o| format!(" {o}")).unwrap_or_default();
        Ok(format!("ring R = {}[{}]{ord};\n", self.g.field, vars.join(",")))
    }
}

/// Fills missing positional arguments from standard input, one per line.
fn fill(args: Vec<&Option<String>>) -> Result<Vec<String>, String> {
    let missing = args.iter().filter(|a| a.is_none()).count();
    let mut lines = Vec::new();
    if missing > 0 {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| e.to_string())?;
        lines = s
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty())
            .map(String::from)
            .collect();
        if missing == 1 && lines.len() > 1 {
            // a single missing argument may span several lines
            lines = vec![lines.join(" ")];
        }
        if lines.len() < missing {
            return Err(format!("expected {missing} more input(s) on standard input"));
        }
    }
    let mut it = lines.into_iter();
    Ok(args
        .into_iter()
        .map(|a| a.clone().unwrap_or_else(|| it.next().unwrap_or_default()))
        .collect())
}

fn ideal(s: &str) -> String {
    format!("[{s}]")
}

fn poly(s: &str) -> String {
    format!("({s})")
}

fn matrix(name: &str, s: &str) -> String {
    let rows: Vec<String> = s
        .split(';')
        .map(|r| format!("[{}]", r.split(',').map(str::trim).collect::<Vec<_>>().join(", ")))
        .collect();
    format!("matrix {name} = [{}];\n", rows.join(", "))
}

/// `P@n` split into the point and the number.
fn at_split(s: &str, what: &str) -> Result<(String, Option<String>), String> {
    match s.rsplit_once('@') {
        Some((p, n)) => {
            n.trim().parse::<i64>().map_err(|_| format!("bad {what} in `{s}`"))?;
            Ok((p.trim().to_string(), Some(n.trim().to_string())))
        }
        None => Ok((s.trim().to_string(), None)),
    }
}

fn point(at: &str, nvars: usize) -> String {
    if at == "origin" {
        vec!["0"; nvars].join(":")
    } else {
        at.to_string()
    }
}

fn sing_list(sing: &[String]) -> Result<String, String> {
    let items = sing
        .iter()
        .map(|s| match at_split(s, "multiplicity")? {
            (p, Some(r)) => Ok(format!("{p}:{r}")),
            (_, None) => Err(format!("`--sing {s}` needs a multiplicity, e.g. 0:0:1@2")),
        })
        .collect::<Result<Vec<_>, String>>()?;
    Ok(format!("[{}]", items.join(", ")))
}

/// Session text equivalent to the one-shot command.
pub fn session_text(cmd: &Command, g: &Global) -> Result<String, String> {
    let mut b = Builder {
        g,
        inputs: Vec::new(),
        extra_names: Vec::new(),
        plane: false,
    };
    let body = match cmd {
        Command::Run { .. } => unreachable!("handled by the caller"),
        Command::Pluecker { d, delta, kappa } => return Ok(format!("pluecker {d} {delta} {kappa};\n")),
        Command::Genus { d, deltas } => {
            let ds: Vec<String> = deltas.iter().map(i64::to_string).collect();
            return Ok(format!("genus {d} [{}];\n", ds.join(", ")));
        }
        Command::Gb { ideal: i } => {
            let [i] = <[String; 1]>::try_from(fill(vec![i])?).expect("one input");
            b.inputs.push(i.clone());
            format!("gb {};\n", ideal(&i))
        }
        Command::Nf { poly: p, ideal: i } => {
            let v = fill(vec![p, i])?;
            b.inputs.extend(v.iter().cloned());
            format!("nf {} {};\n", poly(&v[0]), ideal(&v[1]))
        }
        Command::Eliminate { ideal: i, elim } => {
            let v = fill(vec![i])?;
            b.inputs.push(v[0].clone());
            b.extra_names.extend(elim.iter().cloned());
            format!("eliminate {} {};\n", ideal(&v[0]), elim.join(" "))
        }
        Command::Dim { ideal: i } => {
            let v = fill(vec![i])?;
            b.inputs.push(v[0].clone());
            format!("dim {};\n", ideal(&v[0]))
        }
        Command::Intersect { i, j } | Command::Quotient { i, j } | Command::Saturate { i, j } => {
            let v = fill(vec![i, j])?;
            b.inputs.extend(v.iter().cloned());
            let op = match cmd {
                Command::Intersect { .. } => "intersect",
                Command::Quotient { .. } => "quotient",
                _ => "saturate",
            };
            format!("{op} {} {};\n", ideal(&v[0]), ideal(&v[1]))
        }
        Command::Closure { ideal: i } => {
            let v = fill(vec![i])?;
            b.inputs.push(v[0].clone());
            format!("closure {};\n", ideal(&v[0]))
        }
        Command::Syz { matrix: m } => {
            let v = fill(vec![m])?;
            b.inputs.push(v[0].clone());
            format!("{}syz M;\n", matrix("M", &v[0]))
        }
        Command::Kernel { phi0, psi, phi } => {
            let v = fill(vec![phi0, psi, phi])?;
            b.inputs.extend(v.iter().cloned());
            format!(
                "{}{}{}kernel A B C;\n",
                matrix("A", &v[0]),
                matrix("B", &v[1]),
                matrix("C", &v[2])
            )
        }
        Command::Resolve { ideal: i, minimal } => {
            let v = fill(vec![i])?;
            b.inputs.push(v[0].clone());
            format!("resolve {}{};\n", ideal(&v[0]), if *minimal { " minimal" } else { "" })
        }
        Command::Betti { ideal: i, schreyer } => {
            let v = fill(vec![i])?;
            b.inputs.push(v[0].clone());
            format!("betti {}{};\n", ideal(&v[0]), if *schreyer { " schreyer" } else { "" })
        }
        Command::Hilbert { ideal: i, upto } => {
            let v = fill(vec![i])?;
            b.inputs.push(v[0].clone());
            let upto = upto.map(|u| format!(" {u}")).unwrap_or_default();
            format!("hilbert {}{upto};\n", ideal(&v[0]))
        }
        Command::Imult { f, g: h, at } => {
            let v = fill(vec![f, h])?;
            b.inputs.extend(v.iter().cloned());
            let n = b.vars()?.len();
            format!("imult {} {} {};\n", poly(&v[0]), poly(&v[1]), point(at, n))
        }
        Command::Mult { f, at } | Command::Milnor { f, at } => {
            let v = fill(vec![f])?;
            b.inputs.push(v[0].clone());
            let n = b.vars()?.len();
            let op = if matches!(cmd, Command::Mult { .. }) {
                "mult"
            } else {
                "milnor"
            };
            format!("{op} {} {};\n", poly(&v[0]), point(at, n))
        }
        Command::Dual { f } => {
            let v = fill(vec![f])?;
            b.inputs.push(v[0].clone());
            b.plane = true;
            format!("dual {};\n", poly(&v[0]))
        }
        Command::Adjoint { f, sing } => {
            let v = fill(vec![f])?;
            b.inputs.push(v[0].clone());
            b.plane = true;
            format!("adjoint {} {};\n", poly(&v[0]), sing_list(sing)?)
        }
        Command::Rrspace { f, divisor, sing } => {
            let v = fill(vec![f])?;
            b.inputs.push(v[0].clone());
            b.plane = true;
            let mut decl = String::new();
            let mut terms = Vec::new();
            for (k, d) in divisor.iter().enumerate() {
                let (p, n) = at_split(d, "coefficient")?;
                decl.push_str(&format!("point P{k} = {p};\n"));
                let n: i64 = n.as_deref().unwrap_or("1").parse().expect("checked");
                terms.push(format!("{n}*P{k}"));
            }
            let dv = if terms.is_empty() {
                "0".to_string()
            } else {
                terms.join(" + ").replace("+ -", "- ")
            };
            format!(
                "{decl}divisor D = {dv};\nrrspace {} D {};\n",
                poly(&v[0]),
                sing_list(sing)?
            )
        }
        Command::Bezout {
            f,
            g: h,
            point: pts,
            residual,
        } => {
            let v = fill(vec![f, h])?;
            b.inputs.extend(v.iter().cloned());
            b.plane = true;
            let items = pts
                .iter()
                .map(|s| {
                    at_split(s, "multiplicity").map(|(p, n)| match n {
                        Some(n) => format!("{p}:{n}"),
                        None => p,
                    })
                })
                .collect::<Result<Vec<_>, String>>()?;
            format!(
                "bezout {} {} [{}] {residual};\n",
                poly(&v[0]),
                poly(&v[1]),
                items.join(", ")
            )
        }
    };
    Ok(format!("{}{body}", b.ring()?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn natural_order() {
        let mut v = vec!["x10", "y", "x2", "x1", "a"];
        v.sort_by(|a, b| natural(a, b));
        assert_eq!(v, ["a", "x1", "x2", "x10", "y"]);
    }

    #[test]
    fn identifiers_skip_numbers() {
        let mut v = Vec::new();
        identifiers("3*x1^2 + y_2 - 1/2*x1", &mut v);
        assert_eq!(v, ["x1", "y_2"]);
    }

    #[test]
    fn matrices() {
        assert_eq!(matrix("M", "x, y; 0,z"), "matrix M = [[x, y], [0, z]];\n");
    }
}
