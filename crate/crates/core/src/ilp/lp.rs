use std::collections::BTreeMap;
use std::fmt::Write;

use super::model::{ILPModel, Sense, VarKind};

const WIDTH: usize = 78;

/// Writes `model` in CPLEX LP format.
pub fn export_lp(model: &ILPModel) -> String {
    let name = |v: usize| model.variables[v].name.as_str();
    let mut out = String::new();
    out.push_str("Minimize\n");
    let mut obj = linear(&model.objective, &name);
    if !model.quadratic.is_empty() {
        // LP format halves the bracketed quadratic part.
        let mut quad = Vec::new();
        for &(a, b, k) in &model.quadratic {
            let term = if a == b {
                format!("{} ^ 2", name(a))
            } else {
                format!("{} * {}", name(a), name(b))
            };
            quad.push((2 * k, term));
        }
        let mut q = vec!["[".to_string()];
        q.extend(signed(&quad));
        q.push("] / 2".to_string());
        if !obj.is_empty() {
            q[0] = "+ [".into();
        }
        obj.extend(q);
    }
    wrap(&mut out, "obj:", &obj);
    out.push_str("Subject To\n");
    for c in &model.constraints {
        let mut parts = linear(&c.terms, &name);
        if parts.is_empty() {
            parts.push("0".into());
        }
        let op = match c.sense {
            Sense::Le => "<=",
            Sense::Ge => ">=",
            Sense::Eq => "=",
        };
        parts.push(format!("{op} {}", c.rhs));
        wrap(&mut out, &format!("{}:", c.name), &parts);
    }
    out.push_str("Bounds\n");
    for v in &model.variables {
        match v.kind {
            VarKind::Integer => writeln!(out, " {} >= 0", v.name).unwrap(),
            VarKind::Binary => writeln!(out, " 0 <= {} <= 1", v.name).unwrap(),
        }
    }
    for (header, kind) in [("Generals", VarKind::Integer), ("Binaries", VarKind::Binary)] {
        out.push_str(header);
        out.push('\n');
        let names: Vec<String> = model
            .variables
            .iter()
            .filter(|v| v.kind == kind)
            .map(|v| v.name.clone())
            .collect();
        if !names.is_empty() {
            wrap(&mut out, "", &names);
        }
    }
    out.push_str("End\n");
    out
}

fn linear<'a>(terms: &[(usize, i64)], name: &impl Fn(usize) -> &'a str) -> Vec<String> {
    let mut merged: BTreeMap<usize, i64> = BTreeMap::new();
    for &(v, k) in terms {
        *merged.entry(v).or_default() += k;
    }
    let list: Vec<(i64, String)> = merged
        .into_iter()
        .filter(|&(_, k)| k != 0)
        .map(|(v, k)| (k, name(v).to_string()))
        .collect();
    signed(&list)
}

fn signed(terms: &[(i64, String)]) -> Vec<String> {
    terms
        .iter()
        .enumerate()
        .map(|(idx, (k, var))| {
            let sign = if *k < 0 {
                "- "
            } else if idx > 0 {
                "+ "
            } else {
                ""
            };
            match k.unsigned_abs() {
                1 => format!("{sign}{var}"),
                a => format!("{sign}{a} {var}"),
            }
        })
        .collect()
}

fn wrap(out: &mut String, label: &str, parts: &[String]) {
    let mut line = format!(" {label}");
    if label.is_empty() {
        line.clear();
    }
    for p in parts {
        if line.len() + p.len() + 1 > WIDTH && !line.trim().is_empty() {
            out.push_str(&line);
            out.push('\n');
            line = String::from("  ");
            line.push_str(p);
        } else {
            line.push(' ');
            line.push_str(p);
        }
    }
    out.push_str(&line);
    out.push('\n');
}
