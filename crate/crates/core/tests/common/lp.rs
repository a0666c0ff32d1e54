//! Reads linear LP-format text back and solves it by enumeration.

use std::collections::HashMap;

/// A linear LP-format model read back from text.
pub struct ParsedLp {
    pub vars: Vec<String>,
    pub objective: Vec<(f64, usize)>,
    pub rows: Vec<(Vec<(f64, usize)>, String, f64)>,
    pub binary: Vec<bool>,
}

fn parse_terms(tokens: &[&str], index: &mut HashMap<String, usize>, vars: &mut Vec<String>) -> Vec<(f64, usize)> {
    let mut out = Vec::new();
    let mut sign = 1.0;
    let mut coef: Option<f64> = None;
    for &t in tokens {
        match t {
            "+" => sign = 1.0,
            "-" => sign = -1.0,
            _ => {
                if let Ok(c) = t.parse::<f64>() {
                    coef = Some(c);
                    continue;
                }
                let next = vars.len();
                let v = *index.entry(t.to_string()).or_insert(next);
                if v == vars.len() {
                    vars.push(t.to_string());
                }
                out.push((sign * coef.unwrap_or(1.0), v));
                sign = 1.0;
                coef = None;
            }
        }
    }
    out
}

pub fn parse_lp(text: &str) -> ParsedLp {
    let mut statements: Vec<(String, String)> = Vec::new();
    let mut section = String::new();
    for line in text.lines() {
        if !line.starts_with(' ') {
            section = line.to_string();
        } else if line.starts_with("  ") {
            statements.last_mut().unwrap().1.push_str(line);
        } else {
            statements.push((section.clone(), line.to_string()));
        }
    }
    let mut index = HashMap::new();
    let mut vars = Vec::new();
    let mut objective = Vec::new();
    let mut rows = Vec::new();
    let mut binaries = Vec::new();
    for (sec, body) in &statements {
        let tokens: Vec<&str> = body.split_whitespace().collect();
        match sec.as_str() {
            "Minimize" => objective = parse_terms(&tokens[1..], &mut index, &mut vars),
            "Subject To" => {
                let op = tokens.iter().position(|t| ["<=", ">=", "="].contains(t)).unwrap();
                let terms = parse_terms(&tokens[1..op], &mut index, &mut vars);
                rows.push((terms, tokens[op].to_string(), tokens[op + 1].parse().unwrap()));
            }
            "Bounds" => {
                let names: Vec<&str> = tokens
                    .iter()
                    .copied()
                    .filter(|t| t.parse::<f64>().is_err() && !["<=", ">="].contains(t))
                    .collect();
                parse_terms(&names, &mut index, &mut vars);
            }
            "Binaries" => binaries.extend(tokens.iter().map(|t| t.to_string())),
            _ => {}
        }
    }
    let binary = vars.iter().map(|v| binaries.contains(v)).collect();
    ParsedLp { vars, objective, rows, binary }
}

/// Minimum of a parsed model over integer points with every integer in `0..=cap`.
pub fn enumerate_optimum(lp: &ParsedLp, cap: i64) -> Option<f64> {
    let k = lp.vars.len();
    let mut vals = vec![0i64; k];
    let mut best: Option<f64> = None;
    loop {
        let feasible = lp.rows.iter().all(|(terms, op, rhs)| {
            let lhs: f64 = terms.iter().map(|&(c, v)| c * vals[v] as f64).sum();
            match op.as_str() {
                "<=" => lhs <= rhs + 1e-9,
                ">=" => lhs >= rhs - 1e-9,
                _ => (lhs - rhs).abs() < 1e-9,
            }
        });
        if feasible {
            let obj: f64 = lp.objective.iter().map(|&(c, v)| c * vals[v] as f64).sum();
            best = Some(best.map_or(obj, |b: f64| b.min(obj)));
        }
        let mut pos = 0;
        loop {
            if pos == k {
                return best;
            }
            let top = if lp.binary[pos] { 1 } else { cap };
            if vals[pos] < top {
                vals[pos] += 1;
                break;
            }
            vals[pos] = 0;
            pos += 1;
        }
    }
}
