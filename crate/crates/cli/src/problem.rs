//! Problem files: a hand-writable text format and an equivalent JSON form.
//!
//! Text format, one `key=value` per item, whitespace and `#` comments
//! ignored between items:
//!
//! ```text
//! n=2
//! A=[[5,3,2,0],[0,2,3,5]]   # rows of the matrix A
//! B=[[1],[1]]
//! k1=1
//! k2=1
//! rho=[1,0,0,1]|[5]          # x^(1,0,0,1) - y^5
//! ```
//!
//! JSON: `{"n": 2, "A": [[...]], "B": [[...]], "k1": 1, "k2": 1,
//! "rho": {"x": [...], "y": [...]}}`.

use std::fmt;

use semiglue::groebner::{Binomial, Monomial};
use semiglue::GeneratorSet;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

/// Exponents of `ρ = x^x - y^y`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RhoSpec {
    pub x: Vec<u64>,
    pub y: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub n: usize,
    #[serde(rename = "A")]
    pub a: Vec<Vec<u64>>,
    #[serde(rename = "B", default, skip_serializing_if = "Option::is_none")]
    pub b: Option<Vec<Vec<u64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k1: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k2: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rho: Option<RhoSpec>,
}

impl ProblemFile {
    pub fn a_set(&self) -> GeneratorSet {
        GeneratorSet::from_rows(&self.a).expect("validated at parse time")
    }

    pub fn b_set(&self) -> Option<GeneratorSet> {
        self.b.as_ref().map(|b| GeneratorSet::from_rows(b).expect("validated at parse time"))
    }

    /// `ρ` as a binomial in `x1..xp, y1..yq`, oriented `y^y - x^x`.
    pub fn rho_binomial(&self) -> Option<Binomial> {
        let rho = self.rho.as_ref()?;
        let mut plus = vec![0u32; rho.x.len() + rho.y.len()];
        let mut minus = plus.clone();
        for (i, &e) in rho.x.iter().enumerate() {
            minus[i] = e as u32;
        }
        for (i, &e) in rho.y.iter().enumerate() {
            plus[rho.x.len() + i] = e as u32;
        }
        Binomial::new(Monomial(plus), Monomial(minus))
    }
}

impl fmt::Display for ProblemFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows = |m: &[Vec<u64>]| {
            let inner: Vec<String> = m
                .iter()
                .map(|r| format!("[{}]", r.iter().map(u64::to_string).collect::<Vec<_>>().join(",")))
                .collect();
            format!("[{}]", inner.join(","))
        };
        let list = |v: &[u64]| format!("[{}]", v.iter().map(u64::to_string).collect::<Vec<_>>().join(","));
        writeln!(f, "n={}", self.n)?;
        writeln!(f, "A={}", rows(&self.a))?;
        if let Some(b) = &self.b {
            writeln!(f, "B={}", rows(b))?;
        }
        if let Some(k1) = self.k1 {
            writeln!(f, "k1={k1}")?;
        }
        if let Some(k2) = self.k2 {
            writeln!(f, "k2={k2}")?;
        }
        if let Some(r) = &self.rho {
            writeln!(f, "rho={}|{}", list(&r.x), list(&r.y))?;
        }
        Ok(())
    }
}

/// Parses either format; JSON is recognized by a leading `{`.
pub fn parse_problem(text: &str) -> Result<ProblemFile, ParseError> {
    if text.trim_start().starts_with('{') {
        parse_json(text)
    } else {
        parse_text(text)
    }
}

fn parse_json(text: &str) -> Result<ProblemFile, ParseError> {
    let problem: ProblemFile = serde_json::from_str(text).map_err(|e| ParseError {
        line: e.line(),
        column: e.column(),
        message: e.to_string().split(" at line").next().unwrap_or_default().to_string(),
    })?;
    // locate semantic errors at the offending key
    let locate = |key: &str| {
        let pattern = format!("\"{key}\"");
        position_of(text, text.find(&pattern).unwrap_or(0))
    };
    validate(&problem, |key| locate(key))?;
    Ok(problem)
}

fn position_of(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, column)
}

#[derive(Clone, Debug)]
enum Value {
    Int(u64),
    List(Vec<Value>),
    Rho(Vec<u64>, Vec<u64>),
}

struct Lexer<'a> {
    chars: Vec<char>,
    pos: usize,
    text: &'a str,
}

impl Lexer<'_> {
    fn here(&self) -> (usize, usize) {
        let offset: usize = self.chars[..self.pos].iter().map(|c| c.len_utf8()).sum();
        position_of(self.text, offset)
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        let (line, column) = self.here();
        Err(ParseError { line, column, message: message.into() })
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn skip_space(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.pos += 1;
            } else if c == '#' {
                while self.peek().is_some_and(|c| c != '\n') {
                    self.pos += 1;
                }
            } else {
                break;
            }
        }
    }

    fn expect(&mut self, want: char) -> Result<(), ParseError> {
        self.skip_space();
        match self.peek() {
            Some(c) if c == want => {
                self.pos += 1;
                Ok(())
            }
            Some(c) => self.error(format!("expected '{want}', found '{c}'")),
            None => self.error(format!("expected '{want}', found end of input")),
        }
    }

    fn ident(&mut self) -> Result<String, ParseError> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_alphanumeric() || c == '_') {
            self.pos += 1;
        }
        if start == self.pos {
            return self.error(format!("expected a key, found '{}'", self.peek().unwrap_or(' ')));
        }
        Ok(self.chars[start..self.pos].iter().collect())
    }

    fn int(&mut self) -> Result<u64, ParseError> {
        self.skip_space();
        if self.peek() == Some('-') {
            return self.error("negative entries are not allowed");
        }
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return match self.peek() {
                Some(c) => self.error(format!("expected a nonnegative integer, found '{c}'")),
                None => self.error("expected a nonnegative integer, found end of input"),
            };
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        match digits.parse() {
            Ok(v) => Ok(v),
            Err(_) => {
                self.pos = start;
                self.error("integer too large")
            }
        }
    }

    fn value(&mut self) -> Result<Value, ParseError> {
        self.skip_space();
        match self.peek() {
            Some('[') => {
                self.pos += 1;
                let mut items = Vec::new();
                self.skip_space();
                if self.peek() == Some(']') {
                    self.pos += 1;
                    return Ok(Value::List(items));
                }
                loop {
                    items.push(self.value()?);
                    self.skip_space();
                    match self.peek() {
                        Some(',') => self.pos += 1,
                        Some(']') => {
                            self.pos += 1;
                            return Ok(Value::List(items));
                        }
                        Some(c) => return self.error(format!("expected ',' or ']', found '{c}'")),
                        None => return self.error("unterminated list"),
                    }
                }
            }
            _ => Ok(Value::Int(self.int()?)),
        }
    }
}

fn flat(v: &Value) -> Option<Vec<u64>> {
    match v {
        Value::List(items) => items.iter().map(|x| if let Value::Int(i) = x { Some(*i) } else { None }).collect(),
        _ => None,
    }
}

fn matrix(v: &Value) -> Option<Vec<Vec<u64>>> {
    match v {
        Value::List(rows) => rows.iter().map(flat).collect(),
        _ => None,
    }
}

fn parse_text(text: &str) -> Result<ProblemFile, ParseError> {
    let mut lx = Lexer { chars: text.chars().collect(), pos: 0, text };
    let mut n = None;
    let mut a = None;
    let mut b = None;
    let mut k1 = None;
    let mut k2 = None;
    let mut rho = None;
    let mut locations = std::collections::HashMap::new();
    loop {
        lx.skip_space();
        if lx.peek().is_none() {
            break;
        }
        let at = lx.here();
        let key = lx.ident()?;
        lx.expect('=')?;
        let value_at = {
            lx.skip_space();
            lx.here()
        };
        let value = lx.value()?;
        let value = if key == "rho" {
            lx.expect('|')?;
            let y = lx.value()?;
            match (flat(&value), flat(&y)) {
                (Some(x), Some(y)) => Value::Rho(x, y),
                _ => {
                    return Err(ParseError {
                        line: value_at.0,
                        column: value_at.1,
                        message: "rho must be two flat exponent lists".into(),
                    })
                }
            }
        } else {
            value
        };
        let err = |message: String| ParseError { line: value_at.0, column: value_at.1, message };
        if locations.insert(key.clone(), value_at).is_some() {
            return Err(ParseError { line: at.0, column: at.1, message: format!("duplicate key '{key}'") });
        }
        match (key.as_str(), value) {
            ("n", Value::Int(v)) => n = Some(v as usize),
            ("k1", Value::Int(v)) => k1 = Some(v),
            ("k2", Value::Int(v)) => k2 = Some(v),
            ("A", v) => a = Some(matrix(&v).ok_or_else(|| err("A must be a list of integer rows".into()))?),
            ("B", v) => b = Some(matrix(&v).ok_or_else(|| err("B must be a list of integer rows".into()))?),
            ("rho", Value::Rho(x, y)) => rho = Some(RhoSpec { x, y }),
            ("n" | "k1" | "k2", _) => return Err(err(format!("{key} must be an integer"))),
            _ => return Err(ParseError { line: at.0, column: at.1, message: format!("unknown key '{key}'") }),
        }
    }
    let start = (1, 1);
    let missing = |k: &str| ParseError { line: start.0, column: start.1, message: format!("missing required key '{k}'") };
    let problem = ProblemFile { n: n.ok_or_else(|| missing("n"))?, a: a.ok_or_else(|| missing("A"))?, b, k1, k2, rho };
    validate(&problem, |key| locations.get(key).copied().unwrap_or(start))?;
    Ok(problem)
}

fn validate(p: &ProblemFile, locate: impl Fn(&str) -> (usize, usize)) -> Result<(), ParseError> {
    let fail = |key: &str, message: String| {
        let (line, column) = locate(key);
        Err(ParseError { line, column, message })
    };
    if p.n == 0 {
        return fail("n", "n must be positive".into());
    }
    for (key, m) in [("A", Some(&p.a)), ("B", p.b.as_ref())] {
        let Some(m) = m else { continue };
        if m.len() != p.n {
            return fail(key, format!("{key} has {} rows but n = {}", m.len(), p.n));
        }
        let cols = m[0].len();
        if cols == 0 {
            return fail(key, format!("{key} has no columns"));
        }
        if let Some(i) = m.iter().position(|r| r.len() != cols) {
            return fail(key, format!("row {} of {key} has {} entries, expected {cols}", i + 1, m[i].len()));
        }
        if let Some(j) = (0..cols).find(|&j| m.iter().all(|r| r[j] == 0)) {
            return fail(key, format!("column {} of {key} is zero", j + 1));
        }
    }
    for (key, k) in [("k1", p.k1), ("k2", p.k2)] {
        if k == Some(0) {
            return fail(key, format!("{key} must be positive"));
        }
    }
    if let Some(rho) = &p.rho {
        let q = p.b.as_ref().map_or(0, |b| b[0].len());
        if p.b.is_none() {
            return fail("rho", "rho needs B".into());
        }
        if rho.x.len() != p.a[0].len() || rho.y.len() != q {
            return fail(
                "rho",
                format!(
                    "rho has {}|{} exponents, expected {}|{q}",
                    rho.x.len(),
                    rho.y.len(),
                    p.a[0].len()
                ),
            );
        }
        if rho.x.iter().chain(&rho.y).any(|&e| e > u32::MAX as u64) {
            return fail("rho", "exponent too large".into());
        }
        if rho.x.iter().chain(&rho.y).all(|&e| e == 0) {
            return fail("rho", "rho is zero".into());
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_line_text() {
        let p = parse_problem("n=2 A=[[5,3,2,0],[0,2,3,5]] B=[[1],[1]]").unwrap();
        assert_eq!(p.n, 2);
        assert_eq!(p.a, vec![vec![5, 3, 2, 0], vec![0, 2, 3, 5]]);
        assert_eq!(p.b, Some(vec![vec![1], vec![1]]));
        assert_eq!(parse_problem(&p.to_string()).unwrap(), p);
    }

    #[test]
    fn text_with_comments_and_rho() {
        let text = "# example\nn=2\nA=[[5,3,2,0],\n   [0,2,3,5]]  # rows\nB=[[1],[1]]\nk1=1\nk2=1\nrho=[1,0,0,1]|[5]\n";
        let p = parse_problem(text).unwrap();
        assert_eq!(p.rho, Some(RhoSpec { x: vec![1, 0, 0, 1], y: vec![5] }));
        let rho = p.rho_binomial().unwrap();
        assert_eq!(rho.format(&semiglue::groebner::split_names(4, 1)), "y1^5 - x1*x4");
    }

    #[test]
    fn errors_have_locations() {
        let e = parse_problem("n=2\nA=[[5,0],[0,0]]\n").unwrap_err();
        assert_eq!((e.line, e.column), (2, 3));
        assert!(e.message.contains("column 2"), "{e}");
        let e = parse_problem("n=2\nA=[[5,-1],[0,1]]\n").unwrap_err();
        assert_eq!((e.line, e.column), (2, 7));
        assert!(e.message.contains("negative"));
        let e = parse_problem("n=3\nA=[[1],[2]]").unwrap_err();
        assert!(e.message.contains("rows"));
        let e = parse_problem("n=2\nA=[[1,2],[3]]").unwrap_err();
        assert!(e.message.contains("row 2"));
        let e = parse_problem("n=2\nA=[[1],[2]]\nC=1").unwrap_err();
        assert_eq!((e.line, e.column), (3, 1));
        assert!(parse_problem("n=2\nA=[[1],[2]").is_err());
        assert!(parse_problem("").unwrap_err().message.contains("missing"));
        assert!(parse_problem("n=2\nA=[[1],[2]]\nB=[[1],[1]]\nrho=[1]|[1,2]").is_err());
    }

    #[test]
    fn json_format() {
        let text = r#"{"n": 2, "A": [[5,3,2,0],[0,2,3,5]], "B": [[11,17,25,19],[11,17,25,19]], "k1": 28, "k2": 5}"#;
        let p = parse_problem(text).unwrap();
        assert_eq!((p.k1, p.k2), (Some(28), Some(5)));
        let back: ProblemFile = serde_json::from_str(&serde_json::to_string(&p).unwrap()).unwrap();
        assert_eq!(back, p);
        let e = parse_problem("{\"n\": 2,\n \"A\": [[1,-2],[0,1]]}").unwrap_err();
        assert_eq!(e.line, 2);
        let e = parse_problem("{\"n\": 2,\n \"A\": [[0,2],[0,1]]}").unwrap_err();
        assert_eq!((e.line, e.column), (2, 2));
    }
}
