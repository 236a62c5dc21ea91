//! Loading rings, ideals, models and graphs from flags and JSON files.

use std::fmt;
use std::path::Path;

use ci_kernel::poly::{parse_polynomial, parse_polynomial_list, MonomialOrder, Polynomial, Ring, RingContext};
use ci_kernel::Error;
use serde::de::DeserializeOwned;
use serde::Deserialize;

/// Anything that should end the run with exit code 2.
#[derive(Debug)]
pub struct CliError(pub String);

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError(e.to_string())
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

/// Inline JSON if the argument starts with `{` or `[`, otherwise a path.
/// Returns a label for diagnostics together with the text.
pub fn read_source(arg: &str) -> CliResult<(String, String)> {
    let t = arg.trim_start();
    if t.starts_with('{') || t.starts_with('[') {
        return Ok(("<inline>".to_string(), arg.to_string()));
    }
    let text = std::fs::read_to_string(Path::new(arg)).map_err(|e| CliError(format!("{arg}: {e}")))?;
    Ok((arg.to_string(), text))
}

pub fn parse_json<T: DeserializeOwned>(origin: &str, text: &str) -> CliResult<T> {
    serde_json::from_str(text).map_err(|e| {
        CliError(format!(
            "{origin}:{}:{}: {}",
            e.line(),
            e.column(),
            strip_position(&e.to_string())
        ))
    })
}

pub fn load_json<T: DeserializeOwned>(arg: &str) -> CliResult<T> {
    let (origin, text) = read_source(arg)?;
    parse_json(&origin, &text)
}

// serde_json appends " at line L column C"; we print it up front instead
fn strip_position(msg: &str) -> &str {
    match msg.rfind(" at line ") {
        Some(i) => &msg[..i],
        None => msg,
    }
}

/// Error message with the offending text and a caret under `pos`.
fn caret(label: &str, text: &str, pos: usize, msg: &str) -> CliError {
    let pos = pos.min(text.len());
    let col = text[..pos].chars().count();
    CliError(format!("{label}: parse error at position {pos}: {msg}\n  {text}\n  {}^", " ".repeat(col)))
}

fn with_caret<T>(label: &str, text: &str, r: ci_kernel::Result<T>) -> CliResult<T> {
    r.map_err(|e| match e {
        Error::Parse { pos, msg } => caret(label, text, pos, &msg),
        other => CliError(format!("{label}: {other}")),
    })
}

pub fn parse_order(name: &str) -> CliResult<MonomialOrder> {
    MonomialOrder::parse(name)
        .ok_or_else(|| CliError(format!("unknown monomial order `{name}` (expected lex, grevlex or block:K)")))
}

pub fn parse_ring(decl: &str, order: MonomialOrder) -> CliResult<Ring> {
    Ok(RingContext::parse(decl, order)?)
}

pub fn parse_poly(label: &str, text: &str, ring: &Ring) -> CliResult<Polynomial> {
    with_caret(label, text, parse_polynomial(text, ring))
}

pub fn parse_polys(label: &str, text: &str, ring: &Ring) -> CliResult<Vec<Polynomial>> {
    with_caret(label, text, parse_polynomial_list(text, ring))
}

/// `"x, y"` or `["x", "y"]`.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum TextOrList {
    Text(String),
    List(Vec<String>),
}

impl TextOrList {
    pub fn joined(&self) -> String {
        match self {
            TextOrList::Text(s) => s.clone(),
            TextOrList::List(v) => v.join(", "),
        }
    }
}

/// Problem file for the ideal subcommands.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Problem {
    pub ring: Option<TextOrList>,
    pub order: Option<String>,
    pub ideal: Option<TextOrList>,
    #[serde(default)]
    pub ideals: Vec<TextOrList>,
    pub poly: Option<String>,
    pub vars: Option<TextOrList>,
}

/// Ring, ideals and extra polynomial text after merging a problem file
/// with command-line flags (flags win).
pub struct Loaded {
    pub ring: Ring,
    pub ideals: Vec<Vec<Polynomial>>,
    pub poly: Option<String>,
    pub vars: Option<String>,
}

pub struct IdealArgs<'a> {
    pub problem: Option<&'a str>,
    pub ring: Option<&'a str>,
    pub order: Option<&'a str>,
    pub ideals: &'a [String],
    pub poly: Option<&'a str>,
    pub vars: Option<&'a str>,
}

pub fn load_problem(args: &IdealArgs<'_>) -> CliResult<Loaded> {
    let problem: Problem = match args.problem {
        Some(p) => load_json(p)?,
        None => Problem::default(),
    };
    let order_name = args.order.map(str::to_string).or(problem.order).unwrap_or_else(|| "grevlex".into());
    let order = parse_order(&order_name)?;
    let decl = match (args.ring, &problem.ring) {
        (Some(r), _) => r.to_string(),
        (None, Some(r)) => r.joined(),
        (None, None) => return Err(CliError("no ring given (use --ring or a problem file)".into())),
    };
    let ring = parse_ring(&decl, order)?;
    let texts: Vec<String> = if !args.ideals.is_empty() {
        args.ideals.to_vec()
    } else {
        problem.ideal.iter().chain(&problem.ideals).map(ideal_text).collect()
    };
    let ideals = texts
        .iter()
        .enumerate()
        .map(|(k, t)| parse_polys(&format!("ideal {}", k + 1), t, &ring))
        .collect::<CliResult<Vec<_>>>()?;
    Ok(Loaded {
        ring,
        ideals,
        poly: args.poly.map(str::to_string).or(problem.poly),
        vars: args.vars.map(str::to_string).or(problem.vars.map(|v| v.joined())),
    })
}

fn ideal_text(t: &TextOrList) -> String {
    match t {
        TextOrList::Text(s) => s.clone(),
        TextOrList::List(v) => format!("[{}]", v.join(", ")),
    }
}

/// `1,2,3` as a list of indices; empty text is the empty set.
pub fn parse_index_list(label: &str, text: &str) -> CliResult<Vec<usize>> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<usize>().map_err(|_| CliError(format!("{label}: `{s}` is not a vertex index"))))
        .collect()
}

/// Claim file for `verify`.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClaimFile {
    pub name: String,
    pub ring: TextOrList,
    pub order: Option<String>,
    pub target: TextOrList,
    pub components: Vec<ComponentFile>,
    #[serde(default = "radical")]
    pub expectation: ci_kernel::catalog::Expectation,
}

fn radical() -> ci_kernel::catalog::Expectation {
    ci_kernel::catalog::Expectation::Radical
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentFile {
    pub name: String,
    pub ideal: TextOrList,
}

impl ClaimFile {
    pub fn build(&self, order_flag: Option<&str>) -> CliResult<ci_kernel::catalog::DecompositionClaim> {
        use ci_kernel::ideal::Ideal;
        let order = parse_order(order_flag.or(self.order.as_deref()).unwrap_or("grevlex"))?;
        let ring = parse_ring(&self.ring.joined(), order)?;
        let target = Ideal::new(&ring, parse_polys("target", &ideal_text(&self.target), &ring)?)?;
        let components = self
            .components
            .iter()
            .map(|c| {
                let gens = parse_polys(&format!("component {}", c.name), &ideal_text(&c.ideal), &ring)?;
                Ok((c.name.clone(), Ideal::new(&ring, gens)?))
            })
            .collect::<CliResult<Vec<_>>>()?;
        Ok(ci_kernel::catalog::DecompositionClaim {
            name: self.name.clone(),
            target,
            components,
            expectation: self.expectation,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_errors_carry_line_and_column() {
        let e = parse_json::<Problem>("f.json", "{\n  \"ring\": [\"x\",\n}").unwrap_err();
        assert!(e.0.starts_with("f.json:3:"), "{}", e.0);
    }

    #[test]
    fn polynomial_errors_point_at_the_offending_character() {
        let ring = parse_ring("x, y", MonomialOrder::Grevlex).unwrap();
        let e = parse_poly("poly", "x + * y", &ring).unwrap_err();
        assert!(e.0.contains("position 4"), "{}", e.0);
        assert!(e.0.ends_with("\n      ^"), "{:?}", e.0);
    }

    #[test]
    fn problem_file_and_flags_merge() {
        let args = IdealArgs {
            problem: Some(r#"{"ring":["x","y"],"order":"lex","ideal":["x^2","x*y"],"poly":"x"}"#),
            ring: None,
            order: None,
            ideals: &[],
            poly: Some("y"),
            vars: None,
        };
        let l = load_problem(&args).unwrap();
        assert_eq!(l.ring.order(), MonomialOrder::Lex);
        assert_eq!(l.ideals.len(), 1);
        assert_eq!(l.ideals[0].len(), 2);
        assert_eq!(l.poly.as_deref(), Some("y"));
    }

    #[test]
    fn index_lists() {
        assert_eq!(parse_index_list("A", "1, 2").unwrap(), vec![1, 2]);
        assert_eq!(parse_index_list("A", "").unwrap(), Vec::<usize>::new());
        assert!(parse_index_list("A", "1,x").is_err());
    }
}
