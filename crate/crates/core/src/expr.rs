//! Textual graph expressions such as `total(prod(star:5,star:3))`.
//!
//! ```text
//! spec  := star:N | complete:N | path:N | cycle:N | file:PATH
//!        | prod(spec,spec) | line(spec) | total(spec) | pow(spec,K)
//! ```
//! Whitespace between tokens is ignored. `file:` reads a `.json` graph document or, for any
//! other extension, an edge list.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use crate::graph::{complete, cycle, path, star, Graph, GraphError};
use crate::operators::{cartesian_product, graph_power, line_graph, total_graph};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GraphSpec {
    Star(usize),
    Complete(usize),
    Path(usize),
    Cycle(usize),
    File(PathBuf),
    Product(Box<GraphSpec>, Box<GraphSpec>),
    Line(Box<GraphSpec>),
    Total(Box<GraphSpec>),
    Power(Box<GraphSpec>, usize),
}

/// Parse failure; `position` is a 0-based byte offset into the input.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("at column {}: {message}", position + 1)]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

#[derive(Debug, thiserror::Error)]
pub enum BuildError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError { position: self.pos, message: message.into() })
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn eat(&mut self, c: char) -> Result<(), ParseError> {
        self.skip_ws();
        if self.rest().starts_with(c) {
            self.pos += c.len_utf8();
            Ok(())
        } else {
            match self.rest().chars().next() {
                Some(found) => self.err(format!("expected '{c}', found '{found}'")),
                None => self.err(format!("expected '{c}', found end of input")),
            }
        }
    }

    fn word(&mut self) -> &'a str {
        self.skip_ws();
        let len = self.rest().find(|c: char| !c.is_ascii_alphanumeric() && c != '_').unwrap_or(self.rest().len());
        let w = &self.rest()[..len];
        self.pos += len;
        w
    }

    fn number(&mut self) -> Result<usize, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let digits = self.rest().find(|c: char| !c.is_ascii_digit()).unwrap_or(self.rest().len());
        if digits == 0 {
            return self.err("expected a number");
        }
        self.pos += digits;
        self.src[start..self.pos].parse().map_err(|_| ParseError { position: start, message: "number too large".into() })
    }

    // A file path runs to the first ',' or ')' outside brackets, or to the end.
    fn file_path(&mut self) -> Result<PathBuf, ParseError> {
        let mut depth = 0usize;
        let mut end = self.rest().len();
        for (i, c) in self.rest().char_indices() {
            match c {
                '(' => depth += 1,
                ')' if depth == 0 => {
                    end = i;
                    break;
                }
                ')' => depth -= 1,
                ',' if depth == 0 => {
                    end = i;
                    break;
                }
                _ => {}
            }
        }
        let raw = self.rest()[..end].trim();
        if raw.is_empty() {
            return self.err("expected a file path");
        }
        self.pos += end;
        Ok(PathBuf::from(raw))
    }

    fn spec(&mut self) -> Result<GraphSpec, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let name = self.word();
        let boxed = |p: &mut Self| p.spec().map(Box::new);
        match name {
            "star" | "complete" | "path" | "cycle" => {
                self.eat(':')?;
                let n = self.number()?;
                Ok(match name {
                    "star" => GraphSpec::Star(n),
                    "complete" => GraphSpec::Complete(n),
                    "path" => GraphSpec::Path(n),
                    _ => GraphSpec::Cycle(n),
                })
            }
            "file" => {
                self.eat(':')?;
                Ok(GraphSpec::File(self.file_path()?))
            }
            "prod" => {
                self.eat('(')?;
                let a = boxed(self)?;
                self.eat(',')?;
                let b = boxed(self)?;
                self.eat(')')?;
                Ok(GraphSpec::Product(a, b))
            }
            "line" | "total" => {
                self.eat('(')?;
                let a = boxed(self)?;
                self.eat(')')?;
                Ok(if name == "line" { GraphSpec::Line(a) } else { GraphSpec::Total(a) })
            }
            "pow" => {
                self.eat('(')?;
                let a = boxed(self)?;
                self.eat(',')?;
                let k = self.number()?;
                self.eat(')')?;
                Ok(GraphSpec::Power(a, k))
            }
            "" => self.err("expected a graph expression"),
            other => Err(ParseError { position: start, message: format!("unknown graph kind {other:?}") }),
        }
    }
}

impl FromStr for GraphSpec {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = Parser { src: s, pos: 0 };
        let spec = p.spec()?;
        p.skip_ws();
        if !p.rest().is_empty() {
            return p.err("unexpected trailing input");
        }
        Ok(spec)
    }
}

impl fmt::Display for GraphSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphSpec::Star(n) => write!(f, "star:{n}"),
            GraphSpec::Complete(n) => write!(f, "complete:{n}"),
            GraphSpec::Path(n) => write!(f, "path:{n}"),
            GraphSpec::Cycle(n) => write!(f, "cycle:{n}"),
            GraphSpec::File(p) => write!(f, "file:{}", p.display()),
            GraphSpec::Product(a, b) => write!(f, "prod({a},{b})"),
            GraphSpec::Line(a) => write!(f, "line({a})"),
            GraphSpec::Total(a) => write!(f, "total({a})"),
            GraphSpec::Power(a, k) => write!(f, "pow({a},{k})"),
        }
    }
}

impl GraphSpec {
    pub fn build(&self) -> Result<Graph, BuildError> {
        Ok(match self {
            GraphSpec::Star(n) => star(*n),
            GraphSpec::Complete(n) => complete(*n)?,
            GraphSpec::Path(n) => path(*n)?,
            GraphSpec::Cycle(n) => cycle(*n)?,
            GraphSpec::File(p) => {
                let text = std::fs::read_to_string(p).map_err(|source| BuildError::Io { path: p.clone(), source })?;
                if p.extension().is_some_and(|e| e == "json") {
                    Graph::from_json(&text)?
                } else {
                    Graph::from_edge_list(&text)?
                }
            }
            GraphSpec::Product(a, b) => cartesian_product(&a.build()?, &b.build()?)?.graph,
            GraphSpec::Line(a) => line_graph(&a.build()?)?,
            GraphSpec::Total(a) => total_graph(&a.build()?)?,
            GraphSpec::Power(a, k) => graph_power(&a.build()?, *k)?,
        })
    }
}
