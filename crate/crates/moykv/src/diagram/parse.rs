//! Text format for slice diagrams.
//!
//! ```text
//! diagram trefoil {
//!   kind: unoriented
//!   slices:
//!     cup 0
//!     cup 2
//!     xo 1 / xo 1 / xo 1     # '/' or ';' may separate slices on one line
//!     cap 2
//!     cap 0
//! }
//! ```
//!
//! Cup attributes are `color=<int>` (default 1) and `orient=lu|ru` (required for
//! oriented kinds). Splits accept `color=<l>,<r>`; without it an even color is
//! split evenly.

use super::{DiagramKind, GenKind, Generator, Orient, SliceDiagram};
use crate::error::{MoyError, Result};

#[derive(Debug, Clone)]
struct Token {
    text: String,
    line: usize,
}

fn tokenize(text: &str) -> Vec<Token> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        let mut cur = String::new();
        let flush = |cur: &mut String, out: &mut Vec<Token>| {
            if !cur.is_empty() {
                out.push(Token {
                    text: std::mem::take(cur),
                    line: i + 1,
                });
            }
        };
        for ch in line.chars() {
            match ch {
                c if c.is_whitespace() => flush(&mut cur, &mut out),
                '{' | '}' | ':' | '/' | ';' => {
                    flush(&mut cur, &mut out);
                    out.push(Token {
                        text: ch.to_string(),
                        line: i + 1,
                    });
                }
                c => cur.push(c),
            }
        }
        flush(&mut cur, &mut out);
    }
    out
}

struct Parser {
    toks: Vec<Token>,
    i: usize,
    last_line: usize,
}

impl Parser {
    fn err(&self, message: impl Into<String>) -> MoyError {
        let line = self.toks.get(self.i).map(|t| t.line).unwrap_or(self.last_line);
        MoyError::Syntax {
            line,
            message: message.into(),
        }
    }

    fn peek(&self) -> Option<&str> {
        self.toks.get(self.i).map(|t| t.text.as_str())
    }

    fn next(&mut self) -> Result<String> {
        let t = self.toks.get(self.i).ok_or_else(|| self.err("unexpected end of input"))?;
        self.i += 1;
        Ok(t.text.clone())
    }

    fn expect(&mut self, s: &str) -> Result<()> {
        let t = self.next()?;
        if t == s {
            Ok(())
        } else {
            self.i -= 1;
            Err(self.err(format!("expected '{s}', found '{t}'")))
        }
    }

    fn number(&mut self, what: &str) -> Result<usize> {
        let t = self.next()?;
        t.parse().map_err(|_| {
            self.i -= 1;
            self.err(format!("expected {what}, found '{t}'"))
        })
    }

    fn diagram(&mut self) -> Result<SliceDiagram> {
        self.expect("diagram")?;
        let name = self.next()?;
        if matches!(name.as_str(), "{" | "}" | ":") {
            self.i -= 1;
            return Err(self.err("expected a diagram name"));
        }
        self.expect("{")?;
        self.expect("kind")?;
        self.expect(":")?;
        let kind = match self.next()?.as_str() {
            "moy" => DiagramKind::Moy,
            "link" => DiagramKind::Link,
            "unoriented" => DiagramKind::Unoriented,
            other => {
                self.i -= 1;
                return Err(self.err(format!("unknown kind '{other}'")));
            }
        };
        self.expect("slices")?;
        self.expect(":")?;
        let mut slices = Vec::new();
        loop {
            match self.peek() {
                Some("}") => {
                    self.i += 1;
                    break;
                }
                Some("/") | Some(";") => {
                    self.i += 1;
                }
                Some(_) => slices.push(self.generator(kind)?),
                None => return Err(self.err("missing '}'")),
            }
        }
        SliceDiagram::new(name, kind, slices)
    }

    fn generator(&mut self, kind: DiagramKind) -> Result<Generator> {
        let word = self.next()?;
        let gk = match word.as_str() {
            "cup" => GenKind::Cup,
            "cap" => GenKind::Cap,
            "mrg" => GenKind::Mrg,
            "spl" => GenKind::Spl,
            "xo" => GenKind::Xo,
            "xu" => GenKind::Xu,
            "v4" => GenKind::V4,
            other => {
                self.i -= 1;
                return Err(self.err(format!("unknown generator '{other}'")));
            }
        };
        self.i -= 1;
        match gk {
            GenKind::Mrg | GenKind::Spl if kind != DiagramKind::Moy => {
                return Err(self.err(format!("'{word}' is only allowed in moy diagrams")))
            }
            GenKind::V4 if kind != DiagramKind::Unoriented => {
                return Err(self.err("'v4' is only allowed in unoriented diagrams"))
            }
            _ => {}
        }
        self.i += 1;
        let pos = self.number("a position")?;
        let mut g = Generator::new(gk, pos);
        while let Some(t) = self.peek() {
            let Some((key, val)) = t.split_once('=') else { break };
            let (key, val) = (key.to_string(), val.to_string());
            match (gk, key.as_str()) {
                (GenKind::Cup, "color") => {
                    let c: u32 = val.parse().map_err(|_| self.err(format!("bad color '{val}'")))?;
                    if c == 0 {
                        return Err(self.err("colors must be positive"));
                    }
                    g.color = Some(c);
                }
                (GenKind::Cup, "orient") => {
                    g.orient = Some(match val.as_str() {
                        "lu" => Orient::Lu,
                        "ru" => Orient::Ru,
                        _ => return Err(self.err(format!("bad orient '{val}'"))),
                    });
                }
                (GenKind::Spl, "color") => {
                    let parsed = val
                        .split_once(',')
                        .and_then(|(l, r)| Some((l.parse::<u32>().ok()?, r.parse::<u32>().ok()?)));
                    match parsed {
                        Some((l, r)) if l > 0 && r > 0 => g.split = Some((l, r)),
                        _ => return Err(self.err(format!("bad split colors '{val}'"))),
                    }
                }
                _ => return Err(self.err(format!("attribute '{key}' not allowed on {word}"))),
            }
            self.i += 1;
        }
        Ok(g)
    }
}

/// Parses every diagram block in `text`.
pub fn parse_diagrams(text: &str) -> Result<Vec<SliceDiagram>> {
    let toks = tokenize(text);
    let last_line = text.lines().count().max(1);
    let mut p = Parser { toks, i: 0, last_line };
    let mut out = Vec::new();
    while p.peek().is_some() {
        out.push(p.diagram()?);
    }
    Ok(out)
}

/// Parses text containing exactly one diagram block.
pub fn parse_diagram(text: &str) -> Result<SliceDiagram> {
    let mut all = parse_diagrams(text)?;
    match all.len() {
        1 => Ok(all.remove(0)),
        n => Err(MoyError::Syntax {
            line: 1,
            message: format!("expected exactly one diagram, found {n}"),
        }),
    }
}
