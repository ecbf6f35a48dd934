use std::collections::HashMap;
use std::fmt::Write as _;

use super::{ComplexError, DeltaComplex, Edge, Facet, Side};
use crate::error::{ParseError, ParseErrorKind};
use crate::text::{expect_arity, expect_name, parse_i64, syntax, tokenized_lines, Token};

/// A complex together with whatever `alpha` lines the file carried,
/// indexed by incidence id.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParsedComplex {
    pub complex: DeltaComplex,
    pub alpha: Vec<Option<i64>>,
}

impl ParsedComplex {
    /// Every alpha value, or the first missing incidence.
    pub fn complete_alpha(&self) -> Result<Vec<i64>, ParseError> {
        self.alpha
            .iter()
            .enumerate()
            .map(|(id, a)| {
                a.ok_or_else(|| {
                    ParseError::global(ParseErrorKind::MissingAlpha {
                        edge: self.complex.edges()[id / 2].name.clone(),
                        slot: id % 2,
                    })
                })
            })
            .collect()
    }
}

/// Parses a complex file, ignoring nothing: alpha lines are checked for
/// syntax and references but are not required.
pub fn parse_complex_with_alpha(text: &str) -> Result<ParsedComplex, ParseError> {
    let mut vertices: Vec<String> = Vec::new();
    let mut vertex_ids: HashMap<String, usize> = HashMap::new();
    let mut edges: Vec<Edge> = Vec::new();
    let mut edge_ids: HashMap<String, usize> = HashMap::new();
    let mut facets: Vec<Facet> = Vec::new();
    let mut facet_lines: HashMap<String, usize> = HashMap::new();
    let mut alpha: Vec<(usize, Token<'_>, usize, usize, i64)> = Vec::new();
    let mut header = false;

    let lookup = |ids: &HashMap<String, usize>, kind, line, tok: Token<'_>| {
        ids.get(tok.text).copied().ok_or_else(|| {
            ParseError::new(
                line,
                tok.column,
                ParseErrorKind::UnknownIdentifier {
                    kind,
                    name: tok.text.to_string(),
                },
            )
        })
    };
    let duplicate = |kind, line, tok: Token<'_>| {
        ParseError::new(
            line,
            tok.column,
            ParseErrorKind::Duplicate {
                kind,
                name: tok.text.to_string(),
            },
        )
    };

    for (line, toks) in tokenized_lines(text) {
        let head = toks[0];
        if !header {
            if head.text != "complex" {
                return Err(syntax(line, head.column, "expected `complex 2` header"));
            }
            expect_arity(line, &toks, 2)?;
            if toks[1].text != "2" {
                return Err(syntax(
                    line,
                    toks[1].column,
                    "only dimension 2 is supported",
                ));
            }
            header = true;
            continue;
        }
        match head.text {
            "vertex" => {
                expect_arity(line, &toks, 2)?;
                let name = expect_name(line, toks[1])?;
                if vertex_ids.contains_key(name) {
                    return Err(duplicate("vertex", line, toks[1]));
                }
                vertex_ids.insert(name.to_string(), vertices.len());
                vertices.push(name.to_string());
            }
            "edge" => {
                expect_arity(line, &toks, 4)?;
                let name = expect_name(line, toks[1])?;
                if edge_ids.contains_key(name) {
                    return Err(duplicate("edge", line, toks[1]));
                }
                let e0 = lookup(&vertex_ids, "vertex", line, toks[2])?;
                let e1 = lookup(&vertex_ids, "vertex", line, toks[3])?;
                edge_ids.insert(name.to_string(), edges.len());
                edges.push(Edge {
                    name: name.to_string(),
                    ends: [e0, e1],
                });
            }
            "facet" => {
                expect_arity(line, &toks, 10)?;
                let name = expect_name(line, toks[1])?;
                if facet_lines.contains_key(name) {
                    return Err(duplicate("facet", line, toks[1]));
                }
                if toks[2].text != "corners" {
                    return Err(syntax(line, toks[2].column, "expected `corners`"));
                }
                if toks[6].text != "sides" {
                    return Err(syntax(line, toks[6].column, "expected `sides`"));
                }
                let mut corners = [0; 3];
                for (j, c) in corners.iter_mut().enumerate() {
                    *c = lookup(&vertex_ids, "vertex", line, toks[3 + j])?;
                }
                let mut sides = [Side {
                    edge: 0,
                    flip: false,
                }; 3];
                for (i, s) in sides.iter_mut().enumerate() {
                    let tok = toks[7 + i];
                    let (ename, flip) = match tok.text.split_once(':') {
                        None => (tok.text, false),
                        Some((e, "flip")) => (e, true),
                        Some(_) => {
                            return Err(syntax(line, tok.column, "side suffix must be `:flip`"))
                        }
                    };
                    let etok = Token {
                        text: ename,
                        column: tok.column,
                    };
                    *s = Side {
                        edge: lookup(&edge_ids, "edge", line, etok)?,
                        flip,
                    };
                }
                facet_lines.insert(name.to_string(), line);
                facets.push(Facet {
                    name: name.to_string(),
                    corners,
                    sides,
                });
            }
            "alpha" => {
                expect_arity(line, &toks, 4)?;
                let e = lookup(&edge_ids, "edge", line, toks[1])?;
                let slot = match toks[2].text {
                    "0" => 0,
                    "1" => 1,
                    _ => return Err(syntax(line, toks[2].column, "slot must be 0 or 1")),
                };
                let value = parse_i64(line, toks[3])?;
                alpha.push((line, toks[1], e, slot, value));
            }
            other => {
                return Err(syntax(
                    line,
                    head.column,
                    format!("unknown keyword `{other}`"),
                ));
            }
        }
    }
    if !header {
        return Err(syntax(1, 1, "expected `complex 2` header"));
    }

    let complex = DeltaComplex::new(vertices, edges, facets).map_err(|e| {
        let line = match &e {
            ComplexError::CornerMismatch(m) => facet_lines.get(&m.facet).copied(),
            _ => None,
        };
        match line {
            Some(l) => ParseError::new(l, 1, ParseErrorKind::Structure(e)),
            None => ParseError::global(ParseErrorKind::Structure(e)),
        }
    })?;

    let mut values = vec![None; complex.num_incidences()];
    for (line, tok, e, slot, v) in alpha {
        let id = 2 * e + slot;
        if values[id].is_some() {
            return Err(ParseError::new(
                line,
                tok.column,
                ParseErrorKind::Duplicate {
                    kind: "alpha",
                    name: format!("{} {}", tok.text, slot),
                },
            ));
        }
        values[id] = Some(v);
    }
    Ok(ParsedComplex {
        complex,
        alpha: values,
    })
}

pub fn parse_complex(text: &str) -> Result<DeltaComplex, ParseError> {
    parse_complex_with_alpha(text).map(|p| p.complex)
}

pub(crate) fn write_complex(c: &DeltaComplex, alpha: Option<&[i64]>) -> String {
    let mut out = String::from("complex 2\n");
    for v in c.vertices() {
        writeln!(out, "vertex {v}").unwrap();
    }
    for e in c.edges() {
        let [a, b] = e.ends.map(|v| c.vertices()[v].as_str());
        writeln!(out, "edge {} {a} {b}", e.name).unwrap();
    }
    for f in c.facets() {
        let corners = f.corners.map(|v| c.vertices()[v].as_str()).join(" ");
        let sides = f
            .sides
            .map(|s| {
                let name = &c.edges()[s.edge].name;
                if s.flip {
                    format!("{name}:flip")
                } else {
                    name.clone()
                }
            })
            .join(" ");
        writeln!(out, "facet {} corners {corners} sides {sides}", f.name).unwrap();
    }
    if let Some(alpha) = alpha {
        for (id, a) in alpha.iter().enumerate() {
            writeln!(out, "alpha {} {} {a}", c.edges()[id / 2].name, id % 2).unwrap();
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const TRIANGLE: &str = "complex 2\nvertex a\nvertex b\nvertex c\n\
        edge ab a b\nedge bc b c\nedge ca c a\n\
        facet t corners a b c sides bc ca ab\n";

    #[test]
    fn triangle_parses() {
        let c = parse_complex(TRIANGLE).unwrap();
        assert_eq!(c.num_incidences(), 6);
        assert_eq!(parse_complex(&c.to_text()).unwrap(), c);
    }

    #[test]
    fn corner_mismatch_reports_facet_line() {
        let bad = TRIANGLE.replace("sides bc ca ab", "sides ca bc ab");
        let err = parse_complex(&bad).unwrap_err();
        assert_eq!(err.line, 8);
        assert!(matches!(
            err.kind,
            ParseErrorKind::Structure(ComplexError::CornerMismatch(_))
        ));
    }

    #[test]
    fn syntax_errors_have_columns() {
        let err = parse_complex("complex 2\nvertex a\nedge e a zz\n").unwrap_err();
        assert_eq!((err.line, err.column), (3, 10));
        assert!(matches!(err.kind, ParseErrorKind::UnknownIdentifier { .. }));

        let err = parse_complex("complex 2\nvertex a-b\n").unwrap_err();
        assert_eq!((err.line, err.column), (2, 8));

        let err = parse_complex("complex 2\nvertex a\nvertex a\n").unwrap_err();
        assert!(matches!(err.kind, ParseErrorKind::Duplicate { .. }));

        let err = parse_complex("vertex a\n").unwrap_err();
        assert_eq!(err.line, 1);
    }

    #[test]
    fn disconnected_is_global() {
        let two = "complex 2\nvertex a\nvertex b\nvertex c\nvertex d\n\
                   edge ab a b\nedge cd c d\n";
        let err = parse_complex(two).unwrap_err();
        assert_eq!(err.line, 0);
        assert!(matches!(
            err.kind,
            ParseErrorKind::Structure(ComplexError::Disconnected(2))
        ));
    }

    #[test]
    fn flip_suffix_and_alpha() {
        let text = format!("{TRIANGLE}alpha ab 0 1\nalpha ab 1 0\n");
        let p = parse_complex_with_alpha(&text).unwrap();
        assert_eq!(p.alpha[0], Some(1));
        assert!(p.complete_alpha().is_err());
        let dup = format!("{text}alpha ab 1 0\n");
        assert!(parse_complex_with_alpha(&dup).is_err());
        assert!(parse_complex(&TRIANGLE.replace("ab\n", "ab:flop\n")).is_err());
    }
}
