//! `value`, `coeff` and `gamma` files.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::complex::DeltaComplex;
use crate::error::{ParseError, ParseErrorKind};
use crate::text::{expect_arity, parse_bigint, parse_rational, syntax, tokenized_lines, Token};

// Collects `<keyword> <name> <value>` lines against a name table.
fn keyed_values<T>(
    text: &str,
    keyword: &str,
    kind: &'static str,
    ids: &HashMap<&str, usize>,
    len: usize,
    parse: impl Fn(usize, Token<'_>) -> Result<T, ParseError>,
) -> Result<Vec<Option<T>>, ParseError> {
    let mut out: Vec<Option<T>> = (0..len).map(|_| None).collect();
    for (line, toks) in tokenized_lines(text) {
        if toks[0].text != keyword {
            return Err(syntax(
                line,
                toks[0].column,
                format!("expected `{keyword}`"),
            ));
        }
        expect_arity(line, &toks, 3)?;
        let name = toks[1];
        let &i = ids.get(name.text).ok_or_else(|| {
            ParseError::new(
                line,
                name.column,
                ParseErrorKind::UnknownIdentifier {
                    kind,
                    name: name.text.to_string(),
                },
            )
        })?;
        if out[i].is_some() {
            return Err(ParseError::new(
                line,
                name.column,
                ParseErrorKind::Duplicate {
                    kind,
                    name: name.text.to_string(),
                },
            ));
        }
        out[i] = Some(parse(line, toks[2])?);
    }
    Ok(out)
}

/// Every vertex needs a value.
pub fn parse_function_file(c: &DeltaComplex, text: &str) -> Result<Vec<BigRational>, ParseError> {
    let ids: HashMap<&str, usize> = c
        .vertices()
        .iter()
        .enumerate()
        .map(|(i, v)| (v.as_str(), i))
        .collect();
    let values = keyed_values(
        text,
        "value",
        "vertex",
        &ids,
        c.num_vertices(),
        parse_rational,
    )?;
    values
        .into_iter()
        .enumerate()
        .map(|(v, x)| {
            x.ok_or_else(|| {
                ParseError::global(ParseErrorKind::Syntax(format!(
                    "no value for vertex `{}`",
                    c.vertices()[v]
                )))
            })
        })
        .collect()
}

/// Edges without a line get coefficient zero.
pub fn parse_divisor_file(c: &DeltaComplex, text: &str) -> Result<Vec<BigRational>, ParseError> {
    let values = keyed_values(
        text,
        "coeff",
        "edge",
        &c.edge_name_map(),
        c.num_edges(),
        parse_rational,
    )?;
    Ok(values
        .into_iter()
        .map(|x| x.unwrap_or_else(BigRational::zero))
        .collect())
}

/// Edges without a line get zero.
pub fn parse_cochain_file(c: &DeltaComplex, text: &str) -> Result<Vec<BigInt>, ParseError> {
    let values = keyed_values(
        text,
        "gamma",
        "edge",
        &c.edge_name_map(),
        c.num_edges(),
        parse_bigint,
    )?;
    Ok(values
        .into_iter()
        .map(|x| x.unwrap_or_else(BigInt::zero))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn files_round_trip() {
        let s = corpus::octahedron_quotient();
        let c = s.complex();
        let phi = parse_function_file(c, "value X 1/2\nvalue Y -3\nvalue Z 0\n").unwrap();
        assert_eq!(phi[0], BigRational::new(1.into(), 2.into()));
        assert!(parse_function_file(c, "value X 1\nvalue Y 0\n").is_err());
        let err = parse_function_file(c, "value X 1\nvalue X 2\nvalue Z 0\n").unwrap_err();
        assert!(matches!(err.kind, ParseErrorKind::Duplicate { .. }));
        assert_eq!(err.line, 2);

        let d = parse_divisor_file(c, "# one edge\ncoeff XY_p 2\n").unwrap();
        assert_eq!(d.iter().filter(|x| !x.is_zero()).count(), 1);
        let err = parse_divisor_file(c, "coeff nope 1\n").unwrap_err();
        assert!(matches!(err.kind, ParseErrorKind::UnknownIdentifier { .. }));

        let g = parse_cochain_file(c, "gamma YZ_m -4\n").unwrap();
        assert_eq!(g[5], BigInt::from(-4));
        assert!(parse_cochain_file(c, "gamma YZ_m 1/2\n").is_err());
    }
}
