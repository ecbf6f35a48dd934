//! Shared line tokenizer and rational formatting for the plain-text formats.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{ParseError, ParseErrorKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Token<'a> {
    pub text: &'a str,
    /// 1-based character column.
    pub column: usize,
}

/// Non-empty lines with comments stripped, as `(line number, tokens)`.
pub fn tokenized_lines(text: &str) -> impl Iterator<Item = (usize, Vec<Token<'_>>)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.split('#').next().unwrap_or("");
        let mut tokens = Vec::new();
        let mut start: Option<(usize, usize)> = None;
        let mut chars = 0;
        for (b, ch) in line.char_indices() {
            chars += 1;
            if ch.is_whitespace() {
                if let Some((sb, sc)) = start.take() {
                    tokens.push(Token {
                        text: &line[sb..b],
                        column: sc,
                    });
                }
            } else if start.is_none() {
                start = Some((b, chars));
            }
        }
        if let Some((sb, sc)) = start {
            tokens.push(Token {
                text: &line[sb..],
                column: sc,
            });
        }
        (!tokens.is_empty()).then_some((i + 1, tokens))
    })
}

pub fn syntax(line: usize, column: usize, msg: impl Into<String>) -> ParseError {
    ParseError::new(line, column, ParseErrorKind::Syntax(msg.into()))
}

pub fn is_name(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

pub fn expect_name(line: usize, tok: Token<'_>) -> Result<&str, ParseError> {
    if is_name(tok.text) {
        Ok(tok.text)
    } else {
        Err(syntax(
            line,
            tok.column,
            format!("invalid name `{}`", tok.text),
        ))
    }
}

pub fn expect_arity(line: usize, tokens: &[Token<'_>], n: usize) -> Result<(), ParseError> {
    if tokens.len() == n {
        return Ok(());
    }
    let column = tokens.get(n).or(tokens.last()).map_or(1, |t| t.column);
    Err(syntax(
        line,
        column,
        format!(
            "`{}` expects {} arguments, found {}",
            tokens[0].text,
            n - 1,
            tokens.len() - 1
        ),
    ))
}

pub fn parse_i64(line: usize, tok: Token<'_>) -> Result<i64, ParseError> {
    tok.text.parse().map_err(|_| {
        syntax(
            line,
            tok.column,
            format!("expected an integer, found `{}`", tok.text),
        )
    })
}

pub fn parse_bigint(line: usize, tok: Token<'_>) -> Result<BigInt, ParseError> {
    tok.text.parse().map_err(|_| {
        syntax(
            line,
            tok.column,
            format!("expected an integer, found `{}`", tok.text),
        )
    })
}

/// Accepts `p` or `p/q` with `q ≠ 0`.
pub fn parse_rational(line: usize, tok: Token<'_>) -> Result<BigRational, ParseError> {
    let bad = || {
        syntax(
            line,
            tok.column,
            format!("expected a rational, found `{}`", tok.text),
        )
    };
    match tok.text.split_once('/') {
        None => tok
            .text
            .parse::<BigInt>()
            .map(BigRational::from_integer)
            .map_err(|_| bad()),
        Some((p, q)) => {
            let p: BigInt = p.parse().map_err(|_| bad())?;
            let q: BigInt = q.parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(p, q))
        }
    }
}

/// `p/q` in lowest terms, or `p` when `q = 1`.
pub fn format_rational(x: &BigRational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}
