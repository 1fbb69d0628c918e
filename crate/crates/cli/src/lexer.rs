//! Tokens with source positions; newlines are significant.

use num_bigint::BigInt;

use crate::error::{CliError, CliResult, Span};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Int(BigInt),
    Str(String),
    /// `--name` or `--name=value`.
    Flag(String, Option<String>),
    Sym(&'static str),
    Newline,
    Eof,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Token {
    pub tok: Tok,
    pub span: Span,
    /// Byte offsets, used to detect adjacency.
    pub start: usize,
    pub end: usize,
}

const SYMBOLS: [&str; 20] = [
    "[[", "]]", "->", "..", "(", ")", "[", "]", "{", "}", "=", ";", ",", ":", "+", "-", "*", "/",
    "^", ".",
];

pub fn lex(src: &str) -> CliResult<Vec<Token>> {
    let mut out = Vec::new();
    let bytes = src.as_bytes();
    let (mut i, mut line, mut line_start) = (0usize, 1usize, 0usize);
    while i < bytes.len() {
        let c = bytes[i] as char;
        let span = Span {
            line,
            col: i - line_start + 1,
        };
        let push = |out: &mut Vec<Token>, tok, end| {
            out.push(Token {
                tok,
                span,
                start: i,
                end,
            })
        };
        if c == '\n' {
            push(&mut out, Tok::Newline, i + 1);
            i += 1;
            line += 1;
            line_start = i;
        } else if c.is_whitespace() {
            i += 1;
        } else if c == '#' {
            while i < bytes.len() && bytes[i] != b'\n' {
                i += 1;
            }
        } else if c.is_ascii_digit() {
            let s = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let n: BigInt = src[s..i].parse().expect("digits");
            out.push(Token {
                tok: Tok::Int(n),
                span,
                start: s,
                end: i,
            });
        } else if c.is_ascii_alphabetic() || c == '_' {
            let s = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push(Token {
                tok: Tok::Ident(src[s..i].to_string()),
                span,
                start: s,
                end: i,
            });
        } else if c == '"' {
            let s = i;
            i += 1;
            while i < bytes.len() && bytes[i] != b'"' {
                if bytes[i] == b'\n' {
                    return Err(CliError::syntax(span, "unterminated string"));
                }
                i += 1;
            }
            if i >= bytes.len() {
                return Err(CliError::syntax(span, "unterminated string"));
            }
            i += 1;
            out.push(Token {
                tok: Tok::Str(src[s + 1..i - 1].to_string()),
                span,
                start: s,
                end: i,
            });
        } else if src[i..].starts_with("--")
            && bytes.get(i + 2).is_some_and(|b| b.is_ascii_alphabetic())
        {
            let s = i;
            i += 2;
            while i < bytes.len()
                && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_' || bytes[i] == b'-')
            {
                i += 1;
            }
            let name = src[s + 2..i].to_string();
            let value = if bytes.get(i) == Some(&b'=') {
                let v = i + 1;
                i = v;
                while i < bytes.len() && !(bytes[i] as char).is_whitespace() {
                    i += 1;
                }
                Some(src[v..i].to_string())
            } else {
                None
            };
            out.push(Token {
                tok: Tok::Flag(name, value),
                span,
                start: s,
                end: i,
            });
        } else if let Some(sym) = SYMBOLS.iter().find(|s| src[i..].starts_with(**s)) {
            out.push(Token {
                tok: Tok::Sym(sym),
                span,
                start: i,
                end: i + sym.len(),
            });
            i += sym.len();
        } else {
            return Err(CliError::syntax(
                span,
                format!("unexpected character {c:?}"),
            ));
        }
    }
    let span = Span {
        line,
        col: i - line_start + 1,
    };
    out.push(Token {
        tok: Tok::Eof,
        span,
        start: i,
        end: i,
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toks(s: &str) -> Vec<Tok> {
        lex(s).unwrap().into_iter().map(|t| t.tok).collect()
    }

    #[test]
    fn lexes_statements_and_flags() {
        assert_eq!(
            toks("context A = R[[M; id]] --trunc=1/2 # note"),
            vec![
                Tok::Ident("context".into()),
                Tok::Ident("A".into()),
                Tok::Sym("="),
                Tok::Ident("R".into()),
                Tok::Sym("[["),
                Tok::Ident("M".into()),
                Tok::Sym(";"),
                Tok::Ident("id".into()),
                Tok::Sym("]]"),
                Tok::Flag("trunc".into(), Some("1/2".into())),
                Tok::Eof,
            ]
        );
    }

    #[test]
    fn reports_positions() {
        let t = lex("ring R = Zmod(6)\n  let").unwrap();
        let last = &t[t.len() - 2];
        assert_eq!(last.span, Span { line: 2, col: 3 });
        let err = lex("ring R = @").unwrap_err();
        assert!(matches!(
            err,
            CliError::Syntax {
                span: Span { line: 1, col: 10 },
                ..
            }
        ));
    }

    #[test]
    fn minus_is_a_symbol_unless_it_starts_a_flag() {
        assert_eq!(
            toks("a - -b"),
            vec![
                Tok::Ident("a".into()),
                Tok::Sym("-"),
                Tok::Sym("-"),
                Tok::Ident("b".into()),
                Tok::Eof
            ]
        );
    }
}
