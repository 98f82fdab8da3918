//! Hand-written lexer: identifiers, numbers, double-quoted strings,
//! punctuation, `--` line comments.

use crate::error::CatlangError;
use crate::token::{Span, Tok, Token};

pub fn lex(text: &str) -> Result<Vec<Token>, CatlangError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0usize;
    let mut line = 1u32;
    let mut col = 1u32;
    let span_here = |i: usize, len: usize, line: u32, col: u32| Span {
        start: i,
        end: i + len,
        line,
        col,
    };
    while i < bytes.len() {
        let c = bytes[i];
        match c {
            b'\n' => {
                i += 1;
                line += 1;
                col = 1;
            }
            b' ' | b'\t' | b'\r' => {
                i += 1;
                col += 1;
            }
            b'-' if bytes.get(i + 1) == Some(&b'-') => {
                while i < bytes.len() && bytes[i] != b'\n' {
                    i += 1;
                }
            }
            b'-' if bytes.get(i + 1) == Some(&b'>') => {
                out.push(Token {
                    tok: Tok::Arrow,
                    span: span_here(i, 2, line, col),
                });
                i += 2;
                col += 2;
            }
            b'-' => {
                out.push(Token {
                    tok: Tok::Minus,
                    span: span_here(i, 1, line, col),
                });
                i += 1;
                col += 1;
            }
            b'=' if bytes.get(i + 1) == Some(&b'>') => {
                out.push(Token {
                    tok: Tok::FatArrow,
                    span: span_here(i, 2, line, col),
                });
                i += 2;
                col += 2;
            }
            b'{' | b'}' | b'(' | b')' | b':' | b';' | b',' | b'.' | b'=' => {
                let tok = match c {
                    b'{' => Tok::LBrace,
                    b'}' => Tok::RBrace,
                    b'(' => Tok::LParen,
                    b')' => Tok::RParen,
                    b':' => Tok::Colon,
                    b';' => Tok::Semi,
                    b',' => Tok::Comma,
                    b'.' => Tok::Dot,
                    _ => Tok::Equals,
                };
                out.push(Token {
                    tok,
                    span: span_here(i, 1, line, col),
                });
                i += 1;
                col += 1;
            }
            b'"' => {
                let (start_i, start_line, start_col) = (i, line, col);
                i += 1;
                col += 1;
                let mut s = String::new();
                let mut closed = false;
                while i < bytes.len() {
                    match bytes[i] {
                        b'"' => {
                            i += 1;
                            col += 1;
                            closed = true;
                            break;
                        }
                        b'\\' => {
                            match bytes.get(i + 1) {
                                Some(b'"') => s.push('"'),
                                Some(b'\\') => s.push('\\'),
                                _ => {
                                    return Err(CatlangError::lex(
                                        span_here(i, 1, line, col),
                                        "unknown escape in string (only \\\" and \\\\)",
                                    ))
                                }
                            }
                            i += 2;
                            col += 2;
                        }
                        b'\n' => {
                            return Err(CatlangError::lex(
                                span_here(i, 1, line, col),
                                "unterminated string at end of line",
                            ))
                        }
                        b => {
                            s.push(b as char);
                            i += 1;
                            col += 1;
                        }
                    }
                }
                if !closed {
                    return Err(CatlangError::lex(
                        span_here(start_i, 1, start_line, start_col),
                        "unterminated string",
                    ));
                }
                out.push(Token {
                    tok: Tok::Str(s),
                    span: Span {
                        start: start_i,
                        end: i,
                        line: start_line,
                        col: start_col,
                    },
                });
            }
            b'0'..=b'9' => {
                // Digits, or a digit-led word such as `1_a` (the implicit
                // identity names), which is one name token.
                let start = i;
                let (start_line, start_col) = (line, col);
                let mut word = false;
                while i < bytes.len()
                    && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    word |= !bytes[i].is_ascii_digit();
                    i += 1;
                    col += 1;
                }
                let text = text[start..i].to_string();
                out.push(Token {
                    tok: if word { Tok::Ident(text) } else { Tok::Number(text) },
                    span: Span {
                        start,
                        end: i,
                        line: start_line,
                        col: start_col,
                    },
                });
            }
            b'A'..=b'Z' | b'a'..=b'z' | b'_' => {
                let start = i;
                let (start_line, start_col) = (line, col);
                while i < bytes.len()
                    && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                    col += 1;
                }
                out.push(Token {
                    tok: Tok::Ident(text[start..i].to_string()),
                    span: Span {
                        start,
                        end: i,
                        line: start_line,
                        col: start_col,
                    },
                });
            }
            other => {
                return Err(CatlangError::lex(
                    span_here(i, 1, line, col),
                    format!("unexpected byte `{}`", other as char),
                ))
            }
        }
    }
    out.push(Token {
        tok: Tok::Eof,
        span: Span {
            start: bytes.len(),
            end: bytes.len(),
            line,
            col,
        },
    });
    Ok(out)
}
