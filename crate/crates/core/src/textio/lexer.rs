use super::{Diagnostic, DiagnosticKind, Loc};

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum TokKind {
    Atom(String),
    LBrace,
    RBrace,
    Colon,
    Semi,
    Arrow,
    FatArrow,
    Le,
    LParen,
    RParen,
    Comma,
    Slash,
}

impl TokKind {
    pub(crate) fn describe(&self) -> String {
        match self {
            TokKind::Atom(s) => format!("atom `{s}`"),
            TokKind::LBrace => "`{`".into(),
            TokKind::RBrace => "`}`".into(),
            TokKind::Colon => "`:`".into(),
            TokKind::Semi => "`;`".into(),
            TokKind::Arrow => "`->`".into(),
            TokKind::FatArrow => "`=>`".into(),
            TokKind::Le => "`<=`".into(),
            TokKind::LParen => "`(`".into(),
            TokKind::RParen => "`)`".into(),
            TokKind::Comma => "`,`".into(),
            TokKind::Slash => "`/`".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Tok {
    pub kind: TokKind,
    pub loc: Loc,
}

pub(crate) fn is_bare_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || matches!(c, '_' | '.' | '+' | '-')
}

pub(crate) fn lex(text: &str) -> Result<Vec<Tok>, Diagnostic> {
    let chars: Vec<char> = text.chars().collect();
    let mut toks = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    let syntax = |loc: Loc, msg: String| Diagnostic::error(DiagnosticKind::Syntax, loc, msg);

    while i < chars.len() {
        let c = chars[i];
        let loc = Loc { line, column: col };
        let peek = chars.get(i + 1).copied();
        let advance = |n: usize, i: &mut usize, col: &mut usize| {
            *i += n;
            *col += n;
        };
        match c {
            '\n' => {
                i += 1;
                line += 1;
                col = 1;
            }
            c if c.is_whitespace() => advance(1, &mut i, &mut col),
            '#' => {
                while i < chars.len() && chars[i] != '\n' {
                    i += 1;
                }
            }
            '"' => {
                let mut text = String::new();
                i += 1;
                col += 1;
                loop {
                    match chars.get(i) {
                        None | Some('\n') => {
                            return Err(syntax(loc, "unterminated string".into()));
                        }
                        Some('"') => {
                            i += 1;
                            col += 1;
                            break;
                        }
                        Some('\\') => {
                            let escaped = match chars.get(i + 1) {
                                Some('"') => '"',
                                Some('\\') => '\\',
                                other => {
                                    return Err(syntax(
                                        Loc { line, column: col },
                                        format!("unknown escape {other:?}"),
                                    ))
                                }
                            };
                            text.push(escaped);
                            i += 2;
                            col += 2;
                        }
                        Some(&ch) => {
                            text.push(ch);
                            i += 1;
                            col += 1;
                        }
                    }
                }
                toks.push(Tok {
                    kind: TokKind::Atom(text),
                    loc,
                });
            }
            '-' if peek == Some('>') => {
                toks.push(Tok {
                    kind: TokKind::Arrow,
                    loc,
                });
                advance(2, &mut i, &mut col);
            }
            '=' if peek == Some('>') => {
                toks.push(Tok {
                    kind: TokKind::FatArrow,
                    loc,
                });
                advance(2, &mut i, &mut col);
            }
            '<' if peek == Some('=') => {
                toks.push(Tok {
                    kind: TokKind::Le,
                    loc,
                });
                advance(2, &mut i, &mut col);
            }
            c if is_bare_char(c) => {
                let mut text = String::new();
                while i < chars.len() && is_bare_char(chars[i]) {
                    if chars[i] == '-' && chars.get(i + 1) == Some(&'>') {
                        break;
                    }
                    text.push(chars[i]);
                    i += 1;
                    col += 1;
                }
                toks.push(Tok {
                    kind: TokKind::Atom(text),
                    loc,
                });
            }
            _ => {
                let kind = match c {
                    '{' => TokKind::LBrace,
                    '}' => TokKind::RBrace,
                    ':' => TokKind::Colon,
                    ';' => TokKind::Semi,
                    '(' => TokKind::LParen,
                    ')' => TokKind::RParen,
                    ',' => TokKind::Comma,
                    '/' => TokKind::Slash,
                    other => return Err(syntax(loc, format!("unexpected character {other:?}"))),
                };
                toks.push(Tok { kind, loc });
                advance(1, &mut i, &mut col);
            }
        }
    }
    Ok(toks)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kinds(text: &str) -> Vec<TokKind> {
        lex(text).unwrap().into_iter().map(|t| t.kind).collect()
    }

    fn atom(s: &str) -> TokKind {
        TokKind::Atom(s.into())
    }

    #[test]
    fn arrows_split_atoms() {
        assert_eq!(kinds("a->n"), [atom("a"), TokKind::Arrow, atom("n")]);
        assert_eq!(kinds("a-->n"), [atom("a-"), TokKind::Arrow, atom("n")]);
        assert_eq!(kinds("x<=y"), [atom("x"), TokKind::Le, atom("y")]);
        assert_eq!(
            kinds("a:-1/2"),
            [
                atom("a"),
                TokKind::Colon,
                atom("-1"),
                TokKind::Slash,
                atom("2")
            ]
        );
    }

    #[test]
    fn strings_and_comments() {
        assert_eq!(kinds(r#""q0 1" # trailing"#), [atom("q0 1")]);
        assert_eq!(kinds(r#""a\"b\\""#), [atom("a\"b\\")]);
        assert!(lex("\"open").is_err());
        let err = lex("a\n  $").unwrap_err();
        assert_eq!((err.loc.line, err.loc.column), (2, 3));
    }
}
