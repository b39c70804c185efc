use std::fmt;

use thiserror::Error;

use super::Formula;

/// Syntax error with the byte offset where parsing stopped and the set of
/// tokens that would have been accepted there.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct ParseError {
    pub offset: usize,
    pub expected: Vec<&'static str>,
    pub found: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "syntax error at byte {}: found {}, expected one of: {}",
            self.offset,
            self.found,
            self.expected.join(", ")
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Not,
    Nec,
    Pos,
    And,
    Or,
    Arrow,
    Material,
    Equiv,
    LParen,
    RParen,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(name) => format!("identifier `{name}`"),
            Tok::Not => "`~`".into(),
            Tok::Nec => "`[]`".into(),
            Tok::Pos => "`<>`".into(),
            Tok::And => "`&`".into(),
            Tok::Or => "`|`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::Material => "`=>`".into(),
            Tok::Equiv => "`<=>`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::End => "end of input".into(),
        }
    }
}

const OPERAND: &[&str] = &["identifier", "`~`", "`[]`", "`<>`", "`(`"];

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    let fail = |offset: usize, found: String, expected: &[&'static str]| ParseError {
        offset,
        expected: expected.to_vec(),
        found,
    };
    while let Some(&(at, c)) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
            continue;
        }
        let rest = &text[at..];
        let (tok, len) = if c.is_ascii_lowercase() {
            let len = rest
                .find(|ch: char| !(ch.is_ascii_lowercase() || ch.is_ascii_digit() || ch == '_'))
                .unwrap_or(rest.len());
            (Tok::Ident(rest[..len].to_string()), len)
        } else if rest.starts_with("<=>") {
            (Tok::Equiv, 3)
        } else if rest.starts_with("->") {
            (Tok::Arrow, 2)
        } else if rest.starts_with("=>") {
            (Tok::Material, 2)
        } else if rest.starts_with("[]") {
            (Tok::Nec, 2)
        } else if rest.starts_with("<>") {
            (Tok::Pos, 2)
        } else {
            let tok = match c {
                '~' | '¬' => Tok::Not,
                '&' | '∧' => Tok::And,
                '|' | '∨' => Tok::Or,
                '→' => Tok::Arrow,
                '⊃' => Tok::Material,
                '≡' => Tok::Equiv,
                '□' => Tok::Nec,
                '◇' | '◊' => Tok::Pos,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                other => {
                    return Err(fail(
                        at,
                        format!("character `{other}`"),
                        &["identifier", "operator", "`(`", "`)`"],
                    ))
                }
            };
            (tok, c.len_utf8())
        };
        out.push((at, tok));
        // advance by `len` bytes
        while let Some(&(pos, _)) = chars.peek() {
            if pos < at + len {
                chars.next();
            } else {
                break;
            }
        }
    }
    out.push((text.len(), Tok::End));
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].1
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].0
    }

    fn bump(&mut self) -> Tok {
        let tok = self.toks[self.pos].1.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        tok
    }

    fn error(&self, expected: &[&'static str]) -> ParseError {
        ParseError {
            offset: self.offset(),
            expected: expected.to_vec(),
            found: self.peek().describe(),
        }
    }

    fn equiv(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.material()?;
        while *self.peek() == Tok::Equiv {
            self.bump();
            let rhs = self.material()?;
            lhs = lhs.iff(rhs);
        }
        Ok(lhs)
    }

    fn material(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.arrow()?;
        if *self.peek() == Tok::Material {
            self.bump();
            let rhs = self.material()?;
            return Ok(lhs.implies(rhs));
        }
        Ok(lhs)
    }

    fn arrow(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.disjunction()?;
        if *self.peek() == Tok::Arrow {
            self.bump();
            let rhs = self.arrow()?;
            return Ok(lhs.arrow(rhs));
        }
        Ok(lhs)
    }

    fn disjunction(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.conjunction()?;
        while *self.peek() == Tok::Or {
            self.bump();
            let rhs = self.conjunction()?;
            lhs = lhs.or(rhs);
        }
        Ok(lhs)
    }

    fn conjunction(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.prefix()?;
        while *self.peek() == Tok::And {
            self.bump();
            let rhs = self.prefix()?;
            lhs = lhs.and(rhs);
        }
        Ok(lhs)
    }

    fn prefix(&mut self) -> Result<Formula, ParseError> {
        match self.peek() {
            Tok::Not => {
                self.bump();
                Ok(self.prefix()?.neg())
            }
            Tok::Nec => {
                self.bump();
                Ok(self.prefix()?.boxed())
            }
            Tok::Pos => {
                self.bump();
                Ok(self.prefix()?.diamond())
            }
            Tok::Ident(_) => match self.bump() {
                Tok::Ident(name) => Ok(Formula::var(&name)),
                _ => unreachable!(),
            },
            Tok::LParen => {
                self.bump();
                let inner = self.equiv()?;
                if *self.peek() != Tok::RParen {
                    return Err(self.error(&[
                        "`)`", "`&`", "`|`", "`->`", "`=>`", "`<=>`",
                    ]));
                }
                self.bump();
                Ok(inner)
            }
            _ => Err(self.error(OPERAND)),
        }
    }
}

/// Parses a formula, expanding `=>` and `<=>` into primitive connectives.
///
/// Prefix operators bind tightest, then `&`, `|`, `->` (right associative),
/// `=>` (right associative) and `<=>` (left associative).
pub fn parse(text: &str) -> Result<Formula, ParseError> {
    let toks = lex(text)?;
    let mut parser = Parser { toks, pos: 0 };
    let f = parser.equiv()?;
    if *parser.peek() != Tok::End {
        return Err(parser.error(&[
            "end of input", "`&`", "`|`", "`->`", "`=>`", "`<=>`",
        ]));
    }
    Ok(f)
}

impl std::str::FromStr for Formula {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p() -> Formula {
        Formula::var("p")
    }
    fn q() -> Formula {
        Formula::var("q")
    }

    #[test]
    fn grammar_examples() {
        assert_eq!(parse("~(p -> ~p)").unwrap(), p().arrow(p().neg()).neg());
        assert_eq!(parse("p => q").unwrap(), p().neg().or(q()));
        assert_eq!(
            parse("[]p -> <>p").unwrap(),
            p().boxed().arrow(p().diamond())
        );
    }

    #[test]
    fn precedence_and_associativity() {
        assert_eq!(
            parse("p & q | p -> q").unwrap(),
            p().and(q()).or(p()).arrow(q())
        );
        assert_eq!(parse("p -> q -> p").unwrap(), p().arrow(q().arrow(p())));
        assert_eq!(parse("p | q | p").unwrap(), p().or(q()).or(p()));
        assert_eq!(
            parse("p -> q => q").unwrap(),
            p().arrow(q()).implies(q())
        );
        assert_eq!(parse("p <=> q").unwrap(), p().iff(q()));
        assert_eq!(parse("~[]~p").unwrap(), p().neg().boxed().neg());
    }

    #[test]
    fn unicode_symbols() {
        assert_eq!(
            parse("¬(p → ¬p)").unwrap(),
            parse("~(p -> ~p)").unwrap()
        );
        assert_eq!(parse("□p ⊃ ◇p").unwrap(), parse("[]p => <>p").unwrap());
        assert_eq!(parse("p ∧ q ≡ q ∨ p").unwrap(), parse("p & q <=> q | p").unwrap());
    }

    #[test]
    fn identifiers_with_digits_and_underscores() {
        assert_eq!(parse("p_1 & x2").unwrap(), Formula::var("p_1").and(Formula::var("x2")));
    }

    #[test]
    fn errors_carry_offset_and_expectation() {
        let err = parse("p -> ").unwrap_err();
        assert_eq!(err.offset, 5);
        assert!(err.expected.contains(&"identifier"));

        let err = parse("(p & q").unwrap_err();
        assert_eq!(err.offset, 6);
        assert!(err.expected.contains(&"`)`"));

        let err = parse("p q").unwrap_err();
        assert_eq!(err.offset, 2);

        let err = parse("P").unwrap_err();
        assert_eq!(err.offset, 0);

        assert!(parse("").is_err());
        assert!(parse("p ->> q").is_err());
    }
}
