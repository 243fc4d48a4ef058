//! Text format for ground normal programs.
//!
//! ```text
//! program := { rule }
//! rule    := atom [ ":-" literal { "," literal } ] "."
//! literal := [ "not" ] atom
//! atom    := [a-z][A-Za-z0-9_]*
//! ```
//!
//! `%` starts a comment that runs to the end of the line. Tokens starting with
//! an uppercase letter or `_` are variables and are rejected.

use crate::atom::Atom;
use crate::error::{Error, Result};
use crate::program::{Literal, Program, Rule};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    If,
    Comma,
    Dot,
    Eof,
}

#[derive(Clone, Copy, Debug)]
struct Pos {
    line: usize,
    column: usize,
}

struct Lexer<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: usize,
    column: usize,
}

impl<'a> Lexer<'a> {
    fn new(text: &'a str) -> Self {
        Lexer { chars: text.chars().peekable(), line: 1, column: 1 }
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn pos(&self) -> Pos {
        Pos { line: self.line, column: self.column }
    }

    fn syntax(&self, pos: Pos, message: impl Into<String>) -> Error {
        Error::Syntax { line: pos.line, column: pos.column, message: message.into() }
    }

    fn next_token(&mut self) -> Result<(Tok, Pos)> {
        loop {
            match self.chars.peek() {
                Some(c) if c.is_whitespace() => {
                    self.bump();
                }
                Some('%') => {
                    while let Some(c) = self.bump() {
                        if c == '\n' {
                            break;
                        }
                    }
                }
                _ => break,
            }
        }
        let start = self.pos();
        let Some(&c) = self.chars.peek() else {
            return Ok((Tok::Eof, start));
        };
        match c {
            '.' => {
                self.bump();
                Ok((Tok::Dot, start))
            }
            ',' => {
                self.bump();
                Ok((Tok::Comma, start))
            }
            ':' => {
                self.bump();
                if self.chars.peek() == Some(&'-') {
                    self.bump();
                    Ok((Tok::If, start))
                } else {
                    Err(self.syntax(start, "expected `:-`"))
                }
            }
            c if c.is_ascii_alphanumeric() || c == '_' => {
                let mut word = String::new();
                while let Some(&c) = self.chars.peek() {
                    if c.is_ascii_alphanumeric() || c == '_' {
                        word.push(c);
                        self.bump();
                    } else {
                        break;
                    }
                }
                let first = word.chars().next().unwrap_or_default();
                if first.is_ascii_uppercase() || first == '_' {
                    return Err(Error::NonGround { line: start.line, column: start.column, name: word });
                }
                if first.is_ascii_digit() {
                    return Err(self.syntax(start, format!("`{word}` is not an atom")));
                }
                Ok((Tok::Ident(word), start))
            }
            other => Err(self.syntax(start, format!("unexpected character `{other}`"))),
        }
    }
}

struct Parser<'a> {
    lexer: Lexer<'a>,
    tok: Tok,
    pos: Pos,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Result<Self> {
        let mut lexer = Lexer::new(text);
        let (tok, pos) = lexer.next_token()?;
        Ok(Parser { lexer, tok, pos })
    }

    fn advance(&mut self) -> Result<()> {
        let (tok, pos) = self.lexer.next_token()?;
        self.tok = tok;
        self.pos = pos;
        Ok(())
    }

    fn error(&self, message: impl Into<String>) -> Error {
        self.lexer.syntax(self.pos, message)
    }

    fn atom(&mut self) -> Result<Atom> {
        match &self.tok {
            Tok::Ident(word) if word != "not" => {
                let atom = Atom::new(word);
                self.advance()?;
                Ok(atom)
            }
            Tok::Ident(_) => Err(self.error("`not` is reserved and cannot be an atom")),
            other => Err(self.error(format!("expected an atom, found {}", describe(other)))),
        }
    }

    fn literal(&mut self) -> Result<Literal> {
        if self.tok == Tok::Ident("not".into()) {
            self.advance()?;
            return Ok(Literal::neg(self.atom()?));
        }
        Ok(Literal::pos(self.atom()?))
    }

    fn rule(&mut self) -> Result<Rule> {
        let head = self.atom()?;
        let mut body = Vec::new();
        if self.tok == Tok::If {
            self.advance()?;
            body.push(self.literal()?);
            while self.tok == Tok::Comma {
                self.advance()?;
                body.push(self.literal()?);
            }
        }
        if self.tok != Tok::Dot {
            return Err(self.error(format!("expected `.`, found {}", describe(&self.tok))));
        }
        self.advance()?;
        Ok(Rule::new(head, body))
    }

    fn program(&mut self) -> Result<Program> {
        let mut rules = Vec::new();
        while self.tok != Tok::Eof {
            rules.push(self.rule()?);
        }
        Ok(Program::new(rules))
    }
}

fn describe(tok: &Tok) -> String {
    match tok {
        Tok::Ident(w) => format!("`{w}`"),
        Tok::If => "`:-`".into(),
        Tok::Comma => "`,`".into(),
        Tok::Dot => "`.`".into(),
        Tok::Eof => "end of input".into(),
    }
}

/// Parses program text. Duplicate rules and duplicate body literals are merged.
pub fn parse_program(text: &str) -> Result<Program> {
    Parser::new(text)?.program()
}

/// Parses a single atom name, as given on a command line.
pub fn parse_atom(name: &str) -> Result<Atom> {
    let name = name.trim();
    if Atom::is_valid_name(name) {
        Ok(Atom::new(name))
    } else {
        Err(Error::Syntax { line: 1, column: 1, message: format!("`{name}` is not an atom") })
    }
}

/// Prints a program in the format accepted by [`parse_program`].
pub fn render_program(program: &Program) -> String {
    program.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::atom::atom_set;

    const MH_CM_CUT_FAILURE: &str = "u :- b. u :- c. t :- a. t :- h.
        a :- not b. b :- not c. c :- h, u. h :- not h, not t.";

    #[test]
    fn parses_even_loop() {
        let p = parse_program("a :- not b.\nb :- not a.").unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!(p.atoms(), atom_set(["a", "b"]));
    }

    #[test]
    fn merges_duplicate_rules() {
        let p = parse_program("a.\na.").unwrap();
        assert_eq!(p.len(), 1);
        assert_eq!(render_program(&p), "a.\n");
    }

    #[test]
    fn parses_eight_rule_program() {
        let p = parse_program(MH_CM_CUT_FAILURE).unwrap();
        assert_eq!(p.len(), 8);
        assert_eq!(p.atoms(), atom_set(["a", "b", "c", "h", "t", "u"]));
    }

    #[test]
    fn render_round_trips() {
        assert_eq!(render_program(&Program::empty()), "");
        let p = parse_program(MH_CM_CUT_FAILURE).unwrap();
        assert_eq!(parse_program(&render_program(&p)).unwrap(), p);
    }

    #[test]
    fn comments_and_whitespace() {
        let p = parse_program("% header\n a :- % trailing\n  not   b , c .\n").unwrap();
        assert_eq!(p.to_string(), "a :- c, not b.\n");
    }

    #[test]
    fn rejects_variables() {
        let err = parse_program("p :- q.\nq :- X.").unwrap_err();
        assert_eq!(err, Error::NonGround { line: 2, column: 6, name: "X".into() });
        assert!(parse_program("_x.").is_err());
    }

    #[test]
    fn syntax_errors_carry_positions() {
        match parse_program("a :- b\nc.").unwrap_err() {
            Error::Syntax { line, column, .. } => assert_eq!((line, column), (2, 1)),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse_program("a :- ."), Err(Error::Syntax { .. })));
        assert!(matches!(parse_program("a : b."), Err(Error::Syntax { .. })));
        assert!(matches!(parse_program("a :- not."), Err(Error::Syntax { .. })));
        assert!(matches!(parse_program("a"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_program("1a."), Err(Error::Syntax { .. })));
        assert!(matches!(parse_program("a :- b; c."), Err(Error::Syntax { .. })));
    }
}
