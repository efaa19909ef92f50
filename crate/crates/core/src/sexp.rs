//! Minimal S-expression reader shared by the term and target formats.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{pos}: {msg}")]
pub struct ParseError {
    pub pos: Pos,
    pub msg: String,
}

impl ParseError {
    pub fn new(pos: Pos, msg: impl Into<String>) -> Self {
        ParseError {
            pos,
            msg: msg.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Sexp {
    Atom(String, Pos),
    List(Vec<Sexp>, Pos),
}

impl Sexp {
    pub fn pos(&self) -> Pos {
        match self {
            Sexp::Atom(_, p) | Sexp::List(_, p) => *p,
        }
    }

    pub fn as_atom(&self) -> Option<&str> {
        match self {
            Sexp::Atom(a, _) => Some(a),
            Sexp::List(..) => None,
        }
    }

    /// `(head rest...)` with an atom head.
    pub fn as_form(&self) -> Option<(&str, &[Sexp])> {
        match self {
            Sexp::List(items, _) => match items.split_first() {
                Some((Sexp::Atom(h, _), rest)) => Some((h, rest)),
                _ => None,
            },
            Sexp::Atom(..) => None,
        }
    }

    pub fn int(&self) -> Result<i64, ParseError> {
        match self {
            Sexp::Atom(a, p) => a
                .parse()
                .map_err(|_| ParseError::new(*p, format!("expected an integer, found `{a}`"))),
            Sexp::List(_, p) => Err(ParseError::new(*p, "expected an integer, found a list")),
        }
    }
}

struct Reader<'s> {
    chars: std::iter::Peekable<std::str::Chars<'s>>,
    pos: Pos,
}

impl Reader<'_> {
    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.pos.line += 1;
            self.pos.col = 1;
        } else {
            self.pos.col += 1;
        }
        Some(c)
    }

    fn skip_ws(&mut self) {
        while let Some(&c) = self.chars.peek() {
            if c == ';' {
                while let Some(c) = self.bump() {
                    if c == '\n' {
                        break;
                    }
                }
            } else if c.is_whitespace() {
                self.bump();
            } else {
                break;
            }
        }
    }

    fn read(&mut self) -> Result<Sexp, ParseError> {
        self.skip_ws();
        let start = self.pos;
        match self.chars.peek() {
            None => Err(ParseError::new(start, "unexpected end of input")),
            Some(')') => Err(ParseError::new(start, "unexpected `)`")),
            Some('(') => {
                self.bump();
                let mut items = Vec::new();
                loop {
                    self.skip_ws();
                    match self.chars.peek() {
                        None => return Err(ParseError::new(start, "unclosed `(`")),
                        Some(')') => {
                            self.bump();
                            return Ok(Sexp::List(items, start));
                        }
                        Some(_) => items.push(self.read()?),
                    }
                }
            }
            Some(_) => {
                let mut atom = String::new();
                while let Some(&c) = self.chars.peek() {
                    if c.is_whitespace() || c == '(' || c == ')' || c == ';' {
                        break;
                    }
                    atom.push(c);
                    self.bump();
                }
                Ok(Sexp::Atom(atom, start))
            }
        }
    }
}

/// Read exactly one S-expression from `src`.
pub fn read_one(src: &str) -> Result<Sexp, ParseError> {
    let mut r = Reader {
        chars: src.chars().peekable(),
        pos: Pos { line: 1, col: 1 },
    };
    let e = r.read()?;
    r.skip_ws();
    if r.chars.peek().is_some() {
        return Err(ParseError::new(r.pos, "trailing input after expression"));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_nested_lists() {
        let e = read_one(" (a (b 1) c) ").unwrap();
        let (head, rest) = e.as_form().unwrap();
        assert_eq!(head, "a");
        assert_eq!(rest.len(), 2);
        assert_eq!(rest[0].as_form().unwrap().0, "b");
    }

    #[test]
    fn reports_positions() {
        let err = read_one("(a\n  (b").unwrap_err();
        assert_eq!(err.pos, Pos { line: 2, col: 3 });
        let err = read_one("(a) b").unwrap_err();
        assert_eq!(err.pos, Pos { line: 1, col: 5 });
        let err = read_one(")").unwrap_err();
        assert_eq!(err.msg, "unexpected `)`");
    }

    #[test]
    fn comments_are_whitespace() {
        let e = read_one("; header\n(x ; inline\n y)").unwrap();
        assert_eq!(e.as_form().unwrap().1.len(), 1);
    }
}
