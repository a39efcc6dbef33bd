//! A small s-expression reader with source positions, shared by the term
//! syntax and the workspace file format.

use std::fmt;

/// A position in the source text (1-based line and column, 0-based byte offset).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Pos {
    pub offset: usize,
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
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

    pub fn as_list(&self) -> Option<&[Sexp]> {
        match self {
            Sexp::List(items, _) => Some(items),
            Sexp::Atom(..) => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SexpError {
    pub pos: Pos,
    pub message: String,
}

impl fmt::Display for SexpError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.pos, self.message)
    }
}

struct Reader<'a> {
    text: &'a str,
    bytes: &'a [u8],
    pos: Pos,
    comments: bool,
}

impl<'a> Reader<'a> {
    fn bump(&mut self) {
        if self.bytes[self.pos.offset] == b'\n' {
            self.pos.line += 1;
            self.pos.col = 1;
        } else {
            self.pos.col += 1;
        }
        self.pos.offset += 1;
    }

    fn skip_trivia(&mut self) {
        while self.pos.offset < self.bytes.len() {
            match self.bytes[self.pos.offset] {
                b' ' | b'\t' | b'\n' | b'\r' => self.bump(),
                b';' if self.comments => {
                    while self.pos.offset < self.bytes.len() && self.bytes[self.pos.offset] != b'\n' {
                        self.bump();
                    }
                }
                _ => break,
            }
        }
    }

    fn read(&mut self) -> Result<Sexp, SexpError> {
        self.skip_trivia();
        let start = self.pos;
        match self.bytes.get(self.pos.offset) {
            None => Err(SexpError {
                pos: start,
                message: "unexpected end of input".into(),
            }),
            Some(b')') => Err(SexpError {
                pos: start,
                message: "unexpected `)`".into(),
            }),
            Some(b'(') => {
                self.bump();
                let mut items = Vec::new();
                loop {
                    self.skip_trivia();
                    match self.bytes.get(self.pos.offset) {
                        None => {
                            return Err(SexpError {
                                pos: start,
                                message: "unclosed `(`".into(),
                            })
                        }
                        Some(b')') => {
                            self.bump();
                            return Ok(Sexp::List(items, start));
                        }
                        Some(_) => items.push(self.read()?),
                    }
                }
            }
            Some(_) => {
                while let Some(&c) = self.bytes.get(self.pos.offset) {
                    if c.is_ascii_whitespace() || c == b'(' || c == b')' || (self.comments && c == b';') {
                        break;
                    }
                    // advance over a whole UTF-8 character
                    let ch = self.text[self.pos.offset..].chars().next().unwrap();
                    for _ in 0..ch.len_utf8() {
                        self.bump();
                    }
                }
                Ok(Sexp::Atom(
                    self.text[start.offset..self.pos.offset].to_string(),
                    start,
                ))
            }
        }
    }
}

fn reader(text: &str, comments: bool) -> Reader<'_> {
    Reader {
        text,
        bytes: text.as_bytes(),
        pos: Pos {
            offset: 0,
            line: 1,
            col: 1,
        },
        comments,
    }
}

/// Reads exactly one expression; trailing non-whitespace is an error.
/// `;` is an ordinary atom character here.
pub fn parse_one(text: &str) -> Result<Sexp, SexpError> {
    let mut r = reader(text, false);
    let e = r.read()?;
    r.skip_trivia();
    if r.pos.offset < r.bytes.len() {
        return Err(SexpError {
            pos: r.pos,
            message: "trailing input after expression".into(),
        });
    }
    Ok(e)
}

/// Reads a sequence of top-level expressions; `;` starts a line comment.
pub fn parse_all(text: &str) -> Result<Vec<Sexp>, SexpError> {
    let mut r = reader(text, true);
    let mut out = Vec::new();
    loop {
        r.skip_trivia();
        if r.pos.offset >= r.bytes.len() {
            return Ok(out);
        }
        out.push(r.read()?);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_nested_lists_with_positions() {
        let e = parse_one("(f\n  (g x))").unwrap();
        let items = e.as_list().unwrap();
        assert_eq!(items[0].as_atom(), Some("f"));
        let inner = &items[1];
        assert_eq!(inner.pos().line, 2);
        assert_eq!(inner.pos().col, 3);
    }

    #[test]
    fn errors() {
        assert!(parse_one("(f").is_err());
        assert!(parse_one(")").is_err());
        assert!(parse_one("(f) (g)").is_err());
        assert!(parse_one("").is_err());
    }

    #[test]
    fn comments_only_in_files() {
        let all = parse_all("; header\n(a b) ; trailing\n(c)").unwrap();
        assert_eq!(all.len(), 2);
    }
}
