use crate::error::StructureError;
use crate::structure::Structure;

struct Cursor<'a> {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    col: usize,
    _src: &'a str,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Self {
        Cursor {
            chars: src.chars().collect(),
            pos: 0,
            line: 1,
            col: 1,
            _src: src,
        }
    }

    fn err(&self, msg: impl Into<String>) -> StructureError {
        StructureError::Syntax {
            line: self.line,
            col: self.col,
            msg: msg.into(),
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += 1;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn skip_trivia(&mut self) {
        while let Some(c) = self.peek() {
            if c == '#' {
                while let Some(c) = self.peek() {
                    if c == '\n' {
                        break;
                    }
                    self.bump();
                }
            } else if c.is_whitespace() {
                self.bump();
            } else {
                break;
            }
        }
    }

    fn at_end(&mut self) -> bool {
        self.skip_trivia();
        self.peek().is_none()
    }

    fn word(&mut self) -> Result<String, StructureError> {
        self.skip_trivia();
        let mut s = String::new();
        while let Some(c) = self.peek() {
            if c.is_alphanumeric() || c == '_' || c == '\'' {
                s.push(c);
                self.bump();
            } else {
                break;
            }
        }
        if s.is_empty() {
            return Err(match self.peek() {
                Some(c) => self.err(format!("expected a word, found `{c}`")),
                None => self.err("expected a word, found end of input"),
            });
        }
        Ok(s)
    }

    fn number(&mut self) -> Result<u32, StructureError> {
        self.skip_trivia();
        let (line, col) = (self.line, self.col);
        let w = self.word()?;
        w.parse().map_err(|_| StructureError::Syntax {
            line,
            col,
            msg: format!("expected a number, found `{w}`"),
        })
    }

    fn expect(&mut self, want: char) -> Result<(), StructureError> {
        self.skip_trivia();
        match self.peek() {
            Some(c) if c == want => {
                self.bump();
                Ok(())
            }
            Some(c) => Err(self.err(format!("expected `{want}`, found `{c}`"))),
            None => Err(self.err(format!("expected `{want}`, found end of input"))),
        }
    }

    fn eat(&mut self, want: char) -> bool {
        self.skip_trivia();
        if self.peek() == Some(want) {
            self.bump();
            true
        } else {
            false
        }
    }
}

/// Parses the structure file format:
///
/// ```text
/// universe 3
/// relation E 2 { (0,1) (1,2) }   # comment
/// ```
pub fn parse_structure(text: &str) -> Result<Structure, StructureError> {
    let mut cur = Cursor::new(text);
    let kw = cur.word()?;
    if kw != "universe" {
        return Err(StructureError::Syntax {
            line: 1,
            col: 1,
            msg: format!("expected `universe`, found `{kw}`"),
        });
    }
    let n = cur.number()?;
    let mut structure = Structure::new(n)?;
    while !cur.at_end() {
        let (line, col) = (cur.line, cur.col);
        let kw = cur.word()?;
        if kw != "relation" {
            return Err(StructureError::Syntax {
                line,
                col,
                msg: format!("expected `relation`, found `{kw}`"),
            });
        }
        cur.skip_trivia();
        let (nline, ncol) = (cur.line, cur.col);
        let name = read_name(&mut cur)?;
        let arity = cur.number()? as usize;
        cur.expect('{')?;
        let mut tuples: Vec<Vec<u32>> = Vec::new();
        while !cur.eat('}') {
            cur.expect('(')?;
            let mut t = vec![cur.number()?];
            while cur.eat(',') {
                t.push(cur.number()?);
            }
            cur.expect(')')?;
            tuples.push(t);
        }
        let located = |e: StructureError| match e {
            StructureError::Syntax { .. } => e,
            other => StructureError::Syntax {
                line: nline,
                col: ncol,
                msg: other.to_string(),
            },
        };
        structure = structure
            .with_relation(&name, arity, &tuples)
            .map_err(located)?;
    }
    Ok(structure)
}

fn read_name(cur: &mut Cursor<'_>) -> Result<String, StructureError> {
    if cur.peek() == Some('≤') || (cur.peek() == Some('<') && cur.chars.get(cur.pos + 1) == Some(&'='))
    {
        return Err(cur.err(StructureError::ReservedName("≤".into()).to_string()));
    }
    let name = cur.word()?;
    if name.chars().next().is_some_and(|c| c.is_ascii_digit()) {
        return Err(cur.err(format!("relation name `{name}` must not start with a digit")));
    }
    Ok(name)
}
