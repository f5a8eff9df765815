//! Line-oriented text format.
//!
//! ```text
//! category NAME {
//!   objects: a b
//!   arrows: f: a -> b, g: b -> b
//!   relations: g.g = id(b)        # or   table: g.g = id(b), f.g = f
//! }
//! sset NAME dim N {
//!   0: v
//!   face 1 0: e -> v
//!   degen 0 0: v -> v0
//! }
//! diagram NAME shape SHAPE {
//!   node a = BINDING
//!   arrow u = { obj: x -> y ; gen: f -> g.h }      # categories
//!   arrow u = { level 0: v -> w ; level 1: e -> d } # simplicial sets
//! }
//! cocone NAME over DIAGRAM apex CAT {
//!   leg a = { obj: x -> y ; gen: f -> g }
//! }
//! ```

use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub pos: Pos,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.pos, self.message)
    }
}

impl std::error::Error for ParseError {}

/// A word with the position where it starts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Word {
    pub pos: Pos,
    pub text: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assign {
    pub from: Word,
    pub to: Word,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArrowDecl {
    pub name: Word,
    pub src: Word,
    pub tgt: Word,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Equation {
    pub lhs: Word,
    pub rhs: Word,
}

/// The body of `arrow` and `leg` entries.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MapSpec {
    pub obj: Vec<Assign>,
    pub gen: Vec<Assign>,
    pub levels: Vec<(usize, Vec<Assign>)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Body {
    Category {
        objects: Vec<Word>,
        arrows: Vec<ArrowDecl>,
        relations: Vec<Equation>,
        table: Vec<Equation>,
        has_relations: bool,
        has_table: bool,
    },
    SSet {
        dim: usize,
        levels: Vec<(usize, Vec<Word>)>,
        faces: Vec<(usize, usize, Assign)>,
        degens: Vec<(usize, usize, Assign)>,
    },
    Diagram {
        shape: Word,
        nodes: Vec<(Word, Word)>,
        arrows: Vec<(Word, MapSpec)>,
    },
    Cocone {
        over: Word,
        apex: Word,
        legs: Vec<(Word, MapSpec)>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decl {
    pub name: Word,
    pub body: Body,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Word(String),
    Arrow,
    Colon,
    Comma,
    Semi,
    Eq,
    LBrace,
    RBrace,
}

fn is_word_char(c: char) -> bool {
    c.is_alphanumeric() || "_'*+.()|".contains(c)
}

fn lex(line: &str, lineno: usize) -> Result<Vec<(Pos, Tok)>, ParseError> {
    let body = match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    };
    let chars: Vec<char> = body.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let pos = Pos { line: lineno, col: i + 1 };
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let single = match c {
            ':' => Some(Tok::Colon),
            ',' => Some(Tok::Comma),
            ';' => Some(Tok::Semi),
            '=' => Some(Tok::Eq),
            '{' => Some(Tok::LBrace),
            '}' => Some(Tok::RBrace),
            _ => None,
        };
        if let Some(t) = single {
            out.push((pos, t));
            i += 1;
        } else if c == '-' && chars.get(i + 1) == Some(&'>') {
            out.push((pos, Tok::Arrow));
            i += 2;
        } else if is_word_char(c) {
            let start = i;
            while i < chars.len() && is_word_char(chars[i]) {
                i += 1;
            }
            out.push((pos, Tok::Word(chars[start..i].iter().collect())));
        } else {
            return Err(ParseError {
                pos,
                message: format!("unexpected character '{c}'"),
            });
        }
    }
    Ok(out)
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Word(w) => format!("'{w}'"),
        Tok::Arrow => "'->'".into(),
        Tok::Colon => "':'".into(),
        Tok::Comma => "','".into(),
        Tok::Semi => "';'".into(),
        Tok::Eq => "'='".into(),
        Tok::LBrace => "'{'".into(),
        Tok::RBrace => "'}'".into(),
    }
}

/// Cursor over the tokens of one line.
struct Line {
    toks: Vec<(Pos, Tok)>,
    at: usize,
    end: Pos,
}

impl Line {
    fn err<T>(&self, message: String) -> Result<T, ParseError> {
        let pos = self.toks.get(self.at).map(|t| t.0).unwrap_or(self.end);
        Err(ParseError { pos, message })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|t| &t.1)
    }

    fn done(&self) -> bool {
        self.at >= self.toks.len()
    }

    fn expect(&mut self, t: Tok) -> Result<(), ParseError> {
        match self.peek() {
            Some(x) if *x == t => {
                self.at += 1;
                Ok(())
            }
            Some(x) => {
                let found = describe(x);
                self.err(format!("expected {}, found {found}", describe(&t)))
            }
            None => self.err(format!("expected {} at end of line", describe(&t))),
        }
    }

    fn eat(&mut self, t: Tok) -> bool {
        if self.peek() == Some(&t) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn word(&mut self) -> Result<Word, ParseError> {
        match self.toks.get(self.at) {
            Some((pos, Tok::Word(w))) => {
                let w = Word { pos: *pos, text: w.clone() };
                self.at += 1;
                Ok(w)
            }
            Some((_, t)) => {
                let found = describe(t);
                self.err(format!("expected a name, found {found}"))
            }
            None => self.err("expected a name at end of line".into()),
        }
    }

    fn keyword(&mut self, kw: &str) -> Result<(), ParseError> {
        let w = self.word()?;
        if w.text != kw {
            return Err(ParseError {
                pos: w.pos,
                message: format!("expected '{kw}', found '{}'", w.text),
            });
        }
        Ok(())
    }

    fn number(&mut self) -> Result<usize, ParseError> {
        let w = self.word()?;
        w.text.parse().map_err(|_| ParseError {
            pos: w.pos,
            message: format!("expected a number, found '{}'", w.text),
        })
    }

    fn finish(&self) -> Result<(), ParseError> {
        if self.done() {
            Ok(())
        } else {
            let found = describe(&self.toks[self.at].1);
            self.err(format!("unexpected {found}"))
        }
    }

    /// `x -> y` pairs separated by optional commas, up to `;`, `}` or the
    /// end of the line.
    fn assigns(&mut self) -> Result<Vec<Assign>, ParseError> {
        let mut out = Vec::new();
        while let Some(Tok::Word(_)) = self.peek() {
            let from = self.word()?;
            self.expect(Tok::Arrow)?;
            let to = self.word()?;
            out.push(Assign { from, to });
            self.eat(Tok::Comma);
        }
        Ok(out)
    }

    fn equations(&mut self) -> Result<Vec<Equation>, ParseError> {
        let mut out = Vec::new();
        while !self.done() {
            let lhs = self.word()?;
            self.expect(Tok::Eq)?;
            let rhs = self.word()?;
            out.push(Equation { lhs, rhs });
            if !self.eat(Tok::Comma) {
                break;
            }
        }
        Ok(out)
    }

    fn map_spec(&mut self) -> Result<MapSpec, ParseError> {
        self.expect(Tok::LBrace)?;
        let mut spec = MapSpec::default();
        loop {
            if self.eat(Tok::RBrace) {
                break;
            }
            let head = self.word()?;
            match head.text.as_str() {
                "obj" => {
                    self.expect(Tok::Colon)?;
                    spec.obj.extend(self.assigns()?);
                }
                "gen" => {
                    self.expect(Tok::Colon)?;
                    spec.gen.extend(self.assigns()?);
                }
                "level" => {
                    let k = self.number()?;
                    self.expect(Tok::Colon)?;
                    let a = self.assigns()?;
                    spec.levels.push((k, a));
                }
                other => {
                    return Err(ParseError {
                        pos: head.pos,
                        message: format!("expected 'obj', 'gen' or 'level', found '{other}'"),
                    })
                }
            }
            if !self.eat(Tok::Semi) {
                self.expect(Tok::RBrace)?;
                break;
            }
        }
        Ok(spec)
    }
}

pub fn parse(text: &str) -> Result<Vec<Decl>, ParseError> {
    let mut lines = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let toks = lex(raw, i + 1)?;
        if !toks.is_empty() {
            let end = Pos {
                line: i + 1,
                col: raw.chars().count() + 1,
            };
            lines.push(Line { toks, at: 0, end });
        }
    }
    let mut decls = Vec::new();
    let mut it = lines.into_iter();
    while let Some(mut head) = it.next() {
        let kw = head.word()?;
        let name = head.word()?;
        let mut body = match kw.text.as_str() {
            "category" => Body::Category {
                objects: vec![],
                arrows: vec![],
                relations: vec![],
                table: vec![],
                has_relations: false,
                has_table: false,
            },
            "sset" => {
                head.keyword("dim")?;
                Body::SSet {
                    dim: head.number()?,
                    levels: vec![],
                    faces: vec![],
                    degens: vec![],
                }
            }
            "diagram" => {
                head.keyword("shape")?;
                Body::Diagram {
                    shape: head.word()?,
                    nodes: vec![],
                    arrows: vec![],
                }
            }
            "cocone" => {
                head.keyword("over")?;
                let over = head.word()?;
                head.keyword("apex")?;
                Body::Cocone {
                    over,
                    apex: head.word()?,
                    legs: vec![],
                }
            }
            other => {
                return Err(ParseError {
                    pos: kw.pos,
                    message: format!("expected 'category', 'sset', 'diagram' or 'cocone', found '{other}'"),
                })
            }
        };
        head.expect(Tok::LBrace)?;
        let mut closed = head.eat(Tok::RBrace);
        head.finish()?;
        let mut last = head.end;
        while !closed {
            let Some(mut line) = it.next() else {
                return Err(ParseError {
                    pos: last,
                    message: format!("unterminated block for '{}'", name.text),
                });
            };
            last = line.end;
            if line.eat(Tok::RBrace) {
                line.finish()?;
                closed = true;
                continue;
            }
            entry(&mut line, &mut body)?;
            line.finish()?;
        }
        decls.push(Decl { name, body });
    }
    Ok(decls)
}

fn entry(line: &mut Line, body: &mut Body) -> Result<(), ParseError> {
    let head = line.word()?;
    let unknown = |what: &str| ParseError {
        pos: head.pos,
        message: format!("unknown {what} entry '{}'", head.text),
    };
    match body {
        Body::Category {
            objects,
            arrows,
            relations,
            table,
            has_relations,
            has_table,
        } => {
            line.expect(Tok::Colon)?;
            match head.text.as_str() {
                "objects" => {
                    while !line.done() {
                        objects.push(line.word()?);
                    }
                }
                "arrows" => {
                    while !line.done() {
                        let name = line.word()?;
                        line.expect(Tok::Colon)?;
                        let src = line.word()?;
                        line.expect(Tok::Arrow)?;
                        let tgt = line.word()?;
                        arrows.push(ArrowDecl { name, src, tgt });
                        if !line.eat(Tok::Comma) {
                            break;
                        }
                    }
                }
                "relations" => {
                    *has_relations = true;
                    relations.extend(line.equations()?);
                }
                "table" => {
                    *has_table = true;
                    table.extend(line.equations()?);
                }
                _ => return Err(unknown("category")),
            }
        }
        Body::SSet {
            levels,
            faces,
            degens,
            ..
        } => match head.text.as_str() {
            "face" | "degen" => {
                let k = line.number()?;
                let i = line.number()?;
                line.expect(Tok::Colon)?;
                let target = if head.text == "face" { faces } else { degens };
                for a in line.assigns()? {
                    target.push((k, i, a));
                }
            }
            t if t.parse::<usize>().is_ok() => {
                line.expect(Tok::Colon)?;
                let mut names = Vec::new();
                while !line.done() {
                    names.push(line.word()?);
                }
                levels.push((t.parse().unwrap_or(0), names));
            }
            _ => return Err(unknown("sset")),
        },
        Body::Diagram { nodes, arrows, .. } => match head.text.as_str() {
            "node" => {
                let j = line.word()?;
                line.expect(Tok::Eq)?;
                nodes.push((j, line.word()?));
            }
            "arrow" => {
                let f = line.word()?;
                line.expect(Tok::Eq)?;
                arrows.push((f, line.map_spec()?));
            }
            _ => return Err(unknown("diagram")),
        },
        Body::Cocone { legs, .. } => match head.text.as_str() {
            "leg" => {
                let j = line.word()?;
                line.expect(Tok::Eq)?;
                legs.push((j, line.map_spec()?));
            }
            _ => return Err(unknown("cocone")),
        },
    }
    Ok(())
}

/// A path as written: `e1.e2.e3` or `id(v)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PathText {
    Identity(String),
    Word(Vec<String>),
}

pub fn parse_path(w: &Word) -> Result<PathText, ParseError> {
    let err = |message: String| ParseError { pos: w.pos, message };
    let t = w.text.as_str();
    if let Some(inner) = t.strip_prefix("id(").and_then(|s| s.strip_suffix(')')) {
        if inner.is_empty() || inner.contains(['(', ')', '.']) {
            return Err(err(format!("malformed identity '{t}'")));
        }
        return Ok(PathText::Identity(inner.to_string()));
    }
    let parts: Vec<String> = t.split('.').map(str::to_string).collect();
    if parts.iter().any(|p| p.is_empty() || p.contains(['(', ')'])) {
        return Err(err(format!("malformed path '{t}'")));
    }
    Ok(PathText::Word(parts))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn category_block() {
        let d = parse("# walking arrow\ncategory fin2 {\n  objects: 0 1\n  arrows: l: 0 -> 1\n}\n").unwrap();
        assert_eq!(d.len(), 1);
        let Body::Category { objects, arrows, .. } = &d[0].body else { panic!() };
        assert_eq!(objects.len(), 2);
        assert_eq!(arrows[0].name.text, "l");
        assert_eq!(arrows[0].tgt.pos, Pos { line: 4, col: 19 });
    }

    #[test]
    fn empty_block_on_one_line() {
        let d = parse("category empty { }").unwrap();
        let Body::Category { objects, .. } = &d[0].body else { panic!() };
        assert!(objects.is_empty());
    }

    #[test]
    fn map_specs() {
        let text = "diagram d shape s {\n node a = t\n arrow u = { obj: * -> 0 ; gen: }\n arrow v = { level 0: x -> y, z -> w; level 1: e -> f }\n}";
        let d = parse(text).unwrap();
        let Body::Diagram { arrows, .. } = &d[0].body else { panic!() };
        assert_eq!(arrows[0].1.obj.len(), 1);
        assert_eq!(arrows[1].1.levels[0].1.len(), 2);
        assert_eq!(arrows[1].1.levels[1].0, 1);
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse("category c {\n  objects: a b\n  arrows: f a -> b\n}").unwrap_err();
        assert_eq!(e.pos, Pos { line: 3, col: 13 });
        let e = parse("category c {\n  objects: a\n").unwrap_err();
        assert!(e.message.contains("unterminated"));
        let e = parse("sset x dim 2 {\n  0: v\n  face 1 0: e => v\n}").unwrap_err();
        assert_eq!(e.pos.line, 3);
        let e = parse("functor f {\n}").unwrap_err();
        assert_eq!(e.pos, Pos { line: 1, col: 1 });
    }

    #[test]
    fn paths() {
        let w = |t: &str| Word {
            pos: Pos::default(),
            text: t.into(),
        };
        assert_eq!(parse_path(&w("id(v)")).unwrap(), PathText::Identity("v".into()));
        assert_eq!(parse_path(&w("e.e")).unwrap(), PathText::Word(vec!["e".into(), "e".into()]));
        assert!(parse_path(&w("e..e")).is_err());
        assert!(parse_path(&w("id()")).is_err());
    }
}
