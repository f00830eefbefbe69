//! Text format for presentations.
//!
//! ```text
//! poset p1 {
//!   base a b c d;
//!   ladder X;
//!   order { a < b; b < c; c < d; }
//!   rel { X <= c always; }
//! }
//! ```
//!
//! `rel` statements take one of `from N` (base below ladder), `upto N` or
//! `always` (ladder below base), `shift INT` or `tail N` (ladder below
//! ladder). `#` starts a comment running to the end of the line.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::error::{Error, ParseError, Result};
use crate::ladder::{LadderPoset, LadderPresentation, RelKind, RelStmt};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(i128),
    LBrace,
    RBrace,
    Semi,
    Lt,
    Le,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

fn err(line: usize, col: usize, message: impl Into<String>) -> Error {
    Error::Parse(ParseError { line, col, message: message.into() })
}

fn lex(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    while i < chars.len() {
        let c = chars[i];
        let (tl, tc) = (line, col);
        let bump = |n: usize, i: &mut usize, col: &mut usize| {
            *i += n;
            *col += n;
        };
        match c {
            '\n' => {
                i += 1;
                line += 1;
                col = 1;
            }
            c if c.is_whitespace() => bump(1, &mut i, &mut col),
            '#' => {
                while i < chars.len() && chars[i] != '\n' {
                    i += 1;
                }
            }
            '{' => {
                out.push(Token { tok: Tok::LBrace, line: tl, col: tc });
                bump(1, &mut i, &mut col);
            }
            '}' => {
                out.push(Token { tok: Tok::RBrace, line: tl, col: tc });
                bump(1, &mut i, &mut col);
            }
            ';' => {
                out.push(Token { tok: Tok::Semi, line: tl, col: tc });
                bump(1, &mut i, &mut col);
            }
            '<' => {
                if chars.get(i + 1) == Some(&'=') {
                    out.push(Token { tok: Tok::Le, line: tl, col: tc });
                    bump(2, &mut i, &mut col);
                } else {
                    out.push(Token { tok: Tok::Lt, line: tl, col: tc });
                    bump(1, &mut i, &mut col);
                }
            }
            c if c.is_ascii_digit() || ((c == '-' || c == '+') && chars.get(i + 1).is_some_and(|d| d.is_ascii_digit())) => {
                let start = i;
                i += 1;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                col += i - start;
                let v: i128 = s.parse().map_err(|_| err(tl, tc, format!("number `{s}` out of range")))?;
                out.push(Token { tok: Tok::Int(v), line: tl, col: tc });
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                col += i - start;
                out.push(Token { tok: Tok::Ident(chars[start..i].iter().collect()), line: tl, col: tc });
            }
            other => return Err(err(tl, tc, format!("unexpected character `{other}`"))),
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    eof: (usize, usize),
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.toks.get(self.pos)
    }

    fn here(&self) -> (usize, usize) {
        self.peek().map(|t| (t.line, t.col)).unwrap_or(self.eof)
    }

    fn fail<T>(&self, msg: impl Into<String>) -> Result<T> {
        let (l, c) = self.here();
        Err(err(l, c, msg))
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<()> {
        match self.peek() {
            Some(t) if t.tok == want => {
                self.pos += 1;
                Ok(())
            }
            _ => self.fail(format!("expected {what}")),
        }
    }

    fn ident(&mut self, what: &str) -> Result<String> {
        match self.peek() {
            Some(Token { tok: Tok::Ident(s), .. }) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            _ => self.fail(format!("expected {what}")),
        }
    }

    fn keyword(&mut self, kw: &str) -> bool {
        if matches!(self.peek(), Some(Token { tok: Tok::Ident(s), .. }) if s == kw) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn nat(&mut self) -> Result<u64> {
        match self.peek() {
            Some(Token { tok: Tok::Int(v), .. }) if *v >= 0 && *v <= u64::MAX as i128 => {
                let v = *v as u64;
                self.pos += 1;
                Ok(v)
            }
            _ => self.fail("expected a natural number"),
        }
    }

    fn int(&mut self) -> Result<i64> {
        match self.peek() {
            Some(Token { tok: Tok::Int(v), .. }) if *v >= i64::MIN as i128 && *v <= i64::MAX as i128 => {
                let v = *v as i64;
                self.pos += 1;
                Ok(v)
            }
            _ => self.fail("expected an integer"),
        }
    }

    fn is(&self, t: &Tok) -> bool {
        self.peek().is_some_and(|x| x.tok == *t)
    }
}

/// Parses one presentation. Identifiers are checked for duplicates and for
/// use before declaration; the order itself is validated separately.
pub fn parse(text: &str) -> Result<LadderPresentation> {
    let toks = lex(text)?;
    let lines = text.split('\n').count();
    let last_col = text.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    let mut p = Parser { toks, pos: 0, eof: (lines, last_col) };
    let mut out = LadderPresentation::default();
    if !p.keyword("poset") {
        return p.fail("expected `poset`");
    }
    out.name = p.ident("a poset name")?;
    p.expect(Tok::LBrace, "`{`")?;
    let mut used: Vec<(String, usize, usize)> = Vec::new();
    loop {
        if p.is(&Tok::RBrace) {
            p.next();
            break;
        }
        if p.peek().is_none() {
            return p.fail("expected `}`");
        }
        let decl = if p.keyword("base") {
            Some(true)
        } else if p.keyword("ladder") {
            Some(false)
        } else {
            None
        };
        if let Some(is_base) = decl {
            loop {
                if p.is(&Tok::Semi) {
                    p.next();
                    break;
                }
                let id = p.ident("an identifier or `;`")?;
                if out.base.contains(&id) || out.ladders.contains(&id) {
                    return Err(Error::DuplicateId(id));
                }
                if is_base { out.base.push(id) } else { out.ladders.push(id) }
            }
        } else if p.keyword("order") {
            p.expect(Tok::LBrace, "`{`")?;
            while !p.is(&Tok::RBrace) {
                let (l, c) = p.here();
                let a = p.ident("an identifier or `}`")?;
                used.push((a.clone(), l, c));
                p.expect(Tok::Lt, "`<`")?;
                let (l, c) = p.here();
                let b = p.ident("an identifier")?;
                used.push((b.clone(), l, c));
                p.expect(Tok::Semi, "`;`")?;
                out.order.push((a, b));
            }
            p.next();
        } else if p.keyword("rel") {
            p.expect(Tok::LBrace, "`{`")?;
            while !p.is(&Tok::RBrace) {
                let (l, c) = p.here();
                let lhs = p.ident("an identifier or `}`")?;
                used.push((lhs.clone(), l, c));
                p.expect(Tok::Le, "`<=`")?;
                let (l, c) = p.here();
                let rhs = p.ident("an identifier")?;
                used.push((rhs.clone(), l, c));
                let kind = if p.keyword("from") {
                    RelKind::From(p.nat()?)
                } else if p.keyword("upto") {
                    RelKind::UpTo(p.nat()?)
                } else if p.keyword("always") {
                    RelKind::Always
                } else if p.keyword("shift") {
                    RelKind::Shift(p.int()?)
                } else if p.keyword("tail") {
                    RelKind::Tail(p.nat()?)
                } else {
                    return p.fail("expected `from`, `upto`, `always`, `shift` or `tail`");
                };
                p.expect(Tok::Semi, "`;`")?;
                out.rels.push(RelStmt { lhs, rhs, kind });
            }
            p.next();
        } else {
            return p.fail("expected `base`, `ladder`, `order`, `rel` or `}`");
        }
    }
    if p.peek().is_some() {
        return p.fail("unexpected input after the closing `}`");
    }
    let declared: BTreeSet<&String> = out.base.iter().chain(&out.ladders).collect();
    if let Some((id, _, _)) = used.iter().find(|(id, _, _)| !declared.contains(id)) {
        return Err(Error::UnknownId(id.clone()));
    }
    Ok(out)
}

/// Parses and validates.
pub fn load(text: &str) -> Result<LadderPoset> {
    parse(text)?.validate()
}

/// Canonical text; `parse(&print(p)) == p`.
pub fn print(p: &LadderPresentation) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "poset {} {{", p.name);
    if !p.base.is_empty() {
        let _ = writeln!(s, "  base {};", p.base.join(" "));
    }
    if !p.ladders.is_empty() {
        let _ = writeln!(s, "  ladder {};", p.ladders.join(" "));
    }
    if !p.order.is_empty() {
        let body: Vec<String> = p.order.iter().map(|(a, b)| format!("{a} < {b};")).collect();
        let _ = writeln!(s, "  order {{ {} }}", body.join(" "));
    }
    if !p.rels.is_empty() {
        let body: Vec<String> = p
            .rels
            .iter()
            .map(|r| {
                let k = match r.kind {
                    RelKind::From(t) => format!("from {t}"),
                    RelKind::UpTo(t) => format!("upto {t}"),
                    RelKind::Always => "always".to_owned(),
                    RelKind::Shift(c) => format!("shift {c}"),
                    RelKind::Tail(c) => format!("tail {c}"),
                };
                format!("{} <= {} {k};", r.lhs, r.rhs)
            })
            .collect();
        let _ = writeln!(s, "  rel {{ {} }}", body.join(" "));
    }
    s.push_str("}\n");
    s
}

/// Hasse diagram of the depth-`depth` truncation; edges point upwards.
pub fn export_dot(p: &LadderPoset, depth: u64) -> Result<String> {
    let t = p.truncate(depth)?;
    let mut s = String::new();
    let _ = writeln!(s, "digraph \"{}\" {{", p.name());
    let _ = writeln!(s, "  rankdir=BT;");
    for n in t.poset.names() {
        let _ = writeln!(s, "  \"{n}\";");
    }
    for (a, b) in t.poset.covers() {
        let _ = writeln!(s, "  \"{}\" -> \"{}\";", t.poset.name(a), t.poset.name(b));
    }
    s.push_str("}\n");
    Ok(s)
}
