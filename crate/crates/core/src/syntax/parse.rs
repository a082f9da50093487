use std::sync::Arc;

use thiserror::Error;

use super::{is_keyword, Span, Term, TermKind, Ty};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at {span}: {message}")]
pub struct ParseError {
    pub span: Span,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Keyword(&'static str),
    Num(u64),
    Backslash,
    Colon,
    Dot,
    Arrow,
    Plus,
    Comma,
    Semi,
    LParen,
    RParen,
    LBracket,
    RBracket,
    LBrace,
    RBrace,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Keyword(k) => format!("`{k}`"),
            Tok::Num(n) => format!("number {n}"),
            Tok::Backslash => "`\\`".into(),
            Tok::Colon => "`:`".into(),
            Tok::Dot => "`.`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::Plus => "`+`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Semi => "`;`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::LBracket => "`[`".into(),
            Tok::RBracket => "`]`".into(),
            Tok::LBrace => "`{`".into(),
            Tok::RBrace => "`}`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

const KEYWORDS: [&str; 7] = ["ncase", "lcase", "pcase", "lfold", "ifold", "nil", "Nat"];

fn lex(src: &str) -> Result<Vec<(Tok, Span)>, ParseError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let single = match c {
            b'\\' => Some(Tok::Backslash),
            b':' => Some(Tok::Colon),
            b'.' => Some(Tok::Dot),
            b'+' => Some(Tok::Plus),
            b',' => Some(Tok::Comma),
            b';' => Some(Tok::Semi),
            b'(' => Some(Tok::LParen),
            b')' => Some(Tok::RParen),
            b'[' => Some(Tok::LBracket),
            b']' => Some(Tok::RBracket),
            b'{' => Some(Tok::LBrace),
            b'}' => Some(Tok::RBrace),
            _ => None,
        };
        if let Some(tok) = single {
            i += 1;
            out.push((tok, Span::new(start, i)));
            continue;
        }
        if c == b'-' {
            if bytes.get(i + 1) == Some(&b'>') {
                i += 2;
                out.push((Tok::Arrow, Span::new(start, i)));
                continue;
            }
            return Err(ParseError {
                span: Span::new(start, start + 1),
                message: "expected `->`".into(),
            });
        }
        if c.is_ascii_digit() {
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let span = Span::new(start, i);
            let n = src[start..i].parse::<u64>().map_err(|_| ParseError {
                span,
                message: "natural literal out of range".into(),
            })?;
            out.push((Tok::Num(n), span));
            continue;
        }
        if c.is_ascii_alphabetic() {
            while i < bytes.len() && bytes[i].is_ascii_alphanumeric() {
                i += 1;
            }
            let span = Span::new(start, i);
            let word = &src[start..i];
            if is_keyword(word) {
                let kw = KEYWORDS.iter().find(|k| **k == word).unwrap();
                out.push((Tok::Keyword(kw), span));
            } else if c.is_ascii_lowercase() {
                out.push((Tok::Ident(word.to_string()), span));
            } else {
                return Err(ParseError {
                    span,
                    message: format!("`{word}` is not a valid identifier"),
                });
            }
            continue;
        }
        let ch = src[start..].chars().next().unwrap();
        return Err(ParseError {
            span: Span::new(start, start + ch.len_utf8()),
            message: format!("unexpected character `{ch}`"),
        });
    }
    out.push((Tok::Eof, Span::new(src.len(), src.len())));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, Span)>,
    pos: usize,
}

type PResult<T> = Result<T, ParseError>;

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn span(&self) -> Span {
        self.toks[self.pos].1
    }

    fn prev_end(&self) -> usize {
        if self.pos == 0 {
            0
        } else {
            self.toks[self.pos - 1].1.end
        }
    }

    fn bump(&mut self) -> (Tok, Span) {
        let t = self.toks[self.pos].clone();
        if t.0 != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, what: &str) -> PResult<T> {
        Err(ParseError {
            span: self.span(),
            message: format!("expected {what}, found {}", self.peek().describe()),
        })
    }

    fn expect(&mut self, tok: Tok) -> PResult<Span> {
        if *self.peek() == tok {
            Ok(self.bump().1)
        } else {
            self.error(&tok.describe())
        }
    }

    fn ident(&mut self) -> PResult<String> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.bump();
                Ok(s)
            }
            _ => self.error("identifier"),
        }
    }

    fn node(&self, start: usize, kind: TermKind) -> Term {
        Term {
            kind,
            span: Span::new(start, self.prev_end()),
        }
    }

    fn ty(&mut self) -> PResult<Ty> {
        let dom = self.atype()?;
        if *self.peek() == Tok::Arrow {
            self.bump();
            let cod = self.ty()?;
            Ok(Ty::arrow(dom, cod))
        } else {
            Ok(dom)
        }
    }

    fn atype(&mut self) -> PResult<Ty> {
        match self.peek().clone() {
            Tok::Keyword("Nat") => {
                self.bump();
                Ok(Ty::Nat)
            }
            Tok::Ident(a) => {
                self.bump();
                Ok(Ty::Var(a))
            }
            Tok::LBracket => {
                self.bump();
                let e = self.ty()?;
                self.expect(Tok::RBracket)?;
                Ok(Ty::list(e))
            }
            Tok::LParen => {
                self.bump();
                let l = self.ty()?;
                if *self.peek() == Tok::Comma {
                    self.bump();
                    let r = self.ty()?;
                    self.expect(Tok::RParen)?;
                    Ok(Ty::pair(l, r))
                } else {
                    self.expect(Tok::RParen)?;
                    Ok(l)
                }
            }
            _ => self.error("a type"),
        }
    }

    fn term(&mut self) -> PResult<Term> {
        if *self.peek() == Tok::Backslash {
            let start = self.bump().1.start;
            let binder = self.ident()?;
            self.expect(Tok::Colon)?;
            let ty = self.ty()?;
            self.expect(Tok::Dot)?;
            let body = self.term()?;
            return Ok(self.node(
                start,
                TermKind::Lam {
                    binder,
                    ty,
                    body: Arc::new(body),
                },
            ));
        }
        self.cons()
    }

    fn cons(&mut self) -> PResult<Term> {
        let start = self.span().start;
        let head = self.sum()?;
        if *self.peek() == Tok::Colon {
            self.bump();
            let tail = self.cons()?;
            return Ok(self.node(start, TermKind::Cons(Arc::new(head), Arc::new(tail))));
        }
        Ok(head)
    }

    fn sum(&mut self) -> PResult<Term> {
        let start = self.span().start;
        let mut acc = self.app()?;
        while *self.peek() == Tok::Plus {
            self.bump();
            let rhs = self.app()?;
            acc = self.node(start, TermKind::Add(Arc::new(acc), Arc::new(rhs)));
        }
        Ok(acc)
    }

    fn starts_atom(&self) -> bool {
        matches!(
            self.peek(),
            Tok::Ident(_)
                | Tok::Num(_)
                | Tok::LParen
                | Tok::Keyword("nil" | "ncase" | "lcase" | "pcase" | "lfold" | "ifold")
        )
    }

    fn app(&mut self) -> PResult<Term> {
        let start = self.span().start;
        let mut acc = self.atom()?;
        while self.starts_atom() {
            let arg = self.atom()?;
            acc = self.node(start, TermKind::App(Arc::new(acc), Arc::new(arg)));
        }
        Ok(acc)
    }

    fn fold_args(&mut self) -> PResult<(Arc<Term>, Arc<Term>, Arc<Term>)> {
        self.expect(Tok::LParen)?;
        let a = self.term()?;
        self.expect(Tok::Comma)?;
        let b = self.term()?;
        self.expect(Tok::Comma)?;
        let c = self.term()?;
        self.expect(Tok::RParen)?;
        Ok((Arc::new(a), Arc::new(b), Arc::new(c)))
    }

    fn atom(&mut self) -> PResult<Term> {
        let start = self.span().start;
        let kind = match self.peek().clone() {
            Tok::Ident(x) => {
                self.bump();
                TermKind::Var(x)
            }
            Tok::Num(n) => {
                self.bump();
                TermKind::Nat(n)
            }
            Tok::Keyword("nil") => {
                self.bump();
                self.expect(Tok::LBracket)?;
                let ty = self.ty()?;
                self.expect(Tok::RBracket)?;
                TermKind::Nil(ty)
            }
            Tok::LParen => {
                self.bump();
                let first = self.term()?;
                if *self.peek() == Tok::Comma {
                    self.bump();
                    let second = self.term()?;
                    self.expect(Tok::RParen)?;
                    TermKind::Pair(Arc::new(first), Arc::new(second))
                } else {
                    self.expect(Tok::RParen)?;
                    // Parentheses only group; keep the inner node but widen its span.
                    return Ok(Term {
                        kind: first.kind,
                        span: Span::new(start, self.prev_end()),
                    });
                }
            }
            Tok::Keyword("ncase") => {
                self.bump();
                let scrutinee = self.term()?;
                self.expect(Tok::LBrace)?;
                match self.peek() {
                    Tok::Num(0) => {
                        self.bump();
                    }
                    _ => return self.error("`0`"),
                }
                self.expect(Tok::Arrow)?;
                let zero = self.term()?;
                self.expect(Tok::Semi)?;
                let binder = self.ident()?;
                self.expect(Tok::Arrow)?;
                let pos = self.term()?;
                self.expect(Tok::RBrace)?;
                TermKind::NatCase {
                    scrutinee: Arc::new(scrutinee),
                    zero: Arc::new(zero),
                    binder,
                    pos: Arc::new(pos),
                }
            }
            Tok::Keyword("lcase") => {
                self.bump();
                let scrutinee = self.term()?;
                self.expect(Tok::LBrace)?;
                self.expect(Tok::Keyword("nil"))?;
                self.expect(Tok::Arrow)?;
                let nil = self.term()?;
                self.expect(Tok::Semi)?;
                let head = self.ident()?;
                self.expect(Tok::Colon)?;
                let tail = self.ident()?;
                self.expect(Tok::Arrow)?;
                let cons = self.term()?;
                self.expect(Tok::RBrace)?;
                TermKind::ListCase {
                    scrutinee: Arc::new(scrutinee),
                    nil: Arc::new(nil),
                    head,
                    tail,
                    cons: Arc::new(cons),
                }
            }
            Tok::Keyword("pcase") => {
                self.bump();
                let scrutinee = self.term()?;
                self.expect(Tok::LBrace)?;
                self.expect(Tok::LParen)?;
                let fst = self.ident()?;
                self.expect(Tok::Comma)?;
                let snd = self.ident()?;
                self.expect(Tok::RParen)?;
                self.expect(Tok::Arrow)?;
                let body = self.term()?;
                self.expect(Tok::RBrace)?;
                TermKind::PairCase {
                    scrutinee: Arc::new(scrutinee),
                    fst,
                    snd,
                    body: Arc::new(body),
                }
            }
            Tok::Keyword("lfold") => {
                self.bump();
                let (step, init, list) = self.fold_args()?;
                TermKind::LFold { step, init, list }
            }
            Tok::Keyword("ifold") => {
                self.bump();
                let (step, init, count) = self.fold_args()?;
                TermKind::IFold { step, init, count }
            }
            _ => return self.error("a term"),
        };
        Ok(self.node(start, kind))
    }

    fn finish(&mut self) -> PResult<()> {
        if *self.peek() == Tok::Eof {
            Ok(())
        } else {
            self.error("end of input")
        }
    }
}

pub fn parse_term(text: &str) -> Result<Term, ParseError> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
    };
    let t = p.term()?;
    p.finish()?;
    Ok(t)
}

pub fn parse_type(text: &str) -> Result<Ty, ParseError> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
    };
    let t = p.ty()?;
    p.finish()?;
    Ok(t)
}
