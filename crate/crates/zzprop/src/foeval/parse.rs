use super::{CountKind, Formula};
use crate::error::{Error, Result};
use crate::structures::Signature;

#[derive(Debug, Clone, PartialEq)]
enum Tok<'a> {
    Open,
    Close,
    Word(&'a str),
}

fn tokenize(text: &str) -> Vec<(usize, Tok<'_>)> {
    let mut out = Vec::new();
    let bytes = text.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        match bytes[i] {
            b'(' => {
                out.push((i, Tok::Open));
                i += 1;
            }
            b')' => {
                out.push((i, Tok::Close));
                i += 1;
            }
            c if c.is_ascii_whitespace() => i += 1,
            _ => {
                let start = i;
                while i < bytes.len()
                    && !bytes[i].is_ascii_whitespace()
                    && bytes[i] != b'('
                    && bytes[i] != b')'
                {
                    i += 1;
                }
                out.push((start, Tok::Word(&text[start..i])));
            }
        }
    }
    out
}

struct Parser<'a, 's> {
    toks: Vec<(usize, Tok<'a>)>,
    pos: usize,
    end: usize,
    sig: &'s Signature,
}

fn syntax(pos: usize, msg: impl Into<String>) -> Error {
    Error::Syntax { pos, msg: msg.into() }
}

impl<'a> Parser<'a, '_> {
    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |t| t.0)
    }

    fn next(&mut self) -> Option<(usize, Tok<'a>)> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expect_close(&mut self) -> Result<()> {
        match self.next() {
            Some((_, Tok::Close)) => Ok(()),
            Some((p, _)) => Err(syntax(p, "expected `)`")),
            None => Err(syntax(self.end, "unbalanced parentheses: missing `)`")),
        }
    }

    fn word(&mut self, what: &str) -> Result<&'a str> {
        match self.next() {
            Some((_, Tok::Word(w))) => Ok(w),
            Some((p, _)) => Err(syntax(p, format!("expected {what}"))),
            None => Err(syntax(self.end, format!("expected {what}"))),
        }
    }

    fn var(&mut self) -> Result<String> {
        let p = self.here();
        let w = self.word("variable")?;
        if w.parse::<i64>().is_ok() {
            return Err(syntax(p, format!("`{w}` is not a variable name")));
        }
        Ok(w.to_string())
    }

    fn formula(&mut self) -> Result<Formula> {
        let open = self.here();
        match self.next() {
            Some((_, Tok::Open)) => {}
            Some((p, Tok::Close)) => return Err(syntax(p, "unbalanced parentheses: unexpected `)`")),
            Some((p, Tok::Word(w))) => return Err(syntax(p, format!("expected `(`, found `{w}`"))),
            None => return Err(syntax(self.end, "unexpected end of input")),
        }
        let head_pos = self.here();
        let head = self.word("operator or relation name")?;
        let f = match head {
            "not" => Formula::Not(Box::new(self.formula()?)),
            "and" | "or" => {
                let mut parts = Vec::new();
                while !matches!(self.toks.get(self.pos), Some((_, Tok::Close)) | None) {
                    parts.push(self.formula()?);
                }
                if head == "and" {
                    Formula::And(parts)
                } else {
                    Formula::Or(parts)
                }
            }
            "->" => {
                let a = self.formula()?;
                let b = self.formula()?;
                Formula::Implies(Box::new(a), Box::new(b))
            }
            "=" => {
                let x = self.var()?;
                let y = self.var()?;
                Formula::Eq(x, y)
            }
            "exists" | "forall" => {
                let x = self.var()?;
                let body = Box::new(self.formula()?);
                if head == "exists" {
                    Formula::Exists(x, body)
                } else {
                    Formula::Forall(x, body)
                }
            }
            "exists>=" | "exists=" | "exists<=" => {
                let kind = match head {
                    "exists>=" => CountKind::AtLeast,
                    "exists=" => CountKind::Exactly,
                    _ => CountKind::AtMost,
                };
                let p = self.here();
                let m = self.word("count")?;
                let m: usize = m
                    .parse()
                    .map_err(|_| syntax(p, format!("malformed count `{m}`")))?;
                let x = self.var()?;
                Formula::Count(kind, m, x, Box::new(self.formula()?))
            }
            rel => {
                let k = self
                    .sig
                    .index_of(rel)
                    .ok_or_else(|| syntax(head_pos, format!("unknown relation `{rel}`")))?;
                let mut args = Vec::new();
                while !matches!(self.toks.get(self.pos), Some((_, Tok::Close)) | None) {
                    args.push(self.var()?);
                }
                if args.len() != self.sig.arity(k) {
                    return Err(syntax(
                        open,
                        format!("relation `{rel}` has arity {}, got {} arguments", self.sig.arity(k), args.len()),
                    ));
                }
                Formula::Atom(rel.to_string(), args)
            }
        };
        self.expect_close()?;
        Ok(f)
    }
}

/// Parses one formula; relation names and arities are checked against `sig`.
pub fn parse(text: &str, sig: &Signature) -> Result<Formula> {
    let mut p = Parser { toks: tokenize(text), pos: 0, end: text.len(), sig };
    let f = p.formula()?;
    if p.pos < p.toks.len() {
        return Err(syntax(p.here(), "trailing input after formula"));
    }
    Ok(f)
}

/// Parses `(sig (Name arity) ...)` followed by one formula.
pub fn parse_with_header(text: &str) -> Result<(Signature, Formula)> {
    let toks = tokenize(text);
    let mut i = 0;
    let at = |i: usize| toks.get(i).map_or(text.len(), |t| t.0);
    if toks.get(i).map(|t| &t.1) != Some(&Tok::Open) || toks.get(i + 1).map(|t| &t.1) != Some(&Tok::Word("sig")) {
        return Err(syntax(at(i), "expected `(sig ...)` header"));
    }
    i += 2;
    let mut rels = Vec::new();
    loop {
        match toks.get(i).map(|t| &t.1) {
            Some(Tok::Close) => {
                i += 1;
                break;
            }
            Some(Tok::Open) => {
                let name = match toks.get(i + 1).map(|t| &t.1) {
                    Some(Tok::Word(w)) => *w,
                    _ => return Err(syntax(at(i + 1), "expected relation name")),
                };
                let arity: usize = match toks.get(i + 2).map(|t| &t.1) {
                    Some(Tok::Word(w)) => w.parse().map_err(|_| syntax(at(i + 2), "bad arity"))?,
                    _ => return Err(syntax(at(i + 2), "expected arity")),
                };
                if toks.get(i + 3).map(|t| &t.1) != Some(&Tok::Close) {
                    return Err(syntax(at(i + 3), "expected `)`"));
                }
                rels.push((name.to_string(), arity));
                i += 4;
            }
            _ => return Err(syntax(at(i), "unbalanced parentheses in header")),
        }
    }
    let sig = Signature::new(rels).map_err(|e| syntax(0, e.to_string()))?;
    let rest_start = at(i);
    let f = parse(&text[rest_start..], &sig).map_err(|e| match e {
        Error::Syntax { pos, msg } => Error::Syntax { pos: pos + rest_start, msg },
        e => e,
    })?;
    Ok((sig, f))
}
