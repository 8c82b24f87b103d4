//! Recursive-descent parser for the formula and arrow DSL.
//!
//! ```text
//! formula := atom | "(" formula "^" formula ")"      outermost parentheses optional
//! atom    := [a-z][a-z0-9_]* | "T"
//! arrow   := tensor ("." arrow)?                      right-associative
//! tensor  := primary ("/\" primary)?                  nesting needs parentheses
//! primary := "(" arrow ")" | "1[" f "]" | "cm[" f "," f "," f "," f "]"
//!          | "dl>[" f "]" | "dl<[" f "]" | "sg>[" f "]" | "sg<[" f "]"
//!          | "b>[" f "," f "," f "]" | "b<[" f "," f "," f "]" | "c[" f "," f "]"
//! ```
//!
//! Compositions are type-checked while parsing, so a successful parse is
//! always well-typed.

use crate::constructions::{b_bw, b_fw, c_comm};
use crate::error::{Error, Result};
use crate::syntax::{ArrowTerm, Formula};

pub fn parse_formula(text: &str) -> Result<Formula> {
    let mut p = Parser::new(text);
    let f = p.formula_top()?;
    p.finish()?;
    Ok(f)
}

pub fn parse_arrow(text: &str) -> Result<ArrowTerm> {
    let mut p = Parser::new(text);
    let typed = p.arrow()?;
    p.finish()?;
    Ok(typed.term)
}

struct Typed {
    term: ArrowTerm,
    source: Formula,
    target: Formula,
}

impl Typed {
    fn new(term: ArrowTerm) -> Result<Typed> {
        let (source, target) = term.infer_type()?;
        Ok(Typed {
            term,
            source,
            target,
        })
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser {
            src: text.as_bytes(),
            pos: 0,
        }
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            offset: self.pos,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(token.as_bytes()) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> Result<()> {
        if self.eat(token) {
            Ok(())
        } else {
            self.error(format!("expected {token:?}"))
        }
    }

    fn finish(&mut self) -> Result<()> {
        match self.peek() {
            None => Ok(()),
            Some(_) => self.error("unexpected trailing input"),
        }
    }

    fn ident(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let start = self.pos;
        match self.src.get(self.pos) {
            Some(b) if b.is_ascii_lowercase() => self.pos += 1,
            _ => return None,
        }
        while let Some(b) = self.src.get(self.pos) {
            if b.is_ascii_lowercase() || b.is_ascii_digit() || *b == b'_' {
                self.pos += 1;
            } else {
                break;
            }
        }
        Some(std::str::from_utf8(&self.src[start..self.pos]).expect("ascii"))
    }

    fn formula_top(&mut self) -> Result<Formula> {
        let left = self.formula_primary()?;
        if !self.eat("^") {
            return Ok(left);
        }
        let right = self.formula_primary()?;
        if self.peek() == Some(b'^') {
            return self.error("nested '^' needs explicit parentheses");
        }
        Ok(Formula::conj(left, right))
    }

    fn formula_primary(&mut self) -> Result<Formula> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let left = self.formula_primary()?;
                self.expect("^")?;
                let right = self.formula_primary()?;
                self.expect(")")?;
                Ok(Formula::conj(left, right))
            }
            Some(b'T') => {
                self.pos += 1;
                match self.src.get(self.pos) {
                    Some(b) if b.is_ascii_alphanumeric() || *b == b'_' => {
                        self.error("letters must match [a-z][a-z0-9_]*")
                    }
                    _ => Ok(Formula::Unit),
                }
            }
            _ => match self.ident() {
                Some(name) => Ok(Formula::letter(name)),
                None => self.error("expected a formula"),
            },
        }
    }

    fn formula_args(&mut self, count: usize) -> Result<Vec<Formula>> {
        self.expect("[")?;
        let mut args = Vec::with_capacity(count);
        for k in 0..count {
            if k > 0 {
                self.expect(",")?;
            }
            args.push(self.formula_top()?);
        }
        self.expect("]")?;
        Ok(args)
    }

    fn arrow(&mut self) -> Result<Typed> {
        let left = self.tensor()?;
        self.skip_ws();
        let dot = self.pos;
        if !self.eat(".") {
            return Ok(left);
        }
        let right = self.arrow()?;
        if right.target != left.source {
            return Err(Error::TypeMismatch {
                expected: left.source,
                found: right.target,
                position: Some(dot),
            });
        }
        Ok(Typed {
            term: ArrowTerm::comp(left.term, right.term),
            source: right.source,
            target: left.target,
        })
    }

    fn tensor(&mut self) -> Result<Typed> {
        let left = self.primary()?;
        if !self.eat("/\\") {
            return Ok(left);
        }
        let right = self.primary()?;
        self.skip_ws();
        if self.src[self.pos..].starts_with(b"/\\") {
            return self.error("nested '/\\' needs explicit parentheses");
        }
        Ok(Typed {
            term: ArrowTerm::tensor(left.term, right.term),
            source: Formula::conj(left.source, right.source),
            target: Formula::conj(left.target, right.target),
        })
    }

    fn primary(&mut self) -> Result<Typed> {
        if self.eat("(") {
            let inner = self.arrow()?;
            self.expect(")")?;
            return Ok(inner);
        }
        if self.eat("1") {
            let mut a = self.formula_args(1)?;
            return Typed::new(ArrowTerm::Id(a.remove(0)));
        }
        let start = self.pos;
        let head = match self.ident() {
            Some(h) => h,
            None => return self.error("expected an arrow"),
        };
        let term = match head {
            "cm" => {
                let mut a = self.formula_args(4)?.into_iter();
                let mut next = || a.next().expect("four args");
                ArrowTerm::Cm(next(), next(), next(), next())
            }
            "c" => {
                let a = self.formula_args(2)?;
                c_comm(&a[0], &a[1])
            }
            "dl" | "sg" | "b" => {
                let forward = if self.eat(">") {
                    true
                } else if self.eat("<") {
                    false
                } else {
                    return self.error("expected '>' or '<'");
                };
                if head == "b" {
                    let a = self.formula_args(3)?;
                    if forward {
                        b_fw(&a[0], &a[1], &a[2])
                    } else {
                        b_bw(&a[0], &a[1], &a[2])
                    }
                } else {
                    let a = self.formula_args(1)?.remove(0);
                    match (head, forward) {
                        ("dl", true) => ArrowTerm::DeltaFw(a),
                        ("dl", false) => ArrowTerm::DeltaBw(a),
                        ("sg", true) => ArrowTerm::SigmaFw(a),
                        _ => ArrowTerm::SigmaBw(a),
                    }
                }
            }
            _ => {
                self.pos = start;
                return self.error(format!("unknown arrow constructor {head:?}"));
            }
        };
        Typed::new(term)
    }
}
