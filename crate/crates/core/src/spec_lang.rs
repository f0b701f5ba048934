//! Group specifications such as `C3 x C3`, `S3`, `Heis(5)` or `(C2 x C2) × M(3)`.
//!
//! ```text
//! expr := term (('x' | '×') term)*
//! term := 'C' int | 'S' int | 'Heis(' int ')' | 'M(' int ')' | '(' expr ')'
//! ```
//!
//! Whitespace is ignored and products associate to the left.

use std::fmt;

use thiserror::Error;

use crate::group::{is_odd_prime, FiniteGroup, GroupError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpecError {
    #[error("syntax error at position {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("{0}")]
    Semantic(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpecAst {
    Cyclic(usize),
    Symmetric(usize),
    Heis(usize),
    Modular(usize),
    Product(Box<GroupSpecAst>, Box<GroupSpecAst>),
}

impl GroupSpecAst {
    /// Leaf factors, left to right.
    pub fn factors(&self) -> Vec<&GroupSpecAst> {
        match self {
            GroupSpecAst::Product(l, r) => {
                let mut v = l.factors();
                v.extend(r.factors());
                v
            }
            leaf => vec![leaf],
        }
    }

    /// Checks parameter ranges without building anything.
    pub fn validate(&self) -> Result<(), SpecError> {
        for f in self.factors() {
            match *f {
                GroupSpecAst::Cyclic(0) => {
                    return Err(SpecError::Semantic("C0: cyclic order must be at least 1".into()))
                }
                GroupSpecAst::Symmetric(n) if !(1..=5).contains(&n) => {
                    return Err(SpecError::Semantic(format!("S{n}: degree must be between 1 and 5")))
                }
                GroupSpecAst::Heis(p) if !is_odd_prime(p) => {
                    return Err(SpecError::Semantic(format!("Heis({p}): p must be an odd prime")))
                }
                GroupSpecAst::Modular(p) if !is_odd_prime(p) => {
                    return Err(SpecError::Semantic(format!("M({p}): p must be an odd prime")))
                }
                _ => {}
            }
        }
        Ok(())
    }

    /// Product of the factor orders, `None` on overflow.
    pub fn order(&self) -> Option<usize> {
        self.factors().into_iter().try_fold(1usize, |acc, f| {
            let n = match *f {
                GroupSpecAst::Cyclic(n) => n,
                GroupSpecAst::Symmetric(n) => (1..=n).product(),
                GroupSpecAst::Heis(p) | GroupSpecAst::Modular(p) => p.checked_mul(p)?.checked_mul(p)?,
                GroupSpecAst::Product(..) => unreachable!("factors are leaves"),
            };
            acc.checked_mul(n)
        })
    }

    pub fn eval(&self) -> Result<FiniteGroup, SpecError> {
        self.validate()?;
        let sem = |e: GroupError| SpecError::Semantic(e.to_string());
        let groups = self
            .factors()
            .into_iter()
            .map(|f| match *f {
                GroupSpecAst::Cyclic(n) => FiniteGroup::cyclic(n),
                GroupSpecAst::Symmetric(n) => FiniteGroup::symmetric(n),
                GroupSpecAst::Heis(p) => FiniteGroup::heisenberg(p),
                GroupSpecAst::Modular(p) => FiniteGroup::modular_extraspecial(p),
                GroupSpecAst::Product(..) => unreachable!("factors are leaves"),
            })
            .collect::<Result<Vec<_>, _>>()
            .map_err(sem)?;
        FiniteGroup::product_all(&groups).map_err(sem)
    }
}

impl fmt::Display for GroupSpecAst {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpecAst::Cyclic(n) => write!(f, "C{n}"),
            GroupSpecAst::Symmetric(n) => write!(f, "S{n}"),
            GroupSpecAst::Heis(p) => write!(f, "Heis({p})"),
            GroupSpecAst::Modular(p) => write!(f, "M({p})"),
            GroupSpecAst::Product(l, r) => {
                write!(f, "{l} x ")?;
                match **r {
                    GroupSpecAst::Product(..) => write!(f, "({r})"),
                    _ => write!(f, "{r}"),
                }
            }
        }
    }
}

struct Parser<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    src: &'a str,
}

impl Parser<'_> {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    /// Character offset of the next token, or the input length at the end.
    fn offset(&self) -> usize {
        self.chars.get(self.pos).map_or(self.src.chars().count(), |&(i, _)| i)
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T, SpecError> {
        Err(SpecError::Syntax { pos: self.offset(), message: message.into() })
    }

    fn expect(&mut self, c: char) -> Result<(), SpecError> {
        match self.peek() {
            Some(x) if x == c => {
                self.pos += 1;
                Ok(())
            }
            Some(x) => self.error(format!("expected '{c}', found '{x}'")),
            None => self.error(format!("expected '{c}', found end of input")),
        }
    }

    fn int(&mut self) -> Result<usize, SpecError> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return match self.peek() {
                Some(c) => self.error(format!("expected an integer, found '{c}'")),
                None => self.error("expected an integer, found end of input"),
            };
        }
        let digits: String = self.chars[start..self.pos].iter().map(|&(_, c)| c).collect();
        digits.parse().map_err(|_| SpecError::Syntax {
            pos: self.chars[start].0,
            message: format!("integer {digits} is too large"),
        })
    }

    fn expr(&mut self) -> Result<GroupSpecAst, SpecError> {
        let mut acc = self.term()?;
        while matches!(self.peek(), Some('x' | '×')) {
            self.pos += 1;
            let rhs = self.term()?;
            acc = GroupSpecAst::Product(Box::new(acc), Box::new(rhs));
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<GroupSpecAst, SpecError> {
        match self.peek() {
            Some('C') => {
                self.pos += 1;
                Ok(GroupSpecAst::Cyclic(self.int()?))
            }
            Some('S') => {
                self.pos += 1;
                Ok(GroupSpecAst::Symmetric(self.int()?))
            }
            Some('H') => {
                for c in "Heis(".chars() {
                    self.expect(c)?;
                }
                let p = self.int()?;
                self.expect(')')?;
                Ok(GroupSpecAst::Heis(p))
            }
            Some('M') => {
                self.pos += 1;
                self.expect('(')?;
                let p = self.int()?;
                self.expect(')')?;
                Ok(GroupSpecAst::Modular(p))
            }
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                self.expect(')')?;
                Ok(inner)
            }
            Some(c) => self.error(format!("expected a group term, found '{c}'")),
            None => self.error("expected a group term, found end of input"),
        }
    }
}

/// Parses a specification. Positions in errors are 0-based character offsets
/// into the original string.
pub fn parse_group_spec(s: &str) -> Result<GroupSpecAst, SpecError> {
    let chars: Vec<(usize, char)> = s.chars().enumerate().filter(|(_, c)| !c.is_whitespace()).collect();
    let mut parser = Parser { chars, pos: 0, src: s };
    let ast = parser.expr()?;
    if let Some(c) = parser.peek() {
        return parser.error(format!("unexpected '{c}'"));
    }
    ast.validate()?;
    Ok(ast)
}

/// Parses and builds a group in one step.
pub fn build_group(s: &str) -> Result<FiniteGroup, SpecError> {
    parse_group_spec(s)?.eval()
}
