//! Words in three variables over `*`, `\`, `/` and the inverse `^-1`.
//!
//! Grammar (binary operators share one precedence level and associate left):
//!
//! ```text
//! word   := factor (('*' | '\' | '/') factor)*
//! factor := atom ('^-1')*
//! atom   := 'a' | 'b' | 'c' | '(' word ')'
//! ```
//!
//! Juxtaposition is accepted as `*`, so `ab^-1c` parses like `a*b^-1*c`.

use std::fmt;

use super::{AlgebraError, MagmaTable, Result, TernaryTable};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    Mul,
    LDiv,
    RDiv,
}

impl Letter {
    fn symbol(self) -> char {
        match self {
            Letter::Mul => '*',
            Letter::LDiv => '\\',
            Letter::RDiv => '/',
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Word {
    Var(usize),
    Inv(Box<Word>),
    Op(Letter, Box<Word>, Box<Word>),
}

impl Word {
    pub fn var(i: usize) -> Self {
        Word::Var(i)
    }

    pub fn inv(self) -> Self {
        Word::Inv(Box::new(self))
    }

    pub fn op(letter: Letter, l: Word, r: Word) -> Self {
        Word::Op(letter, Box::new(l), Box::new(r))
    }

    pub fn mul(l: Word, r: Word) -> Self {
        Self::op(Letter::Mul, l, r)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let chars: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
        let mut p = Parser { s: &chars, i: 0 };
        let w = p.word().ok_or_else(|| AlgebraError::UnknownFormula(text.to_string()))?;
        if p.i != chars.len() {
            return Err(AlgebraError::UnknownFormula(text.to_string()));
        }
        Ok(w)
    }

    pub fn uses_inverse(&self) -> bool {
        match self {
            Word::Var(_) => false,
            Word::Inv(_) => true,
            Word::Op(_, l, r) => l.uses_inverse() || r.uses_inverse(),
        }
    }

    pub fn uses_division(&self) -> bool {
        match self {
            Word::Var(_) => false,
            Word::Inv(w) => w.uses_division(),
            Word::Op(op, l, r) => *op != Letter::Mul || l.uses_division() || r.uses_division(),
        }
    }

    pub fn eval(&self, m: &MagmaTable, args: [usize; 3]) -> Result<usize> {
        Ok(match self {
            Word::Var(i) => args[*i],
            Word::Inv(w) => m.inverse(w.eval(m, args)?)?,
            Word::Op(op, l, r) => {
                let (x, y) = (l.eval(m, args)?, r.eval(m, args)?);
                match op {
                    Letter::Mul => m.mul(x, y),
                    Letter::LDiv => m.ldiv(x, y)?,
                    Letter::RDiv => m.rdiv(x, y)?,
                }
            }
        })
    }

    /// The ternary operation `(a, b, c) -> word` on the table's carrier.
    pub fn to_table(&self, m: &MagmaTable) -> Result<TernaryTable> {
        let n = m.size();
        let mut data = Vec::with_capacity(n * n * n);
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    data.push(self.eval(m, [a, b, c])?);
                }
            }
        }
        TernaryTable::from_flat(n, data)
    }

    // `wrap` forces parentheses around a binary node.
    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, wrap: bool) -> fmt::Result {
        match self {
            Word::Var(i) => write!(f, "{}", ['a', 'b', 'c'][*i]),
            Word::Inv(w) => {
                w.fmt_prec(f, true)?;
                write!(f, "^-1")
            }
            Word::Op(op, l, r) => {
                if wrap {
                    write!(f, "(")?;
                }
                let same = matches!(**l, Word::Op(lop, _, _) if lop == *op);
                l.fmt_prec(f, !same)?;
                write!(f, "{}", op.symbol())?;
                r.fmt_prec(f, true)?;
                if wrap {
                    write!(f, ")")?;
                }
                Ok(())
            }
        }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, false)
    }
}

struct Parser<'a> {
    s: &'a [char],
    i: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<char> {
        self.s.get(self.i).copied()
    }

    fn word(&mut self) -> Option<Word> {
        let mut acc = self.factor()?;
        loop {
            let letter = match self.peek() {
                Some('*') => Letter::Mul,
                Some('\\') => Letter::LDiv,
                Some('/') => Letter::RDiv,
                Some('a' | 'b' | 'c' | '(') => {
                    let rhs = self.factor()?;
                    acc = Word::mul(acc, rhs);
                    continue;
                }
                _ => return Some(acc),
            };
            self.i += 1;
            let rhs = self.factor()?;
            acc = Word::op(letter, acc, rhs);
        }
    }

    fn factor(&mut self) -> Option<Word> {
        let mut w = match self.peek()? {
            '(' => {
                self.i += 1;
                let w = self.word()?;
                (self.peek()? == ')').then_some(())?;
                self.i += 1;
                w
            }
            ch @ ('a' | 'b' | 'c') => {
                self.i += 1;
                Word::Var(ch as usize - 'a' as usize)
            }
            _ => return None,
        };
        while self.s[self.i..].starts_with(&['^', '-', '1']) {
            self.i += 3;
            w = w.inv();
        }
        Some(w)
    }
}
