//! Expression parser for maps in z and curves in x, y.
//!
//! Grammar, lowest precedence first:
//!
//! ```text
//! expr    := sum ("o" sum)*
//! sum     := product (("+" | "-") product)*
//! product := unary (("*" | "/") unary | <implicit> power)*
//! unary   := "-" unary | power
//! power   := primary ("^" ("∘" | "o") INT | "^" "-"? INT)?
//! primary := INT | "z" | "x" | "y" | "T" INT | "(" expr ")"
//! ```
//!
//! `A o B` is the composition A(B(z)); `A^∘k` (or `A^o k`) is the k-th iterate.

use num_bigint::BigInt;
use ratdyn::algebra::ratmap::chebyshev;
use ratdyn::algebra::{BiPoly, Poly, RatMap, Q};
use ratdyn::{Error, Result};

const MAX_ALIAS: usize = 12;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Var(char),
    Cheb(usize),
    Compose,
    Iter,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

fn err<T>(pos: usize, msg: impl Into<String>) -> Result<T> {
    Err(Error::Parse { pos, msg: msg.into() })
}

fn lex(src: &str) -> Result<Vec<(Tok, usize)>> {
    let chars: Vec<(usize, char)> = src.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        i += 1;
        let tok = match c {
            c if c.is_whitespace() => continue,
            '0'..='9' => {
                let mut s = c.to_string();
                while i < chars.len() && chars[i].1.is_ascii_digit() {
                    s.push(chars[i].1);
                    i += 1;
                }
                Tok::Int(s.parse().unwrap())
            }
            'T' => {
                let mut s = String::new();
                while i < chars.len() && chars[i].1.is_ascii_digit() {
                    s.push(chars[i].1);
                    i += 1;
                }
                match s.parse::<usize>() {
                    Ok(n) if n <= MAX_ALIAS => Tok::Cheb(n),
                    _ => return err(pos, format!("alias T{} is not one of T0..T{}", s, MAX_ALIAS)),
                }
            }
            'z' | 'x' | 'y' => Tok::Var(c),
            'o' | '∘' => Tok::Compose,
            '+' => Tok::Plus,
            '-' | '−' => Tok::Minus,
            '*' | '·' => Tok::Star,
            '/' => Tok::Slash,
            '^' => {
                let mut j = i;
                while j < chars.len() && chars[j].1.is_whitespace() {
                    j += 1;
                }
                if j < chars.len() && matches!(chars[j].1, 'o' | '∘') {
                    i = j + 1;
                    Tok::Iter
                } else {
                    Tok::Caret
                }
            }
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            _ => return err(pos, format!("unexpected character '{}'", c)),
        };
        out.push((tok, pos));
    }
    out.push((Tok::End, src.len()));
    Ok(out)
}

#[derive(Clone, Debug)]
enum Ast {
    Int(BigInt),
    Var(char, usize),
    Cheb(usize, usize),
    Neg(Box<Ast>),
    Add(Box<Ast>, Box<Ast>),
    Sub(Box<Ast>, Box<Ast>),
    Mul(Box<Ast>, Box<Ast>),
    Div(Box<Ast>, Box<Ast>, usize),
    Pow(Box<Ast>, i64, usize),
    Iter(Box<Ast>, usize, usize),
    Compose(Box<Ast>, Box<Ast>, usize),
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> usize {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].0.clone();
        if t != Tok::End {
            self.at += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<Ast> {
        let mut lhs = self.sum()?;
        while *self.peek() == Tok::Compose {
            let pos = self.pos();
            self.bump();
            let rhs = self.sum()?;
            lhs = Ast::Compose(Box::new(lhs), Box::new(rhs), pos);
        }
        Ok(lhs)
    }

    fn sum(&mut self) -> Result<Ast> {
        let mut lhs = self.product()?;
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    lhs = Ast::Add(Box::new(lhs), Box::new(self.product()?));
                }
                Tok::Minus => {
                    self.bump();
                    lhs = Ast::Sub(Box::new(lhs), Box::new(self.product()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn product(&mut self) -> Result<Ast> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.bump();
                    lhs = Ast::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                Tok::Slash => {
                    let pos = self.pos();
                    self.bump();
                    lhs = Ast::Div(Box::new(lhs), Box::new(self.unary()?), pos);
                }
                Tok::Int(_) | Tok::Var(_) | Tok::Cheb(_) | Tok::LParen => {
                    lhs = Ast::Mul(Box::new(lhs), Box::new(self.power()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Ast> {
        if *self.peek() == Tok::Minus {
            self.bump();
            return Ok(Ast::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Ast> {
        let base = self.primary()?;
        match self.peek() {
            Tok::Caret => {
                let pos = self.pos();
                self.bump();
                let neg = if *self.peek() == Tok::Minus {
                    self.bump();
                    true
                } else {
                    false
                };
                let e = self.small_int()?;
                Ok(Ast::Pow(Box::new(base), if neg { -(e as i64) } else { e as i64 }, pos))
            }
            Tok::Iter => {
                let pos = self.pos();
                self.bump();
                let k = self.small_int()?;
                Ok(Ast::Iter(Box::new(base), k, pos))
            }
            _ => Ok(base),
        }
    }

    fn small_int(&mut self) -> Result<usize> {
        let pos = self.pos();
        match self.bump() {
            Tok::Int(n) => match usize::try_from(&n) {
                Ok(k) if k <= i32::MAX as usize => Ok(k),
                _ => err(pos, "exponent too large"),
            },
            _ => err(pos, "expected an integer exponent"),
        }
    }

    fn primary(&mut self) -> Result<Ast> {
        let pos = self.pos();
        match self.bump() {
            Tok::Int(n) => Ok(Ast::Int(n)),
            Tok::Var(c) => Ok(Ast::Var(c, pos)),
            Tok::Cheb(n) => Ok(Ast::Cheb(n, pos)),
            Tok::LParen => {
                let e = self.expr()?;
                let close = self.pos();
                if self.bump() != Tok::RParen {
                    return err(close, "expected ')'");
                }
                Ok(e)
            }
            Tok::End => err(pos, "unexpected end of input"),
            t => err(pos, format!("unexpected token {:?}", t)),
        }
    }
}

fn parse_ast(src: &str) -> Result<Ast> {
    let mut p = Parser { toks: lex(src)?, at: 0 };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return err(p.pos(), "trailing input");
    }
    Ok(e)
}

fn map_of(e: &Ast) -> Result<RatMap> {
    Ok(match e {
        Ast::Int(n) => RatMap::constant(Q::from_integer(n.clone())),
        Ast::Var('z', _) => RatMap::identity(),
        Ast::Var(c, pos) => return err(*pos, format!("maps use the variable z, found {}", c)),
        Ast::Cheb(n, _) => chebyshev(*n),
        Ast::Neg(a) => map_of(a)?.neg(),
        Ast::Add(a, b) => map_of(a)?.add(&map_of(b)?),
        Ast::Sub(a, b) => map_of(a)?.sub(&map_of(b)?),
        Ast::Mul(a, b) => map_of(a)?.mul(&map_of(b)?),
        Ast::Div(a, b, pos) => {
            let d = map_of(b)?;
            if d.num().is_zero() {
                return err(*pos, "division by the zero polynomial");
            }
            map_of(a)?.div(&d)?
        }
        Ast::Pow(a, e, pos) => {
            let b = map_of(a)?;
            if *e < 0 && b.num().is_zero() {
                return err(*pos, "negative power of zero");
            }
            b.pow(*e as i32)
        }
        Ast::Iter(a, k, _) => map_of(a)?.iterate(*k),
        Ast::Compose(a, b, _) => map_of(a)?.compose(&map_of(b)?),
    })
}

fn bipoly_of(e: &Ast) -> Result<BiPoly> {
    Ok(match e {
        Ast::Int(n) => BiPoly::constant(Q::from_integer(n.clone())),
        Ast::Var('x', _) => BiPoly::x(),
        Ast::Var('y', _) => BiPoly::y(),
        Ast::Var(c, pos) => return err(*pos, format!("curves use the variables x and y, found {}", c)),
        Ast::Cheb(_, pos) | Ast::Iter(_, _, pos) | Ast::Compose(_, _, pos) => {
            return err(*pos, "composition is not available in curve equations")
        }
        Ast::Neg(a) => -&bipoly_of(a)?,
        Ast::Add(a, b) => &bipoly_of(a)? + &bipoly_of(b)?,
        Ast::Sub(a, b) => &bipoly_of(a)? - &bipoly_of(b)?,
        Ast::Mul(a, b) => &bipoly_of(a)? * &bipoly_of(b)?,
        Ast::Div(a, b, pos) => {
            let d = bipoly_of(b)?;
            if d.is_zero() {
                return err(*pos, "division by zero");
            }
            if !d.is_constant() {
                return err(*pos, "curve equations are polynomial; divide by constants only");
            }
            bipoly_of(a)?.scale(&(Q::from_integer(1.into()) / d.coeff(0, 0)))
        }
        Ast::Pow(a, e, pos) => {
            if *e < 0 {
                return err(*pos, "negative powers are not polynomial");
            }
            bipoly_of(a)?.pow(*e as u32)
        }
    })
}

/// Parses a rational map in z.
pub fn parse_map(src: &str) -> Result<RatMap> {
    map_of(&parse_ast(src)?)
}

/// Parses a polynomial curve equation in x and y.
pub fn parse_bipoly(src: &str) -> Result<BiPoly> {
    bipoly_of(&parse_ast(src)?)
}

/// Parses a univariate polynomial in z.
pub fn parse_poly(src: &str) -> Result<Poly<Q>> {
    let m = parse_map(src)?;
    m.as_poly().ok_or_else(|| Error::Parse { pos: 0, msg: format!("{} is not a polynomial", m) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use ratdyn::algebra::q;

    #[test]
    fn basics() {
        assert_eq!(parse_map("z^2 - 1").unwrap(), RatMap::from_ints(&[-1, 0, 1]));
        assert_eq!(parse_map("T3").unwrap(), RatMap::from_ints(&[0, -3, 0, 4]));
        assert_eq!(parse_map("4z^3-3z").unwrap(), parse_map("T3").unwrap());
        let l = parse_map("(z^2+1)^2 / (4*z*(z^2-1))").unwrap();
        assert_eq!(l.degree(), 4);
        assert_eq!(parse_map("1/2*z").unwrap(), RatMap::mobius(q(1) / q(2), q(0), q(0), q(1)).unwrap());
        assert_eq!(parse_map("-z^2").unwrap(), RatMap::from_ints(&[0, 0, -1]));
        assert_eq!(parse_map("z^-2").unwrap(), RatMap::monomial(-2));
    }

    #[test]
    fn composition_and_iterates() {
        let a = parse_map("z^2 o z + 1").unwrap();
        assert_eq!(a, RatMap::from_ints(&[1, 2, 1]));
        assert_eq!(parse_map("(z^2-2)^∘3").unwrap(), RatMap::from_ints(&[-2, 0, 1]).iterate(3));
        assert_eq!(parse_map("(z^2-2)^o 3").unwrap(), parse_map("(z^2-2) o (z^2-2) o (z^2-2)").unwrap());
        assert_eq!(parse_map("T2 o T3").unwrap(), chebyshev(6));
    }

    #[test]
    fn errors_carry_positions() {
        assert!(matches!(parse_map("z^2 + $"), Err(Error::Parse { pos: 6, .. })));
        assert!(matches!(parse_map("z / 0"), Err(Error::Parse { pos: 2, .. })));
        assert!(matches!(parse_map("(z+1"), Err(Error::Parse { pos: 4, .. })));
        assert!(matches!(parse_map("T13"), Err(Error::Parse { pos: 0, .. })));
        assert!(matches!(parse_map("x + 1"), Err(Error::Parse { pos: 0, .. })));
    }

    #[test]
    fn curves() {
        let c = parse_bipoly("x - (y+1)^2").unwrap();
        assert_eq!(c, BiPoly::from_int_terms(&[(1, 0, 1), (0, 0, -1), (0, 1, -2), (0, 2, -1)]));
        assert!(parse_bipoly("x/y").is_err());
        assert_eq!(parse_bipoly(&c.to_string()).unwrap(), c);
    }

    #[test]
    fn round_trip_fixtures() {
        let fixtures = [
            "z^2 - 1",
            "(z^2+1)^2 / (4*z*(z^2-1))",
            "T5",
            "(4*z^3 + 8*z^2 + z - 4)/(4*z + 5)",
            "z*(z+1)^2",
            "-3/7*z^3 + 1/2",
            "(z^2 - 1/3)/(-2*z)",
            "1/z^3",
            "z^2(z+2)/(2z+1)",
        ];
        for s in fixtures {
            let f = parse_map(s).unwrap();
            assert_eq!(parse_map(&f.to_string()).unwrap(), f, "{}", s);
        }
    }
}
