//! Expression language over the generators of `WC`.
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary ('*'? unary)*          juxtaposition multiplies
//! unary := '-' unary | power
//! power := atom ('^' INT)?
//! atom  := INT ('/' INT)? | x(i) | y(i) | e(i) | L(i,j) | O(i,j,...)
//!        | Dirac | Coord | '(' expr ')'
//! ```

use std::fmt;

use num_bigint::BigInt;
use tama_core::gr::leading_part;
use tama_core::scalar::int;
use tama_core::tama::{o2, o_of_sequence, OspGenerators};
use tama_core::{ama, Gr, Rational, Wc};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Num(Rational),
    X(usize),
    Y(usize),
    E(usize),
    L(usize, usize),
    O(Vec<usize>),
    Dirac,
    Coord,
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExprError {
    pub pos: usize,
    pub msg: String,
}

impl fmt::Display for ExprError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at position {}: {}", self.pos, self.msg)
    }
}

impl std::error::Error for ExprError {}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>, ExprError> {
    let chars: Vec<(usize, char)> = src.char_indices().collect();
    let mut out = Vec::new();
    let mut k = 0;
    while k < chars.len() {
        let (pos, c) = chars[k];
        if c.is_whitespace() {
            k += 1;
        } else if c.is_ascii_digit() {
            let start = k;
            while k < chars.len() && chars[k].1.is_ascii_digit() {
                k += 1;
            }
            let text: String = chars[start..k].iter().map(|p| p.1).collect();
            out.push((pos, Tok::Int(text.parse().expect("digits"))));
        } else if c.is_ascii_alphabetic() {
            let start = k;
            while k < chars.len() && chars[k].1.is_ascii_alphanumeric() {
                k += 1;
            }
            out.push((pos, Tok::Ident(chars[start..k].iter().map(|p| p.1).collect())));
        } else if "+-*^/(),".contains(c) {
            out.push((pos, Tok::Sym(c)));
            k += 1;
        } else {
            return Err(ExprError { pos, msg: format!("unexpected character `{c}`") });
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|t| &t.1)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |t| t.0)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ExprError> {
        Err(ExprError { pos: self.pos(), msg: msg.into() })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ExprError> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected `{c}`"))
        }
    }

    fn expr(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn starts_atom(&self) -> bool {
        matches!(self.peek(), Some(Tok::Int(_)) | Some(Tok::Ident(_)) | Some(Tok::Sym('(')))
    }

    fn term(&mut self) -> Result<Expr, ExprError> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat('*') || self.starts_atom() {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, ExprError> {
        if self.eat('-') {
            Ok(Expr::Neg(Box::new(self.unary()?)))
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<Expr, ExprError> {
        let base = self.atom()?;
        if self.eat('^') {
            match self.peek().cloned() {
                Some(Tok::Int(k)) => {
                    let Ok(k) = u32::try_from(k) else { return self.err("exponent too large") };
                    self.at += 1;
                    Ok(Expr::Pow(Box::new(base), k))
                }
                _ => self.err("expected a nonnegative integer exponent"),
            }
        } else {
            Ok(base)
        }
    }

    fn index(&mut self) -> Result<usize, ExprError> {
        match self.peek().cloned() {
            Some(Tok::Int(v)) => {
                self.at += 1;
                usize::try_from(v).or_else(|_| self.err("index too large"))
            }
            _ => self.err("expected an index"),
        }
    }

    fn indices(&mut self) -> Result<Vec<usize>, ExprError> {
        self.expect('(')?;
        let mut out = vec![self.index()?];
        while self.eat(',') {
            out.push(self.index()?);
        }
        self.expect(')')?;
        Ok(out)
    }

    fn atom(&mut self) -> Result<Expr, ExprError> {
        let start = self.pos();
        match self.peek().cloned() {
            Some(Tok::Int(p)) => {
                self.at += 1;
                if self.eat('/') {
                    match self.peek().cloned() {
                        Some(Tok::Int(q)) if q != BigInt::from(0) => {
                            self.at += 1;
                            Ok(Expr::Num(Rational::new(p, q)))
                        }
                        _ => self.err("expected a nonzero denominator"),
                    }
                } else {
                    Ok(Expr::Num(Rational::from_integer(p)))
                }
            }
            Some(Tok::Sym('(')) => {
                self.at += 1;
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            Some(Tok::Ident(name)) => {
                self.at += 1;
                let arity = |v: &Vec<usize>, k: usize| -> Result<(), ExprError> {
                    if v.len() == k {
                        Ok(())
                    } else {
                        Err(ExprError { pos: start, msg: format!("{name} takes {k} index(es), got {}", v.len()) })
                    }
                };
                match name.as_str() {
                    "Dirac" => Ok(Expr::Dirac),
                    "Coord" => Ok(Expr::Coord),
                    "x" | "y" | "e" => {
                        let v = self.indices()?;
                        arity(&v, 1)?;
                        Ok(match name.as_str() {
                            "x" => Expr::X(v[0]),
                            "y" => Expr::Y(v[0]),
                            _ => Expr::E(v[0]),
                        })
                    }
                    "L" => {
                        let v = self.indices()?;
                        arity(&v, 2)?;
                        Ok(Expr::L(v[0], v[1]))
                    }
                    "O" => {
                        let v = self.indices()?;
                        if v.len() < 2 {
                            return Err(ExprError { pos: start, msg: "O needs at least 2 indices".into() });
                        }
                        Ok(Expr::O(v))
                    }
                    other => Err(ExprError { pos: start, msg: format!("unknown symbol `{other}`") }),
                }
            }
            Some(Tok::Sym(c)) => self.err(format!("unexpected `{c}`")),
            None => self.err("unexpected end of input"),
        }
    }
}

pub fn parse(src: &str) -> Result<Expr, ExprError> {
    let toks = lex(src)?;
    let mut p = Parser { toks, at: 0, end: src.len() };
    let e = p.expr()?;
    if p.at != p.toks.len() {
        return p.err("unexpected trailing input");
    }
    Ok(e)
}

// Binding strength used when rendering: 1 sum, 2 product, 3 unary, 4 power/atom.
fn level(e: &Expr) -> u8 {
    match e {
        Expr::Add(..) | Expr::Sub(..) => 1,
        Expr::Mul(..) => 2,
        Expr::Neg(..) => 3,
        _ => 4,
    }
}

fn wrap(e: &Expr, min: u8) -> String {
    if level(e) < min {
        format!("({})", render(e))
    } else {
        render(e)
    }
}

fn join(v: &[usize]) -> String {
    v.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(",")
}

/// Canonical text; `parse(render(e)) == e`.
pub fn render(e: &Expr) -> String {
    match e {
        Expr::Num(r) if r.is_integer() => r.numer().to_string(),
        Expr::Num(r) => format!("{}/{}", r.numer(), r.denom()),
        Expr::X(i) => format!("x({i})"),
        Expr::Y(i) => format!("y({i})"),
        Expr::E(i) => format!("e({i})"),
        Expr::L(i, j) => format!("L({i},{j})"),
        Expr::O(v) => format!("O({})", join(v)),
        Expr::Dirac => "Dirac".into(),
        Expr::Coord => "Coord".into(),
        Expr::Neg(a) => format!("-{}", wrap(a, 3)),
        Expr::Add(a, b) => format!("{} + {}", wrap(a, 1), wrap(b, 2)),
        Expr::Sub(a, b) => format!("{} - {}", wrap(a, 1), wrap(b, 2)),
        Expr::Mul(a, b) => format!("{} * {}", wrap(a, 2), wrap(b, 3)),
        Expr::Pow(a, k) => format!("{}^{k}", pow_base(a)),
    }
}

fn pow_base(a: &Expr) -> String {
    match a {
        Expr::Pow(..) => format!("({})", render(a)),
        Expr::Num(r) if !r.is_integer() => format!("({})", render(a)),
        _ => wrap(a, 4),
    }
}

/// Evaluates in `WC` with `n` variables.
pub fn evaluate(e: &Expr, n: usize) -> Result<Wc, String> {
    let osp = OspGenerators::new(n);
    eval_in(e, n, &osp)
}

fn check(n: usize, i: usize) -> Result<(), String> {
    if i == 0 || i > n {
        Err(format!("index {i} out of range 1..={n}"))
    } else {
        Ok(())
    }
}

fn eval_in(e: &Expr, n: usize, osp: &OspGenerators) -> Result<Wc, String> {
    let err = |e: tama_core::Error| e.to_string();
    Ok(match e {
        Expr::Num(r) => Wc::scalar(n, r.clone()),
        Expr::X(i) => {
            check(n, *i)?;
            Wc::x(n, *i)
        }
        Expr::Y(i) => {
            check(n, *i)?;
            Wc::y(n, *i)
        }
        Expr::E(i) => {
            check(n, *i)?;
            Wc::e(n, *i)
        }
        Expr::L(i, j) => {
            check(n, *i)?;
            check(n, *j)?;
            if i == j {
                Wc::zero(n)
            } else {
                ama::l(n, *i, *j).map_err(err)?
            }
        }
        Expr::O(v) => {
            for &i in v {
                check(n, i)?;
            }
            if v.len() == 2 {
                o2(n, v[0], v[1]).map_err(err)?
            } else {
                o_of_sequence(osp, v).map_err(err)?
            }
        }
        Expr::Dirac => osp.dirac.clone(),
        Expr::Coord => osp.coord.clone(),
        Expr::Neg(a) => -&eval_in(a, n, osp)?,
        Expr::Add(a, b) => &eval_in(a, n, osp)? + &eval_in(b, n, osp)?,
        Expr::Sub(a, b) => &eval_in(a, n, osp)? - &eval_in(b, n, osp)?,
        Expr::Mul(a, b) => &eval_in(a, n, osp)? * &eval_in(b, n, osp)?,
        Expr::Pow(a, k) => eval_in(a, n, osp)?.pow(*k),
    })
}

/// Leading part in gr; zero stays zero.
pub fn evaluate_gr(e: &Expr, n: usize) -> Result<Gr, String> {
    let w = evaluate(e, n)?;
    if w.is_zero() {
        return Ok(Gr::zero(n));
    }
    leading_part(&w).map_err(|e| e.to_string())
}

/// Converts an expression built from numbers and two-index `O(i,j)` into a
/// commutative polynomial in the `X_ij`.
pub fn to_opoly(e: &Expr, n: usize) -> Result<tama_core::uncross::OPoly, String> {
    use tama_core::uncross::OPoly;
    Ok(match e {
        Expr::Num(r) => OPoly::one(n).scale(r),
        Expr::O(v) if v.len() == 2 => {
            check(n, v[0])?;
            check(n, v[1])?;
            OPoly::x(n, v[0], v[1])
        }
        Expr::Neg(a) => to_opoly(a, n)?.scale(&int(-1)),
        Expr::Add(a, b) => &to_opoly(a, n)? + &to_opoly(b, n)?,
        Expr::Sub(a, b) => &to_opoly(a, n)? - &to_opoly(b, n)?,
        Expr::Mul(a, b) => &to_opoly(a, n)? * &to_opoly(b, n)?,
        Expr::Pow(a, k) => {
            let base = to_opoly(a, n)?;
            (0..*k).fold(OPoly::one(n), |acc, _| &acc * &base)
        }
        other => return Err(format!("`{}` is not a polynomial in the O(i,j)", render(other))),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence() {
        let e = parse("1 + 2*x(1)^2").unwrap();
        assert_eq!(render(&e), "1 + 2 * x(1)^2");
        let e = parse("-x(1)^2").unwrap();
        assert!(matches!(e, Expr::Neg(_)));
        assert_eq!(parse("x(1) y(1)").unwrap(), parse("x(1)*y(1)").unwrap());
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(parse("x(1) + ").unwrap_err().pos, 7);
        assert_eq!(parse("x(1) $").unwrap_err().pos, 5);
        assert_eq!(parse("L(1)").unwrap_err().pos, 0);
        let e = parse("L(1,0)").unwrap();
        assert!(evaluate(&e, 3).unwrap_err().contains("out of range"));
    }

    #[test]
    fn examples() {
        let e = parse("L(1,3)*L(2,5)").unwrap();
        let v = evaluate(&e, 5).unwrap();
        assert_eq!(v, &ama::l(5, 1, 3).unwrap() * &ama::l(5, 2, 5).unwrap());
        let osp = OspGenerators::new(4);
        let o = tama_core::tama::o_symmetry(&osp, &[1, 2, 3, 4]).unwrap();
        assert_eq!(evaluate(&parse("O(1,2,3,4)^2").unwrap(), 4).unwrap(), &o * &o);
        assert_eq!(evaluate(&parse("y(1) x(1) - x(1) y(1)").unwrap(), 1).unwrap(), Wc::one(1));
    }

    #[test]
    fn render_keeps_structure() {
        for s in ["a", "(x(1) + y(1)) * e(2)", "x(1) - (y(1) - e(1))", "-(x(1) * y(1))", "(x(1)^2)^3", "(-x(1))^2", "(1/2)^2", "x(1) * (y(1) * e(1))"] {
            if s == "a" {
                continue;
            }
            let e = parse(s).unwrap();
            assert_eq!(render(&e), s);
            assert_eq!(parse(&render(&e)).unwrap(), e);
        }
    }
}
