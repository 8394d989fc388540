//! Evaluator for the small closed-form constant language used by the
//! verification registry and by [`crate::fibseries::named_constant`].
//!
//! Expressions combine exact integers with a fixed set of named constants
//! and functions, all evaluated at the working precision of the supplied
//! context:
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := ('-' | '+') factor | power
//! power  := atom ('^' ('-')? integer)?
//! atom   := integer | name | name '(' expr ')' | '(' expr ')'
//! ```
//!
//! Names: `pi`, `loga` (the natural log of the golden ratio), `alpha`,
//! `beta`, `sqrt5`, `log2`. Functions: `zeta(m)` for integer `m != 1`,
//! `log(n)` for a positive integer `n`, `fib(n)` and `lucas(n)` for
//! integer `n`, and `ln(x)` for an arbitrary positive subexpression.
//! Except for `ln`, function arguments are full expressions but must
//! evaluate to an exact small integer.
//!
//! Every operation runs at the context's working precision, so results
//! carry only the usual rounding error of a short arithmetic chain; the
//! final value is rounded to the context's nominal precision.

use num::bigint::BigInt;
use num::traits::ToPrimitive;

use crate::bernoulli::zeta_int;
use crate::error::{Error, Result};
use crate::hp::{Ctx, Real};
use crate::seqcore::{self, golden_raw};

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Int(BigInt),
    Name(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn bad(src: &str, what: impl AsRef<str>) -> Error {
    Error::Registry {
        what: format!("constant expression `{src}`: {}", what.as_ref()),
    }
}

fn tokenize(src: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let mut chars = src.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            ' ' | '\t' | '\n' => {
                chars.next();
            }
            '0'..='9' => {
                let mut digits = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_digit() {
                        digits.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                let n = digits
                    .parse::<BigInt>()
                    .map_err(|e| bad(src, format!("bad integer `{digits}`: {e}")))?;
                out.push(Token::Int(n));
            }
            'a'..='z' | 'A'..='Z' => {
                let mut name = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_alphanumeric() {
                        name.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                out.push(Token::Name(name));
            }
            '+' => {
                chars.next();
                out.push(Token::Plus);
            }
            '-' => {
                chars.next();
                out.push(Token::Minus);
            }
            '*' => {
                chars.next();
                out.push(Token::Star);
            }
            '/' => {
                chars.next();
                out.push(Token::Slash);
            }
            '^' => {
                chars.next();
                out.push(Token::Caret);
            }
            '(' => {
                chars.next();
                out.push(Token::LParen);
            }
            ')' => {
                chars.next();
                out.push(Token::RParen);
            }
            other => return Err(bad(src, format!("unexpected character `{other}`"))),
        }
    }
    Ok(out)
}

struct Parser<'a> {
    src: &'a str,
    tokens: Vec<Token>,
    pos: usize,
    cx: &'a Ctx,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, t: &Token) -> Result<()> {
        match self.next() {
            Some(ref got) if got == t => Ok(()),
            got => Err(bad(self.src, format!("expected {t:?}, found {got:?}"))),
        }
    }

    fn expr(&mut self) -> Result<Real> {
        let mut acc = self.term()?;
        while let Some(tok) = self.peek() {
            match tok {
                Token::Plus => {
                    self.pos += 1;
                    let rhs = self.term()?;
                    acc = acc.add(&rhs, self.cx);
                }
                Token::Minus => {
                    self.pos += 1;
                    let rhs = self.term()?;
                    acc = acc.sub(&rhs, self.cx);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Real> {
        let mut acc = self.factor()?;
        while let Some(tok) = self.peek() {
            match tok {
                Token::Star => {
                    self.pos += 1;
                    let rhs = self.factor()?;
                    acc = acc.mul(&rhs, self.cx);
                }
                Token::Slash => {
                    self.pos += 1;
                    let rhs = self.factor()?;
                    if rhs.is_zero() {
                        return Err(bad(self.src, "division by zero"));
                    }
                    acc = acc.div(&rhs, self.cx);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Real> {
        match self.peek() {
            Some(Token::Minus) => {
                self.pos += 1;
                Ok(self.factor()?.neg())
            }
            Some(Token::Plus) => {
                self.pos += 1;
                self.factor()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Real> {
        let base = self.atom()?;
        if self.peek() == Some(&Token::Caret) {
            self.pos += 1;
            let negative = if self.peek() == Some(&Token::Minus) {
                self.pos += 1;
                true
            } else {
                false
            };
            let e = match self.next() {
                Some(Token::Int(n)) => n
                    .to_i64()
                    .ok_or_else(|| bad(self.src, "exponent out of range"))?,
                got => return Err(bad(self.src, format!("expected exponent, found {got:?}"))),
            };
            let e = if negative { -e } else { e };
            if e < 0 && base.is_zero() {
                return Err(bad(self.src, "zero raised to a negative power"));
            }
            Ok(base.pow_i64(e, self.cx))
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Real> {
        match self.next() {
            Some(Token::Int(n)) => Ok(self.cx.from_bigint(&n)),
            Some(Token::LParen) => {
                let v = self.expr()?;
                self.expect(&Token::RParen)?;
                Ok(v)
            }
            Some(Token::Name(name)) => {
                if self.peek() == Some(&Token::LParen) {
                    self.pos += 1;
                    let arg = self.expr()?;
                    self.expect(&Token::RParen)?;
                    if name == "ln" {
                        if arg.is_negative() || arg.is_zero() {
                            return Err(bad(self.src, "ln() needs a positive argument"));
                        }
                        return Ok(arg.ln(self.cx));
                    }
                    let m = self.int_arg(&name, &arg)?;
                    self.apply(&name, m)
                } else {
                    self.constant(&name)
                }
            }
            got => Err(bad(self.src, format!("expected a value, found {got:?}"))),
        }
    }

    /// Requires a function argument to be an exact small integer.
    fn int_arg(&self, name: &str, v: &Real) -> Result<i64> {
        let f = v.to_f64();
        let m = f.round();
        if !f.is_finite() || (f - m).abs() > 1e-9 || m.abs() > 1e15 {
            return Err(bad(
                self.src,
                format!("argument of {name}() must be a small integer, got {f}"),
            ));
        }
        Ok(m as i64)
    }

    fn apply(&self, name: &str, m: i64) -> Result<Real> {
        match name {
            "zeta" => {
                let v = zeta_int(m, self.cx)?;
                Ok(self.cx.round_real(&v))
            }
            "log" => {
                if m <= 0 {
                    return Err(bad(self.src, "log() needs a positive integer"));
                }
                Ok(self.cx.from_i64(m).ln(self.cx))
            }
            "fib" => Ok(self.cx.from_bigint(&seqcore::fib(m))),
            "lucas" => Ok(self.cx.from_bigint(&seqcore::lucas(m))),
            other => Err(bad(self.src, format!("unknown function `{other}`"))),
        }
    }

    fn constant(&self, name: &str) -> Result<Real> {
        let g = golden_raw(self.cx);
        match name {
            "pi" => Ok(self.cx.pi()),
            "loga" => Ok(g.log_alpha),
            "alpha" => Ok(g.alpha),
            "beta" => Ok(g.beta),
            "sqrt5" => Ok(g.sqrt5),
            "log2" => Ok(self.cx.ln2()),
            other => Err(bad(self.src, format!("unknown constant `{other}`"))),
        }
    }
}

/// Evaluates a constant expression at the context's working precision,
/// rounding the result to its nominal precision.
pub fn eval_constant(src: &str, cx: &Ctx) -> Result<Real> {
    let tokens = tokenize(src)?;
    if tokens.is_empty() {
        return Err(bad(src, "empty expression"));
    }
    let mut parser = Parser {
        src,
        tokens,
        pos: 0,
        cx,
    };
    let v = parser.expr()?;
    if parser.pos != parser.tokens.len() {
        return Err(bad(
            src,
            format!("trailing input at token {}", parser.pos),
        ));
    }
    Ok(cx.round_real(&v))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: &Real, b: &Real, cx: &Ctx, bits: i32) {
        let d = a.sub(b, cx).abs();
        let scale = b.abs().add(&cx.one(), cx);
        assert!(
            d.le(&scale.mul_pow2(-bits)),
            "difference {:?} too large",
            d.to_f64()
        );
    }

    #[test]
    fn arithmetic_and_precedence() {
        let cx = Ctx::new(128).unwrap();
        let v = eval_constant("2 + 3 * 4^2", &cx).unwrap();
        close(&v, &cx.from_i64(50), &cx, 100);
        let v = eval_constant("-2^2", &cx).unwrap();
        close(&v, &cx.from_i64(-4), &cx, 100);
        let v = eval_constant("(1+2)*(3-5)", &cx).unwrap();
        close(&v, &cx.from_i64(-6), &cx, 100);
        let v = eval_constant("3^-2", &cx).unwrap();
        let third = cx.from_i64(1).div(&cx.from_i64(9), &cx);
        close(&v, &third, &cx, 100);
    }

    #[test]
    fn named_values() {
        let cx = Ctx::new(192).unwrap();
        let v = eval_constant("sqrt5^2", &cx).unwrap();
        close(&v, &cx.from_i64(5), &cx, 160);
        // alpha * beta = -1 and alpha + beta = 1
        let v = eval_constant("alpha*beta", &cx).unwrap();
        close(&v, &cx.from_i64(-1), &cx, 160);
        let v = eval_constant("alpha+beta", &cx).unwrap();
        close(&v, &cx.one(), &cx, 160);
        // pi^2/6 = zeta(2)
        let lhs = eval_constant("pi^2/6", &cx).unwrap();
        let rhs = eval_constant("zeta(2)", &cx).unwrap();
        close(&lhs, &rhs, &cx, 160);
        // log(2) agrees with the context constant
        let lhs = eval_constant("log(2)", &cx).unwrap();
        close(&lhs, &cx.ln2(), &cx, 160);
        // loga = log((1+sqrt5)/2)
        let frozen = cx
            .parse("0.4812118250596034474977589134243684231351843343856605")
            .unwrap();
        let v = eval_constant("loga", &cx).unwrap();
        close(&v, &frozen, &cx, 160);
    }

    #[test]
    fn sequence_functions() {
        let cx = Ctx::new(96).unwrap();
        let v = eval_constant("fib(10)", &cx).unwrap();
        close(&v, &cx.from_i64(55), &cx, 64);
        let v = eval_constant("lucas(-3)", &cx).unwrap();
        close(&v, &cx.from_i64(-4), &cx, 64);
        let v = eval_constant("fib(2*5)", &cx).unwrap();
        close(&v, &cx.from_i64(55), &cx, 64);
    }

    #[test]
    fn natural_log_of_subexpressions() {
        let cx = Ctx::new(128).unwrap();
        let v = eval_constant("ln(alpha^2)", &cx).unwrap();
        let rhs = eval_constant("2*loga", &cx).unwrap();
        close(&v, &rhs, &cx, 120);
        // ln(alpha/3) ln(-beta/3) = (loga - log 3)(-loga - log 3)
        let v = eval_constant("ln(alpha/3) * ln((0-beta)/3)", &cx).unwrap();
        let rhs = eval_constant("log(3)^2 - loga^2", &cx).unwrap();
        close(&v, &rhs, &cx, 118);
        assert!(eval_constant("ln(0)", &cx).is_err());
        assert!(eval_constant("ln(beta)", &cx).is_err());
    }

    #[test]
    fn rejects_malformed_input() {
        let cx = Ctx::new(96).unwrap();
        assert!(eval_constant("", &cx).is_err());
        assert!(eval_constant("1 +", &cx).is_err());
        assert!(eval_constant("wible", &cx).is_err());
        assert!(eval_constant("zeta(1)", &cx).is_err());
        assert!(eval_constant("log(0)", &cx).is_err());
        assert!(eval_constant("1/0", &cx).is_err());
        assert!(eval_constant("2 2", &cx).is_err());
        assert!(eval_constant("fib(1/2)", &cx).is_err());
    }
}
