//! Expression grammar for custom generator spectra.
//!
//! Grammar (complex-valued, variable `w`):
//!
//! ```text
//! expr    := term { ('+' | '-') term }
//! term    := unary { ('*' | '/') unary }
//! unary   := '-' unary | power
//! power   := atom [ '^' ['-'] integer ]
//! atom    := number | 'pi' | 'i' | 'w'
//!          | ('sin' | 'cos' | 'exp') '(' expr ')'
//!          | '(' expr ')'
//! ```
//!
//! After parsing, quotients of the shape `sin(E)/E` (and `sin(E)^n / E^n`)
//! are folded into a dedicated cardinal-sine node so the removable
//! singularity at `E = 0` evaluates cleanly.

use alloc::boxed::Box;
use alloc::string::ToString;
use core::f64::consts::PI;

use crate::error::Error;
use crate::util::sinc;
use crate::Complex;

#[derive(Debug, Clone, PartialEq)]
pub(crate) enum Expr {
    Const(Complex),
    Var,
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Pow(Box<Expr>, i32),
    Sin(Box<Expr>),
    Cos(Box<Expr>),
    Exp(Box<Expr>),
    /// `sin(E)/E`, produced by folding; never parsed directly.
    Sinc(Box<Expr>),
}

impl Expr {
    pub(crate) fn eval(&self, w: f64) -> Complex {
        match self {
            Expr::Const(c) => *c,
            Expr::Var => Complex::new(w, 0.0),
            Expr::Add(a, b) => a.eval(w) + b.eval(w),
            Expr::Sub(a, b) => a.eval(w) - b.eval(w),
            Expr::Mul(a, b) => a.eval(w) * b.eval(w),
            Expr::Div(a, b) => {
                let num = a.eval(w);
                let den = b.eval(w);
                if den.norm_sqr() == 0.0 {
                    Complex::new(f64::NAN, f64::NAN)
                } else {
                    num / den
                }
            }
            Expr::Neg(a) => -a.eval(w),
            Expr::Pow(a, n) => a.eval(w).powi(*n),
            Expr::Sin(a) => a.eval(w).sin(),
            Expr::Cos(a) => a.eval(w).cos(),
            Expr::Exp(a) => a.eval(w).exp(),
            Expr::Sinc(a) => {
                let u = a.eval(w);
                if u.im == 0.0 {
                    Complex::new(sinc(u.re), 0.0)
                } else if u.norm_sqr() == 0.0 {
                    Complex::new(1.0, 0.0)
                } else {
                    u.sin() / u
                }
            }
        }
    }

    /// Rewrite `sin(E)/E` into `Sinc(E)`, recursing into subtrees.
    fn fold_sinc(self) -> Expr {
        match self {
            Expr::Div(num, den) => {
                let num = num.fold_sinc();
                let den = den.fold_sinc();
                match (num, den) {
                    (Expr::Sin(a), d) if *a == d => Expr::Sinc(a),
                    (Expr::Pow(p, n), Expr::Pow(q, m)) if n == m => {
                        if let Expr::Sin(a) = *p {
                            if *a == *q {
                                Expr::Pow(Box::new(Expr::Sinc(a)), n)
                            } else {
                                Expr::Div(
                                    Box::new(Expr::Pow(Box::new(Expr::Sin(a)), n)),
                                    Box::new(Expr::Pow(q, m)),
                                )
                            }
                        } else {
                            Expr::Div(Box::new(Expr::Pow(p, n)), Box::new(Expr::Pow(q, m)))
                        }
                    }
                    (n, d) => Expr::Div(Box::new(n), Box::new(d)),
                }
            }
            Expr::Add(a, b) => Expr::Add(Box::new(a.fold_sinc()), Box::new(b.fold_sinc())),
            Expr::Sub(a, b) => Expr::Sub(Box::new(a.fold_sinc()), Box::new(b.fold_sinc())),
            Expr::Mul(a, b) => Expr::Mul(Box::new(a.fold_sinc()), Box::new(b.fold_sinc())),
            Expr::Neg(a) => Expr::Neg(Box::new(a.fold_sinc())),
            Expr::Pow(a, n) => Expr::Pow(Box::new(a.fold_sinc()), n),
            Expr::Sin(a) => Expr::Sin(Box::new(a.fold_sinc())),
            Expr::Cos(a) => Expr::Cos(Box::new(a.fold_sinc())),
            Expr::Exp(a) => Expr::Exp(Box::new(a.fold_sinc())),
            other => other,
        }
    }
}

pub(crate) fn parse(src: &str) -> Result<Expr, Error> {
    let mut parser = Parser { src, pos: 0 };
    let expr = parser.expr()?;
    parser.skip_ws();
    if parser.pos != src.len() {
        return Err(parser.error("unexpected trailing input"));
    }
    Ok(expr.fold_sinc())
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn error(&self, message: &str) -> Error {
        Error::SpecSyntax {
            position: self.pos,
            message: message.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), Error> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&alloc::format!("expected `{c}`")))
        }
    }

    fn expr(&mut self) -> Result<Expr, Error> {
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

    fn term(&mut self) -> Result<Expr, Error> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat('*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat('/') {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr, Error> {
        if self.eat('-') {
            Ok(Expr::Neg(Box::new(self.unary()?)))
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<Expr, Error> {
        let base = self.atom()?;
        if self.eat('^') {
            let negative = self.eat('-');
            self.skip_ws();
            let start = self.pos;
            while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                self.pos += 1;
            }
            if start == self.pos {
                return Err(self.error("expected integer exponent"));
            }
            let digits = &self.src[start..self.pos];
            let mut n: i32 = digits
                .parse()
                .map_err(|_| self.error("exponent out of range"))?;
            if negative {
                n = -n;
            }
            Ok(Expr::Pow(Box::new(base), n))
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Expr, Error> {
        self.skip_ws();
        let Some(c) = self.peek() else {
            return Err(self.error("unexpected end of expression"));
        };
        if c == '(' {
            self.pos += 1;
            let inner = self.expr()?;
            self.expect(')')?;
            return Ok(inner);
        }
        if c.is_ascii_digit() || c == '.' {
            return self.number();
        }
        if c.is_ascii_alphabetic() {
            let start = self.pos;
            while self
                .peek()
                .is_some_and(|c| c.is_ascii_alphanumeric() || c == '_')
            {
                self.pos += 1;
            }
            let ident = &self.src[start..self.pos];
            return match ident {
                "w" => Ok(Expr::Var),
                "pi" => Ok(Expr::Const(Complex::new(PI, 0.0))),
                "i" => Ok(Expr::Const(Complex::new(0.0, 1.0))),
                "sin" => {
                    self.expect('(')?;
                    let a = self.expr()?;
                    self.expect(')')?;
                    Ok(Expr::Sin(Box::new(a)))
                }
                "cos" => {
                    self.expect('(')?;
                    let a = self.expr()?;
                    self.expect(')')?;
                    Ok(Expr::Cos(Box::new(a)))
                }
                "exp" => {
                    self.expect('(')?;
                    let a = self.expr()?;
                    self.expect(')')?;
                    Ok(Expr::Exp(Box::new(a)))
                }
                other => Err(Error::SpecSyntax {
                    position: start,
                    message: alloc::format!("unknown identifier `{other}`"),
                }),
            };
        }
        Err(self.error("unexpected character"))
    }

    fn number(&mut self) -> Result<Expr, Error> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit() || c == '.') {
            self.pos += 1;
        }
        if self.peek() == Some('e') || self.peek() == Some('E') {
            let mark = self.pos;
            self.pos += 1;
            if self.peek() == Some('+') || self.peek() == Some('-') {
                self.pos += 1;
            }
            if self.peek().is_some_and(|c| c.is_ascii_digit()) {
                while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                    self.pos += 1;
                }
            } else {
                self.pos = mark;
            }
        }
        let text: &str = &self.src[start..self.pos];
        let value: f64 = text.parse().map_err(|_| Error::SpecSyntax {
            position: start,
            message: "malformed number".to_string(),
        })?;
        Ok(Expr::Const(Complex::new(value, 0.0)))
    }
}

impl Error {
    /// Shift a syntax error's position by the fragment offset inside a
    /// larger config string.
    pub(crate) fn offset_by(self, offset: usize) -> Error {
        match self {
            Error::SpecSyntax { position, message } => Error::SpecSyntax {
                position: position + offset,
                message,
            },
            other => other,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::String;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn eval_str(src: &str, w: f64) -> Complex {
        parse(src).unwrap().eval(w)
    }

    #[test]
    fn precedence_and_constants() {
        assert_abs_diff_eq!(eval_str("1+2*3", 0.0).re, 7.0);
        assert_abs_diff_eq!(eval_str("(1+2)*3", 0.0).re, 9.0);
        assert_abs_diff_eq!(eval_str("2^3/4", 0.0).re, 2.0);
        assert_abs_diff_eq!(eval_str("-w^2", 2.0).re, -4.0);
        assert_abs_diff_eq!(eval_str("cos(pi)", 0.0).re, -1.0, epsilon = 1e-15);
    }

    #[test]
    fn complex_exponential() {
        let v = eval_str("exp(i*w)", PI / 2.0);
        assert_abs_diff_eq!(v.re, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(v.im, 1.0, epsilon = 1e-15);
    }

    #[test]
    fn sinc_folding_handles_zero() {
        let e = parse("sin(w/2)/(w/2)").unwrap();
        assert_abs_diff_eq!(e.eval(0.0).re, 1.0, epsilon = 1e-15);
        let e2 = parse("(sin(w/2)/(w/2))^3").unwrap();
        assert_abs_diff_eq!(e2.eval(0.0).re, 1.0, epsilon = 1e-15);
        // Powered form with matching exponents folds too.
        let e3 = parse("sin(w/2)^2/(w/2)^2").unwrap();
        assert_abs_diff_eq!(e3.eval(0.0).re, 1.0, epsilon = 1e-15);
    }

    #[test]
    fn syntax_errors_carry_position() {
        match parse("1 + ") {
            Err(Error::SpecSyntax { position, .. }) => assert!(position >= 3),
            other => panic!("expected syntax error, got {other:?}"),
        }
        assert!(parse("sin(w").is_err());
        assert!(parse("bogus(w)").is_err());
    }

    proptest! {
        // Parsed arithmetic over +, *, constants agrees with direct folding.
        #[test]
        fn sums_and_products_agree_with_reference(
            terms in prop::collection::vec((0.0f64..100.0, 1.0f64..5.0), 1..6)
        ) {
            let mut src = String::new();
            let mut expected = 0.0f64;
            for (idx, (a, b)) in terms.iter().enumerate() {
                if idx > 0 {
                    src.push('+');
                }
                src.push_str(&alloc::format!("{a}*{b}"));
                expected += a * b;
            }
            let got = eval_str(&src, 0.0).re;
            prop_assert!((got - expected).abs() <= 1e-9 * (1.0 + expected.abs()));
        }

        // The folded sinc form stays finite and matches sin(u)/u off origin.
        #[test]
        fn folded_sinc_matches_ratio(w in -50.0f64..50.0) {
            prop_assume!(w.abs() > 1e-3);
            let folded = eval_str("sin(w/2)/(w/2)", w).re;
            let direct = (w / 2.0).sin() / (w / 2.0);
            prop_assert!((folded - direct).abs() < 1e-12);
        }
    }
}
