use num_rational::BigRational;
use num_traits::ToPrimitive;

use super::lexer::{tokenize, Spanned, Tok};
use super::poly::ExactPoly;
use super::{ParseError, ParseErrorKind, SystemSpec};

/// Largest accepted exponent.
pub const MAX_EXPONENT: u32 = 64;

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Spanned {
        &self.toks[self.pos]
    }

    fn next(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn fail(&self, expected: &[&str]) -> ParseError {
        let t = self.peek();
        ParseError {
            kind: ParseErrorKind::Syntax,
            line: t.line,
            col: t.col,
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: t.tok.describe(),
        }
    }

    fn expect(&mut self, tok: Tok, name: &str) -> Result<(), ParseError> {
        if self.peek().tok == tok {
            self.next();
            Ok(())
        } else {
            Err(self.fail(&[name]))
        }
    }

    fn expect_ident(&mut self, name: &str) -> Result<(), ParseError> {
        match &self.peek().tok {
            Tok::Ident(s) if s == name => {
                self.next();
                Ok(())
            }
            _ => Err(self.fail(&[name])),
        }
    }

    /// `expr := term { ("+" | "-") term }`
    fn expr(&mut self) -> Result<ExactPoly, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek().tok {
                Tok::Plus => {
                    self.next();
                    acc = acc.add(&self.term()?);
                }
                Tok::Minus => {
                    self.next();
                    acc = acc.add(&self.term()?.neg());
                }
                _ => return Ok(acc),
            }
        }
    }

    /// `term := unary { "*" unary }`
    fn term(&mut self) -> Result<ExactPoly, ParseError> {
        let mut acc = self.unary()?;
        while self.peek().tok == Tok::Star {
            self.next();
            acc = acc.mul(&self.unary()?);
        }
        Ok(acc)
    }

    /// `unary := ("-" | "+") unary | factor`; the sign applies after the
    /// power, so `-y^3` is `-(y^3)`.
    fn unary(&mut self) -> Result<ExactPoly, ParseError> {
        match self.peek().tok {
            Tok::Minus => {
                self.next();
                Ok(self.unary()?.neg())
            }
            Tok::Plus => {
                self.next();
                self.unary()
            }
            _ => self.factor(),
        }
    }

    /// `factor := base [ "^" uint ]`
    fn factor(&mut self) -> Result<ExactPoly, ParseError> {
        let base = self.base()?;
        if self.peek().tok != Tok::Caret {
            return Ok(base);
        }
        self.next();
        let t = self.peek().clone();
        match &t.tok {
            Tok::Number { value, uint: true } => {
                let e = value
                    .to_integer()
                    .to_u32()
                    .filter(|e| *e <= MAX_EXPONENT)
                    .ok_or_else(|| ParseError {
                        kind: ParseErrorKind::Syntax,
                        line: t.line,
                        col: t.col,
                        expected: vec![format!("uint <= {MAX_EXPONENT}")],
                        found: value.to_string(),
                    })?;
                self.next();
                Ok(base.pow(e))
            }
            _ => Err(self.fail(&["uint"])),
        }
    }

    /// `base := "x" | "y" | "sx" | "sy" | number | fraction | "(" expr ")"`
    fn base(&mut self) -> Result<ExactPoly, ParseError> {
        let one = || BigRational::from_integer(1.into());
        let t = self.peek().clone();
        let p = match t.tok {
            Tok::Ident(ref s) => match s.as_str() {
                "x" => ExactPoly::term((1, 0, 0), one()),
                "y" => ExactPoly::term((0, 1, 0), one()),
                "sx" => ExactPoly::term((0, 0, 1), one()),
                "sy" => ExactPoly::term((0, 0, 2), one()),
                _ => return Err(self.fail(&["x", "y", "sx", "sy", "number", "'('"])),
            },
            Tok::Number { ref value, .. } => ExactPoly::constant(value.clone()),
            Tok::Fraction(ref value) => ExactPoly::constant(value.clone()),
            Tok::LParen => {
                self.next();
                let inner = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                return Ok(inner);
            }
            _ => return Err(self.fail(&["x", "y", "sx", "sy", "number", "'('"])),
        };
        self.next();
        Ok(p)
    }

    fn equation(&mut self, lhs: &str) -> Result<ExactPoly, ParseError> {
        self.expect_ident(lhs)?;
        self.expect(Tok::Eq, "'='")?;
        let e = self.expr()?;
        if self.peek().tok != Tok::Semi {
            return Err(self.fail(&["';'", "'+'", "'-'", "'*'", "'^'"]));
        }
        self.next();
        Ok(e)
    }
}

/// Parses `dx = expr; dy = expr;`.
pub fn parse_system(text: &str) -> Result<SystemSpec, ParseError> {
    let mut p = Parser {
        toks: tokenize(text)?,
        pos: 0,
    };
    let dx = p.equation("dx")?;
    let dy = p.equation("dy")?;
    if p.peek().tok != Tok::Eof {
        return Err(p.fail(&["end of input"]));
    }
    Ok(SystemSpec {
        source: text.to_string(),
        p: dx,
        q: dy,
    })
}
