use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::{ParseError, ParseErrorKind};

#[derive(Debug, Clone, PartialEq)]
pub enum Tok {
    Ident(String),
    /// Decimal literal; `uint` when it is plain digits.
    Number {
        value: BigRational,
        uint: bool,
    },
    Fraction(BigRational),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    Eq,
    Semi,
    Eof,
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("'{s}'"),
            Tok::Number { .. } => "number".into(),
            Tok::Fraction(_) => "fraction".into(),
            Tok::Plus => "'+'".into(),
            Tok::Minus => "'-'".into(),
            Tok::Star => "'*'".into(),
            Tok::Caret => "'^'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::Eq => "'='".into(),
            Tok::Semi => "';'".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Spanned {
    pub tok: Tok,
    pub line: usize,
    pub col: usize,
}

struct Lexer<'a> {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    col: usize,
    _src: &'a str,
}

impl Lexer<'_> {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn peek_at(&self, k: usize) -> Option<char> {
        self.chars.get(self.pos + k).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += 1;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn skip_blank(&mut self) {
        while let Some(c) = self.peek() {
            if c == '#' {
                while self.peek().is_some_and(|c| c != '\n') {
                    self.bump();
                }
            } else if c.is_whitespace() {
                self.bump();
            } else {
                break;
            }
        }
    }

    fn digits(&mut self) -> String {
        let mut s = String::new();
        while let Some(c) = self.peek().filter(|c| c.is_ascii_digit()) {
            s.push(c);
            self.bump();
        }
        s
    }

    fn error(
        &self,
        kind: ParseErrorKind,
        line: usize,
        col: usize,
        expected: &[&str],
        found: String,
    ) -> ParseError {
        ParseError {
            kind,
            line,
            col,
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found,
        }
    }

    /// Integer or decimal literal, then an optional `/ int` making it a
    /// fraction.
    fn number(&mut self, line: usize, col: usize) -> Result<Tok, ParseError> {
        let int = self.digits();
        let mut frac = String::new();
        let mut uint = true;
        if self.peek() == Some('.') {
            self.bump();
            frac = self.digits();
            uint = false;
            if int.is_empty() && frac.is_empty() {
                return Err(self.error(ParseErrorKind::Syntax, line, col, &["number"], "'.'".into()));
            }
        }
        let mut exp: i64 = 0;
        if matches!(self.peek(), Some('e' | 'E'))
            && (self.peek_at(1).is_some_and(|c| c.is_ascii_digit())
                || matches!(self.peek_at(1), Some('+' | '-'))
                    && self.peek_at(2).is_some_and(|c| c.is_ascii_digit()))
        {
            self.bump();
            let neg = match self.peek() {
                Some('-') => {
                    self.bump();
                    true
                }
                Some('+') => {
                    self.bump();
                    false
                }
                _ => false,
            };
            let (el, ec) = (self.line, self.col);
            let d = self.digits();
            exp =
                d.parse::<i64>().ok().filter(|e| *e <= 400).ok_or_else(|| {
                    self.error(ParseErrorKind::Syntax, el, ec, &["exponent <= 400"], d.clone())
                })?;
            if neg {
                exp = -exp;
            }
            uint = false;
        }
        let mantissa: BigInt = format!("{int}{frac}").parse().unwrap_or_else(|_| BigInt::zero());
        let shift = exp - frac.len() as i64;
        let ten = BigInt::from(10);
        let value = if shift >= 0 {
            BigRational::from_integer(mantissa * num_traits::pow(ten, shift as usize))
        } else {
            BigRational::new(mantissa, num_traits::pow(ten, (-shift) as usize))
        };

        // Fraction: int "/" int.
        let save = (self.pos, self.line, self.col);
        self.skip_blank();
        if self.peek() == Some('/') {
            let (sl, sc) = (self.line, self.col);
            if !uint {
                return Err(self.error(
                    ParseErrorKind::Syntax,
                    sl,
                    sc,
                    &["';'", "'+'", "'-'", "'*'"],
                    "'/'".into(),
                ));
            }
            self.bump();
            self.skip_blank();
            let (dl, dc) = (self.line, self.col);
            let den = self.digits();
            if den.is_empty() || self.peek() == Some('.') {
                let found = self.peek().map_or("end of input".into(), |c| format!("'{c}'"));
                return Err(self.error(ParseErrorKind::Syntax, dl, dc, &["uint"], found));
            }
            let den: BigInt = den.parse().unwrap();
            if den.is_zero() {
                return Err(self.error(
                    ParseErrorKind::Syntax,
                    dl,
                    dc,
                    &["nonzero denominator"],
                    "0".into(),
                ));
            }
            return Ok(Tok::Fraction(BigRational::new(value.to_integer(), den)));
        }
        (self.pos, self.line, self.col) = save;
        Ok(Tok::Number { value, uint })
    }
}

/// Splits `src` into tokens. Exponents that are not unsigned integers are
/// rejected here as non-polynomial.
pub fn tokenize(src: &str) -> Result<Vec<Spanned>, ParseError> {
    let mut lx = Lexer {
        chars: src.chars().collect(),
        pos: 0,
        line: 1,
        col: 1,
        _src: src,
    };
    let mut out: Vec<Spanned> = Vec::new();
    loop {
        lx.skip_blank();
        let (line, col) = (lx.line, lx.col);
        let Some(c) = lx.peek() else {
            out.push(Spanned {
                tok: Tok::Eof,
                line,
                col,
            });
            return Ok(out);
        };
        let after_caret = matches!(out.last(), Some(Spanned { tok: Tok::Caret, .. }));
        let tok = match c {
            '0'..='9' | '.' => {
                let t = lx.number(line, col)?;
                if after_caret {
                    match &t {
                        Tok::Fraction(_) => {
                            return Err(lx.error(
                                ParseErrorKind::NonPolynomial,
                                line,
                                col,
                                &["uint"],
                                "fraction exponent".into(),
                            ))
                        }
                        Tok::Number { uint: false, .. } => {
                            return Err(lx.error(
                                ParseErrorKind::NonPolynomial,
                                line,
                                col,
                                &["uint"],
                                "non-integer exponent".into(),
                            ))
                        }
                        _ => {}
                    }
                }
                t
            }
            'a'..='z' | 'A'..='Z' | '_' => {
                let mut s = String::new();
                while let Some(c) = lx.peek().filter(|c| c.is_ascii_alphanumeric() || *c == '_') {
                    s.push(c);
                    lx.bump();
                }
                Tok::Ident(s)
            }
            '-' if after_caret => {
                return Err(lx.error(
                    ParseErrorKind::NonPolynomial,
                    line,
                    col,
                    &["uint"],
                    "negative exponent".into(),
                ))
            }
            _ => {
                lx.bump();
                match c {
                    '+' => Tok::Plus,
                    '-' => Tok::Minus,
                    '*' => Tok::Star,
                    '^' => Tok::Caret,
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    '=' => Tok::Eq,
                    ';' => Tok::Semi,
                    _ => {
                        return Err(lx.error(
                            ParseErrorKind::Syntax,
                            line,
                            col,
                            &["x", "y", "number", "'('"],
                            format!("'{c}'"),
                        ))
                    }
                }
            }
        };
        out.push(Spanned { tok, line, col });
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn toks(s: &str) -> Vec<Tok> {
        tokenize(s).unwrap().into_iter().map(|t| t.tok).collect()
    }

    fn num(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn numbers_are_exact() {
        assert_eq!(
            toks("0.1")[0],
            Tok::Number {
                value: num(1, 10),
                uint: false
            }
        );
        assert_eq!(
            toks("25e-2")[0],
            Tok::Number {
                value: num(1, 4),
                uint: false
            }
        );
        assert_eq!(
            toks("3")[0],
            Tok::Number {
                value: num(3, 1),
                uint: true
            }
        );
        assert_eq!(toks("3 / 6")[0], Tok::Fraction(num(1, 2)));
        assert_eq!(
            toks("1.5E1")[0],
            Tok::Number {
                value: num(15, 1),
                uint: false
            }
        );
        assert!(BigRational::one() == num(2, 2));
    }

    #[test]
    fn positions_and_comments() {
        let t = tokenize("# header\n  dx = x;").unwrap();
        assert_eq!((t[0].line, t[0].col), (2, 3));
        assert_eq!((t[2].line, t[2].col), (2, 8));
    }

    #[test]
    fn bad_exponents() {
        for (src, col) in [("x^1/2", 3), ("x^0.5", 3), ("x^-1", 3)] {
            let e = tokenize(src).unwrap_err();
            assert_eq!(e.kind, ParseErrorKind::NonPolynomial, "{src}");
            assert_eq!(e.col, col);
        }
        assert_eq!(tokenize("1/0").unwrap_err().kind, ParseErrorKind::Syntax);
        assert_eq!(tokenize("x $ y").unwrap_err().col, 3);
    }
}
