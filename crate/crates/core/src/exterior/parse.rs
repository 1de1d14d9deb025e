//! Parser for form expressions such as `e1-e2`, `r2*(e3-e5)`, `1/2*r2*e6`,
//! `-e^{14}+e^{23}` or `e12+e34`.
//!
//! ```text
//! expr   := ["+"|"-"] term (("+"|"-") term)*
//! term   := factor ("*" factor)*          -- "*" is the wedge product
//! factor := number ["/" number] | "r2" | basis | "(" expr ")"
//! basis  := "e" digits | "e^" digits | "e^{" digits "}"
//! ```
//! Scalars are 0-forms, so `2*e1` and `e1*e2` use the same rule.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::form::KForm;
use super::scalar::Scalar;
use super::ExteriorError;

pub fn parse_form(input: &str, n: usize) -> Result<KForm, ExteriorError> {
    let mut p = Parser { src: input.as_bytes(), pos: 0, n };
    let f = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(f)
}

/// Splits on commas that are not nested in parentheses.
pub fn split_top_level(input: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in input.char_indices() {
        match c {
            '(' | '{' => depth += 1,
            ')' | '}' => depth -= 1,
            ',' if depth == 0 => {
                out.push(&input[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&input[start..]);
    out
}

/// Comma-separated list of forms, e.g. a coframe.
pub fn parse_form_list(input: &str, n: usize) -> Result<Vec<KForm>, ExteriorError> {
    let mut offset = 0;
    let mut out = Vec::new();
    for piece in split_top_level(input) {
        let f = parse_form(piece, n).map_err(|e| match e {
            ExteriorError::Parse { position, message } => ExteriorError::Parse {
                position: position + offset,
                message,
            },
            other => other,
        })?;
        out.push(f);
        offset += piece.len() + 1;
    }
    Ok(out)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    n: usize,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> ExteriorError {
        ExteriorError::Parse { position: self.pos, message: message.to_string() }
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

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<KForm, ExteriorError> {
        let mut negate = false;
        if self.eat(b'-') {
            negate = true;
        } else {
            self.eat(b'+');
        }
        let mut acc = self.term()?;
        if negate {
            acc = -&acc;
        }
        loop {
            let start = self.pos;
            let sign = if self.eat(b'+') {
                1
            } else if self.eat(b'-') {
                -1
            } else {
                break;
            };
            let t = self.term()?;
            let t = if sign < 0 { -&t } else { t };
            acc = acc.try_add(&t).map_err(|_| ExteriorError::Parse {
                position: start,
                message: format!("cannot add forms of degree {} and {}", acc.degree(), t.degree()),
            })?;
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<KForm, ExteriorError> {
        let mut acc = self.factor()?;
        while self.eat(b'*') {
            let f = self.factor()?;
            acc = acc.wedge(&f)?;
        }
        Ok(acc)
    }

    fn number(&mut self) -> Result<BigInt, ExteriorError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a number"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(s.parse().expect("digit string parses"))
    }

    fn factor(&mut self) -> Result<KForm, ExteriorError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let f = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.error("expected ')'"));
                }
                Ok(f)
            }
            Some(b'-') => {
                self.pos += 1;
                Ok(-&self.factor()?)
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.number()?;
                let q = if self.eat(b'/') {
                    let den = self.number()?;
                    if den == BigInt::from(0) {
                        return Err(self.error("zero denominator"));
                    }
                    BigRational::new(num, den)
                } else {
                    BigRational::from_integer(num)
                };
                Ok(KForm::constant(self.n, Scalar::from(q)))
            }
            Some(b'r') => {
                if self.src.get(self.pos + 1) == Some(&b'2') {
                    self.pos += 2;
                    Ok(KForm::constant(self.n, Scalar::sqrt2()))
                } else {
                    Err(self.error("expected 'r2'"))
                }
            }
            Some(b'e') => {
                self.pos += 1;
                let braced = if self.src.get(self.pos) == Some(&b'^') {
                    self.pos += 1;
                    if self.src.get(self.pos) == Some(&b'{') {
                        self.pos += 1;
                        true
                    } else {
                        false
                    }
                } else {
                    false
                };
                let start = self.pos;
                let mut idx = Vec::new();
                while let Some(&c) = self.src.get(self.pos) {
                    if !c.is_ascii_digit() {
                        break;
                    }
                    let i = (c - b'0') as usize;
                    if i == 0 || i > self.n {
                        return Err(self.error(&format!("index {} out of range 1..={}", i, self.n)));
                    }
                    if idx.contains(&i) {
                        return Err(self.error(&format!("repeated index {}", i)));
                    }
                    idx.push(i);
                    self.pos += 1;
                }
                if start == self.pos {
                    return Err(self.error("expected generator digits after 'e'"));
                }
                if braced && !self.eat(b'}') {
                    return Err(self.error("expected '}'"));
                }
                KForm::monomial(self.n, &idx)
            }
            Some(_) => Err(self.error("unexpected character")),
            None => Err(self.error("unexpected end of input")),
        }
    }
}
