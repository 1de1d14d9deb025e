//! Salamon notation: `(0,0,12,13,14,34+52)` lists `de^i` as sums of pairs `ab = e^a∧e^b`.
//!
//! ```text
//! algebra  := term ("," term)*
//! term     := "0" | signed
//! signed   := ["-"|"+"] product (("+"|"-") product)*
//! product  := [scalar "*"] digit digit
//! scalar   := rational ["r2"] | "r2"
//! rational := int ["/" int]
//! ```
//! Whitespace and one pair of surrounding parentheses are ignored.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::exterior::{split_top_level, KForm, Scalar, MAX_DIM};

use super::NotationError;

/// Parses the differentials `de^1, …, de^n`.
pub fn parse_differentials(input: &str) -> Result<Vec<KForm>, NotationError> {
    let (body, offset) = strip_parens(input)?;
    let pieces = split_top_level(body);
    let n = pieces.len();
    if n < 2 {
        return Err(NotationError::TooSmall { dim: n });
    }
    if n > MAX_DIM {
        return Err(NotationError::TooLarge { dim: n });
    }
    let mut out = Vec::with_capacity(n);
    let mut pos = offset;
    for piece in pieces {
        let mut p = TermParser { src: piece.as_bytes(), pos: 0, base: pos, n };
        out.push(p.term()?);
        pos += piece.len() + 1;
    }
    Ok(out)
}

fn strip_parens(input: &str) -> Result<(&str, usize), NotationError> {
    let lead = input.len() - input.trim_start().len();
    let t = input.trim();
    match (t.starts_with('('), t.ends_with(')')) {
        (true, true) => Ok((&t[1..t.len() - 1], lead + 1)),
        (false, false) => Ok((t, lead)),
        (true, false) => Err(NotationError::Syntax { position: lead + t.len(), message: "missing ')'".into() }),
        (false, true) => Err(NotationError::Syntax { position: lead, message: "unbalanced ')'".into() }),
    }
}

struct TermParser<'a> {
    src: &'a [u8],
    pos: usize,
    base: usize,
    n: usize,
}

impl TermParser<'_> {
    fn at(&self) -> usize {
        self.base + self.pos
    }

    fn syntax(&self, message: &str) -> NotationError {
        NotationError::Syntax { position: self.at(), message: message.to_string() }
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

    fn term(&mut self) -> Result<KForm, NotationError> {
        let mut acc = KForm::zero(self.n, 2);
        let mut sign = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -1
            }
            Some(b'+') => {
                self.pos += 1;
                1
            }
            Some(_) => 1,
            None => return Err(self.syntax("empty entry")),
        };
        // a lone "0"
        let save = self.pos;
        if self.peek() == Some(b'0') {
            self.pos += 1;
            if self.peek().is_none() {
                return Ok(acc);
            }
            self.pos = save;
        }
        loop {
            let p = self.product()?;
            acc = &acc + &(if sign < 0 { -&p } else { p });
            sign = match self.peek() {
                Some(b'+') => 1,
                Some(b'-') => -1,
                None => return Ok(acc),
                Some(_) => return Err(self.syntax("expected '+', '-' or ','")),
            };
            self.pos += 1;
        }
    }

    fn int(&mut self) -> Option<BigInt> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (start != self.pos).then(|| {
            std::str::from_utf8(&self.src[start..self.pos])
                .expect("ascii")
                .parse()
                .expect("digits")
        })
    }

    fn eat_r2(&mut self) -> bool {
        if self.src[self.pos..].starts_with(b"r2") {
            self.pos += 2;
            true
        } else {
            false
        }
    }

    fn product(&mut self) -> Result<KForm, NotationError> {
        self.skip_ws();
        let start = self.pos;
        let mut coeff = Scalar::one();
        // an explicit coefficient is followed by '*'
        if let Some(star) = self.src[self.pos..].iter().position(|&c| c == b'*') {
            let lit = &self.src[self.pos..self.pos + star];
            if !lit.contains(&b'+') && !lit.contains(&b'-') {
                coeff = self.scalar()?;
                self.skip_ws();
                if self.src.get(self.pos) != Some(&b'*') {
                    return Err(self.syntax("expected '*' after coefficient"));
                }
                self.pos += 1;
                self.skip_ws();
            }
        }
        let pair_at = self.pos;
        let digits: Vec<u8> = self.src[self.pos..]
            .iter()
            .take_while(|c| c.is_ascii_digit())
            .copied()
            .collect();
        if digits.len() != 2 {
            self.pos = if digits.is_empty() { pair_at.max(start) } else { pair_at };
            return Err(self.syntax("expected a pair of digits"));
        }
        let (a, b) = ((digits[0] - b'0') as usize, (digits[1] - b'0') as usize);
        for (k, d) in [a, b].into_iter().enumerate() {
            if d == 0 || d > self.n {
                return Err(NotationError::DigitOutOfRange { position: self.at() + k, digit: d, dim: self.n });
            }
        }
        if a == b {
            return Err(NotationError::RepeatedDigit { position: self.at(), digit: a });
        }
        self.pos += 2;
        let pair = KForm::monomial(self.n, &[a, b]).expect("digits are in range");
        Ok(pair.scale(&coeff))
    }

    fn scalar(&mut self) -> Result<Scalar, NotationError> {
        if self.eat_r2() {
            return Ok(Scalar::sqrt2());
        }
        let num = self.int().ok_or_else(|| self.syntax("expected a coefficient"))?;
        let q = if self.src.get(self.pos) == Some(&b'/') {
            self.pos += 1;
            let den = self.int().ok_or_else(|| self.syntax("expected a denominator"))?;
            if den.is_zero() {
                return Err(self.syntax("zero denominator"));
            }
            BigRational::new(num, den)
        } else {
            BigRational::from_integer(num)
        };
        let s = Scalar::from(q);
        Ok(if self.eat_r2() { &s * &Scalar::sqrt2() } else { s })
    }
}

/// Notation for one differential; mixed coefficients `a + b√2` are split into two products.
pub fn format_differential(f: &KForm) -> String {
    if f.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (set, c) in f.terms() {
        let pair: String = set.indices().map(|i| i.to_string()).collect();
        for (part, surd) in [(c.rational_part(), false), (c.surd_part(), true)] {
            if part.is_zero() {
                continue;
            }
            let neg = part.is_negative();
            if neg {
                out.push('-');
            } else if !out.is_empty() {
                out.push('+');
            }
            let mag = part.abs();
            match (mag.is_one(), surd) {
                (true, false) => {}
                (true, true) => out.push_str("r2*"),
                (false, false) => out.push_str(&format!("{}*", mag)),
                (false, true) => out.push_str(&format!("{}r2*", mag)),
            }
            out.push_str(&pair);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::e;

    #[test]
    fn pairs_in_either_order() {
        let d = parse_differentials("0,0,12,13,14,34+52").unwrap();
        assert_eq!(d[5], &e(6, "34") - &e(6, "25"));
    }

    #[test]
    fn spacing_and_signs() {
        let d = parse_differentials("0, 0, 12, 13, 23, 14 - 25").unwrap();
        assert_eq!(d[5], &e(6, "14") - &e(6, "25"));
        let d = parse_differentials("(0,0,0,0,13 + 42, -14+23)").unwrap();
        assert_eq!(d[4], &e(6, "13") - &e(6, "24"));
        assert_eq!(d[5], &e(6, "23") - &e(6, "14"));
    }

    #[test]
    fn coefficients() {
        let d = parse_differentials("0,0,1/2*12,2r2*12-r2*12").unwrap();
        assert_eq!(d[2], e(4, "12").scale(&Scalar::from_ratio(1, 2)));
        assert_eq!(d[3], e(4, "12").scale(&Scalar::sqrt2()));
        assert_eq!(format_differential(&d[2]), "1/2*12");
        assert_eq!(format_differential(&d[3]), "r2*12");
        let mixed = e(4, "12").scale(&(Scalar::one() - Scalar::sqrt2()));
        assert_eq!(format_differential(&mixed), "12-r2*12");
    }

    #[test]
    fn errors() {
        assert!(matches!(
            parse_differentials("0,0,17,0,0,0"),
            Err(NotationError::DigitOutOfRange { digit: 7, position: 5, .. })
        ));
        assert!(matches!(parse_differentials("0,0,11"), Err(NotationError::RepeatedDigit { digit: 1, .. })));
        assert!(matches!(parse_differentials("0,0,123"), Err(NotationError::Syntax { .. })));
        assert!(matches!(parse_differentials("0,0,12+"), Err(NotationError::Syntax { .. })));
        assert!(matches!(parse_differentials("0,,12"), Err(NotationError::Syntax { .. })));
        assert!(matches!(parse_differentials("(0,0"), Err(NotationError::Syntax { .. })));
        assert!(matches!(parse_differentials("0"), Err(NotationError::TooSmall { dim: 1 })));
    }
}
