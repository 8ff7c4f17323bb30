//! Recursive descent over
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := '-' term | product
//! product := factor ('*' factor)*
//! factor  := atom "'"*
//! atom    := number | ident | '(' expr ')' | 'frac' '(' expr ';' expr (',' expr)* ')'
//! ```

use std::fmt;

use super::ast::Expr;
use super::lexer::{tokenize, Spanned, Tok};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SyntaxError {
    pub line: usize,
    pub column: usize,
    pub expected: Vec<String>,
    pub found: String,
}

impl fmt::Display for SyntaxError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: expected {}, found {}", self.line, self.column, self.expected.join(" or "), self.found)
    }
}

impl std::error::Error for SyntaxError {}

pub fn parse(text: &str) -> Result<Expr, SyntaxError> {
    let tokens = tokenize(text)?;
    let mut p = Parser { tokens, pos: 0 };
    let e = p.expr()?;
    p.expect(Tok::End, &["'+'", "'-'", "'*'", "'''", "end of input"])?;
    Ok(e)
}

struct Parser {
    tokens: Vec<Spanned>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.tokens[self.pos].tok
    }

    fn bump(&mut self) -> Tok {
        let t = self.tokens[self.pos].tok.clone();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &[&str]) -> SyntaxError {
        let s = &self.tokens[self.pos];
        SyntaxError {
            line: s.line,
            column: s.column,
            expected: expected.iter().map(|e| e.to_string()).collect(),
            found: s.tok.describe(),
        }
    }

    fn expect(&mut self, tok: Tok, expected: &[&str]) -> Result<(), SyntaxError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.error(expected))
        }
    }

    fn expr(&mut self) -> Result<Expr, SyntaxError> {
        let first = self.term()?;
        let mut items = vec![first];
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    items.push(self.term()?);
                }
                Tok::Minus => {
                    self.bump();
                    items.push(Expr::Neg(Box::new(self.term()?)));
                }
                _ => break,
            }
        }
        Ok(if items.len() == 1 { items.pop().expect("one item") } else { Expr::Sum(items) })
    }

    fn term(&mut self) -> Result<Expr, SyntaxError> {
        if *self.peek() == Tok::Minus {
            self.bump();
            return Ok(Expr::Neg(Box::new(self.term()?)));
        }
        self.product()
    }

    fn product(&mut self) -> Result<Expr, SyntaxError> {
        let mut items = vec![self.factor()?];
        while *self.peek() == Tok::Star {
            self.bump();
            items.push(self.factor()?);
        }
        if items.len() == 1 {
            return Ok(items.pop().expect("one item"));
        }
        if let Expr::Scalar(lit) = &items[0] {
            let lit = lit.clone();
            let rest = if items.len() == 2 { items.pop().expect("two items") } else { Expr::Prod(items.split_off(1)) };
            return Ok(Expr::Scale(lit, Box::new(rest)));
        }
        Ok(Expr::Prod(items))
    }

    fn factor(&mut self) -> Result<Expr, SyntaxError> {
        let mut e = self.atom()?;
        while *self.peek() == Tok::Quote {
            self.bump();
            e = Expr::Dagger(Box::new(e));
        }
        Ok(e)
    }

    fn atom(&mut self) -> Result<Expr, SyntaxError> {
        const ATOM: [&str; 4] = ["number", "identifier", "'('", "'frac'"];
        match self.peek().clone() {
            Tok::Number(l) => {
                self.bump();
                Ok(Expr::Scalar(l))
            }
            Tok::Ident(name) => {
                self.bump();
                Ok(Expr::Gen(name))
            }
            Tok::LParen => {
                self.bump();
                let e = self.expr()?;
                self.expect(Tok::RParen, &["')'", "'+'", "'-'", "'*'", "'''"])?;
                Ok(Expr::Paren(Box::new(e)))
            }
            Tok::Frac => {
                self.bump();
                self.expect(Tok::LParen, &["'('"])?;
                let num = self.expr()?;
                self.expect(Tok::Semi, &["';'", "'+'", "'-'", "'*'", "'''"])?;
                let mut den = vec![self.expr()?];
                while *self.peek() == Tok::Comma {
                    self.bump();
                    den.push(self.expr()?);
                }
                self.expect(Tok::RParen, &["')'", "','", "'+'", "'-'", "'*'", "'''"])?;
                Ok(Expr::Frac(Box::new(num), den))
            }
            _ => Err(self.error(&ATOM)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn positions_are_one_based() {
        let e = parse("x +\n  * y").unwrap_err();
        assert_eq!((e.line, e.column), (2, 3));
        assert!(e.expected.contains(&"identifier".to_string()));
    }
}
