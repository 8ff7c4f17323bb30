use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::ast::Literal;
use super::parser::SyntaxError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Tok {
    Number(Literal),
    Ident(String),
    Frac,
    Plus,
    Minus,
    Star,
    Quote,
    LParen,
    RParen,
    Semi,
    Comma,
    End,
}

impl Tok {
    pub(crate) fn describe(&self) -> String {
        match self {
            Tok::Number(l) => format!("number {l}"),
            Tok::Ident(s) => format!("identifier {s}"),
            Tok::Frac => "'frac'".into(),
            Tok::Plus => "'+'".into(),
            Tok::Minus => "'-'".into(),
            Tok::Star => "'*'".into(),
            Tok::Quote => "'''".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::Semi => "';'".into(),
            Tok::Comma => "','".into(),
            Tok::End => "end of input".into(),
        }
    }
}

/// A token and its 1-based line and column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Spanned {
    pub tok: Tok,
    pub line: usize,
    pub column: usize,
}

pub(crate) fn tokenize(text: &str) -> Result<Vec<Spanned>, SyntaxError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut column) = (0, 1, 1);
    let err = |line, column, expected: &[&str], found: String| SyntaxError {
        line,
        column,
        expected: expected.iter().map(|s| s.to_string()).collect(),
        found,
    };
    while i < chars.len() {
        let c = chars[i];
        if c == '\n' {
            i += 1;
            line += 1;
            column = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            column += 1;
            continue;
        }
        let start = (line, column);
        let single = match c {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '\'' => Some(Tok::Quote),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            ';' => Some(Tok::Semi),
            ',' => Some(Tok::Comma),
            _ => None,
        };
        if let Some(tok) = single {
            out.push(Spanned { tok, line: start.0, column: start.1 });
            i += 1;
            column += 1;
            continue;
        }
        let begin = i;
        if c.is_ascii_digit() {
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let num: BigInt = chars[begin..i].iter().collect::<String>().parse().expect("digits");
            let mut den = BigInt::from(1);
            if i < chars.len() && chars[i] == '/' {
                let d0 = i + 1;
                let mut j = d0;
                while j < chars.len() && chars[j].is_ascii_digit() {
                    j += 1;
                }
                if j == d0 {
                    let found = chars.get(j).map_or("end of input".to_string(), |c| format!("{c:?}"));
                    return Err(err(line, column + (j - begin), &["digit"], found));
                }
                den = chars[d0..j].iter().collect::<String>().parse().expect("digits");
                if den.is_zero() {
                    return Err(err(line, column + (d0 - begin), &["nonzero denominator"], "0".into()));
                }
                i = j;
            }
            let mut imaginary = false;
            if i < chars.len() && chars[i] == 'i' && !chars.get(i + 1).is_some_and(|c| c.is_ascii_alphanumeric() || *c == '_') {
                imaginary = true;
                i += 1;
            }
            let lit = Literal { value: BigRational::new(num, den), imaginary };
            out.push(Spanned { tok: Tok::Number(lit), line: start.0, column: start.1 });
            column += i - begin;
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            let word: String = chars[begin..i].iter().collect();
            let tok = if word == "frac" { Tok::Frac } else { Tok::Ident(word) };
            out.push(Spanned { tok, line: start.0, column: start.1 });
            column += i - begin;
            continue;
        }
        return Err(err(line, column, &["expression"], format!("{c:?}")));
    }
    out.push(Spanned { tok: Tok::End, line, column });
    Ok(out)
}
