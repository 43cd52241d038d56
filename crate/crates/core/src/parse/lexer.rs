use super::ParseError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    /// Decimal digits, unreduced.
    Num(String),
    /// One of t, s, x, y, z.
    Var(usize),
    /// Parameter name with separators removed: a_{6,5} becomes "a65".
    Param(String),
    Keyword(&'static str),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    LBrace,
    RBrace,
    Comma,
    Eq,
    Ne,
}

pub const VARS: [char; 5] = ['t', 's', 'x', 'y', 'z'];
const KEYWORDS: [&str; 6] = ["and", "or", "not", "in", "true", "Delta"];

#[derive(Clone, Debug)]
pub struct Token {
    pub tok: Tok,
    /// Byte offset in the source.
    pub pos: usize,
}

pub fn lex(src: &str) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<(usize, char)> = src.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        let push = |out: &mut Vec<Token>, tok| out.push(Token { tok, pos });
        match c {
            c if c.is_whitespace() => i += 1,
            '0'..='9' => {
                let mut s = String::new();
                while i < chars.len() && chars[i].1.is_ascii_digit() {
                    s.push(chars[i].1);
                    i += 1;
                }
                push(&mut out, Tok::Num(s));
            }
            '+' => {
                push(&mut out, Tok::Plus);
                i += 1;
            }
            '-' | '\u{2212}' => {
                push(&mut out, Tok::Minus);
                i += 1;
            }
            '*' | '\u{b7}' => {
                push(&mut out, Tok::Star);
                i += 1;
            }
            '/' => {
                push(&mut out, Tok::Slash);
                i += 1;
            }
            '^' => {
                push(&mut out, Tok::Caret);
                i += 1;
            }
            '(' => {
                push(&mut out, Tok::LParen);
                i += 1;
            }
            ')' => {
                push(&mut out, Tok::RParen);
                i += 1;
            }
            '{' => {
                push(&mut out, Tok::LBrace);
                i += 1;
            }
            '}' => {
                push(&mut out, Tok::RBrace);
                i += 1;
            }
            ',' => {
                push(&mut out, Tok::Comma);
                i += 1;
            }
            '=' => {
                push(&mut out, Tok::Eq);
                i += 1;
            }
            '\u{2260}' => {
                push(&mut out, Tok::Ne);
                i += 1;
            }
            '!' if chars.get(i + 1).map(|c| c.1) == Some('=') => {
                push(&mut out, Tok::Ne);
                i += 2;
            }
            c if c.is_ascii_alphabetic() => {
                let mut j = i;
                while j < chars.len() && chars[j].1.is_ascii_alphabetic() {
                    j += 1;
                }
                let word: String = chars[i..j].iter().map(|c| c.1).collect();
                if let Some(k) = KEYWORDS.iter().find(|k| **k == word) {
                    push(&mut out, Tok::Keyword(k));
                    i = j;
                } else if let Some(v) = VARS.iter().position(|&v| v == c) {
                    push(&mut out, Tok::Var(v));
                    i += 1;
                } else {
                    let (name, next) = param(&chars, i)?;
                    push(&mut out, Tok::Param(name));
                    i = next;
                }
            }
            _ => return Err(ParseError::at(pos, format!("unexpected character '{}'", c))),
        }
    }
    Ok(out)
}

/// A letter, then digits and underscores, then an optional {..} suffix of
/// digits and commas.
fn param(chars: &[(usize, char)], start: usize) -> Result<(String, usize), ParseError> {
    let mut name = String::from(chars[start].1);
    let mut i = start + 1;
    while i < chars.len() && (chars[i].1.is_ascii_digit() || chars[i].1 == '_') {
        if chars[i].1 != '_' {
            name.push(chars[i].1);
        }
        i += 1;
    }
    if chars[i - 1].1 == '_' && i < chars.len() && chars[i].1 == '{' {
        let open = chars[i].0;
        i += 1;
        while i < chars.len() && chars[i].1 != '}' {
            let c = chars[i].1;
            if c.is_ascii_digit() {
                name.push(c);
            } else if c != ',' && !c.is_whitespace() {
                return Err(ParseError::at(chars[i].0, format!("unexpected '{}' in subscript", c)));
            }
            i += 1;
        }
        if i == chars.len() {
            return Err(ParseError::at(open, "unclosed subscript".to_string()));
        }
        i += 1;
    }
    Ok((name, i))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn params_and_vars() {
        let toks: Vec<Tok> = lex("a_{6,5}t^5s").unwrap().into_iter().map(|t| t.tok).collect();
        assert_eq!(toks, vec![Tok::Param("a65".into()), Tok::Var(0), Tok::Caret, Tok::Num("5".into()), Tok::Var(1)]);
        let toks: Vec<Tok> = lex("a65 != 0 and Delta").unwrap().into_iter().map(|t| t.tok).collect();
        assert_eq!(
            toks,
            vec![Tok::Param("a65".into()), Tok::Ne, Tok::Num("0".into()), Tok::Keyword("and"), Tok::Keyword("Delta")]
        );
    }

    #[test]
    fn bad_character() {
        let e = lex("x # y").unwrap_err();
        assert_eq!(e.pos, Some(2));
    }
}
