use super::ast::Pos;
use super::QrmlError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Int(i64),
    LParen,
    RParen,
    LBrace,
    RBrace,
    Comma,
    Colon,
    Semi,
    Dot,
    Eq,
    Le,
    Ge,
    Plus,
    Minus,
    Arrow,
    Eof,
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Int(i) => format!("`{i}`"),
            Tok::Eof => "end of input".into(),
            t => format!("`{}`", t.symbol()),
        }
    }

    pub fn symbol(&self) -> &'static str {
        match self {
            Tok::LParen => "(",
            Tok::RParen => ")",
            Tok::LBrace => "{",
            Tok::RBrace => "}",
            Tok::Comma => ",",
            Tok::Colon => ":",
            Tok::Semi => ";",
            Tok::Dot => ".",
            Tok::Eq => "=",
            Tok::Le => "<=",
            Tok::Ge => ">=",
            Tok::Plus => "+",
            Tok::Minus => "-",
            Tok::Arrow => "=>",
            Tok::Ident(_) => "identifier",
            Tok::Int(_) => "integer",
            Tok::Eof => "end of input",
        }
    }
}

pub fn lex(src: &str) -> Result<Vec<(Tok, Pos)>, QrmlError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    let advance = |i: &mut usize, line: &mut usize, col: &mut usize, n: usize| {
        for _ in 0..n {
            if chars[*i] == '\n' {
                *line += 1;
                *col = 1;
            } else {
                *col += 1;
            }
            *i += 1;
        }
    };
    while i < chars.len() {
        let c = chars[i];
        let pos = Pos { line, col };
        if c.is_whitespace() {
            advance(&mut i, &mut line, &mut col, 1);
            continue;
        }
        if c == '/' && chars.get(i + 1) == Some(&'/') {
            while i < chars.len() && chars[i] != '\n' {
                advance(&mut i, &mut line, &mut col, 1);
            }
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            let mut end = i;
            while end < chars.len() && (chars[end].is_ascii_alphanumeric() || chars[end] == '_') {
                end += 1;
            }
            let mut word: String = chars[start..end].iter().collect();
            if word == "element" && chars[end..].starts_with(&['-', 'w', 'i', 's', 'e']) {
                let after = chars.get(end + 5);
                if !after.is_some_and(|c| c.is_ascii_alphanumeric() || *c == '_') {
                    end += 5;
                    word = "element-wise".into();
                }
            }
            advance(&mut i, &mut line, &mut col, end - start);
            out.push((Tok::Ident(word), pos));
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            let mut end = i;
            while end < chars.len() && chars[end].is_ascii_digit() {
                end += 1;
            }
            let text: String = chars[start..end].iter().collect();
            let n = text.parse::<i64>().map_err(|_| QrmlError::Syntax {
                pos,
                expected: vec!["an integer that fits in 64 bits".into()],
                found: text.clone(),
            })?;
            advance(&mut i, &mut line, &mut col, end - start);
            out.push((Tok::Int(n), pos));
            continue;
        }
        let two: String = chars[i..chars.len().min(i + 2)].iter().collect();
        let (tok, len) = match (two.as_str(), c) {
            ("<=", _) => (Tok::Le, 2),
            (">=", _) => (Tok::Ge, 2),
            ("=>", _) => (Tok::Arrow, 2),
            (_, '(') => (Tok::LParen, 1),
            (_, ')') => (Tok::RParen, 1),
            (_, '{') => (Tok::LBrace, 1),
            (_, '}') => (Tok::RBrace, 1),
            (_, ',') => (Tok::Comma, 1),
            (_, ':') => (Tok::Colon, 1),
            (_, ';') => (Tok::Semi, 1),
            (_, '.') => (Tok::Dot, 1),
            (_, '=') => (Tok::Eq, 1),
            (_, '+') => (Tok::Plus, 1),
            (_, '-') => (Tok::Minus, 1),
            _ => {
                return Err(QrmlError::Syntax {
                    pos,
                    expected: vec!["a token".into()],
                    found: format!("`{c}`"),
                })
            }
        };
        advance(&mut i, &mut line, &mut col, len);
        out.push((tok, pos));
    }
    out.push((Tok::Eof, Pos { line, col }));
    Ok(out)
}
