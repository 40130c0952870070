use super::{ParseError, SourceSpan};

#[derive(Debug, Clone, PartialEq)]
pub(crate) enum Tok {
    Word(String),
    LBrace,
    RBrace,
    LParen,
    RParen,
    Comma,
    Semi,
    Colon,
    At,
    AtAt,
    Arrow,
    Eof,
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Word(w) => format!("`{w}`"),
            Tok::LBrace => "`{`".into(),
            Tok::RBrace => "`}`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Semi => "`;`".into(),
            Tok::Colon => "`:`".into(),
            Tok::At => "`@`".into(),
            Tok::AtAt => "`@@`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

fn is_word_char(c: char) -> bool {
    c.is_alphanumeric() || matches!(c, '_' | '.' | '\'' | '-' | '+')
}

/// Splits `text` into tokens. `#` starts a comment running to end of line.
pub(crate) fn tokenize(text: &str) -> Result<Vec<(Tok, SourceSpan)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);

    while i < chars.len() {
        let c = chars[i];
        let span = |len: usize| SourceSpan {
            line,
            column: col,
            length: len,
        };
        let punct = match c {
            '{' => Some(Tok::LBrace),
            '}' => Some(Tok::RBrace),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            ',' => Some(Tok::Comma),
            ';' => Some(Tok::Semi),
            ':' => Some(Tok::Colon),
            _ => None,
        };
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
        } else if c.is_whitespace() {
            i += 1;
            col += 1;
        } else if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
        } else if let Some(tok) = punct {
            out.push((tok, span(1)));
            i += 1;
            col += 1;
        } else if c == '@' {
            if chars.get(i + 1) == Some(&'@') {
                out.push((Tok::AtAt, span(2)));
                i += 2;
                col += 2;
            } else {
                out.push((Tok::At, span(1)));
                i += 1;
                col += 1;
            }
        } else if c == '-' && chars.get(i + 1) == Some(&'>') {
            out.push((Tok::Arrow, span(2)));
            i += 2;
            col += 2;
        } else if is_word_char(c) {
            let start = i;
            while i < chars.len()
                && is_word_char(chars[i])
                && !(chars[i] == '-' && chars.get(i + 1) == Some(&'>'))
            {
                i += 1;
            }
            let word: String = chars[start..i].iter().collect();
            out.push((Tok::Word(word), span(i - start)));
            col += i - start;
        } else {
            return Err(ParseError::new(
                span(1),
                "a symbol or punctuation",
                format!("`{c}`"),
            ));
        }
    }
    out.push((
        Tok::Eof,
        SourceSpan {
            line,
            column: col,
            length: 0,
        },
    ));
    Ok(out)
}
