use super::ParseError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum TokenKind {
    Ident,
    Number,
    Str,
    Char,
    Punct,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Token {
    pub kind: TokenKind,
    pub text: String,
    pub line: usize,
    pub end_line: usize,
    pub col: usize,
    pub start: usize,
    pub end: usize,
}

impl Token {
    pub fn is(&self, text: &str) -> bool {
        self.text == text
    }

    pub fn is_ident(&self) -> bool {
        self.kind == TokenKind::Ident
    }
}

// Longest first.
const PUNCTS: &[&str] = &[
    ">>>=", "<<=", ">>=", ">>>", "...", "->", "::", "++", "--", "&&", "||", "==", "!=", "<=", ">=",
    "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=", "<<", ">>", "(", ")", "{", "}", "[", "]", ";",
    ",", ".", "@", "=", "<", ">", "!", "~", "?", ":", "+", "-", "*", "/", "&", "|", "^", "%",
];

struct Scanner<'a> {
    src: &'a str,
    pos: usize,
    line: usize,
    col: usize,
}

impl<'a> Scanner<'a> {
    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn peek_nth(&self, n: usize) -> Option<char> {
        self.src[self.pos..].chars().nth(n)
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn error(&self, line: usize, col: usize, message: impl Into<String>) -> ParseError {
        ParseError {
            line,
            column: col,
            message: message.into(),
        }
    }

    fn quoted(&mut self, quote: char, line: usize, col: usize) -> Result<(), ParseError> {
        self.bump();
        loop {
            match self.bump() {
                None | Some('\n') => {
                    let what = if quote == '"' { "string" } else { "character" };
                    return Err(self.error(line, col, format!("unterminated {what} literal")));
                }
                Some('\\') => {
                    self.bump();
                }
                Some(c) if c == quote => return Ok(()),
                Some(_) => {}
            }
        }
    }
}

pub(crate) fn tokenize(src: &str) -> Result<Vec<Token>, ParseError> {
    let mut s = Scanner {
        src,
        pos: 0,
        line: 1,
        col: 1,
    };
    let mut tokens = Vec::new();
    while let Some(c) = s.peek() {
        let (line, col, start) = (s.line, s.col, s.pos);
        if c.is_whitespace() {
            s.bump();
            continue;
        }
        if s.rest().starts_with("//") {
            while s.peek().is_some_and(|c| c != '\n') {
                s.bump();
            }
            continue;
        }
        if s.rest().starts_with("/*") {
            s.bump();
            s.bump();
            loop {
                if s.rest().starts_with("*/") {
                    s.bump();
                    s.bump();
                    break;
                }
                if s.bump().is_none() {
                    return Err(s.error(line, col, "unterminated block comment"));
                }
            }
            continue;
        }
        let kind = if c.is_alphabetic() || c == '_' || c == '$' {
            while s.peek().is_some_and(|c| c.is_alphanumeric() || c == '_' || c == '$') {
                s.bump();
            }
            TokenKind::Ident
        } else if c.is_ascii_digit() || (c == '.' && s.peek_nth(1).is_some_and(|d| d.is_ascii_digit())) {
            let hex = s.rest().starts_with("0x") || s.rest().starts_with("0X");
            while let Some(d) = s.peek() {
                if d.is_ascii_alphanumeric() || d == '_' || d == '.' {
                    s.bump();
                    if !hex && (d == 'e' || d == 'E') && s.peek().is_some_and(|n| n == '+' || n == '-') {
                        s.bump();
                    }
                } else {
                    break;
                }
            }
            TokenKind::Number
        } else if s.rest().starts_with("\"\"\"") {
            for _ in 0..3 {
                s.bump();
            }
            loop {
                if s.rest().starts_with("\"\"\"") {
                    for _ in 0..3 {
                        s.bump();
                    }
                    break;
                }
                match s.bump() {
                    None => return Err(s.error(line, col, "unterminated text block")),
                    Some('\\') => {
                        s.bump();
                    }
                    Some(_) => {}
                }
            }
            TokenKind::Str
        } else if c == '"' {
            s.quoted('"', line, col)?;
            TokenKind::Str
        } else if c == '\'' {
            s.quoted('\'', line, col)?;
            TokenKind::Char
        } else if let Some(p) = PUNCTS.iter().find(|p| s.rest().starts_with(**p)) {
            for _ in 0..p.len() {
                s.bump();
            }
            TokenKind::Punct
        } else {
            return Err(s.error(line, col, format!("unexpected character `{c}`")));
        };
        tokens.push(Token {
            kind,
            text: src[start..s.pos].to_string(),
            line,
            end_line: s.line,
            col,
            start,
            end: s.pos,
        });
    }
    Ok(tokens)
}
