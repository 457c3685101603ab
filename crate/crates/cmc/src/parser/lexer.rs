//! Tokenizer for the `.cmc` concrete syntax. `#` starts a comment running to
//! end of line; whitespace is insignificant.

use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Zero,
    Assign, // :=
    Colon,
    Query,  // ?
    Bang,   // !
    LParen,
    RParen,
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    Dot,
    Comma,
    Pipe,
    Plus,
    Slash,
    Tilde,
    Equals,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Tok::Ident(s) => return write!(f, "`{s}`"),
            Tok::Zero => "`0`",
            Tok::Assign => "`:=`",
            Tok::Colon => "`:`",
            Tok::Query => "`?`",
            Tok::Bang => "`!`",
            Tok::LParen => "`(`",
            Tok::RParen => "`)`",
            Tok::LBrace => "`{`",
            Tok::RBrace => "`}`",
            Tok::LBracket => "`[`",
            Tok::RBracket => "`]`",
            Tok::Dot => "`.`",
            Tok::Comma => "`,`",
            Tok::Pipe => "`|`",
            Tok::Plus => "`+`",
            Tok::Slash => "`/`",
            Tok::Tilde => "`~`",
            Tok::Equals => "`=`",
            Tok::Eof => "end of input",
        };
        write!(f, "{s}")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Debug, Clone)]
pub struct Token {
    pub tok: Tok,
    pub pos: Pos,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{pos}: {message}")]
pub struct LexError {
    pub pos: Pos,
    pub message: String,
}

pub fn lex(input: &str) -> Result<Vec<Token>, LexError> {
    let mut tokens = Vec::new();
    let mut chars = input.chars().peekable();
    let mut line = 1usize;
    let mut col = 1usize;

    macro_rules! push {
        ($tok:expr, $len:expr) => {{
            tokens.push(Token { tok: $tok, pos: Pos { line, col } });
            col += $len;
        }};
    }

    while let Some(&c) = chars.peek() {
        match c {
            '\n' => {
                chars.next();
                line += 1;
                col = 1;
            }
            c if c.is_whitespace() => {
                chars.next();
                col += 1;
            }
            '#' => {
                while let Some(&c) = chars.peek() {
                    if c == '\n' {
                        break;
                    }
                    chars.next();
                }
            }
            c if c.is_ascii_alphabetic() => {
                let mut ident = String::new();
                let start = Pos { line, col };
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_alphanumeric() || c == '_' {
                        ident.push(c);
                        chars.next();
                        col += 1;
                    } else {
                        break;
                    }
                }
                tokens.push(Token { tok: Tok::Ident(ident), pos: start });
            }
            '0' => {
                chars.next();
                if matches!(chars.peek(), Some(c) if c.is_ascii_alphanumeric()) {
                    return Err(LexError {
                        pos: Pos { line, col },
                        message: "identifiers must start with a letter".into(),
                    });
                }
                push!(Tok::Zero, 1);
            }
            c if c.is_ascii_digit() => {
                return Err(LexError {
                    pos: Pos { line, col },
                    message: format!("unexpected digit `{c}`; the only literal is `0`"),
                });
            }
            ':' => {
                chars.next();
                if chars.peek() == Some(&'=') {
                    chars.next();
                    push!(Tok::Assign, 2);
                } else {
                    push!(Tok::Colon, 1);
                }
            }
            '?' => {
                chars.next();
                push!(Tok::Query, 1);
            }
            '!' => {
                chars.next();
                push!(Tok::Bang, 1);
            }
            '(' => {
                chars.next();
                push!(Tok::LParen, 1);
            }
            ')' => {
                chars.next();
                push!(Tok::RParen, 1);
            }
            '{' => {
                chars.next();
                push!(Tok::LBrace, 1);
            }
            '}' => {
                chars.next();
                push!(Tok::RBrace, 1);
            }
            '[' => {
                chars.next();
                push!(Tok::LBracket, 1);
            }
            ']' => {
                chars.next();
                push!(Tok::RBracket, 1);
            }
            '.' => {
                chars.next();
                push!(Tok::Dot, 1);
            }
            ',' => {
                chars.next();
                push!(Tok::Comma, 1);
            }
            '|' => {
                chars.next();
                push!(Tok::Pipe, 1);
            }
            '+' => {
                chars.next();
                push!(Tok::Plus, 1);
            }
            '/' => {
                chars.next();
                push!(Tok::Slash, 1);
            }
            '~' => {
                chars.next();
                push!(Tok::Tilde, 1);
            }
            '=' => {
                chars.next();
                push!(Tok::Equals, 1);
            }
            other => {
                return Err(LexError {
                    pos: Pos { line, col },
                    message: format!("unexpected character `{other}`"),
                });
            }
        }
    }
    tokens.push(Token { tok: Tok::Eof, pos: Pos { line, col } });
    Ok(tokens)
}
