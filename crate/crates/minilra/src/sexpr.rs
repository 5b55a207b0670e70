//! S-expression reader for the SMT-LIB 2 concrete syntax.
//!
//! Handles simple symbols, |quoted| symbols, string literals, numerals,
//! decimals, keywords and line comments. Input arrives incrementally on
//! stdin, so the reader also exposes a balance counter that tells the
//! driver when a complete toplevel form has been received.

use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SExpr {
    /// Simple or quoted symbol (quotes stripped).
    Sym(String),
    /// Keyword such as `:print-success`.
    Keyword(String),
    /// Numeral or decimal, kept as written.
    Num(String),
    /// String literal (quotes stripped, escapes resolved).
    Str(String),
    List(Vec<SExpr>),
}

impl SExpr {
    pub fn sym(&self) -> Option<&str> {
        match self {
            SExpr::Sym(s) => Some(s),
            _ => None,
        }
    }

    pub fn list(&self) -> Option<&[SExpr]> {
        match self {
            SExpr::List(items) => Some(items),
            _ => None,
        }
    }
}

impl fmt::Display for SExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SExpr::Sym(s) => {
                if needs_quoting(s) {
                    write!(f, "|{}|", s)
                } else {
                    write!(f, "{}", s)
                }
            }
            SExpr::Keyword(s) => write!(f, ":{}", s),
            SExpr::Num(s) => write!(f, "{}", s),
            SExpr::Str(s) => write!(f, "\"{}\"", s.replace('"', "\"\"")),
            SExpr::List(items) => {
                write!(f, "(")?;
                for (i, it) in items.iter().enumerate() {
                    if i > 0 {
                        write!(f, " ")?;
                    }
                    write!(f, "{}", it)?;
                }
                write!(f, ")")
            }
        }
    }
}

fn needs_quoting(s: &str) -> bool {
    s.is_empty()
        || s.chars().any(|c| !is_simple_symbol_char(c))
        || s.chars().next().is_some_and(|c| c.is_ascii_digit())
}

fn is_simple_symbol_char(c: char) -> bool {
    c.is_ascii_alphanumeric()
        || matches!(
            c,
            '~' | '!' | '@' | '$' | '%' | '^' | '&' | '*' | '_' | '-' | '+' | '=' | '<' | '>'
                | '.' | '?' | '/'
        )
}

#[derive(Debug)]
pub struct ParseError(pub String);

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Parse every toplevel form in `input`.
pub fn parse_all(input: &str) -> Result<Vec<SExpr>, ParseError> {
    let mut p = Parser {
        chars: input.chars().collect(),
        pos: 0,
    };
    let mut out = Vec::new();
    loop {
        p.skip_ws();
        if p.at_end() {
            return Ok(out);
        }
        out.push(p.parse_expr()?);
    }
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn at_end(&self) -> bool {
        self.pos >= self.chars.len()
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.pos += 1;
            } else if c == ';' {
                while let Some(c) = self.peek() {
                    self.pos += 1;
                    if c == '\n' {
                        break;
                    }
                }
            } else {
                break;
            }
        }
    }

    fn parse_expr(&mut self) -> Result<SExpr, ParseError> {
        self.skip_ws();
        match self.peek() {
            None => Err(ParseError("unexpected end of input".into())),
            Some('(') => {
                self.bump();
                let mut items = Vec::new();
                loop {
                    self.skip_ws();
                    match self.peek() {
                        Some(')') => {
                            self.bump();
                            return Ok(SExpr::List(items));
                        }
                        None => return Err(ParseError("unbalanced '('".into())),
                        _ => items.push(self.parse_expr()?),
                    }
                }
            }
            Some(')') => Err(ParseError("unexpected ')'".into())),
            Some('|') => {
                self.bump();
                let mut s = String::new();
                loop {
                    match self.bump() {
                        Some('|') => return Ok(SExpr::Sym(s)),
                        Some(c) => s.push(c),
                        None => return Err(ParseError("unterminated |symbol|".into())),
                    }
                }
            }
            Some('"') => {
                self.bump();
                let mut s = String::new();
                loop {
                    match self.bump() {
                        Some('"') => {
                            // SMT-LIB escapes a quote by doubling it.
                            if self.peek() == Some('"') {
                                self.bump();
                                s.push('"');
                            } else {
                                return Ok(SExpr::Str(s));
                            }
                        }
                        Some(c) => s.push(c),
                        None => return Err(ParseError("unterminated string".into())),
                    }
                }
            }
            Some(':') => {
                self.bump();
                let tok = self.read_token();
                Ok(SExpr::Keyword(tok))
            }
            Some(c) if c.is_ascii_digit() => {
                let tok = self.read_token();
                Ok(SExpr::Num(tok))
            }
            Some(_) => {
                let tok = self.read_token();
                Ok(SExpr::Sym(tok))
            }
        }
    }

    fn read_token(&mut self) -> String {
        let mut s = String::new();
        while let Some(c) = self.peek() {
            if c.is_whitespace() || c == '(' || c == ')' || c == ';' || c == '|' || c == '"' {
                break;
            }
            s.push(c);
            self.pos += 1;
        }
        s
    }
}

/// Tracks paren balance over incrementally received text, ignoring
/// comments, strings and quoted symbols. Used by the REPL to decide when a
/// full command has been read.
#[derive(Default)]
pub struct BalanceTracker {
    depth: i64,
    in_comment: bool,
    in_string: bool,
    in_quoted_sym: bool,
}

impl BalanceTracker {
    pub fn feed(&mut self, text: &str) {
        for c in text.chars() {
            if self.in_comment {
                if c == '\n' {
                    self.in_comment = false;
                }
                continue;
            }
            if self.in_string {
                if c == '"' {
                    // Doubled quotes inside strings re-enter string state on
                    // the next quote; treating each quote as a toggle keeps
                    // the balance right either way.
                    self.in_string = false;
                }
                continue;
            }
            if self.in_quoted_sym {
                if c == '|' {
                    self.in_quoted_sym = false;
                }
                continue;
            }
            match c {
                ';' => self.in_comment = true,
                '"' => self.in_string = true,
                '|' => self.in_quoted_sym = true,
                '(' => self.depth += 1,
                ')' => self.depth -= 1,
                _ => {}
            }
        }
    }

    pub fn balanced(&self) -> bool {
        self.depth <= 0 && !self.in_string && !self.in_quoted_sym
    }

    pub fn reset(&mut self) {
        *self = Self::default();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_nested_lists() {
        let es = parse_all("(assert (<= x 1)) (check-sat)").unwrap();
        assert_eq!(es.len(), 2);
        assert_eq!(es[0].list().unwrap()[0].sym(), Some("assert"));
    }

    #[test]
    fn quoted_symbols_roundtrip() {
        let es = parse_all("(declare-const |a b| Real)").unwrap();
        assert_eq!(es[0].list().unwrap()[1], SExpr::Sym("a b".into()));
        assert_eq!(format!("{}", es[0]), "(declare-const |a b| Real)");
    }

    #[test]
    fn comments_and_keywords() {
        let es = parse_all("; hello\n(set-option :print-success true)").unwrap();
        assert_eq!(es[0].list().unwrap()[1], SExpr::Keyword("print-success".into()));
    }

    #[test]
    fn negative_and_rational_numerals() {
        let es = parse_all("(assert (= x (- (/ 1 2))))").unwrap();
        assert!(format!("{}", es[0]).contains("(/ 1 2)"));
    }
}
