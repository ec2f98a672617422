//! Recursive-descent parser for ideal expressions.
//!
//! Grammar (precedence low to high: `:` < `+` < `&` < `*` < postfix):
//!
//! ```text
//! program  := [ 'ring' '(' nat {',' nat} ')' ';' ] expr
//! expr     := sum { ':' sum }
//! sum      := isect { '+' isect }
//! isect    := prod { '&' prod }
//! prod     := postfix { '*' postfix }
//! postfix  := atom { '^' nat | '[' nat ']' }
//! atom     := '(' expr ')' | '1' | var
//!           | 'ideal' '(' [ expr {',' expr} ] ')'
//!           | 'prime' '(' var {',' var} ')'
//!           | 'V' '(' nat ';' nat {',' nat} ')'
//!           | 'veronese' '(' nat ';' nat {',' nat} ')'
//!           | 'transversal' '(' subsets [',' 'blocks' '=' natlist] ')'
//!           | 'capped_veronese_gmp' '(' nat ',' nat ',' nat ')'
//! ```

use std::fmt;

/// Parse failure with a location.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SyntaxError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

impl fmt::Display for SyntaxError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.col, self.message)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    /// ideal(e1, ..., ek): the sum of the argument ideals; empty is the
    /// zero ideal.
    Ideal(Vec<Expr>),
    /// prime(x1, x2): variable tokens, resolved against the ring later.
    Prime(Vec<String>),
    Veronese {
        degree: u32,
        caps: Vec<u32>,
    },
    Transversal {
        subsets: Vec<Vec<usize>>,
        blocks: Option<Vec<u32>>,
    },
    CappedVeronese {
        m1: u32,
        m2: u32,
        d: u32,
    },
    /// gmp("family.json"): a generalized mixed product ideal from a spec
    /// file.
    GmpFile(String),
    Var(String),
    One,
    Sum(Box<Expr>, Box<Expr>),
    Product(Box<Expr>, Box<Expr>),
    Intersect(Box<Expr>, Box<Expr>),
    Colon(Box<Expr>, Box<Expr>),
    Power(Box<Expr>, u32),
    Bracket(Box<Expr>, u32),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Program {
    pub ring: Option<Vec<u32>>,
    pub body: Expr,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Nat(u64),
    Str(String),
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Semi,
    Plus,
    Star,
    Amp,
    Colon,
    Caret,
    Eq,
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(input: &str) -> Result<Vec<Spanned>, SyntaxError> {
    let mut out = Vec::new();
    let mut line = 1usize;
    let mut col = 1usize;
    let mut chars = input.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (tline, tcol) = (line, col);
        let bump = |c: char, line: &mut usize, col: &mut usize| {
            if c == '\n' {
                *line += 1;
                *col = 1;
            } else {
                *col += 1;
            }
        };
        if c.is_whitespace() {
            chars.next();
            bump(c, &mut line, &mut col);
            continue;
        }
        let tok = match c {
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            '[' => Some(Tok::LBracket),
            ']' => Some(Tok::RBracket),
            ',' => Some(Tok::Comma),
            ';' => Some(Tok::Semi),
            '+' => Some(Tok::Plus),
            '*' => Some(Tok::Star),
            '&' => Some(Tok::Amp),
            ':' => Some(Tok::Colon),
            '^' => Some(Tok::Caret),
            '=' => Some(Tok::Eq),
            _ => None,
        };
        if let Some(tok) = tok {
            chars.next();
            bump(c, &mut line, &mut col);
            out.push(Spanned {
                tok,
                line: tline,
                col: tcol,
            });
            continue;
        }
        if c == '"' {
            chars.next();
            bump(c, &mut line, &mut col);
            let mut value = String::new();
            loop {
                match chars.next() {
                    Some('"') => {
                        bump('"', &mut line, &mut col);
                        break;
                    }
                    Some(d) => {
                        bump(d, &mut line, &mut col);
                        value.push(d);
                    }
                    None => {
                        return Err(SyntaxError {
                            line: tline,
                            col: tcol,
                            message: "unterminated string".into(),
                        })
                    }
                }
            }
            out.push(Spanned {
                tok: Tok::Str(value),
                line: tline,
                col: tcol,
            });
            continue;
        }
        if c.is_ascii_digit() {
            let mut value = 0u64;
            while let Some(&d) = chars.peek() {
                if let Some(v) = d.to_digit(10) {
                    value = value
                        .checked_mul(10)
                        .and_then(|x| x.checked_add(v as u64))
                        .ok_or(SyntaxError {
                            line: tline,
                            col: tcol,
                            message: "number too large".into(),
                        })?;
                    chars.next();
                    bump(d, &mut line, &mut col);
                } else {
                    break;
                }
            }
            out.push(Spanned {
                tok: Tok::Nat(value),
                line: tline,
                col: tcol,
            });
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let mut ident = String::new();
            while let Some(&d) = chars.peek() {
                if d.is_ascii_alphanumeric() || d == '_' {
                    ident.push(d);
                    chars.next();
                    bump(d, &mut line, &mut col);
                } else {
                    break;
                }
            }
            out.push(Spanned {
                tok: Tok::Ident(ident),
                line: tline,
                col: tcol,
            });
            continue;
        }
        return Err(SyntaxError {
            line: tline,
            col: tcol,
            message: format!("unexpected character '{}'", c),
        });
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|s| &s.tok)
    }

    fn location(&self) -> (usize, usize) {
        self.toks
            .get(self.pos.min(self.toks.len().saturating_sub(1)))
            .map(|s| (s.line, s.col))
            .unwrap_or((1, 1))
    }

    fn error(&self, message: impl Into<String>) -> SyntaxError {
        let (line, col) = self.location();
        SyntaxError {
            line,
            col,
            message: message.into(),
        }
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|s| s.tok.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), SyntaxError> {
        if self.peek() == Some(&tok) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(format!("expected {}", what)))
        }
    }

    fn nat(&mut self, what: &str) -> Result<u64, SyntaxError> {
        match self.peek() {
            Some(Tok::Nat(v)) => {
                let v = *v;
                self.pos += 1;
                Ok(v)
            }
            _ => Err(self.error(format!("expected {}", what))),
        }
    }

    fn nat_u32(&mut self, what: &str) -> Result<u32, SyntaxError> {
        let v = self.nat(what)?;
        u32::try_from(v).map_err(|_| self.error(format!("{} too large", what)))
    }

    fn nat_list(&mut self, what: &str) -> Result<Vec<u32>, SyntaxError> {
        let mut out = vec![self.nat_u32(what)?];
        while self.peek() == Some(&Tok::Comma) {
            self.pos += 1;
            out.push(self.nat_u32(what)?);
        }
        Ok(out)
    }

    fn program(&mut self) -> Result<Program, SyntaxError> {
        let ring = if matches!(self.peek(), Some(Tok::Ident(k)) if k == "ring") {
            self.pos += 1;
            self.expect(Tok::LParen, "'(' after ring")?;
            let blocks = self.nat_list("block size")?;
            self.expect(Tok::RParen, "')'")?;
            self.expect(Tok::Semi, "';' after the ring declaration")?;
            Some(blocks)
        } else {
            None
        };
        let body = self.expr()?;
        if self.peek().is_some() {
            return Err(self.error("trailing input after the expression"));
        }
        Ok(Program { ring, body })
    }

    fn expr(&mut self) -> Result<Expr, SyntaxError> {
        let mut lhs = self.sum()?;
        while self.peek() == Some(&Tok::Colon) {
            self.pos += 1;
            let rhs = self.sum()?;
            lhs = Expr::Colon(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn sum(&mut self) -> Result<Expr, SyntaxError> {
        let mut lhs = self.isect()?;
        while self.peek() == Some(&Tok::Plus) {
            self.pos += 1;
            let rhs = self.isect()?;
            lhs = Expr::Sum(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn isect(&mut self) -> Result<Expr, SyntaxError> {
        let mut lhs = self.prod()?;
        while self.peek() == Some(&Tok::Amp) {
            self.pos += 1;
            let rhs = self.prod()?;
            lhs = Expr::Intersect(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn prod(&mut self) -> Result<Expr, SyntaxError> {
        let mut lhs = self.postfix()?;
        while self.peek() == Some(&Tok::Star) {
            self.pos += 1;
            let rhs = self.postfix()?;
            lhs = Expr::Product(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn postfix(&mut self) -> Result<Expr, SyntaxError> {
        let mut base = self.atom()?;
        loop {
            match self.peek() {
                Some(Tok::Caret) => {
                    self.pos += 1;
                    let k = self.nat_u32("exponent")?;
                    base = Expr::Power(Box::new(base), k);
                }
                Some(Tok::LBracket) => {
                    self.pos += 1;
                    let k = self.nat_u32("bracket exponent")?;
                    self.expect(Tok::RBracket, "']'")?;
                    base = Expr::Bracket(Box::new(base), k);
                }
                _ => return Ok(base),
            }
        }
    }

    fn var_token(&mut self) -> Result<String, SyntaxError> {
        match self.next() {
            Some(Tok::Ident(name)) if is_var_token(&name) => Ok(name),
            _ => {
                self.pos = self.pos.saturating_sub(1);
                Err(self.error("expected a variable like x1 or x12"))
            }
        }
    }

    fn atom(&mut self) -> Result<Expr, SyntaxError> {
        match self.peek().cloned() {
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(inner)
            }
            Some(Tok::Nat(1)) => {
                self.pos += 1;
                Ok(Expr::One)
            }
            Some(Tok::Nat(_)) => Err(self.error("only the literal 1 denotes an ideal")),
            Some(Tok::Ident(name)) => match name.as_str() {
                "ideal" => {
                    self.pos += 1;
                    self.expect(Tok::LParen, "'(' after ideal")?;
                    let mut args = Vec::new();
                    if self.peek() != Some(&Tok::RParen) {
                        args.push(self.expr()?);
                        while self.peek() == Some(&Tok::Comma) {
                            self.pos += 1;
                            args.push(self.expr()?);
                        }
                    }
                    self.expect(Tok::RParen, "')'")?;
                    Ok(Expr::Ideal(args))
                }
                "prime" => {
                    self.pos += 1;
                    self.expect(Tok::LParen, "'(' after prime")?;
                    let mut vars = vec![self.var_token()?];
                    while self.peek() == Some(&Tok::Comma) {
                        self.pos += 1;
                        vars.push(self.var_token()?);
                    }
                    self.expect(Tok::RParen, "')'")?;
                    Ok(Expr::Prime(vars))
                }
                "V" | "veronese" => {
                    self.pos += 1;
                    self.expect(Tok::LParen, "'('")?;
                    let degree = self.nat_u32("degree")?;
                    self.expect(Tok::Semi, "';' between degree and caps")?;
                    let caps = self.nat_list("cap")?;
                    self.expect(Tok::RParen, "')'")?;
                    Ok(Expr::Veronese { degree, caps })
                }
                "transversal" => {
                    self.pos += 1;
                    self.expect(Tok::LParen, "'('")?;
                    self.expect(Tok::LBracket, "'[' opening the subset list")?;
                    let mut subsets = Vec::new();
                    loop {
                        self.expect(Tok::LBracket, "'[' opening a subset")?;
                        let first = self.nat("variable index")? as usize;
                        let mut subset = vec![first];
                        while self.peek() == Some(&Tok::Comma) {
                            self.pos += 1;
                            subset.push(self.nat("variable index")? as usize);
                        }
                        self.expect(Tok::RBracket, "']'")?;
                        subsets.push(subset);
                        if self.peek() == Some(&Tok::Comma) {
                            self.pos += 1;
                            continue;
                        }
                        break;
                    }
                    self.expect(Tok::RBracket, "']' closing the subset list")?;
                    let blocks = if self.peek() == Some(&Tok::Comma) {
                        self.pos += 1;
                        match self.next() {
                            Some(Tok::Ident(k)) if k == "blocks" => {}
                            _ => return Err(self.error("expected blocks=[...]")),
                        }
                        self.expect(Tok::Eq, "'=' after blocks")?;
                        self.expect(Tok::LBracket, "'['")?;
                        let blocks = self.nat_list("block size")?;
                        self.expect(Tok::RBracket, "']'")?;
                        Some(blocks)
                    } else {
                        None
                    };
                    self.expect(Tok::RParen, "')'")?;
                    Ok(Expr::Transversal { subsets, blocks })
                }
                "capped_veronese_gmp" => {
                    self.pos += 1;
                    self.expect(Tok::LParen, "'('")?;
                    let m1 = self.nat_u32("m1")?;
                    self.expect(Tok::Comma, "','")?;
                    let m2 = self.nat_u32("m2")?;
                    self.expect(Tok::Comma, "','")?;
                    let d = self.nat_u32("d")?;
                    self.expect(Tok::RParen, "')'")?;
                    Ok(Expr::CappedVeronese { m1, m2, d })
                }
                "gmp" => {
                    self.pos += 1;
                    self.expect(Tok::LParen, "'('")?;
                    let path = match self.next() {
                        Some(Tok::Str(path)) => path,
                        _ => {
                            self.pos = self.pos.saturating_sub(1);
                            return Err(self.error("expected a quoted spec-file path"));
                        }
                    };
                    self.expect(Tok::RParen, "')'")?;
                    Ok(Expr::GmpFile(path))
                }
                _ if is_var_token(&name) => {
                    self.pos += 1;
                    Ok(Expr::Var(name))
                }
                other => Err(self.error(format!("unknown name '{}'", other))),
            },
            _ => Err(self.error("expected an expression")),
        }
    }
}

fn is_var_token(name: &str) -> bool {
    let rest = match name.strip_prefix('x') {
        Some(rest) => rest,
        None => return false,
    };
    !rest.is_empty() && rest.chars().all(|c| c.is_ascii_digit()) && !rest.starts_with('0')
}

pub fn parse(input: &str) -> Result<Program, SyntaxError> {
    let toks = lex(input)?;
    if toks.is_empty() {
        return Err(SyntaxError {
            line: 1,
            col: 1,
            message: "empty input".into(),
        });
    }
    Parser { toks, pos: 0 }.program()
}

/// Canonical expression text for an ideal: an explicit ring declaration
/// followed by an ideal literal in canonical generator order.
pub fn print_ideal(ideal: &monideal::MonomialIdeal) -> String {
    let blocks: Vec<String> = ideal
        .ring()
        .block_sizes()
        .iter()
        .map(|m| m.to_string())
        .collect();
    let gens: Vec<String> = ideal.generators().iter().map(|m| m.to_string()).collect();
    format!("ring({}); ideal({})", blocks.join(","), gens.join(", "))
}
