//! Rational expressions in named variables: integers, `+ - * /`, integer
//! powers `^k` and parentheses. Multiplication is always written with `*`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Node {
    Num(BigInt),
    Var(String),
    Neg(Box<Node>),
    Add(Box<Node>, Box<Node>),
    Sub(Box<Node>, Box<Node>),
    Mul(Box<Node>, Box<Node>),
    Div(Box<Node>, Box<Node>),
    Pow(Box<Node>, i32),
}

/// Parsed expression that remembers its source text.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expression {
    text: String,
    node: Node,
}

pub type Assignment = BTreeMap<String, BigRational>;

impl Expression {
    pub fn parse(text: &str) -> Result<Self> {
        let tokens = tokenize(text)?;
        let mut p = Parser { tokens, pos: 0, text };
        let node = p.expr()?;
        if p.pos != p.tokens.len() {
            return Err(p.error("unexpected trailing input"));
        }
        Ok(Expression { text: text.trim().to_string(), node })
    }

    pub fn text(&self) -> &str {
        &self.text
    }

    pub fn variables(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        collect(&self.node, &mut out);
        out
    }

    /// Exact value; unknown variables and division by zero are errors.
    pub fn eval(&self, env: &Assignment) -> Result<BigRational> {
        eval(&self.node, env)
    }
}

impl fmt::Display for Expression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.text)
    }
}

fn collect(n: &Node, out: &mut BTreeSet<String>) {
    match n {
        Node::Num(_) => {}
        Node::Var(v) => {
            out.insert(v.clone());
        }
        Node::Neg(a) | Node::Pow(a, _) => collect(a, out),
        Node::Add(a, b) | Node::Sub(a, b) | Node::Mul(a, b) | Node::Div(a, b) => {
            collect(a, out);
            collect(b, out);
        }
    }
}

fn eval(n: &Node, env: &Assignment) -> Result<BigRational> {
    Ok(match n {
        Node::Num(c) => BigRational::from_integer(c.clone()),
        Node::Var(v) => env.get(v).cloned().ok_or_else(|| Error::Expression(format!("unbound variable `{v}`")))?,
        Node::Neg(a) => -eval(a, env)?,
        Node::Add(a, b) => eval(a, env)? + eval(b, env)?,
        Node::Sub(a, b) => eval(a, env)? - eval(b, env)?,
        Node::Mul(a, b) => eval(a, env)? * eval(b, env)?,
        Node::Div(a, b) => {
            let d = eval(b, env)?;
            if d.is_zero() {
                return Err(Error::Expression("division by zero".into()));
            }
            eval(a, env)? / d
        }
        Node::Pow(a, k) => {
            let base = eval(a, env)?;
            if *k < 0 && base.is_zero() {
                return Err(Error::Expression("division by zero".into()));
            }
            if *k == 0 {
                BigRational::one()
            } else {
                base.pow(*k)
            }
        }
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Token {
    Num(BigInt),
    Ident(String),
    Sym(char),
}

fn tokenize(text: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push(Token::Num(s.parse().expect("digits")));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Token::Ident(chars[start..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Token::Sym(c));
            i += 1;
        } else {
            return Err(Error::Expression(format!("unexpected character `{c}` in `{text}`")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<Token>,
    pos: usize,
    text: &'a str,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::Expression(format!("{msg} at token {} in `{}`", self.pos, self.text))
    }

    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Token::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Node> {
        let mut left = self.term()?;
        loop {
            if self.eat('+') {
                left = Node::Add(Box::new(left), Box::new(self.term()?));
            } else if self.eat('-') {
                left = Node::Sub(Box::new(left), Box::new(self.term()?));
            } else {
                return Ok(left);
            }
        }
    }

    fn term(&mut self) -> Result<Node> {
        let mut left = self.unary()?;
        loop {
            if self.eat('*') {
                left = Node::Mul(Box::new(left), Box::new(self.unary()?));
            } else if self.eat('/') {
                left = Node::Div(Box::new(left), Box::new(self.unary()?));
            } else {
                return Ok(left);
            }
        }
    }

    fn unary(&mut self) -> Result<Node> {
        if self.eat('-') {
            return Ok(Node::Neg(Box::new(self.unary()?)));
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Node> {
        let base = self.atom()?;
        if self.eat('^') {
            let k = self.exponent()?;
            return Ok(Node::Pow(Box::new(base), k));
        }
        Ok(base)
    }

    fn exponent(&mut self) -> Result<i32> {
        let paren = self.eat('(');
        let negative = self.eat('-');
        let k = match self.peek() {
            Some(Token::Num(n)) => i32::try_from(n.clone()).map_err(|_| self.error("exponent too large"))?,
            _ => return Err(self.error("expected an integer exponent")),
        };
        self.pos += 1;
        if paren && !self.eat(')') {
            return Err(self.error("expected `)`"));
        }
        Ok(if negative { -k } else { k })
    }

    fn atom(&mut self) -> Result<Node> {
        match self.peek().cloned() {
            Some(Token::Num(n)) => {
                self.pos += 1;
                Ok(Node::Num(n))
            }
            Some(Token::Ident(v)) => {
                self.pos += 1;
                Ok(Node::Var(v))
            }
            Some(Token::Sym('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(self.error("expected `)`"));
                }
                Ok(e)
            }
            _ => Err(self.error("expected a number, variable or `(`")),
        }
    }
}
