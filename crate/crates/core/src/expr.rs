//! Polynomial expressions with rational coefficients, parsed from text.
//!
//! The test-curve catalog stores its genus maps, bundle twists and residual
//! closed forms as short formulas (`"3/2*g2*(3*g1+1)"`) so the table can be
//! read next to its source. Grammar:
//!
//! ```text
//! sum     := term (('+' | '-') term)*
//! term    := unary (('*' | '/') unary)*
//! unary   := '-' unary | power
//! power   := atom ('^' integer)?
//! atom    := integer | identifier | '(' sum ')'
//! ```

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

#[derive(Debug, Clone, PartialEq)]
enum Node {
    Num(Rational),
    Var(String),
    Neg(Box<Node>),
    Add(Box<Node>, Box<Node>),
    Sub(Box<Node>, Box<Node>),
    Mul(Box<Node>, Box<Node>),
    Div(Box<Node>, Box<Node>),
    Pow(Box<Node>, u32),
}

/// A parsed formula that keeps its source text.
#[derive(Debug, Clone, PartialEq)]
pub struct Expr {
    source: String,
    root: Node,
}

impl Expr {
    pub fn parse(source: &str) -> Result<Self> {
        let mut p = Parser {
            src: source,
            chars: source.char_indices().peekable(),
        };
        let root = p.sum()?;
        p.skip_ws();
        if let Some(&(_, c)) = p.chars.peek() {
            return Err(p.error(format!("unexpected `{c}`")));
        }
        Ok(Expr {
            source: source.to_string(),
            root,
        })
    }

    pub fn constant(value: Rational) -> Self {
        Expr {
            source: rational::format(&value),
            root: Node::Num(value),
        }
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    /// Evaluates with `lookup` supplying variable values.
    pub fn eval<F>(&self, lookup: F) -> Result<Rational>
    where
        F: Fn(&str) -> Option<Rational>,
    {
        eval_node(&self.root, &lookup).map_err(|reason| Error::Expr {
            source_text: self.source.clone(),
            reason,
        })
    }

    /// Evaluates with a fixed list of bindings.
    pub fn eval_with(&self, bindings: &[(&str, &Rational)]) -> Result<Rational> {
        self.eval(|name| {
            bindings
                .iter()
                .find(|(k, _)| *k == name)
                .map(|(_, v)| (*v).clone())
        })
    }

    /// `self + c`, used to perturb catalog entries in negative controls.
    pub fn offset(&self, c: &Rational) -> Self {
        Expr {
            source: format!("({}) + {}", self.source, rational::format(c)),
            root: Node::Add(Box::new(self.root.clone()), Box::new(Node::Num(c.clone()))),
        }
    }

    pub fn variables(&self) -> Vec<String> {
        let mut out = Vec::new();
        collect_vars(&self.root, &mut out);
        out.sort();
        out.dedup();
        out
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.source)
    }
}

fn collect_vars(node: &Node, out: &mut Vec<String>) {
    match node {
        Node::Num(_) => {}
        Node::Var(v) => out.push(v.clone()),
        Node::Neg(a) | Node::Pow(a, _) => collect_vars(a, out),
        Node::Add(a, b) | Node::Sub(a, b) | Node::Mul(a, b) | Node::Div(a, b) => {
            collect_vars(a, out);
            collect_vars(b, out);
        }
    }
}

fn eval_node<F>(node: &Node, lookup: &F) -> std::result::Result<Rational, String>
where
    F: Fn(&str) -> Option<Rational>,
{
    Ok(match node {
        Node::Num(v) => v.clone(),
        Node::Var(name) => lookup(name).ok_or_else(|| format!("unbound variable `{name}`"))?,
        Node::Neg(a) => -eval_node(a, lookup)?,
        Node::Add(a, b) => eval_node(a, lookup)? + eval_node(b, lookup)?,
        Node::Sub(a, b) => eval_node(a, lookup)? - eval_node(b, lookup)?,
        Node::Mul(a, b) => eval_node(a, lookup)? * eval_node(b, lookup)?,
        Node::Div(a, b) => {
            let d = eval_node(b, lookup)?;
            if d.is_zero() {
                return Err("division by zero".into());
            }
            eval_node(a, lookup)? / d
        }
        Node::Pow(a, k) => {
            let base = eval_node(a, lookup)?;
            (0..*k).fold(Rational::one(), |acc, _| acc * &base)
        }
    })
}

struct Parser<'a> {
    src: &'a str,
    chars: std::iter::Peekable<std::str::CharIndices<'a>>,
}

impl Parser<'_> {
    fn error(&self, reason: String) -> Error {
        Error::Expr {
            source_text: self.src.to_string(),
            reason,
        }
    }

    fn skip_ws(&mut self) {
        while matches!(self.chars.peek(), Some((_, c)) if c.is_whitespace()) {
            self.chars.next();
        }
    }

    fn eat(&mut self, want: char) -> bool {
        self.skip_ws();
        if matches!(self.chars.peek(), Some((_, c)) if *c == want) {
            self.chars.next();
            true
        } else {
            false
        }
    }

    fn sum(&mut self) -> Result<Node> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = Node::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Node::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Node> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat('*') {
                lhs = Node::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat('/') {
                lhs = Node::Div(Box::new(lhs), Box::new(self.unary()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Node> {
        if self.eat('-') {
            return Ok(Node::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Node> {
        let base = self.atom()?;
        if self.eat('^') {
            self.skip_ws();
            let digits = self.take_while(|c| c.is_ascii_digit());
            let k: u32 = digits
                .parse()
                .map_err(|_| self.error("exponent must be a non-negative integer".into()))?;
            return Ok(Node::Pow(Box::new(base), k));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Node> {
        self.skip_ws();
        match self.chars.peek().map(|&(_, c)| c) {
            Some('(') => {
                self.chars.next();
                let inner = self.sum()?;
                if !self.eat(')') {
                    return Err(self.error("missing `)`".into()));
                }
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let digits = self.take_while(|c| c.is_ascii_digit());
                let v: i64 = digits
                    .parse()
                    .map_err(|_| self.error(format!("integer `{digits}` out of range")))?;
                Ok(Node::Num(rational::int(v)))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let name = self.take_while(|c| c.is_ascii_alphanumeric() || c == '_');
                Ok(Node::Var(name))
            }
            Some(c) => Err(self.error(format!("unexpected `{c}`"))),
            None => Err(self.error("unexpected end of input".into())),
        }
    }

    fn take_while(&mut self, pred: impl Fn(char) -> bool) -> String {
        let mut out = String::new();
        while let Some(&(_, c)) = self.chars.peek() {
            if !pred(c) {
                break;
            }
            out.push(c);
            self.chars.next();
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn eval(src: &str, vars: &[(&str, i64)]) -> Rational {
        let owned: Vec<(&str, Rational)> = vars.iter().map(|(k, v)| (*k, int(*v))).collect();
        let refs: Vec<(&str, &Rational)> = owned.iter().map(|(k, v)| (*k, v)).collect();
        Expr::parse(src).unwrap().eval_with(&refs).unwrap()
    }

    #[test]
    fn precedence_and_fractions() {
        assert_eq!(eval("1 + 2*3", &[]), int(7));
        assert_eq!(eval("3/2*g1*g2", &[("g1", 2), ("g2", 2)]), int(6));
        assert_eq!(eval("2*n-(b+3)/2", &[("n", 5), ("b", 3)]), int(7));
        assert_eq!(eval("-x^2", &[("x", 3)]), int(-9));
        assert_eq!(eval("(2 - 3)^3", &[]), int(-1));
        assert_eq!(eval("1/3 - 1/2", &[]), frac(-1, 6));
    }

    #[test]
    fn errors() {
        assert!(Expr::parse("1 +").is_err());
        assert!(Expr::parse("(1").is_err());
        assert!(Expr::parse("2 $ 3").is_err());
        let e = Expr::parse("x/(y-y)").unwrap();
        assert!(e.eval_with(&[("x", &int(1)), ("y", &int(2))]).is_err());
        assert!(Expr::parse("z").unwrap().eval_with(&[]).is_err());
    }

    #[test]
    fn offset_and_vars() {
        let e = Expr::parse("g1*g2 + g").unwrap();
        assert_eq!(e.variables(), vec!["g", "g1", "g2"]);
        let shifted = e.offset(&int(1));
        let one = int(1);
        assert_eq!(
            shifted
                .eval_with(&[("g", &one), ("g1", &one), ("g2", &one)])
                .unwrap(),
            int(3)
        );
    }
}
