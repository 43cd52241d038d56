//! Conditions on parameters: comparisons chained with `=` and `!=`,
//! membership in finite sets, `and`, `or`, `not` and parentheses.

use crate::algebra::{Fe, Field};

use super::expr::{describe, Bindings, Expr, Parser, MAX_NESTING};
use super::lexer::Tok;
use super::ParseError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Predicate {
    True,
    Not(Box<Predicate>),
    And(Vec<Predicate>),
    Or(Vec<Predicate>),
    /// e0 r0 e1 r1 e2 ..., each relation true; `true` in a relation means `!=`.
    Chain(Vec<Expr>, Vec<bool>),
    In(Expr, Vec<Expr>, bool),
}

impl Parser {
    fn predicate(&mut self) -> Result<Predicate, ParseError> {
        let mut parts = vec![self.conjunction()?];
        while self.peek() == Some(&Tok::Keyword("or")) {
            self.i += 1;
            parts.push(self.conjunction()?);
        }
        Ok(if parts.len() == 1 { parts.pop().expect("one") } else { Predicate::Or(parts) })
    }

    fn conjunction(&mut self) -> Result<Predicate, ParseError> {
        let mut parts = vec![self.pred_atom()?];
        while self.peek() == Some(&Tok::Keyword("and")) {
            self.i += 1;
            parts.push(self.pred_atom()?);
        }
        Ok(if parts.len() == 1 { parts.pop().expect("one") } else { Predicate::And(parts) })
    }

    fn pred_atom(&mut self) -> Result<Predicate, ParseError> {
        match self.peek() {
            Some(Tok::Keyword("true")) => {
                self.i += 1;
                return Ok(Predicate::True);
            }
            Some(Tok::Keyword("not")) => {
                self.i += 1;
                return Ok(Predicate::Not(Box::new(self.nested(|p| p.pred_atom())?)));
            }
            Some(Tok::LParen) => {
                let after = self.matching_paren(self.i).map(|j| self.tok_at(j + 1));
                let continues = matches!(
                    after,
                    Some(Some(
                        Tok::Eq
                            | Tok::Ne
                            | Tok::Keyword("in")
                            | Tok::Keyword("not")
                            | Tok::Plus
                            | Tok::Minus
                            | Tok::Star
                            | Tok::Caret
                            | Tok::LParen
                            | Tok::Num(_)
                            | Tok::Var(_)
                            | Tok::Param(_)
                    ))
                );
                if !continues {
                    self.i += 1;
                    let inner = self.nested(|p| p.predicate())?;
                    self.expect(Tok::RParen, "')'")?;
                    return Ok(inner);
                }
            }
            _ => {}
        }
        self.comparison()
    }

    fn tok_at(&self, j: usize) -> Option<Tok> {
        self.toks.get(j).map(|t| t.tok.clone())
    }

    /// Index of the parenthesis closing the one at `open`.
    fn matching_paren(&self, open: usize) -> Option<usize> {
        let mut depth = 0usize;
        for j in open..self.toks.len() {
            match self.toks[j].tok {
                Tok::LParen => depth += 1,
                Tok::RParen => {
                    depth -= 1;
                    if depth == 0 {
                        return Some(j);
                    }
                }
                _ => {}
            }
        }
        None
    }

    fn nested<T>(&mut self, f: impl FnOnce(&mut Parser) -> Result<T, ParseError>) -> Result<T, ParseError> {
        if self.depth >= MAX_NESTING {
            return Err(self.error("nesting too deep".to_string()));
        }
        self.depth += 1;
        let r = f(self);
        self.depth -= 1;
        r
    }

    fn comparison(&mut self) -> Result<Predicate, ParseError> {
        let first = self.expr()?;
        let negated = match self.peek() {
            Some(Tok::Keyword("not")) => {
                self.i += 1;
                if self.peek() != Some(&Tok::Keyword("in")) {
                    return Err(self.error("expected 'in'".to_string()));
                }
                true
            }
            _ => false,
        };
        if self.peek() == Some(&Tok::Keyword("in")) {
            self.i += 1;
            self.expect(Tok::LBrace, "'{'")?;
            let mut set = vec![self.expr()?];
            while self.peek() == Some(&Tok::Comma) {
                self.i += 1;
                set.push(self.expr()?);
            }
            self.expect(Tok::RBrace, "'}'")?;
            return Ok(Predicate::In(first, set, negated));
        }
        let mut exprs = vec![first];
        let mut rels = Vec::new();
        while let Some(t @ (Tok::Eq | Tok::Ne)) = self.peek().cloned() {
            self.i += 1;
            rels.push(t == Tok::Ne);
            exprs.push(self.expr()?);
        }
        if rels.is_empty() {
            return Err(match self.peek().cloned() {
                Some(t) => self.error(format!("expected a comparison, found {}", describe(&t))),
                None => self.error("expected a comparison".to_string()),
            });
        }
        Ok(Predicate::Chain(exprs, rels))
    }
}

pub fn parse_predicate(src: &str) -> Result<Predicate, ParseError> {
    let mut p = Parser::new(src)?;
    let pred = p.predicate()?;
    if !p.at_end() {
        let t = p.peek().cloned().expect("not at end");
        return Err(p.error(format!("unexpected {}", describe(&t))));
    }
    Ok(pred)
}

fn value(e: &Expr, field: &Field, b: &dyn Bindings) -> Result<Fe, ParseError> {
    e.eval(field, b)?.as_constant().ok_or_else(|| ParseError::new("condition involves a variable".to_string()))
}

impl Predicate {
    pub fn eval(&self, field: &Field, b: &dyn Bindings) -> Result<bool, ParseError> {
        Ok(match self {
            Predicate::True => true,
            Predicate::Not(p) => !p.eval(field, b)?,
            Predicate::And(ps) => {
                for p in ps {
                    if !p.eval(field, b)? {
                        return Ok(false);
                    }
                }
                true
            }
            Predicate::Or(ps) => {
                for p in ps {
                    if p.eval(field, b)? {
                        return Ok(true);
                    }
                }
                false
            }
            Predicate::Chain(es, rels) => {
                let vals = es.iter().map(|e| value(e, field, b)).collect::<Result<Vec<_>, _>>()?;
                rels.iter().enumerate().all(|(i, &ne)| (vals[i] != vals[i + 1]) == ne)
            }
            Predicate::In(e, set, negated) => {
                let v = value(e, field, b)?;
                let mut found = false;
                for s in set {
                    found |= value(s, field, b)? == v;
                }
                found != *negated
            }
        })
    }

    pub fn params(&self) -> Vec<String> {
        let mut out: Vec<String> = Vec::new();
        let mut add = |e: &Expr| {
            for p in e.params() {
                if !out.contains(&p) {
                    out.push(p);
                }
            }
        };
        let mut stack = vec![self];
        while let Some(p) = stack.pop() {
            match p {
                Predicate::True => {}
                Predicate::Not(q) => stack.push(q),
                Predicate::And(qs) | Predicate::Or(qs) => stack.extend(qs.iter().rev()),
                Predicate::Chain(es, _) => es.iter().for_each(&mut add),
                Predicate::In(e, set, _) => {
                    add(e);
                    set.iter().for_each(&mut add);
                }
            }
        }
        out
    }
}
