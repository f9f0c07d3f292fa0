//! Virtual-character expressions for the identity catalog.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary ('*' unary)*              '*' is the tensor product
//! unary  := '-' unary | atom
//! atom   := INT | 'V' | '{' label (',' label)* '}' | '(' expr ')'
//!         | 'S' '(' int ',' int ')'         irreducible S_{a,b}
//!         | 'M' '(' locus ',' int ',' int ')'  ledger module M_{j,p}
//!         | 'sym' '(' int ',' expr ')' | 'ext' '(' int ',' expr ')'
//!         | 'hook' '(' int ',' int ',' expr ')' | 'dual' '(' expr ')'
//!         | 'sign' '(' int ')'               (-1)^n
//!         | 'sum' '(' IDENT '=' int '..' int ',' expr ')'
//! int    := integer arithmetic over literals and bound variables
//! ```

use std::collections::BTreeMap;

use thiserror::Error;

use crate::loci::LocusId;
use crate::repcalc::{
    ext_power, fundamental, hook_schur, sym_power, weyl_character, Character, DominantWeight,
    RepError,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExprError {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("unbound variable `{0}`")]
    Unbound(String),
    #[error("argument out of range in {0}")]
    Range(String),
    #[error(transparent)]
    Rep(#[from] RepError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IntExpr {
    Lit(i64),
    Var(String),
    Neg(Box<IntExpr>),
    Add(Box<IntExpr>, Box<IntExpr>),
    Sub(Box<IntExpr>, Box<IntExpr>),
    Mul(Box<IntExpr>, Box<IntExpr>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CharExpr {
    Scalar(i64),
    Fundamental,
    Labels(Vec<DominantWeight>),
    Irrep(IntExpr, IntExpr),
    Module(LocusId, IntExpr, IntExpr),
    Sym(IntExpr, Box<CharExpr>),
    Ext(IntExpr, Box<CharExpr>),
    Hook(IntExpr, IntExpr, Box<CharExpr>),
    Dual(Box<CharExpr>),
    Sign(IntExpr),
    Sum {
        var: String,
        from: IntExpr,
        to: IntExpr,
        body: Box<CharExpr>,
    },
    Neg(Box<CharExpr>),
    Add(Box<CharExpr>, Box<CharExpr>),
    Sub(Box<CharExpr>, Box<CharExpr>),
    Tensor(Box<CharExpr>, Box<CharExpr>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Num(String),
    Ident(String),
    Sym(char),
    Range,
}

fn tokenize(src: &str) -> Result<Vec<(usize, Tok)>, ExprError> {
    let b = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < b.len() {
        let c = b[i] as char;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let s = i;
            while i < b.len() && b[i].is_ascii_digit() {
                i += 1;
            }
            out.push((s, Tok::Num(src[s..i].to_string())));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let s = i;
            while i < b.len() && (b[i].is_ascii_alphanumeric() || b[i] == b'_') {
                i += 1;
            }
            out.push((s, Tok::Ident(src[s..i].to_string())));
        } else if c == '.' && b.get(i + 1) == Some(&b'.') {
            out.push((i, Tok::Range));
            i += 2;
        } else if "(){},+-*=".contains(c) {
            out.push((i, Tok::Sym(c)));
            i += 1;
        } else {
            return Err(ExprError::Parse {
                pos: i,
                msg: format!("unexpected `{c}`"),
            });
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.1)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |t| t.0)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ExprError> {
        Err(ExprError::Parse {
            pos: self.here(),
            msg: msg.into(),
        })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ExprError> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected `{c}`"))
        }
    }

    fn ident(&mut self) -> Result<String, ExprError> {
        match self.peek().cloned() {
            Some(Tok::Ident(s)) => {
                self.pos += 1;
                Ok(s)
            }
            _ => self.err("expected identifier"),
        }
    }

    fn int_expr(&mut self) -> Result<IntExpr, ExprError> {
        let mut lhs = self.int_term()?;
        loop {
            if self.eat('+') {
                lhs = IntExpr::Add(Box::new(lhs), Box::new(self.int_term()?));
            } else if self.eat('-') {
                lhs = IntExpr::Sub(Box::new(lhs), Box::new(self.int_term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn int_term(&mut self) -> Result<IntExpr, ExprError> {
        let mut lhs = self.int_factor()?;
        while self.eat('*') {
            lhs = IntExpr::Mul(Box::new(lhs), Box::new(self.int_factor()?));
        }
        Ok(lhs)
    }

    fn int_factor(&mut self) -> Result<IntExpr, ExprError> {
        if self.eat('-') {
            return Ok(IntExpr::Neg(Box::new(self.int_factor()?)));
        }
        if self.eat('(') {
            let e = self.int_expr()?;
            self.expect(')')?;
            return Ok(e);
        }
        match self.peek().cloned() {
            Some(Tok::Num(s)) => {
                self.pos += 1;
                s.parse()
                    .map(IntExpr::Lit)
                    .or_else(|_| self.err("integer too large"))
            }
            Some(Tok::Ident(s)) => {
                self.pos += 1;
                Ok(IntExpr::Var(s))
            }
            _ => self.err("expected integer expression"),
        }
    }

    fn expr(&mut self) -> Result<CharExpr, ExprError> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = CharExpr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = CharExpr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<CharExpr, ExprError> {
        let mut lhs = self.unary()?;
        while self.eat('*') {
            lhs = CharExpr::Tensor(Box::new(lhs), Box::new(self.unary()?));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<CharExpr, ExprError> {
        if self.eat('-') {
            return Ok(CharExpr::Neg(Box::new(self.unary()?)));
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<CharExpr, ExprError> {
        if self.eat('(') {
            let e = self.expr()?;
            self.expect(')')?;
            return Ok(e);
        }
        if self.eat('{') {
            let mut labels = Vec::new();
            if !self.eat('}') {
                loop {
                    match self.peek().cloned() {
                        Some(Tok::Num(s)) => {
                            let w = s
                                .parse::<DominantWeight>()
                                .or_else(|_| self.err(format!("bad label `{s}`")))?;
                            self.pos += 1;
                            labels.push(w);
                        }
                        _ => return self.err("expected two-digit label"),
                    }
                    if self.eat('}') {
                        break;
                    }
                    self.expect(',')?;
                }
            }
            return Ok(CharExpr::Labels(labels));
        }
        let name = match self.peek().cloned() {
            Some(Tok::Num(s)) => {
                self.pos += 1;
                return s
                    .parse()
                    .map(CharExpr::Scalar)
                    .or_else(|_| self.err("integer too large"));
            }
            Some(Tok::Ident(s)) => s,
            _ => return self.err("expected character expression"),
        };
        self.pos += 1;
        if name == "V" {
            return Ok(CharExpr::Fundamental);
        }
        self.expect('(')?;
        let e = match name.as_str() {
            "S" => {
                let a = self.int_expr()?;
                self.expect(',')?;
                CharExpr::Irrep(a, self.int_expr()?)
            }
            "M" => {
                let at = self.here();
                let locus = self
                    .ident()?
                    .parse::<LocusId>()
                    .map_err(|e| ExprError::Parse {
                        pos: at,
                        msg: e.to_string(),
                    })?;
                self.expect(',')?;
                let j = self.int_expr()?;
                self.expect(',')?;
                CharExpr::Module(locus, j, self.int_expr()?)
            }
            "sym" | "ext" => {
                let k = self.int_expr()?;
                self.expect(',')?;
                let body = Box::new(self.expr()?);
                if name == "sym" {
                    CharExpr::Sym(k, body)
                } else {
                    CharExpr::Ext(k, body)
                }
            }
            "hook" => {
                let a = self.int_expr()?;
                self.expect(',')?;
                let b = self.int_expr()?;
                self.expect(',')?;
                CharExpr::Hook(a, b, Box::new(self.expr()?))
            }
            "dual" => CharExpr::Dual(Box::new(self.expr()?)),
            "sign" => CharExpr::Sign(self.int_expr()?),
            "sum" => {
                let var = self.ident()?;
                self.expect('=')?;
                let from = self.int_expr()?;
                if self.peek() != Some(&Tok::Range) {
                    return self.err("expected `..`");
                }
                self.pos += 1;
                let to = self.int_expr()?;
                self.expect(',')?;
                CharExpr::Sum {
                    var,
                    from,
                    to,
                    body: Box::new(self.expr()?),
                }
            }
            other => {
                self.pos -= 2;
                return self.err(format!("unknown function `{other}`"));
            }
        };
        self.expect(')')?;
        Ok(e)
    }
}

pub fn parse(src: &str) -> Result<CharExpr, ExprError> {
    let mut p = Parser {
        toks: tokenize(src)?,
        pos: 0,
        end: src.len(),
    };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(e)
}

pub type Env = BTreeMap<String, i64>;

impl IntExpr {
    pub fn eval(&self, env: &Env) -> Result<i64, ExprError> {
        Ok(match self {
            IntExpr::Lit(v) => *v,
            IntExpr::Var(s) => *env.get(s).ok_or_else(|| ExprError::Unbound(s.clone()))?,
            IntExpr::Neg(a) => -a.eval(env)?,
            IntExpr::Add(a, b) => a.eval(env)? + b.eval(env)?,
            IntExpr::Sub(a, b) => a.eval(env)? - b.eval(env)?,
            IntExpr::Mul(a, b) => a.eval(env)? * b.eval(env)?,
        })
    }
}

fn nonneg(v: i64, what: &str) -> Result<u32, ExprError> {
    u32::try_from(v).map_err(|_| ExprError::Range(what.to_string()))
}

impl CharExpr {
    /// `modules` resolves ledger references `M(locus, j, p)`.
    pub fn eval(
        &self,
        env: &mut Env,
        modules: &dyn Fn(LocusId, i64, i64) -> Character,
    ) -> Result<Character, ExprError> {
        Ok(match self {
            CharExpr::Scalar(n) => Character::scalar(*n),
            CharExpr::Fundamental => fundamental(),
            CharExpr::Labels(ls) => ls
                .iter()
                .fold(Character::zero(), |acc, w| acc.add(&weyl_character(*w))),
            CharExpr::Irrep(a, b) => {
                let (a, b) = (nonneg(a.eval(env)?, "S")?, nonneg(b.eval(env)?, "S")?);
                weyl_character(DominantWeight::new(a, b)?)
            }
            CharExpr::Module(l, j, p) => modules(*l, j.eval(env)?, p.eval(env)?),
            CharExpr::Sym(k, c) => sym_power(nonneg(k.eval(env)?, "sym")?, &c.eval(env, modules)?)?,
            CharExpr::Ext(k, c) => ext_power(nonneg(k.eval(env)?, "ext")?, &c.eval(env, modules)?),
            CharExpr::Hook(a, b, c) => {
                let a = nonneg(a.eval(env)?, "hook")?;
                if a == 0 {
                    return Err(ExprError::Range("hook".into()));
                }
                hook_schur(a, nonneg(b.eval(env)?, "hook")?, &c.eval(env, modules)?)?
            }
            CharExpr::Dual(c) => c.eval(env, modules)?.dual(),
            CharExpr::Sign(n) => Character::scalar(if n.eval(env)?.rem_euclid(2) == 0 {
                1
            } else {
                -1
            }),
            CharExpr::Sum {
                var,
                from,
                to,
                body,
            } => {
                let (lo, hi) = (from.eval(env)?, to.eval(env)?);
                let saved = env.get(var).copied();
                let mut acc = Character::zero();
                for v in lo..=hi {
                    env.insert(var.clone(), v);
                    acc = acc.add(&body.eval(env, modules)?);
                }
                match saved {
                    Some(s) => env.insert(var.clone(), s),
                    None => env.remove(var),
                };
                acc
            }
            CharExpr::Neg(c) => c.eval(env, modules)?.scale(-1),
            CharExpr::Add(a, b) => a.eval(env, modules)?.add(&b.eval(env, modules)?),
            CharExpr::Sub(a, b) => a.eval(env, modules)?.sub(&b.eval(env, modules)?),
            CharExpr::Tensor(a, b) => a.eval(env, modules)?.tensor(&b.eval(env, modules)?),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::repcalc::decompose;

    fn eval(src: &str) -> String {
        let none = |_: LocusId, _: i64, _: i64| Character::zero();
        decompose(&parse(src).unwrap().eval(&mut Env::new(), &none).unwrap())
            .unwrap()
            .to_string()
    }

    #[test]
    fn arithmetic() {
        assert_eq!(eval("{21}*{21}"), "{42,33,30,2*21,00}");
        assert_eq!(eval("2*{72} - {72}"), "{72}");
        assert_eq!(eval("dual(S(3,0))"), "{33}");
        assert_eq!(eval("sym(2, V)"), "{20}");
        assert_eq!(eval("sum(k = 1..3, sign(k) * S(k,0))"), "{-1*30,20,-1*10}");
        assert_eq!(eval("sym(2,S(3,0)) - S(6,0)"), "{42}");
        assert_eq!(eval("hook(1, 1, V)"), "{11}");
    }

    #[test]
    fn errors() {
        assert!(matches!(parse("S(1,"), Err(ExprError::Parse { .. })));
        assert!(matches!(parse("{5}"), Err(ExprError::Parse { pos: 1, .. })));
        assert!(matches!(
            parse("foo(1)"),
            Err(ExprError::Parse { pos: 0, .. })
        ));
        assert!(matches!(
            parse("M(cusp,1,1)"),
            Err(ExprError::Parse { pos: 2, .. })
        ));
        let none = |_: LocusId, _: i64, _: i64| Character::zero();
        assert_eq!(
            parse("S(k,0)").unwrap().eval(&mut Env::new(), &none),
            Err(ExprError::Unbound("k".into()))
        );
        assert!(parse("S(1,2)")
            .unwrap()
            .eval(&mut Env::new(), &none)
            .is_err());
    }
}
