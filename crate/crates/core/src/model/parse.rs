//! Parser for the `.model` text format.
//!
//! ```text
//! # comment
//! species M P;
//! parameter k = 0.5;
//! reaction tx: 0 -> M @ mass(k);
//! reaction dim: 2 P -> 0 @ mass(k / 10);
//! reaction act: M -> M + P @ poly(k * (50 - P));
//! ```
//!
//! `mass(rate)` applies the mass-action law of the left-hand side.
//! `poly(expr)` takes an arbitrary polynomial of degree ≤ 2 in the species
//! copy numbers and splits it into signed elementary terms.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{Pow, Signed, ToPrimitive, Zero};

use super::{normalize_propensity, PropensityKind, Reaction, ReactionNetwork, SignedTerm, Species};
use crate::error::ModelError;
use crate::moments::{coeff_from_f64, coeff_to_f64, LinearForm, Polynomial};
use crate::Coeff;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Num(Coeff),
    Sym(&'static str),
    Eof,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

const SYMBOLS: [&str; 15] = [
    "->", ";", "=", ":", "+", "-", "*", "/", "^", "(", ")", "@", ",", "[", "]",
];

fn lex(src: &str) -> Result<Vec<Token>, ModelError> {
    let mut out = Vec::new();
    for (lineno, raw) in src.lines().enumerate() {
        let line = lineno + 1;
        let text = match raw.find('#') {
            Some(p) => &raw[..p],
            None => raw,
        };
        let chars: Vec<char> = text.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let col = i + 1;
            if c.is_whitespace() {
                i += 1;
                continue;
            }
            if c.is_ascii_alphabetic() || c == '_' {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push(Token {
                    tok: Tok::Ident(chars[start..i].iter().collect()),
                    line,
                    col,
                });
                continue;
            }
            if c.is_ascii_digit() || (c == '.' && chars.get(i + 1).is_some_and(|d| d.is_ascii_digit())) {
                let (value, next) = lex_number(&chars, i).ok_or_else(|| ModelError::Syntax {
                    line,
                    col,
                    msg: "malformed number".into(),
                })?;
                out.push(Token {
                    tok: Tok::Num(value),
                    line,
                    col,
                });
                i = next;
                continue;
            }
            let rest: String = chars[i..].iter().take(2).collect();
            match SYMBOLS.iter().find(|s| rest.starts_with(**s)) {
                Some(s) => {
                    out.push(Token {
                        tok: Tok::Sym(s),
                        line,
                        col,
                    });
                    i += s.len();
                }
                None => {
                    return Err(ModelError::Syntax {
                        line,
                        col,
                        msg: format!("unexpected character '{c}'"),
                    })
                }
            }
        }
    }
    let line = src.lines().count().max(1);
    out.push(Token {
        tok: Tok::Eof,
        line,
        col: 1,
    });
    Ok(out)
}

/// Decimal literal as an exact rational: `0.2` is `1/5`, not the nearest float.
fn lex_number(chars: &[char], start: usize) -> Option<(Coeff, usize)> {
    let mut i = start;
    let mut digits = String::new();
    let mut frac_len: i64 = 0;
    while i < chars.len() && chars[i].is_ascii_digit() {
        digits.push(chars[i]);
        i += 1;
    }
    if i < chars.len() && chars[i] == '.' {
        i += 1;
        while i < chars.len() && chars[i].is_ascii_digit() {
            digits.push(chars[i]);
            frac_len += 1;
            i += 1;
        }
    }
    let mut exp: i64 = 0;
    if i < chars.len() && (chars[i] == 'e' || chars[i] == 'E') {
        let mut j = i + 1;
        let mut sign = 1;
        if j < chars.len() && (chars[j] == '+' || chars[j] == '-') {
            if chars[j] == '-' {
                sign = -1;
            }
            j += 1;
        }
        let estart = j;
        while j < chars.len() && chars[j].is_ascii_digit() {
            j += 1;
        }
        if j > estart {
            let e: String = chars[estart..j].iter().collect();
            exp = sign * e.parse::<i64>().ok()?;
            i = j;
        }
    }
    if digits.is_empty() {
        return None;
    }
    let mantissa: BigInt = digits.parse().ok()?;
    let shift = exp - frac_len;
    let ten = BigInt::from(10);
    let value = if shift >= 0 {
        Coeff::from_integer(mantissa * Pow::pow(&ten, shift as u64))
    } else {
        Coeff::new(mantissa, Pow::pow(&ten, (-shift) as u64))
    };
    Some((value, i))
}

#[derive(Clone, Debug)]
enum Expr {
    Num(Coeff),
    Ident { name: String, line: usize, col: usize },
    Neg(Box<Expr>),
    Bin { op: char, lhs: Box<Expr>, rhs: Box<Expr>, line: usize, col: usize },
    Call { name: String, arg: Box<Expr>, line: usize, col: usize },
    Expect { arg: Box<Expr>, line: usize, col: usize },
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn next(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ModelError> {
        let t = self.peek();
        Err(ModelError::Syntax {
            line: t.line,
            col: t.col,
            msg: msg.into(),
        })
    }

    fn is_sym(&self, s: &str) -> bool {
        matches!(&self.peek().tok, Tok::Sym(x) if *x == s)
    }

    fn expect_sym(&mut self, s: &str) -> Result<(), ModelError> {
        if self.is_sym(s) {
            self.next();
            Ok(())
        } else {
            self.err(format!("expected '{s}'"))
        }
    }

    fn ident(&mut self) -> Result<(String, usize, usize), ModelError> {
        match self.peek().tok.clone() {
            Tok::Ident(s) => {
                let t = self.next();
                Ok((s, t.line, t.col))
            }
            _ => self.err("expected identifier"),
        }
    }

    fn expr(&mut self) -> Result<Expr, ModelError> {
        let mut lhs = self.term()?;
        while self.is_sym("+") || self.is_sym("-") {
            let t = self.next();
            let op = if t.tok == Tok::Sym("+") { '+' } else { '-' };
            let rhs = self.term()?;
            lhs = Expr::Bin {
                op,
                lhs: Box::new(lhs),
                rhs: Box::new(rhs),
                line: t.line,
                col: t.col,
            };
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expr, ModelError> {
        let mut lhs = self.unary()?;
        while self.is_sym("*") || self.is_sym("/") {
            let t = self.next();
            let op = if t.tok == Tok::Sym("*") { '*' } else { '/' };
            let rhs = self.unary()?;
            lhs = Expr::Bin {
                op,
                lhs: Box::new(lhs),
                rhs: Box::new(rhs),
                line: t.line,
                col: t.col,
            };
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr, ModelError> {
        if self.is_sym("-") {
            self.next();
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        if self.is_sym("+") {
            self.next();
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ModelError> {
        let base = self.atom()?;
        if self.is_sym("^") {
            let t = self.next();
            let exp = self.unary()?;
            return Ok(Expr::Bin {
                op: '^',
                lhs: Box::new(base),
                rhs: Box::new(exp),
                line: t.line,
                col: t.col,
            });
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, ModelError> {
        let t = self.peek().clone();
        match t.tok {
            Tok::Num(v) => {
                self.next();
                Ok(Expr::Num(v))
            }
            Tok::Ident(name) => {
                self.next();
                if name == "E" && self.is_sym("[") {
                    self.next();
                    let arg = self.expr()?;
                    self.expect_sym("]")?;
                    return Ok(Expr::Expect {
                        arg: Box::new(arg),
                        line: t.line,
                        col: t.col,
                    });
                }
                if self.is_sym("(") {
                    self.next();
                    let arg = self.expr()?;
                    self.expect_sym(")")?;
                    return Ok(Expr::Call {
                        name,
                        arg: Box::new(arg),
                        line: t.line,
                        col: t.col,
                    });
                }
                Ok(Expr::Ident {
                    name,
                    line: t.line,
                    col: t.col,
                })
            }
            Tok::Sym("(") => {
                self.next();
                let e = self.expr()?;
                self.expect_sym(")")?;
                Ok(e)
            }
            _ => self.err("expected expression"),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Scope {
    /// Parameters and numbers only.
    Constant,
    /// Species allowed.
    Propensity,
    /// Species allowed only inside `E[...]`.
    Objective,
}

struct Env<'a> {
    species: &'a [Species],
    params: &'a BTreeMap<String, Coeff>,
}

/// Evaluated expression plus whether it involves an expectation.
struct Value {
    poly: Polynomial,
    expect: bool,
}

impl Env<'_> {
    fn n(&self) -> usize {
        self.species.len().max(1)
    }

    fn eval(&self, e: &Expr, scope: Scope, inside_e: bool) -> Result<Value, ModelError> {
        let n = self.n();
        let plain = |poly| Value { poly, expect: false };
        match e {
            Expr::Num(v) => Ok(plain(Polynomial::constant(n, v.clone()))),
            Expr::Ident { name, line, col } => {
                if let Some(v) = self.params.get(name) {
                    return Ok(plain(Polynomial::constant(n, v.clone())));
                }
                if let Some(s) = self.species.iter().find(|s| &s.name == name) {
                    return match scope {
                        Scope::Propensity => Ok(plain(Polynomial::var(n, s.index))),
                        Scope::Objective if inside_e => Ok(plain(Polynomial::var(n, s.index))),
                        Scope::Objective => Err(ModelError::Syntax {
                            line: *line,
                            col: *col,
                            msg: format!("species '{name}' must appear inside E[...]"),
                        }),
                        Scope::Constant => Err(ModelError::NonConstantCoefficient {
                            line: *line,
                            col: *col,
                        }),
                    };
                }
                Err(ModelError::UnknownSymbol {
                    name: name.clone(),
                    line: *line,
                    col: *col,
                })
            }
            Expr::Neg(a) => {
                let v = self.eval(a, scope, inside_e)?;
                Ok(Value {
                    poly: -&v.poly,
                    expect: v.expect,
                })
            }
            Expr::Bin { op, lhs, rhs, line, col } => {
                let a = self.eval(lhs, scope, inside_e)?;
                let b = self.eval(rhs, scope, inside_e)?;
                let non_poly = |msg: &str| ModelError::NonPolynomial {
                    line: *line,
                    col: *col,
                    msg: msg.into(),
                };
                match op {
                    '+' | '-' => {
                        if a.expect != b.expect && !(a.poly.is_zero() || b.poly.is_zero()) {
                            return Err(non_poly("objective mixes constants with expectations"));
                        }
                        let poly = if *op == '+' { &a.poly + &b.poly } else { &a.poly - &b.poly };
                        Ok(Value {
                            poly,
                            expect: a.expect || b.expect,
                        })
                    }
                    '*' => {
                        if a.expect && b.expect {
                            return Err(non_poly("product of expectations is not linear"));
                        }
                        Ok(Value {
                            poly: &a.poly * &b.poly,
                            expect: a.expect || b.expect,
                        })
                    }
                    '/' => {
                        if b.expect {
                            return Err(non_poly("division by an expectation"));
                        }
                        let d = b
                            .poly
                            .as_constant()
                            .ok_or_else(|| non_poly("division by a species expression"))?;
                        if d.is_zero() {
                            return Err(non_poly("division by zero"));
                        }
                        Ok(Value {
                            poly: a.poly.scale(&d.recip()),
                            expect: a.expect,
                        })
                    }
                    '^' => {
                        let e = b
                            .poly
                            .as_constant()
                            .filter(|c| c.is_integer() && !c.is_negative())
                            .and_then(|c| c.to_integer().to_u32())
                            .ok_or_else(|| non_poly("exponent must be a non-negative integer"))?;
                        if a.expect && e != 1 {
                            return Err(non_poly("power of an expectation is not linear"));
                        }
                        Ok(Value {
                            poly: a.poly.pow(e),
                            expect: a.expect,
                        })
                    }
                    _ => unreachable!(),
                }
            }
            Expr::Call { name, arg, line, col } => {
                let v = self.eval(arg, Scope::Constant, inside_e)?;
                let x = v.poly.as_constant().ok_or(ModelError::NonConstantCoefficient {
                    line: *line,
                    col: *col,
                })?;
                let xf = coeff_to_f64(&x);
                let y = match name.as_str() {
                    "ln" => xf.ln(),
                    "exp" => xf.exp(),
                    "sqrt" => xf.sqrt(),
                    _ => {
                        return Err(ModelError::UnknownSymbol {
                            name: name.clone(),
                            line: *line,
                            col: *col,
                        })
                    }
                };
                let c = coeff_from_f64(y).ok_or_else(|| ModelError::NonPolynomial {
                    line: *line,
                    col: *col,
                    msg: format!("{name}({xf}) is not finite"),
                })?;
                Ok(plain(Polynomial::constant(n, c)))
            }
            Expr::Expect { arg, line, col } => {
                if scope != Scope::Objective || inside_e {
                    return Err(ModelError::Syntax {
                        line: *line,
                        col: *col,
                        msg: "E[...] is only allowed at the top level of an objective".into(),
                    });
                }
                let v = self.eval(arg, scope, true)?;
                Ok(Value {
                    poly: v.poly,
                    expect: true,
                })
            }
        }
    }
}

fn side(p: &mut Parser, species: &[Species]) -> Result<Vec<(usize, u32)>, ModelError> {
    let mut out: BTreeMap<usize, u32> = BTreeMap::new();
    if let Tok::Num(v) = &p.peek().tok {
        if v.is_zero() {
            p.next();
            return Ok(vec![]);
        }
    }
    loop {
        let mut mult = 1u32;
        if let Tok::Num(v) = p.peek().tok.clone() {
            mult = v
                .is_integer()
                .then(|| v.to_integer().to_u32())
                .flatten()
                .filter(|&m| m > 0)
                .map_or_else(|| p.err("multiplicity must be a positive integer"), Ok)?;
            p.next();
        }
        let (name, line, col) = p.ident()?;
        let idx = species
            .iter()
            .find(|s| s.name == name)
            .map(|s| s.index)
            .ok_or(ModelError::UnknownSymbol { name, line, col })?;
        *out.entry(idx).or_insert(0) += mult;
        if p.is_sym("+") {
            p.next();
        } else {
            break;
        }
    }
    Ok(out.into_iter().collect())
}

fn mass_action_kind(reactants: &[(usize, u32)]) -> Result<PropensityKind, ModelError> {
    match reactants {
        [] => Ok(PropensityKind::ZeroOrder),
        [(j, 1)] => Ok(PropensityKind::Unimolecular(*j)),
        [(j, 2)] => Ok(PropensityKind::HomoBimolecular(*j)),
        [(j, 1), (k, 1)] => Ok(PropensityKind::HeteroBimolecular(*j.min(k), *j.max(k))),
        other => Err(ModelError::DegreeTooHigh(other.iter().map(|(_, m)| m).sum())),
    }
}

pub(super) fn mass_kind_matches(reactants: &[(usize, u32)], kind: PropensityKind) -> bool {
    mass_action_kind(reactants).is_ok_and(|k| k == kind)
}

/// Parses model source into a fully resolved network.
pub fn parse_model(src: &str) -> Result<ReactionNetwork, ModelError> {
    let mut p = Parser { toks: lex(src)?, pos: 0 };
    let mut species: Vec<Species> = Vec::new();
    let mut params: BTreeMap<String, Coeff> = BTreeMap::new();
    let mut reactions: Vec<Reaction> = Vec::new();

    let taken = |name: &str, species: &[Species], params: &BTreeMap<String, Coeff>, reactions: &[Reaction]| {
        species.iter().any(|s| s.name == name)
            || params.contains_key(name)
            || reactions.iter().any(|r| r.label == name)
    };

    loop {
        let t = p.peek().clone();
        let kw = match &t.tok {
            Tok::Eof => break,
            Tok::Ident(k) => k.clone(),
            _ => return p.err("expected 'species', 'parameter' or 'reaction'"),
        };
        p.next();
        match kw.as_str() {
            "species" => {
                loop {
                    let (name, _, _) = p.ident()?;
                    if taken(&name, &species, &params, &reactions) {
                        return Err(ModelError::Duplicate(name));
                    }
                    let index = species.len();
                    species.push(Species { name, index });
                    if p.is_sym(",") {
                        p.next();
                    }
                    if p.is_sym(";") {
                        break;
                    }
                }
                p.expect_sym(";")?;
            }
            "parameter" => {
                let (name, _, _) = p.ident()?;
                if taken(&name, &species, &params, &reactions) {
                    return Err(ModelError::Duplicate(name));
                }
                p.expect_sym("=")?;
                let e = p.expr()?;
                let env = Env {
                    species: &species,
                    params: &params,
                };
                let v = env.eval(&e, Scope::Constant, false)?;
                let c = v.poly.as_constant().expect("constant scope yields constants");
                p.expect_sym(";")?;
                params.insert(name, c);
            }
            "reaction" => {
                let (label, _, _) = p.ident()?;
                if reactions.iter().any(|r| r.label == label) {
                    return Err(ModelError::Duplicate(label));
                }
                p.expect_sym(":")?;
                let lhs = side(&mut p, &species)?;
                p.expect_sym("->")?;
                let rhs = side(&mut p, &species)?;
                p.expect_sym("@")?;
                let (law, line, col) = p.ident()?;
                p.expect_sym("(")?;
                let e = p.expr()?;
                p.expect_sym(")")?;
                p.expect_sym(";")?;

                let env = Env {
                    species: &species,
                    params: &params,
                };
                let terms = match law.as_str() {
                    "mass" => {
                        let v = env.eval(&e, Scope::Constant, false)?;
                        let rate = v.poly.as_constant().expect("constant scope yields constants");
                        if !rate.is_positive() {
                            return Err(ModelError::NegativeRate(label));
                        }
                        vec![SignedTerm::plus(mass_action_kind(&lhs)?, rate)]
                    }
                    "poly" => {
                        let v = env.eval(&e, Scope::Propensity, false)?;
                        let terms = normalize_propensity(&v.poly)?;
                        if terms.is_empty() {
                            return Err(ModelError::NegativeRate(label));
                        }
                        terms
                    }
                    other => {
                        return Err(ModelError::Syntax {
                            line,
                            col,
                            msg: format!("unknown rate law '{other}', expected mass or poly"),
                        })
                    }
                };
                let mut stoich = vec![0i64; species.len()];
                for (j, m) in &lhs {
                    stoich[*j] -= *m as i64;
                }
                for (j, m) in &rhs {
                    stoich[*j] += *m as i64;
                }
                reactions.push(Reaction {
                    label,
                    reactants: lhs,
                    products: rhs,
                    stoich,
                    terms,
                });
            }
            other => {
                return Err(ModelError::Syntax {
                    line: t.line,
                    col: t.col,
                    msg: format!("unknown statement '{other}'"),
                })
            }
        }
    }
    ReactionNetwork::new(species, reactions, params)
}

/// Parses an objective such as `E[P2]` or `E[M*P] - 2*E[M]` into a
/// linear form over moments.
pub fn parse_objective(net: &ReactionNetwork, src: &str) -> Result<LinearForm, ModelError> {
    let mut p = Parser { toks: lex(src)?, pos: 0 };
    let e = p.expr()?;
    if p.peek().tok != Tok::Eof {
        return p.err("trailing input after objective");
    }
    let env = Env {
        species: &net.species,
        params: &net.parameters,
    };
    let v = env.eval(&e, Scope::Objective, false)?;
    if !v.expect && !v.poly.is_zero() {
        return Err(ModelError::Syntax {
            line: 1,
            col: 1,
            msg: "objective must contain at least one E[...]".into(),
        });
    }
    Ok(LinearForm::from_polynomial(&v.poly))
}
