//! Recursive-descent parser for the textual formula syntax.
//!
//! ```text
//! formula := quant | iff
//! quant   := ("forall" | "exists" | "exists>=" NAT) ident+ "." formula
//! iff     := imp ("<->" imp)*
//! imp     := disj ("->" imp)?
//! disj    := conj ("|" conj)*
//! conj    := neg ("&" neg)*
//! neg     := "~" neg | "true" | "false" | atom | "(" formula ")"
//! atom    := PRED "(" term ("," term)* ")" | term "=" term
//! ```
//!
//! As a convenience a quantifier may also appear where `neg` is expected; its
//! scope then extends as far to the right as possible. Identifiers bound by an
//! enclosing quantifier are variables, all other identifiers are constants.

use crate::ast::{Atom, Formula, Quantifier, Signature, Term};
use crate::error::SyntaxError;
use crate::normal::rename_apart;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Pred(String),
    Nat(u32),
    Forall,
    Exists,
    True,
    False,
    Ge,
    LParen,
    RParen,
    Comma,
    Dot,
    Tilde,
    Amp,
    Bar,
    Arrow,
    DArrow,
    Equals,
    End,
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Ident(s) | Tok::Pred(s) => format!("'{s}'"),
        Tok::Nat(n) => n.to_string(),
        Tok::End => "end of input".into(),
        other => format!("{other:?}"),
    }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, SyntaxError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    let err = |position: usize, expected: &str| SyntaxError::Parse {
        position,
        expected: expected.to_string(),
    };
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let tok = match c {
            b'(' => {
                i += 1;
                Tok::LParen
            }
            b')' => {
                i += 1;
                Tok::RParen
            }
            b',' => {
                i += 1;
                Tok::Comma
            }
            b'.' => {
                i += 1;
                Tok::Dot
            }
            b'~' => {
                i += 1;
                Tok::Tilde
            }
            b'&' => {
                i += 1;
                Tok::Amp
            }
            b'|' => {
                i += 1;
                Tok::Bar
            }
            b'=' => {
                i += 1;
                Tok::Equals
            }
            b'-' if bytes.get(i + 1) == Some(&b'>') => {
                i += 2;
                Tok::Arrow
            }
            b'<' if bytes.get(i + 1) == Some(&b'-') && bytes.get(i + 2) == Some(&b'>') => {
                i += 3;
                Tok::DArrow
            }
            b'>' if bytes.get(i + 1) == Some(&b'=') => {
                i += 2;
                Tok::Ge
            }
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n = text[start..i]
                    .parse::<u32>()
                    .map_err(|_| err(start, "a natural number"))?;
                Tok::Nat(n)
            }
            b'a'..=b'z' | b'A'..=b'Z' | b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                // generated names carry a `#k` suffix
                if i < bytes.len() && bytes[i] == b'#' {
                    let hash = i;
                    i += 1;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    if i == hash + 1 {
                        return Err(err(i, "digits after '#'"));
                    }
                }
                let word = &text[start..i];
                match word {
                    "forall" => Tok::Forall,
                    "exists" => Tok::Exists,
                    "true" => Tok::True,
                    "false" => Tok::False,
                    _ if c.is_ascii_uppercase() => Tok::Pred(word.to_string()),
                    _ => Tok::Ident(word.to_string()),
                }
            }
            _ => return Err(err(start, "a token")),
        };
        out.push((start, tok));
    }
    out.push((text.len(), Tok::End));
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    scope: Vec<String>,
    sig: Signature,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].1
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].1.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn fail<T>(&self, expected: &str) -> Result<T, SyntaxError> {
        Err(SyntaxError::Parse {
            position: self.offset(),
            expected: format!("{expected}, found {}", describe(self.peek())),
        })
    }

    fn expect(&mut self, t: Tok, what: &str) -> Result<(), SyntaxError> {
        if *self.peek() == t {
            self.bump();
            Ok(())
        } else {
            self.fail(what)
        }
    }

    fn formula(&mut self) -> Result<Formula, SyntaxError> {
        match self.peek() {
            Tok::Forall | Tok::Exists => self.quant(),
            _ => self.iff(),
        }
    }

    fn quant(&mut self) -> Result<Formula, SyntaxError> {
        let q = match self.bump() {
            Tok::Forall => Quantifier::Forall,
            Tok::Exists => {
                if *self.peek() == Tok::Ge {
                    self.bump();
                    match self.bump() {
                        Tok::Nat(n) if n >= 1 => Quantifier::AtLeast(n),
                        _ => {
                            self.pos -= 1;
                            return self.fail("a positive threshold");
                        }
                    }
                } else {
                    Quantifier::Exists
                }
            }
            _ => unreachable!("quant called on a non-quantifier token"),
        };
        let mut vars = Vec::new();
        while let Tok::Ident(name) = self.peek() {
            vars.push(name.clone());
            self.bump();
        }
        if vars.is_empty() {
            return self.fail("a bound variable");
        }
        self.expect(Tok::Dot, "'.'")?;
        let depth = self.scope.len();
        self.scope.extend(vars.iter().cloned());
        let body = self.formula();
        self.scope.truncate(depth);
        Ok(Formula::Quant {
            q,
            vars,
            body: Box::new(body?),
        })
    }

    fn iff(&mut self) -> Result<Formula, SyntaxError> {
        let mut left = self.imp()?;
        while *self.peek() == Tok::DArrow {
            self.bump();
            let right = self.imp()?;
            left = Formula::iff(left, right);
        }
        Ok(left)
    }

    fn imp(&mut self) -> Result<Formula, SyntaxError> {
        let left = self.disj()?;
        if *self.peek() == Tok::Arrow {
            self.bump();
            let right = self.imp()?;
            return Ok(Formula::implies(left, right));
        }
        Ok(left)
    }

    fn disj(&mut self) -> Result<Formula, SyntaxError> {
        let mut parts = vec![self.conj()?];
        while *self.peek() == Tok::Bar {
            self.bump();
            parts.push(self.conj()?);
        }
        Ok(Formula::or(parts))
    }

    fn conj(&mut self) -> Result<Formula, SyntaxError> {
        let mut parts = vec![self.neg()?];
        while *self.peek() == Tok::Amp {
            self.bump();
            parts.push(self.neg()?);
        }
        Ok(Formula::and(parts))
    }

    fn neg(&mut self) -> Result<Formula, SyntaxError> {
        match self.peek().clone() {
            Tok::Tilde => {
                self.bump();
                Ok(Formula::not(self.neg()?))
            }
            Tok::True => {
                self.bump();
                Ok(Formula::True)
            }
            Tok::False => {
                self.bump();
                Ok(Formula::False)
            }
            Tok::LParen => {
                self.bump();
                let f = self.formula()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(f)
            }
            Tok::Forall | Tok::Exists => self.quant(),
            Tok::Pred(name) => {
                self.bump();
                self.expect(Tok::LParen, "'('")?;
                let mut args = vec![self.term()?];
                while *self.peek() == Tok::Comma {
                    self.bump();
                    args.push(self.term()?);
                }
                self.expect(Tok::RParen, "',' or ')'")?;
                self.sig.declare(&name, args.len())?;
                Ok(Formula::pred(name, args))
            }
            Tok::Ident(_) => {
                let l = self.term()?;
                self.expect(Tok::Equals, "'='")?;
                let r = self.term()?;
                Ok(Formula::eq(l, r))
            }
            _ => self.fail("a formula"),
        }
    }

    fn term(&mut self) -> Result<Term, SyntaxError> {
        match self.peek().clone() {
            Tok::Ident(name) => {
                self.bump();
                if self.scope.contains(&name) {
                    Ok(Term::Var(name))
                } else {
                    self.sig.constants.insert(name.clone());
                    Ok(Term::Const(name))
                }
            }
            _ => self.fail("a term"),
        }
    }
}

/// Parses `text`; arities declared in `hint` are enforced. Returns the formula
/// with binders renamed apart and the signature of the formula.
pub fn parse_formula(
    text: &str,
    hint: Option<&Signature>,
) -> Result<(Formula, Signature), SyntaxError> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        scope: Vec::new(),
        sig: hint.cloned().unwrap_or_default(),
    };
    let f = p.formula()?;
    if *p.peek() != Tok::End {
        return p.fail("end of input");
    }
    let f = rename_apart(&f);
    let mut sig = Signature::default();
    sig.absorb(&f)?;
    Ok((f, sig))
}

/// Parses a formula and discards the signature.
pub fn parse(text: &str) -> Result<Formula, SyntaxError> {
    parse_formula(text, None).map(|(f, _)| f)
}

/// Parses text that consists of exactly one atom.
pub fn parse_atom(text: &str) -> Result<Atom, SyntaxError> {
    match parse(text)? {
        Formula::Atom(a) => Ok(a),
        _ => Err(SyntaxError::Parse {
            position: 0,
            expected: "a single atom".into(),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quantified_disjunction() {
        let (f, sig) = parse_formula("forall x. exists y. P(x) | Q(y)", None).unwrap();
        assert_eq!(
            f,
            Formula::forall(
                ["x"],
                Formula::exists(
                    ["y"],
                    Formula::or(vec![
                        Formula::pred("P", vec![Term::var("x")]),
                        Formula::pred("Q", vec![Term::var("y")]),
                    ])
                )
            )
        );
        assert_eq!(sig.predicates.len(), 2);
        assert!(sig.constants.is_empty());
    }

    #[test]
    fn arity_conflict() {
        assert_eq!(
            parse("P(x) & P(x, y)"),
            Err(SyntaxError::ArityMismatch {
                symbol: "P".into(),
                seen: 2,
                declared: 1
            })
        );
    }

    #[test]
    fn hint_arities_are_enforced() {
        let hint = Signature::new().with_predicate("R", 2);
        assert!(matches!(
            parse_formula("R(a)", Some(&hint)),
            Err(SyntaxError::ArityMismatch { .. })
        ));
    }

    #[test]
    fn unbound_identifiers_are_constants() {
        let (f, sig) = parse_formula("exists x. R(x, c) & x = d", None).unwrap();
        assert!(f.is_sentence());
        assert_eq!(sig.constants.iter().cloned().collect::<Vec<_>>(), ["c", "d"]);
    }

    #[test]
    fn precedence() {
        let f = parse("~P(a) & Q(a) | R(a) -> S(a) <-> T(a)").unwrap();
        let p = |n: &str| Formula::pred(n, vec![Term::cnst("a")]);
        let expected = Formula::iff(
            Formula::implies(
                Formula::or(vec![Formula::and(vec![Formula::not(p("P")), p("Q")]), p("R")]),
                p("S"),
            ),
            p("T"),
        );
        assert_eq!(f, expected);
    }

    #[test]
    fn implication_is_right_associative() {
        let f = parse("P(a) -> Q(a) -> R(a)").unwrap();
        let p = |n: &str| Formula::pred(n, vec![Term::cnst("a")]);
        assert_eq!(f, Formula::implies(p("P"), Formula::implies(p("Q"), p("R"))));
    }

    #[test]
    fn counting_quantifier() {
        let f = parse("exists>=2 y. P(y)").unwrap();
        assert!(matches!(f, Formula::Quant { q: Quantifier::AtLeast(2), .. }));
        assert!(parse("exists>=0 y. P(y)").is_err());
    }

    #[test]
    fn repeated_binders_are_renamed() {
        let f = parse("(forall x. P(x)) & exists x. Q(x)").unwrap();
        assert_eq!(f.to_string(), "(forall x. P(x)) & (exists x#1. Q(x#1))");
    }

    #[test]
    fn binder_clashing_with_constant_is_renamed() {
        let f = parse("P(x) & forall x. Q(x)").unwrap();
        assert_eq!(f.to_string(), "P(x) & (forall x#1. Q(x#1))");
    }

    #[test]
    fn error_position() {
        match parse("P(a) & & Q(b)") {
            Err(SyntaxError::Parse { position, .. }) => assert_eq!(position, 7),
            other => panic!("unexpected {other:?}"),
        }
        assert!(parse("P(a").is_err());
        assert!(parse("P(a) Q(b)").is_err());
        assert!(parse("x#").is_err());
    }

    #[test]
    fn generated_names_parse() {
        let f = parse("forall x#3. P(x#3, c#1)").unwrap();
        assert_eq!(f.constants().into_iter().collect::<Vec<_>>(), ["c#1"]);
    }
}
