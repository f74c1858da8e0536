//! Formulae and sequents of the Lambek calculus with a relevant modality.
//!
//! Surface syntax is ASCII: `\` and `/` for the two implications, `!` for the
//! modality, `,` for the (associative) product and `=>` for the turnstile.
//! `⊢` is accepted as an alias for `=>`. The unit is written `()`; users never
//! need it in sequents because an empty antecedent already denotes it.
//!
//! Precedence: `!` binds tightest, then `\` and `/`, then `,`. The slashes are
//! non-associative, so `A\B/C` must be parenthesised.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// A formula (type) of the calculus.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Atom(String),
    Unit,
    Product(Box<Formula>, Box<Formula>),
    /// `A\B`: consumes an `A` on its left, yields `B`.
    Under(Box<Formula>, Box<Formula>),
    /// `B/A`: consumes an `A` on its right, yields `B`. Fields are `(B, A)`.
    Over(Box<Formula>, Box<Formula>),
    Bang(Box<Formula>),
}

impl Formula {
    pub fn atom(name: impl Into<String>) -> Self {
        Formula::Atom(name.into())
    }

    pub fn product(left: Formula, right: Formula) -> Self {
        Formula::Product(Box::new(left), Box::new(right))
    }

    /// `left\right`
    pub fn under(left: Formula, right: Formula) -> Self {
        Formula::Under(Box::new(left), Box::new(right))
    }

    /// `left/right`
    pub fn over(left: Formula, right: Formula) -> Self {
        Formula::Over(Box::new(left), Box::new(right))
    }

    pub fn bang(body: Formula) -> Self {
        Formula::Bang(Box::new(body))
    }

    pub fn is_bang(&self) -> bool {
        matches!(self, Formula::Bang(_))
    }

    /// Number of connectives (atoms and units count zero).
    pub fn size(&self) -> usize {
        match self {
            Formula::Atom(_) | Formula::Unit => 0,
            Formula::Bang(b) => 1 + b.size(),
            Formula::Product(l, r) | Formula::Under(l, r) | Formula::Over(l, r) => {
                1 + l.size() + r.size()
            }
        }
    }

    pub fn contains_bang(&self) -> bool {
        match self {
            Formula::Atom(_) | Formula::Unit => false,
            Formula::Bang(_) => true,
            Formula::Product(l, r) | Formula::Under(l, r) | Formula::Over(l, r) => {
                l.contains_bang() || r.contains_bang()
            }
        }
    }

    /// Collects atom names, in order of first occurrence.
    pub fn atoms(&self, out: &mut Vec<String>) {
        match self {
            Formula::Atom(a) => {
                if !out.contains(a) {
                    out.push(a.clone());
                }
            }
            Formula::Unit => {}
            Formula::Bang(b) => b.atoms(out),
            Formula::Product(l, r) | Formula::Under(l, r) | Formula::Over(l, r) => {
                l.atoms(out);
                r.atoms(out);
            }
        }
    }

    /// Removes units sitting directly under a product.
    pub fn normalize(self) -> Formula {
        match self {
            Formula::Product(l, r) => match (l.normalize(), r.normalize()) {
                (Formula::Unit, x) | (x, Formula::Unit) => x,
                (l, r) => Formula::product(l, r),
            },
            Formula::Under(l, r) => Formula::under(l.normalize(), r.normalize()),
            Formula::Over(l, r) => Formula::over(l.normalize(), r.normalize()),
            Formula::Bang(b) => Formula::bang(b.normalize()),
            other => other,
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_formula(self))
    }
}

impl Serialize for Formula {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&print_formula(self))
    }
}

impl<'de> Deserialize<'de> for Formula {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        parse_formula(&text).map_err(serde::de::Error::custom)
    }
}

/// `Γ ⊢ A` with an ordered antecedent.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sequent {
    pub antecedent: Vec<Formula>,
    pub succedent: Formula,
}

impl Sequent {
    pub fn new(antecedent: Vec<Formula>, succedent: Formula) -> Self {
        Sequent {
            antecedent,
            succedent,
        }
    }

    pub fn contains_bang(&self) -> bool {
        self.succedent.contains_bang() || self.antecedent.iter().any(Formula::contains_bang)
    }

    pub fn atoms(&self) -> Vec<String> {
        let mut out = Vec::new();
        for f in &self.antecedent {
            f.atoms(&mut out);
        }
        self.succedent.atoms(&mut out);
        out
    }
}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_sequent(self))
    }
}

impl Serialize for Sequent {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&print_sequent(self))
    }
}

impl<'de> Deserialize<'de> for Sequent {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        parse_sequent(&text).map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at {position}: {message}")]
pub struct SyntaxError {
    /// Byte offset into the input.
    pub position: usize,
    pub message: String,
}

impl SyntaxError {
    fn new(position: usize, message: impl Into<String>) -> Self {
        SyntaxError {
            position,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Atom(String),
    Under,
    Over,
    Bang,
    LParen,
    RParen,
    Comma,
    Turnstile,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, SyntaxError> {
    let mut toks = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some(&(pos, c)) = chars.peek() {
        match c {
            c if c.is_whitespace() => {
                chars.next();
            }
            '\\' => {
                chars.next();
                toks.push((pos, Tok::Under));
            }
            '/' => {
                chars.next();
                toks.push((pos, Tok::Over));
            }
            '!' => {
                chars.next();
                toks.push((pos, Tok::Bang));
            }
            '(' => {
                chars.next();
                toks.push((pos, Tok::LParen));
            }
            ')' => {
                chars.next();
                toks.push((pos, Tok::RParen));
            }
            ',' => {
                chars.next();
                toks.push((pos, Tok::Comma));
            }
            '⊢' => {
                chars.next();
                toks.push((pos, Tok::Turnstile));
            }
            '=' => {
                chars.next();
                match chars.next() {
                    Some((_, '>')) => toks.push((pos, Tok::Turnstile)),
                    _ => return Err(SyntaxError::new(pos, "expected `=>`")),
                }
            }
            c if c.is_alphanumeric() => {
                let mut name = String::new();
                while let Some(&(_, c)) = chars.peek() {
                    if c.is_alphanumeric() {
                        name.push(c);
                        chars.next();
                    } else {
                        break;
                    }
                }
                toks.push((pos, Tok::Atom(name)));
            }
            other => {
                return Err(SyntaxError::new(
                    pos,
                    format!("unexpected character `{other}`"),
                ))
            }
        }
    }
    Ok(toks)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|(p, _)| *p).unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    /// product := slash (',' slash)*
    fn product(&mut self) -> Result<Formula, SyntaxError> {
        let first = self.slash()?;
        let mut rest = Vec::new();
        while self.peek() == Some(&Tok::Comma) {
            self.bump();
            rest.push(self.slash()?);
        }
        // right-nested
        let mut acc = match rest.pop() {
            None => return Ok(first),
            Some(last) => last,
        };
        while let Some(prev) = rest.pop() {
            acc = Formula::product(prev, acc);
        }
        Ok(Formula::product(first, acc))
    }

    /// slash := unary (('\' | '/') unary)?
    fn slash(&mut self) -> Result<Formula, SyntaxError> {
        let left = self.unary()?;
        let op = match self.peek() {
            Some(Tok::Under) => Tok::Under,
            Some(Tok::Over) => Tok::Over,
            _ => return Ok(left),
        };
        self.bump();
        let right = self.unary()?;
        if matches!(self.peek(), Some(Tok::Under) | Some(Tok::Over)) {
            return Err(SyntaxError::new(
                self.offset(),
                "ambiguous chain of slashes; add parentheses",
            ));
        }
        Ok(match op {
            Tok::Under => Formula::under(left, right),
            _ => Formula::over(left, right),
        })
    }

    fn unary(&mut self) -> Result<Formula, SyntaxError> {
        let at = self.offset();
        match self.bump() {
            Some(Tok::Bang) => match self.peek() {
                Some(Tok::Atom(_)) | Some(Tok::LParen) | Some(Tok::Bang) => {
                    Ok(Formula::bang(self.unary()?))
                }
                _ => Err(SyntaxError::new(self.offset(), "empty `!` body")),
            },
            Some(Tok::Atom(name)) => Ok(Formula::Atom(name)),
            Some(Tok::LParen) => {
                if self.peek() == Some(&Tok::RParen) {
                    self.bump();
                    return Ok(Formula::Unit);
                }
                let inner = self.product()?;
                match self.bump() {
                    Some(Tok::RParen) => Ok(inner),
                    _ => Err(SyntaxError::new(at, "unbalanced parenthesis")),
                }
            }
            Some(Tok::Under) | Some(Tok::Over) => Err(SyntaxError::new(at, "dangling slash")),
            Some(Tok::RParen) => Err(SyntaxError::new(at, "unexpected `)`")),
            Some(Tok::Comma) => Err(SyntaxError::new(at, "unexpected `,`")),
            Some(Tok::Turnstile) => Err(SyntaxError::new(at, "unexpected turnstile")),
            None => Err(SyntaxError::new(at, "unexpected end of input")),
        }
    }

    fn expect_end(&self) -> Result<(), SyntaxError> {
        match self.toks.get(self.pos) {
            None => Ok(()),
            Some((p, Tok::RParen)) => Err(SyntaxError::new(*p, "unbalanced parenthesis")),
            Some((p, _)) => Err(SyntaxError::new(*p, "trailing input")),
        }
    }
}

/// Parses a single formula. Top-level commas build a product.
pub fn parse_formula(text: &str) -> Result<Formula, SyntaxError> {
    let toks = tokenize(text)?;
    if toks.is_empty() {
        return Err(SyntaxError::new(0, "empty formula"));
    }
    let mut p = Parser {
        toks,
        pos: 0,
        end: text.len(),
    };
    let f = p.product()?;
    p.expect_end()?;
    Ok(f.normalize())
}

/// Parses `A1, ..., An => B`. The antecedent may be empty.
pub fn parse_sequent(text: &str) -> Result<Sequent, SyntaxError> {
    let toks = tokenize(text)?;
    let turnstiles: Vec<usize> = toks
        .iter()
        .enumerate()
        .filter(|(_, (_, t))| *t == Tok::Turnstile)
        .map(|(i, _)| i)
        .collect();
    match turnstiles.len() {
        0 => return Err(SyntaxError::new(0, "missing turnstile `=>`")),
        1 => {}
        _ => {
            return Err(SyntaxError::new(
                toks[turnstiles[1]].0,
                "more than one turnstile",
            ))
        }
    }
    let split = turnstiles[0];
    let turnstile_pos = toks[split].0;
    let (left, right) = toks.split_at(split);
    let right = right[1..].to_vec();

    let mut antecedent = Vec::new();
    if !left.is_empty() {
        let mut p = Parser {
            toks: left.to_vec(),
            pos: 0,
            end: turnstile_pos,
        };
        loop {
            let f = p.slash()?.normalize();
            if f != Formula::Unit {
                antecedent.push(f);
            }
            match p.peek() {
                Some(Tok::Comma) => {
                    p.bump();
                }
                None => break,
                Some(_) => return Err(SyntaxError::new(p.offset(), "expected `,` or `=>`")),
            }
        }
    }

    if right.is_empty() {
        return Err(SyntaxError::new(text.len(), "missing succedent"));
    }
    let mut p = Parser {
        toks: right,
        pos: 0,
        end: text.len(),
    };
    let succedent = p.product()?;
    p.expect_end()?;
    Ok(Sequent::new(antecedent, succedent.normalize()))
}

fn needs_parens_as_operand(f: &Formula) -> bool {
    matches!(f, Formula::Under(..) | Formula::Over(..))
}

fn operand(f: &Formula) -> String {
    if needs_parens_as_operand(f) {
        format!("({})", print_formula(f))
    } else {
        print_formula(f)
    }
}

/// Minimal-parenthesis rendering.
pub fn print_formula(f: &Formula) -> String {
    match f {
        Formula::Atom(a) => a.clone(),
        Formula::Unit => "()".to_string(),
        Formula::Product(l, r) => format!("({}, {})", print_formula(l), print_formula(r)),
        Formula::Under(l, r) => format!("{}\\{}", operand(l), operand(r)),
        Formula::Over(l, r) => format!("{}/{}", operand(l), operand(r)),
        Formula::Bang(b) => format!("!{}", operand(b)),
    }
}

pub fn print_sequent(s: &Sequent) -> String {
    let ante: Vec<String> = s.antecedent.iter().map(print_formula).collect();
    if ante.is_empty() {
        format!("=> {}", print_formula(&s.succedent))
    } else {
        format!("{} => {}", ante.join(", "), print_formula(&s.succedent))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(n: &str) -> Formula {
        Formula::atom(n)
    }

    #[test]
    fn parses_transitive_verb_type() {
        let f = parse_formula("(NP\\S)/NP").unwrap();
        assert_eq!(f, Formula::over(Formula::under(a("NP"), a("S")), a("NP")));
    }

    #[test]
    fn parses_atom() {
        assert_eq!(parse_formula("NP").unwrap(), a("NP"));
    }

    #[test]
    fn parses_relative_pronoun_type() {
        let f = parse_formula("(N\\N)/(S/!NP)").unwrap();
        assert_eq!(
            f,
            Formula::over(
                Formula::under(a("N"), a("N")),
                Formula::over(a("S"), Formula::bang(a("NP")))
            )
        );
    }

    #[test]
    fn bang_binds_tighter_than_slash() {
        assert_eq!(
            parse_formula("!A\\B").unwrap(),
            Formula::under(Formula::bang(a("A")), a("B"))
        );
        assert_eq!(
            parse_formula("!(A\\B)").unwrap(),
            Formula::bang(Formula::under(a("A"), a("B")))
        );
    }

    #[test]
    fn prints_minimal_parens() {
        assert_eq!(print_formula(&a("NP")), "NP");
        assert_eq!(print_formula(&Formula::bang(a("NP"))), "!NP");
        assert_eq!(print_formula(&Formula::under(a("NP"), a("S"))), "NP\\S");
        assert_eq!(
            print_formula(&parse_formula("((NP\\S)\\(NP\\S))/NP").unwrap()),
            "((NP\\S)\\(NP\\S))/NP"
        );
        assert_eq!(print_formula(&parse_formula("S/!NP").unwrap()), "S/!NP");
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let e = parse_formula("(A\\B").unwrap_err();
        assert_eq!(e.position, 0);
        let e = parse_formula("A/").unwrap_err();
        assert_eq!(e.position, 2);
        assert!(parse_formula("!").unwrap_err().message.contains("`!`"));
        assert!(parse_formula("A)").is_err());
        assert!(parse_formula("((").is_err());
        assert!(parse_formula("A\\B\\C").is_err());
        assert!(parse_formula("").is_err());
    }

    #[test]
    fn sequents() {
        let s = parse_sequent("NP, (NP\\S)/NP, NP/N, N => S").unwrap();
        assert_eq!(s.antecedent.len(), 4);
        assert_eq!(s.succedent, a("S"));

        let s = parse_sequent("A => A").unwrap();
        assert_eq!(s.antecedent, vec![a("A")]);

        let s = parse_sequent("=> S").unwrap();
        assert!(s.antecedent.is_empty());

        let s = parse_sequent("A ⊢ A").unwrap();
        assert_eq!(s, parse_sequent("A => A").unwrap());

        assert!(parse_sequent("A => B => C").is_err());
        assert!(parse_sequent("A, , B => C").is_err());
        assert!(parse_sequent("A B => C").is_err());
        assert!(parse_sequent("A =>").is_err());
    }

    #[test]
    fn comma_is_flat() {
        let s = parse_sequent("A, B, C => D").unwrap();
        assert_eq!(s.antecedent, vec![a("A"), a("B"), a("C")]);
        // products nest the same way however they are grouped in the source
        assert_eq!(
            parse_formula("(A, B, C)").unwrap(),
            parse_formula("(A, (B, C))").unwrap()
        );
    }

    #[test]
    fn units_are_eliminated() {
        assert_eq!(parse_formula("((), A)").unwrap(), a("A"));
        assert_eq!(
            parse_sequent("(), A => A").unwrap().antecedent,
            vec![a("A")]
        );
        assert_eq!(parse_formula("()").unwrap(), Formula::Unit);
    }

    #[test]
    fn sequent_display_round_trips() {
        for text in [
            "=> S",
            "A => A",
            "NP, (NP\\S)/NP, NP/N, N => S",
            "!A, !(A\\B) => !B",
        ] {
            let s = parse_sequent(text).unwrap();
            assert_eq!(print_sequent(&s), text);
            assert_eq!(parse_sequent(&print_sequent(&s)).unwrap(), s);
        }
    }
}
