//! Modal formulas over a named signature of diamond modalities.
//!
//! Diamonds are primitive. `Box`, `And`, `Imp`, `Iff` and `Bot` are
//! constructors that expand on the spot into the five primitive node kinds,
//! and the printer folds those expansions back into the sugared notation.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};

/// An ordered, nonempty list of distinct modality names.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Signature {
    modalities: Vec<String>,
}

impl Signature {
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let modalities: Vec<String> = names.into_iter().map(Into::into).collect();
        if modalities.is_empty() {
            return Err(Error::BadParameter("signature needs at least one modality".into()));
        }
        let mut seen = BTreeSet::new();
        for m in &modalities {
            if !is_ident(m) {
                return Err(Error::BadParameter(format!("`{m}` is not a valid modality name")));
            }
            if !seen.insert(m.as_str()) {
                return Err(Error::BadParameter(format!("duplicate modality `{m}`")));
            }
        }
        Ok(Signature { modalities })
    }

    /// The one-modality signature `{name}`.
    pub fn mono(name: &str) -> Self {
        Signature::new([name]).expect("valid modality name")
    }

    pub fn names(&self) -> &[String] {
        &self.modalities
    }

    pub fn len(&self) -> usize {
        self.modalities.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.modalities.iter().position(|m| m == name)
    }

    pub fn contains(&self, name: &str) -> bool {
        self.index_of(name).is_some()
    }

    /// Fails with `UnknownModality` on the first modality of `phi` outside the signature.
    pub fn check(&self, phi: &Formula) -> Result<()> {
        match phi.modalities().into_iter().find(|m| !self.contains(m)) {
            Some(m) => Err(Error::UnknownModality(m.to_string())),
            None => Ok(()),
        }
    }
}

pub(crate) fn is_ident(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// A modal formula in diamond-primitive form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Top,
    Atom(u32),
    Not(Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Dia(String, Box<Formula>),
}

pub fn top() -> Formula {
    Formula::Top
}

pub fn bot() -> Formula {
    not(Formula::Top)
}

pub fn atom(i: u32) -> Formula {
    Formula::Atom(i)
}

pub fn not(a: Formula) -> Formula {
    Formula::Not(Box::new(a))
}

pub fn or(a: Formula, b: Formula) -> Formula {
    Formula::Or(Box::new(a), Box::new(b))
}

pub fn and(a: Formula, b: Formula) -> Formula {
    not(or(not(a), not(b)))
}

pub fn imp(a: Formula, b: Formula) -> Formula {
    or(not(a), b)
}

pub fn iff(a: Formula, b: Formula) -> Formula {
    and(imp(a.clone(), b.clone()), imp(b, a))
}

pub fn dia(m: &str, a: Formula) -> Formula {
    Formula::Dia(m.to_string(), Box::new(a))
}

pub fn boxed(m: &str, a: Formula) -> Formula {
    not(dia(m, not(a)))
}

/// `m` applied `n` times to `a`.
pub fn dia_n(m: &str, n: usize, a: Formula) -> Formula {
    (0..n).fold(a, |acc, _| dia(m, acc))
}

/// Left-nested disjunction; `None` for an empty iterator.
pub fn disj<I: IntoIterator<Item = Formula>>(items: I) -> Option<Formula> {
    items.into_iter().reduce(or)
}

/// Left-nested conjunction; `None` for an empty iterator.
pub fn conj<I: IntoIterator<Item = Formula>>(items: I) -> Option<Formula> {
    items.into_iter().reduce(and)
}

impl Formula {
    /// Atom indices occurring in the formula.
    pub fn atoms(&self) -> BTreeSet<u32> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms(&self, out: &mut BTreeSet<u32>) {
        match self {
            Formula::Top => {}
            Formula::Atom(i) => {
                out.insert(*i);
            }
            Formula::Not(a) | Formula::Dia(_, a) => a.collect_atoms(out),
            Formula::Or(a, b) => {
                a.collect_atoms(out);
                b.collect_atoms(out);
            }
        }
    }

    /// Modality names occurring in the formula.
    pub fn modalities(&self) -> BTreeSet<&str> {
        fn go<'a>(f: &'a Formula, out: &mut BTreeSet<&'a str>) {
            match f {
                Formula::Top | Formula::Atom(_) => {}
                Formula::Not(a) => go(a, out),
                Formula::Or(a, b) => {
                    go(a, out);
                    go(b, out);
                }
                Formula::Dia(m, a) => {
                    out.insert(m.as_str());
                    go(a, out);
                }
            }
        }
        let mut out = BTreeSet::new();
        go(self, &mut out);
        out
    }

    /// Nesting depth of diamonds.
    pub fn modal_depth(&self) -> usize {
        match self {
            Formula::Top | Formula::Atom(_) => 0,
            Formula::Not(a) => a.modal_depth(),
            Formula::Or(a, b) => a.modal_depth().max(b.modal_depth()),
            Formula::Dia(_, a) => 1 + a.modal_depth(),
        }
    }

    /// Number of primitive nodes.
    pub fn size(&self) -> usize {
        match self {
            Formula::Top | Formula::Atom(_) => 1,
            Formula::Not(a) | Formula::Dia(_, a) => 1 + a.size(),
            Formula::Or(a, b) => 1 + a.size() + b.size(),
        }
    }

    /// Simultaneous substitution; unmapped atoms are left alone.
    pub fn substitute(&self, map: &BTreeMap<u32, Formula>) -> Formula {
        match self {
            Formula::Top => Formula::Top,
            Formula::Atom(i) => map.get(i).cloned().unwrap_or(Formula::Atom(*i)),
            Formula::Not(a) => not(a.substitute(map)),
            Formula::Or(a, b) => or(a.substitute(map), b.substitute(map)),
            Formula::Dia(m, a) => dia(m, a.substitute(map)),
        }
    }

    /// The reflexive-closure translation: `(<m>a)° = a° | <m>a°`.
    ///
    /// Boxes are recognised so that `([m]a)°` comes out as `a° & [m]a°`
    /// rather than the double-negated equivalent.
    pub fn circ(&self) -> Formula {
        match self {
            Formula::Top | Formula::Atom(_) => self.clone(),
            Formula::Not(inner) => match inner.as_ref() {
                Formula::Dia(m, body) => match body.as_ref() {
                    Formula::Not(a) => {
                        let a = a.circ();
                        and(a.clone(), boxed(m, a))
                    }
                    _ => not(inner.circ()),
                },
                _ => not(inner.circ()),
            },
            Formula::Or(a, b) => or(a.circ(), b.circ()),
            Formula::Dia(m, a) => {
                let a = a.circ();
                or(a.clone(), dia(m, a))
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Printing

/// A formula viewed through the abbreviations.
enum View<'a> {
    Top,
    Bot,
    Atom(u32),
    Not(&'a Formula),
    Dia(&'a str, &'a Formula),
    Box(&'a str, &'a Formula),
    And(&'a Formula, &'a Formula),
    Or(&'a Formula, &'a Formula),
    Imp(&'a Formula, &'a Formula),
    Iff(&'a Formula, &'a Formula),
}

const PREC_IFF: u8 = 1;
const PREC_IMP: u8 = 2;
const PREC_OR: u8 = 3;
const PREC_AND: u8 = 4;
const PREC_UNARY: u8 = 5;

fn as_imp(f: &Formula) -> Option<(&Formula, &Formula)> {
    match f {
        Formula::Or(l, r) => match l.as_ref() {
            // a boxed left disjunct reads better as a disjunction
            Formula::Not(a) if matches!(a.as_ref(), Formula::Dia(_, b) if negated(b).is_some()) => None,
            Formula::Not(a) if **a != Formula::Top => Some((a, r)),
            _ => None,
        },
        _ => None,
    }
}

fn as_imp_raw(f: &Formula) -> Option<(&Formula, &Formula)> {
    match f {
        Formula::Or(l, r) => negated(l).map(|a| (a, r.as_ref())),
        _ => None,
    }
}

fn negated(f: &Formula) -> Option<&Formula> {
    match f {
        Formula::Not(a) => Some(a),
        _ => None,
    }
}

fn view(f: &Formula) -> View<'_> {
    match f {
        Formula::Top => View::Top,
        Formula::Atom(i) => View::Atom(*i),
        Formula::Dia(m, a) => View::Dia(m, a),
        Formula::Or(a, b) => match as_imp(f) {
            Some((x, y)) => View::Imp(x, y),
            None => View::Or(a, b),
        },
        Formula::Not(inner) => match inner.as_ref() {
            Formula::Top => View::Bot,
            Formula::Dia(m, body) => match negated(body) {
                Some(a) => View::Box(m, a),
                None => View::Not(inner),
            },
            Formula::Or(l, r) => match (negated(l), negated(r)) {
                (Some(x), Some(y)) => {
                    if let (Some((a, b)), Some((b2, a2))) = (as_imp_raw(x), as_imp_raw(y)) {
                        if a == a2 && b == b2 {
                            return View::Iff(a, b);
                        }
                    }
                    View::And(x, y)
                }
                _ => View::Not(inner),
            },
            _ => View::Not(inner),
        },
    }
}

fn write_prec(f: &Formula, min: u8, out: &mut String) {
    let v = view(f);
    let prec = match v {
        View::Iff(..) => PREC_IFF,
        View::Imp(..) => PREC_IMP,
        View::Or(..) => PREC_OR,
        View::And(..) => PREC_AND,
        _ => PREC_UNARY,
    };
    let paren = prec < min;
    if paren {
        out.push('(');
    }
    match v {
        View::Top => out.push_str("true"),
        View::Bot => out.push_str("false"),
        View::Atom(i) => {
            out.push('p');
            out.push_str(&i.to_string());
        }
        View::Not(a) => {
            out.push('~');
            write_prec(a, PREC_UNARY, out);
        }
        View::Dia(m, a) => {
            out.push('<');
            out.push_str(m);
            out.push('>');
            write_prec(a, PREC_UNARY, out);
        }
        View::Box(m, a) => {
            out.push('[');
            out.push_str(m);
            out.push(']');
            write_prec(a, PREC_UNARY, out);
        }
        View::And(a, b) => binary(a, " & ", b, PREC_AND, PREC_AND + 1, out),
        View::Or(a, b) => binary(a, " | ", b, PREC_OR, PREC_OR + 1, out),
        View::Imp(a, b) => binary(a, " -> ", b, PREC_IMP + 1, PREC_IMP, out),
        View::Iff(a, b) => binary(a, " <-> ", b, PREC_IFF + 1, PREC_IFF, out),
    }
    if paren {
        out.push(')');
    }
}

fn binary(a: &Formula, op: &str, b: &Formula, lmin: u8, rmin: u8, out: &mut String) {
    write_prec(a, lmin, out);
    out.push_str(op);
    write_prec(b, rmin, out);
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        write_prec(self, 0, &mut s);
        f.write_str(&s)
    }
}

// ---------------------------------------------------------------------------
// Parsing

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Word(String),
    Not,
    And,
    Or,
    Imp,
    Iff,
    DiaOpen,
    DiaClose,
    BoxOpen,
    BoxClose,
    LParen,
    RParen,
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'~' => Tok::Not,
            b'&' => Tok::And,
            b'|' => Tok::Or,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'[' => Tok::BoxOpen,
            b']' => Tok::BoxClose,
            b'>' => Tok::DiaClose,
            b'-' if bytes.get(i + 1) == Some(&b'>') => {
                i += 1;
                Tok::Imp
            }
            b'<' if bytes.get(i + 1) == Some(&b'-') && bytes.get(i + 2) == Some(&b'>') => {
                i += 2;
                Tok::Iff
            }
            b'<' => Tok::DiaOpen,
            c if c.is_ascii_alphanumeric() || c == b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Tok::Word(text[start..i].to_string())));
                continue;
            }
            _ => {
                return Err(Error::Parse {
                    pos: i,
                    message: format!("unexpected character `{}`", text[i..].chars().next().unwrap()),
                })
            }
        };
        i += 1;
        out.push((start, tok));
    }
    Ok(out)
}

struct Parser<'s> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    sig: Option<&'s Signature>,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.offset(),
            message: message.into(),
        })
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn iff(&mut self) -> Result<Formula> {
        let lhs = self.imp()?;
        if self.eat(&Tok::Iff) {
            let rhs = self.iff()?;
            return Ok(iff(lhs, rhs));
        }
        Ok(lhs)
    }

    fn imp(&mut self) -> Result<Formula> {
        let lhs = self.or()?;
        if self.eat(&Tok::Imp) {
            let rhs = self.imp()?;
            return Ok(imp(lhs, rhs));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<Formula> {
        let mut acc = self.and()?;
        while self.eat(&Tok::Or) {
            acc = or(acc, self.and()?);
        }
        Ok(acc)
    }

    fn and(&mut self) -> Result<Formula> {
        let mut acc = self.unary()?;
        while self.eat(&Tok::And) {
            acc = and(acc, self.unary()?);
        }
        Ok(acc)
    }

    fn modality(&mut self, close: Tok) -> Result<String> {
        let name = match self.peek() {
            Some(Tok::Word(w)) if is_ident(w) => w.clone(),
            _ => return self.err("expected a modality name"),
        };
        if let Some(sig) = self.sig {
            if !sig.contains(&name) {
                return Err(Error::UnknownModality(name));
            }
        }
        self.pos += 1;
        if !self.eat(&close) {
            return self.err("unterminated modality");
        }
        Ok(name)
    }

    fn unary(&mut self) -> Result<Formula> {
        match self.peek() {
            Some(Tok::Not) => {
                self.pos += 1;
                Ok(not(self.unary()?))
            }
            Some(Tok::DiaOpen) => {
                self.pos += 1;
                let m = self.modality(Tok::DiaClose)?;
                Ok(dia(&m, self.unary()?))
            }
            Some(Tok::BoxOpen) => {
                self.pos += 1;
                let m = self.modality(Tok::BoxClose)?;
                Ok(boxed(&m, self.unary()?))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.iff()?;
                if !self.eat(&Tok::RParen) {
                    return self.err("expected `)`");
                }
                Ok(inner)
            }
            Some(Tok::Word(w)) => {
                let f = match w.as_str() {
                    "true" => Formula::Top,
                    "false" => bot(),
                    w => match w.strip_prefix('p').map(str::parse::<u32>) {
                        Some(Ok(i)) if w[1..].chars().all(|c| c.is_ascii_digit()) => atom(i),
                        _ => return self.err(format!("`{w}` is not an atom")),
                    },
                };
                self.pos += 1;
                Ok(f)
            }
            Some(_) => self.err("expected a formula"),
            None => self.err("unexpected end of input"),
        }
    }
}

fn parse_with(text: &str, sig: Option<&Signature>) -> Result<Formula> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
        end: text.len(),
        sig,
    };
    let f = p.iff()?;
    if p.pos != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(f)
}

/// Parses `text`, rejecting modalities outside `sig`.
pub fn parse(text: &str, sig: &Signature) -> Result<Formula> {
    parse_with(text, Some(sig))
}

/// Parses `text` accepting any modality name.
pub fn parse_unchecked(text: &str) -> Result<Formula> {
    parse_with(text, None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn d() -> Signature {
        Signature::mono("d")
    }

    #[test]
    fn precedence_of_negation_and_diamond() {
        let f = parse("~<d>p0 | p1", &d()).unwrap();
        assert_eq!(f, or(not(dia("d", atom(0))), atom(1)));
    }

    #[test]
    fn implication_binds_looser_than_disjunction() {
        let f = parse("[d]p0 -> [d]p1 | [d]p0", &d()).unwrap();
        let b = |i| boxed("d", atom(i));
        assert_eq!(f, imp(b(0), or(b(1), b(0))));
    }

    #[test]
    fn iff_and_imp_are_right_associative() {
        let f = parse("p0 <-> p1 <-> p2", &d()).unwrap();
        assert_eq!(f, iff(atom(0), iff(atom(1), atom(2))));
        let g = parse("p0 -> p1 -> p2", &d()).unwrap();
        assert_eq!(g, imp(atom(0), imp(atom(1), atom(2))));
        assert_eq!(g.to_string(), "p0 -> p1 -> p2");
        let h = imp(imp(atom(0), atom(1)), atom(2));
        assert_eq!(h.to_string(), "(p0 -> p1) -> p2");
    }

    #[test]
    fn and_or_are_left_associative() {
        let f = parse("p0 & p1 & p2 | p3 | p4", &d()).unwrap();
        assert_eq!(f, or(or(and(and(atom(0), atom(1)), atom(2)), atom(3)), atom(4)));
        assert_eq!(or(atom(0), or(atom(1), atom(2))).to_string(), "p0 | (p1 | p2)");
    }

    #[test]
    fn printing_examples() {
        assert_eq!(atom(0).to_string(), "p0");
        assert_eq!(not(dia("d", top())).to_string(), "~<d>true");
        let alpha1 = and(dia("d", top()), not(dia("d", dia("d", top()))));
        assert_eq!(alpha1.to_string(), "<d>true & ~<d><d>true");
        assert_eq!(bot().to_string(), "false");
        assert_eq!(or(bot(), atom(1)).to_string(), "false | p1");
        assert_eq!(boxed("d", top()).to_string(), "[d]true");
        assert_eq!(iff(atom(0), top()).to_string(), "p0 <-> true");
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(parse("<e>p0", &d()), Err(Error::UnknownModality(m)) if m == "e"));
        assert!(matches!(parse("p0 &", &d()), Err(Error::Parse { pos: 4, .. })));
        assert!(matches!(parse("q0", &d()), Err(Error::Parse { pos: 0, .. })));
        assert!(matches!(parse("(p0", &d()), Err(Error::Parse { .. })));
        assert!(matches!(parse("p0 p1", &d()), Err(Error::Parse { pos: 3, .. })));
        assert!(matches!(parse("p0 # p1", &d()), Err(Error::Parse { pos: 3, .. })));
        assert!(matches!(parse("<d p0", &d()), Err(Error::Parse { .. })));
        assert!(matches!(parse("", &d()), Err(Error::Parse { pos: 0, .. })));
    }

    #[test]
    fn substitution_is_simultaneous() {
        let m = BTreeMap::from([(0, dia("d", atom(0)))]);
        assert_eq!(atom(0).substitute(&m), dia("d", atom(0)));
        let swap = BTreeMap::from([(0, atom(1)), (1, atom(0))]);
        assert_eq!(and(atom(0), atom(1)).substitute(&swap), and(atom(1), atom(0)));
    }

    #[test]
    fn substitution_into_u1() {
        let b = |f| boxed("d", f);
        let u1 = or(b(imp(b(atom(0)), b(atom(1)))), b(imp(b(atom(1)), b(atom(0)))));
        let m = BTreeMap::from([(0, top()), (1, bot())]);
        // hand expansion of [d]([d]true -> [d]false) | [d]([d]false -> [d]true)
        let expected = or(b(imp(b(top()), b(bot()))), b(imp(b(bot()), b(top()))));
        assert_eq!(u1.substitute(&m), expected);
        assert_eq!(u1.atoms(), BTreeSet::from([0, 1]));
    }

    #[test]
    fn circ_examples() {
        assert_eq!(atom(0).circ(), atom(0));
        assert_eq!(dia("d", atom(0)).circ(), or(atom(0), dia("d", atom(0))));
        assert_eq!(boxed("d", atom(0)).circ(), and(atom(0), boxed("d", atom(0))));
    }

    #[test]
    fn substitution_does_not_commute_with_circ() {
        let phi = dia("d", atom(0));
        let sigma = BTreeMap::from([(0, dia("d", atom(0)))]);
        let subst_then_circ = phi.substitute(&sigma).circ();
        let circ_then_subst = phi.circ().substitute(&sigma);
        assert_ne!(subst_then_circ, circ_then_subst);
    }

    #[test]
    fn atoms_of_constants() {
        assert!(top().atoms().is_empty());
        let alpha3 = and(dia_n("d", 3, top()), not(dia_n("d", 4, top())));
        assert!(alpha3.atoms().is_empty());
    }

    #[test]
    fn signature_validation() {
        assert!(Signature::new(Vec::<String>::new()).is_err());
        assert!(Signature::new(["d", "d"]).is_err());
        assert!(Signature::new(["1d"]).is_err());
        let s = Signature::new(["d", "e"]).unwrap();
        assert_eq!(s.index_of("e"), Some(1));
        assert!(s.check(&dia("f", top())).is_err());
    }

    pub(crate) fn arb_formula() -> impl Strategy<Value = Formula> {
        let leaf = prop_oneof![Just(Formula::Top), (0u32..4).prop_map(atom)];
        leaf.prop_recursive(6, 64, 2, |inner| {
            prop_oneof![
                inner.clone().prop_map(not),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| or(a, b)),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| and(a, b)),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| imp(a, b)),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| iff(a, b)),
                (prop_oneof![Just("d"), Just("e")], inner.clone()).prop_map(|(m, a)| dia(m, a)),
                (prop_oneof![Just("d"), Just("e")], inner).prop_map(|(m, a)| boxed(m, a)),
            ]
        })
    }

    fn arb_boolean() -> impl Strategy<Value = Formula> {
        let leaf = prop_oneof![Just(Formula::Top), (0u32..4).prop_map(atom)];
        leaf.prop_recursive(6, 64, 2, |inner| {
            prop_oneof![
                inner.clone().prop_map(not),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| or(a, b)),
                (inner.clone(), inner).prop_map(|(a, b)| imp(a, b)),
            ]
        })
    }

    proptest! {
        #[test]
        fn print_parse_round_trip(f in arb_formula()) {
            let sig = Signature::new(["d", "e"]).unwrap();
            let printed = f.to_string();
            prop_assert_eq!(parse(&printed, &sig).unwrap(), f);
        }

        #[test]
        fn circ_fixes_modality_free_formulas(f in arb_boolean()) {
            prop_assert_eq!(f.circ(), f);
        }

        #[test]
        fn substitution_atoms_bound(f in arb_formula(), g in arb_formula(), h in arb_formula()) {
            let sigma = BTreeMap::from([(0u32, g), (2u32, h)]);
            let mut bound: BTreeSet<u32> = f.atoms().into_iter().filter(|a| !sigma.contains_key(a)).collect();
            for img in sigma.values() {
                bound.extend(img.atoms());
            }
            prop_assert!(f.substitute(&sigma).atoms().is_subset(&bound));
        }
    }
}
