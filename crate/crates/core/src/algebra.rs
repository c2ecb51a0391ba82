//! Finite boolean algebras with operators, in atomic form, and their duality
//! with finite frames.
//!
//! An algebra with `k` atoms is the power set of those atoms; each operator
//! is stored by its value on atoms and extended additively, so normality and
//! additivity hold by construction.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::formula::{self, is_ident, Formula, Signature};
use crate::frames::{Frame, Relation};
use crate::worldset::WorldSet;

/// A term in the signature `0, 1, +, -` plus one unary operator per modality.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum BaoTerm {
    One,
    Zero,
    Var(u32),
    Minus(Box<BaoTerm>),
    Plus(Box<BaoTerm>, Box<BaoTerm>),
    OpDia(String, Box<BaoTerm>),
}

impl BaoTerm {
    pub fn minus(a: BaoTerm) -> BaoTerm {
        BaoTerm::Minus(Box::new(a))
    }

    pub fn plus(a: BaoTerm, b: BaoTerm) -> BaoTerm {
        BaoTerm::Plus(Box::new(a), Box::new(b))
    }

    pub fn op(m: &str, a: BaoTerm) -> BaoTerm {
        BaoTerm::OpDia(m.to_string(), Box::new(a))
    }

    pub fn vars(&self) -> BTreeSet<u32> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<u32>) {
        match self {
            BaoTerm::One | BaoTerm::Zero => {}
            BaoTerm::Var(i) => {
                out.insert(*i);
            }
            BaoTerm::Minus(a) | BaoTerm::OpDia(_, a) => a.collect_vars(out),
            BaoTerm::Plus(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
        }
    }

    fn modalities<'a>(&'a self, out: &mut BTreeSet<&'a str>) {
        match self {
            BaoTerm::One | BaoTerm::Zero | BaoTerm::Var(_) => {}
            BaoTerm::Minus(a) => a.modalities(out),
            BaoTerm::OpDia(m, a) => {
                out.insert(m);
                a.modalities(out);
            }
            BaoTerm::Plus(a, b) => {
                a.modalities(out);
                b.modalities(out);
            }
        }
    }
}

impl fmt::Display for BaoTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaoTerm::One => write!(f, "1"),
            BaoTerm::Zero => write!(f, "0"),
            BaoTerm::Var(i) => write!(f, "v{i}"),
            BaoTerm::Minus(a) => write!(f, "-{}", Unary(a)),
            BaoTerm::OpDia(m, a) => write!(f, "<{m}>{}", Unary(a)),
            BaoTerm::Plus(a, b) => {
                // `+` is left-associative, so only a right-hand sum needs parentheses
                write!(f, "{a} + ")?;
                match **b {
                    BaoTerm::Plus(..) => write!(f, "({b})"),
                    _ => write!(f, "{b}"),
                }
            }
        }
    }
}

struct Unary<'a>(&'a BaoTerm);

impl fmt::Display for Unary<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            BaoTerm::Plus(..) => write!(f, "({})", self.0),
            t => write!(f, "{t}"),
        }
    }
}

pub fn formula_to_term(phi: &Formula) -> BaoTerm {
    match phi {
        Formula::Top => BaoTerm::One,
        Formula::Atom(i) => BaoTerm::Var(*i),
        Formula::Not(a) => BaoTerm::minus(formula_to_term(a)),
        Formula::Or(a, b) => BaoTerm::plus(formula_to_term(a), formula_to_term(b)),
        Formula::Dia(m, a) => BaoTerm::op(m, formula_to_term(a)),
    }
}

pub fn term_to_formula(t: &BaoTerm) -> Formula {
    match t {
        BaoTerm::One => formula::top(),
        BaoTerm::Zero => formula::bot(),
        BaoTerm::Var(i) => formula::atom(*i),
        BaoTerm::Minus(a) => formula::not(term_to_formula(a)),
        BaoTerm::Plus(a, b) => formula::or(term_to_formula(a), term_to_formula(b)),
        BaoTerm::OpDia(m, a) => formula::dia(m, term_to_formula(a)),
    }
}

/// The formula `φ_lhs ↔ φ_rhs` of an equation.
pub fn equation_to_formula(lhs: &BaoTerm, rhs: &BaoTerm) -> Formula {
    formula::iff(term_to_formula(lhs), term_to_formula(rhs))
}

// ---------------------------------------------------------------------------
// Term syntax: `1 0 vK - + <m> ( )`, with `+` binding loosest.

struct TermParser<'a> {
    text: &'a str,
    pos: usize,
}

impl TermParser<'_> {
    fn skip_ws(&mut self) {
        while self.text[self.pos..].starts_with(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn err<T>(&self, message: &str) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos,
            message: message.to_string(),
        })
    }

    fn eat(&mut self, s: &str) -> bool {
        self.skip_ws();
        if self.text[self.pos..].starts_with(s) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn word(&mut self) -> &str {
        self.skip_ws();
        let start = self.pos;
        let rest = &self.text[start..];
        let len = rest.find(|c: char| !(c.is_ascii_alphanumeric() || c == '_')).unwrap_or(rest.len());
        self.pos += len;
        &self.text[start..start + len]
    }

    fn sum(&mut self) -> Result<BaoTerm> {
        let mut acc = self.unary()?;
        while self.eat("+") {
            acc = BaoTerm::plus(acc, self.unary()?);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<BaoTerm> {
        if self.eat("-") {
            return Ok(BaoTerm::minus(self.unary()?));
        }
        if self.eat("<") {
            let m = self.word().to_string();
            if !is_ident(&m) {
                return self.err("expected an operator name");
            }
            if !self.eat(">") {
                return self.err("unterminated operator");
            }
            return Ok(BaoTerm::op(&m, self.unary()?));
        }
        if self.eat("(") {
            let t = self.sum()?;
            if !self.eat(")") {
                return self.err("expected `)`");
            }
            return Ok(t);
        }
        let start = self.pos;
        let w = self.word();
        let t = match w {
            "1" => BaoTerm::One,
            "0" => BaoTerm::Zero,
            _ => match w.strip_prefix('v') {
                Some(d) if !d.is_empty() && d.chars().all(|c| c.is_ascii_digit()) => match d.parse() {
                    Ok(i) => BaoTerm::Var(i),
                    Err(_) => return self.err("variable index out of range"),
                },
                _ => {
                    self.pos = start;
                    return self.err("expected a term");
                }
            },
        };
        Ok(t)
    }

    fn finish(&mut self) -> Result<()> {
        self.skip_ws();
        if self.pos != self.text.len() {
            return self.err("trailing input");
        }
        Ok(())
    }
}

pub fn parse_term(text: &str) -> Result<BaoTerm> {
    let mut p = TermParser { text, pos: 0 };
    let t = p.sum()?;
    p.finish()?;
    Ok(t)
}

/// Parses `lhs = rhs`.
pub fn parse_equation(text: &str) -> Result<(BaoTerm, BaoTerm)> {
    let mut p = TermParser { text, pos: 0 };
    let lhs = p.sum()?;
    if !p.eat("=") {
        return p.err("expected `=`");
    }
    let rhs = p.sum()?;
    p.finish()?;
    Ok((lhs, rhs))
}

// ---------------------------------------------------------------------------

/// A finite BAO given by its atoms and the operator images of each atom.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteBao {
    sig: Signature,
    atoms: Vec<String>,
    /// `ops[m][a]` is the value of operator `m` on atom `a`.
    ops: Vec<Vec<WorldSet>>,
}

/// Result of checking an equation in an algebra; `witness` is an assignment
/// of elements to variables that separates the two sides.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquationVerdict {
    pub holds: bool,
    pub witness: Option<BTreeMap<u32, WorldSet>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub modalities: Vec<String>,
    pub atoms: Vec<String>,
    #[serde(default)]
    pub op: BTreeMap<String, BTreeMap<String, Vec<String>>>,
}

impl FiniteBao {
    pub fn new(sig: Signature, atoms: Vec<String>, ops: Vec<Vec<WorldSet>>) -> Result<Self> {
        let k = atoms.len();
        let distinct: BTreeSet<&String> = atoms.iter().collect();
        if distinct.len() != k {
            return Err(Error::Format("duplicate atom name".into()));
        }
        if ops.len() != sig.len() || ops.iter().any(|o| o.len() != k || o.iter().any(|s| s.universe() != k)) {
            return Err(Error::Format("operator table does not match signature and atoms".into()));
        }
        Ok(FiniteBao { sig, atoms, ops })
    }

    pub fn sig(&self) -> &Signature {
        &self.sig
    }

    pub fn atoms(&self) -> &[String] {
        &self.atoms
    }

    pub fn atom_count(&self) -> usize {
        self.atoms.len()
    }

    pub fn one(&self) -> WorldSet {
        WorldSet::full(self.atoms.len())
    }

    pub fn zero(&self) -> WorldSet {
        WorldSet::empty(self.atoms.len())
    }

    /// Value of operator `m` (by index) on an arbitrary element.
    pub fn apply(&self, m: usize, a: &WorldSet) -> WorldSet {
        let mut out = self.zero();
        for x in a.iter() {
            out.union_with(&self.ops[m][x]);
        }
        out
    }

    pub fn atom_image(&self, m: &str, atom: usize) -> Result<&WorldSet> {
        let mi = self.sig.index_of(m).ok_or_else(|| Error::UnknownModality(m.to_string()))?;
        Ok(&self.ops[mi][atom])
    }

    /// Evaluates `t` with variable `i` sent to `assignment[i]`, unassigned variables to 0.
    pub fn eval(&self, t: &BaoTerm, assignment: &BTreeMap<u32, WorldSet>) -> Result<WorldSet> {
        Ok(match t {
            BaoTerm::One => self.one(),
            BaoTerm::Zero => self.zero(),
            BaoTerm::Var(i) => assignment.get(i).cloned().unwrap_or_else(|| self.zero()),
            BaoTerm::Minus(a) => self.eval(a, assignment)?.complement(),
            BaoTerm::Plus(a, b) => self.eval(a, assignment)?.union(&self.eval(b, assignment)?),
            BaoTerm::OpDia(m, a) => {
                let mi = self.sig.index_of(m).ok_or_else(|| Error::UnknownModality(m.clone()))?;
                self.apply(mi, &self.eval(a, assignment)?)
            }
        })
    }

    /// The full subset algebra of a frame: `<m>{y}` is the set of `m`-predecessors of `y`.
    pub fn complex_algebra(frame: &Frame) -> FiniteBao {
        FiniteBao {
            sig: frame.sig().clone(),
            atoms: frame.worlds().to_vec(),
            ops: frame
                .relations()
                .iter()
                .map(|r| (0..frame.len()).map(|y| r.past(y)).collect())
                .collect(),
        }
    }

    /// The frame of (principal) ultrafilters: `R_m p q` iff `p ≤ <m>q`.
    pub fn ultrafilter_frame(&self) -> Frame {
        let k = self.atoms.len();
        let rels = self
            .ops
            .iter()
            .map(|op| Relation::from_pairs(k, (0..k).flat_map(|q| op[q].iter().map(move |p| (p, q)))))
            .collect();
        Frame::new(self.sig.clone(), self.atoms.clone(), rels).expect("atom names are distinct")
    }

    /// For a finite algebra this is the complex algebra of its ultrafilter
    /// frame, which reproduces the algebra itself.
    pub fn canonical_extension(&self) -> FiniteBao {
        FiniteBao::complex_algebra(&self.ultrafilter_frame())
    }

    /// An atom bijection `self -> other` commuting with every operator.
    pub fn isomorphism(&self, other: &FiniteBao) -> Option<Vec<usize>> {
        if self.sig != other.sig {
            return None;
        }
        self.ultrafilter_frame().isomorphism(&other.ultrafilter_frame())
    }

    /// Checks `lhs = rhs` under every assignment to the variables of both
    /// sides. Assignments are tried in the same order as valuations in
    /// frame validity checking, so the witness matches.
    pub fn validates_equation(&self, lhs: &BaoTerm, rhs: &BaoTerm, budget: u64) -> Result<EquationVerdict> {
        let mut mods = BTreeSet::new();
        lhs.modalities(&mut mods);
        rhs.modalities(&mut mods);
        if let Some(m) = mods.into_iter().find(|m| !self.sig.contains(m)) {
            return Err(Error::UnknownModality(m.to_string()));
        }
        let vars: Vec<u32> = lhs.vars().union(&rhs.vars()).copied().collect();
        let k = self.atoms.len();
        let bits = vars.len() * k;
        let required = if bits >= 127 { u128::MAX } else { 1u128 << bits };
        if bits >= 64 || required > budget as u128 {
            return Err(Error::BudgetExceeded {
                required_bits: bits as u32,
                required,
                budget,
            });
        }
        for v in 0..1u64 << bits {
            let assignment: BTreeMap<u32, WorldSet> = vars
                .iter()
                .enumerate()
                .map(|(s, &var)| (var, WorldSet::from_indices(k, (0..k).filter(|a| v >> (s * k + a) & 1 == 1))))
                .collect();
            if self.eval(lhs, &assignment)? != self.eval(rhs, &assignment)? {
                return Ok(EquationVerdict {
                    holds: false,
                    witness: Some(assignment),
                });
            }
        }
        Ok(EquationVerdict {
            holds: true,
            witness: None,
        })
    }

    /// Normalises an algebra given by operation tables on elements `0..size`
    /// to atomic form. `ops[m][e]` is the operator value on element `e`.
    pub fn from_tables(
        sig: Signature,
        join: &[Vec<usize>],
        complement: &[usize],
        ops: &[Vec<usize>],
    ) -> Result<FiniteBao> {
        let size = join.len();
        let bad = |msg: &str| Err(Error::Format(format!("not a boolean algebra with operators: {msg}")));
        if size == 0 || complement.len() != size || join.iter().any(|row| row.len() != size) {
            return bad("table sizes differ");
        }
        if join.iter().flatten().chain(complement).any(|&e| e >= size) {
            return bad("element out of range");
        }
        if ops.len() != sig.len() || ops.iter().any(|o| o.len() != size || o.iter().any(|&e| e >= size)) {
            return bad("operator tables do not match the signature");
        }
        let leq = |a: usize, b: usize| join[a][b] == b;
        let Some(zero) = (0..size).find(|&z| (0..size).all(|x| leq(z, x))) else {
            return bad("no least element");
        };
        let atom_elems: Vec<usize> =
            (0..size).filter(|&a| a != zero && (0..size).all(|x| x == zero || x == a || !leq(x, a))).collect();
        let k = atom_elems.len();
        if size != 1 << k {
            return bad("element count is not a power of two in the atom count");
        }
        let below: Vec<WorldSet> = (0..size)
            .map(|e| WorldSet::from_indices(k, (0..k).filter(|&i| leq(atom_elems[i], e))))
            .collect();
        let distinct: BTreeSet<&WorldSet> = below.iter().collect();
        if distinct.len() != size {
            return bad("elements are not determined by the atoms below them");
        }
        for a in 0..size {
            if below[complement[a]] != below[a].complement() {
                return bad("complement is not set complement");
            }
            for b in 0..size {
                if below[join[a][b]] != below[a].union(&below[b]) {
                    return bad("join is not union");
                }
            }
        }
        for op in ops {
            if !below[op[zero]].is_empty() {
                return bad("operator is not normal");
            }
            for a in 0..size {
                for b in 0..size {
                    if below[op[join[a][b]]] != below[op[a]].union(&below[op[b]]) {
                        return bad("operator is not additive");
                    }
                }
            }
        }
        FiniteBao::new(
            sig,
            atom_elems.iter().map(|e| format!("e{e}")).collect(),
            ops.iter().map(|op| atom_elems.iter().map(|&a| below[op[a]].clone()).collect()).collect(),
        )
    }

    pub fn to_file(&self) -> AlgebraFile {
        AlgebraFile {
            modalities: self.sig.names().to_vec(),
            atoms: self.atoms.clone(),
            op: self
                .sig
                .names()
                .iter()
                .zip(&self.ops)
                .map(|(m, imgs)| {
                    let table = self
                        .atoms
                        .iter()
                        .zip(imgs)
                        .map(|(a, img)| (a.clone(), img.iter().map(|i| self.atoms[i].clone()).collect()))
                        .collect();
                    (m.clone(), table)
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("algebra serialises")
    }

    /// Reads an algebra file; atoms missing from an operator table map to 0.
    pub fn from_json_str(text: &str) -> Result<FiniteBao> {
        let file: AlgebraFile = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
        let sig = Signature::new(file.modalities).map_err(|e| Error::Format(e.to_string()))?;
        let k = file.atoms.len();
        let index: BTreeMap<&str, usize> = file.atoms.iter().enumerate().map(|(i, a)| (a.as_str(), i)).collect();
        let lookup = |a: &str| index.get(a).copied().ok_or_else(|| Error::Format(format!("unknown atom `{a}`")));
        let mut ops = vec![vec![WorldSet::empty(k); k]; sig.len()];
        for (m, table) in &file.op {
            let mi = sig
                .index_of(m)
                .ok_or_else(|| Error::Format(format!("operator for undeclared modality `{m}`")))?;
            for (a, img) in table {
                let ai = lookup(a)?;
                for b in img {
                    ops[mi][ai].insert(lookup(b)?);
                }
            }
        }
        FiniteBao::new(sig, file.atoms, ops)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::{and, atom, dia, not, or, parse_unchecked, top};
    use crate::semantics::{valid_on_frame, DEFAULT_BUDGET};

    fn mono(n: usize, pairs: &[(usize, usize)]) -> Frame {
        Frame::mono("d", Relation::from_pairs(n, pairs.iter().copied()))
    }

    #[test]
    fn translation_examples() {
        assert_eq!(formula_to_term(&top()), BaoTerm::One);
        assert_eq!(formula_to_term(&or(not(atom(0)), atom(1))).to_string(), "-v0 + v1");
        assert_eq!(formula_to_term(&dia("d", and(atom(0), atom(1)))).to_string(), "<d>-(-v0 + -v1)");
        assert_eq!(term_to_formula(&BaoTerm::One), top());
        let (l, r) = parse_equation("v0 = 1").unwrap();
        assert_eq!(equation_to_formula(&l, &r).to_string(), "p0 <-> true");
    }

    #[test]
    fn term_parse_print_round_trip() {
        for s in ["1", "0", "v3", "-v0 + v1", "<d>(v0 + v1)", "v0 + (v1 + v2)", "--<e>0"] {
            assert_eq!(parse_term(s).unwrap().to_string(), s);
        }
        assert_eq!(parse_term("(v0 + v1) + v2").unwrap().to_string(), "v0 + v1 + v2");
        assert!(matches!(parse_term("v0 +"), Err(Error::Parse { pos: 4, .. })));
        assert!(parse_term("w1").is_err());
        assert!(parse_equation("v0 + 1").is_err());
    }

    #[test]
    fn formula_round_trip() {
        let phi = parse_unchecked("[d](p0 -> <e>p1) | ~true").unwrap();
        assert_eq!(term_to_formula(&formula_to_term(&phi)), phi);
    }

    #[test]
    fn complex_algebra_is_predecessors() {
        let a = FiniteBao::complex_algebra(&mono(1, &[]));
        assert!(a.atom_image("d", 0).unwrap().is_empty());
        let a = FiniteBao::complex_algebra(&mono(2, &[(0, 1)]));
        assert_eq!(a.atom_image("d", 1).unwrap(), &WorldSet::singleton(2, 0));
        assert!(a.atom_image("d", 0).unwrap().is_empty());
    }

    #[test]
    fn ultrafilter_frame_examples() {
        let sig = Signature::mono("d");
        let id = FiniteBao::new(sig.clone(), vec!["x".into(), "y".into()], vec![vec![
            WorldSet::singleton(2, 0),
            WorldSet::singleton(2, 1),
        ]])
        .unwrap();
        assert_eq!(id.ultrafilter_frame().relations()[0], Relation::identity(2));
        let full = FiniteBao::new(sig, vec!["x".into(), "y".into()], vec![vec![WorldSet::full(2); 2]]).unwrap();
        assert_eq!(full.ultrafilter_frame().relations()[0], Relation::total(2));
    }

    #[test]
    fn double_dual_on_all_small_frames() {
        for n in 1..=3 {
            for mask in 0u64..1 << (n * n) {
                let f = Frame::mono("d", Relation::from_mask(n, mask));
                let a = FiniteBao::complex_algebra(&f);
                assert!(a.ultrafilter_frame().isomorphism(&f).is_some());
                assert!(a.canonical_extension().isomorphism(&a).is_some());
            }
        }
    }

    #[test]
    fn equation_witness_matches_frame_witness() {
        let f = mono(3, &[(0, 1), (0, 2), (1, 1), (2, 2)]);
        let u1 = parse_unchecked("[d]([d]p0 -> [d]p1) | [d]([d]p1 -> [d]p0)").unwrap();
        let a = FiniteBao::complex_algebra(&f);
        let eq = a.validates_equation(&formula_to_term(&u1), &BaoTerm::One, DEFAULT_BUDGET).unwrap();
        let fr = valid_on_frame(&f, &u1, DEFAULT_BUDGET).unwrap();
        assert!(!eq.holds && !fr.valid);
        assert_eq!(eq.witness.unwrap(), fr.witness.unwrap().valuation);
        assert!(a.validates_equation(&BaoTerm::One, &BaoTerm::One, 1).unwrap().holds);
        assert!(matches!(
            a.validates_equation(&BaoTerm::Var(0), &BaoTerm::One, 4),
            Err(Error::BudgetExceeded { required_bits: 3, .. })
        ));
    }

    #[test]
    fn tables_normalise_to_atoms() {
        // the four-element algebra with atoms 1 and 2, top 3; operator swaps the atoms
        let join: Vec<Vec<usize>> = (0..4).map(|a| (0..4).map(|b| a | b).collect()).collect();
        let complement = vec![3, 2, 1, 0];
        let swap = vec![0, 2, 1, 3];
        let a = FiniteBao::from_tables(Signature::mono("d"), &join, &complement, &[swap]).unwrap();
        assert_eq!(a.atoms(), ["e1", "e2"]);
        assert_eq!(a.atom_image("d", 0).unwrap(), &WorldSet::singleton(2, 1));
        let not_normal = vec![1, 1, 3, 3];
        assert!(FiniteBao::from_tables(Signature::mono("d"), &join, &complement, &[not_normal]).is_err());
        let three: Vec<Vec<usize>> = (0..3).map(|a| (0..3).map(|b| a.max(b)).collect()).collect();
        assert!(FiniteBao::from_tables(Signature::mono("d"), &three, &[2, 1, 0], &[vec![0, 1, 2]]).is_err());
    }

    #[test]
    fn json_round_trip() {
        let text = r#"{ "modalities":["d"], "atoms":["x","y"], "op": { "d": { "x":["x","y"], "y":[] } } }"#;
        let a = FiniteBao::from_json_str(text).unwrap();
        assert_eq!(a.atom_image("d", 0).unwrap(), &WorldSet::full(2));
        assert_eq!(FiniteBao::from_json_str(&a.to_json()).unwrap(), a);
        assert!(FiniteBao::from_json_str(r#"{"modalities":["d"],"atoms":["x"],"op":{"d":{"z":[]}}}"#).is_err());
        assert!(FiniteBao::from_json_str(r#"{"modalities":["d"],"atoms":["x"],"extra":1}"#).is_err());
    }
}
