//! The named axioms and formula families.
//!
//! Atom conventions: the `q_i` of an axiom are `p_i`; an extra atom `p`
//! disjoined onto an axiom with atoms `p0..pn` is `p_{n+1}`; in `H`, `s` is
//! `p0` and `t` is `p1`. Big conjunctions and disjunctions fold to the left,
//! and index pairs `(i, j)` run in lexicographic order.

use crate::error::{Error, Result};
use crate::formula::{and, atom, boxed, conj, dia, dia_n, disj, imp, not, or, top, Formula, Signature};

fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..=n).flat_map(move |i| (0..=n).filter(move |&j| j != i).map(move |j| (i, j)))
}

fn q(i: usize) -> Formula {
    atom(i as u32)
}

fn positive(n: usize, what: &str) -> Result<()> {
    if n == 0 {
        return Err(Error::BadParameter(format!("{what} needs n >= 1")));
    }
    Ok(())
}

/// `◇ⁱ⊤ ∧ ¬◇ⁱ⁺¹⊤`, unsimplified.
pub fn alpha(m: &str, i: usize) -> Formula {
    and(dia_n(m, i, top()), not(dia_n(m, i + 1, top())))
}

/// `□(α_i → p) ∨ □(α_i → ¬p)` for the given atom `p`.
pub fn split(m: &str, i: usize, p: u32) -> Formula {
    or(boxed(m, imp(alpha(m, i), atom(p))), boxed(m, imp(alpha(m, i), not(atom(p)))))
}

/// `φ_i`, with `p = p0`.
pub fn phi(m: &str, i: usize) -> Formula {
    split(m, i, 0)
}

/// `A ∨ □(α_i → p) ∨ □(α_i → ¬p)` with `p` the first atom above those of `A`.
fn disjoin_split(axiom: Formula, m: &str, i: usize) -> Formula {
    let p = axiom.atoms().last().map_or(0, |a| a + 1);
    let s = split(m, i, p);
    let Formula::Or(l, r) = s else { unreachable!("split is a disjunction") };
    or(or(axiom, *l), *r)
}

/// `◇ⁿp → □◇p` with `p = p0`.
pub fn five(m: &str, n: usize) -> Formula {
    imp(dia_n(m, n, q(0)), boxed(m, dia(m, q(0))))
}

/// `⋁_{i≤n} □(■q_i → ⋁_{j≠i} ■q_j)` where `□` belongs to `dia` and `■` to `blackdia`.
pub fn u(n: usize, dia_m: &str, black: &str) -> Result<Formula> {
    positive(n, "U_n")?;
    let disjuncts = (0..=n).map(|i| {
        let rest = disj((0..=n).filter(|&j| j != i).map(|j| boxed(black, q(j)))).expect("n >= 1");
        boxed(dia_m, imp(boxed(black, q(i)), rest))
    });
    Ok(disj(disjuncts).expect("nonempty"))
}

/// `(⋀_{i≤n} ◇(r_i ∧ ■q_i)) → ⋁_{i≠j} ◇(r_i ∧ ■q_j)` with `r_i = p_{n+1+i}`.
pub fn u_alt(n: usize, dia_m: &str, black: &str) -> Result<Formula> {
    positive(n, "U_n")?;
    let r = |i: usize| q(n + 1 + i);
    let lhs = conj((0..=n).map(|i| dia(dia_m, and(r(i), boxed(black, q(i)))))).expect("nonempty");
    let rhs = disj(pairs(n).map(|(i, j)| dia(dia_m, and(r(i), boxed(black, q(j)))))).expect("n >= 1");
    Ok(imp(lhs, rhs))
}

/// One `Uₙ` instance per ordered pair of modalities, in signature order.
pub fn u_set(n: usize, sig: &Signature) -> Result<Vec<Formula>> {
    let names = sig.names();
    names.iter().flat_map(|a| names.iter().map(move |b| u(n, a, b))).collect()
}

/// `(⋀_{i≤n} ◇q_i) → ⋁_{i≠j} ◇(q_i ∧ (q_j ∨ ◇q_j))`.
pub fn i_n(m: &str, n: usize) -> Result<Formula> {
    positive(n, "I_n")?;
    let lhs = conj((0..=n).map(|i| dia(m, q(i)))).expect("nonempty");
    let rhs = disj(pairs(n).map(|(i, j)| dia(m, and(q(i), or(q(j), dia(m, q(j))))))).expect("n >= 1");
    Ok(imp(lhs, rhs))
}

/// `ψ_i = Iₙ ∨ □(α_i→p) ∨ □(α_i→¬p)`.
pub fn psi(m: &str, i: usize, n: usize) -> Result<Formula> {
    Ok(disjoin_split(i_n(m, n)?, m, i))
}

/// `ξ_i = 5₂ ∨ □(α_i→p) ∨ □(α_i→¬p)`.
pub fn xi(m: &str, i: usize) -> Formula {
    disjoin_split(five(m, 2), m, i)
}

/// `ζ_i = Uₙ ∨ □(α_i→p) ∨ □(α_i→¬p)`.
pub fn zeta(m: &str, i: usize, n: usize) -> Result<Formula> {
    Ok(disjoin_split(u(n, m, m)?, m, i))
}

/// `◇◇p → ◇p`.
pub fn four(m: &str) -> Formula {
    imp(dia(m, dia(m, q(0))), dia(m, q(0)))
}

/// `p → ◇p`.
pub fn t(m: &str) -> Formula {
    imp(q(0), dia(m, q(0)))
}

/// `□◇p → ◇□p`.
pub fn mck(m: &str) -> Formula {
    imp(boxed(m, dia(m, q(0))), dia(m, boxed(m, q(0))))
}

/// `◇p ∧ □(p → □p) → p`.
pub fn q_axiom(m: &str) -> Formula {
    imp(and(dia(m, q(0)), boxed(m, imp(q(0), boxed(m, q(0))))), q(0))
}

/// `□(□(p → □p) → p) → p`.
pub fn grz(m: &str) -> Formula {
    imp(boxed(m, imp(boxed(m, imp(q(0), boxed(m, q(0)))), q(0))), q(0))
}

/// `¬(s ∧ □(s → ◇(¬s ∧ t ∧ ◇(¬s ∧ ¬t ∧ ◇s))))` over arbitrary `s` and `t`.
pub fn h_with(m: &str, s: Formula, t: Formula) -> Formula {
    let inner = dia(m, and(and(not(s.clone()), not(t.clone())), dia(m, s.clone())));
    let mid = dia(m, and(and(not(s.clone()), t), inner));
    not(and(s.clone(), boxed(m, imp(s, mid))))
}

pub fn h(m: &str) -> Formula {
    h_with(m, q(0), q(1))
}

pub fn h_circ(m: &str) -> Formula {
    h(m).circ()
}

/// Names accepted by [`gen_formula`], with their parameter lists.
pub const FORMULA_NAMES: [(&str, &str); 17] = [
    ("alpha", "i"),
    ("phi", "i"),
    ("psi", "i,n"),
    ("xi", "i"),
    ("zeta", "i,n"),
    ("five", "n"),
    ("U", "n"),
    ("Ualt", "n"),
    ("Uset", "n"),
    ("I", "n"),
    ("four", ""),
    ("T", ""),
    ("M", ""),
    ("Q", ""),
    ("Grz", ""),
    ("H", ""),
    ("Hcirc", ""),
];

/// Generates a named formula (or, for `Uset`, one per modality pair) over `sig`.
/// Monomodal families use the first modality of `sig`.
pub fn gen_formula(name: &str, params: &[usize], sig: &Signature) -> Result<Vec<Formula>> {
    let m = sig.names()[0].as_str();
    let want = FORMULA_NAMES
        .iter()
        .find(|(n, _)| n.eq_ignore_ascii_case(name))
        .ok_or_else(|| Error::BadParameter(format!("unknown formula `{name}`")))?;
    let arity = if want.1.is_empty() { 0 } else { want.1.split(',').count() };
    if params.len() != arity {
        return Err(Error::BadParameter(format!(
            "formula {} takes parameters ({}), got {}",
            want.0,
            want.1,
            params.len()
        )));
    }
    let p = |k: usize| params[k];
    let one = |f: Formula| Ok(vec![f]);
    match want.0 {
        "alpha" => one(alpha(m, p(0))),
        "phi" => one(phi(m, p(0))),
        "psi" => one(psi(m, p(0), p(1))?),
        "xi" => one(xi(m, p(0))),
        "zeta" => one(zeta(m, p(0), p(1))?),
        "five" => one(five(m, p(0))),
        "U" => one(u(p(0), m, m)?),
        "Ualt" => one(u_alt(p(0), m, m)?),
        "Uset" => u_set(p(0), sig),
        "I" => one(i_n(m, p(0))?),
        "four" => one(four(m)),
        "T" => one(t(m)),
        "M" => one(mck(m)),
        "Q" => one(q_axiom(m)),
        "Grz" => one(grz(m)),
        "H" => one(h(m)),
        "Hcirc" => one(h_circ(m)),
        _ => unreachable!(),
    }
}
