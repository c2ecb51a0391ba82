//! First-order frame conditions, checked directly on the relation.
//!
//! Every checker returns the lexicographically first counterexample, with
//! worlds compared by their index in the frame.

use std::fmt;

use crate::clique;
use crate::error::{Error, Result};
use crate::frames::{Frame, Relation};
use crate::worldset::WorldSet;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionReport {
    pub holds: bool,
    /// Variable bindings such as `[("x", "a"), ("y0", "x0")]`.
    pub counterexample: Option<Vec<(String, String)>>,
}

impl ConditionReport {
    fn ok() -> Self {
        ConditionReport {
            holds: true,
            counterexample: None,
        }
    }

    fn fail(bindings: Vec<(String, String)>) -> Self {
        ConditionReport {
            holds: false,
            counterexample: Some(bindings),
        }
    }

    fn from(found: Option<Vec<(String, String)>>) -> Self {
        found.map_or_else(Self::ok, Self::fail)
    }

    /// World bound to `var` in the counterexample, if any.
    pub fn binding(&self, var: &str) -> Option<&str> {
        self.counterexample
            .as_ref()?
            .iter()
            .find(|(v, _)| v == var)
            .map(|(_, w)| w.as_str())
    }
}

impl fmt::Display for ConditionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.counterexample {
            None => write!(f, "HOLDS"),
            Some(b) => {
                write!(f, "FAILS")?;
                for (v, w) in b {
                    write!(f, " {v}={w}")?;
                }
                Ok(())
            }
        }
    }
}

fn bind(frame: &Frame, var: impl Into<String>, w: usize) -> (String, String) {
    (var.into(), frame.world_name(w).to_string())
}

fn tuple_bindings(frame: &Frame, x: usize, ys: &[usize]) -> Vec<(String, String)> {
    let mut b = vec![bind(frame, "x", x)];
    b.extend(ys.iter().enumerate().map(|(i, &y)| bind(frame, format!("y{i}"), y)));
    b
}

fn power_image(r: &Relation, n: usize, x: usize) -> WorldSet {
    let mut cur = WorldSet::singleton(r.len(), x);
    for _ in 0..n {
        cur = r.image(&cur);
    }
    cur
}

fn positive(n: usize, what: &str) -> Result<()> {
    if n == 0 {
        return Err(Error::BadParameter(format!("{what} needs n >= 1")));
    }
    Ok(())
}

/// `R x y ∧ Rⁿ x z → R y z`.
pub fn check_5n(frame: &Frame, n: usize, m: &str) -> Result<ConditionReport> {
    let r = frame.relation(m)?;
    for x in 0..frame.len() {
        let reach = power_image(r, n, x);
        for y in r.future(x).iter() {
            if let Some(z) = reach.difference(r.future(y)).first() {
                return Ok(ConditionReport::fail(vec![
                    bind(frame, "x", x),
                    bind(frame, "y", y),
                    bind(frame, "z", z),
                ]));
            }
        }
    }
    Ok(ConditionReport::ok())
}

/// `Rⁿ x y ∧ Rⁿ⁺¹ x z → R y z` for every `n ≤ max_n`. The counterexample
/// also binds `n`.
pub fn check_e52_upto(frame: &Frame, m: &str, max_n: usize) -> Result<ConditionReport> {
    let r = frame.relation(m)?;
    for n in 0..=max_n {
        for x in 0..frame.len() {
            let ys = power_image(r, n, x);
            let zs = r.image(&ys);
            for y in ys.iter() {
                if let Some(z) = zs.difference(r.future(y)).first() {
                    return Ok(ConditionReport::fail(vec![
                        ("n".to_string(), n.to_string()),
                        bind(frame, "x", x),
                        bind(frame, "y", y),
                        bind(frame, "z", z),
                    ]));
                }
            }
        }
    }
    Ok(ConditionReport::ok())
}

/// First `x` (in world order) whose `dia`-future holds an `(n+1)`-clique of
/// `graph`, together with the lexicographically least such clique.
fn first_wide_future(frame: &Frame, dia: &Relation, graph: &[WorldSet], n: usize) -> Option<Vec<(String, String)>> {
    (0..frame.len()).find_map(|x| {
        clique::first_clique_of_size(graph, dia.future(x), n + 1).map(|ys| tuple_bindings(frame, x, &ys))
    })
}

/// The correspondent of `Uₙ` for the pair `(dia, blackdia)`: no `dia`-future
/// contains `n+1` points with pairwise ⊆-incomparable `blackdia`-futures.
pub fn check_un(frame: &Frame, n: usize, dia: &str, blackdia: &str) -> Result<ConditionReport> {
    positive(n, "U_n")?;
    let d = frame.relation(dia)?;
    let graph = frame.relation(blackdia)?.overline().antichain_graph();
    Ok(ConditionReport::from(first_wide_future(frame, d, &graph, n)))
}

/// `check_un` by direct quantification over all `(n+1)`-tuples; exponential,
/// kept as a cross-check for tiny frames.
pub fn check_un_literal(frame: &Frame, n: usize, dia: &str, blackdia: &str) -> Result<ConditionReport> {
    positive(n, "U_n")?;
    let d = frame.relation(dia)?;
    let b = frame.relation(blackdia)?;
    for x in 0..frame.len() {
        let fut: Vec<usize> = d.future(x).iter().collect();
        if fut.is_empty() {
            continue;
        }
        let mut idx = vec![0usize; n + 1];
        loop {
            let ys: Vec<usize> = idx.iter().map(|&i| fut[i]).collect();
            let some_pair = (0..=n).any(|i| (0..=n).any(|j| i != j && b.future(ys[i]).is_subset(b.future(ys[j]))));
            if !some_pair {
                return Ok(ConditionReport::fail(tuple_bindings(frame, x, &ys)));
            }
            if !advance(&mut idx, fut.len()) {
                break;
            }
        }
    }
    Ok(ConditionReport::ok())
}

/// Steps an odometer over `base^len` digit tuples, last digit fastest.
fn advance(idx: &mut [usize], base: usize) -> bool {
    for k in (0..idx.len()).rev() {
        idx[k] += 1;
        if idx[k] < base {
            return true;
        }
        idx[k] = 0;
    }
    false
}

/// No `R(x)` contains an `R`-antichain with more than `n` points.
pub fn check_in(frame: &Frame, n: usize, m: &str) -> Result<ConditionReport> {
    positive(n, "I_n")?;
    let r = frame.relation(m)?;
    Ok(ConditionReport::from(first_wide_future(frame, r, &r.antichain_graph(), n)))
}

/// All futures pairwise ⊆-comparable.
pub fn check_chain(frame: &Frame, m: &str) -> Result<ConditionReport> {
    let r = frame.relation(m)?;
    let n = frame.len();
    for x in 0..n {
        for y in x + 1..n {
            let (fx, fy) = (r.future(x), r.future(y));
            if !fx.is_subset(fy) && !fy.is_subset(fx) {
                return Ok(ConditionReport::fail(vec![bind(frame, "x", x), bind(frame, "y", y)]));
            }
        }
    }
    Ok(ConditionReport::ok())
}

/// Proper future `{z : R y z ∧ ¬R z y}`.
pub fn proper_future(r: &Relation, y: usize) -> WorldSet {
    WorldSet::from_indices(r.len(), r.future(y).iter().filter(|&z| !r.contains(z, y)))
}

/// Every `(n+1)`-point antichain inside some `R(x)` has two distinct members
/// with the same proper future.
pub fn check_widstar(frame: &Frame, n: usize, m: &str) -> Result<ConditionReport> {
    positive(n, "Wid*_n")?;
    let r = frame.relation(m)?;
    let proper: Vec<WorldSet> = (0..frame.len()).map(|y| proper_future(r, y)).collect();
    let graph: Vec<WorldSet> = r
        .antichain_graph()
        .into_iter()
        .enumerate()
        .map(|(y, adj)| WorldSet::from_indices(frame.len(), adj.iter().filter(|&z| proper[y] != proper[z])))
        .collect();
    Ok(ConditionReport::from(first_wide_future(frame, r, &graph, n)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FrameProps {
    pub reflexive: bool,
    pub transitive: bool,
    pub symmetric: bool,
}

pub fn frame_props(frame: &Frame, m: &str) -> Result<FrameProps> {
    let r = frame.relation(m)?;
    Ok(FrameProps {
        reflexive: r.is_reflexive(),
        transitive: r.is_transitive(),
        symmetric: r.is_symmetric(),
    })
}

/// Shape of a point-generated frame in the classification of K5 frames.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Segerberg {
    SingleIrreflexive,
    ReflexiveCofinal,
    Neither,
}

impl fmt::Display for Segerberg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Segerberg::SingleIrreflexive => "SingleIrreflexive",
            Segerberg::ReflexiveCofinal => "ReflexiveCofinal",
            Segerberg::Neither => "Neither",
        })
    }
}

/// Classifies the `m`-reduct of a frame generated by `w`.
pub fn segerberg_classify(frame: &Frame, w: &str, m: &str) -> Result<Segerberg> {
    let wi = frame.world_index(w)?;
    let r = frame.relation(m)?;
    if !frame.is_point_generated_by(wi) {
        return Err(Error::NotPointGenerated(w.to_string()));
    }
    if frame.len() == 1 && !r.contains(0, 0) {
        return Ok(Segerberg::SingleIrreflexive);
    }
    let reflexive = WorldSet::from_indices(frame.len(), (0..frame.len()).filter(|&x| r.contains(x, x)));
    if (0..frame.len()).all(|x| r.future(x).intersects(&reflexive)) {
        Ok(Segerberg::ReflexiveCofinal)
    } else {
        Ok(Segerberg::Neither)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mono(n: usize, pairs: &[(usize, usize)]) -> Frame {
        Frame::mono("d", Relation::from_pairs(n, pairs.iter().copied()))
    }

    fn omega_lt(n: usize) -> Frame {
        mono(n, &(0..n).flat_map(|x| (x + 1..n).map(move |y| (x, y))).collect::<Vec<_>>())
    }

    fn rake(teeth: usize) -> Frame {
        let pairs: Vec<_> = (1..=teeth).flat_map(|t| [(0, t), (t, t)]).collect();
        mono(teeth + 1, &pairs)
    }

    #[test]
    fn five_zero_is_symmetry() {
        for mask in 0u64..1 << 9 {
            let f = Frame::mono("d", Relation::from_mask(3, mask));
            assert_eq!(check_5n(&f, 0, "d").unwrap().holds, f.relations()[0].is_symmetric());
        }
    }

    #[test]
    fn omega_truncation_fails_52_at_first_triple() {
        let r = check_5n(&omega_lt(5), 2, "d").unwrap();
        assert!(!r.holds);
        assert_eq!(r.to_string(), "FAILS x=0 y=2 z=2");
    }

    #[test]
    fn e52_clause_zero_never_fails() {
        for mask in 0u64..1 << 9 {
            let f = Frame::mono("d", Relation::from_mask(3, mask));
            assert!(check_e52_upto(&f, "d", 0).unwrap().holds);
        }
    }

    #[test]
    fn rake_widths() {
        for t in 1..=4 {
            let f = rake(t);
            assert!(check_un(&f, t, "d", "d").unwrap().holds);
            assert!(check_in(&f, t, "d").unwrap().holds);
            if t > 1 {
                let r = check_un(&f, t - 1, "d", "d").unwrap();
                assert_eq!(r.binding("x"), Some("0"));
                assert_eq!(r.counterexample.unwrap().len(), t + 1);
                assert!(!check_chain(&f, "d").unwrap().holds);
            }
            assert!(check_widstar(&f, 1, "d").unwrap().holds);
        }
    }

    #[test]
    fn literal_un_matches_clique_version_on_small_frames() {
        for n_worlds in 1..=3 {
            for mask in 0u64..1 << (n_worlds * n_worlds) {
                let f = Frame::mono("d", Relation::from_mask(n_worlds, mask));
                for n in 1..=2 {
                    assert_eq!(check_un(&f, n, "d", "d").unwrap(), check_un_literal(&f, n, "d", "d").unwrap());
                }
            }
        }
    }

    #[test]
    fn zero_parameter_rejected() {
        let f = rake(1);
        assert!(matches!(check_un(&f, 0, "d", "d"), Err(Error::BadParameter(_))));
        assert!(matches!(check_in(&f, 0, "d"), Err(Error::BadParameter(_))));
        assert!(matches!(check_widstar(&f, 0, "d"), Err(Error::BadParameter(_))));
        assert!(check_5n(&f, 0, "d").is_ok());
        assert!(matches!(check_5n(&f, 0, "e"), Err(Error::UnknownModality(_))));
    }

    #[test]
    fn one_world_holds_everything() {
        for refl in [false, true] {
            let f = mono(1, if refl { &[(0, 0)] } else { &[] });
            for n in 1..=3 {
                assert!(check_in(&f, n, "d").unwrap().holds);
                assert!(check_widstar(&f, n, "d").unwrap().holds);
            }
        }
    }

    #[test]
    fn segerberg_examples() {
        assert_eq!(segerberg_classify(&mono(1, &[]), "0", "d").unwrap(), Segerberg::SingleIrreflexive);
        let f = mono(3, &[(0, 1), (1, 1), (1, 2), (2, 1), (2, 2)]);
        assert_eq!(segerberg_classify(&f, "0", "d").unwrap(), Segerberg::ReflexiveCofinal);
        assert_eq!(segerberg_classify(&mono(2, &[(0, 1)]), "0", "d").unwrap(), Segerberg::Neither);
        assert!(matches!(
            segerberg_classify(&f, "1", "d"),
            Err(Error::NotPointGenerated(_))
        ));
    }

    #[test]
    fn props_of_closures() {
        let f = mono(3, &[(0, 1), (1, 2)]);
        assert!(frame_props(&f.reflexive_closure(), "d").unwrap().reflexive);
        let p = frame_props(&f.transitive_closure(), "d").unwrap();
        assert!(p.transitive && !p.symmetric && !p.reflexive);
    }
}
