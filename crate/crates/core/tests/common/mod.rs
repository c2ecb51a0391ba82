//! Helpers shared by the integration suites and the acceptance runner.
#![allow(dead_code)]

use kripke::formula::{and, atom, bot, boxed, dia, iff, imp, not, or, top};
use kripke::{Formula, Frame, Relation, WorldSet};
use rand::Rng;

pub const D: &str = "d";

/// Every monomodal frame on `1..=max` worlds, in (size, mask) order.
pub fn all_frames(max: usize) -> impl Iterator<Item = Frame> {
    (1..=max).flat_map(|n| (0u64..1 << (n * n)).map(move |m| Frame::mono(D, Relation::from_mask(n, m))))
}

pub fn random_frame<R: Rng>(rng: &mut R, max: usize) -> Frame {
    let n = rng.gen_range(1..=max);
    let density: f64 = rng.gen_range(0.1..0.7);
    let pairs: Vec<(usize, usize)> =
        (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).filter(|_| rng.gen_bool(density)).collect();
    Frame::mono(D, Relation::from_pairs(n, pairs))
}

pub fn random_set<R: Rng>(rng: &mut R, n: usize) -> WorldSet {
    WorldSet::from_indices(n, (0..n).filter(|_| rng.gen_bool(0.5)))
}

/// Random formula over `atoms` atoms and the modalities `mods`, depth at most `depth`.
pub fn random_formula<R: Rng>(rng: &mut R, depth: usize, atoms: u32, mods: &[&str]) -> Formula {
    if depth == 0 || rng.gen_bool(0.2) {
        return match rng.gen_range(0..6) {
            0 => top(),
            1 => bot(),
            _ => atom(rng.gen_range(0..atoms)),
        };
    }
    let sub = |rng: &mut R| random_formula(rng, depth - 1, atoms, mods);
    match rng.gen_range(0..7) {
        0 => not(sub(rng)),
        1 => {
            let a = sub(rng);
            or(a, sub(rng))
        }
        2 => {
            let a = sub(rng);
            and(a, sub(rng))
        }
        3 => {
            let a = sub(rng);
            imp(a, sub(rng))
        }
        4 => {
            let a = sub(rng);
            iff(a, sub(rng))
        }
        5 => {
            let m = mods[rng.gen_range(0..mods.len())];
            dia(m, sub(rng))
        }
        _ => {
            let m = mods[rng.gen_range(0..mods.len())];
            boxed(m, sub(rng))
        }
    }
}

/// Fixed pool of 50 distinct formulas of modal depth at most 2 over `p0`, `p1`.
pub fn depth2_pool() -> Vec<Formula> {
    let (p, q) = (atom(0), atom(1));
    let lits = vec![
        p.clone(),
        q.clone(),
        not(p.clone()),
        not(q.clone()),
        top(),
        bot(),
        and(p.clone(), q.clone()),
        or(p.clone(), q.clone()),
        imp(p.clone(), q.clone()),
    ];
    let mut pool = lits.clone();
    let mut one = Vec::new();
    for l in &lits {
        one.push(dia(D, l.clone()));
        one.push(boxed(D, l.clone()));
    }
    pool.extend(one.iter().cloned());
    for f in one.iter().take(6) {
        pool.push(dia(D, f.clone()));
        pool.push(boxed(D, f.clone()));
    }
    let mut k = 0;
    while pool.len() < 50 {
        let a = &one[k % one.len()];
        let b = &one[(3 * k + 5) % one.len()];
        pool.push(match k % 3 {
            0 => imp(a.clone(), b.clone()),
            1 => and(a.clone(), dia(D, or(p.clone(), b.clone()))),
            _ => or(not(a.clone()), boxed(D, and(q.clone(), b.clone()))),
        });
        k += 1;
    }
    for (i, f) in pool.iter().enumerate() {
        assert!(!pool[..i].contains(f), "duplicate pool formula {f}");
    }
    assert_eq!(pool.len(), 50);
    assert!(pool.iter().all(|f| f.modal_depth() <= 2));
    pool
}

/// Largest subset of `s` with pairwise ⊆-incomparable futures, by subset enumeration.
pub fn achronal_brute(r: &Relation, s: &WorldSet) -> usize {
    let members: Vec<usize> = s.iter().collect();
    let mut best = 0;
    for mask in 0u32..1 << members.len() {
        let pick: Vec<usize> = (0..members.len()).filter(|i| mask >> i & 1 == 1).map(|i| members[i]).collect();
        let ok = pick.iter().all(|&a| {
            pick.iter().all(|&b| a == b || !r.future(a).is_subset(r.future(b)))
        });
        if ok {
            best = best.max(pick.len());
        }
    }
    best
}
