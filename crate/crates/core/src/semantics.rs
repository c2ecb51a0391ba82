//! Model checking and finite-frame validity by valuation enumeration.
//!
//! Formulas are compiled into a straight-line program over world bit-sets,
//! so one valuation costs one pass over the (shared) subformulas.
//!
//! Valuations range only over the atoms that occur in the formula. For `k`
//! atoms `a_0 < … < a_{k-1}` and `n` worlds, valuation number `v` puts world
//! `w` into `g(a_i)` iff bit `i * n + w` of `v` is set. Valuations are tried
//! in increasing `v`, worlds in frame order, and the first refuting pair is
//! the reported witness.

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::formula::Formula;
use crate::frames::{Frame, Model};
use crate::worldset::{words_for, WorldSet};

/// Default cap on valuation-times-world evaluations.
pub const DEFAULT_BUDGET: u64 = 1 << 24;

#[derive(Debug, Clone, Copy)]
enum Op {
    Top,
    Atom(usize),
    Not(usize),
    Or(usize, usize),
    Dia(usize, usize),
}

/// A formula compiled against a frame.
pub struct Evaluator<'f> {
    frame: &'f Frame,
    ops: Vec<Op>,
    atoms: Vec<u32>,
    words: usize,
    tail_mask: u64,
    succ: Vec<Vec<u64>>,
    buf: Vec<u64>,
}

impl<'f> Evaluator<'f> {
    pub fn new(frame: &'f Frame, phi: &Formula) -> Result<Self> {
        frame.sig().check(phi)?;
        let atoms: Vec<u32> = phi.atoms().into_iter().collect();
        let mut ev = Evaluator {
            frame,
            ops: Vec::new(),
            words: words_for(frame.len()),
            tail_mask: match frame.len() % 64 {
                0 => u64::MAX,
                r => (1u64 << r) - 1,
            },
            succ: frame
                .relations()
                .iter()
                .map(|r| r.successors().iter().flat_map(|s| s.words().iter().copied()).collect())
                .collect(),
            buf: Vec::new(),
            atoms,
        };
        let mut memo = HashMap::new();
        ev.compile(phi, &mut memo);
        ev.buf = vec![0; ev.ops.len() * ev.words];
        Ok(ev)
    }

    fn compile<'a>(&mut self, phi: &'a Formula, memo: &mut HashMap<&'a Formula, usize>) -> usize {
        if let Some(&i) = memo.get(phi) {
            return i;
        }
        let op = match phi {
            Formula::Top => Op::Top,
            Formula::Atom(a) => Op::Atom(self.atoms.binary_search(a).expect("atom collected")),
            Formula::Not(a) => Op::Not(self.compile(a, memo)),
            Formula::Or(a, b) => {
                let (x, y) = (self.compile(a, memo), self.compile(b, memo));
                Op::Or(x, y)
            }
            Formula::Dia(m, a) => {
                let x = self.compile(a, memo);
                Op::Dia(self.frame.sig().index_of(m).expect("checked against signature"), x)
            }
        };
        self.ops.push(op);
        memo.insert(phi, self.ops.len() - 1);
        self.ops.len() - 1
    }

    /// Atoms of the formula in increasing order; index `i` is valuation slot `i`.
    pub fn atoms(&self) -> &[u32] {
        &self.atoms
    }

    /// Truth set under `slots`, which holds `atoms().len()` world sets of `words` words each.
    fn run(&mut self, slots: &[u64]) -> &[u64] {
        let w = self.words;
        let n = self.frame.len();
        for k in 0..self.ops.len() {
            let (done, rest) = self.buf.split_at_mut(k * w);
            let out = &mut rest[..w];
            match self.ops[k] {
                Op::Top => {
                    out.fill(u64::MAX);
                    if w > 0 {
                        out[w - 1] &= self.tail_mask;
                    }
                }
                Op::Atom(s) => out.copy_from_slice(&slots[s * w..(s + 1) * w]),
                Op::Not(a) => {
                    for (o, x) in out.iter_mut().zip(&done[a * w..(a + 1) * w]) {
                        *o = !x;
                    }
                    if w > 0 {
                        out[w - 1] &= self.tail_mask;
                    }
                }
                Op::Or(a, b) => {
                    for i in 0..w {
                        out[i] = done[a * w + i] | done[b * w + i];
                    }
                }
                Op::Dia(m, a) => {
                    out.fill(0);
                    let child = &done[a * w..(a + 1) * w];
                    let succ = &self.succ[m];
                    for x in 0..n {
                        let row = &succ[x * w..(x + 1) * w];
                        if row.iter().zip(child).any(|(r, c)| r & c != 0) {
                            out[x / 64] |= 1 << (x % 64);
                        }
                    }
                }
            }
        }
        let last = self.ops.len() - 1;
        &self.buf[last * w..(last + 1) * w]
    }

    /// Truth set in a model over the same frame.
    pub fn truth_set(&mut self, valuation: &BTreeMap<u32, WorldSet>) -> WorldSet {
        let w = self.words;
        let mut slots = vec![0u64; self.atoms.len() * w];
        for (s, a) in self.atoms.iter().enumerate() {
            if let Some(set) = valuation.get(a) {
                slots[s * w..(s + 1) * w].copy_from_slice(set.words());
            }
        }
        let n = self.frame.len();
        WorldSet::from_words(n, self.run(&slots))
    }

    fn slots_for(&self, v: u64, slots: &mut [u64]) {
        let n = self.frame.len();
        let w = self.words;
        slots.fill(0);
        if n == 0 {
            return;
        }
        for s in 0..self.atoms.len() {
            let base = s * n;
            if w == 1 {
                slots[s] = (v >> base) & self.tail_mask;
            } else {
                for x in 0..n {
                    if v >> (base + x) & 1 == 1 {
                        slots[s * w + x / 64] |= 1 << (x % 64);
                    }
                }
            }
        }
    }

    fn decode(&self, v: u64) -> BTreeMap<u32, WorldSet> {
        let n = self.frame.len();
        self.atoms
            .iter()
            .enumerate()
            .map(|(s, &a)| (a, WorldSet::from_indices(n, (0..n).filter(|x| v >> (s * n + x) & 1 == 1))))
            .collect()
    }

    fn valuation_count(&self, checked_worlds: usize, budget: u64) -> Result<u64> {
        let bits = self.atoms.len() * self.frame.len();
        let required_bits = bits as u32;
        let required = if bits >= 127 {
            u128::MAX
        } else {
            (1u128 << bits).saturating_mul(checked_worlds.max(1) as u128)
        };
        if bits >= 64 || required > budget as u128 {
            return Err(Error::BudgetExceeded {
                required_bits,
                required,
                budget,
            });
        }
        Ok(1u64 << bits)
    }

    /// Scans valuations in canonical order and returns the first one (with a
    /// world) where `hit` finds a world of interest in the truth set.
    fn scan(
        &mut self,
        checked_worlds: usize,
        budget: u64,
        mut hit: impl FnMut(&[u64]) -> Option<usize>,
    ) -> Result<Option<Witness>> {
        let count = self.valuation_count(checked_worlds, budget)?;
        let mut slots = vec![0u64; self.atoms.len() * self.words];
        for v in 0..count {
            self.slots_for(v, &mut slots);
            let truth = self.run(&slots);
            if let Some(world) = hit(truth) {
                return Ok(Some(Witness {
                    valuation: self.decode(v),
                    world,
                }));
            }
        }
        Ok(None)
    }
}

fn first_missing(truth: &[u64], n: usize) -> Option<usize> {
    (0..n).find(|&x| truth[x / 64] >> (x % 64) & 1 == 0)
}

fn first_present(truth: &[u64], n: usize) -> Option<usize> {
    (0..n).find(|&x| truth[x / 64] >> (x % 64) & 1 == 1)
}

/// A valuation restricted to the formula's atoms, together with a world.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub valuation: BTreeMap<u32, WorldSet>,
    pub world: usize,
}

impl Witness {
    /// `world=w p0={a,b} p1={}` using the frame's world names.
    pub fn describe(&self, frame: &Frame) -> String {
        let mut s = format!("world={}", frame.world_name(self.world));
        for (a, set) in &self.valuation {
            s.push_str(&format!(" p{a}={{{}}}", frame.names_of(set).join(",")));
        }
        s
    }
}

/// Outcome of a validity check; `witness` is present exactly when `valid` is false.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidityVerdict {
    pub valid: bool,
    pub witness: Option<Witness>,
}

impl ValidityVerdict {
    fn from_refutation(w: Option<Witness>) -> Self {
        ValidityVerdict {
            valid: w.is_none(),
            witness: w,
        }
    }
}

/// Outcome of a satisfiability check; `witness` is present exactly when `satisfiable` is true.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SatisfiabilityVerdict {
    pub satisfiable: bool,
    pub witness: Option<Witness>,
}

pub fn truth_set(model: &Model, phi: &Formula) -> Result<WorldSet> {
    Ok(Evaluator::new(&model.frame, phi)?.truth_set(model.valuation()))
}

pub fn satisfies(model: &Model, w: &str, phi: &Formula) -> Result<bool> {
    let wi = model.frame.world_index(w)?;
    Ok(truth_set(model, phi)?.contains(wi))
}

pub fn verifies(model: &Model, phi: &Formula) -> Result<bool> {
    Ok(truth_set(model, phi)?.count() == model.frame.len())
}

pub fn valid_on_frame(frame: &Frame, phi: &Formula, budget: u64) -> Result<ValidityVerdict> {
    let n = frame.len();
    let mut ev = Evaluator::new(frame, phi)?;
    let w = ev.scan(n, budget, |t| first_missing(t, n))?;
    Ok(ValidityVerdict::from_refutation(w))
}

pub fn valid_at_point(frame: &Frame, w: &str, phi: &Formula, budget: u64) -> Result<ValidityVerdict> {
    let wi = frame.world_index(w)?;
    let mut ev = Evaluator::new(frame, phi)?;
    let found = ev.scan(1, budget, |t| (t[wi / 64] >> (wi % 64) & 1 == 0).then_some(wi))?;
    Ok(ValidityVerdict::from_refutation(found))
}

pub fn satisfiable_in_frame(frame: &Frame, phi: &Formula, budget: u64) -> Result<SatisfiabilityVerdict> {
    let n = frame.len();
    let mut ev = Evaluator::new(frame, phi)?;
    let w = ev.scan(n, budget, |t| first_present(t, n))?;
    Ok(SatisfiabilityVerdict {
        satisfiable: w.is_some(),
        witness: w,
    })
}
