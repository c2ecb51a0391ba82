//! Generators for the named frame families and formulas, and the claim ledger.
//!
//! Every generated frame is monomodal over the modality `d`; infinite
//! families are cut down to finite truncations with the index ranges given
//! on each variant.

mod claims;
pub mod formulas;

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::frames::{Frame, Relation};
use crate::worldset::WorldSet;

pub use claims::{reproduce_claims, ledger_json, ledger_tsv, Claim};

/// Modality used by all generated frames and formulas.
pub const MODALITY: &str = "d";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilySpec {
    /// The diamond-shaped intransitive frame, `j ≥ 0`.
    Dj { j: usize },
    /// Irreflexive transitive `G_j` with `a_points ≥ 1` antichain points.
    GjN { j: usize, a_points: usize },
    /// Transitive frame with `n+1` reflexive points `r0..rn`, `j, n ≥ 1`.
    Ejn { j: usize, n: usize },
    /// A handle `a` seeing `teeth ≥ 1` reflexive points.
    LawnRake { teeth: usize },
    /// Fine's frame, irreflexive transitive version: `b, c` indices `0..=N+1`,
    /// `a, d` indices `0..N`.
    FineN { n: usize },
    /// `{a} ∪ N×2`, transitive, chain of futures, no two antichain points `(i,0)`
    /// sharing a proper future.
    XuChainN { n: usize },
    /// `{a} ∪ N×2` where two steps from `a` reach an achronal set but one step does not.
    TwoStepN { n: usize },
    /// `({0..N-1}, <)`.
    OmegaLtN { n: usize },
}

impl FamilySpec {
    pub const NAMES: [&'static str; 8] =
        ["Dj", "GjN", "Ejn", "LawnRake", "FineN", "XuChainN", "TwoStepN", "OmegaLtN"];

    /// Builds a spec from a family name (case-insensitive) and its integer parameters.
    pub fn from_name(name: &str, params: &[usize]) -> Result<FamilySpec> {
        let arity = |k: usize| {
            if params.len() == k {
                Ok(())
            } else {
                Err(Error::BadParameter(format!("family {name} takes {k} parameter(s), got {}", params.len())))
            }
        };
        let spec = match name.to_ascii_lowercase().as_str() {
            "dj" => {
                arity(1)?;
                FamilySpec::Dj { j: params[0] }
            }
            "gjn" => {
                arity(2)?;
                FamilySpec::GjN {
                    j: params[0],
                    a_points: params[1],
                }
            }
            "ejn" => {
                arity(2)?;
                FamilySpec::Ejn {
                    j: params[0],
                    n: params[1],
                }
            }
            "lawnrake" => {
                arity(1)?;
                FamilySpec::LawnRake { teeth: params[0] }
            }
            "finen" => {
                arity(1)?;
                FamilySpec::FineN { n: params[0] }
            }
            "xuchainn" => {
                arity(1)?;
                FamilySpec::XuChainN { n: params[0] }
            }
            "twostepn" => {
                arity(1)?;
                FamilySpec::TwoStepN { n: params[0] }
            }
            "omegaltn" => {
                arity(1)?;
                FamilySpec::OmegaLtN { n: params[0] }
            }
            _ => {
                return Err(Error::BadParameter(format!(
                    "unknown family `{name}` (known: {})",
                    Self::NAMES.join(", ")
                )))
            }
        };
        spec.validate()?;
        Ok(spec)
    }

    fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::BadParameter(format!("{self}: {msg}")));
        match *self {
            FamilySpec::Dj { .. } => Ok(()),
            FamilySpec::GjN { a_points, .. } if a_points == 0 => bad("needs at least one a-point"),
            FamilySpec::Ejn { j, n } if j == 0 || n == 0 => bad("needs j >= 1 and n >= 1"),
            FamilySpec::LawnRake { teeth: 0 } => bad("needs at least one tooth"),
            FamilySpec::FineN { n: 0 } | FamilySpec::XuChainN { n: 0 } | FamilySpec::TwoStepN { n: 0 } => {
                bad("needs N >= 1")
            }
            FamilySpec::OmegaLtN { n: 0 } => bad("needs N >= 1"),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::Dj { j } => write!(f, "Dj({j})"),
            FamilySpec::GjN { j, a_points } => write!(f, "GjN({j},{a_points})"),
            FamilySpec::Ejn { j, n } => write!(f, "Ejn({j},{n})"),
            FamilySpec::LawnRake { teeth } => write!(f, "LawnRake({teeth})"),
            FamilySpec::FineN { n } => write!(f, "FineN({n})"),
            FamilySpec::XuChainN { n } => write!(f, "XuChainN({n})"),
            FamilySpec::TwoStepN { n } => write!(f, "TwoStepN({n})"),
            FamilySpec::OmegaLtN { n } => write!(f, "OmegaLtN({n})"),
        }
    }
}

/// Collects named worlds and arrows, then freezes them into a frame.
struct Builder {
    names: Vec<String>,
    index: HashMap<String, usize>,
    pairs: Vec<(usize, usize)>,
}

impl Builder {
    fn new<I: IntoIterator<Item = String>>(names: I) -> Self {
        let names: Vec<String> = names.into_iter().collect();
        let index = names.iter().enumerate().map(|(i, n)| (n.clone(), i)).collect();
        Builder {
            names,
            index,
            pairs: Vec::new(),
        }
    }

    fn id(&self, w: &str) -> usize {
        self.index[w]
    }

    fn arrow(&mut self, x: &str, y: &str) {
        let p = (self.id(x), self.id(y));
        self.pairs.push(p);
    }

    fn relation(&self) -> Relation {
        Relation::from_pairs(self.names.len(), self.pairs.iter().copied())
    }

    fn frame(self, rel: Relation) -> Frame {
        Frame::new(crate::formula::Signature::mono(MODALITY), self.names, vec![rel]).expect("generated names are distinct")
    }

    fn build(self) -> Frame {
        let r = self.relation();
        self.frame(r)
    }
}

fn prime(j: usize) -> String {
    format!("{j}prime")
}

fn prime2(j: usize) -> String {
    format!("{j}prime2")
}

fn cell(i: usize, k: usize) -> String {
    format!("{i}_{k}")
}

pub fn gen_frame(spec: &FamilySpec) -> Result<Frame> {
    spec.validate()?;
    Ok(match *spec {
        FamilySpec::Dj { j } => d_frame(j),
        FamilySpec::GjN { j, a_points } => g_frame(j, a_points),
        FamilySpec::Ejn { j, n } => e_frame(j, n),
        FamilySpec::LawnRake { teeth } => {
            let mut b = Builder::new(std::iter::once("a".to_string()).chain((0..teeth).map(|x| format!("x{x}"))));
            for x in 0..teeth {
                let t = format!("x{x}");
                b.arrow("a", &t);
                b.arrow(&t, &t);
            }
            b.build()
        }
        FamilySpec::FineN { n } => fine_frame(n),
        FamilySpec::XuChainN { n } => {
            let mut b = Builder::new(
                std::iter::once("a".to_string()).chain((0..n).flat_map(|i| [cell(i, 0), cell(i, 1)])),
            );
            for i in 0..n {
                for k in 0..2 {
                    b.arrow("a", &cell(i, k));
                    for j in 0..=i {
                        b.arrow(&cell(i, k), &cell(j, 1));
                    }
                }
            }
            b.build()
        }
        FamilySpec::TwoStepN { n } => {
            let mut b = Builder::new(
                std::iter::once("a".to_string()).chain((0..n).flat_map(|i| [cell(i, 0), cell(i, 1)])),
            );
            for i in 0..n {
                b.arrow("a", &cell(i, 0));
                for j in 0..=i {
                    b.arrow(&cell(i, 0), &cell(j, 1));
                }
                b.arrow(&cell(i, 1), &cell(i, 1));
            }
            b.build()
        }
        FamilySpec::OmegaLtN { n } => {
            Frame::mono(MODALITY, Relation::from_pairs(n, (0..n).flat_map(|x| (x + 1..n).map(move |y| (x, y)))))
        }
    })
}

fn d_frame(j: usize) -> Frame {
    let mut names = vec![(j + 1).to_string(), prime(j), prime2(j)];
    names.extend((0..j).rev().map(|i| i.to_string()));
    let mut b = Builder::new(names);
    let top = (j + 1).to_string();
    b.arrow(&top, &prime(j));
    b.arrow(&top, &prime2(j));
    if j > 0 {
        let below = (j - 1).to_string();
        b.arrow(&prime(j), &below);
        b.arrow(&prime2(j), &below);
        for i in 1..j {
            b.arrow(&i.to_string(), &(i - 1).to_string());
        }
    }
    b.build()
}

fn g_frame(j: usize, a_points: usize) -> Frame {
    let mut b = Builder::new((0..=j).map(|k| k.to_string()).chain((0..a_points).map(|l| format!("a{l}"))));
    for k in 0..=j {
        for m in k + 1..=j {
            b.arrow(&k.to_string(), &m.to_string());
        }
    }
    for l in 0..a_points {
        let a = format!("a{l}");
        b.arrow("0", &a);
        for m in 1..=j {
            b.arrow(&a, &m.to_string());
        }
    }
    b.build()
}

fn e_frame(j: usize, n: usize) -> Frame {
    let top = (j + 1).to_string();
    let rs: Vec<String> = (0..=n).map(|i| format!("r{i}")).collect();
    let mut names = vec![top.clone()];
    names.extend(rs.iter().cloned());
    names.extend([prime(j), prime2(j)]);
    names.extend((0..j).rev().map(|i| i.to_string()));
    let mut b = Builder::new(names);
    let below = (j - 1).to_string();
    for r in &rs {
        b.arrow(&top, r);
        b.arrow(r, &prime(j));
        b.arrow(r, &prime2(j));
    }
    b.arrow(&prime(j), &below);
    b.arrow(&prime2(j), &below);
    for i in 1..j {
        b.arrow(&i.to_string(), &(i - 1).to_string());
    }
    let mut rel = b.relation().transitive_closure();
    for r in &rs {
        let i = b.id(r);
        rel.insert(i, i);
    }
    b.frame(rel)
}

/// In the infinite frame every `d`-point sees every `b`- and `c`-point; the
/// truncation keeps that, so the frame stays generated by `d0`.
fn fine_frame(n: usize) -> Frame {
    let bs = |k: usize| format!("b{k}");
    let cs = |k: usize| format!("c{k}");
    let mut names: Vec<String> = (0..n + 2).map(bs).collect();
    names.extend((0..n + 2).map(cs));
    names.extend((0..n).map(|m| format!("a{m}")));
    names.extend((0..n).map(|m| format!("d{m}")));
    let b = Builder::new(names);
    let bc = n + 2;
    let range = |b: &Builder, f: &dyn Fn(usize) -> String, upto: usize| -> Vec<usize> {
        (0..upto.min(bc)).map(|k| b.id(&f(k))).collect()
    };
    let mut succ = vec![WorldSet::empty(b.names.len()); b.names.len()];
    let mut set = |x: usize, ys: Vec<usize>| {
        for y in ys {
            succ[x].insert(y);
        }
    };
    // R(b1) = {b0}, R(c1) = {c0}
    set(b.id("b1"), vec![b.id("b0")]);
    set(b.id("c1"), vec![b.id("c0")]);
    for m in 0..n {
        // R(b_{m+2}) = b0..b_{m+1}, c0..c_m and symmetrically for c
        let (bm, cm) = (b.id(&bs(m + 2)), b.id(&cs(m + 2)));
        set(bm, [range(&b, &bs, m + 2), range(&b, &cs, m + 1)].concat());
        set(cm, [range(&b, &bs, m + 1), range(&b, &cs, m + 2)].concat());
        set(b.id(&format!("a{m}")), [range(&b, &bs, m + 2), range(&b, &cs, m + 2)].concat());
    }
    for m in 0..n {
        let d = b.id(&format!("d{m}"));
        let later: Vec<usize> = (m + 1..n).map(|k| b.id(&format!("d{k}"))).collect();
        let own_a: Vec<usize> = (m..n).map(|k| b.id(&format!("a{k}"))).collect();
        set(d, [later, own_a, range(&b, &bs, bc), range(&b, &cs, bc)].concat());
    }
    let rel = Relation::from_successors(succ);
    b.frame(rel)
}
