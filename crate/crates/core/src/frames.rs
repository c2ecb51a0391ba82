//! Finite Kripke frames and models.
//!
//! Worlds are named by strings and addressed internally by their position in
//! the frame's world list. Each modality carries a [`Relation`] stored as one
//! successor bit-set per world.

use std::collections::{BTreeMap, HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::clique;
use crate::error::{Error, Result};
use crate::formula::Signature;
use crate::worldset::WorldSet;

/// A binary relation on `0..n`, as successor sets.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Relation {
    succ: Vec<WorldSet>,
}

impl Relation {
    pub fn empty(n: usize) -> Self {
        Relation {
            succ: vec![WorldSet::empty(n); n],
        }
    }

    pub fn identity(n: usize) -> Self {
        Relation {
            succ: (0..n).map(|x| WorldSet::singleton(n, x)).collect(),
        }
    }

    pub fn total(n: usize) -> Self {
        Relation {
            succ: vec![WorldSet::full(n); n],
        }
    }

    pub fn from_pairs<I: IntoIterator<Item = (usize, usize)>>(n: usize, pairs: I) -> Self {
        let mut r = Relation::empty(n);
        for (x, y) in pairs {
            r.insert(x, y);
        }
        r
    }

    /// Relation whose pairs are the set bits of `mask`, bit `x * n + y` for `(x, y)`.
    pub fn from_mask(n: usize, mask: u64) -> Self {
        assert!(n * n <= 64, "mask encoding needs n*n <= 64");
        Relation::from_pairs(
            n,
            (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).filter(|(x, y)| mask >> (x * n + y) & 1 == 1),
        )
    }

    pub fn from_successors(succ: Vec<WorldSet>) -> Self {
        let n = succ.len();
        assert!(succ.iter().all(|s| s.universe() == n));
        Relation { succ }
    }

    pub fn len(&self) -> usize {
        self.succ.len()
    }

    pub fn is_empty(&self) -> bool {
        self.succ.iter().all(WorldSet::is_empty)
    }

    pub fn insert(&mut self, x: usize, y: usize) {
        self.succ[x].insert(y);
    }

    #[inline]
    pub fn contains(&self, x: usize, y: usize) -> bool {
        self.succ[x].contains(y)
    }

    /// `R(x)`.
    #[inline]
    pub fn future(&self, x: usize) -> &WorldSet {
        &self.succ[x]
    }

    pub fn successors(&self) -> &[WorldSet] {
        &self.succ
    }

    /// `{x : R x y}`.
    pub fn past(&self, y: usize) -> WorldSet {
        WorldSet::from_indices(self.len(), (0..self.len()).filter(|&x| self.contains(x, y)))
    }

    /// Union of the futures of the members of `s`.
    pub fn image(&self, s: &WorldSet) -> WorldSet {
        let mut out = WorldSet::empty(self.len());
        for x in s.iter() {
            out.union_with(&self.succ[x]);
        }
        out
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.succ.iter().enumerate().flat_map(|(x, s)| s.iter().map(move |y| (x, y)))
    }

    pub fn is_reflexive(&self) -> bool {
        (0..self.len()).all(|x| self.contains(x, x))
    }

    pub fn is_irreflexive(&self) -> bool {
        (0..self.len()).all(|x| !self.contains(x, x))
    }

    pub fn is_symmetric(&self) -> bool {
        self.pairs().all(|(x, y)| self.contains(y, x))
    }

    pub fn is_transitive(&self) -> bool {
        (0..self.len()).all(|x| self.image(&self.succ[x]).is_subset(&self.succ[x]))
    }

    pub fn is_subset(&self, other: &Relation) -> bool {
        self.succ.iter().zip(&other.succ).all(|(a, b)| a.is_subset(b))
    }

    pub fn union(&self, other: &Relation) -> Relation {
        Relation {
            succ: self.succ.iter().zip(&other.succ).map(|(a, b)| a.union(b)).collect(),
        }
    }

    pub fn reflexive_closure(&self) -> Relation {
        self.union(&Relation::identity(self.len()))
    }

    pub fn transitive_closure(&self) -> Relation {
        let mut succ = self.succ.clone();
        let n = self.len();
        for k in 0..n {
            let via = succ[k].clone();
            for row in succ.iter_mut() {
                if row.contains(k) {
                    row.union_with(&via);
                }
            }
        }
        Relation { succ }
    }

    /// `{(x, y) : R(y) ⊆ R(x)}`.
    pub fn overline(&self) -> Relation {
        let n = self.len();
        Relation {
            succ: (0..n)
                .map(|x| WorldSet::from_indices(n, (0..n).filter(|&y| self.succ[y].is_subset(&self.succ[x]))))
                .collect(),
        }
    }

    /// Pairs of distinct worlds unrelated in both directions.
    pub fn antichain_graph(&self) -> Vec<WorldSet> {
        let n = self.len();
        (0..n)
            .map(|y| {
                WorldSet::from_indices(n, (0..n).filter(|&z| z != y && !self.contains(y, z) && !self.contains(z, y)))
            })
            .collect()
    }

    /// Size of the largest antichain inside `s`.
    pub fn antichain_width(&self, s: &WorldSet) -> usize {
        clique::clique_number(&self.antichain_graph(), s)
    }

    /// Size of the largest subset of `s` whose futures are pairwise ⊆-incomparable.
    pub fn achronal_width(&self, s: &WorldSet) -> usize {
        self.overline().antichain_width(s)
    }

    /// Width of the family `{R(y) : y ∈ s}` of distinct sets under inclusion.
    pub fn future_family_width(&self, s: &WorldSet) -> usize {
        let mut family: Vec<&WorldSet> = s.iter().map(|y| &self.succ[y]).collect();
        family.sort();
        family.dedup();
        let k = family.len();
        let adj: Vec<WorldSet> = (0..k)
            .map(|i| {
                WorldSet::from_indices(
                    k,
                    (0..k).filter(|&j| j != i && !family[i].is_subset(family[j]) && !family[j].is_subset(family[i])),
                )
            })
            .collect();
        clique::clique_number(&adj, &WorldSet::full(k))
    }
}

/// A finite frame: worlds plus one relation per modality of the signature.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Frame {
    sig: Signature,
    worlds: Vec<String>,
    index: HashMap<String, usize>,
    rels: Vec<Relation>,
}

impl Frame {
    pub fn new(sig: Signature, worlds: Vec<String>, rels: Vec<Relation>) -> Result<Self> {
        let mut index = HashMap::with_capacity(worlds.len());
        for (i, w) in worlds.iter().enumerate() {
            if index.insert(w.clone(), i).is_some() {
                return Err(Error::Format(format!("duplicate world name `{w}`")));
            }
        }
        if rels.len() != sig.len() {
            return Err(Error::Format(format!(
                "{} relations given for {} modalities",
                rels.len(),
                sig.len()
            )));
        }
        if rels.iter().any(|r| r.len() != worlds.len()) {
            return Err(Error::Format("relation size does not match world count".into()));
        }
        Ok(Frame { sig, worlds, index, rels })
    }

    /// One-modality frame on worlds named `0..n`.
    pub fn mono(m: &str, rel: Relation) -> Self {
        let worlds = (0..rel.len()).map(|i| i.to_string()).collect();
        Frame::new(Signature::mono(m), worlds, vec![rel]).expect("well-formed frame")
    }

    /// Builds a frame from named pairs; every pair is `(modality, from, to)`.
    pub fn from_named_pairs<'a, I>(sig: Signature, worlds: &[&str], pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (&'a str, &'a str, &'a str)>,
    {
        let names: Vec<String> = worlds.iter().map(|w| w.to_string()).collect();
        let n = names.len();
        let rels = vec![Relation::empty(n); sig.len()];
        let mut f = Frame::new(sig, names, rels)?;
        for (m, x, y) in pairs {
            let mi = f.modality_index(m)?;
            let (xi, yi) = (f.world_index(x)?, f.world_index(y)?);
            f.rels[mi].insert(xi, yi);
        }
        Ok(f)
    }

    pub fn sig(&self) -> &Signature {
        &self.sig
    }

    pub fn worlds(&self) -> &[String] {
        &self.worlds
    }

    pub fn len(&self) -> usize {
        self.worlds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.worlds.is_empty()
    }

    pub fn world_index(&self, name: &str) -> Result<usize> {
        self.index.get(name).copied().ok_or_else(|| Error::UnknownWorld(name.to_string()))
    }

    pub fn world_name(&self, i: usize) -> &str {
        &self.worlds[i]
    }

    pub fn modality_index(&self, m: &str) -> Result<usize> {
        self.sig.index_of(m).ok_or_else(|| Error::UnknownModality(m.to_string()))
    }

    pub fn relation(&self, m: &str) -> Result<&Relation> {
        Ok(&self.rels[self.modality_index(m)?])
    }

    pub fn relations(&self) -> &[Relation] {
        &self.rels
    }

    pub fn set_of<S: AsRef<str>>(&self, names: &[S]) -> Result<WorldSet> {
        let mut s = WorldSet::empty(self.len());
        for n in names {
            s.insert(self.world_index(n.as_ref())?);
        }
        Ok(s)
    }

    pub fn names_of(&self, s: &WorldSet) -> Vec<String> {
        s.iter().map(|i| self.worlds[i].clone()).collect()
    }

    pub fn all_worlds(&self) -> WorldSet {
        WorldSet::full(self.len())
    }

    /// This frame with the relation of `m` replaced.
    pub fn with_relation(&self, m: &str, rel: Relation) -> Result<Frame> {
        let mi = self.modality_index(m)?;
        if rel.len() != self.len() {
            return Err(Error::BadParameter("relation size does not match world count".into()));
        }
        let mut f = self.clone();
        f.rels[mi] = rel;
        Ok(f)
    }

    fn map_relations(&self, op: impl Fn(&Relation) -> Relation) -> Frame {
        let mut f = self.clone();
        f.rels = self.rels.iter().map(op).collect();
        f
    }

    /// `R_m(x)` as a set of world indices.
    pub fn future(&self, m: &str, x: &str) -> Result<WorldSet> {
        let r = self.relation(m)?;
        Ok(r.future(self.world_index(x)?).clone())
    }

    pub fn antichain_width(&self, m: &str, s: &WorldSet) -> Result<usize> {
        Ok(self.relation(m)?.antichain_width(s))
    }

    pub fn achronal_width(&self, m: &str, s: &WorldSet) -> Result<usize> {
        Ok(self.relation(m)?.achronal_width(s))
    }

    /// The future-inclusion relation of `m`.
    pub fn overline(&self, m: &str) -> Result<Relation> {
        Ok(self.relation(m)?.overline())
    }

    /// This frame with `m` replaced by its future-inclusion relation.
    pub fn overline_frame(&self, m: &str) -> Result<Frame> {
        self.with_relation(m, self.overline(m)?)
    }

    pub fn reflexive_closure(&self) -> Frame {
        self.map_relations(Relation::reflexive_closure)
    }

    pub fn transitive_closure(&self) -> Frame {
        self.map_relations(Relation::transitive_closure)
    }

    /// Worlds reachable from `x` along any finite sequence of modalities, `x` included.
    pub fn reachable(&self, x: usize) -> WorldSet {
        let mut seen = WorldSet::singleton(self.len(), x);
        let mut queue = VecDeque::from([x]);
        while let Some(u) = queue.pop_front() {
            for r in &self.rels {
                for v in r.future(u).iter() {
                    if !seen.contains(v) {
                        seen.insert(v);
                        queue.push_back(v);
                    }
                }
            }
        }
        seen
    }

    /// The subframe on `keep`, world order preserved.
    pub fn restrict(&self, keep: &WorldSet) -> Frame {
        let old: Vec<usize> = keep.iter().collect();
        let n = old.len();
        let mut new_of = vec![usize::MAX; self.len()];
        for (ni, &oi) in old.iter().enumerate() {
            new_of[oi] = ni;
        }
        let rels = self
            .rels
            .iter()
            .map(|r| {
                Relation::from_successors(
                    old.iter()
                        .map(|&oi| WorldSet::from_indices(n, r.future(oi).iter().filter(|v| keep.contains(*v)).map(|v| new_of[v])))
                        .collect(),
                )
            })
            .collect();
        let worlds = old.iter().map(|&oi| self.worlds[oi].clone()).collect();
        Frame::new(self.sig.clone(), worlds, rels).expect("restriction of a well-formed frame")
    }

    /// The inner subframe generated by `w`.
    pub fn generated_subframe(&self, w: &str) -> Result<Frame> {
        let wi = self.world_index(w)?;
        Ok(self.restrict(&self.reachable(wi)))
    }

    pub fn is_point_generated_by(&self, w: usize) -> bool {
        self.reachable(w).count() == self.len()
    }

    /// Worlds `y` with `R_s x y`; the empty sequence gives `{x}`.
    pub fn compose_rs<S: AsRef<str>>(&self, s: &[S], x: &str) -> Result<WorldSet> {
        let mut cur = WorldSet::singleton(self.len(), self.world_index(x)?);
        for m in s {
            cur = self.relation(m.as_ref())?.image(&cur);
        }
        Ok(cur)
    }

    /// Finds a world bijection `self -> other` preserving every relation.
    pub fn isomorphism(&self, other: &Frame) -> Option<Vec<usize>> {
        if self.sig != other.sig || self.len() != other.len() {
            return None;
        }
        let n = self.len();
        let degree = |f: &Frame, x: usize| -> Vec<(usize, usize, bool)> {
            f.rels.iter().map(|r| (r.future(x).count(), r.past(x).count(), r.contains(x, x))).collect()
        };
        let ds: Vec<_> = (0..n).map(|x| degree(self, x)).collect();
        let dt: Vec<_> = (0..n).map(|x| degree(other, x)).collect();
        let mut map = vec![usize::MAX; n];
        let mut used = vec![false; n];
        fn go(
            a: &Frame,
            b: &Frame,
            ds: &[Vec<(usize, usize, bool)>],
            dt: &[Vec<(usize, usize, bool)>],
            x: usize,
            map: &mut [usize],
            used: &mut [bool],
        ) -> bool {
            let n = a.len();
            if x == n {
                return true;
            }
            for y in 0..n {
                if used[y] || ds[x] != dt[y] {
                    continue;
                }
                let consistent = (0..x).all(|u| {
                    a.rels.iter().zip(&b.rels).all(|(ra, rb)| {
                        ra.contains(x, u) == rb.contains(y, map[u]) && ra.contains(u, x) == rb.contains(map[u], y)
                    })
                });
                if !consistent {
                    continue;
                }
                map[x] = y;
                used[y] = true;
                if go(a, b, ds, dt, x + 1, map, used) {
                    return true;
                }
                used[y] = false;
            }
            false
        }
        go(self, other, &ds, &dt, 0, &mut map, &mut used).then_some(map)
    }

    pub fn to_file(&self) -> FrameFile {
        FrameFile {
            modalities: self.sig.names().to_vec(),
            worlds: self.worlds.clone(),
            relations: self
                .sig
                .names()
                .iter()
                .zip(&self.rels)
                .map(|(m, r)| {
                    (m.clone(), r.pairs().map(|(x, y)| (self.worlds[x].clone(), self.worlds[y].clone())).collect())
                })
                .collect(),
            valuation: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("frame serialises")
    }

    /// Reads a frame file; a `valuation` key, if present, is ignored.
    pub fn from_json_str(text: &str) -> Result<Frame> {
        let file: FrameFile = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
        Ok(file.into_model()?.frame)
    }
}

/// A frame with a valuation. Atoms missing from the valuation are false everywhere.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Model {
    pub frame: Frame,
    valuation: BTreeMap<u32, WorldSet>,
}

impl Model {
    pub fn new(frame: Frame, valuation: BTreeMap<u32, WorldSet>) -> Result<Self> {
        if valuation.values().any(|s| s.universe() != frame.len()) {
            return Err(Error::BadParameter("valuation set over the wrong universe".into()));
        }
        Ok(Model { frame, valuation })
    }

    pub fn bare(frame: Frame) -> Self {
        Model {
            frame,
            valuation: BTreeMap::new(),
        }
    }

    pub fn valuation(&self) -> &BTreeMap<u32, WorldSet> {
        &self.valuation
    }

    pub fn truth_of_atom(&self, a: u32) -> WorldSet {
        self.valuation.get(&a).cloned().unwrap_or_else(|| WorldSet::empty(self.frame.len()))
    }

    /// The same valuation over the reflexive closure.
    pub fn reflexive_closure(&self) -> Model {
        Model {
            frame: self.frame.reflexive_closure(),
            valuation: self.valuation.clone(),
        }
    }

    pub fn to_json(&self) -> String {
        let mut file = self.frame.to_file();
        file.valuation = Some(
            self.valuation
                .iter()
                .map(|(a, s)| (format!("p{a}"), self.frame.names_of(s)))
                .collect(),
        );
        serde_json::to_string_pretty(&file).expect("model serialises")
    }

    pub fn from_json_str(text: &str) -> Result<Model> {
        let file: FrameFile = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
        file.into_model()
    }
}

/// On-disk JSON form of a frame or model.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FrameFile {
    pub modalities: Vec<String>,
    pub worlds: Vec<String>,
    #[serde(default)]
    pub relations: BTreeMap<String, Vec<(String, String)>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub valuation: Option<BTreeMap<String, Vec<String>>>,
}

pub(crate) fn parse_atom_name(name: &str) -> Result<u32> {
    match name.strip_prefix('p') {
        Some(d) if !d.is_empty() && d.chars().all(|c| c.is_ascii_digit()) => {
            d.parse().map_err(|_| Error::Format(format!("atom index out of range: `{name}`")))
        }
        _ => Err(Error::Format(format!("`{name}` is not an atom name (expected pK)"))),
    }
}

impl FrameFile {
    pub fn into_model(self) -> Result<Model> {
        let sig = Signature::new(self.modalities).map_err(|e| Error::Format(e.to_string()))?;
        let n = self.worlds.len();
        let mut frame = Frame::new(sig.clone(), self.worlds, vec![Relation::empty(n); sig.len()])?;
        for (m, pairs) in &self.relations {
            let mi = frame
                .sig
                .index_of(m)
                .ok_or_else(|| Error::Format(format!("relation for undeclared modality `{m}`")))?;
            for (x, y) in pairs {
                let (xi, yi) = (frame.world_index(x)?, frame.world_index(y)?);
                frame.rels[mi].insert(xi, yi);
            }
        }
        let mut valuation = BTreeMap::new();
        for (name, members) in self.valuation.unwrap_or_default() {
            let a = parse_atom_name(&name)?;
            valuation.insert(a, frame.set_of(&members)?);
        }
        Model::new(frame, valuation)
    }
}
