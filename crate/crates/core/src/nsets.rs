//! Prefix-tree forests encoding antichains of sets of cardinality at most N
//! over totally ordered elements.
//!
//! A forest is either `Top` (the family `{{}}` containing just the empty
//! set), `Bot` (the empty family), or an ordered association from a prefix
//! element to the forest of suffixes. Prefixes strictly increase along every
//! root-to-leaf path, so the maximum height is N+1. A prefix never maps to
//! `Bot`; such entries are dropped on construction.
//!
//! `union` and `product` keep cardinalities within the bound but may leave
//! sursets; `simplify` minimizes a family into an antichain.

use std::collections::BTreeSet;
use std::fmt;

/// Family of sets with elements of type `E`, encoded by shared prefixes.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum NSetForest<E> {
    Top,
    Bot,
    /// Sorted ascending by prefix; suffix forests are never `Bot`.
    Map(Vec<(E, NSetForest<E>)>),
}

use NSetForest::{Bot, Map, Top};

/// The forest algebra for a fixed cardinality bound N ≥ 1.
#[derive(Clone, Copy, Debug)]
pub struct NSetAlgebra {
    bound: usize,
}

impl<E: Ord + Copy> NSetForest<E> {
    /// Prefix elements of the top level, highest first. Empty for `Top`/`Bot`.
    pub fn inds(&self) -> Vec<E> {
        match self {
            Top | Bot => Vec::new(),
            Map(entries) => entries.iter().rev().map(|&(i, _)| i).collect(),
        }
    }

    pub fn is_empty_family(&self) -> bool {
        matches!(self, Bot)
    }

    /// Decodes the forest back into an explicit family of sets.
    pub fn to_sets(&self) -> BTreeSet<BTreeSet<E>> {
        let mut out = BTreeSet::new();
        let mut prefix = Vec::new();
        self.collect(&mut prefix, &mut out);
        out
    }

    fn collect(&self, prefix: &mut Vec<E>, out: &mut BTreeSet<BTreeSet<E>>) {
        match self {
            Bot => {}
            Top => {
                out.insert(prefix.iter().copied().collect());
            }
            Map(entries) => {
                for &(i, ref suffix) in entries {
                    prefix.push(i);
                    suffix.collect(prefix, out);
                    prefix.pop();
                }
            }
        }
    }

    /// Number of sets in the family.
    pub fn family_len(&self) -> usize {
        match self {
            Bot => 0,
            Top => 1,
            Map(entries) => entries.iter().map(|(_, s)| s.family_len()).sum(),
        }
    }

    fn singleton_chain(set: &[E]) -> NSetForest<E> {
        match set.split_first() {
            None => Top,
            Some((&head, tail)) => Map(vec![(head, Self::singleton_chain(tail))]),
        }
    }

    /// Structural invariants: strictly increasing prefixes, height within
    /// N+1, no `Bot` suffix.
    pub fn check_invariants(&self, bound: usize) -> bool {
        fn go<E: Ord + Copy>(f: &NSetForest<E>, depth: usize, bound: usize) -> bool {
            match f {
                Top | Bot => true,
                Map(entries) => {
                    if depth >= bound {
                        return false;
                    }
                    entries.windows(2).all(|w| w[0].0 < w[1].0)
                        && entries.iter().all(|(_, s)| {
                            !matches!(s, Bot) && go(s, depth + 1, bound)
                        })
                }
            }
        }
        go(self, 0, bound)
    }
}

fn prefixed<E: Ord + Copy>(i: E, suffix: NSetForest<E>) -> NSetForest<E> {
    // {i -> Bot} ≡ Bot
    match suffix {
        Bot => Bot,
        s => Map(vec![(i, s)]),
    }
}

impl NSetAlgebra {
    pub fn new(bound: usize) -> NSetAlgebra {
        assert!(bound >= 1, "cardinality bound must be at least 1");
        NSetAlgebra { bound }
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    /// Encodes an explicit family, dropping sets larger than N and removing
    /// sursets.
    pub fn from_sets<E, I, S>(&self, family: I) -> NSetForest<E>
    where
        E: Ord + Copy,
        I: IntoIterator<Item = S>,
        S: IntoIterator<Item = E>,
    {
        let mut forest = Bot;
        for set in family {
            let mut elems: Vec<E> = set.into_iter().collect();
            elems.sort_unstable();
            elems.dedup();
            if elems.len() > self.bound {
                continue;
            }
            forest = self.union(&forest, &NSetForest::singleton_chain(&elems));
        }
        self.simplify(&forest, 1)
    }

    /// Drops the sets that cannot be extended with one additional element,
    /// i.e. those already holding N elements counting the `h - 1` committed
    /// at levels above.
    pub fn up<E: Ord + Copy>(&self, f: &NSetForest<E>, h: usize) -> NSetForest<E> {
        match f {
            Bot => Bot,
            // The empty suffix holds h-1 elements; it survives while one more
            // still fits.
            Top => {
                if h > self.bound {
                    Bot
                } else {
                    Top
                }
            }
            Map(entries) => {
                if h >= self.bound {
                    Bot
                } else {
                    let kept: Vec<(E, NSetForest<E>)> = entries
                        .iter()
                        .map(|&(i, ref s)| (i, self.up(s, h + 1)))
                        .filter(|(_, s)| !matches!(s, Bot))
                        .collect();
                    if kept.is_empty() {
                        Bot
                    } else {
                        Map(kept)
                    }
                }
            }
        }
    }

    /// Family union, merging shared prefixes. Does not minimize.
    pub fn union<E: Ord + Copy>(&self, a: &NSetForest<E>, b: &NSetForest<E>) -> NSetForest<E> {
        match (a, b) {
            (Top, _) | (_, Top) => Top,
            (Bot, x) | (x, Bot) => x.clone(),
            (Map(ma), Map(mb)) => {
                let mut out: Vec<(E, NSetForest<E>)> = Vec::with_capacity(ma.len() + mb.len());
                let (mut ia, mut ib) = (0, 0);
                while ia < ma.len() && ib < mb.len() {
                    let (ka, sa) = &ma[ia];
                    let (kb, sb) = &mb[ib];
                    match ka.cmp(kb) {
                        std::cmp::Ordering::Less => {
                            out.push((*ka, sa.clone()));
                            ia += 1;
                        }
                        std::cmp::Ordering::Greater => {
                            out.push((*kb, sb.clone()));
                            ib += 1;
                        }
                        std::cmp::Ordering::Equal => {
                            out.push((*ka, self.union(sa, sb)));
                            ia += 1;
                            ib += 1;
                        }
                    }
                }
                out.extend(ma[ia..].iter().cloned());
                out.extend(mb[ib..].iter().cloned());
                Map(out)
            }
        }
    }

    /// Sets-of-sets product: pairwise unions of one set from each family,
    /// truncated to cardinality N. `Top` is the identity, `Bot` absorbs.
    /// Level `h` is 1 on the outermost call. The result may contain sursets.
    pub fn product<E: Ord + Copy>(
        &self,
        a: &NSetForest<E>,
        b: &NSetForest<E>,
        h: usize,
    ) -> NSetForest<E> {
        match (a, b) {
            (Top, x) | (x, Top) => x.clone(),
            (Bot, _) | (_, Bot) => Bot,
            (Map(ma), Map(mb)) => {
                let mut acc = Bot;
                for &(i, ref da) in ma {
                    for &(j, ref db) in mb {
                        let dij = match i.cmp(&j) {
                            std::cmp::Ordering::Equal => {
                                prefixed(i, self.product(da, db, h + 1))
                            }
                            std::cmp::Ordering::Less => {
                                // j moves below i; sets of db must leave room
                                // for it.
                                let lifted = prefixed(j, self.up(db, h + 1));
                                prefixed(i, self.product(da, &lifted, h + 1))
                            }
                            std::cmp::Ordering::Greater => {
                                let lifted = prefixed(i, self.up(da, h + 1));
                                prefixed(j, self.product(&lifted, db, h + 1))
                            }
                        };
                        acc = self.union(&acc, &dij);
                    }
                }
                acc
            }
        }
    }

    /// Removes from `f` every set that is a surset of (or equal to) a set in
    /// `fp`. The prefix order keeps the scan to lower-or-equal prefixes.
    pub fn remove<E: Ord + Copy>(
        &self,
        fp: &NSetForest<E>,
        f: &NSetForest<E>,
        h: usize,
    ) -> NSetForest<E> {
        match (fp, f) {
            (Top, _) => Bot,
            (_, Top) | (_, Bot) | (Bot, _) => f.clone(),
            (Map(mp), Map(mf)) => {
                let mut out: Vec<(E, NSetForest<E>)> = Vec::with_capacity(mf.len());
                for &(i, ref di) in mf {
                    let mut cur = di.clone();
                    for &(j, ref dj) in mp {
                        if matches!(cur, Bot) {
                            break;
                        }
                        if j == i {
                            cur = self.remove(dj, &cur, h + 1);
                        } else if i < j {
                            // A set prefixed j in fp may be included in the
                            // suffixes of i.
                            let lifted = prefixed(j, self.up(dj, h + 1));
                            cur = self.remove(&lifted, &cur, h + 1);
                        }
                    }
                    if !matches!(cur, Bot) {
                        out.push((i, cur));
                    }
                }
                if out.is_empty() {
                    Bot
                } else {
                    Map(out)
                }
            }
        }
    }

    /// Minimizes the family into an antichain. Idempotent.
    pub fn simplify<E: Ord + Copy>(&self, f: &NSetForest<E>, h: usize) -> NSetForest<E> {
        match f {
            Top | Bot => f.clone(),
            Map(entries) => {
                let mut acc = Bot;
                // Highest prefix first: a surset never has a higher prefix
                // than one of its subsets.
                for &(i, ref di) in entries.iter().rev() {
                    let group = prefixed(i, self.simplify(di, h + 1));
                    let group = self.remove(&acc, &group, h);
                    acc = self.union(&acc, &group);
                }
                acc
            }
        }
    }

    /// `⌈·⌉N` in one step: encode, truncate, minimize.
    pub fn minimize<E: Ord + Copy>(&self, f: &NSetForest<E>) -> NSetForest<E> {
        self.simplify(f, 1)
    }
}

/// Debug rendering as nested `{k -> ...}` text.
impl<E: Ord + Copy + fmt::Display> fmt::Display for NSetForest<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Top => write!(f, "T"),
            Bot => write!(f, "_"),
            Map(entries) => {
                write!(f, "{{")?;
                for (n, (i, s)) in entries.iter().enumerate() {
                    if n > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{i} -> {s}")?;
                }
                write!(f, "}}")
            }
        }
    }
}
