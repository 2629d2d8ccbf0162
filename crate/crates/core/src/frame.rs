//! Index-based view of a [`KripkeModel`] for the hot loops.
//!
//! A `Frame` is immutable and fixed for one model; deletions are expressed
//! as a [`View`] (alive worlds and alive edges) over it.

use crate::model::{KripkeModel, World};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) struct BitSet {
    blocks: Vec<u64>,
}

impl BitSet {
    pub fn empty(n: usize) -> Self {
        BitSet {
            blocks: vec![0; n.div_ceil(64)],
        }
    }

    pub fn full(n: usize) -> Self {
        let mut s = Self::empty(n);
        for i in 0..n {
            s.insert(i);
        }
        s
    }

    pub fn contains(&self, i: usize) -> bool {
        self.blocks[i / 64] & (1 << (i % 64)) != 0
    }

    pub fn insert(&mut self, i: usize) {
        self.blocks[i / 64] |= 1 << (i % 64);
    }

    pub fn remove(&mut self, i: usize) {
        self.blocks[i / 64] &= !(1 << (i % 64));
    }

    pub fn len(&self) -> usize {
        self.blocks.iter().map(|b| b.count_ones() as usize).sum()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.blocks.iter().enumerate().flat_map(|(bi, &b)| {
            (0..64)
                .filter(move |k| b & (1 << k) != 0)
                .map(move |k| bi * 64 + k)
        })
    }
}

#[derive(Debug)]
pub(crate) struct Frame {
    pub worlds: Vec<World>,
    /// Canonically ordered `(source, target)` index pairs.
    pub edges: Vec<(usize, usize)>,
    /// Outgoing edge indices per world, in edge order.
    pub out: Vec<Vec<usize>>,
    /// Per world, which entries of the caller's proposition list hold.
    pub labels: Vec<BitSet>,
}

impl Frame {
    /// `props` fixes the label index space; names not declared by `m` are
    /// false everywhere.
    pub fn new(m: &KripkeModel, props: &[String]) -> Frame {
        let worlds: Vec<World> = m.worlds().iter().cloned().collect();
        let index = |w: &World| worlds.binary_search(w).expect("declared world");
        let edges: Vec<(usize, usize)> = m
            .edges()
            .iter()
            .map(|e| (index(e.source()), index(e.target())))
            .collect();
        let mut out = vec![Vec::new(); worlds.len()];
        for (i, &(u, _)) in edges.iter().enumerate() {
            out[u].push(i);
        }
        let labels = worlds
            .iter()
            .map(|w| {
                let mut s = BitSet::empty(props.len());
                for (i, p) in props.iter().enumerate() {
                    if m.holds(p, w) {
                        s.insert(i);
                    }
                }
                s
            })
            .collect();
        Frame {
            worlds,
            edges,
            out,
            labels,
        }
    }

    pub fn index_of(&self, w: &World) -> Option<usize> {
        self.worlds.binary_search(w).ok()
    }

    pub fn full_view(&self) -> View {
        View {
            worlds: BitSet::full(self.worlds.len()),
            edges: BitSet::full(self.edges.len()),
        }
    }
}

/// The alive part of a frame after some deletions.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) struct View {
    pub worlds: BitSet,
    pub edges: BitSet,
}

impl View {
    pub fn successors<'a>(&'a self, f: &'a Frame, w: usize) -> impl Iterator<Item = usize> + 'a {
        f.out[w]
            .iter()
            .filter(move |&&e| self.edges.contains(e))
            .map(move |&e| f.edges[e].1)
    }

    pub fn without_edge(&self, e: usize) -> View {
        let mut v = self.clone();
        v.edges.remove(e);
        v
    }

    pub fn without_world(&self, f: &Frame, w: usize) -> View {
        let mut v = self.clone();
        v.worlds.remove(w);
        for (i, &(a, b)) in f.edges.iter().enumerate() {
            if a == w || b == w {
                v.edges.remove(i);
            }
        }
        v
    }

    /// World ids missing from this view, in canonical order.
    pub fn deleted_worlds(&self, f: &Frame) -> Vec<String> {
        (0..f.worlds.len())
            .filter(|&i| !self.worlds.contains(i))
            .map(|i| f.worlds[i].to_string())
            .collect()
    }

    /// Edges missing from this view whose endpoints are both alive.
    pub fn deleted_edges(&self, f: &Frame) -> Vec<String> {
        f.edges
            .iter()
            .enumerate()
            .filter(|&(i, &(a, b))| {
                !self.edges.contains(i) && self.worlds.contains(a) && self.worlds.contains(b)
            })
            .map(|(_, &(a, b))| format!("{}->{}", f.worlds[a], f.worlds[b]))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bitset_basics() {
        let mut s = BitSet::empty(130);
        s.insert(0);
        s.insert(64);
        s.insert(129);
        assert_eq!(s.len(), 3);
        assert_eq!(s.iter().collect::<Vec<_>>(), [0, 64, 129]);
        s.remove(64);
        assert!(!s.contains(64));
        assert_eq!(BitSet::full(70).len(), 70);
    }

    #[test]
    fn view_world_deletion_drops_incident_edges() {
        let m = KripkeModel::new(
            ["a", "b", "c"],
            [("a", "b"), ("b", "c"), ("c", "a")],
            Vec::<&str>::new(),
            [],
        )
        .unwrap();
        let f = Frame::new(&m, &[]);
        let v = f.full_view().without_world(&f, 1);
        assert_eq!(v.edges.len(), 1);
        assert_eq!(v.successors(&f, 2).collect::<Vec<_>>(), [0]);
        assert_eq!(v.deleted_worlds(&f), ["b"]);
    }
}
