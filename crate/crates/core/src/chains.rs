//! Weak and simple chains of open disks.

use crate::error::{Error, Result};
use crate::geometry::{Complex, Disk};
use std::collections::VecDeque;

/// A finite cover by open disks with its intersection graph.
#[derive(Debug, Clone)]
pub struct DiskCover {
    disks: Vec<Disk>,
    adjacency: Vec<Vec<usize>>,
}

/// Open disks overlap when `|c_i - c_j| < r_i + r_j - 1e-12`; tangent disks do not.
pub fn disks_overlap(a: &Disk, b: &Disk) -> bool {
    (a.center - b.center).norm() < a.radius + b.radius - 1e-12
}

impl DiskCover {
    pub fn new(disks: Vec<Disk>) -> Self {
        let n = disks.len();
        let mut adjacency = vec![Vec::new(); n];
        for i in 0..n {
            for j in i + 1..n {
                if disks_overlap(&disks[i], &disks[j]) {
                    adjacency[i].push(j);
                    adjacency[j].push(i);
                }
            }
        }
        DiskCover { disks, adjacency }
    }

    /// Disks of common radius centred at `centers`.
    pub fn uniform(centers: &[Complex], radius: f64) -> Self {
        Self::new(centers.iter().map(|&z| Disk::open(z, radius)).collect())
    }

    pub fn disks(&self) -> &[Disk] {
        &self.disks
    }

    pub fn len(&self) -> usize {
        self.disks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.disks.is_empty()
    }

    pub fn neighbours(&self, i: usize) -> &[usize] {
        &self.adjacency[i]
    }

    /// Same disk or overlapping disks.
    pub fn meets(&self, i: usize, j: usize) -> bool {
        i == j || disks_overlap(&self.disks[i], &self.disks[j])
    }

    pub fn covering(&self, z: Complex) -> Vec<usize> {
        (0..self.disks.len()).filter(|&i| self.disks[i].contains(z)).collect()
    }
}

/// An ordered list of indices into a [`DiskCover`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chain {
    pub indices: Vec<usize>,
}

impl Chain {
    pub fn new(indices: Vec<usize>) -> Self {
        Chain { indices }
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn reversed(&self) -> Chain {
        Chain::new(self.indices.iter().rev().copied().collect())
    }

    /// Consecutive members meet.
    pub fn is_weak(&self, cover: &DiskCover) -> bool {
        !self.indices.is_empty() && self.indices.windows(2).all(|w| cover.meets(w[0], w[1]))
    }

    /// Members meet exactly when their positions differ by at most one, and no disk repeats.
    pub fn is_simple(&self, cover: &DiskCover) -> bool {
        let n = self.indices.len();
        if n == 0 {
            return false;
        }
        for i in 0..n {
            for j in i + 1..n {
                let (a, b) = (self.indices[i], self.indices[j]);
                if a == b {
                    return false;
                }
                if disks_overlap(&cover.disks[a], &cover.disks[b]) != (j - i <= 1) {
                    return false;
                }
            }
        }
        true
    }

    pub fn links(&self, cover: &DiskCover, x: Complex, y: Complex) -> bool {
        !self.indices.is_empty()
            && cover.disks[self.indices[0]].contains(x)
            && cover.disks[*self.indices.last().unwrap()].contains(y)
    }
}

/// Breadth-first path in the intersection graph from a disk containing `x`
/// to a disk containing `y`.
pub fn weak_chain(cover: &DiskCover, x: Complex, y: Complex) -> Result<Chain> {
    let starts = cover.covering(x);
    let n = cover.len();
    let is_goal: Vec<bool> = (0..n).map(|i| cover.disks[i].contains(y)).collect();
    if starts.is_empty() || !is_goal.iter().any(|&g| g) {
        return Err(Error::NotLinked);
    }
    let mut parent = vec![usize::MAX; n];
    let mut seen = vec![false; n];
    let mut queue = VecDeque::new();
    for &s in &starts {
        seen[s] = true;
        queue.push_back(s);
    }
    while let Some(i) = queue.pop_front() {
        if is_goal[i] {
            let mut path = vec![i];
            let mut k = i;
            while parent[k] != usize::MAX {
                k = parent[k];
                path.push(k);
            }
            path.reverse();
            return Ok(Chain::new(path));
        }
        for &j in cover.neighbours(i) {
            if !seen[j] {
                seen[j] = true;
                parent[j] = i;
                queue.push_back(j);
            }
        }
    }
    Err(Error::NotLinked)
}

/// Shortcuts a weak chain into a simple one, keeping its first and last disks.
///
/// Repeatedly takes the smallest `i`, and for it the largest `j > i + 1`,
/// with meeting disks and removes the members strictly between them
/// (and `j` itself when it repeats disk `i`).
pub fn simplify_chain(cover: &DiskCover, chain: &Chain) -> Result<Chain> {
    if !chain.is_weak(cover) {
        return Err(Error::NotWeakChain);
    }
    let mut idx = chain.indices.clone();
    let first = idx[0];
    let last = *idx.last().unwrap();
    if first == last {
        return Ok(Chain::new(vec![first]));
    }
    loop {
        idx.dedup();
        let n = idx.len();
        let mut cut = None;
        'outer: for i in 0..n {
            for j in (i + 2..n).rev() {
                if cover.meets(idx[i], idx[j]) {
                    cut = Some((i, j));
                    break 'outer;
                }
            }
        }
        match cut {
            None => break,
            Some((i, j)) => {
                let from = if idx[i] == idx[j] { j + 1 } else { j };
                idx.drain(i + 1..from);
            }
        }
    }
    let out = Chain::new(idx);
    debug_assert!(out.is_simple(cover));
    Ok(out)
}
