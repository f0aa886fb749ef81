use std::collections::VecDeque;

use crate::framecore::Frame;
use crate::numkernel::{rank, DenseMatrix};
use crate::scalar::Scalar;

/// The linear matroid on the indices of a frame: a set is independent when
/// its vectors are linearly independent.
pub(crate) struct LinearMatroid<'a, S: Scalar> {
    frame: &'a Frame<S>,
    tol: Option<f64>,
}

impl<'a, S: Scalar> LinearMatroid<'a, S> {
    pub(crate) fn new(frame: &'a Frame<S>, tol: Option<f64>) -> Self {
        Self { frame, tol }
    }

    pub(crate) fn rank_of(&self, set: &[usize]) -> usize {
        if set.is_empty() {
            return 0;
        }
        let columns: Vec<Vec<S>> = set.iter().map(|&i| self.frame.vector(i).to_vec()).collect();
        let m = DenseMatrix::from_columns(self.frame.dim(), &columns)
            .expect("frame vectors have frame dimension");
        rank(&m, self.tol)
    }

    pub(crate) fn independent(&self, set: &[usize]) -> bool {
        set.len() <= self.frame.dim() && self.rank_of(set) == set.len()
    }

    pub(crate) fn spans(&self, set: &[usize]) -> bool {
        self.rank_of(set) == self.frame.dim()
    }
}

/// A family of disjoint independent sets grown by augmenting exchanges.
pub(crate) struct BlockFamily {
    pub(crate) blocks: Vec<Vec<usize>>,
    owner: Vec<Option<usize>>,
}

impl BlockFamily {
    pub(crate) fn new(size: usize, count: usize) -> Self {
        Self {
            blocks: vec![Vec::new(); count],
            owner: vec![None; size],
        }
    }

    pub(crate) fn open_block(&mut self, x: usize) {
        self.owner[x] = Some(self.blocks.len());
        self.blocks.push(vec![x]);
    }

    /// Adds the unassigned element `x`, possibly moving other elements
    /// between blocks along a shortest exchange path. Returns false when no
    /// such path exists, leaving the family unchanged.
    pub(crate) fn insert<S: Scalar>(&mut self, m: &LinearMatroid<'_, S>, x: usize) -> bool {
        debug_assert!(self.owner[x].is_none());
        let mut parent: Vec<Option<(usize, usize)>> = vec![None; self.owner.len()];
        let mut seen = vec![false; self.owner.len()];
        seen[x] = true;
        let mut queue = VecDeque::from([x]);
        while let Some(y) = queue.pop_front() {
            for b in 0..self.blocks.len() {
                if self.owner[y] == Some(b) {
                    continue;
                }
                let mut grown = self.blocks[b].clone();
                grown.push(y);
                if m.independent(&grown) {
                    self.augment(x, y, b, &parent);
                    return true;
                }
                for (pos, &z) in self.blocks[b].iter().enumerate() {
                    if seen[z] {
                        continue;
                    }
                    let mut swapped = grown.clone();
                    swapped.swap_remove(pos);
                    if m.independent(&swapped) {
                        seen[z] = true;
                        parent[z] = Some((y, b));
                        queue.push_back(z);
                    }
                }
            }
        }
        false
    }

    fn augment(
        &mut self,
        x: usize,
        mut cur: usize,
        mut target: usize,
        parent: &[Option<(usize, usize)>],
    ) {
        loop {
            if let Some(old) = self.owner[cur] {
                self.blocks[old].retain(|&e| e != cur);
            }
            self.blocks[target].push(cur);
            self.owner[cur] = Some(target);
            if cur == x {
                return;
            }
            let (prev, blk) = parent[cur].expect("path leads back to the inserted element");
            cur = prev;
            target = blk;
        }
    }

    pub(crate) fn assigned(&self) -> usize {
        self.blocks.iter().map(Vec::len).sum()
    }

    pub(crate) fn unassigned(&self) -> Vec<usize> {
        (0..self.owner.len())
            .filter(|&i| self.owner[i].is_none())
            .collect()
    }

    pub(crate) fn into_sorted_blocks(self) -> Vec<Vec<usize>> {
        let mut blocks = self.blocks;
        for b in &mut blocks {
            b.sort_unstable();
        }
        blocks.sort();
        blocks
    }
}
