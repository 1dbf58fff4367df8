//! Enumeration of set partitions, compositions and integer partitions.

use crate::{Error, Result};

/// Largest ground set accepted by [`set_partitions`]; Bell(14) ≈ 1.9·10^8.
pub const MAX_SET_PARTITION_SIZE: usize = 14;

/// A partition of `{0, …, size-1}` into non-empty blocks, each block sorted
/// and the blocks ordered by least element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SetPartition {
    blocks: Vec<Vec<usize>>,
}

impl SetPartition {
    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    fn from_rgs(rgs: &[usize]) -> Self {
        let count = rgs.iter().max().map_or(0, |m| m + 1);
        let mut blocks = vec![Vec::new(); count];
        for (element, &b) in rgs.iter().enumerate() {
            blocks[b].push(element);
        }
        SetPartition { blocks }
    }
}

/// Iterator over set partitions in restricted-growth-string order.
///
/// A restricted growth string `a` has `a[0] = 0` and
/// `a[k] ≤ 1 + max(a[0..k])`; element `k` goes to block `a[k]`.
#[derive(Clone, Debug)]
pub struct SetPartitions {
    rgs: Vec<usize>,
    // prefix_max[k] = max(rgs[0..=k])
    prefix_max: Vec<usize>,
    done: bool,
}

/// All partitions of a set of size `size`, each exactly once.
pub fn set_partitions(size: usize) -> Result<SetPartitions> {
    if size == 0 || size > MAX_SET_PARTITION_SIZE {
        return Err(Error::SizeGuard {
            size,
            max: MAX_SET_PARTITION_SIZE,
        });
    }
    Ok(SetPartitions {
        rgs: vec![0; size],
        prefix_max: vec![0; size],
        done: false,
    })
}

impl SetPartitions {
    /// Steps to the next string; `false` after the last one.
    fn advance(&mut self) -> bool {
        let n = self.rgs.len();
        for k in (1..n).rev() {
            if self.rgs[k] <= self.prefix_max[k - 1] {
                self.rgs[k] += 1;
                self.prefix_max[k] = self.prefix_max[k - 1].max(self.rgs[k]);
                for r in k + 1..n {
                    self.rgs[r] = 0;
                    self.prefix_max[r] = self.prefix_max[k];
                }
                return true;
            }
        }
        false
    }

    /// Visits each restricted growth string in order; cheaper than
    /// collecting blocks when only block statistics are needed.
    pub fn for_each_rgs(mut self, mut f: impl FnMut(&[usize])) {
        if self.done {
            return;
        }
        loop {
            f(&self.rgs);
            if !self.advance() {
                break;
            }
        }
        self.done = true;
    }
}

impl Iterator for SetPartitions {
    type Item = SetPartition;

    fn next(&mut self) -> Option<SetPartition> {
        if self.done {
            return None;
        }
        let out = SetPartition::from_rgs(&self.rgs);
        self.done = !self.advance();
        Some(out)
    }
}

/// An ordered tuple of parts, each at least 2.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Composition2 {
    parts: Vec<u32>,
}

impl Composition2 {
    pub fn parts(&self) -> &[u32] {
        &self.parts
    }
}

/// Compositions of `n` with every part ≥ 2, grouped by number of parts and
/// lexicographic within a group.
pub fn compositions_min2(n: u32) -> Vec<Composition2> {
    fn extend(rest: u32, parts: &mut Vec<u32>, out: &mut Vec<Composition2>) {
        if rest == 0 {
            out.push(Composition2 {
                parts: parts.clone(),
            });
            return;
        }
        // Leave either nothing or at least 2 for the remaining parts.
        for p in 2..=rest {
            if rest - p == 1 {
                continue;
            }
            parts.push(p);
            extend(rest - p, parts, out);
            parts.pop();
        }
    }
    let mut out = Vec::new();
    if n >= 2 {
        extend(n, &mut Vec::new(), &mut out);
    }
    out.sort_by(|a, b| {
        a.parts
            .len()
            .cmp(&b.parts.len())
            .then(a.parts.cmp(&b.parts))
    });
    out
}

/// Integer partitions of `n` as non-increasing part lists with every part
/// at least `min_part`.
pub fn integer_partitions(n: u32, min_part: u32) -> Vec<Vec<u32>> {
    fn extend(rest: u32, max: u32, min: u32, parts: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest == 0 {
            out.push(parts.clone());
            return;
        }
        for p in (min..=max.min(rest)).rev() {
            parts.push(p);
            extend(rest - p, p, min, parts, out);
            parts.pop();
        }
    }
    let mut out = Vec::new();
    extend(n, n, min_part.max(1), &mut Vec::new(), &mut out);
    out
}
