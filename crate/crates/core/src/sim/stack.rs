use super::distance::{DistanceCcdf, DistanceCcdfBuilder, DistanceKind};
use super::trace::Trace;

const NONE: u32 = u32::MAX;

/// Binary indexed tree of 0/1 marks.
struct Fenwick {
    tree: Vec<u32>,
}

impl Fenwick {
    fn new(n: usize) -> Self {
        Fenwick { tree: vec![0; n + 1] }
    }

    fn add(&mut self, i: usize, v: i32) {
        let mut i = i + 1;
        while i < self.tree.len() {
            self.tree[i] = self.tree[i].wrapping_add_signed(v);
            i += i & i.wrapping_neg();
        }
    }

    /// Sum over positions 0..=i.
    fn prefix(&self, i: usize) -> u32 {
        let mut i = i + 1;
        let mut s = 0;
        while i > 0 {
            s += self.tree[i];
            i &= i - 1;
        }
        s
    }

    /// Linear-time rebuild from 0/1 marks.
    fn rebuild(&mut self, marks: impl Iterator<Item = bool>) {
        self.tree.iter_mut().for_each(|t| *t = 0);
        for (i, m) in marks.enumerate() {
            self.tree[i + 1] = m as u32;
        }
        for i in 1..self.tree.len() {
            let j = i + (i & i.wrapping_neg());
            if j < self.tree.len() {
                self.tree[j] += self.tree[i];
            }
        }
    }
}

/// Per-access LRU stack distance (distinct other ids since the previous
/// access to the same id); `None` for first references.
///
/// Each live id marks the time slot of its latest access in a Fenwick tree,
/// so the distance is the number of marks after that slot: O(log) per
/// access. When slots run out the marks are compacted in time order.
pub fn stack_distances(trace: &Trace) -> Vec<Option<u64>> {
    let mut out = Vec::with_capacity(trace.len());
    for_each_stack_distance(trace, |d| out.push(d));
    out
}

fn for_each_stack_distance(trace: &Trace, mut emit: impl FnMut(Option<u64>)) {
    let ids = trace.accesses();
    let alphabet = trace.alphabet() as usize;
    let footprint = alphabet.min(ids.len());
    let cap = 2 * footprint + 64;
    let mut slot_of = vec![NONE; alphabet + 1];
    let mut owner = vec![NONE; cap];
    let mut fw = Fenwick::new(cap);
    let mut live = 0u32;
    let mut next = 0usize;

    for &id in ids {
        if next == cap {
            // Compact: renumber live slots 0..live in time order.
            let mut k = 0usize;
            for s in 0..cap {
                let o = owner[s];
                if o != NONE {
                    owner[s] = NONE;
                    owner[k] = o;
                    slot_of[o as usize] = k as u32;
                    k += 1;
                }
            }
            next = k;
            fw.rebuild((0..cap).map(|s| owner[s] != NONE));
        }
        let i = id as usize;
        let s = slot_of[i];
        if s == NONE {
            emit(None);
            live += 1;
        } else {
            let s = s as usize;
            emit(Some((live - fw.prefix(s)) as u64));
            fw.add(s, -1);
            owner[s] = NONE;
        }
        fw.add(next, 1);
        owner[next] = id;
        slot_of[i] = next as u32;
        next += 1;
    }
}

/// Stack-distance distribution; `ccdf(d)` is the LRU miss rate at size d.
pub fn stack_ccdf(trace: &Trace) -> DistanceCcdf {
    let mut b = DistanceCcdfBuilder::new(DistanceKind::Stack);
    for_each_stack_distance(trace, |d| b.push(d));
    b.finish()
}

/// Quadratic reference implementation: scans back to the previous access
/// and counts distinct ids in between. For small test traces only.
pub fn naive_stack_distances(trace: &Trace) -> Vec<Option<u64>> {
    let ids = trace.accesses();
    (0..ids.len())
        .map(|t| {
            let prev = (0..t).rev().find(|&u| ids[u] == ids[t])?;
            let mut seen: Vec<u32> = ids[prev + 1..t].to_vec();
            seen.sort_unstable();
            seen.dedup();
            Some(seen.len() as u64)
        })
        .collect()
}

/// Re-reference distances (accesses strictly between consecutive uses of
/// an id), cold references as infinite.
pub fn reref_ccdf(trace: &Trace) -> DistanceCcdf {
    let mut last = vec![NONE; trace.alphabet() as usize + 1];
    let mut b = DistanceCcdfBuilder::new(DistanceKind::Reref);
    for (t, &id) in trace.accesses().iter().enumerate() {
        let l = std::mem::replace(&mut last[id as usize], t as u32);
        b.push((l != NONE).then(|| (t - l as usize - 1) as u64));
    }
    b.finish()
}
