/// Distances below this are counted in a dense array; rarer, larger ones
/// are kept sorted in a sparse tail.
const DENSE_LIMIT: usize = 1 << 20;

/// Integer histogram answering suffix queries `#{g ≥ d}` and `Σ_{g ≥ d} (g+1)`.
#[derive(Debug, Clone, Default, PartialEq)]
pub(crate) struct Histogram {
    /// `count_suffix[d]` = #{g ≥ d, g in the dense range}, one extra zero slot.
    count_suffix: Vec<u64>,
    weight_suffix: Vec<u128>,
    /// Sorted values ≥ DENSE_LIMIT.
    tail: Vec<u64>,
    /// `tail_weight[i]` = Σ_{j ≥ i} (tail[j] + 1).
    tail_weight: Vec<u128>,
}

#[derive(Debug, Default)]
pub(crate) struct HistogramBuilder {
    dense: Vec<u64>,
    tail: Vec<u64>,
}

impl HistogramBuilder {
    pub fn push(&mut self, g: u64) {
        if (g as usize) < DENSE_LIMIT {
            let g = g as usize;
            if g >= self.dense.len() {
                self.dense.resize(g + 1, 0);
            }
            self.dense[g] += 1;
        } else {
            self.tail.push(g);
        }
    }

    pub fn finish(self) -> Histogram {
        let HistogramBuilder { dense, mut tail } = self;
        let mut count_suffix = vec![0u64; dense.len() + 1];
        let mut weight_suffix = vec![0u128; dense.len() + 1];
        for g in (0..dense.len()).rev() {
            count_suffix[g] = count_suffix[g + 1] + dense[g];
            weight_suffix[g] = weight_suffix[g + 1] + dense[g] as u128 * (g as u128 + 1);
        }
        tail.sort_unstable();
        let mut tail_weight = vec![0u128; tail.len() + 1];
        for i in (0..tail.len()).rev() {
            tail_weight[i] = tail_weight[i + 1] + tail[i] as u128 + 1;
        }
        Histogram {
            count_suffix,
            weight_suffix,
            tail,
            tail_weight,
        }
    }
}

impl Histogram {
    fn tail_from(&self, d: u64) -> usize {
        self.tail.partition_point(|&g| g < d)
    }

    pub fn count_at_least(&self, d: u64) -> u64 {
        let dense = self.count_suffix.get(d as usize).copied().unwrap_or(0);
        dense + (self.tail.len() - self.tail_from(d)) as u64
    }

    /// Σ_{g ≥ d} (g + 1).
    pub fn weight_at_least(&self, d: u64) -> u128 {
        let dense = self.weight_suffix.get(d as usize).copied().unwrap_or(0);
        dense + self.tail_weight[self.tail_from(d)]
    }

    pub fn total(&self) -> u64 {
        self.count_suffix[0] + self.tail.len() as u64
    }

    /// Distinct values present, ascending.
    pub fn support(&self) -> Vec<u64> {
        let mut s: Vec<u64> = (0..self.count_suffix.len() - 1)
            .filter(|&g| self.count_suffix[g] > self.count_suffix[g + 1])
            .map(|g| g as u64)
            .collect();
        let mut tail = self.tail.clone();
        tail.dedup();
        s.extend(tail);
        s
    }
}

/// Which distance a [`DistanceCcdf`] holds. It fixes how much history an
/// access needs before a distance ≥ d could have been observed: d earlier
/// accesses for re-reference distances, d distinct earlier ids for stack
/// distances.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DistanceKind {
    Reref,
    Stack,
}

/// Empirical distribution of per-access distances (stack or re-reference),
/// with first references held in a separate "infinite distance" bucket.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceCcdf {
    kind: DistanceKind,
    hist: Histogram,
    /// Positions of the first references, ascending.
    cold_at: Vec<u64>,
}

#[derive(Debug)]
pub(crate) struct DistanceCcdfBuilder {
    kind: DistanceKind,
    hist: HistogramBuilder,
    cold_at: Vec<u64>,
    seen: u64,
}

impl DistanceCcdfBuilder {
    pub fn new(kind: DistanceKind) -> Self {
        DistanceCcdfBuilder {
            kind,
            hist: HistogramBuilder::default(),
            cold_at: Vec::new(),
            seen: 0,
        }
    }

    /// Distances must be pushed in trace order.
    pub fn push(&mut self, d: Option<u64>) {
        match d {
            Some(d) => self.hist.push(d),
            None => self.cold_at.push(self.seen),
        }
        self.seen += 1;
    }

    pub fn finish(self) -> DistanceCcdf {
        DistanceCcdf {
            kind: self.kind,
            hist: self.hist.finish(),
            cold_at: self.cold_at,
        }
    }
}

impl DistanceCcdf {
    /// From per-access distances in trace order (`None` for first references).
    pub fn from_distances(kind: DistanceKind, ds: impl IntoIterator<Item = Option<u64>>) -> Self {
        let mut b = DistanceCcdfBuilder::new(kind);
        for d in ds {
            b.push(d);
        }
        b.finish()
    }

    pub fn kind(&self) -> DistanceKind {
        self.kind
    }

    /// All accesses, warm and cold.
    pub fn total(&self) -> u64 {
        self.hist.total() + self.cold()
    }

    pub fn cold(&self) -> u64 {
        self.cold_at.len() as u64
    }

    pub fn warm(&self) -> u64 {
        self.hist.total()
    }

    /// Accesses with distance ≥ d; cold accesses count at every d.
    pub fn count_at_least(&self, d: u64) -> u64 {
        self.hist.count_at_least(d) + self.cold()
    }

    /// P[distance ≥ d] over all accesses. For stack distances this is the
    /// LRU miss rate of a cache of size d, cold misses included.
    pub fn ccdf(&self, d: u64) -> f64 {
        let t = self.total();
        if t == 0 {
            return 0.0;
        }
        self.count_at_least(d) as f64 / t as f64
    }

    /// P[distance ≥ d | not a first reference]; 1 at d = 0 even when no
    /// re-reference was observed.
    pub fn warm_ccdf(&self, d: u64) -> f64 {
        let w = self.warm();
        if d == 0 {
            return 1.0;
        }
        if w == 0 {
            return 0.0;
        }
        self.hist.count_at_least(d) as f64 / w as f64
    }

    /// Steady-state estimate of P[distance ≥ d], free of start-up bias.
    ///
    /// Only accesses with enough history to show a distance ≥ d are used (d
    /// earlier accesses, or d distinct earlier ids for stack distances).
    /// Among them a first reference certainly has distance ≥ d, since its
    /// previous use lies before the trace. For stack distances this is the
    /// miss rate of an LRU cache of size d after it has filled. Returns 0
    /// when no access qualifies.
    pub fn steady_ccdf(&self, d: u64) -> f64 {
        if d == 0 {
            return 1.0;
        }
        let total = self.total();
        let cold = self.cold();
        let (usable, cold_hits) = match self.kind {
            DistanceKind::Reref => {
                if d >= total {
                    return 0.0;
                }
                (total - d, cold - self.cold_at.partition_point(|&t| t < d) as u64)
            }
            DistanceKind::Stack => {
                if d > cold {
                    return 0.0;
                }
                // History holds d distinct ids right after the d-th first reference.
                (total - self.cold_at[d as usize - 1] - 1, cold - d)
            }
        };
        if usable == 0 {
            return 0.0;
        }
        (self.hist.count_at_least(d) + cold_hits) as f64 / usable as f64
    }

    /// Finite distances observed, ascending.
    pub fn support(&self) -> Vec<u64> {
        self.hist.support()
    }

    /// `(distance, ccdf)` at each observed finite distance.
    pub fn points(&self) -> Vec<(u64, f64)> {
        self.support().into_iter().map(|d| (d, self.ccdf(d))).collect()
    }
}
