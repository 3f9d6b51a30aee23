use std::collections::HashMap;
use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::model::PowerLaw;

pub const TRACE_MAGIC: &[u8; 8] = b"IRMTRC01";

/// A sequence of accesses to ids in `1..=alphabet`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trace {
    ids: Vec<u32>,
    alphabet: u64,
}

impl Trace {
    pub fn new(ids: Vec<u32>, alphabet: u64) -> Result<Self> {
        if alphabet > u32::MAX as u64 {
            return Err(Error::domain(
                "Trace",
                format!("alphabet {alphabet} exceeds 32-bit ids"),
            ));
        }
        if let Some(&bad) = ids.iter().find(|&&id| id == 0 || id as u64 > alphabet) {
            return Err(Error::domain("Trace", format!("id {bad} outside 1..={alphabet}")));
        }
        Ok(Trace { ids, alphabet })
    }

    /// Builds a trace from whitespace-separated labels ("A B A B"); labels
    /// are numbered by first appearance and the alphabet is the label set.
    pub fn from_labels(text: &str) -> Trace {
        let mut names: HashMap<&str, u32> = HashMap::new();
        let ids: Vec<u32> = text
            .split_whitespace()
            .map(|w| {
                let next = names.len() as u32 + 1;
                *names.entry(w).or_insert(next)
            })
            .collect();
        Trace {
            ids,
            alphabet: names.len() as u64,
        }
    }

    pub fn accesses(&self) -> &[u32] {
        &self.ids
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn alphabet(&self) -> u64 {
        self.alphabet
    }

    /// Number of distinct ids touched.
    pub fn distinct(&self) -> usize {
        let mut seen = vec![false; self.alphabet as usize + 1];
        let mut n = 0;
        for &id in &self.ids {
            if !std::mem::replace(&mut seen[id as usize], true) {
                n += 1;
            }
        }
        n
    }

    /// Per-id access counts, index 0 unused.
    pub fn frequencies(&self) -> Vec<u64> {
        let mut f = vec![0u64; self.alphabet as usize + 1];
        for &id in &self.ids {
            f[id as usize] += 1;
        }
        f
    }

    /// Binary form: magic, u64 N, u64 L, then L little-endian u32 ids.
    pub fn write_to(&self, mut w: impl Write) -> Result<()> {
        w.write_all(TRACE_MAGIC)?;
        w.write_all(&self.alphabet.to_le_bytes())?;
        w.write_all(&(self.ids.len() as u64).to_le_bytes())?;
        let mut buf = Vec::with_capacity(4 * 65536);
        for chunk in self.ids.chunks(65536) {
            buf.clear();
            for id in chunk {
                buf.extend_from_slice(&id.to_le_bytes());
            }
            w.write_all(&buf)?;
        }
        Ok(())
    }

    pub fn read_from(mut r: impl Read) -> Result<Trace> {
        let mut magic = [0u8; 8];
        r.read_exact(&mut magic)
            .map_err(|_| Error::Format("truncated header".into()))?;
        if &magic != TRACE_MAGIC {
            return Err(Error::Format("bad magic".into()));
        }
        let mut word = [0u8; 8];
        r.read_exact(&mut word)
            .map_err(|_| Error::Format("truncated header".into()))?;
        let alphabet = u64::from_le_bytes(word);
        r.read_exact(&mut word)
            .map_err(|_| Error::Format("truncated header".into()))?;
        let len = u64::from_le_bytes(word) as usize;
        let mut bytes = Vec::new();
        r.read_to_end(&mut bytes)?;
        if bytes.len() != 4 * len {
            return Err(Error::Format(format!(
                "expected {len} ids, found {} bytes",
                bytes.len()
            )));
        }
        let ids = bytes
            .chunks_exact(4)
            .map(|c| u32::from_le_bytes([c[0], c[1], c[2], c[3]]))
            .collect();
        Trace::new(ids, alphabet).map_err(|e| Error::Format(e.to_string()))
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let mut w = BufWriter::new(File::create(path)?);
        self.write_to(&mut w)?;
        w.flush()?;
        Ok(())
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Trace> {
        Trace::read_from(BufReader::new(File::open(path)?))
    }
}

/// `length` i.i.d. draws from `law` (inverse CDF by binary search over the
/// cumulative popularity), reproducible for a given seed.
pub fn generate_irm_trace(law: &PowerLaw, length: usize, seed: u64) -> Trace {
    let mut cdf = Vec::with_capacity(law.n() as usize);
    let mut acc = 0.0;
    for p in law.probabilities() {
        acc += p;
        cdf.push(acc);
    }
    let total = acc;
    let last = cdf.len() - 1;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ids = (0..length)
        .map(|_| {
            let u = rng.random::<f64>() * total;
            (cdf.partition_point(|&c| c <= u).min(last) + 1) as u32
        })
        .collect();
    Trace { ids, alphabet: law.n() }
}
