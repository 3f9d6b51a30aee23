use super::trace::Trace;

const NIL: u32 = u32::MAX;

/// Number of misses of a fully-associative LRU cache holding `d` ids.
/// First references always miss.
pub fn lru_misses(trace: &Trace, d: usize) -> u64 {
    if d == 0 {
        return trace.len() as u64;
    }
    // Intrusive doubly linked recency list over ids; head is most recent.
    let slots = trace.alphabet() as usize + 1;
    let mut prev = vec![NIL; slots];
    let mut next = vec![NIL; slots];
    let mut cached = vec![false; slots];
    let (mut head, mut tail) = (NIL, NIL);
    let mut size = 0usize;
    let mut misses = 0u64;

    for &id in trace.accesses() {
        let i = id as usize;
        if cached[i] {
            if head == id {
                continue;
            }
            // Unlink; id is not the head so prev[i] is valid.
            let (p, n) = (prev[i], next[i]);
            next[p as usize] = n;
            if n == NIL {
                tail = p;
            } else {
                prev[n as usize] = p;
            }
        } else {
            misses += 1;
            if size == d {
                let victim = tail;
                let v = victim as usize;
                tail = prev[v];
                if tail == NIL {
                    head = NIL;
                } else {
                    next[tail as usize] = NIL;
                }
                cached[v] = false;
            } else {
                size += 1;
            }
            cached[i] = true;
        }
        prev[i] = NIL;
        next[i] = head;
        if head != NIL {
            prev[head as usize] = id;
        }
        head = id;
        if tail == NIL {
            tail = id;
        }
    }
    misses
}

/// LRU miss rate (misses / accesses) for cache size `d`.
pub fn simulate_lru(trace: &Trace, d: usize) -> f64 {
    if trace.is_empty() {
        return 0.0;
    }
    lru_misses(trace, d) as f64 / trace.len() as f64
}
