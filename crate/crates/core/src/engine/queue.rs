/// Bounded attention buffer. Priorities decay geometrically with the age of
/// an item; `pop` yields the highest effective priority and overflow evicts
/// the lowest.
#[derive(Debug, Clone)]
pub struct CyclingQueue<T> {
    items: Vec<Slot<T>>,
    capacity: usize,
    decay: f64,
    seq: u64,
}

#[derive(Debug, Clone)]
struct Slot<T> {
    item: T,
    priority: f64,
    inserted: u64,
    seq: u64,
}

impl<T> CyclingQueue<T> {
    pub fn new(capacity: usize, decay: f64) -> Self {
        assert!(capacity > 0, "queue capacity must be positive");
        CyclingQueue {
            items: Vec::new(),
            capacity,
            decay,
            seq: 0,
        }
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn set_decay(&mut self, decay: f64) {
        self.decay = decay;
    }

    fn effective(&self, slot: &Slot<T>, now: u64) -> f64 {
        slot.priority * self.decay.powf(now.saturating_sub(slot.inserted) as f64)
    }

    // Higher priority first; among equals the older entry wins.
    fn better(&self, a: &Slot<T>, b: &Slot<T>, now: u64) -> bool {
        let (pa, pb) = (self.effective(a, now), self.effective(b, now));
        pa > pb || (pa == pb && a.seq < b.seq)
    }

    /// Inserts an item; returns whatever had to be evicted to stay within
    /// capacity (possibly the new item itself).
    pub fn push(&mut self, item: T, priority: f64, now: u64) -> Option<T> {
        let slot = Slot {
            item,
            priority,
            inserted: now,
            seq: self.seq,
        };
        self.seq += 1;
        self.items.push(slot);
        if self.items.len() <= self.capacity {
            return None;
        }
        let worst = (0..self.items.len())
            .reduce(|w, i| {
                if self.better(&self.items[w], &self.items[i], now) {
                    i
                } else {
                    w
                }
            })
            .expect("queue is nonempty");
        Some(self.items.swap_remove(worst).item)
    }

    pub fn pop(&mut self, now: u64) -> Option<T> {
        let best = (0..self.items.len()).reduce(|b, i| {
            if self.better(&self.items[i], &self.items[b], now) {
                i
            } else {
                b
            }
        })?;
        Some(self.items.swap_remove(best).item)
    }

    pub fn peek_priority(&self, now: u64) -> Option<f64> {
        self.items
            .iter()
            .map(|s| self.effective(s, now))
            .max_by(|a, b| a.total_cmp(b))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn pops_highest_first() {
        let mut q = CyclingQueue::new(4, 0.9);
        q.push("low", 0.1, 0);
        q.push("high", 0.9, 0);
        q.push("mid", 0.5, 0);
        assert_eq!(q.pop(0), Some("high"));
        assert_eq!(q.pop(0), Some("mid"));
        assert_eq!(q.pop(0), Some("low"));
        assert_eq!(q.pop(0), None);
    }

    #[test]
    fn overflow_evicts_lowest() {
        let mut q = CyclingQueue::new(2, 0.9);
        assert_eq!(q.push('a', 0.5, 0), None);
        assert_eq!(q.push('b', 0.7, 0), None);
        assert_eq!(q.push('c', 0.6, 0), Some('a'));
        assert_eq!(q.push('d', 0.1, 0), Some('d'));
        assert_eq!(q.len(), 2);
    }

    #[test]
    fn older_items_decay() {
        let mut q = CyclingQueue::new(4, 0.5);
        q.push("old", 0.8, 0);
        q.push("new", 0.5, 2);
        // 0.8 * 0.25 = 0.2 < 0.5
        assert_eq!(q.pop(2), Some("new"));
        assert!((q.peek_priority(2).unwrap() - 0.2).abs() < 1e-12);
    }

    proptest! {
        #[test]
        fn never_exceeds_capacity(prios in proptest::collection::vec(0.0f64..1.0, 0..200), cap in 1usize..16) {
            let mut q = CyclingQueue::new(cap, 0.95);
            for (i, p) in prios.iter().enumerate() {
                q.push(i, *p, i as u64 / 3);
                prop_assert!(q.len() <= cap);
            }
        }
    }
}
