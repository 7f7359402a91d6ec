//! Finite sets of days stored as maximal, sorted, non-adjacent intervals.

use super::calendar::{Date, BEGIN_TIME, END_TIME};

/// Normalized date range. Never empty.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct DateRangeNF {
    intervals: Vec<(Date, Date)>,
}

/// Whether `b` starts no later than the day after `e`.
fn touches(e: Date, b: Date) -> bool {
    match e.next_day() {
        Some(n) => b <= n,
        None => true,
    }
}

impl DateRangeNF {
    /// Drops pairs with end before begin, then merges overlapping and adjacent
    /// intervals. `None` when nothing remains.
    pub fn normalize(pairs: &[(Date, Date)]) -> Option<DateRangeNF> {
        let mut valid: Vec<(Date, Date)> = pairs.iter().copied().filter(|(b, e)| b <= e).collect();
        valid.sort();
        let mut intervals: Vec<(Date, Date)> = Vec::with_capacity(valid.len());
        for (b, e) in valid {
            match intervals.last_mut() {
                Some(last) if touches(last.1, b) => last.1 = last.1.max(e),
                _ => intervals.push((b, e)),
            }
        }
        if intervals.is_empty() {
            None
        } else {
            Some(DateRangeNF { intervals })
        }
    }

    pub fn universal() -> DateRangeNF {
        DateRangeNF { intervals: vec![(BEGIN_TIME, END_TIME)] }
    }

    pub fn single(d: Date) -> DateRangeNF {
        DateRangeNF { intervals: vec![(d, d)] }
    }

    pub fn intervals(&self) -> &[(Date, Date)] {
        &self.intervals
    }

    pub fn is_universal(&self) -> bool {
        self.intervals == [(BEGIN_TIME, END_TIME)]
    }

    pub fn contains(&self, d: Date) -> bool {
        let i = self.intervals.partition_point(|&(_, e)| e < d);
        self.intervals.get(i).is_some_and(|&(b, _)| b <= d)
    }

    /// Every interval of `low` lies inside one interval of `self`.
    pub fn subsumes(&self, low: &DateRangeNF) -> bool {
        low.intervals.iter().all(|&(b, e)| {
            let i = self.intervals.partition_point(|&(_, he)| he < b);
            self.intervals.get(i).is_some_and(|&(hb, he)| hb <= b && e <= he)
        })
    }

    /// Pairwise intersection; `None` when empty.
    pub fn intersect(&self, other: &DateRangeNF) -> Option<DateRangeNF> {
        let (a, b) = (&self.intervals, &other.intervals);
        let (mut i, mut j) = (0, 0);
        let mut out = Vec::new();
        while i < a.len() && j < b.len() {
            let lo = a[i].0.max(b[j].0);
            let hi = a[i].1.min(b[j].1);
            if lo <= hi {
                out.push((lo, hi));
            }
            if a[i].1 < b[j].1 {
                i += 1;
            } else {
                j += 1;
            }
        }
        DateRangeNF::normalize(&out)
    }

    /// Exact number of days in the union.
    pub fn count_days(&self) -> u64 {
        self.intervals.iter().map(|&(b, e)| u64::from(e.ordinal() - b.ordinal()) + 1).sum()
    }
}
