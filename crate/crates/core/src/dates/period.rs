//! Yearly recurring month/day windows and the cookie-cutter against ranges.

use super::calendar::{days_in_month, max_days_in_month, Date};
use super::range::DateRangeNF;

/// Days whose month lies in `month_lo..=month_hi` and whose day of month lies
/// in `day_lo..=day_hi`.
///
/// Normalized so that the stored bounds are the bounding box of the days the
/// period actually admits: edge months with no admissible day are trimmed and
/// `day_hi` is clamped to the longest remaining month. Containment of boxes is
/// then exactly containment of denotations.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct PeriodNF {
    month_lo: u8,
    month_hi: u8,
    day_lo: u8,
    day_hi: u8,
}

impl PeriodNF {
    /// `None` when no calendar day satisfies the bounds.
    pub fn normalize(month_lo: u8, month_hi: u8, day_lo: u8, day_hi: u8) -> Option<PeriodNF> {
        let month_hi = month_hi.min(12);
        let day_hi = day_hi.min(31);
        if month_lo < 1 || day_lo < 1 || month_lo > month_hi || day_lo > day_hi {
            return None;
        }
        let admits = |m: u8| max_days_in_month(m) >= day_lo;
        let lo = (month_lo..=month_hi).find(|&m| admits(m))?;
        let hi = (month_lo..=month_hi).rev().find(|&m| admits(m))?;
        let longest = (lo..=hi).map(max_days_in_month).max()?;
        Some(PeriodNF { month_lo: lo, month_hi: hi, day_lo, day_hi: day_hi.min(longest) })
    }

    pub fn bounds(&self) -> (u8, u8, u8, u8) {
        (self.month_lo, self.month_hi, self.day_lo, self.day_hi)
    }

    pub fn is_universal(&self) -> bool {
        self.bounds() == (1, 12, 1, 31)
    }

    pub fn contains(&self, d: Date) -> bool {
        (self.month_lo..=self.month_hi).contains(&d.month())
            && (self.day_lo..=self.day_hi).contains(&d.day())
    }

    /// Non-strict box containment.
    pub fn subsumes(&self, low: &PeriodNF) -> bool {
        self.month_lo <= low.month_lo
            && low.month_hi <= self.month_hi
            && self.day_lo <= low.day_lo
            && low.day_hi <= self.day_hi
    }

    pub fn intersect(&self, other: &PeriodNF) -> Option<PeriodNF> {
        PeriodNF::normalize(
            self.month_lo.max(other.month_lo),
            self.month_hi.min(other.month_hi),
            self.day_lo.max(other.day_lo),
            self.day_hi.min(other.day_hi),
        )
    }

    /// Cookie-cutter: the maximal subintervals of `range` whose days all
    /// satisfy the period. Works one month strip at a time.
    pub fn cut(&self, range: &DateRangeNF) -> Option<DateRangeNF> {
        let mut pieces = Vec::new();
        for &(b, e) in range.intervals() {
            for year in b.year()..=e.year() {
                for month in self.month_lo..=self.month_hi {
                    let last = self.day_hi.min(days_in_month(year, month));
                    if self.day_lo > last {
                        continue;
                    }
                    let (Some(s), Some(t)) =
                        (Date::new(year, month, self.day_lo), Date::new(year, month, last))
                    else {
                        continue;
                    };
                    let (lo, hi) = (s.max(b), t.min(e));
                    if lo <= hi {
                        pieces.push((lo, hi));
                    }
                }
            }
        }
        DateRangeNF::normalize(&pieces)
    }
}
