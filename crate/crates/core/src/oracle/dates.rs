//! Day-by-day evaluation of date concepts inside a finite window.
//!
//! Uses `chrono` for the calendar so that nothing is shared with the date
//! constructors under test.

use std::collections::BTreeSet;

use chrono::{Datelike, NaiveDate};

use super::OracleError;
use crate::dates::Date;
use crate::syntax::Description;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DateWindow {
    pub begin: NaiveDate,
    pub end: NaiveDate,
}

impl Default for DateWindow {
    /// 1992 through 2004: ordinary leap years plus the 400-year leap 2000.
    fn default() -> Self {
        DateWindow::years(1992, 2004)
    }
}

impl DateWindow {
    /// Whole years `first..=last`.
    pub fn years(first: i32, last: i32) -> DateWindow {
        DateWindow {
            begin: NaiveDate::from_ymd_opt(first, 1, 1).expect("valid year"),
            end: NaiveDate::from_ymd_opt(last, 12, 31).expect("valid year"),
        }
    }

    /// One leap and one common year: enough for concepts built from periods
    /// alone, whose truth depends only on month, day and leap-ness.
    pub fn period_years() -> DateWindow {
        DateWindow::years(1996, 1997)
    }

    pub fn days(&self) -> impl Iterator<Item = NaiveDate> {
        let end = self.end;
        self.begin.iter_days().take_while(move |d| *d <= end)
    }
}

pub fn to_chrono(d: Date) -> NaiveDate {
    NaiveDate::from_ymd_opt(i32::from(d.year()), u32::from(d.month()), u32::from(d.day()))
        .expect("calendar-valid dates agree with chrono")
}

pub fn from_chrono(d: NaiveDate) -> Date {
    let year = u16::try_from(d.year()).expect("window lies in years 1..9999");
    Date::new(year, d.month() as u8, d.day() as u8).expect("chrono dates are valid")
}

/// Is day `d` in the denotation of `c`?
pub fn satisfies(c: &Description, d: NaiveDate) -> Result<bool, OracleError> {
    Ok(match c {
        Description::ThingRef | Description::AnyDate => true,
        Description::NothingRef => false,
        Description::And(cs) => {
            for c in cs {
                if !satisfies(c, d)? {
                    return Ok(false);
                }
            }
            true
        }
        Description::DateRangeLit(pairs) => pairs.iter().any(|&(b, e)| to_chrono(b) <= d && d <= to_chrono(e)),
        Description::PeriodLit { month_lo, month_hi, day_lo, day_hi } => {
            let (m, day) = (d.month(), d.day());
            u32::from(*month_lo) <= m && m <= u32::from(*month_hi) && u32::from(*day_lo) <= day && day <= u32::from(*day_hi)
        }
        other => return Err(OracleError::Fragment(format!("not a date concept: {other:?}"))),
    })
}

/// Every day of `w` satisfying `c`.
pub fn date_denotation(c: &Description, w: &DateWindow) -> Result<BTreeSet<NaiveDate>, OracleError> {
    let mut out = BTreeSet::new();
    for d in w.days() {
        if satisfies(c, d)? {
            out.insert(d);
        }
    }
    Ok(out)
}
