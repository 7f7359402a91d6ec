//! Proleptic Gregorian calendar dates over years 1..=9999.

use std::fmt;
use std::str::FromStr;

/// A calendar-valid day. Ordering is lexicographic on (year, month, day).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Date {
    year: u16,
    month: u8,
    day: u8,
}

/// Earliest representable day.
pub const BEGIN_TIME: Date = Date { year: 1, month: 1, day: 1 };
/// Latest representable day.
pub const END_TIME: Date = Date { year: 9999, month: 12, day: 31 };

pub fn is_leap_year(year: u16) -> bool {
    (year % 4 == 0 && year % 100 != 0) || year % 400 == 0
}

pub fn days_in_month(year: u16, month: u8) -> u8 {
    match month {
        1 | 3 | 5 | 7 | 8 | 10 | 12 => 31,
        4 | 6 | 9 | 11 => 30,
        2 if is_leap_year(year) => 29,
        2 => 28,
        _ => 0,
    }
}

/// Longest length a month can have in any year (February counts 29).
pub fn max_days_in_month(month: u8) -> u8 {
    if month == 2 {
        29
    } else {
        days_in_month(2001, month)
    }
}

impl Date {
    /// Returns `None` unless the triple names a real day in 1..=9999.
    pub fn new(year: u16, month: u8, day: u8) -> Option<Date> {
        if !(1..=9999).contains(&year) || !(1..=12).contains(&month) {
            return None;
        }
        if day == 0 || day > days_in_month(year, month) {
            return None;
        }
        Some(Date { year, month, day })
    }

    pub fn year(self) -> u16 {
        self.year
    }

    pub fn month(self) -> u8 {
        self.month
    }

    pub fn day(self) -> u8 {
        self.day
    }

    /// Calendar successor; `None` for `END_TIME`.
    pub fn next_day(self) -> Option<Date> {
        if self.day < days_in_month(self.year, self.month) {
            Some(Date { day: self.day + 1, ..self })
        } else if self.month < 12 {
            Some(Date { month: self.month + 1, day: 1, ..self })
        } else if self.year < 9999 {
            Some(Date { year: self.year + 1, month: 1, day: 1 })
        } else {
            None
        }
    }

    /// Calendar predecessor; `None` for `BEGIN_TIME`.
    pub fn prev_day(self) -> Option<Date> {
        if self.day > 1 {
            Some(Date { day: self.day - 1, ..self })
        } else if self.month > 1 {
            let month = self.month - 1;
            Some(Date { month, day: days_in_month(self.year, month), ..self })
        } else if self.year > 1 {
            Some(Date { year: self.year - 1, month: 12, day: 31 })
        } else {
            None
        }
    }

    /// Days elapsed since `BEGIN_TIME`.
    pub fn ordinal(self) -> u32 {
        let y = u32::from(self.year) - 1;
        let before_year = y * 365 + y / 4 - y / 100 + y / 400;
        let before_month: u32 = (1..self.month)
            .map(|m| u32::from(days_in_month(self.year, m)))
            .sum();
        before_year + before_month + u32::from(self.day) - 1
    }
}

impl fmt::Display for Date {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:04}/{:02}/{:02}", self.year, self.month, self.day)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid date literal `{0}`")]
pub struct InvalidDate(pub String);

impl FromStr for Date {
    type Err = InvalidDate;

    fn from_str(s: &str) -> Result<Date, InvalidDate> {
        let bad = || InvalidDate(s.to_string());
        let mut parts = s.split('/');
        let (y, m, d) = match (parts.next(), parts.next(), parts.next(), parts.next()) {
            (Some(y), Some(m), Some(d), None) => (y, m, d),
            _ => return Err(bad()),
        };
        let num = |p: &str| {
            if p.is_empty() || p.len() > 4 || !p.bytes().all(|b| b.is_ascii_digit()) {
                None
            } else {
                p.parse::<u16>().ok()
            }
        };
        let (y, m, d) = (num(y).ok_or_else(bad)?, num(m).ok_or_else(bad)?, num(d).ok_or_else(bad)?);
        if m > 12 || d > 31 {
            return Err(bad());
        }
        Date::new(y, m as u8, d as u8).ok_or_else(bad)
    }
}
