//! The date value kind: calendar arithmetic, interval sets, yearly periods,
//! and their constructor hooks.

mod calendar;
mod hooks;
mod period;
mod range;

pub use calendar::{days_in_month, is_leap_year, max_days_in_month, Date, InvalidDate, BEGIN_TIME, END_TIME};
pub use hooks::{period_hooks, range_hooks};
pub use period::PeriodNF;
pub use range::DateRangeNF;
