//! Serde helpers shared by the JSON reports.

use num_rational::BigRational;
use std::fmt::Display;

use serde::Serializer;

/// Rationals are written as strings (`"3"`, `"-5/2"`) so no precision is lost.
pub fn ser_rational<S: Serializer>(q: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&q.to_string())
}

pub fn ser_display<T: Display, S: Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}
