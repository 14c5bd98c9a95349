//! Textual class literals: `d; m1,m2,...,mn`.
//!
//! `v^k` repeats `v` k times, so `5; 3,3,1^8` is `5H - 3E1 - 3E2 - E3 - ... - E10`.
//! Whitespace is ignored. A bare degree (`0` or `0;`) has no multiplicities.
//! Formatting is the `Display` impl of `DivisorClass`, which compresses runs
//! of three or more.

use exceptional_core::DivisorClass;
use thiserror::Error;

/// Largest accepted absolute value of any entry. Keeps every pairing of two
/// literal classes inside `i64`.
pub const MAX_ENTRY: i64 = 1 << 20;
/// Largest accepted number of multiplicities.
pub const MAX_POINTS: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LiteralError {
    #[error("empty class literal")]
    Empty,
    #[error("invalid degree {0:?}")]
    BadDegree(String),
    #[error("invalid multiplicity {0:?}")]
    BadEntry(String),
    #[error("invalid repeat count in {0:?}")]
    BadRepeat(String),
    #[error("entry {0} exceeds the supported magnitude {MAX_ENTRY}")]
    TooLarge(i64),
    #[error("more than {MAX_POINTS} multiplicities")]
    TooManyPoints,
}

fn parse_int(s: &str, err: impl Fn(String) -> LiteralError) -> Result<i64, LiteralError> {
    let v: i64 = s.parse().map_err(|_| err(s.to_string()))?;
    if v.abs() > MAX_ENTRY {
        return Err(LiteralError::TooLarge(v));
    }
    Ok(v)
}

pub fn parse_class(input: &str) -> Result<DivisorClass, LiteralError> {
    let compact: String = input.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(LiteralError::Empty);
    }
    let (deg, rest) = match compact.split_once(';') {
        Some((d, r)) => (d, r),
        None => (compact.as_str(), ""),
    };
    let degree = parse_int(deg, LiteralError::BadDegree)?;
    let mut mults = Vec::new();
    if !rest.is_empty() {
        for item in rest.split(',') {
            let (value, count) = match item.split_once('^') {
                Some((v, k)) => {
                    let k: usize = k
                        .parse()
                        .map_err(|_| LiteralError::BadRepeat(item.to_string()))?;
                    if k == 0 {
                        return Err(LiteralError::BadRepeat(item.to_string()));
                    }
                    (v, k)
                }
                None => (item, 1),
            };
            let v = parse_int(value, LiteralError::BadEntry)?;
            if mults.len() + count > MAX_POINTS {
                return Err(LiteralError::TooManyPoints);
            }
            mults.extend(std::iter::repeat_n(v, count));
        }
    }
    Ok(DivisorClass::new(degree, mults))
}

pub fn format_class(c: &DivisorClass) -> String {
    c.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_shorthand() {
        let c = parse_class("5; 3,3,1^8").unwrap();
        assert_eq!(c.degree, 5);
        assert_eq!(c.mults, vec![3, 3, 1, 1, 1, 1, 1, 1, 1, 1]);
        assert_eq!(parse_class("0; 0,0,-1").unwrap().mults, vec![0, 0, -1]);
        assert_eq!(
            parse_class(" 1 ;1 , 1 ").unwrap(),
            DivisorClass::new(1, vec![1, 1])
        );
        assert_eq!(parse_class("-2; -1^3").unwrap().mults, vec![-1, -1, -1]);
    }

    #[test]
    fn bare_degree() {
        assert_eq!(parse_class("0").unwrap().mults, Vec::<i64>::new());
        assert_eq!(parse_class("3;").unwrap(), DivisorClass::new(3, vec![]));
    }

    #[test]
    fn trailing_zeros_survive() {
        assert_eq!(parse_class("1; 1,1,0").unwrap().len(), 3);
        assert_eq!(
            format_class(&parse_class("1; 1,1,0^8").unwrap()),
            "1; 1,1,0^8"
        );
    }

    #[test]
    fn rejects_malformed() {
        assert_eq!(parse_class(""), Err(LiteralError::Empty));
        assert!(matches!(
            parse_class("x; 1"),
            Err(LiteralError::BadDegree(_))
        ));
        assert!(matches!(
            parse_class("2; 1,,1"),
            Err(LiteralError::BadEntry(_))
        ));
        assert!(matches!(
            parse_class("2; 1^0"),
            Err(LiteralError::BadRepeat(_))
        ));
        assert!(matches!(
            parse_class("2; 1^x"),
            Err(LiteralError::BadRepeat(_))
        ));
        assert!(matches!(
            parse_class("2; 1^-2"),
            Err(LiteralError::BadRepeat(_))
        ));
        assert!(matches!(
            parse_class("2; 1;1"),
            Err(LiteralError::BadEntry(_))
        ));
        assert!(matches!(
            parse_class("99999999999; 1"),
            Err(LiteralError::TooLarge(_))
        ));
        assert_eq!(parse_class("1; 0^5000"), Err(LiteralError::TooManyPoints));
    }

    #[test]
    fn canonical_formatting() {
        assert_eq!(
            format_class(&parse_class("5;3,3,1,1,1,1,1,1,1,1").unwrap()),
            "5; 3,3,1^8"
        );
        assert_eq!(
            format_class(&parse_class("4; 2^2, 1^2").unwrap()),
            "4; 2,2,1,1"
        );
    }

    proptest! {
        #[test]
        fn round_trip(d in -50i64..=50, m in prop::collection::vec(-4i64..=4, 0..30)) {
            let c = DivisorClass::new(d, m);
            let s = format_class(&c);
            let back = parse_class(&s).unwrap();
            prop_assert_eq!(&back.mults, &c.mults);
            prop_assert_eq!(back.degree, c.degree);
            prop_assert_eq!(format_class(&back), s);
        }
    }
}
