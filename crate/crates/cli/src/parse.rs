//! Block notation: comma-separated positive integers, optionally wrapped in
//! square brackets. `[1,2,3]`, `1, 2, 3` and ` [ 7 ] ` are all accepted.

use std::fmt;

use kroncf::PeriodicCF;
use num_bigint::BigUint;

/// A malformed block. `column` is 1-based and counts characters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "column {}: {}", self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

fn err(column: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        column,
        message: message.into(),
    }
}

pub fn parse_block(input: &str) -> Result<PeriodicCF, ParseError> {
    let chars: Vec<char> = input.chars().collect();
    let mut lo = 0;
    let mut hi = chars.len();
    while lo < hi && chars[lo].is_whitespace() {
        lo += 1;
    }
    while hi > lo && chars[hi - 1].is_whitespace() {
        hi -= 1;
    }
    if lo == hi {
        return Err(err(1, "empty block"));
    }
    match (chars[lo] == '[', chars[hi - 1] == ']') {
        (true, true) if hi - lo >= 2 => {
            lo += 1;
            hi -= 1;
        }
        (true, _) => return Err(err(hi + 1, "missing closing ']'")),
        (false, true) => return Err(err(hi, "unexpected ']'")),
        _ => {}
    }

    let mut quotients = Vec::new();
    let mut start = lo;
    while start <= hi {
        let end = (start..hi).find(|&i| chars[i] == ',').unwrap_or(hi);
        let mut a = start;
        let mut b = end;
        while a < b && chars[a].is_whitespace() {
            a += 1;
        }
        while b > a && chars[b - 1].is_whitespace() {
            b -= 1;
        }
        if a == b {
            return Err(err(a + 1, "expected a positive integer"));
        }
        if let Some(bad) = (a..b).find(|&i| !chars[i].is_ascii_digit()) {
            return Err(err(
                bad + 1,
                format!("unexpected character '{}'", chars[bad]),
            ));
        }
        let digits: String = chars[a..b].iter().collect();
        let q: BigUint = digits.parse().expect("validated digits");
        if q == BigUint::from(0u32) {
            return Err(err(a + 1, "partial quotients must be positive"));
        }
        quotients.push(q);
        start = end + 1;
    }
    Ok(PeriodicCF::new(quotients).expect("validated block"))
}
