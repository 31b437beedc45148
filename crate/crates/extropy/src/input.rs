//! Plain-text numeric input: finite decimals separated by whitespace,
//! commas or newlines.

use std::fmt::Write as _;
use std::path::Path;

use sha2::{Digest, Sha256};

use crate::error::{AppError, AppResult};

/// Parses every token in `text`, reporting the 1-based line of the first bad
/// one. Blank input yields an empty vector.
pub fn parse_values(text: &str) -> AppResult<Vec<f64>> {
    let mut out = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        for token in line.split(|c: char| c == ',' || c.is_whitespace()).filter(|t| !t.is_empty()) {
            match token.parse::<f64>() {
                Ok(v) if v.is_finite() => out.push(v),
                _ => return Err(AppError::Parse { line: idx + 1, token: token.to_string() }),
            }
        }
    }
    Ok(out)
}

/// One value per line in shortest round-trip form.
pub fn emit_values(values: &[f64]) -> String {
    let mut s = String::with_capacity(values.len() * 8);
    for v in values {
        writeln!(s, "{v}").unwrap();
    }
    s
}

/// Hex SHA-256 of `text`.
pub fn digest(text: &str) -> String {
    hex::encode(Sha256::digest(text.as_bytes()))
}

pub fn read_values(path: &Path) -> AppResult<Vec<f64>> {
    let text = std::fs::read_to_string(path).map_err(|source| AppError::Read { path: path.to_path_buf(), source })?;
    parse_values(&text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn separators() {
        assert_eq!(parse_values("1 2,3\n4\t5,, 6\n\n").unwrap(), [1.0, 2.0, 3.0, 4.0, 5.0, 6.0]);
        assert_eq!(parse_values("-1.5e2\r\n+0.25").unwrap(), [-150.0, 0.25]);
        assert!(parse_values("  \n").unwrap().is_empty());
    }

    #[test]
    fn bad_tokens_carry_line_numbers() {
        match parse_values("1 2\n3 x4\n5") {
            Err(AppError::Parse { line, token }) => assert_eq!((line, token.as_str()), (2, "x4")),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_values("nan"), Err(AppError::Parse { line: 1, .. })));
        assert!(matches!(parse_values("1\ninf"), Err(AppError::Parse { line: 2, .. })));
    }

    #[test]
    fn digest_known_value() {
        assert_eq!(
            digest("abc"),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad"
        );
    }

    proptest! {
        #[test]
        fn round_trip(values in proptest::collection::vec(-1e300f64..1e300, 0..60)) {
            let text = emit_values(&values);
            let back = parse_values(&text).unwrap();
            prop_assert_eq!(&back, &values);
            prop_assert_eq!(emit_values(&back), text);
        }
    }
}
