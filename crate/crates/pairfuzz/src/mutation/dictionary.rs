//! AFL-style dictionary files.
//!
//! One entry per line, `name="escaped bytes"`. Supported escapes are
//! `\xNN` and `\\`; blank lines and `#` comments are skipped. Empty values
//! are dropped so mutators can assume nonempty entries.

use crate::{Error, Result};

/// Parses dictionary text into raw entries.
pub fn parse_dictionary(text: &str) -> Result<Vec<Vec<u8>>> {
    let mut entries = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let open = line
            .find('"')
            .ok_or_else(|| Error::Config(format!("dictionary line {}: missing '\"'", lineno + 1)))?;
        let close = line
            .rfind('"')
            .filter(|c| *c > open)
            .ok_or_else(|| Error::Config(format!("dictionary line {}: unterminated value", lineno + 1)))?;
        let value = &line[open + 1..close];
        let bytes = unescape(value)
            .map_err(|e| Error::Config(format!("dictionary line {}: {e}", lineno + 1)))?;
        if !bytes.is_empty() {
            entries.push(bytes);
        }
    }
    Ok(entries)
}

fn unescape(value: &str) -> std::result::Result<Vec<u8>, String> {
    let mut out = Vec::with_capacity(value.len());
    let mut chars = value.bytes();
    while let Some(b) = chars.next() {
        if b != b'\\' {
            out.push(b);
            continue;
        }
        match chars.next() {
            Some(b'\\') => out.push(b'\\'),
            Some(b'x') => {
                let hi = chars.next().ok_or("truncated \\x escape")?;
                let lo = chars.next().ok_or("truncated \\x escape")?;
                let hex = [hi, lo];
                let s = std::str::from_utf8(&hex).map_err(|_| "bad \\x escape")?;
                let v = u8::from_str_radix(s, 16).map_err(|_| "bad \\x escape")?;
                out.push(v);
            }
            other => return Err(format!("unsupported escape {other:?}")),
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_escapes_and_skips_comments() {
        let text = "# comment\nmagic=\"CF\\x01\"\n\nkw=\"a\\\\b\"\n";
        let entries = parse_dictionary(text).unwrap();
        assert_eq!(entries, vec![vec![b'C', b'F', 0x01], vec![b'a', b'\\', b'b']]);
    }

    #[test]
    fn rejects_malformed_lines() {
        assert!(parse_dictionary("oops").is_err());
        assert!(parse_dictionary("x=\"abc").is_err());
        assert!(parse_dictionary("x=\"\\q\"").is_err());
        assert!(parse_dictionary("x=\"\\x2\"").is_err());
    }

    #[test]
    fn drops_empty_values() {
        assert!(parse_dictionary("e=\"\"\n").unwrap().is_empty());
    }
}
