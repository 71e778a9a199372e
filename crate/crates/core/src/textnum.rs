//! Lenient extraction of numbers from model replies.
//!
//! Judge backends answer in prose more often than in clean JSON; these
//! helpers pull the first plausible number out of a reply, or the first
//! number following a named key.

/// Parse the first decimal number in `text` (optional sign, optional
/// fractional part). Returns `None` when no digit exists.
pub fn first_number(text: &str) -> Option<f64> {
    let bytes = text.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        if bytes[i].is_ascii_digit() {
            let mut start = i;
            // pick up a directly attached sign
            if start > 0 && (bytes[start - 1] == b'-' || bytes[start - 1] == b'+') {
                start -= 1;
            }
            let mut end = i;
            let mut seen_dot = false;
            while end < bytes.len() {
                let b = bytes[end];
                if b.is_ascii_digit() {
                    end += 1;
                } else if b == b'.' && !seen_dot && end + 1 < bytes.len() && bytes[end + 1].is_ascii_digit() {
                    seen_dot = true;
                    end += 1;
                } else {
                    break;
                }
            }
            return text[start..end].parse().ok();
        }
        i += 1;
    }
    None
}

/// Find the first of `keys` (case-insensitive) in `text` and parse the
/// first number after it. Keys should be ordered most-specific first.
pub fn number_after_key(text: &str, keys: &[&str]) -> Option<f64> {
    let lower = text.to_lowercase();
    for key in keys {
        if let Some(pos) = lower.find(&key.to_lowercase()) {
            let tail = &text[pos + key.len()..];
            if let Some(value) = first_number(tail) {
                return Some(value);
            }
        }
    }
    None
}

pub fn clamp(value: f64, lo: f64, hi: f64) -> f64 {
    value.max(lo).min(hi)
}
