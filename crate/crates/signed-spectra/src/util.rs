//! Small shared helpers.

/// Round to 12 significant digits. All floats destined for serialized
/// reports pass through this so repeated runs produce identical bytes.
pub fn round_sig(x: f64) -> f64 {
    round_sig_digits(x, 12)
}

pub fn round_sig_digits(x: f64, digits: u32) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    let formatted = format!("{:.*e}", digits as usize - 1, x);
    formatted.parse().expect("formatted float parses back")
}
