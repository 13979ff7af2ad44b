//! Number formatting for CSV and report output.

/// Shortest decimal text that round-trips the value rounded to 12
/// significant digits. Zero prints as "0", the decimal separator is always
/// ".", and the magnitudes this tool emits never reach exponent notation.
pub fn sig12(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    let rounded: f64 = format!("{x:.11e}").parse().expect("formatted float parses back");
    format!("{rounded}")
}
