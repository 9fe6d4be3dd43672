//! Plain-text renderings shared by the CSV exporters.

/// Decimal rendering with 15 significant digits (no exponent).
pub fn format_significant(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    // The exponent of the rounded scientific form fixes the decimal position.
    let sci = format!("{x:.14e}");
    let exponent: i32 = sci[sci.find('e').unwrap() + 1..].parse().unwrap();
    let decimals = (14 - exponent).max(0) as usize;
    format!("{x:.decimals$}")
}

/// A row that can be written as one CSV record under a fixed header.
pub trait CsvRecord {
    fn header() -> &'static [&'static str];
    fn record(&self) -> Vec<String>;
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fifteen_significant_digits() {
        assert_eq!(format_significant(0.0), "0");
        assert_eq!(format_significant(1.0), "1.00000000000000");
        assert_eq!(format_significant(101321.18364233), "101321.183642330");
        assert_eq!(format_significant(-2.5), "-2.50000000000000");
        assert_eq!(format_significant(0.00125), "0.00125000000000000");
        assert_eq!(format_significant(1.0e17), "100000000000000000");
    }
}
