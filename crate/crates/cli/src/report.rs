//! Deterministic number formatting and CSV assembly.
//!
//! Every number in summaries and CSV files goes through [`fmt_g9`]: nine
//! significant digits, trailing zeros stripped, exponent notation only for
//! very small or very large magnitudes. Identical inputs therefore produce
//! byte-identical files.

/// Significant digits carried by [`fmt_g9`].
const DIGITS: usize = 9;

/// Format with nine significant digits, `%g`-style.
pub fn fmt_g9(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if x.is_nan() {
        return "nan".to_string();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf" } else { "-inf" }.to_string();
    }
    let sci = format!("{:.*e}", DIGITS - 1, x);
    let (mantissa, exponent) = sci.split_once('e').expect("float formatting yields an exponent");
    let exponent: i32 = exponent.parse().expect("exponent is an integer");
    if exponent < -4 || exponent >= DIGITS as i32 {
        let mantissa = mantissa.trim_end_matches('0').trim_end_matches('.');
        format!("{mantissa}e{exponent}")
    } else {
        let decimals = (DIGITS as i32 - 1 - exponent).max(0) as usize;
        let fixed = format!("{x:.decimals$}");
        if fixed.contains('.') {
            fixed.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            fixed
        }
    }
}

/// A CSV document buffered in memory and written in one pass.
pub struct Csv {
    buffer: String,
    columns: usize,
}

impl Csv {
    pub fn new(header: &[&str]) -> Self {
        let mut csv = Csv { buffer: String::new(), columns: header.len() };
        csv.buffer.push_str(&header.join(","));
        csv.buffer.push('\n');
        csv
    }

    /// Append a row of already-formatted cells. Commas and line breaks inside
    /// cells are replaced to keep the file grid-shaped.
    pub fn row(&mut self, cells: &[String]) {
        assert_eq!(cells.len(), self.columns, "row width must match the header");
        for (i, cell) in cells.iter().enumerate() {
            if i > 0 {
                self.buffer.push(',');
            }
            if cell.contains(',') || cell.contains('\n') {
                self.buffer.push_str(&cell.replace([',', '\n'], ";"));
            } else {
                self.buffer.push_str(cell);
            }
        }
        self.buffer.push('\n');
    }

    pub fn into_string(self) -> String {
        self.buffer
    }
}
