//! Small numeric helpers shared across modules.

/// Kahan compensated accumulator for long sums of small terms.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct KahanSum {
    sum: f64,
    comp: f64,
}

impl KahanSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, value: f64) {
        let y = value - self.comp;
        let t = self.sum + y;
        self.comp = (t - self.sum) - y;
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum
    }
}

/// Format a float with 17 significant digits so that parsing the text
/// back yields the identical f64 bit pattern.
pub fn fmt_g17(x: f64) -> String {
    format!("{:.16e}", x)
}

/// Parse a float previously written by [`fmt_g17`] (or any decimal float).
pub fn parse_f64(text: &str) -> Option<f64> {
    text.trim().parse::<f64>().ok()
}
