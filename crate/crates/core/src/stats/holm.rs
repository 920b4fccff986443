//! Holm step-down adjustment for a family of p-values.

use crate::error::{Error, Result};

/// Holm-adjusted p-values, returned in input order.
///
/// With the raw values sorted ascending, the k-th adjusted value (1-based)
/// is `max_{j <= k} min(1, (m - j + 1) p_(j))`.
pub fn holm_adjust(p_values: &[f64]) -> Result<Vec<f64>> {
    if p_values.is_empty() {
        return Err(Error::Empty {
            what: "p-value family",
        });
    }
    if let Some(&bad) = p_values.iter().find(|p| !(0.0..=1.0).contains(*p)) {
        return Err(Error::InvalidConfig(format!(
            "p-value {bad} outside [0, 1]"
        )));
    }
    let m = p_values.len();
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&a, &b| p_values[a].total_cmp(&p_values[b]));

    let mut adjusted = vec![0.0; m];
    let mut running = 0.0f64;
    for (j, &idx) in order.iter().enumerate() {
        let scaled = ((m - j) as f64 * p_values[idx]).min(1.0);
        running = running.max(scaled);
        adjusted[idx] = running;
    }
    Ok(adjusted)
}
