//! Deterministic text rendering of sets and reports, shared by the CLI and
//! the golden-file tests.

/// Renders a sorted iterator of naturals as `[a, b, c]`, switching to
/// run-length compression (`[1-60, 64]`) once the set has more than 20
/// elements. Runs shorter than three elements stay expanded.
pub fn compress_set(values: impl IntoIterator<Item = u64>) -> String {
    let values: Vec<u64> = values.into_iter().collect();
    debug_assert!(
        values.windows(2).all(|w| w[0] < w[1]),
        "input must be sorted"
    );
    if values.is_empty() {
        return "[]".to_string();
    }
    if values.len() <= 20 {
        let parts: Vec<String> = values.iter().map(u64::to_string).collect();
        return format!("[{}]", parts.join(", "));
    }
    let mut parts: Vec<String> = Vec::new();
    let mut run_start = values[0];
    let mut run_end = values[0];
    let flush = |start: u64, end: u64, parts: &mut Vec<String>| {
        if end - start >= 2 {
            parts.push(format!("{start}-{end}"));
        } else {
            for v in start..=end {
                parts.push(v.to_string());
            }
        }
    };
    for &v in &values[1..] {
        if v == run_end + 1 {
            run_end = v;
        } else {
            flush(run_start, run_end, &mut parts);
            run_start = v;
            run_end = v;
        }
    }
    flush(run_start, run_end, &mut parts);
    format!("[{}]", parts.join(", "))
}
