//! Table emission: full-precision CSV and the optional companion gnuplot
//! script. Everything here is deterministic — identical rows produce
//! byte-identical text.

/// Format a value with 17 significant digits, enough to round-trip f64.
pub fn fmt(v: f64) -> String {
    format!("{v:.16e}")
}

/// Optional cell: empty when the value is unavailable (e.g. variances at an
/// unstable point).
pub fn fmt_opt(v: Option<f64>) -> String {
    v.map(fmt).unwrap_or_default()
}

/// RFC-4180-style CSV with a header row, '.' decimal separator, and rows in
/// the order given. Panics if a row width disagrees with the header —
/// emission is always from rectangular data.
pub fn emit_csv(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("header write");
    for row in rows {
        assert_eq!(row.len(), header.len(), "ragged row in CSV emission");
        w.write_record(row).expect("row write");
    }
    String::from_utf8(w.into_inner().expect("csv flush")).expect("csv utf8")
}

/// A gnuplot script that plots `y_col` against `x_col` from `csv_path`, one
/// curve per distinct value of `series_col` (matched textually). Written
/// alongside the CSV for convenience; nothing in the calculator depends on
/// gnuplot.
pub fn gnuplot_script(
    csv_path: &str,
    x_col: usize,
    y_col: usize,
    series_col: usize,
    series_values: &[String],
    x_label: &str,
    y_label: &str,
) -> String {
    let mut s = String::new();
    s.push_str("set datafile separator ','\n");
    s.push_str(&format!("set xlabel '{x_label}'\n"));
    s.push_str(&format!("set ylabel '{y_label}'\n"));
    s.push_str("set key top right\n");
    let mut parts = Vec::new();
    for v in series_values {
        // gnuplot columns are 1-based; strcol filters rows of one series.
        parts.push(format!(
            "'{csv_path}' using (strcol({sc}) eq '{v}' ? column({xc}) : NaN):(column({yc})) with lines title '{v}'",
            sc = series_col + 1,
            xc = x_col + 1,
            yc = y_col + 1,
        ));
    }
    s.push_str("plot \\\n    ");
    s.push_str(&parts.join(", \\\n    "));
    s.push('\n');
    s
}
