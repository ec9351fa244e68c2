//! Number formatting and CSV assembly.

/// Shortest `%.12g`-style rendering: 12 significant digits, trailing zeros
/// dropped, `.` as decimal point, exponent form outside `[1e-5, 1e12)`.
pub fn fmt_g12(v: f64) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    if !v.is_finite() {
        return if v.is_nan() { "nan".into() } else if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let sci = format!("{v:.11e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..12).contains(&exp) {
        let decimals = (11 - exp) as usize;
        trim_zeros(&format!("{v:.decimals$}"))
    } else {
        format!("{}e{exp}", trim_zeros(mantissa))
    }
}

fn trim_zeros(s: &str) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s.to_string()
    }
}

/// Wide CSV: first column `y`, then one column per header entry.
pub fn csv_table(headers: &[String], ys: &[f64], columns: &[Vec<f64>]) -> String {
    let mut out = String::from("y");
    for h in headers {
        out.push(',');
        out.push_str(h);
    }
    out.push('\n');
    for (i, y) in ys.iter().enumerate() {
        out.push_str(&fmt_g12(*y));
        for c in columns {
            out.push(',');
            out.push_str(&fmt_g12(c[i]));
        }
        out.push('\n');
    }
    out
}
