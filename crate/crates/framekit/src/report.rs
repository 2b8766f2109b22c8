//! Line-oriented `key: value` reports with a stable key order.

use std::fmt::Write as _;

use framekit_core::C64;

/// 12 significant digits, printed in the shortest form that still carries
/// them; scientific outside [1e-4, 1e12).
pub fn fmt_f64(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let rounded: f64 = format!("{x:.11e}").parse().unwrap_or(x);
    if rounded == 0.0 {
        return "0".into();
    }
    let mag = rounded.abs();
    if (1e-4..1e12).contains(&mag) {
        format!("{rounded}")
    } else {
        format!("{rounded:e}")
    }
}

pub fn fmt_c64(z: C64) -> String {
    format!("[{}, {}]", fmt_f64(z.re), fmt_f64(z.im))
}

pub fn fmt_list<T>(items: &[T], f: impl Fn(&T) -> String) -> String {
    let parts: Vec<String> = items.iter().map(f).collect();
    format!("[{}]", parts.join(", "))
}

#[derive(Debug, Default)]
pub struct Report {
    lines: Vec<(String, String)>,
}

impl Report {
    pub fn new(command: &str, theorem: &str) -> Report {
        let mut r = Report::default();
        r.text("command", command);
        r.text("theorem", theorem);
        r
    }

    pub fn text(&mut self, key: &str, value: impl Into<String>) -> &mut Report {
        self.lines.push((key.into(), value.into()));
        self
    }

    pub fn flag(&mut self, key: &str, value: bool) -> &mut Report {
        self.text(key, if value { "true" } else { "false" })
    }

    pub fn num(&mut self, key: &str, value: f64) -> &mut Report {
        self.text(key, fmt_f64(value))
    }

    pub fn int(&mut self, key: &str, value: usize) -> &mut Report {
        self.text(key, value.to_string())
    }

    pub fn cplx(&mut self, key: &str, value: C64) -> &mut Report {
        self.text(key, fmt_c64(value))
    }

    pub fn opt_flag(&mut self, key: &str, value: Option<bool>) -> &mut Report {
        match value {
            Some(v) => self.flag(key, v),
            None => self.text(key, "n/a"),
        }
    }

    pub fn opt_num(&mut self, key: &str, value: Option<f64>) -> &mut Report {
        match value {
            Some(v) => self.num(key, v),
            None => self.text(key, "n/a"),
        }
    }

    pub fn nums(&mut self, key: &str, values: &[f64]) -> &mut Report {
        self.text(key, fmt_list(values, |v| fmt_f64(*v)))
    }

    pub fn cvec(&mut self, key: &str, values: &[C64]) -> &mut Report {
        self.text(key, fmt_list(values, |z| fmt_c64(*z)))
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.lines {
            let _ = writeln!(out, "{k}: {v}");
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_format() {
        assert_eq!(fmt_f64(1.5), "1.5");
        assert_eq!(fmt_f64(4.5 + 1e-15), "4.5");
        assert_eq!(fmt_f64(1.0 / 3.0), "0.333333333333");
        assert_eq!(fmt_f64(-0.0), "0");
        assert_eq!(fmt_f64(1e-5), "1e-5");
        assert_eq!(fmt_f64(2.5e12), "2.5e12");
        assert_eq!(fmt_f64(123456.0), "123456");
        assert_eq!(fmt_f64(f64::NAN), "nan");
    }
}
