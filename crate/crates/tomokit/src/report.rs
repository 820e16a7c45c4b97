//! Line-oriented `key=value` reports with locale-independent formatting.

use std::fmt::Write as _;

/// Format a float with 10 significant digits, shortest of fixed/scientific,
/// matching C's %.10g (trailing zeros stripped).
pub fn fmt_g(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let exp = x.abs().log10().floor() as i32;
    let s = if (-4..10).contains(&exp) {
        let decimals = (9 - exp).max(0) as usize;
        let mut s = format!("{x:.decimals$}");
        if s.contains('.') {
            while s.ends_with('0') {
                s.pop();
            }
            if s.ends_with('.') {
                s.pop();
            }
        }
        s
    } else {
        let mut s = format!("{x:.9e}");
        // trim trailing zeros in the mantissa: 1.200000000e-12 -> 1.2e-12
        if let Some(epos) = s.find('e') {
            let (mant, exp_part) = s.split_at(epos);
            let mut mant = mant.to_string();
            if mant.contains('.') {
                while mant.ends_with('0') {
                    mant.pop();
                }
                if mant.ends_with('.') {
                    mant.pop();
                }
            }
            s = format!("{mant}{exp_part}");
        }
        s
    };
    s
}

#[derive(Debug, Clone)]
pub enum Value {
    Float(f64),
    Int(i64),
    Bool(bool),
    Text(String),
}

impl Value {
    fn render(&self) -> String {
        match self {
            Value::Float(x) => fmt_g(*x),
            Value::Int(i) => i.to_string(),
            Value::Bool(b) => b.to_string(),
            Value::Text(s) => s.clone(),
        }
    }

    fn render_json(&self) -> String {
        match self {
            Value::Float(x) => {
                if x.is_finite() {
                    fmt_g(*x)
                } else {
                    "null".to_string()
                }
            }
            Value::Int(i) => i.to_string(),
            Value::Bool(b) => b.to_string(),
            Value::Text(s) => format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\"")),
        }
    }
}

/// Ordered list of report lines; each line is an ordered list of
/// `key=value` fields.
#[derive(Debug, Clone, Default)]
pub struct Report {
    lines: Vec<Vec<(String, Value)>>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn line(&mut self) -> ReportLine<'_> {
        self.lines.push(Vec::new());
        ReportLine {
            fields: self.lines.last_mut().unwrap(),
        }
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for line in &self.lines {
            let mut first = true;
            for (k, v) in line {
                if !first {
                    out.push(' ');
                }
                let _ = write!(out, "{}={}", k, v.render());
                first = false;
            }
            out.push('\n');
        }
        out
    }

    pub fn render_json(&self) -> String {
        let mut out = String::from("[\n");
        for (i, line) in self.lines.iter().enumerate() {
            out.push_str("  {");
            for (j, (k, v)) in line.iter().enumerate() {
                if j > 0 {
                    out.push_str(", ");
                }
                let _ = write!(out, "\"{}\": {}", k, v.render_json());
            }
            out.push('}');
            if i + 1 < self.lines.len() {
                out.push(',');
            }
            out.push('\n');
        }
        out.push(']');
        out.push('\n');
        out
    }
}

pub struct ReportLine<'a> {
    fields: &'a mut Vec<(String, Value)>,
}

impl ReportLine<'_> {
    pub fn float(self, key: &str, value: f64) -> Self {
        self.fields.push((key.to_string(), Value::Float(value)));
        self
    }

    pub fn int(self, key: &str, value: i64) -> Self {
        self.fields.push((key.to_string(), Value::Int(value)));
        self
    }

    pub fn bool(self, key: &str, value: bool) -> Self {
        self.fields.push((key.to_string(), Value::Bool(value)));
        self
    }

    pub fn text(self, key: &str, value: &str) -> Self {
        self.fields
            .push((key.to_string(), Value::Text(value.to_string())));
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_formatting_is_ten_significant_digits() {
        assert_eq!(fmt_g(0.0), "0");
        assert_eq!(fmt_g(1.0), "1");
        assert_eq!(fmt_g(0.5), "0.5");
        assert_eq!(fmt_g(-0.015625), "-0.015625");
        assert_eq!(fmt_g(std::f64::consts::PI), "3.141592654");
        assert_eq!(fmt_g(1.0e-12), "1e-12");
        assert_eq!(fmt_g(1.23456789012e10), "1.23456789e10");
        assert_eq!(fmt_g(6.626e-34), "6.626e-34");
    }

    #[test]
    fn report_renders_lines_and_json() {
        let mut r = Report::new();
        r.line()
            .text("kind", "demo")
            .float("value", 0.25)
            .bool("ok", true);
        r.line().int("n", 3);
        assert_eq!(r.render_text(), "kind=demo value=0.25 ok=true\nn=3\n");
        let json = r.render_json();
        assert!(json.contains("\"kind\": \"demo\""));
        assert!(json.contains("\"value\": 0.25"));
    }
}
