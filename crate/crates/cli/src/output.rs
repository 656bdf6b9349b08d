use std::io::Write;

use serde_json::{json, Map, Value};
use tangle_core::coeff::JsonCoeff;
use tangle_core::rational::format_q;
use tangle_core::{Coeff, Series};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// Everything a command produces, ready to be rendered in either format.
pub struct Report {
    command: &'static str,
    params: Map<String, Value>,
    /// Scalar series, the only thing CSV can carry.
    scalar: Vec<(String, Series)>,
    extra: Map<String, Value>,
}

impl Report {
    pub fn new(command: &'static str) -> Self {
        Report { command, params: Map::new(), scalar: Vec::new(), extra: Map::new() }
    }

    pub fn param(mut self, key: &str, v: impl Into<Value>) -> Self {
        self.params.insert(key.into(), v.into());
        self
    }

    pub fn series(&mut self, name: impl Into<String>, s: Series) {
        self.scalar.push((name.into(), s));
    }

    /// A series with non-scalar coefficients; JSON only.
    pub fn rich_series<C: Coeff + JsonCoeff>(&mut self, name: impl Into<String>, s: &Series<C>) {
        let entry = self.extra.entry("series").or_insert_with(|| json!({}));
        entry.as_object_mut().expect("object").insert(name.into(), s.to_json());
    }

    pub fn extra(&mut self, key: &str, v: Value) {
        self.extra.insert(key.into(), v);
    }

    pub fn to_json(&self) -> Value {
        let mut out = Map::new();
        out.insert("command".into(), json!(self.command));
        out.insert("params".into(), Value::Object(self.params.clone()));
        let mut extra = self.extra.clone();
        if !self.scalar.is_empty() {
            let series = extra.entry("series").or_insert_with(|| json!({}));
            for (name, s) in &self.scalar {
                series.as_object_mut().expect("object").insert(name.clone(), s.to_json());
            }
        }
        out.extend(extra);
        Value::Object(out)
    }

    pub fn write(&self, format: Format, w: &mut dyn Write) -> Result<(), String> {
        match format {
            Format::Json => {
                serde_json::to_writer_pretty(&mut *w, &self.to_json()).map_err(|e| e.to_string())?;
                writeln!(w).map_err(|e| e.to_string())
            }
            Format::Csv => self.write_csv(w),
        }
    }

    fn write_csv(&self, w: &mut dyn Write) -> Result<(), String> {
        if self.scalar.is_empty() {
            return Err(format!("{} has no scalar series to write as CSV (use --format json or a fixed tau)", self.command));
        }
        let rows = self.scalar.iter().map(|(_, s)| s.order()).max().unwrap_or(0);
        let mut out = csv::Writer::from_writer(w);
        let mut header = vec!["order".to_string()];
        header.extend(self.scalar.iter().map(|(n, _)| n.clone()));
        out.write_record(&header).map_err(|e| e.to_string())?;
        for p in 0..=rows {
            let mut rec = vec![p.to_string()];
            for (_, s) in &self.scalar {
                rec.push(if p <= s.order() { format_q(&s.coeff(p)) } else { String::new() });
            }
            out.write_record(&rec).map_err(|e| e.to_string())?;
        }
        out.flush().map_err(|e| e.to_string())
    }
}
