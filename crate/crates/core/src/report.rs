//! Run reports and their text, JSON and CSV renderings.

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::{Map, Value};

use crate::bounds::{BoundCertificate, Fraction, TrichotomyFlags};
use crate::complex::{Complex, FVector};
use crate::field::FieldSpec;
use crate::homology::betti;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Text,
    Json,
    Csv,
}

impl std::str::FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "text" => Ok(OutputFormat::Text),
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            _ => Err(format!("unknown output format {s:?} (expected text, json or csv)")),
        }
    }
}

/// One command run on one complex. Fields that do not apply stay `null`.
#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    pub n: usize,
    pub k: Option<isize>,
    pub ell: Option<isize>,
    pub field: FieldSpec,
    pub f_vector: FVector,
    /// `tb_j` for `j = -1 ..= dim`.
    pub betti: Vec<u64>,
    pub lambda_km2: Option<u64>,
    pub lambda_km1: Option<u64>,
    #[serde(rename = "B")]
    pub b: Option<Fraction>,
    #[serde(rename = "F")]
    pub f: Option<Fraction>,
    pub eq1_holds: Option<bool>,
    pub eq5_holds: Option<bool>,
    pub eq6_holds: Option<bool>,
    pub eq8_holds: Option<bool>,
    pub trichotomy: Option<TrichotomyFlags>,
    pub seed: Option<u64>,
    pub elapsed_ms: u64,
    /// Command-specific details, written after the fixed keys.
    #[serde(flatten)]
    pub extra: Map<String, Value>,
}

impl RunReport {
    /// Report with the f-vector and every Betti number of `x` filled in.
    pub fn for_complex<C: Complex + ?Sized>(command: &str, x: &C, field: FieldSpec) -> Self {
        let dim = x.dim();
        let betti = if x.is_void() { Vec::new() } else { (-1..=dim).map(|j| betti(x, j, field)).collect() };
        let k = x.skeleton_k().map(|k| k as isize);
        RunReport {
            command: command.into(),
            n: x.n(),
            k,
            ell: None,
            field,
            f_vector: x.f_vector(),
            betti,
            lambda_km2: None,
            lambda_km1: None,
            b: None,
            f: None,
            eq1_holds: None,
            eq5_holds: None,
            eq6_holds: None,
            eq8_holds: None,
            trichotomy: None,
            seed: None,
            elapsed_ms: 0,
            extra: Map::new(),
        }
    }

    pub fn apply_certificate(&mut self, c: &BoundCertificate) {
        self.k = Some(c.k as isize);
        self.ell = Some(c.ell as isize);
        self.lambda_km2 = Some(c.lambda_km2);
        self.lambda_km1 = Some(c.lambda_km1);
        self.b = Some((&c.bound_b).into());
        self.f = Some((&c.bound_f).into());
        self.eq1_holds = Some(c.eq1_holds);
        self.eq5_holds = Some(c.eq5_holds);
        self.eq6_holds = Some(c.eq6_holds);
        self.eq8_holds = Some(c.eq8_holds);
        self.trichotomy = Some(c.trichotomy);
        if let Some(h) = c.corollary_holds {
            self.extra.insert("corollary_holds".into(), h.into());
        }
    }

    pub fn insert(&mut self, key: &str, value: impl Serialize) {
        let v = serde_json::to_value(value).expect("report values serialize");
        self.extra.insert(key.into(), v);
    }
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map_or_else(String::new, T::to_string)
}

fn join_u64(v: &[u64]) -> String {
    v.iter().map(u64::to_string).collect::<Vec<_>>().join(" ")
}

fn frac(f: &Option<Fraction>) -> String {
    match f {
        Some(Fraction { num, den }) if den == "1" => num.clone(),
        Some(Fraction { num, den }) => format!("{num}/{den}"),
        None => String::new(),
    }
}

const CSV_HEADER: [&str; 20] = [
    "command",
    "n",
    "k",
    "ell",
    "field",
    "f_vector",
    "betti",
    "lambda_km2",
    "lambda_km1",
    "B",
    "F",
    "eq1_holds",
    "eq5_holds",
    "eq6_holds",
    "eq8_holds",
    "trichotomy_a",
    "trichotomy_b",
    "trichotomy_c",
    "seed",
    "elapsed_ms",
];

fn csv_row(r: &RunReport) -> Vec<String> {
    vec![
        r.command.clone(),
        r.n.to_string(),
        opt(&r.k),
        opt(&r.ell),
        r.field.to_string(),
        join_u64(&r.f_vector.0),
        join_u64(&r.betti),
        opt(&r.lambda_km2),
        opt(&r.lambda_km1),
        frac(&r.b),
        frac(&r.f),
        opt(&r.eq1_holds),
        opt(&r.eq5_holds),
        opt(&r.eq6_holds),
        opt(&r.eq8_holds),
        opt(&r.trichotomy.map(|t| t.a)),
        opt(&r.trichotomy.map(|t| t.b)),
        opt(&r.trichotomy.map(|t| t.c)),
        opt(&r.seed),
        r.elapsed_ms.to_string(),
    ]
}

fn text(r: &RunReport, out: &mut String) {
    let _ = writeln!(out, "{}: n = {}{}{}, field {}", r.command, r.n, r.k.map_or_else(String::new, |k| format!(", k = {k}")), r.ell.map_or_else(String::new, |l| format!(", l = {l}")), r.field);
    let _ = writeln!(out, "  f-vector {}", r.f_vector);
    if !r.betti.is_empty() {
        let parts: Vec<String> = r.betti.iter().enumerate().map(|(i, b)| format!("tb_{} = {b}", i as isize - 1)).collect();
        let _ = writeln!(out, "  {}", parts.join(", "));
    }
    if let (Some(a), Some(b)) = (r.lambda_km2, r.lambda_km1) {
        let _ = writeln!(out, "  lambda(k-l-2) = {a}, lambda(k-l-1) = {b}");
    }
    if r.b.is_some() {
        let _ = writeln!(out, "  B = {}, F = {}", frac(&r.b), frac(&r.f));
    }
    for (name, v) in [("eq1", r.eq1_holds), ("eq5", r.eq5_holds), ("eq6", r.eq6_holds), ("eq8", r.eq8_holds)] {
        if let Some(v) = v {
            let _ = writeln!(out, "  {name} holds: {v}");
        }
    }
    if let Some(t) = r.trichotomy {
        let _ = writeln!(out, "  trichotomy: a = {}, b = {}, c = {}", t.a, t.b, t.c);
    }
    if let Some(s) = r.seed {
        let _ = writeln!(out, "  seed {s}");
    }
    for (key, v) in &r.extra {
        match v {
            Value::String(s) if s.contains('\n') => {
                let _ = writeln!(out, "  {key}:");
                for line in s.lines() {
                    let _ = writeln!(out, "    {line}");
                }
            }
            _ => {
                let _ = writeln!(out, "  {key}: {v}");
            }
        }
    }
    let _ = writeln!(out, "  elapsed {} ms", r.elapsed_ms);
}

/// Renders reports. JSON gives one object for a single report and an array otherwise.
pub fn emit_reports(reports: &[RunReport], format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => {
            let mut s = if reports.len() == 1 {
                serde_json::to_string_pretty(&reports[0])
            } else {
                serde_json::to_string_pretty(reports)
            }
            .expect("reports serialize");
            s.push('\n');
            s
        }
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(CSV_HEADER).expect("in-memory write");
            for r in reports {
                w.write_record(csv_row(r)).expect("in-memory write");
            }
            String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 fields")
        }
        OutputFormat::Text => {
            let mut out = String::new();
            for r in reports {
                text(r, &mut out);
            }
            out
        }
    }
}

pub fn emit_report(report: &RunReport, format: OutputFormat) -> String {
    emit_reports(std::slice::from_ref(report), format)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::verify_upper_bound;
    use crate::constructions::fano_complex;
    use crate::SkeletonComplex;

    #[test]
    fn json_key_order() {
        let x = fano_complex();
        let mut r = RunReport::for_complex("verify-bound", &x, FieldSpec::GF2);
        r.apply_certificate(&verify_upper_bound(&x, 1, FieldSpec::GF2).unwrap());
        let s = emit_report(&r, OutputFormat::Json);
        let keys = [
            "\"command\"", "\"n\"", "\"k\"", "\"ell\"", "\"field\"", "\"f_vector\"", "\"betti\"", "\"lambda_km2\"",
            "\"lambda_km1\"", "\"B\"", "\"F\"", "\"eq1_holds\"", "\"eq5_holds\"", "\"eq6_holds\"", "\"eq8_holds\"",
            "\"trichotomy\"", "\"seed\"", "\"elapsed_ms\"",
        ];
        let pos: Vec<usize> = keys.iter().map(|k| s.find(k).unwrap_or_else(|| panic!("{k} missing"))).collect();
        assert!(pos.windows(2).all(|w| w[0] < w[1]), "{s}");
        let v: Value = serde_json::from_str(&s).unwrap();
        assert_eq!(v["trichotomy"], serde_json::json!({"a": true, "b": true, "c": true}));
        assert_eq!(v["B"], serde_json::json!({"num": "8", "den": "1"}));
        assert_eq!(v["field"], "gf:2");
    }

    #[test]
    fn empty_top_betti() {
        let x = SkeletonComplex::skeleton_only(6, 2).unwrap();
        let r = RunReport::for_complex("betti", &x, FieldSpec::GF2);
        // tb_1 sits at index 2
        assert_eq!(r.betti[2], 10);
        assert_eq!(r.k, Some(2));
    }

    #[test]
    fn csv_has_one_row_per_report() {
        let x = fano_complex();
        let r = RunReport::for_complex("betti", &x, FieldSpec::Rational);
        let s = emit_reports(&[r.clone(), r], OutputFormat::Csv);
        assert_eq!(s.lines().count(), 3);
        assert!(s.lines().nth(1).unwrap().starts_with("betti,7,2,,q,7 21 7,0 0 8 0,"));
    }
}
