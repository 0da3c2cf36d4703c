//! Human-readable and JSON renderings of command results.

use framekit_core::io::{format_f64, to_canonical_json, ReportFile};
use framekit_core::{CVector, EquivalenceWitness, Result, C64};
use serde::Serialize;

pub fn complex(z: C64) -> String {
    format!("[{}, {}]", format_f64(z.re), format_f64(z.im))
}

fn list(values: &[f64]) -> String {
    let items: Vec<String> = values.iter().map(|&v| format_f64(v)).collect();
    format!("[{}]", items.join(", "))
}

pub fn report_text(report: &ReportFile) -> String {
    let tight = report
        .tight_constant
        .map_or_else(|| "none".to_string(), format_f64);
    format!(
        "classification: {}\n\
         rank: {}\n\
         lower_bound: {}\n\
         upper_bound: {}\n\
         tight_constant: {}\n\
         frame_operator_spectrum: {}\n\
         gram_spectrum: {}\n",
        report.classification,
        report.rank,
        format_f64(report.bounds.lower),
        format_f64(report.bounds.upper),
        tight,
        list(&report.frame_operator_spectrum),
        list(&report.gram_spectrum),
    )
}

#[derive(Serialize)]
struct ReconstructionJson {
    constant: f64,
    reconstruction: Vec<[f64; 2]>,
    error: f64,
    relative_error: f64,
}

pub struct Reconstruction {
    pub constant: f64,
    pub vector: CVector,
    pub error: f64,
    pub relative_error: f64,
}

impl Reconstruction {
    pub fn to_json(&self) -> Result<String> {
        to_canonical_json(&ReconstructionJson {
            constant: self.constant,
            reconstruction: self.vector.iter().map(|z| [z.re, z.im]).collect(),
            error: self.error,
            relative_error: self.relative_error,
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("constant: {}\nreconstruction:\n", format_f64(self.constant));
        for z in self.vector.iter() {
            out.push_str(&format!("  {}\n", complex(*z)));
        }
        out.push_str(&format!(
            "error: {}\nrelative_error: {}\n",
            format_f64(self.error),
            format_f64(self.relative_error)
        ));
        out
    }
}

#[derive(Serialize)]
struct WitnessJson {
    equivalent: bool,
    mapping: Option<Vec<[String; 2]>>,
    phases: Option<Vec<[f64; 2]>>,
}

/// A witness rendered against the labels of the two families.
pub struct LabelledWitness<'a> {
    pub witness: Option<&'a EquivalenceWitness>,
    pub labels_a: &'a [String],
    pub labels_b: &'a [String],
}

impl LabelledWitness<'_> {
    fn mapping(&self, w: &EquivalenceWitness) -> Vec<[String; 2]> {
        self.labels_a
            .iter()
            .enumerate()
            .map(|(s, label)| [label.clone(), self.labels_b[w.permutation.apply(s)].clone()])
            .collect()
    }

    pub fn to_json(&self) -> Result<String> {
        let body = match self.witness {
            Some(w) => WitnessJson {
                equivalent: true,
                mapping: Some(self.mapping(w)),
                phases: w
                    .phases
                    .as_ref()
                    .map(|ps| ps.iter().map(|z| [z.re, z.im]).collect()),
            },
            None => WitnessJson {
                equivalent: false,
                mapping: None,
                phases: None,
            },
        };
        to_canonical_json(&body)
    }

    pub fn to_text(&self) -> String {
        let Some(w) = self.witness else {
            return "none\n".to_string();
        };
        let mut out = String::from("witness:\n");
        for (s, [from, to]) in self.mapping(w).into_iter().enumerate() {
            match &w.phases {
                Some(_) => out.push_str(&format!(
                    "  {from} -> {to}  phase {}\n",
                    complex(w.phase(s))
                )),
                None => out.push_str(&format!("  {from} -> {to}\n")),
            }
        }
        out
    }
}
