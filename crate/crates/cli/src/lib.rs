//! Library side of the `dqsim` command: descriptors, experiment runs,
//! census rendering and the reproduction check registry.

pub mod checks;
pub mod descriptor;
pub mod run;

use std::fmt::Write as _;

use dqsim::discrete::{bloch_census, phase_group};
use dqsim::{BlochCensus, DiscreteError, FieldError, FieldSpec};
use serde::Serialize;

pub use descriptor::{Algorithm, DescriptorError, ExperimentDescriptor, Generator, OutputFormat};
pub use run::{render, run, ExperimentResult, RunError};

/// Summary printed by `dqsim field-info`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FieldInfo {
    pub field: String,
    pub p: u64,
    pub degree: u8,
    pub elements: u64,
    /// Order of the norm-1 group of `F_{p^2}`, when that field exists.
    pub phases: Option<usize>,
    pub degree2_admissible: bool,
}

pub fn field_info(p: u64, degree: u64) -> Result<FieldInfo, FieldError> {
    let field = FieldSpec::new(p, degree)?;
    let quadratic = FieldSpec::quadratic(p).ok();
    let phases = quadratic.and_then(|q| phase_group(q).ok()).map(|g| g.order());
    Ok(FieldInfo {
        field: field.to_string(),
        p,
        degree: field.degree(),
        elements: field.order(),
        phases,
        degree2_admissible: quadratic.is_some(),
    })
}

impl FieldInfo {
    pub fn render(&self, format: Option<OutputFormat>) -> String {
        let phases = self.phases.map_or("-".to_string(), |n| n.to_string());
        match format {
            None => {
                let admissible = if self.degree2_admissible { "yes" } else { "no" };
                format!(
                    "field: {}\nelements: {}\nphases: {phases}\ndegree-2 admissible: {admissible}\n",
                    self.field, self.elements
                )
            }
            Some(OutputFormat::Json) => serde_json::to_string_pretty(self).expect("serializes") + "\n",
            Some(OutputFormat::Csv) => format!(
                "p,degree,elements,phases,degree2_admissible\n{},{},{},{},{}\n",
                self.p, self.degree, self.elements, phases, self.degree2_admissible
            ),
        }
    }
}

pub fn census(p: u64) -> Result<BlochCensus, DiscreteError> {
    bloch_census(p)
}

pub fn census_summary(c: &BlochCensus) -> String {
    format!(
        "p={} unit_vectors={} classes={} phases={}",
        c.p, c.unit_vectors, c.classes, c.phases
    )
}

/// JSON, or one CSV row per class representative `a|0> + b|1>`.
pub fn render_census(c: &BlochCensus, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => serde_json::to_string_pretty(c).expect("serializes") + "\n",
        OutputFormat::Csv => {
            let mut s = String::from("class,a_re,a_im,b_re,b_im\n");
            for (k, rep) in c.class_reps.iter().enumerate() {
                let e = rep.vector().entries();
                let (ar, ai) = e[0].symmetric();
                let (br, bi) = e[1].symmetric();
                let _ = writeln!(s, "{k},{ar},{ai},{br},{bi}");
            }
            s
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_info_examples() {
        let f9 = field_info(3, 2).unwrap();
        assert_eq!((f9.elements, f9.phases), (9, Some(4)));
        assert!(matches!(field_info(5, 2), Err(FieldError::BadResidue(5))));
        let f2 = field_info(2, 1).unwrap();
        assert_eq!((f2.elements, f2.phases, f2.degree2_admissible), (2, None, false));
    }

    #[test]
    fn census_csv_has_a_row_per_class() {
        let c = census(3).unwrap();
        let csv = render_census(&c, OutputFormat::Csv);
        assert_eq!(csv.lines().count(), 1 + 6);
        assert_eq!(census_summary(&c), "p=3 unit_vectors=24 classes=6 phases=4");
    }
}
