//! Wire formats.  Specs, extensions and norm subgroups each have one
//! canonical JSON shape; whatever the CLI emits for them is accepted
//! back through `--in`.

use std::collections::BTreeMap;

use quasilocal::{
    FieldSpec, FiniteExtension, NormSubgroup, PrimeComponent, Reality, VerificationReport,
};
use serde::{Deserialize, Serialize};

/// `{"pi1":[3],"pi2":[5],"level":{"3":1,"5":2}}`; level keys are
/// decimal prime strings.
#[derive(Serialize, Deserialize, Debug)]
pub struct SpecDto {
    pub pi1: Vec<u64>,
    pub pi2: Vec<u64>,
    pub level: BTreeMap<String, u32>,
}

impl SpecDto {
    pub fn of(spec: &FieldSpec) -> Self {
        SpecDto {
            pi1: spec.pi1().iter().copied().collect(),
            pi2: spec.pi2().iter().copied().collect(),
            level: spec.levels().iter().map(|(p, k)| (p.to_string(), *k)).collect(),
        }
    }

    pub fn to_spec(&self) -> Result<FieldSpec, String> {
        let mut levels = Vec::new();
        for (key, k) in &self.level {
            let p: u64 = key.parse().map_err(|_| format!("level key `{key}` is not a prime"))?;
            levels.push((p, *k));
        }
        FieldSpec::new(self.pi1.iter().copied(), self.pi2.iter().copied(), levels)
            .map_err(|e| e.to_string())
    }
}

/// One canonical component: `{"exp":1}` on rank-1 primes,
/// `{"a":1,"b":0,"c":0}` on rank-2 primes.
#[derive(Serialize, Deserialize, Clone, Copy, Debug)]
#[serde(untagged)]
pub enum ComponentDto {
    Plane { a: u32, b: u32, c: u64 },
    Line { exp: u32 },
}

impl ComponentDto {
    fn of(comp: &PrimeComponent) -> Self {
        match (comp.line_exp(), comp.plane_triple()) {
            (Some(exp), _) => ComponentDto::Line { exp },
            (_, Some((a, b, c))) => ComponentDto::Plane { a, b, c },
            _ => unreachable!("a component is a line or a plane"),
        }
    }

    fn to_component(self, prime: u64) -> PrimeComponent {
        match self {
            ComponentDto::Line { exp } => PrimeComponent::line(prime, exp),
            ComponentDto::Plane { a, b, c } => PrimeComponent::plane(prime, a, b, c),
        }
    }
}

fn parse_components(
    components: &BTreeMap<String, ComponentDto>,
) -> Result<Vec<PrimeComponent>, String> {
    let mut out = Vec::new();
    for (key, dto) in components {
        let p: u64 = key.parse().map_err(|_| format!("component key `{key}` is not a prime"))?;
        out.push(dto.to_component(p));
    }
    Ok(out)
}

/// `{"real":true,"components":{"3":{"exp":1},...}}`; an absent prime
/// key means the full component there.
#[derive(Serialize, Deserialize, Debug)]
pub struct ExtensionDto {
    pub real: bool,
    pub components: BTreeMap<String, ComponentDto>,
}

impl ExtensionDto {
    pub fn of(ext: &FiniteExtension) -> Self {
        ExtensionDto {
            real: ext.reality().is_real(),
            components: ext
                .components()
                .filter(|c| !c.is_full())
                .map(|c| (c.prime().to_string(), ComponentDto::of(c)))
                .collect(),
        }
    }

    pub fn to_extension(&self, spec: &FieldSpec) -> Result<FiniteExtension, String> {
        let reality = if self.real { Reality::Real } else { Reality::Nonreal };
        FiniteExtension::new(spec, reality, parse_components(&self.components)?)
            .map_err(|e| e.to_string())
    }
}

/// `{"two_part":2,"components":{"5":{"a":1,"b":0,"c":0}}}`; absent
/// pi2 primes are full.
#[derive(Serialize, Deserialize, Debug)]
pub struct NormDto {
    pub two_part: u8,
    pub components: BTreeMap<String, ComponentDto>,
}

impl NormDto {
    pub fn of(u: &NormSubgroup) -> Self {
        NormDto {
            two_part: u.two_part(),
            components: u
                .components()
                .filter(|c| !c.is_full())
                .map(|c| (c.prime().to_string(), ComponentDto::of(c)))
                .collect(),
        }
    }

    pub fn to_norm_subgroup(&self, spec: &FieldSpec) -> Result<NormSubgroup, String> {
        NormSubgroup::new(spec, self.two_part, parse_components(&self.components)?)
            .map_err(|e| e.to_string())
    }
}

/// Power-quotient structure report for one exponent.
#[derive(Serialize, Deserialize, Debug)]
pub struct PowerQuotientDto {
    #[serde(rename = "nE")]
    pub n_e: u64,
    #[serde(rename = "nE1")]
    pub n_e1: u64,
    pub shape: Vec<u64>,
    pub sql: bool,
}

/// Spec summary emitted by `describe` without an exponent.
#[derive(Serialize, Deserialize, Debug)]
pub struct FieldSummaryDto {
    pub pi1: Vec<u64>,
    pub pi2: Vec<u64>,
    pub level: BTreeMap<String, u32>,
    pub sql: bool,
}

/// Correspondence report for a norm query on an extension.
#[derive(Serialize, Deserialize, Debug)]
pub struct NormReportDto {
    pub input: ExtensionDto,
    pub norm_group: NormDto,
    pub index: u64,
    pub quotient_shape: Vec<u64>,
    pub class_field: ExtensionDto,
}

#[derive(Serialize, Deserialize, Debug)]
pub struct ViolationDto {
    pub instance: String,
    pub expected: String,
    pub actual: String,
}

/// `{"theorem":"THM_1_2_I","pass":true,"instances":1234,"violations":[],"elapsed_ms":7}`
#[derive(Serialize, Deserialize, Debug)]
pub struct ReportDto {
    pub theorem: String,
    pub pass: bool,
    pub instances: u64,
    pub violations: Vec<ViolationDto>,
    pub elapsed_ms: u64,
}

impl ReportDto {
    pub fn of(report: &VerificationReport) -> Self {
        ReportDto {
            theorem: report.theorem.id().to_string(),
            pass: report.pass(),
            instances: report.instances,
            violations: report
                .violations
                .iter()
                .map(|v| ViolationDto {
                    instance: v.instance.clone(),
                    expected: v.expected.clone(),
                    actual: v.actual.clone(),
                })
                .collect(),
            elapsed_ms: report.elapsed_ms,
        }
    }
}
