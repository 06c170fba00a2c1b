//! JSON configuration schema: generator spec trees, CI combinators, and
//! packing. Unknown fields are rejected everywhere, and every numeric
//! parameter is validated before any generation happens.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bitstream::{BitOrder, PackingSpec};
use crate::ci::{MixedXorCi, MultipleXorCi, NewCi, OldCi, XorCi};
use crate::generators::{defaults, Generator, GeneratorError, GeneratorSpec};
use crate::WordSource;

pub type BoxedSource = Box<dyn WordSource + Send>;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("config parse error: {0}")]
    Parse(String),
    #[error("invalid config: {0}")]
    Invalid(String),
    #[error(transparent)]
    Generator(#[from] GeneratorError),
}

fn invalid(msg: impl Into<String>) -> ConfigError {
    ConfigError::Invalid(msg.into())
}

/// Names accepted in the `family` field. The combined shorthands expand to
/// the documented xor-combination presets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Lcg,
    Mrg,
    Awc,
    Swb,
    Swc,
    Gfsr,
    Inv,
    Combined,
    Lcg2,
    Lcg3,
    Mrg2,
}

/// Multiplier field: a single integer (LCG) or an array (MRG, SWC).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Multipliers {
    One(i64),
    Many(Vec<i64>),
}

/// One generator node of the spec tree:
/// `{"family": "lcg", "a": 16807, "c": 0, "m": 2147483647, "seed": [1]}`.
/// Parameters omitted fall back to the family's documented defaults;
/// parameters that do not belong to the family are rejected.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct GeneratorConfig {
    pub family: Family,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a: Option<Multipliers>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub w: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a1: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a2: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub components: Option<Vec<GeneratorConfig>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed_from: Option<u64>,
}

impl GeneratorConfig {
    /// Bare config for a family, defaults everywhere; seed still required
    /// before building.
    pub fn bare(family: Family) -> Self {
        GeneratorConfig {
            family,
            a: None,
            c: None,
            m: None,
            r: None,
            s: None,
            k: None,
            w: None,
            a1: None,
            a2: None,
            components: None,
            seed: None,
            seed_from: None,
        }
    }

    pub fn with_seed(mut self, seed: Vec<u64>) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn with_seed_from(mut self, seed: u64) -> Self {
        self.seed_from = Some(seed);
        self
    }

    /// Resolve to a concrete spec, applying family defaults and rejecting
    /// fields that do not belong to the family.
    pub fn to_spec(&self) -> Result<GeneratorSpec, ConfigError> {
        let fam = self.family;
        self.check_fields()?;
        let spec = match fam {
            Family::Lcg => {
                let m = self.m.unwrap_or(defaults::M31);
                GeneratorSpec::Lcg {
                    a: self.single_a()?.unwrap_or(16807),
                    c: self.c.unwrap_or(0),
                    m,
                }
            }
            Family::Mrg => {
                let m = self.m.unwrap_or(defaults::M31);
                match self.many_a(m)? {
                    Some(a) => GeneratorSpec::Mrg { a, m },
                    None => match defaults::mrg5() {
                        GeneratorSpec::Mrg { a, .. } => GeneratorSpec::Mrg { a, m },
                        _ => unreachable!(),
                    },
                }
            }
            Family::Awc => GeneratorSpec::Awc {
                m: self.m.unwrap_or(1 << 32),
                r: self.r.unwrap_or(24),
                s: self.s.unwrap_or(10),
            },
            Family::Swb => GeneratorSpec::Swb {
                m: self.m.unwrap_or(1 << 32),
                r: self.r.unwrap_or(24),
                s: self.s.unwrap_or(10),
            },
            Family::Swc => {
                let w = self.w.unwrap_or(32);
                let a = match self.many_a(u64::MAX)? {
                    Some(a) => a,
                    None => vec![1 << 13, 1 << 17],
                };
                GeneratorSpec::Swc { w, a }
            }
            Family::Gfsr => GeneratorSpec::Gfsr {
                r: self.r.unwrap_or(250),
                k: self.k.unwrap_or(103),
                w: self.w.unwrap_or(32),
            },
            Family::Inv => GeneratorSpec::Inv {
                a1: self.a1.unwrap_or(1),
                a2: self.a2.unwrap_or(1),
                m: self.m.unwrap_or(defaults::M31),
            },
            Family::Combined => {
                let components = self
                    .components
                    .as_ref()
                    .ok_or_else(|| invalid("combined family requires `components`"))?;
                let subs = components
                    .iter()
                    .map(|c| {
                        if c.seed.is_some() || c.seed_from.is_some() {
                            return Err(invalid(
                                "seeds go on the top-level generator, not on components",
                            ));
                        }
                        c.to_spec()
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                GeneratorSpec::Combined(subs)
            }
            Family::Lcg2 => defaults::lcg2(),
            Family::Lcg3 => defaults::lcg3(),
            Family::Mrg2 => defaults::mrg2(),
        };
        spec.validate()?;
        Ok(spec)
    }

    /// Build the seeded generator.
    pub fn build(&self) -> Result<Generator, ConfigError> {
        let spec = self.to_spec()?;
        match (&self.seed, self.seed_from) {
            (Some(seed), None) => Ok(Generator::new(spec, seed)?),
            (None, Some(seed)) => Ok(Generator::from_single_seed(spec, seed)?),
            (None, None) => Err(invalid("generator needs `seed` or `seed_from`")),
            (Some(_), Some(_)) => Err(invalid("give `seed` or `seed_from`, not both")),
        }
    }

    fn single_a(&self) -> Result<Option<u64>, ConfigError> {
        match &self.a {
            None => Ok(None),
            Some(Multipliers::One(v)) if *v > 0 => Ok(Some(*v as u64)),
            Some(Multipliers::One(v)) => Err(invalid(format!("multiplier a={v} must be positive"))),
            Some(Multipliers::Many(_)) => {
                Err(invalid("this family takes a single multiplier `a`"))
            }
        }
    }

    fn many_a(&self, m: u64) -> Result<Option<Vec<u64>>, ConfigError> {
        match &self.a {
            None => Ok(None),
            Some(Multipliers::Many(vs)) => {
                let reduced = vs
                    .iter()
                    .map(|&v| reduce_signed(v, m))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(Some(reduced))
            }
            Some(Multipliers::One(_)) => {
                Err(invalid("this family takes an array of multipliers `a`"))
            }
        }
    }

    fn check_fields(&self) -> Result<(), ConfigError> {
        let allowed: &[&str] = match self.family {
            Family::Lcg => &["a", "c", "m"],
            Family::Mrg => &["a", "m"],
            Family::Awc | Family::Swb => &["m", "r", "s"],
            Family::Swc => &["a", "w"],
            Family::Gfsr => &["r", "k", "w"],
            Family::Inv => &["a1", "a2", "m"],
            Family::Combined => &["components"],
            Family::Lcg2 | Family::Lcg3 | Family::Mrg2 => &[],
        };
        let present: Vec<(&str, bool)> = vec![
            ("a", self.a.is_some()),
            ("c", self.c.is_some()),
            ("m", self.m.is_some()),
            ("r", self.r.is_some()),
            ("s", self.s.is_some()),
            ("k", self.k.is_some()),
            ("w", self.w.is_some()),
            ("a1", self.a1.is_some()),
            ("a2", self.a2.is_some()),
            ("components", self.components.is_some()),
        ];
        for (name, is_set) in present {
            if is_set && !allowed.contains(&name) {
                return Err(invalid(format!(
                    "field `{name}` does not apply to family {:?}",
                    self.family
                )));
            }
        }
        Ok(())
    }
}

fn reduce_signed(v: i64, m: u64) -> Result<u64, ConfigError> {
    if m == u64::MAX {
        // SWC coefficients: plain non-negative check, no modulus.
        return u64::try_from(v).map_err(|_| invalid("coefficients must be non-negative"));
    }
    let m_i = m as i128;
    Ok((((v as i128 % m_i) + m_i) % m_i) as u64)
}

/// Which CI construction to wrap around the inputs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CiKind {
    Old,
    New,
    Xor,
    MixedXor,
    MultipleXor,
}

/// Combinator node:
/// `{"ci": "new", "prng1": {...}, "prng2": {...}}`, with `power` for
/// multiple_xor and an optional initial state `x0` (default 0).
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct CombinatorConfig {
    pub ci: CiKind,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub power: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x0: Option<u64>,
    pub prng1: GeneratorConfig,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub prng2: Option<GeneratorConfig>,
}

impl CombinatorConfig {
    pub fn build(&self) -> Result<BoxedSource, ConfigError> {
        let x0 = self.x0.unwrap_or(0);
        let needs_two = matches!(self.ci, CiKind::Old | CiKind::New | CiKind::MixedXor);
        if needs_two && self.prng2.is_none() {
            return Err(invalid(format!("{:?} requires `prng2`", self.ci)));
        }
        if !needs_two && self.prng2.is_some() {
            return Err(invalid(format!("{:?} takes a single input `prng1`", self.ci)));
        }
        if self.power.is_some() && self.ci != CiKind::MultipleXor {
            return Err(invalid("`power` only applies to multiple_xor"));
        }
        let prng1 = self.prng1.build()?;
        Ok(match self.ci {
            CiKind::Old => {
                let prng2 = self.prng2.as_ref().unwrap().build()?;
                Box::new(OldCi::new(x0 as u8, prng1, prng2))
            }
            CiKind::New => {
                let prng2 = self.prng2.as_ref().unwrap().build()?;
                Box::new(NewCi::new(x0 as u32, prng1, prng2))
            }
            CiKind::Xor => Box::new(XorCi::new(x0 as u32, prng1)),
            CiKind::MixedXor => {
                let prng2 = self.prng2.as_ref().unwrap().build()?;
                Box::new(MixedXorCi::new(x0 as u32, prng1, prng2))
            }
            CiKind::MultipleXor => {
                let power = self
                    .power
                    .ok_or_else(|| invalid("multiple_xor requires `power`"))?;
                Box::new(
                    MultipleXorCi::new(x0 as u32, power, prng1)
                        .map_err(|e| invalid(e.to_string()))?,
                )
            }
        })
    }
}

/// A source: either a plain generator or a CI combinator over generators.
#[derive(Debug, Clone, Serialize, PartialEq)]
#[serde(untagged)]
#[allow(clippy::large_enum_variant)]
pub enum SourceConfig {
    Generator(GeneratorConfig),
    Combinator(CombinatorConfig),
}

impl SourceConfig {
    pub fn from_json(json: &str) -> Result<Self, ConfigError> {
        let value: serde_json::Value =
            serde_json::from_str(json).map_err(|e| ConfigError::Parse(e.to_string()))?;
        Self::from_value(value)
    }

    pub fn from_value(value: serde_json::Value) -> Result<Self, ConfigError> {
        let obj = value
            .as_object()
            .ok_or_else(|| invalid("source must be a JSON object"))?;
        if obj.contains_key("ci") {
            let c: CombinatorConfig =
                serde_json::from_value(value.clone()).map_err(|e| ConfigError::Parse(e.to_string()))?;
            Ok(SourceConfig::Combinator(c))
        } else if obj.contains_key("family") {
            let g: GeneratorConfig =
                serde_json::from_value(value.clone()).map_err(|e| ConfigError::Parse(e.to_string()))?;
            Ok(SourceConfig::Generator(g))
        } else {
            Err(invalid(
                "source must name a generator `family` or a `ci` combinator",
            ))
        }
    }

    pub fn build(&self) -> Result<BoxedSource, ConfigError> {
        match self {
            SourceConfig::Generator(g) => Ok(Box::new(g.build()?)),
            SourceConfig::Combinator(c) => c.build(),
        }
    }

    /// The scan knob: same config with the functional power replaced.
    pub fn with_power(&self, power: usize) -> Result<SourceConfig, ConfigError> {
        match self {
            SourceConfig::Combinator(c) if c.ci == CiKind::MultipleXor => {
                let mut c = c.clone();
                c.power = Some(power);
                Ok(SourceConfig::Combinator(c))
            }
            _ => Err(invalid("power scans need a multiple_xor combinator source")),
        }
    }
}

impl<'de> Deserialize<'de> for SourceConfig {
    fn deserialize<D>(deserializer: D) -> Result<Self, D::Error>
    where
        D: serde::Deserializer<'de>,
    {
        let value = serde_json::Value::deserialize(deserializer)?;
        SourceConfig::from_value(value).map_err(serde::de::Error::custom)
    }
}

/// Packing selection: the string presets `"default"` / `"natural"`, or an
/// explicit `{"width": .., "bit_order": "msb_first"|"lsb_first",
/// "zero_extend": ..}` object.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum PackingConfig {
    Preset(String),
    Explicit {
        width: u32,
        #[serde(skip_serializing_if = "Option::is_none")]
        bit_order: Option<BitOrder>,
        #[serde(skip_serializing_if = "Option::is_none")]
        zero_extend: Option<bool>,
    },
}

impl PackingConfig {
    pub fn resolve(&self, source_width: u32) -> Result<PackingSpec, ConfigError> {
        match self {
            PackingConfig::Preset(name) => match name.as_str() {
                "default" => Ok(PackingSpec::default_for(source_width)),
                "natural" => Ok(PackingSpec::natural_for(source_width)),
                other => Err(invalid(format!(
                    "unknown packing preset `{other}` (expected `default` or `natural`)"
                ))),
            },
            PackingConfig::Explicit { width, bit_order, zero_extend } => {
                let order = bit_order.unwrap_or(if *width < 8 {
                    BitOrder::LsbFirst
                } else {
                    BitOrder::MsbFirst
                });
                let spec = PackingSpec::new(*width, order, zero_extend.unwrap_or(false));
                spec.validate_against(source_width)
                    .map_err(|e| invalid(e.to_string()))?;
                Ok(spec)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_lcg_config_uses_minstd_defaults() {
        let cfg = SourceConfig::from_json(r#"{"family": "lcg", "seed": [1]}"#).unwrap();
        let mut src = cfg.build().unwrap();
        assert_eq!(src.width(), 31);
        assert_eq!(src.next_word(), 16807);
    }

    #[test]
    fn explicit_lcg_parameters() {
        let cfg = SourceConfig::from_json(
            r#"{"family": "lcg", "a": 3, "c": 0, "m": 7, "seed": [1]}"#,
        )
        .unwrap();
        let mut src = cfg.build().unwrap();
        let orbit: Vec<u64> = (0..6).map(|_| src.next_word()).collect();
        assert_eq!(orbit, vec![3, 2, 6, 4, 5, 1]);
    }

    #[test]
    fn unknown_field_is_rejected_by_name() {
        let err = SourceConfig::from_json(r#"{"family": "lcg", "alpha": 3, "seed": [1]}"#)
            .unwrap_err();
        assert!(err.to_string().contains("alpha"), "{err}");
    }

    #[test]
    fn bad_family_name_is_rejected_by_name() {
        let err = SourceConfig::from_json(r#"{"family": "mt19937", "seed": [1]}"#).unwrap_err();
        assert!(err.to_string().contains("mt19937"), "{err}");
    }

    #[test]
    fn family_field_mismatch_rejected() {
        let err = SourceConfig::from_json(r#"{"family": "gfsr", "c": 1, "seed_from": 5}"#)
            .unwrap()
            .build()
            .err()
            .expect("gfsr with an lcg increment should fail")
            .to_string();
        assert!(err.contains("`c`"), "{err}");
    }

    #[test]
    fn missing_seed_rejected() {
        let cfg = SourceConfig::from_json(r#"{"family": "lcg"}"#).unwrap();
        assert!(cfg.build().is_err());
    }

    #[test]
    fn combined_config_nests_components() {
        let cfg = SourceConfig::from_json(
            r#"{
                "family": "combined",
                "components": [
                    {"family": "lcg", "a": 45991, "m": 2147483647},
                    {"family": "lcg", "a": 207707, "m": 2147483543}
                ],
                "seed": [99]
            }"#,
        )
        .unwrap();
        let mut src = cfg.build().unwrap();
        let preset = GeneratorConfig::bare(Family::Lcg2).with_seed(vec![99]);
        let mut expect = preset.build().unwrap();
        for _ in 0..100 {
            assert_eq!(src.next_word(), expect.next_word());
        }
    }

    #[test]
    fn combinator_config_builds() {
        let cfg = SourceConfig::from_json(
            r#"{
                "ci": "new",
                "prng1": {"family": "lcg", "seed": [1]},
                "prng2": {"family": "lcg", "seed": [123456789]}
            }"#,
        )
        .unwrap();
        let mut src = cfg.build().unwrap();
        assert_eq!(src.width(), 32);
        src.next_word();
    }

    #[test]
    fn combinator_arity_checked() {
        let err = SourceConfig::from_json(
            r#"{"ci": "xor", "prng1": {"family": "lcg", "seed": [1]},
                "prng2": {"family": "lcg", "seed": [2]}}"#,
        )
        .unwrap()
        .build()
        .err()
        .expect("xor with two inputs should fail");
        assert!(err.to_string().contains("single input"), "{err}");

        let err = SourceConfig::from_json(
            r#"{"ci": "multiple_xor", "prng1": {"family": "gfsr", "seed_from": 3}}"#,
        )
        .unwrap()
        .build()
        .err()
        .expect("multiple_xor without power should fail");
        assert!(err.to_string().contains("power"), "{err}");
    }

    #[test]
    fn power_scan_rewrites_only_multiple_xor() {
        let cfg = SourceConfig::from_json(
            r#"{"ci": "multiple_xor", "power": 1, "prng1": {"family": "lcg", "seed": [7]}}"#,
        )
        .unwrap();
        let scanned = cfg.with_power(5).unwrap();
        match scanned {
            SourceConfig::Combinator(c) => assert_eq!(c.power, Some(5)),
            _ => panic!(),
        }
        let gen_cfg = SourceConfig::from_json(r#"{"family": "lcg", "seed": [1]}"#).unwrap();
        assert!(gen_cfg.with_power(3).is_err());
    }

    #[test]
    fn packing_presets_resolve() {
        let p = PackingConfig::Preset("default".into()).resolve(31).unwrap();
        assert_eq!(p.width, 32);
        assert!(p.zero_extend);
        let p = PackingConfig::Preset("natural".into()).resolve(31).unwrap();
        assert_eq!(p.width, 31);
        let err = PackingConfig::Preset("tight".into()).resolve(31).unwrap_err();
        assert!(err.to_string().contains("tight"));
    }

    #[test]
    fn negative_mrg_multipliers_reduce_mod_m() {
        let cfg = SourceConfig::from_json(
            r#"{"family": "mrg", "a": [-1, 2], "m": 7, "seed": [1, 2]}"#,
        )
        .unwrap();
        let mut src = cfg.build().unwrap();
        // Buffer [1, 2]: next = 6*2 + 2*1 mod 7 = 0 mod 7 = 0.
        assert_eq!(src.next_word(), 0);
    }

    #[test]
    fn config_round_trips_through_serde() {
        let json = r#"{
            "ci": "multiple_xor", "power": 3, "x0": 5,
            "prng1": {"family": "gfsr", "r": 250, "k": 103, "w": 32, "seed_from": 11}
        }"#;
        let cfg = SourceConfig::from_json(json).unwrap();
        let re = serde_json::to_string(&cfg).unwrap();
        let cfg2 = SourceConfig::from_json(&re).unwrap();
        assert_eq!(cfg, cfg2);
    }
}
