//! Job description shared by the command-line flags and the TOML config
//! file. Flags override file values field by field.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use subsetsum::algebra::{build_field, AlgebraError, GroupSpec, Structure};
use subsetsum::bounds::{ConstantChoice, Theorem};
use subsetsum::counting::{Budget, MethodChoice};

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum StructureConfig {
    Zn {
        n: u64,
    },
    Fq {
        p: u64,
        t: usize,
        /// Monic, coefficients low to high.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        modulus: Option<Vec<u64>>,
    },
    Abelian {
        moduli: Vec<u64>,
    },
}

impl StructureConfig {
    pub fn build(&self) -> Result<Structure, AlgebraError> {
        match self {
            StructureConfig::Zn { n } => Structure::zn(*n),
            StructureConfig::Fq { p, t, modulus } => Ok(Structure::fq(build_field(*p, *t, modulus.clone())?)),
            StructureConfig::Abelian { moduli } => Ok(Structure::abelian(GroupSpec::new(moduli.clone())?)),
        }
    }

    /// `N`, `A..B` (inclusive, possibly empty) or `N1,N2,…`.
    pub fn parse_zn(text: &str) -> Result<Vec<Self>, CliError> {
        let moduli: Vec<u64> = if let Some((a, b)) = text.split_once("..") {
            (parse_int(a, "--zn")?..=parse_int(b, "--zn")?).collect()
        } else {
            parse_list(text, "--zn")?
        };
        Ok(moduli.into_iter().map(|n| StructureConfig::Zn { n }).collect())
    }

    /// `P,T` or `P,T,m_0,…,m_T` with an explicit monic modulus.
    pub fn parse_fq(text: &str) -> Result<Self, CliError> {
        let nums = parse_list(text, "--fq")?;
        match nums.as_slice() {
            [p, t] => Ok(StructureConfig::Fq { p: *p, t: *t as usize, modulus: None }),
            [p, t, rest @ ..] => Ok(StructureConfig::Fq { p: *p, t: *t as usize, modulus: Some(rest.to_vec()) }),
            _ => Err(CliError::Usage(format!("--fq expects P,T[,modulus], got {text:?}"))),
        }
    }

    pub fn parse_abelian(text: &str) -> Result<Self, CliError> {
        Ok(StructureConfig::Abelian { moduli: parse_list(text, "--abelian")? })
    }
}

fn parse_int(text: &str, flag: &str) -> Result<u64, CliError> {
    text.trim()
        .parse()
        .map_err(|_| CliError::Usage(format!("{flag}: not a nonnegative integer: {text:?}")))
}

fn parse_list(text: &str, flag: &str) -> Result<Vec<u64>, CliError> {
    text.split(',').map(|t| parse_int(t, flag)).collect()
}

/// Inclusive, non-empty range of subset sizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KRange {
    pub lo: usize,
    pub hi: usize,
}

impl FromStr for KRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let num = |t: &str| t.trim().parse::<usize>().map_err(|_| format!("bad k {t:?}"));
        let (lo, hi) = match s.split_once("..") {
            Some((a, b)) => (num(a)?, num(b)?),
            None => (num(s)?, num(s)?),
        };
        if lo > hi {
            return Err(format!("empty k range {s:?}"));
        }
        Ok(KRange { lo, hi })
    }
}

impl fmt::Display for KRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.lo == self.hi {
            write!(f, "{}", self.lo)
        } else {
            write!(f, "{}..{}", self.lo, self.hi)
        }
    }
}

/// Target sums: the whole group or `;`-separated elements in the element
/// syntax of the structure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Targets {
    All,
    List(Vec<String>),
}

impl FromStr for Targets {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "all" => Ok(Targets::All),
            "" => Err("empty target list".into()),
            t => Ok(Targets::List(t.split(';').map(|e| e.trim().to_string()).collect())),
        }
    }
}

impl fmt::Display for Targets {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Targets::All => f.write_str("all"),
            Targets::List(v) => f.write_str(&v.join(";")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BudgetConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub enumeration: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table_cells: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub charsum_ops: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
}

impl BudgetConfig {
    pub fn resolve(&self) -> Budget {
        let d = Budget::default();
        Budget {
            enumeration: self.enumeration.unwrap_or(d.enumeration),
            table_cells: self.table_cells.unwrap_or(d.table_cells),
            charsum_ops: self.charsum_ops.unwrap_or(d.charsum_ops),
            tolerance: self.tolerance.unwrap_or(d.tolerance),
        }
    }

    fn is_empty(&self) -> bool {
        *self == Self::default()
    }
}

/// Serde adapter storing `FromStr + Display` values as strings.
mod text {
    use std::fmt::Display;
    use std::str::FromStr;

    use serde::de::Error;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<T: Display, S: Serializer>(v: &Option<T>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(v) => s.serialize_some(&v.to_string()),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, T, D>(d: D) -> Result<Option<T>, D::Error>
    where
        T: FromStr,
        T::Err: Display,
        D: Deserializer<'de>,
    {
        Option::<String>::deserialize(d)?.map(|t| t.parse().map_err(D::Error::custom)).transpose()
    }
}

/// Everything a run needs. Scalars precede tables so the TOML form
/// serializes in one pass.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobConfig {
    /// `full`, `list:e1;e2;…` or `complement:e1;e2;…`; default `full`.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub domains: Vec<String>,
    /// `a0,a1,…,ad`; default `f = x` on rings, none on bare groups.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub polys: Vec<String>,
    #[serde(default, with = "text", skip_serializing_if = "Option::is_none")]
    pub k: Option<KRange>,
    #[serde(default, with = "text", skip_serializing_if = "Option::is_none")]
    pub b: Option<Targets>,
    #[serde(default, with = "text", skip_serializing_if = "Option::is_none")]
    pub method: Option<MethodChoice>,
    #[serde(default, with = "text", skip_serializing_if = "Option::is_none")]
    pub theorem: Option<Theorem>,
    #[serde(default, with = "text", skip_serializing_if = "Option::is_none")]
    pub constant: Option<ConstantChoice>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<Format>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub jobs: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub no_meta: Option<bool>,
    #[serde(default, skip_serializing_if = "BudgetConfig::is_empty")]
    pub budget: BudgetConfig,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub structures: Option<Vec<StructureConfig>>,
}

impl JobConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
        Self::from_toml(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
    }

    pub fn from_toml(text: &str) -> Result<Self, toml::de::Error> {
        toml::from_str(text)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config is representable in TOML")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges_and_targets_parse() {
        assert_eq!("3".parse::<KRange>().unwrap(), KRange { lo: 3, hi: 3 });
        assert_eq!("1..4".parse::<KRange>().unwrap(), KRange { lo: 1, hi: 4 });
        assert!("4..1".parse::<KRange>().is_err());
        assert_eq!("all".parse::<Targets>().unwrap(), Targets::All);
        assert_eq!("0,1;1,1".parse::<Targets>().unwrap(), Targets::List(vec!["0,1".into(), "1,1".into()]));
    }

    #[test]
    fn structure_flags() {
        assert_eq!(StructureConfig::parse_zn("4..6").unwrap().len(), 3);
        assert!(StructureConfig::parse_zn("6..4").unwrap().is_empty());
        assert_eq!(StructureConfig::parse_zn("5,7").unwrap()[1], StructureConfig::Zn { n: 7 });
        assert_eq!(
            StructureConfig::parse_fq("3,2,2,2,1").unwrap(),
            StructureConfig::Fq { p: 3, t: 2, modulus: Some(vec![2, 2, 1]) }
        );
        assert!(StructureConfig::parse_fq("3").is_err());
        assert!(StructureConfig::parse_fq("3,2").unwrap().build().is_ok());
        assert!(StructureConfig::parse_fq("3,2,0,0,1").unwrap().build().is_err());
    }

    #[test]
    fn toml_round_trip() {
        let text = r#"
            domains = ["full", "complement:0"]
            polys = ["0,0,1"]
            k = "1..3"
            b = "all"
            method = "crosscheck"
            theorem = "fq"
            format = "csv"
            no_meta = true

            [budget]
            table_cells = 1000
            tolerance = 1e-8

            [[structures]]
            kind = "fq"
            p = 3
            t = 2

            [[structures]]
            kind = "zn"
            n = 12

            [[structures]]
            kind = "abelian"
            moduli = [2, 2, 3]
        "#;
        let cfg = JobConfig::from_toml(text).unwrap();
        assert_eq!(cfg.k, Some(KRange { lo: 1, hi: 3 }));
        assert_eq!(cfg.method, Some(MethodChoice::CrossCheck));
        assert_eq!(cfg.budget.table_cells, Some(1000));
        let again = JobConfig::from_toml(&cfg.to_toml()).unwrap();
        assert_eq!(again, cfg);
    }

    #[test]
    fn unknown_keys_are_rejected() {
        assert!(JobConfig::from_toml("colour = 3").is_err());
        assert!(JobConfig::from_toml("method = \"fastest\"").is_err());
    }
}
