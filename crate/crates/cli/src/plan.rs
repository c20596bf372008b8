//! Validation of a [`JobConfig`] into concrete instances. Every parse error
//! surfaces here, before any counting starts.

use std::sync::Arc;

use subsetsum::algebra::{DomainSpec, PolySpec, Structure};
use subsetsum::bounds::{ConstantChoice, Theorem, TheoremSetup};
use subsetsum::counting::{Budget, Instance, Method, MethodChoice};

use crate::config::{Format, JobConfig, KRange, Targets};
use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Count,
    Bound,
    Verify,
    Sweep,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Count => "count",
            Mode::Bound => "bound",
            Mode::Verify => "verify",
            Mode::Sweep => "sweep",
        }
    }
}

/// One `(R, D, f)` of the grid with its resolved theorem and targets.
#[derive(Debug, Clone)]
pub struct Cell {
    pub instance: Instance,
    /// Sorted, deduplicated element indices.
    pub targets: Vec<usize>,
    pub setup: Option<TheoremSetup>,
}

#[derive(Debug, Clone)]
pub struct Job {
    pub mode: Mode,
    pub cells: Vec<Cell>,
    pub k: KRange,
    pub method: MethodChoice,
    pub budget: Budget,
    pub format: Format,
    pub no_meta: bool,
}

fn usage(cell: &str, what: impl std::fmt::Display) -> CliError {
    CliError::Usage(format!("{cell}: {what}"))
}

/// The theorem matching a structure when none is named.
fn default_theorem(s: &Structure) -> Theorem {
    if s.zn_modulus().is_some() {
        Theorem::Zn
    } else if s.field().is_some() {
        Theorem::Fq
    } else {
        Theorem::Abelian
    }
}

fn targets(s: &Structure, spec: &Targets) -> Result<Vec<usize>, String> {
    let mut out = match spec {
        Targets::All => (0..s.size()).collect(),
        Targets::List(items) => items
            .iter()
            .map(|e| s.parse_element(e).map_err(|err| format!("target {e:?}: {err}")))
            .collect::<Result<Vec<_>, _>>()?,
    };
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

pub fn plan(mode: Mode, cfg: &JobConfig) -> Result<Job, CliError> {
    let structures = cfg
        .structures
        .as_ref()
        .ok_or_else(|| CliError::Usage("no structure given (--zn, --fq, --abelian or a config file)".into()))?;
    let k = cfg.k.ok_or_else(|| CliError::Usage("no subset size given (--k)".into()))?;
    let method = cfg.method.unwrap_or(MethodChoice::Auto);
    let spec_targets = cfg.b.clone().unwrap_or(Targets::All);
    let domains: Vec<&str> =
        if cfg.domains.is_empty() { vec!["full"] } else { cfg.domains.iter().map(String::as_str).collect() };
    let wants_theorem = matches!(mode, Mode::Bound | Mode::Verify) || cfg.theorem.is_some();
    if cfg.constant.is_some() && !wants_theorem {
        return Err(CliError::Usage("--constant needs a theorem".into()));
    }

    let mut cells = Vec::new();
    for sc in structures {
        let s = Arc::new(sc.build().map_err(|e| CliError::Usage(format!("{sc:?}: {e}")))?);
        let name = s.describe();
        let polys: Vec<Option<PolySpec>> = if s.ring().is_none() {
            if !cfg.polys.is_empty() {
                return Err(usage(&name, "a bare group takes no polynomial"));
            }
            vec![None]
        } else if cfg.polys.is_empty() {
            vec![Some(PolySpec::identity(&s).expect("ring"))]
        } else {
            cfg.polys
                .iter()
                .map(|p| PolySpec::parse(&s, p).map(Some).map_err(|e| usage(&name, format!("poly {p:?}: {e}"))))
                .collect::<Result<_, _>>()?
        };
        let tgt = targets(&s, &spec_targets).map_err(|e| usage(&name, e))?;
        for dom_text in &domains {
            let dom = DomainSpec::parse(&s, dom_text).map_err(|e| usage(&name, format!("domain {dom_text:?}: {e}")))?;
            for f in &polys {
                let instance = Instance::new(s.clone(), dom.clone(), f.clone()).map_err(|e| usage(&name, e))?;
                if method == MethodChoice::Only(Method::ClosedForm) && !instance.is_whole_group_identity() {
                    return Err(usage(&name, "closedform needs --domain full and f = x"));
                }
                let setup = if wants_theorem {
                    let theorem = cfg.theorem.unwrap_or_else(|| default_theorem(&s));
                    Some(constant_setup(&instance, theorem, cfg.constant).map_err(|e| usage(&name, e))?)
                } else {
                    None
                };
                cells.push(Cell { instance, targets: tgt.clone(), setup });
            }
        }
    }
    Ok(Job {
        mode,
        cells,
        k,
        method,
        budget: cfg.budget.resolve(),
        format: cfg.format.unwrap_or(Format::Json),
        no_meta: cfg.no_meta.unwrap_or(false),
    })
}

fn constant_setup(
    instance: &Instance,
    theorem: Theorem,
    constant: Option<ConstantChoice>,
) -> Result<TheoremSetup, String> {
    if constant.is_some() && theorem != Theorem::Zn {
        return Err(format!("--constant applies to the zn theorem only, not {theorem}"));
    }
    TheoremSetup::new(instance, theorem, constant).map_err(|e| e.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::StructureConfig;

    fn cfg(structures: Vec<StructureConfig>) -> JobConfig {
        JobConfig { structures: Some(structures), k: Some(KRange { lo: 1, hi: 2 }), ..Default::default() }
    }

    #[test]
    fn grid_is_structures_by_domains_by_polys() {
        let mut c = cfg(vec![StructureConfig::Zn { n: 5 }, StructureConfig::Zn { n: 7 }]);
        c.domains = vec!["full".into(), "complement:0".into()];
        c.polys = vec!["0,1".into(), "0,0,1".into(), "1,0,1".into()];
        let job = plan(Mode::Count, &c).unwrap();
        assert_eq!(job.cells.len(), 12);
        assert!(job.cells.iter().all(|c| c.setup.is_none()));
    }

    #[test]
    fn targets_are_sorted_and_deduplicated() {
        let mut c = cfg(vec![StructureConfig::Abelian { moduli: vec![2, 3] }]);
        c.b = Some("1,2;0,0;1,2".parse().unwrap());
        let job = plan(Mode::Count, &c).unwrap();
        assert_eq!(job.cells[0].targets, vec![0, 5]);
    }

    #[test]
    fn usage_errors() {
        let mut c = cfg(vec![StructureConfig::Abelian { moduli: vec![2, 3] }]);
        c.polys = vec!["0,1".into()];
        assert!(plan(Mode::Count, &c).is_err());
        let mut c = cfg(vec![StructureConfig::Zn { n: 6 }]);
        c.domains = vec!["complement:0".into()];
        c.method = Some(MethodChoice::Only(Method::ClosedForm));
        assert!(plan(Mode::Count, &c).is_err());
        let mut c = cfg(vec![StructureConfig::Zn { n: 6 }]);
        c.constant = Some(ConstantChoice::CochraneZheng);
        assert!(plan(Mode::Verify, &c).is_err());
        let mut c = cfg(vec![StructureConfig::Zn { n: 6 }]);
        c.k = None;
        assert!(plan(Mode::Count, &c).is_err());
    }

    #[test]
    fn bound_picks_the_structure_theorem() {
        let c = cfg(vec![StructureConfig::Zn { n: 9 }, StructureConfig::Fq { p: 7, t: 1, modulus: None }]);
        let job = plan(Mode::Bound, &c).unwrap();
        assert_eq!(job.cells[0].setup.as_ref().unwrap().theorem, Theorem::Zn);
        assert_eq!(job.cells[0].setup.as_ref().unwrap().constant, Some(ConstantChoice::CochraneZheng));
        assert_eq!(job.cells[1].setup.as_ref().unwrap().theorem, Theorem::Fq);
    }
}
