//! Levelwise construction of a single cell: properties are discharged from
//! the top level down, choosing one symbolic interval per level.

mod heuristics;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::cells::{CellDescription, RootValue, SymbolicInterval};
use crate::poly::{FactorMode, MPoly};
use crate::proofsys::{Context, DerivationTrace, Origin, ProofError, Property, PropertySet, Representation, Tier};
use crate::realalg::RealAlg;

pub use heuristics::{check_representation, choose_ordering, lowest_degree_interval, RepresentationError};

/// How the root ordering of a level is chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Heuristic {
    /// Equational constraint projection for every polynomial (sections only).
    Eq,
    /// Biggest cell: only order roots against the nearest bounds.
    Bc,
    /// Chain through the closest roots.
    Ch,
    /// Lowest degree barriers.
    Ldb,
    /// Total order on the closest roots.
    Full,
}

impl Heuristic {
    pub fn id(self) -> &'static str {
        match self {
            Heuristic::Eq => "eq",
            Heuristic::Bc => "bc",
            Heuristic::Ch => "ch",
            Heuristic::Ldb => "ldb",
            Heuristic::Full => "full",
        }
    }
}

impl FromStr for Heuristic {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Ok(match s {
            "eq" => Heuristic::Eq,
            "bc" => Heuristic::Bc,
            "ch" => Heuristic::Ch,
            "ldb" => Heuristic::Ldb,
            "full" => Heuristic::Full,
            _ => return Err(format!("unknown heuristic '{s}'")),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct HeuristicConfig {
    pub section: Heuristic,
    pub sector: Heuristic,
    /// Skip the connectedness requirement on the top level; the cell may
    /// then be disconnected.
    pub relax_top_connectedness: bool,
    pub factor_mode: FactorMode,
}

impl Default for HeuristicConfig {
    fn default() -> Self {
        HeuristicConfig::new(Heuristic::Eq, Heuristic::Bc)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConfigError {
    #[error("unknown heuristic '{0}'")]
    Unknown(String),
    #[error("the equational heuristic only applies to sections")]
    EqForSectors,
}

impl HeuristicConfig {
    pub fn new(section: Heuristic, sector: Heuristic) -> Self {
        HeuristicConfig { section, sector, relax_top_connectedness: false, factor_mode: FactorMode::Finest }
    }

    /// Every section/sector pairing, as exercised by the test suites.
    pub fn all_combinations() -> Vec<HeuristicConfig> {
        let sections = [Heuristic::Eq, Heuristic::Ch, Heuristic::Ldb];
        let sectors = [Heuristic::Bc, Heuristic::Ch, Heuristic::Ldb, Heuristic::Full];
        sections
            .iter()
            .flat_map(|&a| sectors.iter().map(move |&b| HeuristicConfig::new(a, b)))
            .collect()
    }

    /// `<section>-<sector>` such as `eq-bc`, or one name for both cases.
    pub fn from_id(id: &str) -> Result<Self, ConfigError> {
        let unknown = || ConfigError::Unknown(id.to_string());
        let (section, sector) = match id.split_once('-') {
            Some((a, b)) => (a.parse().map_err(|_| unknown())?, b.parse().map_err(|_| unknown())?),
            None => {
                let h: Heuristic = id.parse().map_err(|_| unknown())?;
                (h, h)
            }
        };
        if sector == Heuristic::Eq {
            return Err(ConfigError::EqForSectors);
        }
        Ok(HeuristicConfig::new(section, sector))
    }

    pub fn id(&self) -> String {
        if self.section == self.sector {
            self.section.id().to_string()
        } else {
            format!("{}-{}", self.section.id(), self.sector.id())
        }
    }
}

impl fmt::Display for HeuristicConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.id())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CellError {
    #[error("sample has {sample} coordinates but a polynomial has level {level}")]
    SampleTooShort { sample: usize, level: usize },
    #[error("construction failed: {0}")]
    NoRule(#[from] ProofError),
    #[error("level {level}: {source}")]
    Representation { level: usize, source: RepresentationError },
}

/// Counts of the distinct nonconstant projection polynomials computed.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ConstructionStats {
    pub resultants: usize,
    pub discriminants: usize,
    pub coefficients: usize,
    /// Largest main-variable degree among the polynomials bounding roots.
    pub max_main_degree: u32,
}

#[derive(Clone, Debug)]
pub struct Construction {
    pub cell: CellDescription,
    /// Representation chosen at each level, lowest level first.
    pub representations: Vec<Representation>,
    pub trace: DerivationTrace,
    pub stats: ConstructionStats,
    /// Projection polynomials per origin, for inspection.
    pub projection: Vec<(Origin, MPoly)>,
}

impl Construction {
    /// The assumptions the trace rests on.
    pub fn axioms(&self) -> &[Property] {
        &self.trace.axioms
    }
}

/// A cell around `s` on which every polynomial of `polys` is sign-invariant.
pub fn single_cell(polys: &[MPoly], s: &[RealAlg], cfg: &HeuristicConfig) -> Result<Construction, CellError> {
    construct(polys.iter().map(Property::sgninv), s, cfg)
}

/// Run the construction from an arbitrary initial property set.
pub fn construct<I>(initial: I, s: &[RealAlg], cfg: &HeuristicConfig) -> Result<Construction, CellError>
where
    I: IntoIterator<Item = Property>,
{
    let n = s.len();
    let mut q = PropertySet::new();
    for p in initial {
        if p.level() > n {
            return Err(CellError::SampleTooShort { sample: n, level: p.level() });
        }
        q.insert(p);
    }
    let ctx = Context::new(s.to_vec(), cfg.factor_mode);
    let mut intervals = vec![SymbolicInterval::full(); n];
    let mut representations = vec![
        Representation {
            interval: SymbolicInterval::full(),
            eq_set: Default::default(),
            ordering: Default::default(),
        };
        n
    ];
    let mut axioms = Vec::new();
    let mut max_main_degree = 0;
    for level in (0..=n).rev() {
        project(level, &mut q, &ctx)?;
        if level == 0 {
            break;
        }
        let polys: Vec<MPoly> = q
            .at_level(level)
            .filter_map(|p| match p {
                Property::SgnInv(p) => Some(p.clone()),
                _ => None,
            })
            .collect();
        max_main_degree = polys.iter().map(MPoly::main_degree).chain([max_main_degree]).max().unwrap_or(0);
        let relax = cfg.relax_top_connectedness && level == n && !q.contains(&Property::Connected(n));
        let repr = represent(level, &polys, &ctx, cfg, relax)?;
        discharge(level, &mut q, &ctx, &repr, &mut axioms)?;
        intervals[level - 1] = repr.interval.clone();
        representations[level - 1] = repr;
    }
    debug_assert!(q.is_empty(), "properties left after level 0: {:?}", q.iter().collect::<Vec<_>>());
    // levels without any polynomial still bound the cell by the full line
    for (k, iv) in intervals.iter().enumerate() {
        let h = Property::Holds(k + 1, iv.clone());
        if !axioms.contains(&h) {
            axioms.push(h);
        }
    }
    axioms.sort_by_key(Property::level);
    let stats = ConstructionStats {
        resultants: q.introduced(Origin::Resultant),
        discriminants: q.introduced(Origin::Discriminant),
        coefficients: q.introduced(Origin::Coefficient),
        max_main_degree,
    };
    let projection = [Origin::Resultant, Origin::Discriminant, Origin::Coefficient]
        .into_iter()
        .flat_map(|o| q.introduced_polys(o).map(move |p| (o, p.clone())).collect::<Vec<_>>())
        .collect();
    Ok(Construction {
        cell: CellDescription::new(intervals),
        representations,
        trace: q.trace(axioms),
        stats,
        projection,
    })
}

/// Discharge the level's properties that need no interval, leaving sign
/// invariance of basis polynomials and the interval-dependent properties.
fn project(level: usize, q: &mut PropertySet, ctx: &Context) -> Result<(), CellError> {
    let mut settled = false;
    while let Some((tier, prop)) = q.greatest(level, ctx) {
        if !settled && tier > Tier::NonNull {
            // the level's polynomials are complete: fix their basis once
            let polys: Vec<MPoly> = q.at_level(level).filter_map(|p| p.poly().cloned()).collect();
            ctx.settle_basis(&polys);
            settled = true;
            continue;
        }
        if level > 0 && tier >= Tier::SgnInvIrreducible {
            break;
        }
        q.apply_pre(&prop, ctx, None)?;
    }
    Ok(())
}

/// Pick interval and ordering for the level from the remaining polynomials.
fn represent(
    level: usize,
    polys: &[MPoly],
    ctx: &Context,
    cfg: &HeuristicConfig,
    relax_connectedness: bool,
) -> Result<Representation, CellError> {
    let s = ctx.sample();
    let prefix = &s[..level - 1];
    let si = &s[level - 1];
    let mut xi: Vec<RootValue> = Vec::new();
    for p in polys {
        // nullified polynomials have no roots to offer
        let Some(roots) = ctx.roots(p) else { continue };
        xi.extend(roots.into_iter().enumerate().map(|(k, value)| RootValue {
            root: crate::cells::IndexedRoot::new(p.clone(), k + 1),
            value,
        }));
    }
    xi.sort_by(|a, b| a.value.cmp(&b.value).then_with(|| a.root.cmp(&b.root)));
    let interval = lowest_degree_interval(&xi, si);
    let h = if interval.is_section() { cfg.section } else { cfg.sector };
    let err = |source| CellError::Representation { level, source };
    let (eq_set, mut ordering) = choose_ordering(&xi, polys, &interval, si, h).map_err(err)?;
    if let SymbolicInterval::Sector { lower: Some(l), upper: Some(u) } = &interval {
        if !relax_connectedness && !ordering.le(l, u) {
            let pairs = ordering.pairs().cloned().chain([(l.clone(), u.clone())]);
            ordering = crate::proofsys::RootOrdering::new(pairs)
                .map_err(|e| err(RepresentationError::Invalid(e.to_string())))?;
        }
    }
    let repr = Representation { interval, eq_set, ordering };
    check_representation(&repr, &xi, prefix, si).map_err(err)?;
    Ok(repr)
}

/// Derive everything left on the level from the chosen representation;
/// the interval assumption remains as an axiom.
fn discharge(
    level: usize,
    q: &mut PropertySet,
    ctx: &Context,
    repr: &Representation,
    axioms: &mut Vec<Property>,
) -> Result<(), CellError> {
    while let Some((tier, prop)) = q.greatest(level, ctx) {
        if tier == Tier::Holds {
            q.take(&prop);
            axioms.push(prop);
            continue;
        }
        q.apply_pre(&prop, ctx, Some(repr))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cells::{IndexedRoot, Span};
    use crate::poly::{parse_poly, rat};
    use crate::proofsys::{check_trace, validate_trace};

    fn polys(src: &[&str]) -> Vec<MPoly> {
        src.iter().map(|p| parse_poly(p).unwrap()).collect()
    }

    fn circle_and_lines() -> (Vec<MPoly>, Vec<RealAlg>) {
        let ps = polys(&["x1 - 2*x2 + 1", "x1^2 + x2^2 - 1", "x1 - 2*x2 - 1"]);
        (ps, vec![RealAlg::rational(rat(1, 8)), RealAlg::rational(rat(-3, 4))])
    }

    #[test]
    fn biggest_cell_around_circle_and_lines() {
        let (ps, s) = circle_and_lines();
        let c = single_cell(&ps, &s, &HeuristicConfig::new(Heuristic::Eq, Heuristic::Bc)).unwrap();
        let [i1, i2] = &c.cell.intervals[..] else { panic!() };
        assert_eq!(
            i2,
            &SymbolicInterval::sector(
                Some(IndexedRoot::new(ps[1].normalize(), 1)),
                Some(IndexedRoot::new(ps[2].normalize(), 1))
            )
        );
        let Some(Span::Sector(Some(lo), Some(hi))) = i1.span(&[]) else { panic!("{i1:?}") };
        assert_eq!(lo, RealAlg::rational(rat(-3, 5)));
        assert_eq!(hi, RealAlg::rational(rat(1, 1)));
        if let Err(e) = check_trace(&c.trace, c.axioms(), FactorMode::Finest) {
            panic!("{e}\n{}", c.trace);
        }
    }

    #[test]
    fn every_combination_handles_the_circle() {
        let (ps, s) = circle_and_lines();
        for cfg in HeuristicConfig::all_combinations() {
            let c = single_cell(&ps, &s, &cfg).unwrap_or_else(|e| panic!("{cfg}: {e}"));
            assert!(validate_trace(&c.trace, c.axioms(), cfg.factor_mode), "{cfg}");
        }
    }

    #[test]
    fn nullified_polynomial_fails_at_origin() {
        let ps = polys(&["x1*x3 + x2"]);
        let zero = RealAlg::rational(rat(0, 1));
        let cfg = HeuristicConfig::default();
        assert!(single_cell(&ps, &[zero.clone(), zero.clone(), zero.clone()], &cfg).is_err());
        let one = RealAlg::rational(rat(1, 1));
        assert!(single_cell(&ps, &[one, zero.clone(), zero], &cfg).is_ok());
    }

    #[test]
    fn config_ids() {
        assert_eq!(HeuristicConfig::from_id("bc").unwrap(), HeuristicConfig::new(Heuristic::Bc, Heuristic::Bc));
        assert_eq!(HeuristicConfig::from_id("eq-ldb").unwrap().id(), "eq-ldb");
        assert!(HeuristicConfig::from_id("ch-eq").is_err());
        assert!(HeuristicConfig::from_id("zz").is_err());
    }
}
