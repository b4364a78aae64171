use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};

use super::expr::{accumulate, Monomial};

/// What a generator stands for in the Chow ring of `P(E) -> Y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GeneratorKind {
    /// The tautological class `L`.
    Tautological,
    /// `c_i(E)` pulled back from the base.
    BundleChern(u32),
    /// `c_j(T_Y)` pulled back from the base.
    TangentChern(u32),
    /// Class of a fibre over a curve.
    Fiber,
}

impl GeneratorKind {
    pub fn is_base(self) -> bool {
        !matches!(self, GeneratorKind::Tautological)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Generator {
    pub name: String,
    pub degree: u32,
    pub kind: GeneratorKind,
}

impl Generator {
    pub fn new(name: impl Into<String>, degree: u32, kind: GeneratorKind) -> Self {
        Self {
            name: name.into(),
            degree,
            kind,
        }
    }
}

/// A truncated graded quotient ring.
///
/// Reduction rules, applied to every product:
/// - Chern–Wu: `L^r = sum_{i=1}^{r} (-1)^{i+1} e_i L^{r-i}` (only when a rank is installed),
/// - base truncation: monomials whose base part has weighted degree `> m` vanish,
/// - total truncation: monomials of weighted degree `> n` vanish,
/// - `F^2 = 0` when a fibre generator is present.
#[derive(Debug)]
pub struct RingSpec {
    generators: Vec<Generator>,
    base_dim: u32,
    rank: Option<u32>,
    top_dim: u32,
    tautological: Option<usize>,
    fiber: Option<usize>,
    bundle: Vec<usize>,
    tangent: Vec<usize>,
    // normal form of L^k for k in 0..=top_dim, as integer combinations of normal monomials
    l_powers: Vec<Vec<(Monomial, BigInt)>>,
}

pub type Ring = Arc<RingSpec>;

impl PartialEq for RingSpec {
    fn eq(&self, other: &Self) -> bool {
        self.generators == other.generators
            && self.base_dim == other.base_dim
            && self.rank == other.rank
            && self.top_dim == other.top_dim
    }
}

impl Eq for RingSpec {}

impl RingSpec {
    /// Builds a ring from an explicit generator list.
    ///
    /// With `chern_wu_rank = Some(r)` the ring must contain a degree-1
    /// tautological generator, and `e_i` generators may only exist for
    /// `i <= min(r, base_dim)`.
    pub fn new(
        generators: Vec<Generator>,
        base_dim: u32,
        top_dim: u32,
        chern_wu_rank: Option<u32>,
    ) -> Result<Ring> {
        if top_dim > 255 {
            return Err(Error::DimensionTooLarge(top_dim));
        }
        let mut names = HashMap::new();
        let mut tautological = None;
        let mut fiber = None;
        let mut bundle: Vec<Option<usize>> = Vec::new();
        let mut tangent: Vec<Option<usize>> = Vec::new();
        for (idx, g) in generators.iter().enumerate() {
            if g.degree == 0 {
                return Err(Error::InvalidGenerators(format!(
                    "generator `{}` has degree 0",
                    g.name
                )));
            }
            if names.insert(g.name.clone(), idx).is_some() {
                return Err(Error::InvalidGenerators(format!(
                    "duplicate generator name `{}`",
                    g.name
                )));
            }
            let slot = |list: &mut Vec<Option<usize>>, i: u32| -> Result<()> {
                if i == 0 || g.degree != i {
                    return Err(Error::InvalidGenerators(format!(
                        "`{}` must have index >= 1 equal to its degree",
                        g.name
                    )));
                }
                let i = i as usize;
                if list.len() < i {
                    list.resize(i, None);
                }
                if list[i - 1].replace(idx).is_some() {
                    return Err(Error::InvalidGenerators(format!(
                        "two generators for the same Chern class as `{}`",
                        g.name
                    )));
                }
                Ok(())
            };
            match g.kind {
                GeneratorKind::Tautological => {
                    if tautological.replace(idx).is_some() {
                        return Err(Error::InvalidGenerators(
                            "more than one tautological generator".into(),
                        ));
                    }
                    if g.degree != 1 {
                        return Err(Error::InvalidGenerators(
                            "tautological generator must have degree 1".into(),
                        ));
                    }
                }
                GeneratorKind::Fiber => {
                    if fiber.replace(idx).is_some() {
                        return Err(Error::InvalidGenerators(
                            "more than one fibre generator".into(),
                        ));
                    }
                }
                GeneratorKind::BundleChern(i) => slot(&mut bundle, i)?,
                GeneratorKind::TangentChern(j) => slot(&mut tangent, j)?,
            }
        }
        let dense = |list: Vec<Option<usize>>, what: &str| -> Result<Vec<usize>> {
            list.into_iter()
                .enumerate()
                .map(|(i, s)| {
                    s.ok_or_else(|| {
                        Error::InvalidGenerators(format!("missing {what} class of degree {}", i + 1))
                    })
                })
                .collect()
        };
        let bundle = dense(bundle, "bundle Chern")?;
        let tangent = dense(tangent, "tangent Chern")?;
        if tangent.len() as u32 > base_dim {
            return Err(Error::InvalidGenerators(
                "tangent Chern classes above the base dimension".into(),
            ));
        }
        if let Some(r) = chern_wu_rank {
            if tautological.is_none() {
                return Err(Error::InvalidGenerators(
                    "Chern–Wu rule needs a tautological generator".into(),
                ));
            }
            if bundle.len() as u32 > r.min(base_dim) {
                return Err(Error::InvalidGenerators(format!(
                    "bundle Chern classes only exist up to degree min(r, m) = {}",
                    r.min(base_dim)
                )));
            }
        } else if !bundle.is_empty() && bundle.len() as u32 > base_dim {
            return Err(Error::InvalidGenerators(
                "bundle Chern classes above the base dimension".into(),
            ));
        }

        let mut spec = RingSpec {
            generators,
            base_dim,
            rank: chern_wu_rank,
            top_dim,
            tautological,
            fiber,
            bundle,
            tangent,
            l_powers: Vec::new(),
        };
        spec.l_powers = spec.build_l_powers();
        Ok(Arc::new(spec))
    }

    /// Normal forms of `L^k`, built by multiplying by `L` one step at a time
    /// and rewriting `L^r` as soon as it appears.
    fn build_l_powers(&self) -> Vec<Vec<(Monomial, BigInt)>> {
        let Some(l) = self.tautological else {
            return Vec::new();
        };
        let width = self.generators.len();
        let mut out = Vec::with_capacity(self.top_dim as usize + 1);
        let mut current: HashMap<Monomial, BigInt> = HashMap::new();
        current.insert(Monomial::one(width), BigInt::one());
        for k in 0..=self.top_dim {
            if k > 0 {
                let mut next: HashMap<Monomial, BigInt> = HashMap::new();
                for (mono, c) in current.drain() {
                    let mut raised = mono.clone();
                    raised.0[l] += 1;
                    match self.rank {
                        Some(r) if u32::from(raised.0[l]) >= r => {
                            // raised = L^r * beta
                            raised.0[l] -= r as u8;
                            for (i, &ei) in self.bundle.iter().enumerate() {
                                let i = i as u32 + 1;
                                let mut term = raised.clone();
                                term.0[ei] += 1;
                                term.0[l] += (r - i) as u8;
                                if self.base_degree(&term) > self.base_dim {
                                    continue;
                                }
                                let c = if i % 2 == 1 { c.clone() } else { -c.clone() };
                                accumulate(&mut next, term, c);
                            }
                        }
                        _ => accumulate(&mut next, raised, c),
                    }
                }
                current = next;
            }
            let mut entries: Vec<(Monomial, BigInt)> =
                current.iter().map(|(m, c)| (m.clone(), c.clone())).collect();
            entries.sort_by(|a, b| a.0.cmp(&b.0));
            out.push(entries);
        }
        out
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn width(&self) -> usize {
        self.generators.len()
    }

    /// Base dimension `m`.
    pub fn base_dim(&self) -> u32 {
        self.base_dim
    }

    /// Rank `r` when the Chern–Wu rule is installed.
    pub fn rank(&self) -> Option<u32> {
        self.rank
    }

    /// Top dimension `n`.
    pub fn top_dim(&self) -> u32 {
        self.top_dim
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    pub fn tautological_index(&self) -> Option<usize> {
        self.tautological
    }

    pub fn fiber_index(&self) -> Option<usize> {
        self.fiber
    }

    /// Index of `e_i`, if that generator exists.
    pub fn bundle_index(&self, i: u32) -> Option<usize> {
        (i >= 1).then(|| self.bundle.get(i as usize - 1).copied()).flatten()
    }

    /// Index of `t_j`, if that generator exists.
    pub fn tangent_index(&self, j: u32) -> Option<usize> {
        (j >= 1).then(|| self.tangent.get(j as usize - 1).copied()).flatten()
    }

    pub fn bundle_count(&self) -> u32 {
        self.bundle.len() as u32
    }

    pub fn tangent_count(&self) -> u32 {
        self.tangent.len() as u32
    }

    pub(crate) fn l_power(&self, k: u32) -> &[(Monomial, BigInt)] {
        &self.l_powers[k as usize]
    }

    pub fn degree(&self, mono: &Monomial) -> u32 {
        mono.0
            .iter()
            .zip(&self.generators)
            .map(|(&e, g)| u32::from(e) * g.degree)
            .sum()
    }

    pub fn base_degree(&self, mono: &Monomial) -> u32 {
        mono.0
            .iter()
            .zip(&self.generators)
            .filter(|(_, g)| g.kind.is_base())
            .map(|(&e, g)| u32::from(e) * g.degree)
            .sum()
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.generators.iter().map(|g| g.name.as_str()).collect();
        write!(
            f,
            "Q[{}] (m = {}, n = {}",
            names.join(", "),
            self.base_dim,
            self.top_dim
        )?;
        if let Some(r) = self.rank {
            write!(f, ", r = {r}")?;
        }
        write!(f, ")")
    }
}

/// Chow ring of a scroll `P_Y(E)` over an `m`-dimensional base, `E` of rank `r`.
///
/// Generators are `L`, `e_1..e_{min(r,m)}`, `t_1..t_m`; `n = m + r - 1`.
pub fn make_scroll_ring(m: i64, r: i64) -> Result<Ring> {
    if m < 1 {
        return Err(Error::BaseDimension { m });
    }
    if r <= 1 {
        return Err(Error::NotAScroll { r });
    }
    let n = m + r - 1;
    if n > 255 {
        return Err(Error::DimensionTooLarge(n as u32));
    }
    let (m, r) = (m as u32, r as u32);
    let mut gens = vec![Generator::new("L", 1, GeneratorKind::Tautological)];
    gens.extend((1..=r.min(m)).map(|i| Generator::new(format!("e{i}"), i, GeneratorKind::BundleChern(i))));
    gens.extend((1..=m).map(|j| Generator::new(format!("t{j}"), j, GeneratorKind::TangentChern(j))));
    RingSpec::new(gens, m, m + r - 1, Some(r))
}

/// Two-generator ring `{L, F}` of an `n`-fold fibred over a curve:
/// `F^2 = 0`, no Chern–Wu rule, truncation at `n`.
pub fn make_fibration_ring(n: u32) -> Result<Ring> {
    if n < 1 {
        return Err(Error::Precondition("fibration ring needs n >= 1".into()));
    }
    let gens = vec![
        Generator::new("L", 1, GeneratorKind::Tautological),
        Generator::new("F", 1, GeneratorKind::Fiber),
    ];
    RingSpec::new(gens, 1, n, None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(ring: &RingSpec) -> Vec<&str> {
        ring.generators().iter().map(|g| g.name.as_str()).collect()
    }

    #[test]
    fn smallest_scroll_ring() {
        let ring = make_scroll_ring(1, 2).unwrap();
        assert_eq!(names(&ring), ["L", "e1", "t1"]);
        assert_eq!(ring.top_dim(), 2);
    }

    #[test]
    fn surface_base_rank_three() {
        let ring = make_scroll_ring(2, 3).unwrap();
        assert_eq!(names(&ring), ["L", "e1", "e2", "t1", "t2"]);
        assert_eq!(ring.top_dim(), 4);
    }

    #[test]
    fn bundle_classes_capped_by_rank() {
        let ring = make_scroll_ring(5, 2).unwrap();
        assert_eq!(ring.bundle_count(), 2);
        assert_eq!(ring.tangent_count(), 5);
        assert_eq!(ring.bundle_index(3), None);
    }

    #[test]
    fn rejects_degenerate_inputs() {
        assert_eq!(make_scroll_ring(3, 1).unwrap_err(), Error::NotAScroll { r: 1 });
        assert_eq!(make_scroll_ring(0, 3).unwrap_err(), Error::BaseDimension { m: 0 });
        assert!(make_scroll_ring(-2, 3).is_err());
    }

    #[test]
    fn rejects_bad_generator_sets() {
        let dup = vec![
            Generator::new("L", 1, GeneratorKind::Tautological),
            Generator::new("L", 1, GeneratorKind::Fiber),
        ];
        assert!(RingSpec::new(dup, 1, 2, None).is_err());
        let too_many = vec![
            Generator::new("L", 1, GeneratorKind::Tautological),
            Generator::new("e1", 1, GeneratorKind::BundleChern(1)),
            Generator::new("e2", 2, GeneratorKind::BundleChern(2)),
        ];
        assert!(RingSpec::new(too_many, 1, 2, Some(2)).is_err());
        let gap = vec![
            Generator::new("L", 1, GeneratorKind::Tautological),
            Generator::new("e2", 2, GeneratorKind::BundleChern(2)),
        ];
        assert!(RingSpec::new(gap, 2, 3, Some(2)).is_err());
    }

    #[test]
    fn structurally_equal_rings_compare_equal() {
        assert_eq!(*make_scroll_ring(2, 3).unwrap(), *make_scroll_ring(2, 3).unwrap());
        assert_ne!(*make_scroll_ring(2, 3).unwrap(), *make_scroll_ring(3, 2).unwrap());
    }
}
