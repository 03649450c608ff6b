use serde::{Deserialize, Serialize};

use super::wnerve::{diagonal_map, nerve_bisimplicial_map, NerveBisimplicial};
use crate::constructions::{alpha, tau, ConstructionKind, DegreewiseCategoryObject, Restriction};
use crate::error::{Error, Result};
use crate::simplicial::{last_vertex_map, SimplicialMap};

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TauAlphaReport {
    /// `(nerve level, degree)` pairs compared.
    pub checked: Vec<(usize, usize)>,
    pub mismatches: usize,
    pub witness: Option<String>,
}

impl TauAlphaReport {
    pub fn passed(&self) -> bool {
        !self.checked.is_empty() && self.mismatches == 0
    }
}

/// Compares `N_p(τ_n ∘ α_n)` with the last-vertex map of the row
/// `N_p w S_•` for `p ≤ p_depth`, `n ≤ degree`, simplex by simplex.
pub fn check_tau_alpha(
    s: &DegreewiseCategoryObject<'_>,
    s_nerve: &NerveBisimplicial,
    big: &DegreewiseCategoryObject<'_>,
    p_depth: usize,
    degree: usize,
) -> Result<TauAlphaReport> {
    if s.kind() != ConstructionKind::S {
        return Err(Error::Precondition("the last-vertex side is the S-construction".into()));
    }
    if p_depth > s_nerve.p_depth() {
        return Err(Error::Truncation {
            required: p_depth,
            available: s_nerve.p_depth(),
        });
    }
    let mut r = TauAlphaReport::default();
    let composites = (0..=degree)
        .map(|n| Ok(alpha(s, big, n)?.then(&tau(big, s, n)?)))
        .collect::<Result<Vec<Restriction>>>()?;
    for p in 0..=p_depth {
        let row = s_nerve.bisimplicial.row(p)?;
        let last = last_vertex_map(&row, degree)?;
        for (n, c) in composites.iter().enumerate() {
            let composite = s_nerve.levels[2 * n + 1].nerve_of(c, &s_nerve.levels[n])?;
            r.checked.push((p, n));
            let (lhs, rhs) = (&composite.components()[p], &last.components()[n]);
            if let Some(x) = (0..lhs.len()).find(|&x| lhs[x] != rhs[x]) {
                r.mismatches += 1;
                r.witness.get_or_insert_with(|| {
                    format!("level {p}, degree {n}, simplex {x}: τ∘α gives {}, last vertex gives {}", lhs[x], rhs[x])
                });
            }
        }
    }
    Ok(r)
}

/// `diag N w τ : diag N w Cob^big -> diag N w S`.
pub fn tau_diagonal(
    big: &DegreewiseCategoryObject<'_>,
    big_nerve: &NerveBisimplicial,
    s: &DegreewiseCategoryObject<'_>,
    s_nerve: &NerveBisimplicial,
) -> Result<SimplicialMap> {
    let depth = big_nerve.q_depth().min(s_nerve.q_depth());
    let maps = (0..=depth).map(|n| tau(big, s, n)).collect::<Result<Vec<_>>>()?;
    Ok(diagonal_map(&nerve_bisimplicial_map(&maps, big_nerve, s_nerve)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::DEFAULT_DIAGRAM_LIMIT;
    use crate::invariants::wnerve::nerve_bisimplicial;
    use crate::wald::WaldhausenInstance;

    #[test]
    fn tau_alpha_is_last_vertex_on_small_pointed_sets() {
        let w = WaldhausenInstance::finpointed(1).unwrap();
        let s = DegreewiseCategoryObject::build(ConstructionKind::S, &w, 3, DEFAULT_DIAGRAM_LIMIT).unwrap();
        let big = DegreewiseCategoryObject::build(ConstructionKind::CobBig, &w, 1, DEFAULT_DIAGRAM_LIMIT).unwrap();
        let sn = nerve_bisimplicial(&s, 2, 3).unwrap();
        let r = check_tau_alpha(&s, &sn, &big, 2, 1).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.checked.len(), 6);
    }
}
