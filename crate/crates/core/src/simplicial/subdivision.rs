use super::ordinal::OrdinalMap;
use super::sset::{SimplicialMap, TruncatedSimplicialSet};
use crate::error::{Error, Result};

/// Highest level of `Sd X` that a truncation of `X` at `depth` determines.
pub fn subdivision_depth(depth: usize) -> Option<usize> {
    depth.checked_sub(1).map(|d| d / 2)
}

/// Edgewise subdivision: `(Sd X)_k = X_{2k+1}`, with `α` acting as `X(α^op ∗ α)`.
///
/// The output is truncated at `⌊(D − 1)/2⌋`. Semi-simplicial input gives
/// semi-simplicial output.
pub fn edgewise_subdivision(x: &TruncatedSimplicialSet) -> Result<TruncatedSimplicialSet> {
    let depth = subdivision_depth(x.depth()).ok_or(Error::Truncation {
        required: 1,
        available: x.depth(),
    })?;
    edgewise_subdivision_to(x, depth)
}

/// Edgewise subdivision truncated at `depth`; needs `X` through level `2·depth + 1`.
pub fn edgewise_subdivision_to(
    x: &TruncatedSimplicialSet,
    depth: usize,
) -> Result<TruncatedSimplicialSet> {
    let required = 2 * depth + 1;
    if x.depth() < required {
        return Err(Error::Truncation {
            required,
            available: x.depth(),
        });
    }
    let counts = (0..=depth).map(|k| x.count(2 * k + 1)).collect();
    TruncatedSimplicialSet::from_action(counts, x.is_semi(), |alpha, s| {
        x.act(&alpha.subdivide(), s).expect("levels within truncation")
    })
}

/// The last-vertex map `Sd X -> X`, given levelwise by restriction along the
/// inclusion of `[k]` as the last `k+1` elements of `[2k+1]`.
pub fn last_vertex_map(x: &TruncatedSimplicialSet, depth: usize) -> Result<SimplicialMap> {
    let required = 2 * depth + 1;
    if x.depth() < required {
        return Err(Error::Truncation {
            required,
            available: x.depth(),
        });
    }
    let components = (0..=depth)
        .map(|k| {
            let inclusion = OrdinalMap::last_block_inclusion(k);
            (0..x.count(2 * k + 1))
                .map(|s| x.act(&inclusion, s).map(|y| y as u32))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SimplicialMap::new(components))
}

/// `Sd(f)` for a simplicial map `f : X -> Y`: levelwise `f_{2k+1}`.
pub fn subdivide_map(f: &SimplicialMap, depth: usize) -> Result<SimplicialMap> {
    let required = 2 * depth + 1;
    if f.depth() < required {
        return Err(Error::Truncation {
            required,
            available: f.depth(),
        });
    }
    Ok(SimplicialMap::new(
        (0..=depth).map(|k| f.components()[2 * k + 1].clone()).collect(),
    ))
}
