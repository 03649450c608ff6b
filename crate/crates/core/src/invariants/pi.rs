use std::collections::VecDeque;

use num_bigint::BigInt;
use petgraph::unionfind::UnionFind;
use serde::{Deserialize, Serialize};

use super::chain::HomologyGroup;
use super::snf::{smith_normal_form, SparseMatrix};
use crate::error::{Error, Result};
use crate::simplicial::TruncatedSimplicialSet;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Components {
    pub count: usize,
    /// Component of each vertex, numbered by least vertex.
    pub labels: Vec<usize>,
}

/// Path components: vertices modulo the relation generated by edges.
pub fn pi0(x: &TruncatedSimplicialSet) -> Result<Components> {
    if x.depth() < 1 {
        return Err(Error::Truncation { required: 1, available: x.depth() });
    }
    let n = x.count(0);
    let mut uf = UnionFind::new(n);
    for e in 0..x.count(1) {
        uf.union(x.face(1, 0, e), x.face(1, 1, e));
    }
    let mut label = vec![usize::MAX; n];
    let mut count = 0;
    let labels = (0..n)
        .map(|v| {
            let r = uf.find_mut(v);
            if label[r] == usize::MAX {
                label[r] = count;
                count += 1;
            }
            label[r]
        })
        .collect();
    Ok(Components { count, labels })
}

/// A letter `g^±1` of a relator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

/// A finite presentation of the fundamental group at a basepoint.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupPresentation {
    pub basepoint: usize,
    /// Generator names `e<k>`, one per nondegenerate edge off the spanning tree.
    pub generators: Vec<String>,
    /// The edge each generator stands for.
    pub edges: Vec<usize>,
    /// One relator `d_2σ · d_0σ · (d_1σ)^{-1}` per nondegenerate 2-simplex `σ`,
    /// with tree and degenerate edges deleted.
    pub relators: Vec<Vec<Letter>>,
}

impl GroupPresentation {
    /// The abelianization, as `Z^betti ⊕ torsion`.
    pub fn abelianization(&self) -> HomologyGroup {
        let mut m = SparseMatrix::zero(self.relators.len(), self.generators.len());
        for (r, word) in self.relators.iter().enumerate() {
            for l in word {
                m.add(r, l.generator, if l.inverse { -1 } else { 1 });
            }
        }
        let snf = smith_normal_form(&m);
        HomologyGroup {
            degree: 1,
            betti: self.generators.len() - snf.rank,
            torsion: snf.torsion(),
        }
    }

    pub fn relator_strings(&self) -> Vec<String> {
        self.relators
            .iter()
            .map(|w| {
                if w.is_empty() {
                    return "1".to_string();
                }
                w.iter()
                    .map(|l| {
                        let g = &self.generators[l.generator];
                        if l.inverse {
                            format!("{g}^-1")
                        } else {
                            g.clone()
                        }
                    })
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect()
    }
}

/// Edge-path presentation of `π_1(x, basepoint)` from levels 0 to 2.
pub fn pi1_presentation(x: &TruncatedSimplicialSet, basepoint: usize) -> Result<GroupPresentation> {
    if x.depth() < 2 {
        return Err(Error::Truncation { required: 2, available: x.depth() });
    }
    if basepoint >= x.count(0) {
        return Err(Error::Precondition(format!("basepoint {basepoint} is not a vertex")));
    }
    let edges: Vec<usize> = x.nondegenerate(1);
    let mut incident: Vec<Vec<(usize, usize)>> = vec![Vec::new(); x.count(0)];
    for &e in &edges {
        let (a, b) = (x.face(1, 1, e), x.face(1, 0, e));
        incident[a].push((e, b));
        incident[b].push((e, a));
    }
    let mut reached = vec![false; x.count(0)];
    let mut tree = vec![false; x.count(1)];
    reached[basepoint] = true;
    let mut queue = VecDeque::from([basepoint]);
    while let Some(v) = queue.pop_front() {
        for &(e, w) in &incident[v] {
            if !reached[w] {
                reached[w] = true;
                tree[e] = true;
                queue.push_back(w);
            }
        }
    }
    let mut generator_of = vec![None; x.count(1)];
    let mut generators = Vec::new();
    let mut gen_edges = Vec::new();
    for &e in &edges {
        if !tree[e] && reached[x.face(1, 1, e)] {
            generator_of[e] = Some(generators.len());
            generators.push(format!("e{e}"));
            gen_edges.push(e);
        }
    }
    let letter = |e: usize, inverse: bool| generator_of[e].map(|generator| Letter { generator, inverse });
    let relators = x
        .nondegenerate(2)
        .into_iter()
        .filter(|&s| reached[x.face(1, 0, x.face(2, 0, s))])
        .map(|s| {
            [letter(x.face(2, 2, s), false), letter(x.face(2, 0, s), false), letter(x.face(2, 1, s), true)]
                .into_iter()
                .flatten()
                .collect()
        })
        .collect();
    Ok(GroupPresentation {
        basepoint,
        generators,
        edges: gen_edges,
        relators,
    })
}

/// `Z^betti ⊕ torsion` written out, e.g. `Z ⊕ Z/2`.
pub fn describe_group(g: &HomologyGroup) -> String {
    let mut parts: Vec<String> = Vec::new();
    match g.betti {
        0 => {}
        1 => parts.push("Z".into()),
        b => parts.push(format!("Z^{b}")),
    }
    parts.extend(g.torsion.iter().map(|t: &BigInt| format!("Z/{t}")));
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" ⊕ ")
    }
}
