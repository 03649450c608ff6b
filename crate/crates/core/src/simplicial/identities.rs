use serde::{Deserialize, Serialize};

use super::sset::TruncatedSimplicialSet;

/// One failed instance of a simplicial identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityViolation {
    pub identity: String,
    pub level: usize,
    pub simplex: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub checked: usize,
    pub violations: Vec<IdentityViolation>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    fn record(&mut self, ok: bool, identity: impl FnOnce() -> String, level: usize, simplex: usize) {
        self.checked += 1;
        if !ok {
            self.violations.push(IdentityViolation {
                identity: identity(),
                level,
                simplex,
            });
        }
    }
}

/// Verifies the simplicial identities among generators on every simplex up
/// to the truncation. Since arbitrary operators act through a factorization
/// into generators, these identities are exactly functoriality.
pub fn check_simplicial_identities(x: &TruncatedSimplicialSet) -> IdentityReport {
    let mut report = IdentityReport::default();
    let depth = x.depth();

    // d_i d_j = d_{j-1} d_i for i < j
    for k in 2..=depth {
        for j in 1..=k {
            for i in 0..j {
                for s in 0..x.count(k) {
                    let lhs = x.face(k - 1, i, x.face(k, j, s));
                    let rhs = x.face(k - 1, j - 1, x.face(k, i, s));
                    report.record(lhs == rhs, || format!("d{i} d{j} = d{} d{i}", j - 1), k, s);
                }
            }
        }
    }
    if x.is_semi() {
        return report;
    }

    // s_i s_j = s_{j+1} s_i for i <= j
    for k in 0..depth.saturating_sub(1) {
        for j in 0..=k {
            for i in 0..=j {
                for s in 0..x.count(k) {
                    let lhs = x.degeneracy(k + 1, i, x.degeneracy(k, j, s));
                    let rhs = x.degeneracy(k + 1, j + 1, x.degeneracy(k, i, s));
                    report.record(lhs == rhs, || format!("s{i} s{j} = s{} s{i}", j + 1), k, s);
                }
            }
        }
    }

    // mixed identities, x at level k, s_j x at level k + 1
    for k in 0..depth {
        for j in 0..=k {
            for i in 0..=k + 1 {
                for s in 0..x.count(k) {
                    let lifted = x.degeneracy(k, j, s);
                    let lhs = x.face(k + 1, i, lifted);
                    let (ok, name) = if i < j {
                        let rhs = x.degeneracy(k - 1, j - 1, x.face(k, i, s));
                        (lhs == rhs, format!("d{i} s{j} = s{} d{i}", j - 1))
                    } else if i == j || i == j + 1 {
                        (lhs == s, format!("d{i} s{j} = id"))
                    } else {
                        let rhs = x.degeneracy(k - 1, j, x.face(k, i - 1, s));
                        (lhs == rhs, format!("d{i} s{j} = s{j} d{}", i - 1))
                    };
                    report.record(ok, || name, k, s);
                }
            }
        }
    }
    report
}
