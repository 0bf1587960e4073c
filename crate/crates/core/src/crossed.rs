//! Crossed modules: a homomorphism `t: G -> A` together with an action of
//! `A` on `G` by automorphisms, subject to equivariance of `t` and the
//! Peiffer identity. This is the standard algebraic encoding of a strict
//! 2-group; all constructions downstream consume only `(G, A, t, act)`.

use thiserror::Error;

use crate::group::{FiniteGroup, GroupAction, GroupHom};
use crate::report::Report;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CrossedModuleError {
    #[error("t-map has {got} entries for source group of order {order}")]
    BadTargetMapLength { order: usize, got: usize },
    #[error("t-map value {0} out of range for the 1-cell group")]
    TargetValueOutOfRange(usize),
    #[error("action table has {got} permutations for 1-cell group of order {order}")]
    BadActionLength { order: usize, got: usize },
    #[error("action permutation for element {element} has wrong length")]
    BadPermutationLength { element: usize },
    #[error("action value {value} out of range for the source group")]
    ActionValueOutOfRange { value: usize },
}

/// A crossed module. `new` checks shapes only; `validate` checks the axioms
/// and reports every violation with witnesses, so deliberately broken
/// instances can be constructed and diagnosed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossedModule {
    source: FiniteGroup,
    cells: FiniteGroup,
    target_map: GroupHom,
    action: GroupAction,
}

impl CrossedModule {
    pub fn new(
        source: FiniteGroup,
        cells: FiniteGroup,
        target_map: GroupHom,
        action: GroupAction,
    ) -> Result<Self, CrossedModuleError> {
        if target_map.map().len() != source.order() {
            return Err(CrossedModuleError::BadTargetMapLength {
                order: source.order(),
                got: target_map.map().len(),
            });
        }
        for &v in target_map.map() {
            if v >= cells.order() {
                return Err(CrossedModuleError::TargetValueOutOfRange(v));
            }
        }
        if action.perms().len() != cells.order() {
            return Err(CrossedModuleError::BadActionLength {
                order: cells.order(),
                got: action.perms().len(),
            });
        }
        for (h, perm) in action.perms().iter().enumerate() {
            if perm.len() != source.order() {
                return Err(CrossedModuleError::BadPermutationLength { element: h });
            }
            for &v in perm {
                if v >= source.order() {
                    return Err(CrossedModuleError::ActionValueOutOfRange { value: v });
                }
            }
        }
        Ok(CrossedModule {
            source,
            cells,
            target_map,
            action,
        })
    }

    /// `G = A`, `t = id`, action by conjugation.
    pub fn conjugation(group: FiniteGroup) -> Self {
        let t = GroupHom::identity(&group);
        let perms = group
            .elements()
            .map(|h| group.elements().map(|g| group.conjugate(h, g)).collect())
            .collect();
        let action = GroupAction::from_raw(group.order(), perms);
        CrossedModule::new(group.clone(), group, t, action).unwrap()
    }

    /// The source group `G` of 2-cells.
    pub fn source(&self) -> &FiniteGroup {
        &self.source
    }

    /// The group `A` of 1-cells.
    pub fn cells(&self) -> &FiniteGroup {
        &self.cells
    }

    /// `t(gamma)`.
    pub fn target_of(&self, gamma: usize) -> usize {
        self.target_map.apply(gamma)
    }

    /// `a(h)(gamma)`.
    pub fn act(&self, h: usize, gamma: usize) -> usize {
        self.action.apply(h, gamma)
    }

    pub fn target_map(&self) -> &GroupHom {
        &self.target_map
    }

    pub fn action(&self) -> &GroupAction {
        &self.action
    }

    /// Image of a subgroup-like element set under `a(h)`, sorted.
    pub fn act_on_set(&self, h: usize, set: &[usize]) -> Vec<usize> {
        let mut out: Vec<usize> = set.iter().map(|&g| self.act(h, g)).collect();
        out.sort_unstable();
        out
    }

    /// Checks every axiom over all element tuples:
    /// - `t` is a homomorphism,
    /// - the action is a group action and each `a(h)` is an automorphism,
    /// - equivariance `t(a(h)(gamma)) = h t(gamma) h^{-1}`,
    /// - Peiffer `gamma alpha gamma^{-1} = a(t(gamma))(alpha)`.
    pub fn validate(&self) -> Report {
        let mut report = Report::new();
        let g = &self.source;
        let a = &self.cells;
        let glabel = |x: usize| g.label(x).to_string();
        let alabel = |x: usize| a.label(x).to_string();

        let mut hom_witnesses = Vec::new();
        for x in g.elements() {
            for y in g.elements() {
                let lhs = self.target_of(g.mul(x, y));
                let rhs = a.mul(self.target_of(x), self.target_of(y));
                if lhs != rhs {
                    hom_witnesses.push(format!(
                        "t({} * {}) = {} but t({}) t({}) = {}",
                        glabel(x),
                        glabel(y),
                        alabel(lhs),
                        glabel(x),
                        glabel(y),
                        alabel(rhs)
                    ));
                }
            }
        }
        report.check("crossed.t-homomorphism", hom_witnesses);

        let mut action_witnesses = Vec::new();
        match self.action.validate(a) {
            Ok(()) => {}
            Err(e) => action_witnesses.push(e.to_string()),
        }
        report.check("crossed.action-functorial", action_witnesses);

        let mut auto_witnesses = Vec::new();
        for h in a.elements() {
            for x in g.elements() {
                for y in g.elements() {
                    let lhs = self.act(h, g.mul(x, y));
                    let rhs = g.mul(self.act(h, x), self.act(h, y));
                    if lhs != rhs {
                        auto_witnesses.push(format!(
                            "a({})({} * {}) = {} != {}",
                            alabel(h),
                            glabel(x),
                            glabel(y),
                            glabel(lhs),
                            glabel(rhs)
                        ));
                    }
                }
            }
        }
        report.check("crossed.action-automorphisms", auto_witnesses);

        let mut equi_witnesses = Vec::new();
        for h in a.elements() {
            for gamma in g.elements() {
                let lhs = self.target_of(self.act(h, gamma));
                let rhs = a.conjugate(h, self.target_of(gamma));
                if lhs != rhs {
                    equi_witnesses.push(format!(
                        "t(a({})({})) = {} but {} t({}) {}^-1 = {}",
                        alabel(h),
                        glabel(gamma),
                        alabel(lhs),
                        alabel(h),
                        glabel(gamma),
                        alabel(h),
                        alabel(rhs)
                    ));
                }
            }
        }
        report.check("crossed.equivariance", equi_witnesses);

        let mut peiffer_witnesses = Vec::new();
        for gamma in g.elements() {
            for alpha in g.elements() {
                let lhs = g.conjugate(gamma, alpha);
                let rhs = self.act(self.target_of(gamma), alpha);
                if lhs != rhs {
                    peiffer_witnesses.push(format!(
                        "{} {} {}^-1 = {} but a(t({}))({}) = {}",
                        glabel(gamma),
                        glabel(alpha),
                        glabel(gamma),
                        glabel(lhs),
                        glabel(gamma),
                        glabel(alpha),
                        glabel(rhs)
                    ));
                }
            }
        }
        report.check("crossed.peiffer", peiffer_witnesses);

        report
    }
}

/// The action of `gamma in G` on a set acted on by `A`, through the target
/// map: `gamma . x := t(gamma) x`.
pub fn source_action(cm: &CrossedModule, action: &GroupAction, gamma: usize, x: usize) -> usize {
    action.apply(cm.target_of(gamma), x)
}

/// Classical consequences of the axioms, assertable by scan: the image of
/// `t` is normal in `A` and the kernel of `t` is central in `G`.
pub fn check_classical_consequences(cm: &CrossedModule) -> Report {
    let mut report = Report::new();
    let g = cm.source();
    let a = cm.cells();

    let image: std::collections::BTreeSet<usize> =
        g.elements().map(|x| cm.target_of(x)).collect();
    let mut normal_witnesses = Vec::new();
    for h in a.elements() {
        for &v in &image {
            if !image.contains(&a.conjugate(h, v)) {
                normal_witnesses.push(format!(
                    "{} {} {}^-1 escapes im(t)",
                    a.label(h),
                    a.label(v),
                    a.label(h)
                ));
            }
        }
    }
    report.check("crossed.image-normal", normal_witnesses);

    let kernel: Vec<usize> = g
        .elements()
        .filter(|&x| cm.target_of(x) == a.identity())
        .collect();
    let mut central_witnesses = Vec::new();
    for &k in &kernel {
        for x in g.elements() {
            if g.mul(k, x) != g.mul(x, k) {
                central_witnesses.push(format!(
                    "kernel element {} does not commute with {}",
                    g.label(k),
                    g.label(x)
                ));
            }
        }
    }
    report.check("crossed.kernel-central", central_witnesses);

    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::Subgroup;

    #[test]
    fn conjugation_modules_are_valid() {
        for group in [
            FiniteGroup::trivial(),
            FiniteGroup::cyclic(6),
            FiniteGroup::symmetric(3),
        ] {
            let cm = CrossedModule::conjugation(group);
            assert!(cm.validate().passed());
            assert!(check_classical_consequences(&cm).passed());
        }
    }

    #[test]
    fn trivial_source_group_is_valid() {
        let cm = CrossedModule::new(
            FiniteGroup::trivial(),
            FiniteGroup::symmetric(3),
            GroupHom::from_raw(vec![0]),
            GroupAction::from_raw(1, vec![vec![0]; 6]),
        )
        .unwrap();
        assert!(cm.validate().passed());
    }

    #[test]
    fn abelian_conjugation_acts_trivially() {
        let cm = CrossedModule::conjugation(FiniteGroup::cyclic(6));
        for h in 0..6 {
            for g in 0..6 {
                assert_eq!(cm.act(h, g), g);
            }
        }
    }

    #[test]
    fn s3_conjugation_action() {
        let cm = CrossedModule::conjugation(FiniteGroup::symmetric(3));
        // a((1 2 3)) maps (1 2) to (2 3)
        assert_eq!(cm.act(3, 2), 1);
    }

    #[test]
    fn source_action_through_target() {
        let s3 = FiniteGroup::symmetric(3);
        let cm = CrossedModule::conjugation(s3.clone());
        // conjugation action on the set of order-2 subgroups {<(2 3)>, <(1 2)>, <(1 3)>}
        let subs = [
            Subgroup::new(&s3, vec![0, 1]).unwrap(),
            Subgroup::new(&s3, vec![0, 2]).unwrap(),
            Subgroup::new(&s3, vec![0, 5]).unwrap(),
        ];
        let perms = s3
            .elements()
            .map(|g| {
                subs.iter()
                    .map(|h| {
                        let image = crate::group::conjugate_subgroup(&s3, g, h);
                        subs.iter().position(|k| *k == image).unwrap()
                    })
                    .collect()
            })
            .collect();
        let action = GroupAction::new(&s3, 3, perms).unwrap();
        // identity of G fixes everything
        for x in 0..3 {
            assert_eq!(source_action(&cm, &action, 0, x), x);
        }
        // (1 2 3) sends <(1 2)> (index 1) to <(2 3)> (index 0)
        assert_eq!(source_action(&cm, &action, 3, 1), 0);
    }

    #[test]
    fn mutated_action_entry_breaks_peiffer() {
        let s3 = FiniteGroup::symmetric(3);
        let good = CrossedModule::conjugation(s3.clone());
        let mut perms = good.action().perms().clone();
        // make a((1 2 3)) fix (1 2) instead of sending it to (2 3)
        perms[3][2] = 2;
        let bad = CrossedModule::new(
            s3.clone(),
            s3,
            good.target_map().clone(),
            GroupAction::from_raw(6, perms),
        )
        .unwrap();
        let report = bad.validate();
        assert!(!report.passed());
        let failed: Vec<&str> = report.failures().map(|r| r.id.as_str()).collect();
        assert!(failed.contains(&"crossed.peiffer"));
        assert!(report.failures().all(|r| !r.witnesses.is_empty()));
    }

    #[test]
    fn mutated_target_entry_breaks_homomorphism() {
        let s3 = FiniteGroup::symmetric(3);
        let good = CrossedModule::conjugation(s3.clone());
        let mut map = good.target_map().map().to_vec();
        map[2] = 0; // t((1 2)) := e
        let bad = CrossedModule::new(
            s3.clone(),
            s3,
            GroupHom::from_raw(map),
            good.action().clone(),
        )
        .unwrap();
        let report = bad.validate();
        let failed: Vec<&str> = report.failures().map(|r| r.id.as_str()).collect();
        assert!(failed.contains(&"crossed.t-homomorphism"));
    }
}
