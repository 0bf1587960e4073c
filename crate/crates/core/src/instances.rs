//! Canonical instance catalog: each entry is a named builder with a
//! provenance note and a machine-runnable list of expected checks.

use thiserror::Error;

use crate::crossed::CrossedModule;
use crate::format;
use crate::group::{FiniteGroup, GroupAction, Subgroup};
use crate::orbit::{orbit_category_of_group, InstanceMetadata, OrbitError, OrbitInstance};
use crate::preorder::{
    cosieve_from_duality, Cosieve, EquivariantPreorder, SelfDuality, SubgroupPresheaf,
};
use crate::report::{CheckRecord, Report};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InstanceError {
    #[error("unknown instance {0:?}")]
    UnknownInstance(String),
}

/// One expected check of a catalog entry. `run_expected_checks` records a
/// pass exactly when the stated expectation is met, so deliberately
/// negative expectations (a failing tubular condition) still report green.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExpectedCheck {
    Validators,
    Lemmas,
    InducedCosieveEmpty,
    InducedCosieveEqualsOrder,
    Tubular { expect_pass: bool },
    Equivalence,
    Congruence,
    HoDescent,
    DualityFunctor,
    DualRefused,
    CategoryLaws,
    Monic,
    Oracle,
    HomCount {
        from: &'static str,
        to: &'static str,
        count: usize,
    },
    HoClassCount {
        from: &'static str,
        to: &'static str,
        count: usize,
    },
    RoundTrip,
}

pub struct CatalogEntry {
    pub name: &'static str,
    pub provenance: &'static str,
    pub expected: &'static [ExpectedCheck],
}

use ExpectedCheck::*;

pub const CATALOG: &[CatalogEntry] = &[
    CatalogEntry {
        name: "trivial",
        provenance: "one point over the trivial group; every structure is forced",
        expected: &[
            Validators,
            Lemmas,
            InducedCosieveEqualsOrder,
            Tubular { expect_pass: true },
            Equivalence,
            Congruence,
            HoDescent,
            DualityFunctor,
            HoClassCount { from: "pt", to: "pt", count: 1 },
            CategoryLaws,
            Monic,
            RoundTrip,
        ],
    },
    CatalogEntry {
        name: "z6-two-normals",
        provenance: "Z6 acting trivially on two points carrying the normal subgroups \
                     <2> and <3>; the duality swaps them",
        expected: &[
            Validators,
            Lemmas,
            Tubular { expect_pass: true },
            Equivalence,
            Congruence,
            HoDescent,
            DualityFunctor,
            HoClassCount { from: "H", to: "H", count: 1 },
            HoClassCount { from: "K", to: "K", count: 1 },
            HomCount { from: "H", to: "H", count: 2 },
            HomCount { from: "K", to: "K", count: 3 },
            CategoryLaws,
            RoundTrip,
        ],
    },
    CatalogEntry {
        name: "z30-primes",
        provenance: "finite stand-in for the integers acting on prime-indexed points: \
                     Z30 with carriers <2>, <3>, <5>; distinct carriers generate \
                     everything, so the induced cosieve is empty",
        expected: &[
            Validators,
            Lemmas,
            InducedCosieveEmpty,
            Tubular { expect_pass: true },
            Equivalence,
            Congruence,
            DualityFunctor,
            CategoryLaws,
            RoundTrip,
        ],
    },
    CatalogEntry {
        name: "s3-collapse",
        provenance: "one point over S3 carrying the alternating subgroup; the homotopy \
                     quotient splits the two cosets by sign",
        expected: &[
            Validators,
            Lemmas,
            Tubular { expect_pass: true },
            Equivalence,
            Congruence,
            HoDescent,
            DualityFunctor,
            HomCount { from: "pt", to: "pt", count: 2 },
            HoClassCount { from: "pt", to: "pt", count: 2 },
            CategoryLaws,
            Monic,
            RoundTrip,
        ],
    },
    CatalogEntry {
        name: "s3-indiscrete",
        provenance: "two indiscrete points over S3, both carrying the alternating \
                     subgroup; A3 only generates itself, so the induced cosieve is \
                     empty and every hom set collapses to one class",
        expected: &[
            Validators,
            Lemmas,
            InducedCosieveEmpty,
            Tubular { expect_pass: true },
            Equivalence,
            Congruence,
            HoDescent,
            DualityFunctor,
            HomCount { from: "a", to: "b", count: 2 },
            HoClassCount { from: "a", to: "b", count: 1 },
            HoClassCount { from: "a", to: "a", count: 1 },
            RoundTrip,
        ],
    },
    CatalogEntry {
        name: "s3-isotropy",
        provenance: "S3 acting on the cosets of a transposition subgroup; carriers are \
                     the point stabilizers",
        expected: &[
            Validators,
            HomCount { from: "c0", to: "c0", count: 1 },
            HomCount { from: "c0", to: "c1", count: 1 },
            HomCount { from: "c2", to: "c1", count: 1 },
            CategoryLaws,
            Monic,
            RoundTrip,
        ],
    },
    CatalogEntry {
        name: "s3-orbit",
        provenance: "all subgroups of S3 under reverse inclusion with the conjugation \
                     action; hom sets match brute-force equivariant-map counts",
        expected: &[
            Validators,
            Oracle,
            HomCount { from: "A3", to: "A3", count: 2 },
            HomCount { from: "<(1 2)>", to: "<(1 2)>", count: 1 },
            CategoryLaws,
            Monic,
            RoundTrip,
        ],
    },
    CatalogEntry {
        name: "z4-orbit",
        provenance: "all subgroups of Z4 under reverse inclusion; the action is \
                     trivial since Z4 is abelian",
        expected: &[Validators, Oracle, CategoryLaws, RoundTrip],
    },
    CatalogEntry {
        name: "s3-orbit-dual",
        provenance: "the S3 subgroup lattice with the order-reversing duality that \
                     swaps top and bottom and fixes the middle layer; the tubular \
                     condition fails, so the duality lift is correctly refused",
        expected: &[
            Validators,
            Lemmas,
            Tubular { expect_pass: false },
            DualRefused,
            Equivalence,
            Congruence,
            HoDescent,
            CategoryLaws,
            RoundTrip,
        ],
    },
];

pub fn catalog() -> &'static [CatalogEntry] {
    CATALOG
}

pub fn entry(name: &str) -> Result<&'static CatalogEntry, InstanceError> {
    CATALOG
        .iter()
        .find(|e| e.name == name)
        .ok_or_else(|| InstanceError::UnknownInstance(name.to_string()))
}

/// Builds the named instance. Every instance this returns passes
/// `OrbitInstance::validate`.
pub fn build(name: &str) -> Result<OrbitInstance, InstanceError> {
    let inst = match name {
        "trivial" => build_trivial(),
        "z6-two-normals" => build_z6_two_normals(),
        "z30-primes" => build_z30_primes(),
        "s3-collapse" => build_s3_collapse(),
        "s3-indiscrete" => build_s3_indiscrete(),
        "s3-isotropy" => build_s3_isotropy(),
        "s3-orbit" => build_s3_orbit(),
        "z4-orbit" => build_z4_orbit(),
        "s3-orbit-dual" => build_s3_orbit_dual(),
        _ => return Err(InstanceError::UnknownInstance(name.to_string())),
    };
    Ok(inst)
}

fn meta(name: &str) -> InstanceMetadata {
    InstanceMetadata {
        name: name.to_string(),
        provenance: entry(name)
            .map(|e| e.provenance.split_whitespace().collect::<Vec<_>>().join(" "))
            .unwrap_or_default(),
    }
}

fn build_trivial() -> OrbitInstance {
    let cm = CrossedModule::conjugation(FiniteGroup::trivial());
    let action = GroupAction::trivial(cm.cells(), 1);
    let preorder =
        EquivariantPreorder::new(vec!["pt".into()], vec![vec![true]], action).unwrap();
    let presheaf = SubgroupPresheaf::new(cm.source(), 1, vec![vec![0]]).unwrap();
    let duality = SelfDuality::identity(1);
    let cosieve = cosieve_from_duality(cm.source(), &preorder, &presheaf, &duality);
    OrbitInstance {
        cm,
        preorder,
        presheaf,
        duality: Some(duality),
        cosieve: Some(cosieve),
        metadata: meta("trivial"),
    }
}

fn build_z6_two_normals() -> OrbitInstance {
    let z6 = FiniteGroup::cyclic(6);
    let cm = CrossedModule::conjugation(z6.clone());
    let action = GroupAction::trivial(&z6, 2);
    let preorder = EquivariantPreorder::new(
        vec!["H".into(), "K".into()],
        vec![vec![true, false], vec![false, true]],
        action,
    )
    .unwrap();
    let presheaf = SubgroupPresheaf::new(&z6, 2, vec![vec![0, 2, 4], vec![0, 3]]).unwrap();
    let duality = SelfDuality::new(2, vec![1, 0]).unwrap();
    let cosieve = cosieve_from_duality(&z6, &preorder, &presheaf, &duality);
    OrbitInstance {
        cm,
        preorder,
        presheaf,
        duality: Some(duality),
        cosieve: Some(cosieve),
        metadata: meta("z6-two-normals"),
    }
}

fn build_z30_primes() -> OrbitInstance {
    let z30 = FiniteGroup::cyclic(30);
    let cm = CrossedModule::conjugation(z30.clone());
    let action = GroupAction::trivial(&z30, 3);
    let eye = |n: usize| {
        (0..n)
            .map(|i| (0..n).map(|j| i == j).collect())
            .collect::<Vec<Vec<bool>>>()
    };
    let preorder = EquivariantPreorder::new(
        vec!["2".into(), "3".into(), "5".into()],
        eye(3),
        action,
    )
    .unwrap();
    let carriers = [2usize, 3, 5]
        .iter()
        .map(|&p| crate::group::generate_subgroup(&z30, &[p]).members().to_vec())
        .collect();
    let presheaf = SubgroupPresheaf::new(&z30, 3, carriers).unwrap();
    let duality = SelfDuality::identity(3);
    let cosieve = cosieve_from_duality(&z30, &preorder, &presheaf, &duality);
    OrbitInstance {
        cm,
        preorder,
        presheaf,
        duality: Some(duality),
        cosieve: Some(cosieve),
        metadata: meta("z30-primes"),
    }
}

fn build_s3_collapse() -> OrbitInstance {
    let s3 = FiniteGroup::symmetric(3);
    let cm = CrossedModule::conjugation(s3.clone());
    let action = GroupAction::trivial(&s3, 1);
    let preorder =
        EquivariantPreorder::new(vec!["pt".into()], vec![vec![true]], action).unwrap();
    let presheaf = SubgroupPresheaf::new(&s3, 1, vec![vec![0, 3, 4]]).unwrap();
    let duality = SelfDuality::identity(1);
    let cosieve = Cosieve::new(1, vec![vec![true]]).unwrap();
    OrbitInstance {
        cm,
        preorder,
        presheaf,
        duality: Some(duality),
        cosieve: Some(cosieve),
        metadata: meta("s3-collapse"),
    }
}

fn build_s3_indiscrete() -> OrbitInstance {
    let s3 = FiniteGroup::symmetric(3);
    let cm = CrossedModule::conjugation(s3.clone());
    let action = GroupAction::trivial(&s3, 2);
    let preorder = EquivariantPreorder::new(
        vec!["a".into(), "b".into()],
        vec![vec![true, true], vec![true, true]],
        action,
    )
    .unwrap();
    let presheaf =
        SubgroupPresheaf::new(&s3, 2, vec![vec![0, 3, 4], vec![0, 3, 4]]).unwrap();
    let duality = SelfDuality::identity(2);
    let cosieve = cosieve_from_duality(&s3, &preorder, &presheaf, &duality);
    OrbitInstance {
        cm,
        preorder,
        presheaf,
        duality: Some(duality),
        cosieve: Some(cosieve),
        metadata: meta("s3-indiscrete"),
    }
}

fn build_s3_isotropy() -> OrbitInstance {
    let s3 = FiniteGroup::symmetric(3);
    let h = Subgroup::new(&s3, vec![0, 2]).unwrap();
    let cs = crate::group::cosets(&s3, &h);
    let perms: Vec<Vec<usize>> = s3
        .elements()
        .map(|g| {
            cs.iter()
                .map(|coset| {
                    let mut moved: Vec<usize> = coset.iter().map(|&c| s3.mul(g, c)).collect();
                    moved.sort_unstable();
                    cs.iter().position(|c| *c == moved).unwrap()
                })
                .collect()
        })
        .collect();
    let action = GroupAction::new(&s3, cs.len(), perms).unwrap();
    let labels = (0..cs.len()).map(|i| format!("c{i}")).collect();
    let (preorder, presheaf) = crate::preorder::isotropy_presheaf(&s3, &action, labels);
    OrbitInstance {
        cm: CrossedModule::conjugation(s3),
        preorder,
        presheaf,
        duality: None,
        cosieve: None,
        metadata: meta("s3-isotropy"),
    }
}

fn s3_subgroup_labels() -> Vec<String> {
    ["1", "<(2 3)>", "<(1 2)>", "<(1 3)>", "A3", "S3"]
        .into_iter()
        .map(String::from)
        .collect()
}

fn build_s3_orbit() -> OrbitInstance {
    let mut inst = orbit_category_of_group(FiniteGroup::symmetric(3));
    inst.preorder = relabel(&inst.preorder, s3_subgroup_labels());
    inst.metadata = meta("s3-orbit");
    inst
}

fn build_z4_orbit() -> OrbitInstance {
    let mut inst = orbit_category_of_group(FiniteGroup::cyclic(4));
    inst.preorder = relabel(
        &inst.preorder,
        vec!["1".into(), "<2>".into(), "Z4".into()],
    );
    inst.metadata = meta("z4-orbit");
    inst
}

fn build_s3_orbit_dual() -> OrbitInstance {
    let mut inst = build_s3_orbit();
    // order-reversal of the subgroup lattice: swap bottom and top, fix the
    // incomparable middle layer (forced by conjugation-equivariance)
    let duality = SelfDuality::new(6, vec![5, 1, 2, 3, 4, 0]).unwrap();
    let cosieve = cosieve_from_duality(inst.cm.source(), &inst.preorder, &inst.presheaf, &duality);
    inst.duality = Some(duality);
    inst.cosieve = Some(cosieve);
    inst.metadata = meta("s3-orbit-dual");
    inst
}

fn relabel(pre: &EquivariantPreorder, labels: Vec<String>) -> EquivariantPreorder {
    EquivariantPreorder::new(labels, pre.leq_matrix().clone(), pre.action().clone()).unwrap()
}

/// Runs the entry's expected-check list and aggregates one record per
/// check, where pass means the stated expectation was met.
pub fn run_expected_checks(name: &str) -> Result<Report, InstanceError> {
    let entry = entry(name)?;
    let inst = build(name)?;
    let mut report = Report::new();
    for check in entry.expected {
        run_check(&inst, *check, &mut report);
    }
    Ok(report)
}

fn orbit_result_to_report(report: &mut Report, id: &str, result: Result<Report, OrbitError>) {
    match result {
        Ok(r) => report.extend(r),
        Err(e) => report.push(CheckRecord::fail(id, vec![e.to_string()])),
    }
}

fn run_check(inst: &OrbitInstance, check: ExpectedCheck, report: &mut Report) {
    match check {
        Validators => report.extend(inst.validate()),
        Lemmas => orbit_result_to_report(report, "lemma", inst.check_lemmas()),
        InducedCosieveEmpty | InducedCosieveEqualsOrder => {
            let duality = inst.duality.as_ref().expect("entry ships a duality");
            let induced = cosieve_from_duality(
                inst.cm.source(),
                &inst.preorder,
                &inst.presheaf,
                duality,
            );
            if matches!(check, InducedCosieveEmpty) {
                let witnesses = if induced.is_empty() {
                    vec![]
                } else {
                    vec!["induced cosieve is nonempty".to_string()]
                };
                report.check("expected.induced-cosieve-empty", witnesses);
            } else {
                let witnesses = if induced.matrix() == inst.preorder.leq_matrix() {
                    vec![]
                } else {
                    vec!["induced cosieve differs from the order".to_string()]
                };
                report.check("expected.induced-cosieve-equals-order", witnesses);
            }
        }
        Tubular { expect_pass } => match inst.check_tubular() {
            Ok(r) => {
                let actual = r.passed();
                let witnesses = if actual == expect_pass {
                    vec![]
                } else {
                    vec![format!(
                        "tubular condition {} but expected the opposite",
                        if actual { "holds" } else { "fails" }
                    )]
                };
                report.check("expected.tubular", witnesses);
            }
            Err(e) => report.push(CheckRecord::fail("expected.tubular", vec![e.to_string()])),
        },
        Equivalence => {
            let witnesses = match inst.ho_table() {
                Ok(_) => vec![],
                Err(e) => vec![e.to_string()],
            };
            report.check("ho.equivalence", witnesses);
        }
        Congruence => orbit_result_to_report(report, "ho.congruence", inst.check_congruence()),
        HoDescent => orbit_result_to_report(report, "ho.action-descends", inst.check_ho_descent()),
        DualityFunctor => {
            orbit_result_to_report(report, "duality.functor", inst.check_duality_functor())
        }
        DualRefused => {
            let class = (0..inst.preorder.size())
                .flat_map(|x| (0..inst.preorder.size()).map(move |y| (x, y)))
                .find_map(|(x, y)| inst.ho_hom(x, y).ok().and_then(|c| c.into_iter().next()))
                .expect("instance has at least one hom class");
            let witnesses = match inst.dual_morphism(&class) {
                Err(OrbitError::TubularConditionFailed) => vec![],
                Err(e) => vec![format!("unexpected error: {e}")],
                Ok(_) => vec!["dual lift ran despite the failing hypothesis".to_string()],
            };
            report.check("expected.dual-refused", witnesses);
        }
        CategoryLaws => report.extend(inst.check_category_laws()),
        Monic => report.extend(inst.check_monic()),
        Oracle => report.extend(inst.check_oracle()),
        HomCount { from, to, count } => {
            let id = format!("expected.hom-count({from},{to})");
            match (inst.object_index(from), inst.object_index(to)) {
                (Ok(x), Ok(y)) => {
                    let actual = inst.hom(x, y).len();
                    let witnesses = if actual == count {
                        vec![]
                    } else {
                        vec![format!("expected {count} morphisms, found {actual}")]
                    };
                    report.check(&id, witnesses);
                }
                _ => report.push(CheckRecord::fail(id, vec!["unknown object label".into()])),
            }
        }
        HoClassCount { from, to, count } => {
            let id = format!("expected.ho-class-count({from},{to})");
            match (inst.object_index(from), inst.object_index(to)) {
                (Ok(x), Ok(y)) => match inst.ho_hom(x, y) {
                    Ok(classes) => {
                        let witnesses = if classes.len() == count {
                            vec![]
                        } else {
                            vec![format!("expected {count} classes, found {}", classes.len())]
                        };
                        report.check(&id, witnesses);
                    }
                    Err(e) => report.push(CheckRecord::fail(id, vec![e.to_string()])),
                },
                _ => report.push(CheckRecord::fail(id, vec!["unknown object label".into()])),
            }
        }
        RoundTrip => {
            let emitted = format::emit_instance(inst);
            let witnesses = match format::parse_instance(&emitted) {
                Ok(parsed) => {
                    let mut w = vec![];
                    if &parsed != inst {
                        w.push("re-parsed instance differs".to_string());
                    }
                    if format::emit_instance(&parsed) != emitted {
                        w.push("second emission differs byte-wise".to_string());
                    }
                    w
                }
                Err(e) => vec![format!("re-parse failed: {e}")],
            };
            report.check("expected.round-trip", witnesses);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_is_nonempty_and_buildable() {
        assert!(CATALOG.len() >= 5);
        for entry in CATALOG {
            let inst = build(entry.name).unwrap();
            assert!(
                inst.validate().passed(),
                "instance {} fails validation",
                entry.name
            );
            assert_eq!(inst.metadata.name, entry.name);
        }
    }

    #[test]
    fn unknown_name_is_an_error() {
        assert!(matches!(
            build("does-not-exist"),
            Err(InstanceError::UnknownInstance(_))
        ));
    }

    #[test]
    fn all_expected_checks_pass() {
        for entry in CATALOG {
            let report = run_expected_checks(entry.name).unwrap();
            assert!(
                report.passed(),
                "instance {} failed:\n{}",
                entry.name,
                report.render_text()
            );
        }
    }

    #[test]
    fn z6_cosets_and_classes() {
        let inst = build("z6-two-normals").unwrap();
        let h = inst.object_index("H").unwrap();
        let k = inst.object_index("K").unwrap();
        assert_eq!(inst.hom(h, h).len(), 2);
        assert_eq!(inst.hom(k, k).len(), 3);
        assert_eq!(inst.hom(h, k).len(), 0);
        assert_eq!(inst.ho_hom(h, h).unwrap().len(), 1);
        assert_eq!(inst.ho_hom(k, k).unwrap().len(), 1);
    }

    #[test]
    fn s3_collapse_sign_classes() {
        let inst = build("s3-collapse").unwrap();
        let classes = inst.ho_hom(0, 0).unwrap();
        assert_eq!(classes.len(), 2);
        // identity class holds the even cosets, the other the odd ones
        assert_eq!(classes[0].reps, vec![0]);
        assert_eq!(classes[1].reps, vec![1]);
        // dual of the nonidentity class is itself
        let dual = inst.dual_morphism(&classes[1]).unwrap();
        assert_eq!(dual, classes[1]);
        let dual_id = inst.dual_morphism(&classes[0]).unwrap();
        assert_eq!(dual_id, classes[0]);
    }

    #[test]
    fn s3_orbit_dual_refuses_lift() {
        let inst = build("s3-orbit-dual").unwrap();
        assert!(!inst.check_tubular().unwrap().passed());
        let class = inst.ho_hom(0, 0).unwrap().remove(0);
        assert!(matches!(
            inst.dual_morphism(&class),
            Err(OrbitError::TubularConditionFailed)
        ));
    }

    #[test]
    fn empty_cosieve_collapses_hom_sets() {
        let inst = build("s3-indiscrete").unwrap();
        for x in 0..2 {
            for y in 0..2 {
                let classes = inst.ho_hom(x, y).unwrap();
                assert!(classes.len() <= 1);
            }
        }
    }
}
