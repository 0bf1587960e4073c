//! Group-equivariant preorders carrying a presheaf of subgroups, an optional
//! order-reversing self-duality, and an optional cosieve. The validators
//! check every axiom by full scan and report witnesses; the check_* suites
//! verify the normalizer and product lemmas and the tubular condition.

use thiserror::Error;

use crate::crossed::CrossedModule;
use crate::group::{
    generate_subgroup, is_subgroup_set, normalizer, product_set, FiniteGroup, GroupAction,
};
use crate::report::Report;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PreorderError {
    #[error("relation matrix is not {size}x{size}")]
    BadMatrixShape { size: usize },
    #[error("label list has {got} entries for {size} elements")]
    BadLabelCount { size: usize, got: usize },
    #[error("action permutations do not cover the element set")]
    BadActionShape,
    #[error("presheaf has {got} subgroups for {size} elements")]
    BadPresheafLength { size: usize, got: usize },
    #[error("presheaf member index {0} out of group range")]
    PresheafMemberOutOfRange(usize),
    #[error("presheaf carrier at element {0} is empty")]
    EmptyCarrier(usize),
    #[error("duality has {got} entries for {size} elements")]
    BadDualityLength { size: usize, got: usize },
    #[error("duality value {0} out of range")]
    DualityValueOutOfRange(usize),
}

/// A finite labelled preorder with an action of the 1-cell group on its
/// elements. The matrix is stored as given; validation rejects relations
/// that are not reflexive or transitive rather than closing them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivariantPreorder {
    labels: Vec<String>,
    leq: Vec<Vec<bool>>,
    action: GroupAction,
}

impl EquivariantPreorder {
    pub fn new(
        labels: Vec<String>,
        leq: Vec<Vec<bool>>,
        action: GroupAction,
    ) -> Result<Self, PreorderError> {
        let size = labels.len();
        if leq.len() != size || leq.iter().any(|row| row.len() != size) {
            return Err(PreorderError::BadMatrixShape { size });
        }
        if action.set_size() != size || action.perms().iter().any(|p| p.len() != size) {
            return Err(PreorderError::BadActionShape);
        }
        Ok(EquivariantPreorder { labels, leq, action })
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.leq[x][y]
    }

    /// Isomorphism in the preorder: mutual `leq`. Derived, never stored.
    pub fn sim(&self, x: usize, y: usize) -> bool {
        self.leq(x, y) && self.leq(y, x)
    }

    pub fn act(&self, g: usize, x: usize) -> usize {
        self.action.apply(g, x)
    }

    pub fn action(&self) -> &GroupAction {
        &self.action
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn leq_matrix(&self) -> &Vec<Vec<bool>> {
        &self.leq
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }
}

/// Assignment of a subgroup of the source group to each element, stored as
/// sorted member lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubgroupPresheaf {
    groups: Vec<Vec<usize>>,
}

impl SubgroupPresheaf {
    pub fn new(
        source: &FiniteGroup,
        size: usize,
        mut groups: Vec<Vec<usize>>,
    ) -> Result<Self, PreorderError> {
        if groups.len() != size {
            return Err(PreorderError::BadPresheafLength {
                size,
                got: groups.len(),
            });
        }
        for (x, set) in groups.iter_mut().enumerate() {
            set.sort_unstable();
            set.dedup();
            if set.is_empty() {
                return Err(PreorderError::EmptyCarrier(x));
            }
            for &m in set.iter() {
                if m >= source.order() {
                    return Err(PreorderError::PresheafMemberOutOfRange(m));
                }
            }
        }
        Ok(SubgroupPresheaf { groups })
    }

    pub fn at(&self, x: usize) -> &[usize] {
        &self.groups[x]
    }

    pub fn groups(&self) -> &Vec<Vec<usize>> {
        &self.groups
    }
}

/// An element-wise duality map `x -> x°`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelfDuality {
    dual: Vec<usize>,
}

impl SelfDuality {
    pub fn new(size: usize, dual: Vec<usize>) -> Result<Self, PreorderError> {
        if dual.len() != size {
            return Err(PreorderError::BadDualityLength {
                size,
                got: dual.len(),
            });
        }
        if let Some(&v) = dual.iter().find(|&&v| v >= size) {
            return Err(PreorderError::DualityValueOutOfRange(v));
        }
        Ok(SelfDuality { dual })
    }

    pub fn identity(size: usize) -> Self {
        SelfDuality {
            dual: (0..size).collect(),
        }
    }

    pub fn of(&self, x: usize) -> usize {
        self.dual[x]
    }

    pub fn map(&self) -> &[usize] {
        &self.dual
    }

    /// Whether `x°° = x` holds on the nose for every element.
    pub fn strict_involution(&self) -> bool {
        self.dual.iter().enumerate().all(|(x, &d)| self.dual[d] == x)
    }
}

/// A binary relation refining `leq`, closed under the group action and
/// under enlarging the right-hand side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cosieve {
    rel: Vec<Vec<bool>>,
}

impl Cosieve {
    pub fn new(size: usize, rel: Vec<Vec<bool>>) -> Result<Self, PreorderError> {
        if rel.len() != size || rel.iter().any(|row| row.len() != size) {
            return Err(PreorderError::BadMatrixShape { size });
        }
        Ok(Cosieve { rel })
    }

    pub fn contains(&self, x: usize, y: usize) -> bool {
        self.rel[x][y]
    }

    pub fn is_empty(&self) -> bool {
        self.rel.iter().all(|row| row.iter().all(|&b| !b))
    }

    pub fn matrix(&self) -> &Vec<Vec<bool>> {
        &self.rel
    }
}

pub fn validate_preorder(cells: &FiniteGroup, pre: &EquivariantPreorder) -> Report {
    let mut report = Report::new();
    let n = pre.size();

    let mut reflexive = Vec::new();
    for x in 0..n {
        if !pre.leq(x, x) {
            reflexive.push(format!("{} not below itself", pre.label(x)));
        }
    }
    report.check("preorder.reflexive", reflexive);

    let mut transitive = Vec::new();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if pre.leq(x, y) && pre.leq(y, z) && !pre.leq(x, z) {
                    transitive.push(format!(
                        "{} <= {} <= {} but not {} <= {}",
                        pre.label(x),
                        pre.label(y),
                        pre.label(z),
                        pre.label(x),
                        pre.label(z)
                    ));
                }
            }
        }
    }
    report.check("preorder.transitive", transitive);

    let mut action_ok = Vec::new();
    if let Err(e) = pre.action().validate(cells) {
        action_ok.push(e.to_string());
    }
    report.check("preorder.action-valid", action_ok);

    let mut monotone = Vec::new();
    for g in cells.elements() {
        for x in 0..n {
            for y in 0..n {
                if pre.leq(x, y) && !pre.leq(pre.act(g, x), pre.act(g, y)) {
                    monotone.push(format!(
                        "{} <= {} but {}.{} not <= {}.{}",
                        pre.label(x),
                        pre.label(y),
                        cells.label(g),
                        pre.label(x),
                        cells.label(g),
                        pre.label(y)
                    ));
                }
            }
        }
    }
    report.check("preorder.action-monotone", monotone);

    report
}

pub fn validate_presheaf(
    cm: &CrossedModule,
    pre: &EquivariantPreorder,
    sheaf: &SubgroupPresheaf,
) -> Report {
    let mut report = Report::new();
    let n = pre.size();
    let g = cm.source();

    let mut closed = Vec::new();
    for x in 0..n {
        if !is_subgroup_set(g, sheaf.at(x)) {
            closed.push(format!("carrier of {} is not a subgroup", pre.label(x)));
        }
    }
    report.check("presheaf.subgroups", closed);

    let mut equivariant = Vec::new();
    for h in cm.cells().elements() {
        for x in 0..n {
            let moved = sheaf.at(pre.act(h, x)).to_vec();
            let image = cm.act_on_set(h, sheaf.at(x));
            if moved != image {
                equivariant.push(format!(
                    "carrier of {}.{} differs from a({}) image of carrier of {}",
                    cm.cells().label(h),
                    pre.label(x),
                    cm.cells().label(h),
                    pre.label(x)
                ));
            }
        }
    }
    report.check("presheaf.equivariant", equivariant);

    let mut antitone = Vec::new();
    for x in 0..n {
        for y in 0..n {
            if pre.leq(x, y) {
                let gy = sheaf.at(y);
                let gx = sheaf.at(x);
                if !gy.iter().all(|m| gx.binary_search(m).is_ok()) {
                    antitone.push(format!(
                        "{} <= {} but carrier of {} not inside carrier of {}",
                        pre.label(x),
                        pre.label(y),
                        pre.label(y),
                        pre.label(x)
                    ));
                }
            }
        }
    }
    report.check("presheaf.antitone", antitone);

    report
}

pub fn validate_duality(pre: &EquivariantPreorder, duality: &SelfDuality) -> Report {
    let mut report = Report::new();
    let n = pre.size();

    let mut involutive = Vec::new();
    for x in 0..n {
        let dd = duality.of(duality.of(x));
        if !pre.sim(x, dd) {
            involutive.push(format!(
                "{}°° = {} is not isomorphic to {}",
                pre.label(x),
                pre.label(dd),
                pre.label(x)
            ));
        }
    }
    report.check("duality.involutive", involutive);

    let mut reversing = Vec::new();
    for x in 0..n {
        for y in 0..n {
            if pre.leq(x, y) != pre.leq(duality.of(y), duality.of(x)) {
                reversing.push(format!(
                    "{} <= {} is {} but {}° <= {}° is {}",
                    pre.label(x),
                    pre.label(y),
                    pre.leq(x, y),
                    pre.label(y),
                    pre.label(x),
                    pre.leq(duality.of(y), duality.of(x))
                ));
            }
        }
    }
    report.check("duality.order-reversing", reversing);

    let mut equivariant = Vec::new();
    for g in 0..pre.action().perms().len() {
        for x in 0..n {
            let lhs = duality.of(pre.act(g, x));
            let rhs = pre.act(g, duality.of(x));
            if !pre.sim(lhs, rhs) {
                equivariant.push(format!(
                    "({}.{})° = {} not isomorphic to {}.({}°) = {}",
                    g,
                    pre.label(x),
                    pre.label(lhs),
                    g,
                    pre.label(x),
                    pre.label(rhs)
                ));
            }
        }
    }
    report.check("duality.equivariant", equivariant);

    report
}

pub fn validate_cosieve(pre: &EquivariantPreorder, cosieve: &Cosieve) -> Report {
    let mut report = Report::new();
    let n = pre.size();

    let mut subrelation = Vec::new();
    for x in 0..n {
        for y in 0..n {
            if cosieve.contains(x, y) && !pre.leq(x, y) {
                subrelation.push(format!(
                    "{} inside {} but not {} <= {}",
                    pre.label(x),
                    pre.label(y),
                    pre.label(x),
                    pre.label(y)
                ));
            }
        }
    }
    report.check("cosieve.subrelation", subrelation);

    let mut equivariant = Vec::new();
    for g in 0..pre.action().perms().len() {
        for x in 0..n {
            for y in 0..n {
                if cosieve.contains(x, y) && !cosieve.contains(pre.act(g, x), pre.act(g, y)) {
                    equivariant.push(format!(
                        "{} inside {} not preserved by element {}",
                        pre.label(x),
                        pre.label(y),
                        g
                    ));
                }
            }
        }
    }
    report.check("cosieve.equivariant", equivariant);

    let mut postcomp = Vec::new();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if cosieve.contains(x, y) && pre.leq(y, z) && !cosieve.contains(x, z) {
                    postcomp.push(format!(
                        "{} inside {} <= {} but {} not inside {}",
                        pre.label(x),
                        pre.label(y),
                        pre.label(z),
                        pre.label(x),
                        pre.label(z)
                    ));
                }
            }
        }
    }
    report.check("cosieve.postcomposition", postcomp);

    report
}

/// Consequence of the cosieve axioms: isomorphic right-hand sides admit the
/// same interior elements.
pub fn check_cosieve_respects_iso(pre: &EquivariantPreorder, cosieve: &Cosieve) -> Report {
    let mut report = Report::new();
    let n = pre.size();
    let mut witnesses = Vec::new();
    for y in 0..n {
        for z in 0..n {
            if !pre.sim(y, z) {
                continue;
            }
            for x in 0..n {
                if cosieve.contains(x, y) != cosieve.contains(x, z) {
                    witnesses.push(format!(
                        "{} ~ {} but interior membership of {} differs",
                        pre.label(y),
                        pre.label(z),
                        pre.label(x)
                    ));
                }
            }
        }
    }
    report.check("cosieve.respects-iso", witnesses);
    report
}

/// The isotropy construction for a conjugation-type crossed module: the
/// carrier of `x` is its stabilizer and `x <= y` iff the stabilizer of `y`
/// is contained in the stabilizer of `x`.
pub fn isotropy_presheaf(
    group: &FiniteGroup,
    action: &GroupAction,
    labels: Vec<String>,
) -> (EquivariantPreorder, SubgroupPresheaf) {
    let n = action.set_size();
    let stabs: Vec<Vec<usize>> = (0..n)
        .map(|x| group.elements().filter(|&g| action.apply(g, x) == x).collect())
        .collect();
    let leq = (0..n)
        .map(|x| {
            (0..n)
                .map(|y| stabs[y].iter().all(|g| stabs[x].contains(g)))
                .collect()
        })
        .collect();
    let pre = EquivariantPreorder::new(labels, leq, action.clone()).unwrap();
    let sheaf = SubgroupPresheaf::new(group, n, stabs).unwrap();
    (pre, sheaf)
}

/// The cosieve induced by a self-duality: `x` is inside `y` iff `x <= y`
/// and the carriers of `y°` and `x` together generate the whole source
/// group.
pub fn cosieve_from_duality(
    source: &FiniteGroup,
    pre: &EquivariantPreorder,
    sheaf: &SubgroupPresheaf,
    duality: &SelfDuality,
) -> Cosieve {
    let n = pre.size();
    let rel = (0..n)
        .map(|x| {
            (0..n)
                .map(|y| {
                    if !pre.leq(x, y) {
                        return false;
                    }
                    let mut gens = sheaf.at(duality.of(y)).to_vec();
                    gens.extend_from_slice(sheaf.at(x));
                    generate_subgroup(source, &gens).order() == source.order()
                })
                .collect()
        })
        .collect();
    Cosieve { rel }
}

/// For every element, the normalizers of the carriers of `x` and `x°`
/// agree. This is a theorem for valid inputs, so a failure indicates an
/// invalid instance.
pub fn check_normalizer_lemma(
    source: &FiniteGroup,
    pre: &EquivariantPreorder,
    sheaf: &SubgroupPresheaf,
    duality: &SelfDuality,
) -> Report {
    let mut report = Report::new();
    let mut witnesses = Vec::new();
    for x in 0..pre.size() {
        let gx = crate::group::Subgroup::new(source, sheaf.at(x).to_vec());
        let gxd = crate::group::Subgroup::new(source, sheaf.at(duality.of(x)).to_vec());
        match (gx, gxd) {
            (Ok(gx), Ok(gxd)) => {
                let nx = normalizer(source, &gx);
                let nxd = normalizer(source, &gxd);
                if nx != nxd {
                    witnesses.push(format!(
                        "normalizers at {} and {}° differ: {:?} vs {:?}",
                        pre.label(x),
                        pre.label(x),
                        nx.members(),
                        nxd.members()
                    ));
                }
            }
            _ => witnesses.push(format!("carrier at {} is not a subgroup", pre.label(x))),
        }
    }
    report.check("lemma.normalizer", witnesses);
    report
}

/// For every element, the product of the carriers of `x` and `x°` is a
/// subgroup and does not depend on the order of the factors; when the
/// carriers intersect trivially, its size is the product of their sizes.
pub fn check_product_corollary(
    source: &FiniteGroup,
    pre: &EquivariantPreorder,
    sheaf: &SubgroupPresheaf,
    duality: &SelfDuality,
) -> Report {
    let mut report = Report::new();
    let mut witnesses = Vec::new();
    for x in 0..pre.size() {
        let gx = sheaf.at(x);
        let gxd = sheaf.at(duality.of(x));
        let forward = product_set(source, gx, gxd);
        let backward = product_set(source, gxd, gx);
        if forward != backward {
            witnesses.push(format!(
                "products at {} do not commute as sets",
                pre.label(x)
            ));
            continue;
        }
        if !is_subgroup_set(source, &forward) {
            witnesses.push(format!("product at {} is not a subgroup", pre.label(x)));
            continue;
        }
        let identity_only = gx
            .iter()
            .filter(|m| gxd.binary_search(m).is_ok())
            .collect::<Vec<_>>()
            == vec![&source.identity()];
        if identity_only && forward.len() != gx.len() * gxd.len() {
            witnesses.push(format!(
                "trivial intersection at {} but product size {} != {} * {}",
                pre.label(x),
                forward.len(),
                gx.len(),
                gxd.len()
            ));
        }
    }
    report.check("lemma.product-subgroup", witnesses);
    report
}

/// The hypothesis that makes the duality lift well-defined: whenever `c`
/// and `d` are both inside `b°`, some `rho` fixing both carriers moves an
/// interior element `a` of `b` onto `b` up to isomorphism.
pub fn check_tubular_condition(
    cm: &CrossedModule,
    pre: &EquivariantPreorder,
    sheaf: &SubgroupPresheaf,
    duality: &SelfDuality,
    cosieve: &Cosieve,
) -> Report {
    let mut report = Report::new();
    let n = pre.size();
    let mut witnesses = Vec::new();
    for b in 0..n {
        let bd = duality.of(b);
        for c in 0..n {
            if !cosieve.contains(c, bd) {
                continue;
            }
            for d in 0..n {
                if !cosieve.contains(d, bd) {
                    continue;
                }
                let found = sheaf
                    .at(c)
                    .iter()
                    .filter(|rho| sheaf.at(d).binary_search(rho).is_ok())
                    .any(|&rho| {
                        (0..n).any(|a| {
                            cosieve.contains(a, b)
                                && pre.sim(crate::crossed::source_action(cm, pre.action(), rho, a), b)
                        })
                    });
                if !found {
                    witnesses.push(format!(
                        "no witness for b={}, c={}, d={}",
                        pre.label(b),
                        pre.label(c),
                        pre.label(d)
                    ));
                }
            }
        }
    }
    report.check("duality.tubular", witnesses);
    report
}
