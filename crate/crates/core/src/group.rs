//! Finite groups given by full multiplication tables, with the subgroup
//! calculus used by presheaves and the duality lemmas. Everything is brute
//! force and exact; target instances have order <= 60.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("multiplication table is not square of the declared order")]
    BadTableShape,
    #[error("table entry {value} at ({row}, {col}) out of range")]
    EntryOutOfRange { row: usize, col: usize, value: usize },
    #[error("element {0} is not an identity")]
    NoIdentity(usize),
    #[error("element {0} has no inverse")]
    NoInverse(usize),
    #[error("associativity fails at ({a}, {b}, {c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("label list has {got} entries for order {order}")]
    BadLabelCount { order: usize, got: usize },
    #[error("subgroup member {0} out of range")]
    MemberOutOfRange(usize),
    #[error("subgroup misses the identity")]
    MissingIdentity,
    #[error("subgroup not closed: {a} * {b} escapes")]
    NotClosed { a: usize, b: usize },
    #[error("homomorphism map has {got} entries for domain order {order}")]
    BadMapLength { order: usize, got: usize },
    #[error("map value {0} out of codomain range")]
    MapValueOutOfRange(usize),
    #[error("not a homomorphism at ({a}, {b})")]
    NotHomomorphism { a: usize, b: usize },
    #[error("action has {got} permutations for group order {order}")]
    BadActionLength { order: usize, got: usize },
    #[error("action of element {element} is not a permutation of the set")]
    NotPermutation { element: usize },
    #[error("action of the identity is not the identity permutation")]
    IdentityActsNontrivially,
    #[error("action not functorial at ({a}, {b})")]
    NotFunctorial { a: usize, b: usize },
}

/// A finite group as a validated multiplication table. Element 0 is always
/// the identity in groups built by the constructors here; `from_table`
/// accepts the identity anywhere and records its index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
    labels: Vec<String>,
}

impl FiniteGroup {
    /// Validates the full group law: shape, identity, inverses,
    /// associativity.
    pub fn from_table(
        table: Vec<Vec<usize>>,
        labels: Option<Vec<String>>,
    ) -> Result<Self, GroupError> {
        let order = table.len();
        if order == 0 {
            return Err(GroupError::BadTableShape);
        }
        for (r, row) in table.iter().enumerate() {
            if row.len() != order {
                return Err(GroupError::BadTableShape);
            }
            for (c, &v) in row.iter().enumerate() {
                if v >= order {
                    return Err(GroupError::EntryOutOfRange { row: r, col: c, value: v });
                }
            }
        }
        let identity = (0..order)
            .find(|&e| (0..order).all(|g| table[e][g] == g && table[g][e] == g))
            .ok_or(GroupError::NoIdentity(0))?;
        let mut inverse = vec![usize::MAX; order];
        for g in 0..order {
            match (0..order).find(|&h| table[g][h] == identity && table[h][g] == identity) {
                Some(h) => inverse[g] = h,
                None => return Err(GroupError::NoInverse(g)),
            }
        }
        for a in 0..order {
            for b in 0..order {
                for c in 0..order {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(GroupError::NotAssociative { a, b, c });
                    }
                }
            }
        }
        let labels = match labels {
            Some(l) => {
                if l.len() != order {
                    return Err(GroupError::BadLabelCount { order, got: l.len() });
                }
                l
            }
            None => (0..order).map(|i| i.to_string()).collect(),
        };
        Ok(FiniteGroup {
            order,
            table,
            identity,
            inverse,
            labels,
        })
    }

    pub fn trivial() -> Self {
        FiniteGroup::from_table(vec![vec![0]], Some(vec!["e".into()])).unwrap()
    }

    /// The cyclic group of order `k`, elements labelled by residues.
    pub fn cyclic(k: usize) -> Self {
        assert!(k > 0);
        let table = (0..k).map(|a| (0..k).map(|b| (a + b) % k).collect()).collect();
        let labels = (0..k).map(|i| i.to_string()).collect();
        FiniteGroup::from_table(table, Some(labels)).unwrap()
    }

    /// The symmetric group on `n` letters; elements are the permutations of
    /// `0..n` in lexicographic order, labelled by cycle notation on `1..=n`.
    /// The identity permutation is lexicographically first, hence index 0.
    pub fn symmetric(n: usize) -> Self {
        assert!((1..=5).contains(&n), "symmetric(n) is intended for n <= 5");
        let perms = permutations(n);
        let index_of = |p: &[usize]| perms.iter().position(|q| q == p).unwrap();
        let table = perms
            .iter()
            .map(|p| {
                perms
                    .iter()
                    .map(|q| {
                        // (p * q)(i) = p(q(i))
                        let pq: Vec<usize> = (0..n).map(|i| p[q[i]]).collect();
                        index_of(&pq)
                    })
                    .collect()
            })
            .collect();
        let labels = perms.iter().map(|p| cycle_notation(p)).collect();
        FiniteGroup::from_table(table, Some(labels)).unwrap()
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    /// `g h g^{-1}`.
    pub fn conjugate(&self, g: usize, h: usize) -> usize {
        self.mul(self.mul(g, h), self.inv(g))
    }

    pub fn elements(&self) -> impl Iterator<Item = usize> {
        0..self.order
    }

    pub fn label(&self, g: usize) -> &str {
        &self.labels[g]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn table(&self) -> &Vec<Vec<usize>> {
        &self.table
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![];
    let mut current: Vec<usize> = (0..n).collect();
    loop {
        out.push(current.clone());
        // next lexicographic permutation
        let Some(i) = (0..n - 1).rev().find(|&i| current[i] < current[i + 1]) else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| current[j] > current[i]).unwrap();
        current.swap(i, j);
        current[i + 1..].reverse();
    }
    out
}

/// Cycle notation on letters `1..=n`, fixed points omitted; identity is "e".
fn cycle_notation(p: &[usize]) -> String {
    let n = p.len();
    let mut seen = vec![false; n];
    let mut out = String::new();
    for start in 0..n {
        if seen[start] || p[start] == start {
            seen[start] = true;
            continue;
        }
        let mut cycle = vec![start];
        seen[start] = true;
        let mut next = p[start];
        while next != start {
            seen[next] = true;
            cycle.push(next);
            next = p[next];
        }
        out.push('(');
        for (k, v) in cycle.iter().enumerate() {
            if k > 0 {
                out.push(' ');
            }
            out.push_str(&(v + 1).to_string());
        }
        out.push(')');
    }
    if out.is_empty() {
        out.push('e');
    }
    out
}

/// A subgroup, stored as the sorted list of member indices. Construction
/// verifies closure under product and inverse.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Subgroup {
    members: Vec<usize>,
}

impl Subgroup {
    pub fn new(group: &FiniteGroup, mut members: Vec<usize>) -> Result<Self, GroupError> {
        members.sort_unstable();
        members.dedup();
        for &m in &members {
            if m >= group.order() {
                return Err(GroupError::MemberOutOfRange(m));
            }
        }
        if !members.contains(&group.identity()) {
            return Err(GroupError::MissingIdentity);
        }
        for &a in &members {
            for &b in &members {
                if members.binary_search(&group.mul(a, b)).is_err() {
                    return Err(GroupError::NotClosed { a, b });
                }
            }
        }
        Ok(Subgroup { members })
    }

    pub fn trivial(group: &FiniteGroup) -> Self {
        Subgroup {
            members: vec![group.identity()],
        }
    }

    pub fn full(group: &FiniteGroup) -> Self {
        Subgroup {
            members: group.elements().collect(),
        }
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, g: usize) -> bool {
        self.members.binary_search(&g).is_ok()
    }

    pub fn intersection(&self, other: &Subgroup) -> Vec<usize> {
        self.members
            .iter()
            .copied()
            .filter(|g| other.contains(*g))
            .collect()
    }
}

/// Smallest subgroup containing `gens`, by breadth-first closure.
pub fn generate_subgroup(group: &FiniteGroup, gens: &[usize]) -> Subgroup {
    let mut in_set = vec![false; group.order()];
    in_set[group.identity()] = true;
    let mut frontier: Vec<usize> = vec![group.identity()];
    for &g in gens {
        if !in_set[g] {
            in_set[g] = true;
            frontier.push(g);
        }
    }
    while let Some(g) = frontier.pop() {
        let candidates: Vec<usize> = (0..group.order())
            .filter(|&h| in_set[h])
            .flat_map(|h| [group.mul(g, h), group.mul(h, g)])
            .chain([group.inv(g)])
            .collect();
        for c in candidates {
            if !in_set[c] {
                in_set[c] = true;
                frontier.push(c);
            }
        }
    }
    let members = (0..group.order()).filter(|&g| in_set[g]).collect();
    Subgroup { members }
}

/// Left cosets `gH`, each sorted; the list is ordered by canonical
/// representative, which is the minimal member.
pub fn cosets(group: &FiniteGroup, h: &Subgroup) -> Vec<Vec<usize>> {
    let mut assigned = vec![false; group.order()];
    let mut out = Vec::new();
    for g in group.elements() {
        if assigned[g] {
            continue;
        }
        let mut coset: Vec<usize> = h.members().iter().map(|&m| group.mul(g, m)).collect();
        coset.sort_unstable();
        for &c in &coset {
            assigned[c] = true;
        }
        out.push(coset);
    }
    out.sort();
    out
}

/// Minimal element of the coset `gH`.
pub fn coset_rep(group: &FiniteGroup, h: &Subgroup, g: usize) -> usize {
    h.members()
        .iter()
        .map(|&m| group.mul(g, m))
        .min()
        .expect("subgroup is nonempty")
}

/// `{ g | g H g^{-1} = H }`.
pub fn normalizer(group: &FiniteGroup, h: &Subgroup) -> Subgroup {
    let members = group
        .elements()
        .filter(|&g| conjugate_subgroup(group, g, h) == *h)
        .collect();
    Subgroup { members }
}

/// `{ l r | l in left, r in right }`, sorted and deduplicated.
pub fn product_set(group: &FiniteGroup, left: &[usize], right: &[usize]) -> Vec<usize> {
    let mut out: Vec<usize> = left
        .iter()
        .flat_map(|&l| right.iter().map(move |&r| (l, r)))
        .map(|(l, r)| group.mul(l, r))
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// `g H g^{-1}` as a subgroup.
pub fn conjugate_subgroup(group: &FiniteGroup, g: usize, h: &Subgroup) -> Subgroup {
    let mut members: Vec<usize> = h
        .members()
        .iter()
        .map(|&m| group.conjugate(g, m))
        .collect();
    members.sort_unstable();
    Subgroup { members }
}

/// Whether a sorted, deduplicated element set is closed as a subgroup.
pub fn is_subgroup_set(group: &FiniteGroup, set: &[usize]) -> bool {
    Subgroup::new(group, set.to_vec()).is_ok()
}

/// All subgroups, found by closing each subgroup under one extra generator
/// until nothing new appears. Sorted by (order, members).
pub fn all_subgroups(group: &FiniteGroup) -> Vec<Subgroup> {
    let mut found: std::collections::BTreeSet<Subgroup> = std::collections::BTreeSet::new();
    let mut queue: Vec<Subgroup> = vec![Subgroup::trivial(group)];
    found.insert(Subgroup::trivial(group));
    while let Some(h) = queue.pop() {
        for g in group.elements() {
            if h.contains(g) {
                continue;
            }
            let mut gens = h.members().to_vec();
            gens.push(g);
            let bigger = generate_subgroup(group, &gens);
            if found.insert(bigger.clone()) {
                queue.push(bigger);
            }
        }
    }
    let mut out: Vec<Subgroup> = found.into_iter().collect();
    out.sort_by_key(|h| (h.order(), h.members().to_vec()));
    out
}

/// A map between groups, stored by image indices. `new` verifies the
/// homomorphism property.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupHom {
    map: Vec<usize>,
}

impl GroupHom {
    pub fn new(
        domain: &FiniteGroup,
        codomain: &FiniteGroup,
        map: Vec<usize>,
    ) -> Result<Self, GroupError> {
        let hom = GroupHom { map };
        hom.validate(domain, codomain)?;
        Ok(hom)
    }

    /// Wraps without checking; `validate` reports the first violation.
    pub fn from_raw(map: Vec<usize>) -> Self {
        GroupHom { map }
    }

    pub fn validate(
        &self,
        domain: &FiniteGroup,
        codomain: &FiniteGroup,
    ) -> Result<(), GroupError> {
        if self.map.len() != domain.order() {
            return Err(GroupError::BadMapLength {
                order: domain.order(),
                got: self.map.len(),
            });
        }
        for &v in &self.map {
            if v >= codomain.order() {
                return Err(GroupError::MapValueOutOfRange(v));
            }
        }
        for a in domain.elements() {
            for b in domain.elements() {
                if self.map[domain.mul(a, b)] != codomain.mul(self.map[a], self.map[b]) {
                    return Err(GroupError::NotHomomorphism { a, b });
                }
            }
        }
        Ok(())
    }

    pub fn identity(group: &FiniteGroup) -> Self {
        GroupHom {
            map: group.elements().collect(),
        }
    }

    pub fn apply(&self, g: usize) -> usize {
        self.map[g]
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }
}

/// An action of a group on `0..set_size`, one permutation per element.
/// `new` verifies identity and functoriality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupAction {
    set_size: usize,
    perms: Vec<Vec<usize>>,
}

impl GroupAction {
    pub fn new(
        group: &FiniteGroup,
        set_size: usize,
        perms: Vec<Vec<usize>>,
    ) -> Result<Self, GroupError> {
        let action = GroupAction { set_size, perms };
        action.validate(group)?;
        Ok(action)
    }

    pub fn from_raw(set_size: usize, perms: Vec<Vec<usize>>) -> Self {
        GroupAction { set_size, perms }
    }

    pub fn validate(&self, group: &FiniteGroup) -> Result<(), GroupError> {
        if self.perms.len() != group.order() {
            return Err(GroupError::BadActionLength {
                order: group.order(),
                got: self.perms.len(),
            });
        }
        for (g, perm) in self.perms.iter().enumerate() {
            if !is_permutation(perm, self.set_size) {
                return Err(GroupError::NotPermutation { element: g });
            }
        }
        let e = group.identity();
        if (0..self.set_size).any(|x| self.perms[e][x] != x) {
            return Err(GroupError::IdentityActsNontrivially);
        }
        for a in group.elements() {
            for b in group.elements() {
                for x in 0..self.set_size {
                    // (a * b) . x = a . (b . x)
                    if self.perms[group.mul(a, b)][x] != self.perms[a][self.perms[b][x]] {
                        return Err(GroupError::NotFunctorial { a, b });
                    }
                }
            }
        }
        Ok(())
    }

    /// The trivial action on `set_size` points.
    pub fn trivial(group: &FiniteGroup, set_size: usize) -> Self {
        GroupAction {
            set_size,
            perms: group
                .elements()
                .map(|_| (0..set_size).collect())
                .collect(),
        }
    }

    pub fn apply(&self, g: usize, x: usize) -> usize {
        self.perms[g][x]
    }

    pub fn set_size(&self) -> usize {
        self.set_size
    }

    pub fn perms(&self) -> &Vec<Vec<usize>> {
        &self.perms
    }
}

fn is_permutation(perm: &[usize], size: usize) -> bool {
    if perm.len() != size {
        return false;
    }
    let mut seen = vec![false; size];
    for &v in perm {
        if v >= size || seen[v] {
            return false;
        }
        seen[v] = true;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3() -> FiniteGroup {
        FiniteGroup::symmetric(3)
    }

    #[test]
    fn s3_structure() {
        let g = s3();
        assert_eq!(g.order(), 6);
        assert_eq!(g.identity(), 0);
        assert_eq!(g.label(0), "e");
        // lexicographic ordering of permutations of [0,1,2]
        assert_eq!(g.label(1), "(2 3)");
        assert_eq!(g.label(2), "(1 2)");
        assert_eq!(g.label(3), "(1 2 3)");
        assert_eq!(g.label(4), "(1 3 2)");
        assert_eq!(g.label(5), "(1 3)");
        // (1 2 3)(1 2 3) = (1 3 2)
        assert_eq!(g.mul(3, 3), 4);
        assert_eq!(g.inv(3), 4);
    }

    #[test]
    fn generate_examples() {
        let z6 = FiniteGroup::cyclic(6);
        assert_eq!(generate_subgroup(&z6, &[]).members(), &[0]);
        assert_eq!(generate_subgroup(&z6, &[2]).members(), &[0, 2, 4]);
        let z30 = FiniteGroup::cyclic(30);
        assert_eq!(generate_subgroup(&z30, &[2, 3]).order(), 30);
        // idempotent on its own output
        let h = generate_subgroup(&z6, &[2]);
        assert_eq!(generate_subgroup(&z6, h.members()), h);
    }

    #[test]
    fn coset_examples() {
        let g = s3();
        let a3 = Subgroup::new(&g, vec![0, 3, 4]).unwrap();
        assert_eq!(cosets(&g, &Subgroup::full(&g)).len(), 1);
        assert_eq!(cosets(&g, &a3).len(), 2);
        let z6 = FiniteGroup::cyclic(6);
        let h = Subgroup::new(&z6, vec![0, 3]).unwrap();
        let cs = cosets(&z6, &h);
        assert_eq!(cs.len(), 3);
        assert_eq!(cs[0], vec![0, 3]);
        assert_eq!(coset_rep(&z6, &h, 4), 1);
    }

    #[test]
    fn coset_partition_properties() {
        let g = s3();
        for h in all_subgroups(&g) {
            let cs = cosets(&g, &h);
            assert_eq!(cs.len() * h.order(), g.order());
            let mut union: Vec<usize> = cs.iter().flatten().copied().collect();
            union.sort_unstable();
            assert_eq!(union, (0..6).collect::<Vec<_>>());
            assert_eq!(g.order() % h.order(), 0); // Lagrange
        }
    }

    #[test]
    fn normalizer_examples() {
        let g = s3();
        let a3 = Subgroup::new(&g, vec![0, 3, 4]).unwrap();
        let t12 = Subgroup::new(&g, vec![0, 2]).unwrap();
        assert_eq!(normalizer(&g, &Subgroup::full(&g)), Subgroup::full(&g));
        assert_eq!(normalizer(&g, &a3), Subgroup::full(&g));
        assert_eq!(normalizer(&g, &t12), t12);
        // a subgroup always normalizes itself
        for h in all_subgroups(&g) {
            let n = normalizer(&g, &h);
            assert!(h.members().iter().all(|m| n.contains(*m)));
        }
    }

    #[test]
    fn product_set_examples() {
        let z6 = FiniteGroup::cyclic(6);
        assert_eq!(product_set(&z6, &[0], &[1, 4]), vec![1, 4]);
        assert_eq!(product_set(&z6, &[0, 2, 4], &[0, 3]), vec![0, 1, 2, 3, 4, 5]);
        let g = s3();
        let a3 = vec![0, 3, 4];
        assert_eq!(product_set(&g, &a3, &a3), a3);
    }

    #[test]
    fn product_set_associative() {
        let g = s3();
        let sets = [vec![0, 2], vec![1, 3], vec![0, 3, 4], vec![5]];
        for a in &sets {
            for b in &sets {
                for c in &sets {
                    let left = product_set(&g, &product_set(&g, a, b), c);
                    let right = product_set(&g, a, &product_set(&g, b, c));
                    assert_eq!(left, right);
                }
            }
        }
    }

    #[test]
    fn conjugation_examples() {
        let g = s3();
        let t12 = Subgroup::new(&g, vec![0, 2]).unwrap();
        let t23 = Subgroup::new(&g, vec![0, 1]).unwrap();
        let a3 = Subgroup::new(&g, vec![0, 3, 4]).unwrap();
        assert_eq!(conjugate_subgroup(&g, 0, &t12), t12);
        // (1 2 3) <(1 2)> (1 2 3)^{-1} = <(2 3)>
        assert_eq!(conjugate_subgroup(&g, 3, &t12), t23);
        for x in g.elements() {
            assert_eq!(conjugate_subgroup(&g, x, &a3), a3);
        }
    }

    #[test]
    fn subgroup_enumeration() {
        assert_eq!(all_subgroups(&s3()).len(), 6);
        assert_eq!(all_subgroups(&FiniteGroup::cyclic(4)).len(), 3);
        assert_eq!(all_subgroups(&FiniteGroup::cyclic(30)).len(), 8);
        for h in all_subgroups(&s3()) {
            assert!(is_subgroup_set(&s3(), h.members()));
        }
    }

    #[test]
    fn invalid_subgroups_rejected() {
        let z6 = FiniteGroup::cyclic(6);
        assert!(matches!(
            Subgroup::new(&z6, vec![1, 2]),
            Err(GroupError::MissingIdentity)
        ));
        assert!(matches!(
            Subgroup::new(&z6, vec![0, 2]),
            Err(GroupError::NotClosed { .. })
        ));
    }

    #[test]
    fn bad_tables_rejected() {
        // constant table: no identity
        assert!(FiniteGroup::from_table(vec![vec![0, 0], vec![0, 0]], None).is_err());
        // Z3 with one entry broken: loses associativity or inverses
        let mut t = FiniteGroup::cyclic(3).table().clone();
        t[1][1] = 1;
        assert!(FiniteGroup::from_table(t, None).is_err());
    }

    #[test]
    fn hom_and_action_validation() {
        let z6 = FiniteGroup::cyclic(6);
        let z3 = FiniteGroup::cyclic(3);
        let hom = GroupHom::new(&z6, &z3, vec![0, 1, 2, 0, 1, 2]).unwrap();
        assert_eq!(hom.apply(4), 1);
        assert!(GroupHom::new(&z6, &z3, vec![0, 1, 1, 0, 1, 2]).is_err());

        let act = GroupAction::new(
            &z3,
            3,
            vec![vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]],
        )
        .unwrap();
        assert_eq!(act.apply(1, 2), 0);
        assert!(GroupAction::new(
            &z3,
            3,
            vec![vec![0, 1, 2], vec![1, 2, 0], vec![0, 2, 1]],
        )
        .is_err());
        assert!(GroupAction::trivial(&z6, 4).validate(&z6).is_ok());
    }
}
