use std::collections::BTreeSet;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::report::ValidationReport;

/// Default bound on the group order accepted by [`subgroups`].
pub const DEFAULT_MAX_GROUP_ORDER: usize = 12;

/// A finite group given by its full multiplication table. The identity is
/// always element 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FinGroup {
    order: usize,
    table: Vec<usize>,
    inverse: Vec<usize>,
}

impl FinGroup {
    /// Builds a group from its rows. Only the shape is checked here; call
    /// [`FinGroup::validate`] for the axioms or use [`FinGroup::new`].
    pub fn from_rows(rows: Vec<Vec<usize>>) -> Result<Self> {
        let order = rows.len();
        if order == 0 {
            return Err(Error::Format("group table is empty".into()));
        }
        let mut table = Vec::with_capacity(order * order);
        for (a, row) in rows.iter().enumerate() {
            if row.len() != order {
                return Err(Error::Format(format!(
                    "row {a} has {} entries, expected {order}",
                    row.len()
                )));
            }
            for &c in row {
                if c >= order {
                    return Err(Error::Format(format!("entry {c} in row {a} exceeds order {order}")));
                }
            }
            table.extend_from_slice(row);
        }
        let inverse = (0..order)
            .map(|a| (0..order).find(|&b| table[a * order + b] == 0).unwrap_or(usize::MAX))
            .collect();
        Ok(Self { order, table, inverse })
    }

    /// Shape check plus the group axioms.
    pub fn new(rows: Vec<Vec<usize>>) -> Result<Self> {
        let g = Self::from_rows(rows)?;
        g.validate().into_result()?;
        Ok(g)
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    pub fn cyclic(n: usize) -> Self {
        let rows = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Self::from_rows(rows).expect("cyclic table")
    }

    /// The symmetric group on `n` letters; permutations in lexicographic
    /// order, so the identity comes first.
    pub fn symmetric(n: usize) -> Self {
        let perms = permutations(n);
        Self::from_permutations(&perms)
    }

    /// The dihedral group of order `2n`, elements `r^k` then `s r^k`.
    pub fn dihedral(n: usize) -> Self {
        let perms: Vec<Vec<usize>> = (0..2 * n)
            .map(|e| {
                let (flip, k) = (e >= n, e % n);
                (0..n)
                    .map(|i| if flip { (n + k - i) % n } else { (i + k) % n })
                    .collect()
            })
            .collect();
        Self::from_permutations(&perms)
    }

    /// Direct product; element `(a, b)` has index `a * |other| + b`.
    pub fn product(&self, other: &FinGroup) -> Self {
        let (m, n) = (self.order, other.order);
        let rows = (0..m * n)
            .map(|x| {
                (0..m * n)
                    .map(|y| self.mul(x / n, y / n) * n + other.mul(x % n, y % n))
                    .collect()
            })
            .collect();
        Self::from_rows(rows).expect("product table")
    }

    /// Group of the given permutations under composition, assumed closed with
    /// the identity first. Product `a·b` means "apply b, then a".
    fn from_permutations(perms: &[Vec<usize>]) -> Self {
        let index = |p: &Vec<usize>| perms.iter().position(|q| q == p).expect("closed");
        let rows = perms
            .iter()
            .map(|a| {
                perms
                    .iter()
                    .map(|b| index(&b.iter().map(|&i| a[i]).collect()))
                    .collect()
            })
            .collect();
        Self::from_rows(rows).expect("permutation table")
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.order).map(|r| r.to_vec()).collect()
    }

    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::new();
        let n = self.order;
        for a in 0..n {
            if self.mul(0, a) != a || self.mul(a, 0) != a {
                report.push("identity: element 0 is not a two-sided unit", format!("element {a}"));
            }
            let inv = self.inverse[a];
            if inv == usize::MAX || self.mul(inv, a) != 0 {
                report.push("inverse: no two-sided inverse", format!("element {a}"));
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = self.mul(a, b);
                for c in 0..n {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        report.push("associativity", format!("({a}, {b}, {c})"));
                    }
                }
            }
        }
        report
    }

    /// Order of an element.
    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        let n = used.len();
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        for i in 0..n {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                rec(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// A subgroup, stored as the sorted list of its element indices in the parent.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subgroup {
    parent: Arc<FinGroup>,
    elements: Vec<usize>,
}

impl Subgroup {
    pub fn new(parent: Arc<FinGroup>, mut elements: Vec<usize>) -> Result<Self> {
        elements.sort_unstable();
        elements.dedup();
        let sub = Self { parent, elements };
        sub.validate().into_result().map_err(|e| Error::NotSubgroup(e.to_string()))?;
        Ok(sub)
    }

    pub fn whole(parent: Arc<FinGroup>) -> Self {
        let elements = parent.elements().collect();
        Self { parent, elements }
    }

    pub fn trivial(parent: Arc<FinGroup>) -> Self {
        Self { parent, elements: vec![0] }
    }

    /// Smallest subgroup containing `gens`.
    pub fn generated_by(parent: Arc<FinGroup>, gens: &[usize]) -> Self {
        let elements = closure(&parent, gens.iter().copied()).into_iter().collect();
        Self { parent, elements }
    }

    pub fn parent(&self) -> &Arc<FinGroup> {
        &self.parent
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, g: usize) -> bool {
        self.elements.binary_search(&g).is_ok()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.parent == other.parent && self.elements.iter().all(|&g| other.contains(g))
    }

    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::new();
        let g = &self.parent;
        if self.elements.iter().any(|&e| e >= g.order()) {
            report.push("subgroup element out of range", format!("{:?}", self.elements));
            return report;
        }
        if !self.contains(0) {
            report.push("subgroup lacks the identity", format!("{:?}", self.elements));
        }
        for &a in &self.elements {
            if !self.contains(g.inv(a)) {
                report.push("subgroup not closed under inverse", format!("element {a}"));
            }
            for &b in &self.elements {
                if !self.contains(g.mul(a, b)) {
                    report.push("subgroup not closed under multiplication", format!("({a}, {b})"));
                }
            }
        }
        report
    }

    /// `g H g⁻¹`.
    pub fn conjugate(&self, g: usize) -> Subgroup {
        let p = &self.parent;
        let mut elements: Vec<usize> =
            self.elements.iter().map(|&h| p.mul(p.mul(g, h), p.inv(g))).collect();
        elements.sort_unstable();
        Self { parent: p.clone(), elements }
    }

    /// The subgroup as a group in its own right; also returns the parent
    /// index of each new element (new index 0 is the identity).
    pub fn as_group(&self) -> (FinGroup, Vec<usize>) {
        let p = &self.parent;
        let pos = |x: usize| self.elements.binary_search(&x).expect("closed");
        let rows = self
            .elements
            .iter()
            .map(|&a| self.elements.iter().map(|&b| pos(p.mul(a, b))).collect())
            .collect();
        (FinGroup::from_rows(rows).expect("subgroup table"), self.elements.clone())
    }

    /// Left coset representatives `a_1 = 1, a_2, …`, each the least element
    /// of its coset, in increasing order.
    pub fn left_coset_representatives(&self) -> Vec<usize> {
        let p = &self.parent;
        let mut seen = vec![false; p.order()];
        let mut reps = Vec::new();
        for a in p.elements() {
            if !seen[a] {
                reps.push(a);
                for &h in &self.elements {
                    seen[p.mul(a, h)] = true;
                }
            }
        }
        reps
    }
}

fn closure(group: &FinGroup, gens: impl IntoIterator<Item = usize>) -> BTreeSet<usize> {
    let mut set: BTreeSet<usize> = BTreeSet::from([0]);
    let mut frontier: Vec<usize> = gens.into_iter().collect();
    let generators = frontier.clone();
    while let Some(x) = frontier.pop() {
        if set.insert(x) {
            for &s in &generators {
                frontier.push(group.mul(x, s));
                frontier.push(group.mul(s, x));
            }
        }
    }
    set
}

/// All subgroups, sorted by order and then lexicographically by elements.
pub fn subgroups(group: &Arc<FinGroup>, max_order: usize) -> Result<Vec<Subgroup>> {
    if group.order() > max_order {
        return Err(Error::Refused(format!(
            "subgroup enumeration limited to order {max_order}, group has order {}",
            group.order()
        )));
    }
    let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut frontier: Vec<BTreeSet<usize>> = vec![BTreeSet::from([0])];
    while let Some(h) = frontier.pop() {
        let key: Vec<usize> = h.iter().copied().collect();
        if !found.insert(key) {
            continue;
        }
        for g in group.elements() {
            if !h.contains(&g) {
                frontier.push(closure(group, h.iter().copied().chain([g])));
            }
        }
    }
    let mut out: Vec<Subgroup> = found
        .into_iter()
        .map(|elements| Subgroup { parent: group.clone(), elements })
        .collect();
    out.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.elements.cmp(&b.elements)));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn z2_is_valid() {
        let g = FinGroup::new(vec![vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(g.order(), 2);
        assert!(g.validate().is_valid());
    }

    #[test]
    fn malformed_rows_are_format_errors() {
        assert!(matches!(FinGroup::from_rows(vec![vec![0, 1], vec![1]]), Err(Error::Format(_))));
        assert!(matches!(FinGroup::from_rows(vec![vec![0, 2], vec![1, 0]]), Err(Error::Format(_))));
    }

    #[test]
    fn non_associative_table_is_reported() {
        // identity 0, every product of non-identities is 0 except 1*2=1
        let rows = vec![vec![0, 1, 2], vec![1, 0, 1], vec![2, 2, 0]];
        let g = FinGroup::from_rows(rows).unwrap();
        let report = g.validate();
        assert!(report.violations.iter().any(|v| v.rule == "associativity"));
    }

    #[test]
    fn subgroup_counts() {
        let count = |g: FinGroup| subgroups(&Arc::new(g), 12).unwrap().len();
        assert_eq!(count(FinGroup::cyclic(2)), 2);
        assert_eq!(count(FinGroup::cyclic(4)), 3);
        assert_eq!(count(FinGroup::symmetric(3)), 6);
        assert_eq!(count(FinGroup::cyclic(2).product(&FinGroup::cyclic(2))), 5);
        assert_eq!(count(FinGroup::dihedral(4)), 10);
    }

    #[test]
    fn subgroup_bound_refuses() {
        let g = Arc::new(FinGroup::cyclic(13));
        assert!(matches!(subgroups(&g, 12), Err(Error::Refused(_))));
    }

    #[test]
    fn named_groups_validate() {
        for g in [
            FinGroup::trivial(),
            FinGroup::cyclic(6),
            FinGroup::symmetric(3),
            FinGroup::dihedral(3),
            FinGroup::cyclic(2).product(&FinGroup::cyclic(3)),
        ] {
            assert!(g.validate().is_valid());
        }
        assert_eq!(FinGroup::symmetric(3).element_order(1), 2);
    }

    #[test]
    fn coset_representatives_of_index_two() {
        let g = Arc::new(FinGroup::cyclic(4));
        let h = Subgroup::new(g, vec![0, 2]).unwrap();
        assert_eq!(h.left_coset_representatives(), vec![0, 1]);
        let (as_group, embed) = h.as_group();
        assert_eq!(as_group.order(), 2);
        assert_eq!(embed, vec![0, 2]);
    }
}
