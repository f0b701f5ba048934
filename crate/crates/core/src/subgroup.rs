//! Verified subgroups and complete sets of coset representatives.

use crate::group::{ElementId, FiniteGroup, GroupError};

/// A subgroup stored as its strictly increasing element list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    parent: FiniteGroup,
    elements: Vec<ElementId>,
}

impl Subgroup {
    pub(crate) fn from_sorted_unchecked(parent: FiniteGroup, elements: Vec<ElementId>) -> Self {
        debug_assert!(elements.windows(2).all(|w| w[0] < w[1]));
        Subgroup { parent, elements }
    }

    /// Checks closure, identity and inverses, then Lagrange.
    pub fn new(parent: &FiniteGroup, elements: &[ElementId]) -> Result<Self, GroupError> {
        let mut elems = elements.to_vec();
        for &e in &elems {
            parent.check_element(e)?;
        }
        elems.sort_unstable();
        elems.dedup();
        let mut member = vec![false; parent.order()];
        for &e in &elems {
            member[e.index()] = true;
        }
        if !member[parent.identity().index()] {
            return Err(GroupError::NotSubgroup("missing identity".into()));
        }
        for &a in &elems {
            if !member[parent.inverse(a).index()] {
                return Err(GroupError::NotSubgroup(format!("not closed under inverse at {}", parent.name(a))));
            }
            for &b in &elems {
                if !member[parent.op(a, b).index()] {
                    return Err(GroupError::NotSubgroup(format!(
                        "{} * {} leaves the set",
                        parent.name(a),
                        parent.name(b)
                    )));
                }
            }
        }
        assert_eq!(parent.order() % elems.len(), 0, "Lagrange");
        Ok(Subgroup { parent: parent.clone(), elements: elems })
    }

    pub fn whole(parent: &FiniteGroup) -> Self {
        Subgroup::from_sorted_unchecked(parent.clone(), parent.elements().collect())
    }

    pub fn trivial(parent: &FiniteGroup) -> Self {
        Subgroup::from_sorted_unchecked(parent.clone(), vec![parent.identity()])
    }

    pub fn parent(&self) -> &FiniteGroup {
        &self.parent
    }

    pub fn elements(&self) -> &[ElementId] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn index(&self) -> usize {
        self.parent.order() / self.elements.len()
    }

    pub fn contains(&self, x: ElementId) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    pub fn is_central(&self) -> bool {
        let center = self.parent.center();
        self.elements.iter().all(|&x| center.contains(x))
    }

    /// `x·H` (left) or `H·x` (right), in the subgroup's element order.
    pub fn coset(&self, x: ElementId, side: Side) -> Vec<ElementId> {
        self.elements
            .iter()
            .map(|&h| match side {
                Side::Left => self.parent.op(x, h),
                Side::Right => self.parent.op(h, x),
            })
            .collect()
    }

    /// For every element, the number of the coset containing it, with cosets
    /// numbered by their minimal element.
    pub fn coset_labels(&self, side: Side) -> Vec<usize> {
        let n = self.parent.order();
        let mut label = vec![usize::MAX; n];
        let mut next = 0;
        for x in self.parent.elements() {
            if label[x.index()] != usize::MAX {
                continue;
            }
            for y in self.coset(x, side) {
                label[y.index()] = next;
            }
            next += 1;
        }
        label
    }

    /// Canonical representatives: each coset's minimal element, cosets ordered
    /// by that minimum.
    pub fn coset_reps(&self, side: Side) -> CosetReps {
        let labels = self.coset_labels(side);
        let mut reps = Vec::with_capacity(self.index());
        for x in self.parent.elements() {
            if labels[x.index()] == reps.len() {
                reps.push(x);
            }
        }
        CosetReps { subgroup: self.clone(), reps, side }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

/// An ordered complete set of coset representatives of a subgroup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetReps {
    subgroup: Subgroup,
    reps: Vec<ElementId>,
    side: Side,
}

impl CosetReps {
    /// Validates that `reps` meets every `side` coset of `subgroup` exactly once.
    pub fn new(subgroup: &Subgroup, reps: Vec<ElementId>, side: Side) -> Result<Self, GroupError> {
        if reps.len() != subgroup.index() {
            return Err(GroupError::NotSubgroup(format!(
                "{} representatives given for index {}",
                reps.len(),
                subgroup.index()
            )));
        }
        let labels = subgroup.coset_labels(side);
        let mut seen = vec![false; subgroup.index()];
        let g = subgroup.parent();
        for &r in &reps {
            g.check_element(r)?;
            let l = labels[r.index()];
            if seen[l] {
                return Err(GroupError::NotSubgroup(format!("{} lies in an already represented coset", g.name(r))));
            }
            seen[l] = true;
        }
        Ok(CosetReps { subgroup: subgroup.clone(), reps, side })
    }

    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    pub fn parent(&self) -> &FiniteGroup {
        self.subgroup.parent()
    }

    pub fn reps(&self) -> &[ElementId] {
        &self.reps
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }
}
