//! `SL₂(F_q)` by enumeration: conjugacy classes, the standard subgroups and
//! the non-split torus.

use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::fields::{FieldTower, Fq2, Mat2};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("element is not in the norm-one subgroup μ_(q+1)")]
    InputNotInMu,
    #[error("group axiom violated: {0}")]
    AxiomViolation(String),
}

/// A matrix `[[a, b], [c, d]]` over `F_q` with `ad - bc = 1`.
pub type GroupElement = Mat2;

#[derive(Debug, Clone)]
pub struct GroupTable {
    tower: Arc<FieldTower>,
    elements: Vec<GroupElement>,
    lookup: Vec<u32>,
    inverses: Vec<usize>,
    orders: Vec<u32>,
    identity: usize,
}

impl GroupTable {
    /// Enumerates `SL₂(F_q)` lexicographically in the `F_q` positions of
    /// `(a, b, c, d)` and checks the group axioms.
    pub fn new(tower: Arc<FieldTower>) -> Result<Self, GroupError> {
        let q = tower.q() as usize;
        let base = tower.base_field().to_vec();
        let mut elements = Vec::with_capacity(q * q * q - q);
        let mut lookup = vec![u32::MAX; q.pow(4)];
        for (ia, &a) in base.iter().enumerate() {
            for (ib, &b) in base.iter().enumerate() {
                for (ic, &c) in base.iter().enumerate() {
                    for (id, &d) in base.iter().enumerate() {
                        let m = Mat2::new(a, b, c, d);
                        if m.det(&tower) == Fq2::ONE {
                            lookup[((ia * q + ib) * q + ic) * q + id] = elements.len() as u32;
                            elements.push(m);
                        }
                    }
                }
            }
        }
        let mut table = GroupTable {
            tower,
            elements,
            lookup,
            inverses: Vec::new(),
            orders: Vec::new(),
            identity: 0,
        };
        table.identity = table
            .index_of(&Mat2::identity())
            .ok_or_else(|| GroupError::AxiomViolation("identity missing".into()))?;
        table.inverses = (0..table.len())
            .map(|i| {
                let inv = table.elements[i].inverse(&table.tower).expect("det is 1");
                table
                    .index_of(&inv)
                    .ok_or_else(|| GroupError::AxiomViolation(format!("no inverse for element {i}")))
            })
            .collect::<Result<_, _>>()?;
        table.orders = (0..table.len()).map(|i| table.compute_order(i)).collect();
        table.check_axioms()?;
        Ok(table)
    }

    fn check_axioms(&self) -> Result<(), GroupError> {
        let expected = {
            let q = self.q() as usize;
            q * q * q - q
        };
        if self.len() != expected {
            return Err(GroupError::AxiomViolation(format!(
                "{} elements, expected {expected}",
                self.len()
            )));
        }
        for i in 0..self.len() {
            if self.mul(i, self.inverses[i]) != self.identity {
                return Err(GroupError::AxiomViolation(format!("bad inverse at {i}")));
            }
            for j in 0..self.len() {
                let prod = self.elements[i].mul(&self.elements[j], &self.tower);
                if self.index_of(&prod).is_none() {
                    return Err(GroupError::AxiomViolation(format!("{i}*{j} escapes the group")));
                }
            }
        }
        Ok(())
    }

    fn compute_order(&self, i: usize) -> u32 {
        let mut x = i;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, i);
            k += 1;
        }
        k
    }

    pub fn tower(&self) -> &Arc<FieldTower> {
        &self.tower
    }

    pub fn q(&self) -> u32 {
        self.tower.q()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &GroupElement {
        &self.elements[i]
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn index_of(&self, m: &Mat2) -> Option<usize> {
        let q = self.q() as usize;
        let pos = |x| self.tower.base_position(x);
        let key = ((pos(m.a)? * q + pos(m.b)?) * q + pos(m.c)?) * q + pos(m.d)?;
        let idx = self.lookup[key];
        (idx != u32::MAX).then_some(idx as usize)
    }

    pub fn mul(&self, i: usize, j: usize) -> usize {
        let prod = self.elements[i].mul(&self.elements[j], &self.tower);
        self.index_of(&prod).expect("SL2 is closed under multiplication")
    }

    pub fn inverse(&self, i: usize) -> usize {
        self.inverses[i]
    }

    /// `g x g⁻¹`.
    pub fn conjugate(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inverses[g])
    }

    pub fn order(&self, i: usize) -> u32 {
        self.orders[i]
    }

    pub fn is_p_regular(&self, i: usize) -> bool {
        self.orders[i] % self.tower.p() != 0
    }

    pub fn minus_identity(&self) -> usize {
        let m = self.tower.neg(Fq2::ONE);
        self.index_of(&Mat2::scalar(m)).expect("-1 is in SL2")
    }

    pub fn is_central(&self, i: usize) -> bool {
        i == self.identity || i == self.minus_identity()
    }

    pub fn kind(&self, i: usize) -> ElementKind {
        let f = &*self.tower;
        let g = &self.elements[i];
        let minus_one = self.minus_identity();
        let tr = g.trace(f);
        let two = f.from_prime_field(2);
        if i == self.identity {
            ElementKind::Identity
        } else if i == minus_one {
            ElementKind::MinusIdentity
        } else if tr == two {
            ElementKind::Unipotent
        } else if tr == f.neg(two) {
            ElementKind::MinusUnipotent
        } else if f.reciprocal_roots(tr).iter().all(|&r| f.in_base_field(r)) {
            ElementKind::Split
        } else {
            ElementKind::NonSplit
        }
    }
}

/// Coarse type of an element of `SL₂(F_q)` (for `q` even, `±` coincide).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ElementKind {
    Identity,
    MinusIdentity,
    Unipotent,
    MinusUnipotent,
    Split,
    NonSplit,
}

impl ElementKind {
    pub fn is_unipotent(self) -> bool {
        matches!(self, ElementKind::Identity | ElementKind::Unipotent)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassData {
    pub representative: usize,
    pub size: usize,
    pub order: u32,
    pub p_regular: bool,
    pub kind: ElementKind,
    #[serde(skip)]
    pub members: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct Classes {
    classes: Vec<ClassData>,
    class_of: Vec<usize>,
    p_regular: Vec<usize>,
}

impl Classes {
    /// Orbits under conjugation, ordered by smallest member.
    pub fn new(table: &GroupTable) -> Self {
        let n = table.len();
        let mut class_of = vec![usize::MAX; n];
        let mut classes = Vec::new();
        for x in 0..n {
            if class_of[x] != usize::MAX {
                continue;
            }
            let id = classes.len();
            let mut members = Vec::new();
            for g in 0..n {
                let y = table.conjugate(g, x);
                if class_of[y] == usize::MAX {
                    class_of[y] = id;
                    members.push(y);
                }
            }
            members.sort_unstable();
            classes.push(ClassData {
                representative: x,
                size: members.len(),
                order: table.order(x),
                p_regular: table.is_p_regular(x),
                kind: table.kind(x),
                members,
            });
        }
        let p_regular = (0..classes.len()).filter(|&c| classes[c].p_regular).collect();
        Classes { classes, class_of, p_regular }
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, ClassData> {
        self.classes.iter()
    }

    pub fn get(&self, c: usize) -> &ClassData {
        &self.classes[c]
    }

    pub fn class_of(&self, element: usize) -> usize {
        self.class_of[element]
    }

    /// Indices of the p-regular classes, in class order.
    pub fn p_regular(&self) -> &[usize] {
        &self.p_regular
    }

    pub fn find_kind(&self, kind: ElementKind) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(move |&c| self.classes[c].kind == kind)
    }
}

impl<'a> IntoIterator for &'a Classes {
    type Item = &'a ClassData;
    type IntoIter = std::slice::Iter<'a, ClassData>;
    fn into_iter(self) -> Self::IntoIter {
        self.classes.iter()
    }
}

#[derive(Debug, Clone)]
pub struct SubgroupData {
    pub members: Vec<usize>,
    pub coset_reps: Vec<usize>,
    is_member: Vec<bool>,
}

impl SubgroupData {
    /// Collects the members and picks left coset representatives greedily in
    /// enumeration order.
    pub fn from_members(table: &GroupTable, members: Vec<usize>) -> Self {
        let mut is_member = vec![false; table.len()];
        for &m in &members {
            is_member[m] = true;
        }
        let mut covered = vec![false; table.len()];
        let mut coset_reps = Vec::new();
        for g in 0..table.len() {
            if covered[g] {
                continue;
            }
            coset_reps.push(g);
            for &h in &members {
                covered[table.mul(g, h)] = true;
            }
        }
        SubgroupData { members, coset_reps, is_member }
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn index(&self) -> usize {
        self.coset_reps.len()
    }

    pub fn contains(&self, element: usize) -> bool {
        self.is_member[element]
    }

    pub fn is_closed(&self, table: &GroupTable) -> bool {
        self.members
            .iter()
            .all(|&a| self.members.iter().all(|&b| self.contains(table.mul(a, b))))
    }
}

fn subgroup_where(table: &GroupTable, keep: impl Fn(&Mat2) -> bool) -> SubgroupData {
    let members = (0..table.len()).filter(|&i| keep(table.element(i))).collect();
    SubgroupData::from_members(table, members)
}

/// Upper unitriangular matrices `U^F`.
pub fn subgroup_u(table: &GroupTable) -> SubgroupData {
    subgroup_where(table, |m| m.c.is_zero() && m.a == Fq2::ONE && m.d == Fq2::ONE)
}

/// Upper triangular matrices `B^F`.
pub fn subgroup_b(table: &GroupTable) -> SubgroupData {
    subgroup_where(table, |m| m.c.is_zero())
}

/// Diagonal matrices `S^F`.
pub fn subgroup_s(table: &GroupTable) -> SubgroupData {
    subgroup_where(table, |m| m.b.is_zero() && m.c.is_zero())
}

/// `[[1, x], [0, 1]]`.
pub fn unipotent_element(table: &GroupTable, x: Fq2) -> usize {
    table
        .index_of(&Mat2::new(Fq2::ONE, x, Fq2::ZERO, Fq2::ONE))
        .expect("x lies in F_q")
}

/// The non-split torus as the image of `μ_{q+1}` acting by multiplication on
/// `F_{q²} = F_q ⊕ F_q·g₂`.
#[derive(Debug, Clone)]
pub struct TorusData {
    pub subgroup: SubgroupData,
    /// `labels[k]` is the group element for `γ^k`.
    pub labels: Vec<usize>,
}

/// Matrix of `z ↦ t·z` on `F_{q²}` in the `F_q`-basis `{1, g₂}`.
pub fn multiplication_matrix(tower: &FieldTower, t: Fq2) -> Mat2 {
    let (a0, c0) = tower.coordinates(t);
    let (a1, c1) = tower.coordinates(tower.mul(t, tower.generator()));
    Mat2::new(a0, a1, c0, c1)
}

pub fn nonsplit_torus(table: &GroupTable) -> TorusData {
    let tower = table.tower();
    let labels: Vec<usize> = tower
        .mu_subgroup()
        .into_iter()
        .map(|t| {
            table
                .index_of(&multiplication_matrix(tower, t))
                .expect("norm-one multiplication has determinant 1")
        })
        .collect();
    let mut members = labels.clone();
    members.sort_unstable();
    TorusData { subgroup: SubgroupData::from_members(table, members), labels }
}

/// The scalar matrix `t·I` over `F_{q²}` by which `t ∈ μ_{q+1}` acts on the
/// `(x, y)`-plane.
pub fn scalar_action_matrix(tower: &FieldTower, t: Fq2) -> Result<Mat2, GroupError> {
    if t.is_zero() || tower.pow(t, tower.q() as i64 + 1) != Fq2::ONE {
        return Err(GroupError::InputNotInMu);
    }
    Ok(Mat2::scalar(t))
}
