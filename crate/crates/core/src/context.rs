use std::sync::Arc;

use crate::cyclotomic::CycloField;
use crate::error::Error;
use crate::fields::{FieldTower, Fq2, DEFAULT_BOUND};
use crate::group::{
    nonsplit_torus, subgroup_b, subgroup_s, subgroup_u, Classes, ElementKind, GroupTable,
    SubgroupData, TorusData,
};

/// Everything built once per `q`: fields, `Q(ζ_N)`, the group, its classes
/// and the standard subgroups. Immutable after construction.
#[derive(Debug)]
pub struct Sl2Context {
    pub tower: Arc<FieldTower>,
    pub cyclo: Arc<CycloField>,
    pub group: GroupTable,
    pub classes: Classes,
    pub u: SubgroupData,
    pub b: SubgroupData,
    pub s: SubgroupData,
    pub torus: TorusData,
}

impl Sl2Context {
    pub fn new(q: u32) -> Result<Self, Error> {
        Self::with_bound(q, DEFAULT_BOUND)
    }

    pub fn with_bound(q: u32, bound: u32) -> Result<Self, Error> {
        let tower = Arc::new(FieldTower::with_bound(q, bound)?);
        let cyclo = CycloField::for_tower(&tower);
        let group = GroupTable::new(Arc::clone(&tower))?;
        let classes = Classes::new(&group);
        Ok(Sl2Context {
            u: subgroup_u(&group),
            b: subgroup_b(&group),
            s: subgroup_s(&group),
            torus: nonsplit_torus(&group),
            tower,
            cyclo,
            group,
            classes,
        })
    }

    pub fn q(&self) -> u32 {
        self.tower.q()
    }

    pub fn p(&self) -> u32 {
        self.tower.p()
    }

    pub fn group_order(&self) -> usize {
        self.group.len()
    }

    pub fn identity_class(&self) -> usize {
        self.classes.class_of(self.group.identity())
    }

    /// An eigenvalue `α` of the representative of a p-regular class; the other
    /// one is `α⁻¹`. `None` on p-singular classes.
    pub fn eigenvalue(&self, class: usize) -> Option<Fq2> {
        let data = self.classes.get(class);
        if !data.p_regular {
            return None;
        }
        let f = &*self.tower;
        match data.kind {
            ElementKind::Identity => Some(Fq2::ONE),
            ElementKind::MinusIdentity => Some(f.neg(Fq2::ONE)),
            _ => {
                let g = self.group.element(data.representative);
                f.reciprocal_roots(g.trace(f)).first().copied()
            }
        }
    }
}
