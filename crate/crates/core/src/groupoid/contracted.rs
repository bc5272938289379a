//! Central extensions `1 -> A -> E -> Q -> 1` and their contracted product.

use super::{GroupoidError, Result};
use crate::groups::{self, direct_product, FiniteGroup, GroupHom, Subgroup};

#[derive(Clone, Debug)]
pub struct CentralExtension {
    pub group: FiniteGroup,
    pub band: FiniteGroup,
    pub base: FiniteGroup,
    pub inclusion: GroupHom,
    pub projection: GroupHom,
}

impl CentralExtension {
    /// Checks that `inclusion` is injective with central image equal to
    /// the kernel of the surjection `projection`.
    pub fn new(
        group: FiniteGroup,
        band: FiniteGroup,
        base: FiniteGroup,
        inclusion: GroupHom,
        projection: GroupHom,
    ) -> Result<Self> {
        let bad = |msg: &str| Err(GroupoidError::Invalid(msg.into()));
        if !inclusion.is_homomorphism(&band, &group) || !projection.is_homomorphism(&group, &base) {
            return bad("structure maps are not homomorphisms");
        }
        if !inclusion.is_injective() {
            return bad("band inclusion is not injective");
        }
        if !projection.is_surjective(&base) {
            return bad("projection is not surjective");
        }
        let image = inclusion.image();
        if image != projection.kernel(&base) {
            return bad("band image is not the kernel of the projection");
        }
        if !group.is_central(&image) {
            return bad("band is not central");
        }
        Ok(CentralExtension { group, band, base, inclusion, projection })
    }

    /// `A x Q` with the obvious maps.
    pub fn trivial(band: &FiniteGroup, base: &FiniteGroup) -> Self {
        let q = base.order();
        let group = direct_product(band, base);
        let inclusion = GroupHom::from_images_unchecked((0..band.order()).map(|a| a * q + base.identity()).collect());
        let projection = GroupHom::from_images_unchecked((0..group.order()).map(|p| p % q).collect());
        CentralExtension { group, band: band.clone(), base: base.clone(), inclusion, projection }
    }

    /// Isomorphism of extensions: `phi: E -> E'` with `phi i = i'` and `p' phi = p`.
    /// Band and base must have identical tables.
    pub fn is_equivalent(&self, other: &CentralExtension) -> Result<bool> {
        if self.band != other.band || self.base != other.base {
            return Ok(false);
        }
        if self.group.order() != other.group.order() {
            return Ok(false);
        }
        let fixed: Vec<(usize, usize)> =
            self.band.generators().into_iter().map(|a| (self.inclusion.apply(a), other.inclusion.apply(a))).collect();
        let found = groups::find_isomorphism_with(&self.group, &other.group, &fixed, |x, y| {
            self.projection.apply(x) == other.projection.apply(y)
        })?;
        Ok(found.is_some_and(|phi| {
            (0..self.band.order()).all(|a| phi.apply(self.inclusion.apply(a)) == other.inclusion.apply(a))
                && (0..self.group.order()).all(|x| other.projection.apply(phi.apply(x)) == self.projection.apply(x))
        }))
    }
}

/// `(E1 x_Q E2) / {(i1(a), i2(a)^-1)}`, a central extension of `Q` by `A`.
pub fn contracted_product_over_point(e1: &CentralExtension, e2: &CentralExtension) -> Result<CentralExtension> {
    if e1.base != e2.base {
        return Err(GroupoidError::Invalid("extensions have different quotients".into()));
    }
    if e1.band != e2.band {
        return Err(GroupoidError::Invalid("extensions have different bands".into()));
    }
    let (band, base) = (&e1.band, &e1.base);
    let n2 = e2.group.order();
    let product = direct_product(&e1.group, &e2.group);
    let fiber = Subgroup::new(
        &product,
        (0..product.order()).filter(|&p| e1.projection.apply(p / n2) == e2.projection.apply(p % n2)).collect(),
    )?;
    let (fiber_group, fiber_incl) = product.subgroup_as_group(&fiber)?;
    let antidiagonal: Vec<usize> = (0..band.order())
        .map(|a| {
            let p = e1.inclusion.apply(a) * n2 + e2.inclusion.apply(band.inv(a));
            fiber.index_of(p).expect("antidiagonal lies over the identity")
        })
        .collect();
    let antidiagonal = Subgroup::new(&fiber_group, antidiagonal)?;
    let (group, q) = fiber_group.quotient(&antidiagonal)?;
    let identity2 = e2.group.identity();
    let inclusion = (0..band.order())
        .map(|a| q.apply(fiber.index_of(e1.inclusion.apply(a) * n2 + identity2).expect("in fiber")))
        .collect();
    let mut projection = vec![0; group.order()];
    for i in 0..fiber_group.order() {
        projection[q.apply(i)] = e1.projection.apply(fiber_incl.apply(i) / n2);
    }
    CentralExtension::new(
        group,
        band.clone(),
        base.clone(),
        GroupHom::from_images_unchecked(inclusion),
        GroupHom::from_images_unchecked(projection),
    )
}
