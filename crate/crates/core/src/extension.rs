//! Finite models of extensions `1 -> G -> Gamma -> G_m^n -> 1`.
//!
//! An extension is presented by pushout data: a finite group `G`, a divisor
//! chain `r` and a central embedding `iota: mu_r -> G`. The torus `T` is
//! replaced by `T_M = prod Z/(r_i M)`, in which `mu_r` sits as the multiples
//! of `M`, and
//!
//! ```text
//! Gamma_M = (G x T_M) / {(iota(a), -M a) : a in mu_r}
//! ```
//!
//! with `Gamma_M -> (Z/M)^n` induced by reducing the torus coordinates mod `M`.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::groups::{self, direct_product, FiniteGroup, GroupError, GroupHom, GroupSpec, Subgroup};
use crate::lattice::DivisorChain;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtensionError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("invalid extension data: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, ExtensionError>;

fn invalid(msg: impl Into<String>) -> ExtensionError {
    ExtensionError::Invalid(msg.into())
}

/// Pushout data `(G, r, iota, M)`.
///
/// `iota[i]` is the image in `G` of the standard generator of the `i`-th
/// factor `Z/r_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionSpec {
    pub group: FiniteGroup,
    pub r: DivisorChain,
    pub iota: Vec<usize>,
    pub m: usize,
}

impl ExtensionSpec {
    pub fn new(group: FiniteGroup, r: DivisorChain, iota: Vec<usize>, m: usize) -> Result<Self> {
        let spec = ExtensionSpec { group, r, iota, m };
        spec.validate()?;
        Ok(spec)
    }

    pub fn rank(&self) -> usize {
        self.r.len()
    }

    /// `mu_r` as the group `Z/r_1 x ... x Z/r_n`.
    pub fn mu_group(&self) -> FiniteGroup {
        FiniteGroup::abelian(&self.moduli())
    }

    fn moduli(&self) -> Vec<usize> {
        self.r.moduli().iter().map(|&x| x as usize).collect()
    }

    /// Image of every element of `mu_r` (mixed radix) under `iota`, computed
    /// as products of generator powers. No homomorphism check.
    pub fn iota_images(&self) -> Vec<usize> {
        let moduli = self.moduli();
        let g = &self.group;
        mixed_radix(&moduli)
            .map(|coords| coords.iter().zip(&self.iota).fold(g.identity(), |acc, (&c, &gen)| g.mul(acc, g.pow(gen, c))))
            .collect()
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.rank();
        if n == 0 {
            return Err(invalid("r must have at least one entry"));
        }
        if self.m < 2 {
            return Err(invalid(format!("M must be >= 2, got {}", self.m)));
        }
        if self.iota.len() != n {
            return Err(invalid(format!("iota has {} images but r has length {n}", self.iota.len())));
        }
        if let Some(&x) = self.iota.iter().find(|&&x| x >= self.group.order()) {
            return Err(invalid(format!("iota image {x} is not an element of G")));
        }
        let mu = self.mu_group();
        let hom =
            GroupHom::new(&mu, &self.group, self.iota_images()).map_err(|_| invalid("iota is not a homomorphism"))?;
        if !hom.is_injective() {
            return Err(invalid("iota not injective"));
        }
        if !self.group.is_central(&hom.image()) {
            return Err(invalid("iota image not central"));
        }
        Ok(())
    }
}

/// JSON form: `{group, r, iota, M}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtensionSpecJson {
    pub group: GroupSpec,
    pub r: Vec<u64>,
    pub iota: Vec<usize>,
    #[serde(rename = "M")]
    pub m: usize,
}

impl ExtensionSpecJson {
    pub fn build(&self) -> Result<ExtensionSpec> {
        let group = self.group.build()?;
        let r = DivisorChain::new(self.r.clone()).map_err(|e| invalid(format!("r: {e}")))?;
        ExtensionSpec::new(group, r, self.iota.clone(), self.m)
    }
}

#[derive(Clone, Debug)]
pub struct ExtensionModel {
    pub spec: ExtensionSpec,
    pub gamma: FiniteGroup,
    /// `T_M = prod Z/(r_i M)`.
    pub torus_group: FiniteGroup,
    /// `(Z/M)^n`.
    pub torus_quotient: FiniteGroup,
    pub embed_g: GroupHom,
    pub embed_t: GroupHom,
    pub proj: GroupHom,
}

impl ExtensionModel {
    /// `G x T_M`, numbered by [`direct_product`].
    pub fn product_group(&self) -> FiniteGroup {
        direct_product(&self.spec.group, &self.torus_group)
    }

    /// The canonical map `G x T_M -> Gamma_M`, `(g, t) -> g t`.
    pub fn canonical_map(&self) -> GroupHom {
        let t = self.torus_group.order();
        let images = (0..self.spec.group.order() * t)
            .map(|p| self.gamma.mul(self.embed_g.apply(p / t), self.embed_t.apply(p % t)))
            .collect();
        GroupHom::from_images_unchecked(images)
    }

    /// The antidiagonal `{(iota(a), -M a)}` in `G x T_M`, from the stored spec.
    pub fn antidiagonal(&self) -> Vec<usize> {
        let t = &self.torus_group;
        let mut out: Vec<usize> = self
            .spec
            .iota_images()
            .into_iter()
            .zip(self.mu_in_torus())
            .map(|(g, a)| g * t.order() + t.inv(a))
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// `mu_r` inside `T_M` as the `M`-multiples, indexed like `mu_r`.
    fn mu_in_torus(&self) -> Vec<usize> {
        let moduli = self.spec.moduli();
        let torus_moduli: Vec<usize> = moduli.iter().map(|r| r * self.spec.m).collect();
        mixed_radix(&moduli)
            .map(|coords| {
                let scaled: Vec<usize> = coords.iter().map(|c| c * self.spec.m).collect();
                mixed_radix_index(&scaled, &torus_moduli)
            })
            .collect()
    }

    pub fn torus_image(&self) -> Subgroup {
        self.embed_t.image()
    }

    pub fn g_image(&self) -> Subgroup {
        self.embed_g.image()
    }

    /// `image(embed_T) ∩ kernel(proj)`: the copy of `mu_r` inside `Gamma_M`.
    pub fn mu_in_gamma(&self) -> Subgroup {
        self.torus_image().intersection(&self.proj.kernel(&self.torus_quotient))
    }

    /// `mu_r` pulled back to `G`.
    pub fn mu_in_g(&self) -> Subgroup {
        self.embed_g.preimage(&self.torus_image())
    }

    /// `Gbar = G / mu_r`.
    pub fn gbar(&self) -> Result<FiniteGroup> {
        Ok(self.spec.group.quotient(&self.mu_in_g())?.0)
    }
}

pub fn build_extension(spec: &ExtensionSpec) -> Result<ExtensionModel> {
    spec.validate()?;
    let g = &spec.group;
    let moduli = spec.moduli();
    let m = spec.m;
    let torus_moduli: Vec<usize> = moduli.iter().map(|r| r * m).collect();
    let torus_group = FiniteGroup::abelian(&torus_moduli);
    let torus_quotient = FiniteGroup::abelian(&vec![m; moduli.len()]);
    let t_order = torus_group.order();
    let product = direct_product(g, &torus_group);

    let mut model = ExtensionModel {
        spec: spec.clone(),
        gamma: FiniteGroup::trivial(),
        torus_group,
        torus_quotient,
        embed_g: GroupHom::identity(g),
        embed_t: GroupHom::identity(g),
        proj: GroupHom::identity(g),
    };
    let kernel = Subgroup::new(&product, model.antidiagonal())?;
    let (gamma, q) = product.quotient(&kernel)?;

    let embed_g = GroupHom::from_images_unchecked((0..g.order()).map(|x| q.apply(x * t_order)).collect());
    let embed_t = GroupHom::from_images_unchecked((0..t_order).map(|t| q.apply(g.identity() * t_order + t)).collect());
    let mut proj = vec![usize::MAX; gamma.order()];
    let quotient_moduli = vec![m; moduli.len()];
    for p in 0..product.order() {
        let coords = mixed_radix_coords(p % t_order, &torus_moduli);
        let reduced: Vec<usize> = coords.iter().map(|c| c % m).collect();
        let image = mixed_radix_index(&reduced, &quotient_moduli);
        let slot = &mut proj[q.apply(p)];
        if *slot == usize::MAX {
            *slot = image;
        } else if *slot != image {
            return Err(invalid("reduction mod M is not well defined on Gamma_M"));
        }
    }
    model.gamma = gamma;
    model.embed_g = embed_g;
    model.embed_t = embed_t;
    model.proj = GroupHom::from_images_unchecked(proj);
    Ok(model)
}

#[derive(Clone, Debug)]
pub struct ExtensionReport {
    pub r: DivisorChain,
    pub gbar: FiniteGroup,
    pub split_ok: bool,
    pub central_ok: bool,
    pub pushout_ok: bool,
    pub details: String,
}

impl ExtensionReport {
    pub fn all_ok(&self) -> bool {
        self.split_ok && self.central_ok && self.pushout_ok
    }

    pub fn to_json(&self) -> ExtensionReportJson {
        ExtensionReportJson {
            r: self.r.nontrivial().to_vec(),
            gbar: GroupSummary::of(&self.gbar),
            split_ok: self.split_ok,
            central_ok: self.central_ok,
            pushout_ok: self.pushout_ok,
            details: self.details.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupSummary {
    pub order: usize,
    pub description: String,
    pub table: Vec<Vec<usize>>,
}

impl GroupSummary {
    pub fn of(g: &FiniteGroup) -> Self {
        GroupSummary { order: g.order(), description: g.describe(), table: g.rows() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtensionReportJson {
    pub r: Vec<u64>,
    pub gbar: GroupSummary,
    pub split_ok: bool,
    pub central_ok: bool,
    pub pushout_ok: bool,
    pub details: String,
}

/// Extracts `r` and `Gbar` from the model and runs the three structural checks.
pub fn analyze_extension(model: &ExtensionModel) -> Result<ExtensionReport> {
    let r = mu_chain(model)?;
    let gbar = model.gbar()?;
    let split_ok = verify_split(model)?;
    let central_ok = verify_central(model)?;
    let pushout_ok = verify_pushout_exactness(model)?;
    let mut details = String::new();
    let _ = write!(
        details,
        "|G|={} |Gamma_M|={} M={} r={} Gbar={}; Gamma/mu_r ~ Gbar x (Z/M)^n: {split_ok}; \
         T central with Gamma/T ~ Gbar: {central_ok}; 1 -> mu_r -> G x T -> Gamma -> 1 exact: {pushout_ok}",
        model.spec.group.order(),
        model.gamma.order(),
        model.spec.m,
        r,
        gbar.describe(),
    );
    Ok(ExtensionReport { r, gbar, split_ok, central_ok, pushout_ok, details })
}

/// Invariant factors of `image(embed_T) ∩ kernel(proj)`.
pub fn mu_chain(model: &ExtensionModel) -> Result<DivisorChain> {
    let (mu, _) = model.gamma.subgroup_as_group(&model.mu_in_gamma())?;
    Ok(groups::invariant_factors_of_abelian(&mu)?)
}

/// `Gamma_M / mu_r ≅ Gbar x (Z/M)^n`.
pub fn verify_split(model: &ExtensionModel) -> Result<bool> {
    let mu = model.mu_in_gamma();
    if !model.gamma.is_normal(&mu) {
        return Ok(false);
    }
    let (gamma_bar, _) = model.gamma.quotient(&mu)?;
    let expected = direct_product(&model.gbar()?, &model.torus_quotient);
    Ok(groups::is_isomorphic(&gamma_bar, &expected)?)
}

/// `T_M` is central in `Gamma_M` and `Gamma_M / T_M ≅ Gbar`.
pub fn verify_central(model: &ExtensionModel) -> Result<bool> {
    let t = model.torus_image();
    if !model.gamma.is_central(&t) {
        return Ok(false);
    }
    let (quotient, _) = model.gamma.quotient(&t)?;
    Ok(groups::is_isomorphic(&quotient, &model.gbar()?)?)
}

/// `G x T_M -> Gamma_M` is a surjective homomorphism whose kernel is exactly
/// the antidiagonal `mu_r` recorded in the spec.
pub fn verify_pushout_exactness(model: &ExtensionModel) -> Result<bool> {
    let product = model.product_group();
    let map = model.canonical_map();
    if !map.is_homomorphism(&product, &model.gamma) || !map.is_surjective(&model.gamma) {
        return Ok(false);
    }
    Ok(map.kernel(&model.gamma).elements() == model.antidiagonal().as_slice())
}

/// All coordinate vectors for the given moduli in mixed-radix order.
pub(crate) fn mixed_radix(moduli: &[usize]) -> impl Iterator<Item = Vec<usize>> + '_ {
    let total: usize = moduli.iter().product();
    (0..total).map(move |i| mixed_radix_coords(i, moduli))
}

pub(crate) fn mixed_radix_coords(mut index: usize, moduli: &[usize]) -> Vec<usize> {
    let mut coords = vec![0; moduli.len()];
    for (slot, &m) in coords.iter_mut().zip(moduli).rev() {
        *slot = index % m;
        index /= m;
    }
    coords
}

pub(crate) fn mixed_radix_index(coords: &[usize], moduli: &[usize]) -> usize {
    coords.iter().zip(moduli).fold(0, |acc, (&c, &m)| acc * m + c)
}
