//! End-to-end check of the structure theorem for a finite quotient model.
//!
//! A case is a finite group `G` with a central `mu_r`, a modulus `M` and an
//! action of `G` on a finite set `U` in which `mu_r` acts trivially. The
//! torus acts trivially on `U`, so `Gamma_M` acts through `Gamma_M -> Gbar`.
//!
//! Only reduced, finite `U` is modeled. Nonreduced test schemes have no
//! finite-set counterpart and are out of reach of this verifier.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::{equivalent, is_banded_gerbe, rigidify, ActionGroupoid, GroupoidError, Result};
use crate::extension::{analyze_extension, build_extension, ExtensionModel, ExtensionSpec};
use crate::groups::{self, direct_product, FiniteGroup, GroupHom, GroupSpec};
use crate::lattice::DivisorChain;

#[derive(Clone, Debug)]
pub struct TheoremCase {
    pub spec: ExtensionSpec,
    pub points: usize,
    /// `action[g][u] = g.u` for `g` in `G`.
    pub action: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremCaseJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub group: GroupSpec,
    pub r: Vec<u64>,
    pub iota: Vec<usize>,
    #[serde(rename = "M")]
    pub m: usize,
    #[serde(rename = "U_size")]
    pub u_size: usize,
    pub action: Vec<Vec<usize>>,
}

impl TheoremCaseJson {
    pub fn build(&self) -> Result<TheoremCase> {
        let group = self.group.build()?;
        let r = DivisorChain::new(self.r.clone()).map_err(|e| precondition(format!("r: {e}")))?;
        let spec = ExtensionSpec { group, r, iota: self.iota.clone(), m: self.m };
        Ok(TheoremCase { spec, points: self.u_size, action: self.action.clone() })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremReport {
    pub r: Vec<u64>,
    pub gbar: String,
    pub gamma_order: usize,
    /// Number of points of the coarse space `Y = U/Gbar`.
    pub coarse_points: usize,
    pub split_ok: bool,
    pub central_ok: bool,
    pub pushout_ok: bool,
    /// `rigidify([U/Gamma], mu_r) ≃ [U/Gbar] x B(Z/M)^n`, banded by `mu_r`.
    pub part1_ok: bool,
    /// `[U/(G x T)] -> [U/Gamma] -> [U/(Gamma/mu_r)]` are banded gerbes with
    /// bands `mu_r`, `mu_r` and composite band `mu_r x mu_r`.
    pub part2_ok: bool,
    /// `rigidify([U/Gamma], T) ≃ [U/Gbar]`.
    pub part3_ok: bool,
    pub stabilizers_ok: bool,
    pub containment_ok: bool,
    pub details: Vec<String>,
}

impl TheoremReport {
    pub fn all_ok(&self) -> bool {
        self.split_ok
            && self.central_ok
            && self.pushout_ok
            && self.part1_ok
            && self.part2_ok
            && self.part3_ok
            && self.stabilizers_ok
            && self.containment_ok
    }
}

fn precondition(msg: impl Into<String>) -> GroupoidError {
    GroupoidError::Precondition(msg.into())
}

fn check_preconditions(case: &TheoremCase) -> Result<ExtensionModel> {
    case.spec.validate().map_err(|e| precondition(e.to_string()))?;
    let g = &case.spec.group;
    let on_g =
        ActionGroupoid::new(g.clone(), case.points, case.action.clone()).map_err(|e| precondition(e.to_string()))?;
    let model = build_extension(&case.spec).map_err(|e| precondition(e.to_string()))?;
    if !on_g.acts_trivially(&model.mu_in_g()) {
        return Err(precondition("mu_r does not act trivially on U"));
    }
    Ok(model)
}

/// `K` acting on `U` through a map `phi: K -> G` (given by images).
fn induced(
    group: &FiniteGroup,
    phi: impl Fn(usize) -> usize,
    action: &[Vec<usize>],
    points: usize,
) -> Result<ActionGroupoid> {
    let act = (0..group.order()).map(|k| action[phi(k)].clone()).collect();
    ActionGroupoid::new(group.clone(), points, act)
}

/// Action of a quotient `G/N` given the quotient map `q: G -> G/N`.
fn descended(quotient: &FiniteGroup, q: &GroupHom, action: &[Vec<usize>], points: usize) -> Result<ActionGroupoid> {
    let mut act = vec![Vec::new(); quotient.order()];
    for (g, perm) in action.iter().enumerate() {
        act[q.apply(g)] = perm.clone();
    }
    ActionGroupoid::new(quotient.clone(), points, act)
}

fn chain_of(g: &FiniteGroup) -> Result<DivisorChain> {
    Ok(groups::invariant_factors_of_abelian(g)?)
}

pub fn verify_main_theorem(case: &TheoremCase) -> Result<TheoremReport> {
    let model = check_preconditions(case)?;
    let ext = analyze_extension(&model).map_err(|e| precondition(e.to_string()))?;
    let (g, gamma, n) = (&case.spec.group, &model.gamma, case.points);
    let mut details = vec![ext.details.clone()];
    let r = case.spec.r.clone();

    // Gamma acts through the quotient map P = G x T -> Gamma.
    let product = model.product_group();
    let t_order = model.torus_group.order();
    let q = model.canonical_map();
    let mut gamma_act = vec![Vec::new(); gamma.order()];
    for p in 0..product.order() {
        gamma_act[q.apply(p)] = case.action[p / t_order].clone();
    }
    let on_gamma = ActionGroupoid::new(gamma.clone(), n, gamma_act.clone())?;
    let on_product = induced(&product, |p| p / t_order, &case.action, n)?;

    let mu_g = model.mu_in_g();
    let (gbar, gbar_q) = g.quotient(&mu_g)?;
    let on_gbar = descended(&gbar, &gbar_q, &case.action, n)?;
    let gbar_torus = direct_product(&gbar, &model.torus_quotient);
    let tq = model.torus_quotient.order();
    let on_gbar_torus = induced(&gbar_torus, |x| x / tq, &on_gbar.action, n)?;
    let coarse_points = on_gbar.groupoid.components().len();

    // (1)
    let mu_gamma = model.mu_in_gamma();
    let (rig_mu, w_mu) = rigidify(&on_gamma.groupoid, &on_gamma.subgroup_assignment(&mu_gamma))?;
    let eq1 = equivalent(&rig_mu, &on_gbar_torus.groupoid)?;
    let banded1 = is_banded_gerbe(&w_mu);
    let band1 = chain_of(&w_mu.band)? == r;
    let part1_ok = eq1 && banded1 && band1;
    details.push(format!(
        "rigidify by mu_r: equivalent to [U/Gbar x (Z/M)^n] {eq1}, banded gerbe {banded1}, band ~ mu_r {band1}"
    ));

    // (2)
    let (gamma_bar, gamma_bar_q) = gamma.quotient(&mu_gamma)?;
    let on_gamma_bar = descended(&gamma_bar, &gamma_bar_q, &gamma_act, n)?;
    let first = on_product.pushforward(&on_gamma, &q)?;
    let second = on_gamma.pushforward(&on_gamma_bar, &gamma_bar_q)?;
    let composite = on_product.pushforward(&on_gamma_bar, &q.compose(&gamma_bar_q))?;
    let mut squared: Vec<u64> = r.moduli().iter().chain(r.moduli()).copied().collect();
    squared.sort_unstable();
    let r_squared = DivisorChain::normalize(&squared.iter().map(|&x| x as i64).collect::<Vec<_>>())
        .map_err(|e| precondition(e.to_string()))?;
    let steps = [
        ("G x T -> Gamma", &first, &r),
        ("Gamma -> Gamma/mu_r", &second, &r),
        ("G x T -> Gamma/mu_r", &composite, &r_squared),
    ];
    let mut part2_ok = equivalent(&on_gamma_bar.groupoid, &on_gbar_torus.groupoid)?;
    for (label, witness, expected) in steps {
        let banded = is_banded_gerbe(witness);
        let band = chain_of(&witness.band)? == *expected;
        part2_ok &= banded && band;
        details.push(format!("{label}: banded gerbe {banded}, band {} expected {expected} {band}", witness.band));
    }

    // (3)
    let torus = model.torus_image();
    let central = gamma.is_central(&torus) && on_gamma.acts_trivially(&torus);
    let part3_ok = central && {
        let (rig_t, w_t) = rigidify(&on_gamma.groupoid, &on_gamma.subgroup_assignment(&torus))?;
        let eq3 = equivalent(&rig_t, &on_gbar.groupoid)?;
        let banded3 = is_banded_gerbe(&w_t);
        details.push(format!("rigidify by T: equivalent to [U/Gbar] {eq3}, banded gerbe {banded3}"));
        eq3 && banded3
    };

    let stabilizers_ok = verify_stabilizer_sequences(&model, &case.action)?;
    details.push(format!("stabilizer sequences exact with T ∩ Stab_G = mu_r at every point: {stabilizers_ok}"));

    let (containment_ok, note) = containment_sweep(&model, &on_gamma, &case.action)?;
    details.push(note);
    details.push(format!("Y = U/Gbar has {coarse_points} point(s)"));

    Ok(TheoremReport {
        r: r.nontrivial().to_vec(),
        gbar: gbar.describe(),
        gamma_order: gamma.order(),
        coarse_points,
        split_ok: ext.split_ok,
        central_ok: ext.central_ok,
        pushout_ok: ext.pushout_ok,
        part1_ok,
        part2_ok,
        part3_ok,
        stabilizers_ok,
        containment_ok,
        details,
    })
}

/// At every point `x`: `1 -> Stab_G(x) -> Stab_Gamma(x) -> (Z/M)^n -> 1`
/// is exact, and `T ∩ Stab_G(x)` is `mu_r` with the expected invariant factors.
pub fn verify_stabilizer_sequences(model: &ExtensionModel, action: &[Vec<usize>]) -> Result<bool> {
    let g = &model.spec.group;
    let gamma = &model.gamma;
    let points = action.first().map_or(0, Vec::len);
    let on_g = ActionGroupoid::new(g.clone(), points, action.to_vec())?;
    let q = model.canonical_map();
    let t_order = model.torus_group.order();
    let mut gamma_act = vec![Vec::new(); gamma.order()];
    for p in 0..q.images().len() {
        gamma_act[q.apply(p)] = action[p / t_order].clone();
    }
    let on_gamma = ActionGroupoid::new(gamma.clone(), points, gamma_act)?;
    let torus = model.torus_image();
    let quotient_order = model.torus_quotient.order();
    for x in 0..points {
        let stab_g = on_g.stabilizer(x);
        let stab_gamma = on_gamma.stabilizer(x);
        let image = model.embed_g.image_of(&stab_g);
        let injective = image.len() == stab_g.len();
        let kernel: Vec<usize> = stab_gamma
            .elements()
            .iter()
            .copied()
            .filter(|&y| model.proj.apply(y) == model.torus_quotient.identity())
            .collect();
        let exact_middle = kernel == image.elements();
        let surjective = model.proj.image_of(&stab_gamma).len() == quotient_order;
        let restricted = torus.intersection(&image);
        let (restricted_group, _) = gamma.subgroup_as_group(&restricted)?;
        let chain_ok = chain_of(&restricted_group)? == model.spec.r;
        if !(injective && exact_middle && surjective && chain_ok) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Over all central subgroups `H` of `G` acting trivially on `U`, a
/// rigidification by `H` that looks like `[U/(G/H)] x B(Z/M)^n` with no
/// surviving torus stabilizers must have `mu_r ⊆ H`; and `H = mu_r` must
/// qualify.
///
/// "No surviving torus stabilizers" means that no non-identity element of
/// `T ∩ ker(Gamma -> (Z/M)^n)` remains in any automorphism group after
/// rigidifying.
fn containment_sweep(
    model: &ExtensionModel,
    on_gamma: &ActionGroupoid,
    action: &[Vec<usize>],
) -> Result<(bool, String)> {
    let g = &model.spec.group;
    let points = on_gamma.points;
    let on_g = ActionGroupoid::new(g.clone(), points, action.to_vec())?;
    let mu_g = model.mu_in_g();
    let mu_gamma = model.mu_in_gamma();
    let mut candidates = 0;
    let mut qualifying = 0;
    let mut ok = true;
    let mut mu_qualifies = false;
    for h in g.all_subgroups() {
        if !g.is_central(&h) || !on_g.acts_trivially(&h) {
            continue;
        }
        candidates += 1;
        let (quotient, quotient_map) = g.quotient(&h)?;
        let target_group = direct_product(&quotient, &model.torus_quotient);
        let tq = model.torus_quotient.order();
        let on_quotient = descended(&quotient, &quotient_map, action, points)?;
        let target = induced(&target_group, |x| x / tq, &on_quotient.action, points)?;
        let h_gamma = model.embed_g.image_of(&h);
        let (rig, witness) = rigidify(&on_gamma.groupoid, &on_gamma.subgroup_assignment(&h_gamma))?;
        let looks_right = equivalent(&rig, &target.groupoid)?;
        let no_torus_stabilizers = (0..points).all(|x| {
            mu_gamma.elements().iter().all(|&m| witness.morphism_map[on_gamma.morphism(x, m)] == rig.identity(x))
        });
        if looks_right && no_torus_stabilizers {
            qualifying += 1;
            ok &= mu_g.is_subset_of(&h);
            mu_qualifies |= h == mu_g;
        }
    }
    let ok = ok && mu_qualifies;
    let note = format!(
        "containment sweep: {candidates} central trivially-acting subgroups, {qualifying} qualify, \
         all contain mu_r and mu_r qualifies: {ok}"
    );
    Ok((ok, note))
}

/// Human-readable summary of a report, one line per check.
pub fn render_report(report: &TheoremReport) -> String {
    let mut out = String::new();
    let rows = [
        ("split", report.split_ok),
        ("central", report.central_ok),
        ("pushout", report.pushout_ok),
        ("part1", report.part1_ok),
        ("part2", report.part2_ok),
        ("part3", report.part3_ok),
        ("stabilizers", report.stabilizers_ok),
        ("containment", report.containment_ok),
    ];
    for (label, ok) in rows {
        let _ = writeln!(out, "{label}: {}", if ok { "pass" } else { "FAIL" });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn case(group: FiniteGroup, r: &[u64], iota: Vec<usize>, m: usize, action: Vec<Vec<usize>>) -> TheoremCase {
        let points = action[0].len();
        let spec = ExtensionSpec { group, r: DivisorChain::new(r.to_vec()).unwrap(), iota, m };
        TheoremCase { spec, points, action }
    }

    fn trivial_action(order: usize, points: usize) -> Vec<Vec<usize>> {
        vec![(0..points).collect(); order]
    }

    #[test]
    fn kummer_case() {
        let c = case(FiniteGroup::cyclic(2), &[2], vec![1], 4, trivial_action(2, 1));
        let report = verify_main_theorem(&c).unwrap();
        assert!(report.all_ok(), "{report:?}");
        assert_eq!(report.coarse_points, 1);
        assert_eq!(report.r, vec![2]);
        assert_eq!(report.gamma_order, 8);
    }

    #[test]
    fn cyclic_four_swapping_two_points() {
        let action = (0..4).map(|k| if k % 2 == 1 { vec![1, 0] } else { vec![0, 1] }).collect();
        let c = case(FiniteGroup::cyclic(4), &[2], vec![2], 3, action);
        let report = verify_main_theorem(&c).unwrap();
        assert!(report.all_ok(), "{report:?}");
        assert_eq!(report.coarse_points, 1);
    }

    #[test]
    fn trivial_r_collapses() {
        let c = case(FiniteGroup::cyclic(2), &[1], vec![0], 2, vec![vec![0, 1], vec![1, 0]]);
        let report = verify_main_theorem(&c).unwrap();
        assert!(report.all_ok(), "{report:?}");
        assert!(report.r.is_empty());
    }

    #[test]
    fn quaternion_with_central_mu() {
        let q8 = FiniteGroup::quaternion();
        // i acts by swapping, j trivially: Q8 -> Q8/<-1, j> ~ Z/2
        let sub = q8.generate(&[5]);
        let action = (0..8).map(|g| if sub.contains(g) { vec![0, 1, 2] } else { vec![1, 0, 2] }).collect();
        let c = case(q8, &[2], vec![1], 2, action);
        let report = verify_main_theorem(&c).unwrap();
        assert!(report.all_ok(), "{report:?}");
        assert_eq!(report.coarse_points, 2);
    }

    #[test]
    fn rank_two() {
        let g = FiniteGroup::abelian(&[2, 4]);
        let c = case(g, &[2, 4], vec![4, 1], 2, trivial_action(8, 1));
        let report = verify_main_theorem(&c).unwrap();
        assert!(report.all_ok(), "{report:?}");
    }

    #[test]
    fn preconditions_named() {
        // mu_2 = {0, 2} in Z/4 acting nontrivially
        let action = (0..4).map(|k| if k % 2 == 1 { vec![1, 0] } else { vec![0, 1] }).collect::<Vec<_>>();
        let shifted: Vec<Vec<usize>> =
            (0..4).map(|k| if k == 0 { vec![0, 1] } else { action[(k + 1) % 4].clone() }).collect();
        let c = case(FiniteGroup::cyclic(4), &[2], vec![2], 2, shifted);
        assert!(matches!(verify_main_theorem(&c), Err(GroupoidError::Precondition(_))));

        let c = case(FiniteGroup::dihedral(4), &[2], vec![4], 2, trivial_action(8, 1));
        let err = verify_main_theorem(&c).unwrap_err();
        assert!(err.to_string().contains("central"), "{err}");

        let acting = (0..4).map(|k| if k == 2 { vec![1, 0] } else { vec![0, 1] }).collect();
        let c = case(FiniteGroup::cyclic(4), &[2], vec![2], 2, acting);
        let err = verify_main_theorem(&c).unwrap_err();
        assert!(err.to_string().contains("action") || err.to_string().contains("mu_r"), "{err}");
    }

    #[test]
    fn json_round_trip() {
        let text = r#"{"group":"C4","r":[2],"iota":[2],"M":3,"U_size":2,"action":[[0,1],[1,0],[0,1],[1,0]]}"#;
        let parsed: TheoremCaseJson = serde_json::from_str(text).unwrap();
        let case = parsed.build().unwrap();
        assert!(verify_main_theorem(&case).unwrap().all_ok());
        let back = serde_json::to_string(&parsed).unwrap();
        assert_eq!(back, text);
    }
}
