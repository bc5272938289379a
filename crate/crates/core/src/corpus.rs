//! Case corpora for the structure-theorem verifier.
//!
//! Every generated action is a disjoint union of coset spaces `G/K` with
//! `K ⊇ mu_r`, so `mu_r` acts trivially by construction.

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::extension::ExtensionSpec;
use crate::groupoid::{verify_main_theorem, GroupoidError, TheoremCaseJson, TheoremReport};
use crate::groups::{FiniteGroup, GroupSpec, Subgroup};
use crate::lattice::DivisorChain;

/// Seed used by `corpus --random` when none is given.
pub const DEFAULT_SEED: u64 = 20_240_611;

/// Largest `U` generated.
pub const MAX_POINTS: usize = 6;

/// The bundled corpus, as shipped in `data/corpus.json`.
pub const BUNDLED_CORPUS: &str = include_str!("../data/corpus.json");

/// `(group, r, iota)` with `iota` central and injective.
const SPECS: &[(&str, &[u64], &[usize])] = &[
    ("C2", &[2], &[1]),
    ("C4", &[2], &[2]),
    ("C4", &[4], &[1]),
    ("C6", &[2], &[3]),
    ("C6", &[3], &[2]),
    ("C6", &[6], &[1]),
    ("C2xC2", &[2], &[1]),
    ("C2xC2", &[2], &[2]),
    ("C2xC2", &[2, 2], &[2, 1]),
    ("C2xC4", &[2], &[4]),
    ("C2xC4", &[2], &[2]),
    ("C2xC4", &[4], &[1]),
    ("C2xC4", &[2, 2], &[4, 2]),
    ("C2xC4", &[2, 4], &[4, 1]),
    ("Q8", &[2], &[1]),
    ("D4", &[2], &[2]),
];

/// Keeps `|G x T_M|` at most 256.
fn admissible(group_order: usize, r: &[u64], m: usize) -> bool {
    let torus: usize = r.iter().map(|&x| x as usize * m).product();
    group_order * torus <= 256
}

/// Left multiplication on the cosets `gK`, numbered by smallest element.
pub fn coset_action(g: &FiniteGroup, k: &Subgroup) -> Vec<Vec<usize>> {
    let mut coset_of = vec![usize::MAX; g.order()];
    let mut reps = Vec::new();
    for x in 0..g.order() {
        if coset_of[x] != usize::MAX {
            continue;
        }
        for &y in k.elements() {
            coset_of[g.mul(x, y)] = reps.len();
        }
        reps.push(x);
    }
    (0..g.order()).map(|h| reps.iter().map(|&x| coset_of[g.mul(h, x)]).collect()).collect()
}

/// Disjoint union of actions, points numbered block by block.
pub fn disjoint_union(order: usize, parts: &[Vec<Vec<usize>>]) -> Vec<Vec<usize>> {
    (0..order)
        .map(|h| {
            let mut offset = 0;
            let mut row = Vec::new();
            for part in parts {
                row.extend(part[h].iter().map(|&u| u + offset));
                offset += part[h].len();
            }
            row
        })
        .collect()
}

/// Actions of `G` on at most [`MAX_POINTS`] points in which `mu` acts
/// trivially: a point, each coset space `G/K` with `K ⊇ mu`, and a point
/// plus each such coset space.
pub fn candidate_actions(g: &FiniteGroup, mu: &Subgroup) -> Vec<Vec<Vec<usize>>> {
    let point = vec![vec![0]; g.order()];
    let mut out = vec![point.clone()];
    let spaces: Vec<Vec<Vec<usize>>> = g
        .all_subgroups()
        .into_iter()
        .filter(|k| mu.is_subset_of(k) && k.len() < g.order() && g.order() / k.len() <= MAX_POINTS)
        .map(|k| coset_action(g, &k))
        .collect();
    for space in &spaces {
        out.push(space.clone());
    }
    for space in &spaces {
        if space[0].len() < MAX_POINTS {
            out.push(disjoint_union(g.order(), &[point.clone(), space.clone()]));
        }
    }
    out
}

fn make_case(
    name: String,
    group: &str,
    r: &[u64],
    iota: &[usize],
    m: usize,
    action: Vec<Vec<usize>>,
) -> TheoremCaseJson {
    TheoremCaseJson {
        name: Some(name),
        group: GroupSpec::Named(group.into()),
        r: r.to_vec(),
        iota: iota.to_vec(),
        m,
        u_size: action[0].len(),
        action,
    }
}

fn mu_of(group: &FiniteGroup, r: &[u64], iota: &[usize], m: usize) -> Subgroup {
    let spec = ExtensionSpec {
        group: group.clone(),
        r: DivisorChain::new(r.to_vec()).expect("chain"),
        iota: iota.to_vec(),
        m,
    };
    group.generate(&spec.iota_images())
}

/// The bundled corpus: every admissible `(G, r, iota, M)` from a fixed list,
/// each with an action chosen by rotating through [`candidate_actions`].
pub fn default_corpus() -> Vec<TheoremCaseJson> {
    let mut cases = Vec::new();
    for (i, &(name, r, iota)) in SPECS.iter().enumerate() {
        let g = FiniteGroup::by_name(name).expect("known group");
        for m in [2, 3, 4] {
            if !admissible(g.order(), r, m) {
                continue;
            }
            let actions = candidate_actions(&g, &mu_of(&g, r, iota, m));
            let action = actions[(i + m) % actions.len()].clone();
            let label = format!("{name} r={r:?} iota={iota:?} M={m} |U|={}", action[0].len());
            cases.push(make_case(label, name, r, iota, m, action));
        }
    }
    cases
}

/// `count` seeded random cases drawn from the same families.
pub fn random_corpus(seed: u64, count: usize) -> Vec<TheoremCaseJson> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cases = Vec::with_capacity(count);
    while cases.len() < count {
        let &(name, r, iota) = SPECS.choose(&mut rng).expect("nonempty");
        let m = rng.random_range(2..=4);
        let g = FiniteGroup::by_name(name).expect("known group");
        if !admissible(g.order(), r, m) {
            continue;
        }
        let actions = candidate_actions(&g, &mu_of(&g, r, iota, m));
        let action = actions.choose(&mut rng).expect("nonempty").clone();
        let label = format!("random-{} {name} r={r:?} M={m} |U|={}", cases.len(), action[0].len());
        cases.push(make_case(label, name, r, iota, m, action));
    }
    cases
}

/// `D4` with `mu_2` sent to a reflection, which is not central.
pub fn negative_control() -> TheoremCaseJson {
    make_case("negative control: non-central iota".into(), "D4", &[2], &[4], 2, vec![vec![0]; 8])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CaseStatus {
    Pass,
    Fail,
    Rejected,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseOutcome {
    pub name: String,
    pub status: CaseStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub report: Option<TheoremReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

/// Number of passing cases per check.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartCounts {
    pub split: usize,
    pub central: usize,
    pub pushout: usize,
    pub part1: usize,
    pub part2: usize,
    pub part3: usize,
    pub stabilizers: usize,
    pub containment: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusSummary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub rejected: usize,
    pub parts: PartCounts,
    pub cases: Vec<CaseOutcome>,
}

impl CorpusSummary {
    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }
}

pub fn run_case(index: usize, case: &TheoremCaseJson) -> CaseOutcome {
    let name = case.name.clone().unwrap_or_else(|| format!("case {index}"));
    let outcome = case.build().and_then(|c| verify_main_theorem(&c));
    match outcome {
        Ok(report) => CaseOutcome {
            name,
            status: if report.all_ok() { CaseStatus::Pass } else { CaseStatus::Fail },
            report: Some(report),
            error: None,
        },
        Err(e @ (GroupoidError::Precondition(_) | GroupoidError::Group(_) | GroupoidError::InvalidAction(_))) => {
            CaseOutcome { name, status: CaseStatus::Rejected, report: None, error: Some(e.to_string()) }
        }
        Err(e) => CaseOutcome { name, status: CaseStatus::Fail, report: None, error: Some(e.to_string()) },
    }
}

/// Runs every case in order. Precondition violations are reported as
/// rejected rather than as failures.
pub fn run_corpus(cases: &[TheoremCaseJson]) -> CorpusSummary {
    let mut summary = CorpusSummary::default();
    for (i, case) in cases.iter().enumerate() {
        let outcome = run_case(i, case);
        summary.total += 1;
        match outcome.status {
            CaseStatus::Pass => summary.passed += 1,
            CaseStatus::Fail => summary.failed += 1,
            CaseStatus::Rejected => summary.rejected += 1,
        }
        if let Some(rep) = &outcome.report {
            let p = &mut summary.parts;
            p.split += usize::from(rep.split_ok);
            p.central += usize::from(rep.central_ok);
            p.pushout += usize::from(rep.pushout_ok);
            p.part1 += usize::from(rep.part1_ok);
            p.part2 += usize::from(rep.part2_ok);
            p.part3 += usize::from(rep.part3_ok);
            p.stabilizers += usize::from(rep.stabilizers_ok);
            p.containment += usize::from(rep.containment_ok);
        }
        summary.cases.push(outcome);
    }
    summary
}

pub fn parse_corpus(text: &str) -> serde_json::Result<Vec<TheoremCaseJson>> {
    serde_json::from_str(text)
}

/// Pretty JSON with one case per line block; the format of `data/corpus.json`.
pub fn corpus_to_json(cases: &[TheoremCaseJson]) -> String {
    let mut out = serde_json::to_string_pretty(cases).expect("serializable");
    out.push('\n');
    out
}
