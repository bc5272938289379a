//! Root gerbe classes in `Pic(Y) / r Pic(Y)`.
//!
//! Only the Kummer image of `H^2(Y, mu_r)` is modeled: a class is a line
//! bundle modulo `r`-th powers, so every class here is the class of a root
//! gerbe and triviality is vanishing of all coordinates.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lattice::{coker_structure, FinAbGroup, IntMatrix, LatticeError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GerbeError {
    #[error("classes live over different bases")]
    BaseMismatch,
    #[error("classes have different r ({0} vs {1})")]
    RMismatch(u64, u64),
    #[error("r must be >= 1")]
    ZeroR,
    #[error("line bundle has {got} coordinates but Pic has {expected} generators")]
    Arity { expected: usize, got: usize },
    #[error("invalid Pic: {0}")]
    Pic(String),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

pub type Result<T> = std::result::Result<T, GerbeError>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PicGenerator {
    pub label: String,
    /// `None` for a free generator.
    pub order: Option<u64>,
}

/// Presentation of a Picard group as a list of cyclic generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PicModel {
    pub generators: Vec<PicGenerator>,
}

impl PicModel {
    pub fn new(generators: Vec<PicGenerator>) -> Result<Self> {
        if generators.iter().any(|g| g.order == Some(0)) {
            return Err(GerbeError::Pic("torsion generator of order 0".into()));
        }
        Ok(PicModel { generators })
    }

    /// Generators `L1, L2, ...` for the free part then `T1, T2, ...` for the
    /// invariant factors, unless `labels` are given.
    pub fn from_group(pic: &FinAbGroup, labels: Option<&[String]>) -> Result<Self> {
        let mut orders: Vec<Option<u64>> = vec![None; pic.free_rank()];
        orders.extend(pic.torsion().nontrivial().iter().map(|&t| Some(t)));
        if let Some(labels) = labels {
            if labels.len() != orders.len() {
                return Err(GerbeError::Pic(format!("{} labels for {} generators", labels.len(), orders.len())));
            }
        }
        let (mut free, mut tors) = (0, 0);
        let generators = orders
            .into_iter()
            .enumerate()
            .map(|(i, order)| {
                let label = match (labels, order) {
                    (Some(l), _) => l[i].clone(),
                    (None, None) => {
                        free += 1;
                        format!("L{free}")
                    }
                    (None, Some(_)) => {
                        tors += 1;
                        format!("T{tors}")
                    }
                };
                PicGenerator { label, order }
            })
            .collect();
        PicModel::new(generators)
    }

    /// `Pic(P^1) = Z` generated by `O(1)`.
    pub fn projective_line() -> Self {
        PicModel { generators: vec![PicGenerator { label: "O(1)".into(), order: None }] }
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    pub fn group(&self) -> FinAbGroup {
        let free = self.generators.iter().filter(|g| g.order.is_none()).count();
        let orders: Vec<u64> = self.generators.iter().filter_map(|g| g.order).collect();
        FinAbGroup::from_cyclic_factors(free, &orders).expect("orders are positive")
    }

    /// Modulus of each coordinate in `Pic / r Pic`.
    pub fn moduli(&self, r: u64) -> Vec<u64> {
        self.generators.iter().map(|g| g.order.map_or(r, |t| r.gcd(&t))).collect()
    }

    /// Relation matrix of `Pic / r Pic` (generators as rows), for [`coker_structure`].
    pub fn quotient_relations(&self, r: u64) -> Result<IntMatrix> {
        let k = self.rank();
        let r = i64::try_from(r).map_err(|_| GerbeError::Pic("r too large".into()))?;
        let mut columns: Vec<Vec<i64>> = Vec::new();
        for (i, g) in self.generators.iter().enumerate() {
            let mut scaled = vec![0; k];
            scaled[i] = r;
            columns.push(scaled);
            if let Some(t) = g.order {
                let mut torsion = vec![0; k];
                torsion[i] = i64::try_from(t).map_err(|_| GerbeError::Pic("order too large".into()))?;
                columns.push(torsion);
            }
        }
        let mut m = IntMatrix::zero(k, columns.len());
        for (j, col) in columns.iter().enumerate() {
            for (i, &x) in col.iter().enumerate() {
                m.set(i, j, x.into());
            }
        }
        Ok(m)
    }

    /// `Pic / r Pic` computed by Smith normal form.
    pub fn quotient_structure(&self, r: u64) -> Result<FinAbGroup> {
        Ok(coker_structure(&self.quotient_relations(r)?)?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GerbeClass {
    pub base: PicModel,
    pub r: u64,
    /// Coordinates reduced mod `base.moduli(r)`.
    pub coords: Vec<u64>,
}

impl GerbeClass {
    pub fn zero(base: &PicModel, r: u64) -> Result<Self> {
        kummer_class(base, &vec![0; base.rank()], r)
    }
}

impl fmt::Display for GerbeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let moduli = self.base.moduli(self.r);
        let parts: Vec<String> = self
            .base
            .generators
            .iter()
            .zip(&self.coords)
            .zip(&moduli)
            .map(|((g, c), m)| format!("{}: {c} mod {m}", g.label))
            .collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Class of `L` (coordinates in the generators of `base`) in `Pic / r Pic`.
pub fn kummer_class(base: &PicModel, l: &[i64], r: u64) -> Result<GerbeClass> {
    if r == 0 {
        return Err(GerbeError::ZeroR);
    }
    if l.len() != base.rank() {
        return Err(GerbeError::Arity { expected: base.rank(), got: l.len() });
    }
    let coords = l.iter().zip(base.moduli(r)).map(|(&x, m)| x.rem_euclid(m as i64) as u64).collect();
    Ok(GerbeClass { base: base.clone(), r, coords })
}

/// Sum of classes; realizes the contracted product of the root gerbes.
pub fn add_classes(c1: &GerbeClass, c2: &GerbeClass) -> Result<GerbeClass> {
    if c1.base != c2.base {
        return Err(GerbeError::BaseMismatch);
    }
    if c1.r != c2.r {
        return Err(GerbeError::RMismatch(c1.r, c2.r));
    }
    let coords = c1.coords.iter().zip(&c2.coords).zip(c1.base.moduli(c1.r)).map(|((a, b), m)| (a + b) % m).collect();
    Ok(GerbeClass { base: c1.base.clone(), r: c1.r, coords })
}

pub fn negate_class(c: &GerbeClass) -> GerbeClass {
    let coords = c.coords.iter().zip(c.base.moduli(c.r)).map(|(&a, m)| (m - a) % m).collect();
    GerbeClass { base: c.base.clone(), r: c.r, coords }
}

pub fn is_trivial(c: &GerbeClass) -> bool {
    c.coords.iter().all(|&x| x == 0)
}

/// The class over `base x BG_m` obtained by tensoring with the weight `w`
/// character: a free generator `[1]` is appended with coordinate `w mod r`.
pub fn equivariant_twist(c: &GerbeClass, w: i64) -> GerbeClass {
    let mut generators = c.base.generators.clone();
    generators.push(PicGenerator { label: "[1]".into(), order: None });
    let mut coords = c.coords.clone();
    coords.push(w.rem_euclid(c.r as i64) as u64);
    GerbeClass { base: PicModel { generators }, r: c.r, coords }
}
