//! Class functions over a finite matrix group and the five functors:
//! restriction, induction, inflation (along an explicit epimorphism),
//! tensor product and conjugation. Inner products are exact rationals.

use std::sync::Arc;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::exact::{Cyclotomic, Rational};
use crate::matgrp::{class_fusion, Group, GroupError, Mat};

#[derive(Debug, thiserror::Error)]
pub enum ChartabError {
    #[error("class functions live on different groups")]
    MixedGroups,
    #[error("inner product is not rational; inputs are corrupted")]
    NonRational,
    #[error("expected a non-negative integer multiplicity, got {0}")]
    NonIntegral(String),
    #[error("group: {0}")]
    Group(#[from] GroupError),
    #[error("character table verification failed: {0}")]
    Verification(String),
    #[error("decomposition has a nonzero residual")]
    Residual,
    #[error("{0}")]
    Other(String),
}

#[derive(Clone)]
pub struct ClassFunction {
    pub group: Group,
    pub values: Vec<Cyclotomic>,
}

impl std::fmt::Debug for ClassFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "ClassFunction on {} [", self.group.name)?;
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

impl PartialEq for ClassFunction {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.group, &other.group) && self.values == other.values
    }
}
impl Eq for ClassFunction {}

impl ClassFunction {
    pub fn trivial(group: &Group) -> Self {
        let k = group.class_count();
        ClassFunction {
            group: group.clone(),
            values: vec![Cyclotomic::one(); k],
        }
    }

    pub fn zero(group: &Group) -> Self {
        let k = group.class_count();
        ClassFunction {
            group: group.clone(),
            values: vec![Cyclotomic::zero(); k],
        }
    }

    /// Builds from a function on class representatives.
    pub fn from_fn(group: &Group, mut f: impl FnMut(&Mat) -> Cyclotomic) -> Self {
        let classes = group.classes();
        let values = classes
            .classes
            .iter()
            .map(|c| f(&group.mat(c.rep)))
            .collect();
        ClassFunction {
            group: group.clone(),
            values,
        }
    }

    pub fn degree(&self) -> Rational {
        debug_assert_eq!(self.group.classes().classes[0].elem_order, 1);
        self.values[0]
            .as_rational()
            .expect("character degree must be rational")
    }

    pub fn value_at_id(&self, id: u32) -> &Cyclotomic {
        let c = self.group.classes().class_of(id);
        &self.values[c]
    }

    pub fn add(&self, other: &Self) -> Self {
        assert!(Arc::ptr_eq(&self.group, &other.group));
        ClassFunction {
            group: self.group.clone(),
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert!(Arc::ptr_eq(&self.group, &other.group));
        ClassFunction {
            group: self.group.clone(),
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scale_int(&self, c: i64) -> Self {
        let r = Cyclotomic::from_integer(c);
        ClassFunction {
            group: self.group.clone(),
            values: self.values.iter().map(|v| v * &r).collect(),
        }
    }

    /// Pointwise product (tensor product of characters).
    pub fn tensor(&self, other: &Self) -> Self {
        assert!(Arc::ptr_eq(&self.group, &other.group));
        ClassFunction {
            group: self.group.clone(),
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a * b)
                .collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }

    /// <chi, psi> = (1/|H|) sum |C| chi(C) conj(psi(C)); must be rational.
    pub fn inner_product(&self, other: &Self) -> Result<Rational, ChartabError> {
        if !Arc::ptr_eq(&self.group, &other.group) {
            return Err(ChartabError::MixedGroups);
        }
        let classes = self.group.classes();
        let mut acc = Cyclotomic::zero();
        for (i, c) in classes.classes.iter().enumerate() {
            let term = &self.values[i] * &other.values[i].conj();
            acc = &acc + &term.scale(&Rational::from_integer(c.size.into()));
        }
        let total = acc
            .as_rational()
            .ok_or(ChartabError::NonRational)?;
        Ok(total / Rational::from_integer(self.group.order.into()))
    }

    pub fn norm(&self) -> Result<Rational, ChartabError> {
        self.inner_product(self)
    }

    pub fn is_irreducible(&self) -> Result<bool, ChartabError> {
        let n = self.norm()?;
        Ok(n.is_one() && self.values[0].as_rational().map_or(false, |d| d.is_positive()))
    }

    /// Induction to a supergroup.
    pub fn induce(&self, target: &Group) -> Result<ClassFunction, ChartabError> {
        let fusion = class_fusion(&self.group, target)?;
        let hc = self.group.classes();
        let gc = target.classes();
        let mut sums = vec![Cyclotomic::zero(); gc.classes.len()];
        for (hi, &gi) in fusion.iter().enumerate() {
            let w = Rational::new(1.into(), hc.classes[hi].centralizer.into());
            sums[gi] = &sums[gi] + &self.values[hi].scale(&w);
        }
        let values = sums
            .into_iter()
            .enumerate()
            .map(|(gi, s)| {
                s.scale(&Rational::from_integer(gc.classes[gi].centralizer.into()))
            })
            .collect();
        Ok(ClassFunction {
            group: target.clone(),
            values,
        })
    }

    /// Restriction to a subgroup.
    pub fn restrict(&self, sub: &Group) -> Result<ClassFunction, ChartabError> {
        let fusion = class_fusion(sub, &self.group)?;
        Ok(ClassFunction {
            group: sub.clone(),
            values: fusion.iter().map(|&gi| self.values[gi].clone()).collect(),
        })
    }

    /// Pullback along an explicit map target -> self.group (inflation when
    /// the map is an epimorphism with the right kernel).
    pub fn inflate_along(
        &self,
        target: &Group,
        map: impl Fn(&Mat) -> Mat,
    ) -> Result<ClassFunction, ChartabError> {
        let source = &self.group;
        let sc = source.classes();
        let tc = target.classes();
        let values = tc
            .classes
            .iter()
            .map(|c| {
                let img = map(&target.mat(c.rep));
                let id = source
                    .id_of(&img)
                    .ok_or_else(|| ChartabError::Other("inflation image outside group".into()))?;
                Ok(self.values[sc.class_of(id)].clone())
            })
            .collect::<Result<_, ChartabError>>()?;
        Ok(ClassFunction {
            group: target.clone(),
            values,
        })
    }

    /// The conjugate character ^x chi (g) = chi(x^{-1} g x), for x
    /// normalizing the group.
    pub fn conjugate(&self, x: &Mat) -> Result<ClassFunction, ChartabError> {
        let g = &self.group;
        let classes = g.classes();
        let xi = x
            .inverse()
            .ok_or_else(|| ChartabError::Other("singular conjugator".into()))?;
        let values = classes
            .classes
            .iter()
            .map(|c| {
                let conj = xi.mul(&g.mat(c.rep)).mul(x);
                let id = g.id_of(&conj).ok_or_else(|| {
                    ChartabError::Other("conjugator does not normalize the group".into())
                })?;
                Ok(self.values[classes.class_of(id)].clone())
            })
            .collect::<Result<_, ChartabError>>()?;
        Ok(ClassFunction {
            group: g.clone(),
            values,
        })
    }

    /// Multiplicities in an orthonormal basis; errors unless self is exactly
    /// a non-negative integer combination of the basis.
    pub fn decompose(&self, basis: &[ClassFunction]) -> Result<Vec<u64>, ChartabError> {
        let mut mults = Vec::with_capacity(basis.len());
        let mut residual = self.clone();
        for b in basis {
            let m = self.inner_product(b)?;
            if !m.is_integer() || m.is_negative() {
                return Err(ChartabError::NonIntegral(m.to_string()));
            }
            let mi = m.to_integer();
            let mu: u64 = mi
                .try_into()
                .map_err(|_| ChartabError::NonIntegral(m.to_string()))?;
            if mu > 0 {
                residual = residual.sub(&b.scale_int(mu as i64));
            }
            mults.push(mu);
        }
        if !residual.is_zero() {
            return Err(ChartabError::Residual);
        }
        Ok(mults)
    }
}

/// The full set of irreducible characters of a group.
pub struct CharacterTable {
    pub group: Group,
    pub irreducibles: Vec<ClassFunction>,
}

impl CharacterTable {
    /// Row orthonormality, column orthogonality, completeness. Exact.
    pub fn verify(&self) -> Result<(), ChartabError> {
        let g = &self.group;
        let classes = g.classes();
        let k = classes.classes.len();
        if self.irreducibles.len() != k {
            return Err(ChartabError::Verification(format!(
                "{} irreducibles for {} classes",
                self.irreducibles.len(),
                k
            )));
        }
        let mut degsq = Rational::zero();
        for chi in &self.irreducibles {
            let d = chi
                .values[0]
                .as_rational()
                .ok_or_else(|| ChartabError::Verification("non-rational degree".into()))?;
            if !d.is_integer() || !d.is_positive() {
                return Err(ChartabError::Verification("bad degree".into()));
            }
            // degrees divide the group order
            let order = Rational::from_integer(g.order.into());
            if !(order.clone() / d.clone()).is_integer() {
                return Err(ChartabError::Verification(
                    "degree does not divide |G|".into(),
                ));
            }
            degsq += d.clone() * d;
        }
        if degsq != Rational::from_integer(g.order.into()) {
            return Err(ChartabError::Verification(
                "sum of squared degrees != |G|".into(),
            ));
        }
        for i in 0..k {
            for j in i..k {
                let ip = self.irreducibles[i].inner_product(&self.irreducibles[j])?;
                let expect = if i == j { Rational::one() } else { Rational::zero() };
                if ip != expect {
                    return Err(ChartabError::Verification(format!(
                        "<chi_{i}, chi_{j}> = {ip}"
                    )));
                }
            }
        }
        // column orthogonality
        for a in 0..k {
            for b in a..k {
                let mut acc = Cyclotomic::zero();
                for chi in &self.irreducibles {
                    acc = &acc + &(&chi.values[a] * &chi.values[b].conj());
                }
                let expect = if a == b {
                    Cyclotomic::from_rational(Rational::from_integer(
                        classes.classes[a].centralizer.into(),
                    ))
                } else {
                    Cyclotomic::zero()
                };
                if acc != expect {
                    return Err(ChartabError::Verification(format!(
                        "column orthogonality fails at ({a}, {b})"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn by_degree(&self, d: u64) -> Vec<usize> {
        self.irreducibles
            .iter()
            .enumerate()
            .filter(|(_, chi)| chi.degree() == Rational::from_integer(d.into()))
            .map(|(i, _)| i)
            .collect()
    }
}

/// Serialized form of a character table, together with the class fingerprint
/// it belongs to.
#[derive(Serialize, Deserialize)]
pub struct CharacterTableJson {
    pub version: u32,
    pub group_name: String,
    pub order: u64,
    pub classes: Vec<ClassJson>,
    pub irreducibles: Vec<Vec<Cyclotomic>>,
}

#[derive(Serialize, Deserialize, PartialEq, Eq)]
pub struct ClassJson {
    pub rep_digits: String,
    pub size: u64,
    pub centralizer: u64,
    pub elem_order: u32,
}

impl CharacterTable {
    pub fn to_json(&self) -> CharacterTableJson {
        let classes = self.group.classes();
        CharacterTableJson {
            version: 1,
            group_name: self.group.name.clone(),
            order: self.group.order,
            classes: classes
                .classes
                .iter()
                .map(|c| ClassJson {
                    rep_digits: self.group.mat(c.rep).digits(),
                    size: c.size,
                    centralizer: c.centralizer,
                    elem_order: c.elem_order,
                })
                .collect(),
            irreducibles: self
                .irreducibles
                .iter()
                .map(|chi| chi.values.clone())
                .collect(),
        }
    }

    /// Rebuilds from JSON after validating the class fingerprint.
    pub fn from_json(group: &Group, json: CharacterTableJson) -> Result<Self, ChartabError> {
        let classes = group.classes();
        if json.order != group.order || json.classes.len() != classes.classes.len() {
            return Err(ChartabError::Verification("cache fingerprint mismatch".into()));
        }
        for (c, j) in classes.classes.iter().zip(&json.classes) {
            let fp = ClassJson {
                rep_digits: group.mat(c.rep).digits(),
                size: c.size,
                centralizer: c.centralizer,
                elem_order: c.elem_order,
            };
            if fp != *j {
                return Err(ChartabError::Verification("cache fingerprint mismatch".into()));
            }
        }
        Ok(CharacterTable {
            group: group.clone(),
            irreducibles: json
                .irreducibles
                .into_iter()
                .map(|values| ClassFunction {
                    group: group.clone(),
                    values,
                })
                .collect(),
        })
    }
}
