//! Fully enumerated finite matrix groups: breadth-first generator closure,
//! subgroup recognition, conjugacy classes with power maps, and class fusion.
//!
//! Elements live in an immutable `ElementStore` shared by a group and all of
//! its subgroups, so subgroup elements are plain ids into the parent store.

use std::sync::{Arc, OnceLock};

use rustc_hash::{FxHashMap, FxHashSet};

use crate::ff::Field;
use crate::matgrp::matrix::{Key, Mat};

pub const DEFAULT_ENUMERATION_BOUND: usize = 2_000_000;

#[derive(Debug, thiserror::Error)]
pub enum GroupError {
    #[error("group exceeds the enumeration bound of {0} elements")]
    TooLarge(usize),
    #[error("generator is singular")]
    SingularGenerator,
    #[error("generators live in mixed ambients")]
    MixedAmbient,
    #[error("element set is not closed under multiplication ({0})")]
    NotClosed(String),
    #[error("subgroup element not contained in parent group")]
    NotSubgroup,
}

pub struct ElementStore {
    pub field: Field,
    pub n: usize,
    stride: usize,
    data: Vec<u8>,
    index: FxHashMap<Key, u32>,
    inv: Vec<u32>,
}

impl ElementStore {
    pub fn len(&self) -> usize {
        self.inv.len()
    }

    pub fn mat(&self, id: u32) -> Mat {
        let s = id as usize * self.stride;
        Mat {
            field: self.field.clone(),
            n: self.n,
            e: self.data[s..s + self.stride].to_vec(),
        }
    }

    #[inline]
    pub fn entries(&self, id: u32) -> &[u8] {
        let s = id as usize * self.stride;
        &self.data[s..s + self.stride]
    }

    pub fn key_of(&self, id: u32) -> Key {
        let q = self.field.q as u128;
        self.entries(id)
            .iter()
            .rev()
            .fold(0u128, |acc, &d| acc * q + d as u128)
    }

    pub fn id_of_key(&self, key: Key) -> Option<u32> {
        self.index.get(&key).copied()
    }

    pub fn id_of(&self, m: &Mat) -> Option<u32> {
        debug_assert_eq!(m.n, self.n);
        self.index.get(&m.key()).copied()
    }

    #[inline]
    pub fn inv_id(&self, id: u32) -> u32 {
        self.inv[id as usize]
    }

    /// Product of two stored elements; panics if the product escaped the
    /// store, which cannot happen when both ids belong to the closure the
    /// store was built from.
    pub fn mul_ids(&self, a: u32, b: u32) -> u32 {
        let m = self.mat(a).mul(&self.mat(b));
        self.id_of(&m)
            .expect("product escaped the element store; store is not a closed group")
    }

    fn mul_key(&self, a: u32, b: u32) -> Key {
        self.mat(a).mul(&self.mat(b)).key()
    }
}

struct StoreBuilder {
    field: Field,
    n: usize,
    stride: usize,
    data: Vec<u8>,
    index: FxHashMap<Key, u32>,
    inv: Vec<u32>,
}

impl StoreBuilder {
    fn new(field: &Field, n: usize) -> Self {
        StoreBuilder {
            field: field.clone(),
            n,
            stride: n * n,
            data: Vec::new(),
            index: FxHashMap::default(),
            inv: Vec::new(),
        }
    }

    fn push_raw(&mut self, m: &Mat) -> u32 {
        let id = self.inv.len() as u32;
        self.data.extend_from_slice(&m.e);
        self.index.insert(m.key(), id);
        self.inv.push(u32::MAX);
        id
    }

    /// Inserts m together with its inverse, wiring the inverse links.
    fn insert_pair(&mut self, m: &Mat, m_inv: &Mat) -> u32 {
        if let Some(&id) = self.index.get(&m.key()) {
            return id;
        }
        let id = self.push_raw(m);
        if m == m_inv {
            self.inv[id as usize] = id;
        } else {
            let iid = self.push_raw(m_inv);
            self.inv[id as usize] = iid;
            self.inv[iid as usize] = id;
        }
        id
    }

    fn finish(self) -> ElementStore {
        debug_assert!(self.inv.iter().all(|&i| i != u32::MAX));
        ElementStore {
            field: self.field,
            n: self.n,
            stride: self.stride,
            data: self.data,
            index: self.index,
            inv: self.inv,
        }
    }
}

#[derive(Clone)]
pub enum Members {
    All,
    Ids(Arc<Vec<u32>>), // sorted ascending
}

pub struct ConjClass {
    pub rep: u32,
    pub size: u64,
    pub centralizer: u64,
    pub elem_order: u32,
    /// class index of rep^p for each prime p dividing the group exponent
    pub power_map: Vec<(u32, usize)>,
    pub members: Vec<u32>,
}

enum ClassLookup {
    Dense(Vec<u16>),
    Sparse(FxHashMap<u32, u16>),
}

pub struct ClassData {
    pub classes: Vec<ConjClass>,
    lookup: ClassLookup,
    pub exponent: u64,
}

impl ClassData {
    pub fn class_of(&self, id: u32) -> usize {
        match &self.lookup {
            ClassLookup::Dense(v) => v[id as usize] as usize,
            ClassLookup::Sparse(m) => m[&id] as usize,
        }
    }

    pub fn try_class_of(&self, id: u32) -> Option<usize> {
        match &self.lookup {
            ClassLookup::Dense(v) => v.get(id as usize).map(|&c| c as usize),
            ClassLookup::Sparse(m) => m.get(&id).map(|&c| c as usize),
        }
    }
}

pub struct FiniteMatrixGroup {
    pub store: Arc<ElementStore>,
    pub members: Members,
    pub gens: Vec<u32>,
    pub order: u64,
    pub name: String,
    classes: OnceLock<Arc<ClassData>>,
}

pub type Group = Arc<FiniteMatrixGroup>;

/// Breadth-first closure of a generator list into a fully enumerated group.
pub fn closure(
    field: &Field,
    n: usize,
    gens: &[Mat],
    bound: usize,
    name: &str,
) -> Result<Group, GroupError> {
    assert!(
        (n * n) as f64 * (field.q as f64).log2() < 128.0,
        "element keys would overflow u128 for n={n}, q={}",
        field.q
    );
    let mut b = StoreBuilder::new(field, n);
    let e = Mat::identity(field, n);
    b.insert_pair(&e, &e);

    let mut gen_ids: Vec<u32> = Vec::new();
    for g in gens {
        if g.n != n || g.field != *field {
            return Err(GroupError::MixedAmbient);
        }
        if g.is_identity() {
            continue;
        }
        let gi = g.inverse().ok_or(GroupError::SingularGenerator)?;
        let id = b.insert_pair(g, &gi);
        if !gen_ids.contains(&id) {
            gen_ids.push(id);
        }
    }
    // sweep with generators and their inverses so the closure is two-sided
    let mut sweep: Vec<u32> = gen_ids.clone();
    for &g in &gen_ids {
        let ig = b.inv[g as usize];
        if !sweep.contains(&ig) {
            sweep.push(ig);
        }
    }

    let mut i = 0usize;
    while i < b.inv.len() {
        let x = Mat {
            field: field.clone(),
            n,
            e: b.data[i * b.stride..(i + 1) * b.stride].to_vec(),
        };
        let xi_id = b.inv[i];
        let x_inv = Mat {
            field: field.clone(),
            n,
            e: b.data[xi_id as usize * b.stride..(xi_id as usize + 1) * b.stride].to_vec(),
        };
        for &g in &sweep {
            let gm = Mat {
                field: field.clone(),
                n,
                e: b.data[g as usize * b.stride..(g as usize + 1) * b.stride].to_vec(),
            };
            let p = x.mul(&gm);
            if b.index.contains_key(&p.key()) {
                continue;
            }
            let gim = Mat {
                field: field.clone(),
                n,
                e: b.data[b.inv[g as usize] as usize * b.stride
                    ..(b.inv[g as usize] as usize + 1) * b.stride]
                    .to_vec(),
            };
            let p_inv = gim.mul(&x_inv);
            b.insert_pair(&p, &p_inv);
            if b.inv.len() > bound {
                return Err(GroupError::TooLarge(bound));
            }
        }
        i += 1;
    }

    let order = b.inv.len() as u64;
    Ok(Arc::new(FiniteMatrixGroup {
        store: Arc::new(b.finish()),
        members: Members::All,
        gens: gen_ids,
        order,
        name: name.to_string(),
        classes: OnceLock::new(),
    }))
}

impl FiniteMatrixGroup {
    pub fn field(&self) -> &Field {
        &self.store.field
    }

    pub fn n(&self) -> usize {
        self.store.n
    }

    pub fn contains_id(&self, id: u32) -> bool {
        match &self.members {
            Members::All => (id as usize) < self.store.len(),
            Members::Ids(ids) => ids.binary_search(&id).is_ok(),
        }
    }

    pub fn contains(&self, m: &Mat) -> bool {
        match self.store.id_of(m) {
            Some(id) => self.contains_id(id),
            None => false,
        }
    }

    pub fn id_of(&self, m: &Mat) -> Option<u32> {
        self.store.id_of(m).filter(|&id| self.contains_id(id))
    }

    pub fn mat(&self, id: u32) -> Mat {
        self.store.mat(id)
    }

    pub fn identity_id(&self) -> u32 {
        0
    }

    /// Member ids in ascending order.
    pub fn member_ids(&self) -> Vec<u32> {
        match &self.members {
            Members::All => (0..self.store.len() as u32).collect(),
            Members::Ids(ids) => ids.as_ref().clone(),
        }
    }

    pub fn for_each_member(&self, mut f: impl FnMut(u32)) {
        match &self.members {
            Members::All => (0..self.store.len() as u32).for_each(&mut f),
            Members::Ids(ids) => ids.iter().copied().for_each(&mut f),
        }
    }

    /// The subgroup consisting of the member ids of the same store.
    /// Verifies closure by greedily generating the set; reports rather than
    /// repairs a non-closed input.
    pub fn subgroup_from_ids(
        self: &Arc<Self>,
        mut ids: Vec<u32>,
        name: &str,
    ) -> Result<Group, GroupError> {
        ids.sort_unstable();
        ids.dedup();
        if ids.binary_search(&0).is_err() {
            return Err(GroupError::NotClosed(format!(
                "{name}: identity missing"
            )));
        }
        for &id in &ids {
            if !self.contains_id(id) {
                return Err(GroupError::NotSubgroup);
            }
        }
        let set: FxHashSet<u32> = ids.iter().copied().collect();
        // inverses
        for &id in &ids {
            if !set.contains(&self.store.inv_id(id)) {
                return Err(GroupError::NotClosed(format!(
                    "{name}: inverse of element {id} missing"
                )));
            }
        }
        // greedy generation, erroring out if a product escapes the set
        let mut gens: Vec<u32> = Vec::new();
        let mut generated: FxHashSet<u32> = FxHashSet::default();
        generated.insert(0);
        let mut gen_list: Vec<u32> = vec![0];
        while generated.len() < ids.len() {
            let next = *ids
                .iter()
                .find(|id| !generated.contains(id))
                .expect("greedy generation invariant");
            gens.push(next);
            // close under right multiplication by all gens so far
            let mut qi = 0;
            if generated.insert(next) {
                gen_list.push(next);
            }
            while qi < gen_list.len() {
                let x = gen_list[qi];
                qi += 1;
                for &g in &gens {
                    let key = self.store.mul_key(x, g);
                    let pid = match self.store.id_of_key(key) {
                        Some(p) => p,
                        None => {
                            return Err(GroupError::NotClosed(format!(
                                "{name}: product left the parent store"
                            )))
                        }
                    };
                    if !set.contains(&pid) {
                        return Err(GroupError::NotClosed(format!(
                            "{name}: product of members is not a member"
                        )));
                    }
                    if generated.insert(pid) {
                        gen_list.push(pid);
                    }
                }
            }
        }
        let order = ids.len() as u64;
        Ok(Arc::new(FiniteMatrixGroup {
            store: self.store.clone(),
            members: Members::Ids(Arc::new(ids)),
            gens,
            order,
            name: name.to_string(),
            classes: OnceLock::new(),
        }))
    }

    /// Subgroup of all members satisfying a predicate.
    pub fn subgroup_where(
        self: &Arc<Self>,
        name: &str,
        pred: impl Fn(&Mat) -> bool,
    ) -> Result<Group, GroupError> {
        let mut ids = Vec::new();
        self.for_each_member(|id| {
            if pred(&self.store.mat(id)) {
                ids.push(id);
            }
        });
        self.subgroup_from_ids(ids, name)
    }

    /// Subgroup generated inside this group by the given elements.
    pub fn subgroup_generated(
        self: &Arc<Self>,
        gens: &[Mat],
        name: &str,
    ) -> Result<Group, GroupError> {
        let mut gen_ids = Vec::new();
        for g in gens {
            let id = self.id_of(g).ok_or(GroupError::NotSubgroup)?;
            if id != 0 && !gen_ids.contains(&id) {
                gen_ids.push(id);
            }
        }
        let mut seen: FxHashSet<u32> = FxHashSet::default();
        seen.insert(0);
        let mut list = vec![0u32];
        let mut sweep = gen_ids.clone();
        for &g in &gen_ids {
            let ig = self.store.inv_id(g);
            if !sweep.contains(&ig) {
                sweep.push(ig);
            }
        }
        let mut qi = 0;
        while qi < list.len() {
            let x = list[qi];
            qi += 1;
            for &g in &sweep {
                let p = self.store.mul_ids(x, g);
                if seen.insert(p) {
                    list.push(p);
                }
            }
        }
        for &id in &list {
            if !self.contains_id(id) {
                return Err(GroupError::NotSubgroup);
            }
        }
        list.sort_unstable();
        let order = list.len() as u64;
        Ok(Arc::new(FiniteMatrixGroup {
            store: self.store.clone(),
            members: Members::Ids(Arc::new(list)),
            gens: gen_ids,
            order,
            name: name.to_string(),
            classes: OnceLock::new(),
        }))
    }

    /// The conjugate subgroup x H x^{-1}.
    pub fn conjugate_subgroup(
        self: &Arc<Self>,
        ambient: &Group,
        x: &Mat,
        name: &str,
    ) -> Result<Group, GroupError> {
        let xi = x.inverse().ok_or(GroupError::SingularGenerator)?;
        let mut ids = Vec::with_capacity(self.order as usize);
        for id in self.member_ids() {
            let c = x.mul(&self.store.mat(id)).mul(&xi);
            ids.push(ambient.store.id_of(&c).ok_or(GroupError::NotSubgroup)?);
        }
        ambient.subgroup_from_ids(ids, name)
    }

    pub fn element_order(&self, id: u32) -> u32 {
        let mut x = id;
        let mut o = 1u32;
        while x != 0 {
            x = self.store.mul_ids(x, id);
            o += 1;
        }
        o
    }

    /// Conjugacy classes in canonical order:
    /// (element order of representative, class size, smallest key in class).
    pub fn classes(self: &Arc<Self>) -> Arc<ClassData> {
        self.classes
            .get_or_init(|| Arc::new(self.compute_classes()))
            .clone()
    }

    fn compute_classes(self: &Arc<Self>) -> ClassData {
        let store = &self.store;
        let members = self.member_ids();
        let dense = matches!(self.members, Members::All);

        let mut assigned: FxHashSet<u32> = FxHashSet::default();
        // conjugating generators: gens and their inverses as matrices
        let mut conj_gens: Vec<(Mat, Mat)> = Vec::new();
        for &g in &self.gens {
            let gm = store.mat(g);
            let gi = store.mat(store.inv_id(g));
            conj_gens.push((gm, gi));
        }

        let mut raw: Vec<Vec<u32>> = Vec::new();
        for &start in &members {
            if assigned.contains(&start) {
                continue;
            }
            let mut orbit = vec![start];
            assigned.insert(start);
            let mut qi = 0;
            while qi < orbit.len() {
                let x = orbit[qi];
                qi += 1;
                let xm = store.mat(x);
                for (gm, gi) in &conj_gens {
                    let y = gi.mul(&xm).mul(gm);
                    let yid = store
                        .id_of(&y)
                        .expect("conjugate escaped store during class computation");
                    if assigned.insert(yid) {
                        orbit.push(yid);
                    }
                }
            }
            raw.push(orbit);
        }

        // canonical representative and ordering
        let mut protos: Vec<(u32, u64, u32, Key, Vec<u32>)> = raw
            .into_iter()
            .map(|orbit| {
                let (rep, key) = orbit
                    .iter()
                    .map(|&id| (id, store.key_of(id)))
                    .min_by_key(|&(_, k)| k)
                    .unwrap();
                let o = self.element_order(rep);
                (rep, orbit.len() as u64, o, key, orbit)
            })
            .collect();
        protos.sort_by_key(|&(_, size, o, key, _)| (o, size, key));

        let exponent = protos
            .iter()
            .fold(1u64, |acc, &(_, _, o, _, _)| num_integer::lcm(acc, o as u64));

        let mut lookup = if dense {
            ClassLookup::Dense(vec![u16::MAX; store.len()])
        } else {
            ClassLookup::Sparse(FxHashMap::default())
        };
        for (ci, (_, _, _, _, orbit)) in protos.iter().enumerate() {
            for &id in orbit {
                match &mut lookup {
                    ClassLookup::Dense(v) => v[id as usize] = ci as u16,
                    ClassLookup::Sparse(m) => {
                        m.insert(id, ci as u16);
                    }
                }
            }
        }

        let class_of = |id: u32| -> usize {
            match &lookup {
                ClassLookup::Dense(v) => v[id as usize] as usize,
                ClassLookup::Sparse(m) => m[&id] as usize,
            }
        };

        let primes: Vec<u32> = prime_divisors_u64(exponent);
        let classes: Vec<ConjClass> = protos
            .into_iter()
            .map(|(rep, size, o, _, mut orbit)| {
                orbit.sort_unstable();
                let power_map = primes
                    .iter()
                    .map(|&p| {
                        let pw = store
                            .id_of(&store.mat(rep).pow(p as u64))
                            .expect("power escaped store");
                        (p, class_of(pw))
                    })
                    .collect();
                debug_assert_eq!(self.order % size, 0);
                ConjClass {
                    rep,
                    size,
                    centralizer: self.order / size,
                    elem_order: o,
                    power_map,
                    members: orbit,
                }
            })
            .collect();

        debug_assert_eq!(
            classes.iter().map(|c| c.size).sum::<u64>(),
            self.order,
            "class sizes must sum to the group order"
        );

        ClassData {
            classes,
            lookup,
            exponent,
        }
    }

    pub fn class_count(self: &Arc<Self>) -> usize {
        self.classes().classes.len()
    }

    pub fn exponent(self: &Arc<Self>) -> u64 {
        self.classes().exponent
    }
}

fn prime_divisors_u64(n: u64) -> Vec<u32> {
    let mut out = Vec::new();
    let mut m = n;
    let mut p = 2u64;
    while p * p <= m {
        if m % p == 0 {
            out.push(p as u32);
            while m % p == 0 {
                m /= p;
            }
        }
        p += 1;
    }
    if m > 1 {
        out.push(m as u32);
    }
    out
}

/// Total map from H-classes to G-classes; requires every H element to be in
/// G. The two groups may share a store (ids translate directly) or live in
/// separate stores (translation goes through matrices).
pub fn class_fusion(h: &Group, g: &Group) -> Result<Vec<usize>, GroupError> {
    let hc = h.classes();
    let gc = g.classes();
    let same_store = Arc::ptr_eq(&h.store, &g.store);
    hc.classes
        .iter()
        .map(|c| {
            let gid = if same_store {
                if !g.contains_id(c.rep) {
                    return Err(GroupError::NotSubgroup);
                }
                c.rep
            } else {
                g.id_of(&h.store.mat(c.rep)).ok_or(GroupError::NotSubgroup)?
            };
            Ok(gc.class_of(gid))
        })
        .collect()
}

/// Intersection of two subgroups of one store, as a subgroup.
pub fn intersection(a: &Group, b: &Group, name: &str) -> Result<Group, GroupError> {
    assert!(Arc::ptr_eq(&a.store, &b.store), "intersection needs one store");
    let ids: Vec<u32> = a
        .member_ids()
        .into_iter()
        .filter(|&id| b.contains_id(id))
        .collect();
    a.subgroup_from_ids(ids, name)
}

/// The product set {a * b}, which the caller asserts is a subgroup.
pub fn product_subgroup(
    ambient: &Group,
    a: &Group,
    b: &Group,
    name: &str,
) -> Result<Group, GroupError> {
    let mut ids = FxHashSet::default();
    for x in a.member_ids() {
        for y in b.member_ids() {
            ids.insert(ambient.store.mul_ids(x, y));
        }
    }
    ambient.subgroup_from_ids(ids.into_iter().collect(), name)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::FieldSpec;

    /// GL_2(2) = S_3, a tiny smoke test for closure and classes.
    #[test]
    fn gl2_of_2_is_s3() {
        let f = FieldSpec::of_order(2).unwrap();
        let mut a = Mat::zero(&f, 2);
        a.set(0, 1, 1);
        a.set(1, 0, 1); // swap
        let mut b = Mat::identity(&f, 2);
        b.set(0, 1, 1); // shear
        let g = closure(&f, 2, &[a, b], 100, "GL2(2)").unwrap();
        assert_eq!(g.order, 6);
        let cd = g.classes();
        assert_eq!(cd.classes.len(), 3);
        let sizes: Vec<u64> = cd.classes.iter().map(|c| c.size).collect();
        assert_eq!(sizes, vec![1, 3, 2]);
        let orders: Vec<u32> = cd.classes.iter().map(|c| c.elem_order).collect();
        assert_eq!(orders, vec![1, 2, 3]);
        assert_eq!(cd.exponent, 6);
    }

    #[test]
    fn empty_generator_list_gives_trivial_group() {
        let f = FieldSpec::of_order(3).unwrap();
        let g = closure(&f, 2, &[], 10, "1").unwrap();
        assert_eq!(g.order, 1);
        assert_eq!(g.classes().classes.len(), 1);
    }

    #[test]
    fn closure_is_generator_order_independent() {
        let f = FieldSpec::of_order(3).unwrap();
        let mut a = Mat::zero(&f, 2);
        a.set(0, 1, 1);
        a.set(1, 0, 2);
        let mut b = Mat::identity(&f, 2);
        b.set(0, 1, 1);
        let g1 = closure(&f, 2, &[a.clone(), b.clone()], 100_000, "g1").unwrap();
        let g2 = closure(&f, 2, &[b, a], 100_000, "g2").unwrap();
        assert_eq!(g1.order, g2.order);
        let k1: std::collections::BTreeSet<u128> =
            g1.member_ids().iter().map(|&i| g1.store.key_of(i)).collect();
        let k2: std::collections::BTreeSet<u128> =
            g2.member_ids().iter().map(|&i| g2.store.key_of(i)).collect();
        assert_eq!(k1, k2);
    }

    #[test]
    fn non_closed_subset_is_reported() {
        let f = FieldSpec::of_order(2).unwrap();
        let mut a = Mat::zero(&f, 2);
        a.set(0, 1, 1);
        a.set(1, 0, 1);
        let mut b = Mat::identity(&f, 2);
        b.set(0, 1, 1);
        let g = closure(&f, 2, &[a.clone(), b], 100, "GL2(2)").unwrap();
        // {e, swap, shear} is not closed
        let ids = vec![0, g.id_of(&a).unwrap(), 5];
        assert!(matches!(
            g.subgroup_from_ids(ids, "bad"),
            Err(GroupError::NotClosed(_))
        ));
    }

    #[test]
    fn subgroup_classes_and_fusion() {
        let f = FieldSpec::of_order(2).unwrap();
        let mut a = Mat::zero(&f, 2);
        a.set(0, 1, 1);
        a.set(1, 0, 1);
        let mut b = Mat::identity(&f, 2);
        b.set(0, 1, 1);
        let g = closure(&f, 2, &[a.clone(), b], 100, "S3").unwrap();
        let h = g.subgroup_generated(&[a], "C2").unwrap();
        assert_eq!(h.order, 2);
        assert_eq!(h.classes().classes.len(), 2);
        let fusion = class_fusion(&h, &g).unwrap();
        assert_eq!(fusion[0], 0);
        assert_eq!(fusion[1], 1); // the involution class of S3
        // trivial subgroup fuses to the identity class
        let t = g.subgroup_from_ids(vec![0], "1").unwrap();
        assert_eq!(class_fusion(&t, &g).unwrap(), vec![0]);
    }
}
