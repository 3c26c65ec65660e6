//! Dixon-Schneider computation of full character tables.
//!
//! The common eigenvectors of the class matrices are computed over GF(l)
//! for a prime l = 1 (mod N), N the group exponent, with l larger than both
//! 2 sqrt(|G|) and the class number; character values are then lifted to
//! exact cyclotomic integers through the power-map Fourier formula.

use crate::exact::{Cyclotomic, Rational};
use crate::matgrp::Group;

use super::classfun::{CharacterTable, ChartabError, ClassFunction};

// ---- arithmetic mod l -------------------------------------------------

#[derive(Clone, Copy)]
struct Modular {
    l: u64,
}

impl Modular {
    fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.l
    }
    fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.l - b % self.l) % self.l
    }
    fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.l
    }
    fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1u64;
        a %= self.l;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }
    fn inv(&self, a: u64) -> u64 {
        debug_assert!(a % self.l != 0);
        self.pow(a, self.l - 2)
    }
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

// ---- linear algebra mod l ---------------------------------------------

type Vecl = Vec<u64>;

/// Reduced row echelon form in place; returns pivot columns.
fn rref(rows: &mut Vec<Vecl>, cols: usize, md: Modular) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, p);
        let inv = md.inv(rows[r][c]);
        for x in rows[r].iter_mut() {
            *x = md.mul(*x, inv);
        }
        for i in 0..rows.len() {
            if i != r && rows[i][c] != 0 {
                let f = rows[i][c];
                for j in 0..rows[i].len() {
                    let d = md.mul(f, rows[r][j]);
                    rows[i][j] = md.sub(rows[i][j], d);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    pivots
}

/// Null space basis of a square matrix.
fn null_space(mat: &[Vecl], md: Modular) -> Vec<Vecl> {
    let dim = mat.len();
    let mut rows: Vec<Vecl> = mat.to_vec();
    let pivots = rref(&mut rows, dim, md);
    let free: Vec<usize> = (0..dim).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![0u64; dim];
            v[fc] = 1;
            for (ri, &pc) in pivots.iter().enumerate() {
                v[pc] = md.sub(0, rows[ri][fc]);
            }
            v
        })
        .collect()
}

fn mat_vec(mat: &[Vecl], v: &[u64], md: Modular) -> Vecl {
    mat.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .fold(0u64, |acc, (&a, &b)| md.add(acc, md.mul(a, b)))
        })
        .collect()
}

fn det_mod(mat: &[Vecl], md: Modular) -> u64 {
    let n = mat.len();
    let mut a: Vec<Vecl> = mat.to_vec();
    let mut det = 1u64;
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| a[r][c] != 0) else {
            return 0;
        };
        if p != c {
            a.swap(p, c);
            det = md.sub(0, det);
        }
        det = md.mul(det, a[c][c]);
        let inv = md.inv(a[c][c]);
        for r in c + 1..n {
            if a[r][c] != 0 {
                let f = md.mul(a[r][c], inv);
                for j in c..n {
                    let d = md.mul(f, a[c][j]);
                    a[r][j] = md.sub(a[r][j], d);
                }
            }
        }
    }
    det
}

/// Characteristic polynomial coefficients (low-to-high) by Lagrange
/// interpolation of det(A - x I) at x = 0..dim.
fn char_poly(mat: &[Vecl], md: Modular) -> Vecl {
    let dim = mat.len();
    assert!((dim as u64) < md.l, "modulus too small for interpolation");
    let nodes: Vec<u64> = (0..=dim as u64).collect();
    let vals: Vec<u64> = nodes
        .iter()
        .map(|&x| {
            let shifted: Vec<Vecl> = (0..dim)
                .map(|i| {
                    (0..dim)
                        .map(|j| {
                            if i == j {
                                md.sub(mat[i][j], x)
                            } else {
                                mat[i][j]
                            }
                        })
                        .collect()
                })
                .collect();
            det_mod(&shifted, md)
        })
        .collect();
    // Lagrange interpolation
    let mut coeffs = vec![0u64; dim + 1];
    for (i, (&xi, &yi)) in nodes.iter().zip(&vals).enumerate() {
        // basis polynomial prod_{j != i} (x - xj) / (xi - xj)
        let mut numer = vec![0u64; dim + 1];
        numer[0] = 1;
        let mut deg = 0;
        let mut denom = 1u64;
        for (j, &xj) in nodes.iter().enumerate() {
            if j == i {
                continue;
            }
            // numer *= (x - xj)
            let mut next = vec![0u64; dim + 1];
            for d in 0..=deg {
                next[d + 1] = md.add(next[d + 1], numer[d]);
                next[d] = md.add(next[d], md.mul(numer[d], md.sub(0, xj)));
            }
            numer = next;
            deg += 1;
            denom = md.mul(denom, md.sub(xi, xj));
        }
        let scale = md.mul(yi, md.inv(denom));
        for d in 0..=dim {
            coeffs[d] = md.add(coeffs[d], md.mul(numer[d], scale));
        }
    }
    coeffs
}

fn poly_roots(coeffs: &[u64], md: Modular) -> Vec<u64> {
    (0..md.l)
        .filter(|&x| {
            let mut acc = 0u64;
            for &c in coeffs.iter().rev() {
                acc = md.add(md.mul(acc, x), c);
            }
            acc == 0
        })
        .collect()
}

// ---- the algorithm -----------------------------------------------------

/// Full character table by Dixon-Schneider; exact cyclotomic values,
/// orthonormality verified before returning.
pub fn character_table(g: &Group) -> Result<CharacterTable, ChartabError> {
    let classes = g.classes();
    let k = classes.classes.len();
    if k == 1 {
        let table = CharacterTable {
            group: g.clone(),
            irreducibles: vec![ClassFunction::trivial(g)],
        };
        table.verify()?;
        return Ok(table);
    }

    let exponent = classes.exponent;
    let sqrt_bound = 2 * (g.order as f64).sqrt().floor() as u64;
    let mut l = exponent + 1;
    while l <= sqrt_bound.max(k as u64) || !is_prime_u64(l) || (l - 1) % exponent != 0 {
        l += 1;
    }
    let md = Modular { l };

    // z of multiplicative order = exponent mod l
    let gen = (2..l)
        .find(|&c| {
            prime_divisors(l - 1)
                .iter()
                .all(|&p| md.pow(c, (l - 1) / p) != 1)
        })
        .expect("(Z/l)* is cyclic");
    let z = md.pow(gen, (l - 1) / exponent);

    // split the k-dimensional space by class matrices, smallest classes first
    let mut order_of_use: Vec<usize> = (1..k).collect();
    order_of_use.sort_by_key(|&r| (classes.classes[r].size, r));

    let mut subspaces: Vec<Vec<Vecl>> = vec![(0..k)
        .map(|i| {
            let mut v = vec![0u64; k];
            v[i] = 1;
            v
        })
        .collect()];

    for &r in &order_of_use {
        if subspaces.iter().all(|s| s.len() == 1) {
            break;
        }
        // class matrix A_r: entry [s][t] = #{(x, y) in C_r x C_s : xy = rep_t}
        let mut a = vec![vec![0u64; k]; k];
        for (t, ct) in classes.classes.iter().enumerate() {
            for &x in &classes.classes[r].members {
                let y = g.store.mul_ids(g.store.inv_id(x), ct.rep);
                let s = classes.class_of(y);
                a[s][t] = md.add(a[s][t], 1);
            }
        }
        let mut next: Vec<Vec<Vecl>> = Vec::new();
        for basis in subspaces.into_iter() {
            let dim = basis.len();
            if dim == 1 {
                next.push(basis);
                continue;
            }
            // restrict A to the subspace: solve B C = A B column-by-column
            let imgs: Vec<Vecl> = basis.iter().map(|b| mat_vec(&a, b, md)).collect();
            // rows of the solve: k equations, dim unknowns, dim right sides
            let mut rows: Vec<Vecl> = (0..k)
                .map(|row| {
                    let mut v: Vecl = basis.iter().map(|b| b[row]).collect();
                    v.extend(imgs.iter().map(|im| im[row]));
                    v
                })
                .collect();
            let pivots = rref(&mut rows, dim, md);
            if pivots.len() != dim {
                return Err(ChartabError::Verification(
                    "subspace basis lost rank".into(),
                ));
            }
            // C[i][j] = solved coefficient of basis i in A b_j
            let c_mat: Vec<Vecl> = (0..dim)
                .map(|i| (0..dim).map(|j| rows[i][dim + j]).collect())
                .collect();
            let poly = char_poly(&c_mat, md);
            let roots = poly_roots(&poly, md);
            let mut split: Vec<Vec<Vecl>> = Vec::new();
            let mut covered = 0usize;
            for lam in roots {
                let shifted: Vec<Vecl> = (0..dim)
                    .map(|i| {
                        (0..dim)
                            .map(|j| {
                                if i == j {
                                    md.sub(c_mat[i][j], lam)
                                } else {
                                    c_mat[i][j]
                                }
                            })
                            .collect()
                    })
                    .collect();
                let ns = null_space(&shifted, md);
                if ns.is_empty() {
                    continue;
                }
                covered += ns.len();
                let mapped: Vec<Vecl> = ns
                    .iter()
                    .map(|coef| {
                        let mut v = vec![0u64; k];
                        for (bi, b) in basis.iter().enumerate() {
                            for (vi, x) in v.iter_mut().enumerate() {
                                *x = md.add(*x, md.mul(coef[bi], b[vi]));
                            }
                        }
                        v
                    })
                    .collect();
                split.push(mapped);
            }
            if covered != dim {
                return Err(ChartabError::Verification(
                    "class matrix failed to act semisimply".into(),
                ));
            }
            next.extend(split);
        }
        subspaces = next;
    }

    if subspaces.iter().any(|s| s.len() != 1) {
        return Err(ChartabError::Verification(
            "class matrices did not separate all characters".into(),
        ));
    }

    // normalized eigenvectors omega with omega(identity class) = 1
    let omegas: Vec<Vecl> = subspaces
        .into_iter()
        .map(|mut s| {
            let v = s.pop().unwrap();
            if v[0] == 0 {
                return Err(ChartabError::Verification(
                    "eigenvector vanishes at the identity class".into(),
                ));
            }
            let inv = md.inv(v[0]);
            Ok(v.iter().map(|&x| md.mul(x, inv)).collect())
        })
        .collect::<Result<_, _>>()?;

    // inverse classes
    let inv_class: Vec<usize> = classes
        .classes
        .iter()
        .map(|c| classes.class_of(g.store.inv_id(c.rep)))
        .collect();

    let order_mod = g.order % l;
    let sqrt_g = (g.order as f64).sqrt().floor() as u64;

    let mut irreducibles = Vec::with_capacity(k);
    for omega in &omegas {
        // degree from the norm equation
        let mut f = 0u64;
        for r in 0..k {
            let term = md.mul(
                md.mul(omega[r], omega[inv_class[r]]),
                md.inv(classes.classes[r].size % l),
            );
            f = md.add(f, term);
        }
        let dsq = md.mul(order_mod, md.inv(f));
        let d = (1..=sqrt_g)
            .find(|&d| md.mul(d % l, d % l) == dsq)
            .ok_or_else(|| {
                ChartabError::Verification("no integer degree matches".into())
            })?;

        // modular character values
        let chi_mod: Vecl = (0..k)
            .map(|r| {
                md.mul(
                    md.mul(d % l, omega[r]),
                    md.inv(classes.classes[r].size % l),
                )
            })
            .collect();

        // lift each value through the power-map Fourier formula
        let values: Vec<Cyclotomic> = (0..k)
            .map(|r| {
                let o = classes.classes[r].elem_order as u64;
                // classes of rep^j for j = 0..o
                let mut power_classes = Vec::with_capacity(o as usize);
                let rep = classes.classes[r].rep;
                let mut cur = 0u32; // identity id
                for _ in 0..o {
                    power_classes.push(classes.class_of(cur));
                    cur = g.store.mul_ids(cur, rep);
                }
                let y = md.pow(z, exponent / o);
                let o_inv = md.inv(o % l);
                let mut terms = Vec::new();
                for j in 0..o {
                    let mut s = 0u64;
                    for (t, &pc) in power_classes.iter().enumerate() {
                        // y^{-j t}
                        let e = (j * t as u64) % o;
                        let w = md.pow(y, o - e);
                        s = md.add(s, md.mul(chi_mod[pc], w));
                    }
                    let aj = md.mul(o_inv, s);
                    if aj > d {
                        return Err(ChartabError::Verification(
                            "lifted multiplicity exceeds the degree".into(),
                        ));
                    }
                    if aj > 0 {
                        terms.push((j as u32, Rational::from_integer(aj.into())));
                    }
                }
                Ok(Cyclotomic::new(o as u32, &terms).reduced())
            })
            .collect::<Result<_, ChartabError>>()?;

        irreducibles.push(ClassFunction {
            group: g.clone(),
            values,
        });
    }

    // canonical order: by degree, then lexicographically by values
    irreducibles.sort_by(|a, b| {
        let da = a.degree();
        let db = b.degree();
        da.cmp(&db).then_with(|| {
            for (x, y) in a.values.iter().zip(&b.values) {
                let ord = x.canonical_cmp(y);
                if ord != std::cmp::Ordering::Equal {
                    return ord;
                }
            }
            std::cmp::Ordering::Equal
        })
    });

    let table = CharacterTable {
        group: g.clone(),
        irreducibles,
    };
    table.verify()?;
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::ff::FieldSpec;
    use crate::matgrp::{closure, Mat};

    #[test]
    fn cyclic_c4_table() {
        // <[[0, -1], [1, 0]]> over GF(5) is cyclic of order 4
        let f = FieldSpec::of_order(5).unwrap();
        let mut r = Mat::zero(&f, 2);
        r.set(0, 1, 4);
        r.set(1, 0, 1);
        let g = closure(&f, 2, &[r], 100, "C4").unwrap();
        assert_eq!(g.order, 4);
        let t = character_table(&g).unwrap();
        assert_eq!(t.irreducibles.len(), 4);
        for chi in &t.irreducibles {
            assert_eq!(chi.degree(), rat(1));
            // values are fourth roots of unity
            for v in &chi.values {
                assert_eq!(&(v * v) * &(v * v), Cyclotomic::one());
            }
        }
        // some character is faithful, so a genuinely imaginary value occurs
        assert!(t
            .irreducibles
            .iter()
            .any(|chi| chi.values.iter().any(|v| v.conductor() == 4)));
    }

    #[test]
    fn s3_table() {
        let f = FieldSpec::of_order(2).unwrap();
        let mut a = Mat::zero(&f, 2);
        a.set(0, 1, 1);
        a.set(1, 0, 1);
        let mut b = Mat::identity(&f, 2);
        b.set(0, 1, 1);
        let g = closure(&f, 2, &[a, b], 100, "S3").unwrap();
        let t = character_table(&g).unwrap();
        let mut degs: Vec<Rational> = t.irreducibles.iter().map(|c| c.degree()).collect();
        degs.sort();
        assert_eq!(degs, vec![rat(1), rat(1), rat(2)]);
    }

    #[test]
    fn elementary_abelian_u5_2() {
        // U_5(2) is elementary abelian of order 8: 8 linear characters
        let ctx = crate::ortho::OrthoContext::build(5, 2).unwrap();
        let g = ctx.so_group().unwrap();
        let pd = crate::ortho::ParabolicData::build(&ctx, &g).unwrap();
        let t = character_table(&pd.u).unwrap();
        assert_eq!(t.irreducibles.len(), 8);
        assert!(t.irreducibles.iter().all(|c| c.degree() == rat(1)));
    }

    #[test]
    fn so5_of_2_table() {
        let ctx = crate::ortho::OrthoContext::build(5, 2).unwrap();
        let g = ctx.so_group().unwrap();
        let t = character_table(&g).unwrap();
        assert_eq!(t.irreducibles.len(), 11);
        // SO5(2) = Sp4(2) = S6: degrees 1,1,5,5,5,5,9,9,10,10,16
        let mut degs: Vec<i64> = t
            .irreducibles
            .iter()
            .map(|c| {
                use num_traits::ToPrimitive;
                c.degree().to_integer().to_i64().unwrap()
            })
            .collect();
        degs.sort_unstable();
        assert_eq!(degs, vec![1, 1, 5, 5, 5, 5, 9, 9, 10, 10, 16]);
    }

    #[test]
    fn p3_of_3_table() {
        // P_3(3) = 3:2 has degrees {1, 1, 2}
        let w = crate::ortho::World::build(3, 3).unwrap();
        let t = character_table(&w.pd.p).unwrap();
        let mut degs: Vec<Rational> = t.irreducibles.iter().map(|c| c.degree()).collect();
        degs.sort();
        assert_eq!(degs, vec![rat(1), rat(1), rat(2)]);
    }
}
