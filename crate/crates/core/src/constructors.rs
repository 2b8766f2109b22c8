//! Frame factories: circular frames on R², group tables and unitary
//! representations, group-generated frames and representation synthesis.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};
use crate::frame::{self, FramePair, FrameReport};
use crate::numerics::{inner, Field, Mat, Tolerance, C64};

/// Multiplication table of a finite group; elements are 0..order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupTable {
    mul: Vec<Vec<usize>>,
    identity: usize,
}

impl GroupTable {
    /// Validates closure, identity, associativity and inverses.
    pub fn new(mul: Vec<Vec<usize>>, identity: usize) -> Result<GroupTable> {
        let n = mul.len();
        if n == 0 {
            return Err(Error::NotAGroup("empty table"));
        }
        if mul.iter().any(|row| row.len() != n || row.iter().any(|&v| v >= n)) {
            return Err(Error::NotAGroup("table is not order x order over 0..order"));
        }
        if identity >= n {
            return Err(Error::NotAGroup("identity index out of range"));
        }
        for g in 0..n {
            if mul[identity][g] != g || mul[g][identity] != g {
                return Err(Error::NotAGroup("identity law fails"));
            }
            let has_inverse = (0..n).any(|h| mul[g][h] == identity && mul[h][g] == identity);
            if !has_inverse {
                return Err(Error::NotAGroup("missing inverse"));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if mul[mul[a][b]][c] != mul[a][mul[b][c]] {
                        return Err(Error::NotAGroup("associativity fails"));
                    }
                }
            }
        }
        Ok(GroupTable { mul, identity })
    }

    /// Z_n with identity 0.
    pub fn cyclic(n: usize) -> Result<GroupTable> {
        GroupTable::new((0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect(), 0)
    }

    /// Group generated as a closed list of permutations under composition
    /// (p∘q)(i) = p[q[i]].
    pub fn from_permutations(perms: &[Vec<usize>]) -> Result<GroupTable> {
        let n = perms.len();
        let find = |p: &[usize]| perms.iter().position(|q| q.as_slice() == p);
        let k = perms.first().map(|p| p.len()).unwrap_or(0);
        let id: Vec<usize> = (0..k).collect();
        let identity = find(&id).ok_or(Error::NotAGroup("identity permutation missing"))?;
        let mut mul = vec![vec![0; n]; n];
        for (a, p) in perms.iter().enumerate() {
            for (b, q) in perms.iter().enumerate() {
                if p.len() != k || q.len() != k {
                    return Err(Error::NotAGroup("permutations of differing degree"));
                }
                let comp: Vec<usize> = q.iter().map(|&i| p[i]).collect();
                mul[a][b] = find(&comp).ok_or(Error::NotAGroup("list not closed under composition"))?;
            }
        }
        GroupTable::new(mul, identity)
    }

    /// All permutations of 0..k in lexicographic order.
    pub fn symmetric_permutations(k: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut cur: Vec<usize> = (0..k).collect();
        loop {
            out.push(cur.clone());
            // next lexicographic permutation
            let Some(i) = (0..k.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else { break };
            let j = (i + 1..k).rev().find(|&j| cur[j] > cur[i]).expect("successor exists");
            cur.swap(i, j);
            cur[i + 1..].reverse();
        }
        out
    }

    pub fn order(&self) -> usize {
        self.mul.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.mul
    }

    pub fn op(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }

    pub fn inverse(&self, g: usize) -> usize {
        (0..self.order()).find(|&h| self.mul[g][h] == self.identity).expect("validated group")
    }
}

/// Unitary representation g ↦ π_g on K^m.
#[derive(Clone, Debug, PartialEq)]
pub struct Representation {
    group: GroupTable,
    mats: Vec<Mat>,
    tol: Tolerance,
}

impl Representation {
    /// Checks π_{gh} = π_gπ_h and unitarity of every π_g.
    pub fn new(group: GroupTable, mats: Vec<Mat>, tol: Tolerance) -> Result<Representation> {
        let n = group.order();
        if mats.len() != n {
            return Err(Error::NotRepresentation);
        }
        let m = mats[0].rows();
        if mats.iter().any(|p| p.shape() != (m, m)) || m == 0 {
            return Err(Error::NotRepresentation);
        }
        let id = Mat::identity(m, Field::Real);
        for p in &mats {
            if !tol.mat_close(&(&p.adjoint() * p), &id) {
                return Err(Error::NotRepresentation);
            }
        }
        for a in 0..n {
            for b in 0..n {
                if !tol.mat_close(&mats[group.op(a, b)], &(&mats[a] * &mats[b])) {
                    return Err(Error::NotRepresentation);
                }
            }
        }
        Ok(Representation { group, mats, tol })
    }

    /// Z_n acting on R² by rotations through 2πk/n.
    pub fn cyclic_rotations(n: usize) -> Result<Representation> {
        let g = GroupTable::cyclic(n)?;
        let mats = (0..n)
            .map(|k| {
                let t = 2.0 * PI * k as f64 / n as f64;
                let (s, c) = t.sin_cos();
                Mat::from_real(2, 2, &[c, -s, s, c]).expect("finite")
            })
            .collect();
        Representation::new(g, mats, Tolerance::default())
    }

    /// Permutation matrices P_σ e_i = e_{σ(i)} of a closed permutation list.
    pub fn from_permutations(perms: &[Vec<usize>]) -> Result<Representation> {
        let g = GroupTable::from_permutations(perms)?;
        let k = perms[0].len();
        let mats = perms.iter().map(|p| Mat::from_fn(k, k, Field::Real, |i, j| C64::new(if p[j] == i { 1.0 } else { 0.0 }, 0.0))).collect();
        Representation::new(g, mats, Tolerance::default())
    }

    pub fn group(&self) -> &GroupTable {
        &self.group
    }

    pub fn mats(&self) -> &[Mat] {
        &self.mats
    }

    pub fn dim(&self) -> usize {
        self.mats[0].rows()
    }

    pub fn tol(&self) -> Tolerance {
        self.tol
    }
}

/// λ_g e_q = e_{gq}, i.e. (λ_gχ_q)(r) = χ_q(g⁻¹r).
pub fn left_regular(g: &GroupTable) -> Representation {
    let n = g.order();
    let mats = (0..n)
        .map(|a| Mat::from_fn(n, n, Field::Real, |i, q| C64::new(if g.op(a, q) == i { 1.0 } else { 0.0 }, 0.0)))
        .collect();
    Representation::new(g.clone(), mats, Tolerance::default()).expect("left regular representation is unitary")
}

#[derive(Clone, Debug, PartialEq)]
pub struct Circular {
    pub fp: FramePair,
    pub tight: bool,
    pub constant: f64,
    pub residual: [f64; 3],
}

/// x_j = a_j(cos θ_j, sin θ_j), τ_j = b_j(cos φ_j, sin φ_j) on R².
///
/// Tight exactly when Σa_jb_j(cos(θ_j+φ_j), sin(θ_j+φ_j), sin(θ_j−φ_j)) = 0,
/// with constant ½Σa_jb_jcos(θ_j−φ_j). A vanishing constant (S = 0) is not
/// reported as tight.
pub fn circular_general(a: &[f64], theta: &[f64], b: &[f64], phi: &[f64], tol: Tolerance) -> Result<Circular> {
    let n = a.len();
    if n == 0 || theta.len() != n || b.len() != n || phi.len() != n {
        return Err(Error::ShapeMismatch("a, theta, b, phi must share a positive length"));
    }
    if a.iter().chain(b).any(|&r| !(r >= 0.0)) {
        return Err(Error::NegativeRadius);
    }
    let mut residual = [0.0; 3];
    let mut constant = 0.0;
    let mut mass = 0.0;
    let mut xs = Vec::with_capacity(2 * n);
    let mut ts = Vec::with_capacity(2 * n);
    for j in 0..n {
        let ab = a[j] * b[j];
        residual[0] += ab * (theta[j] + phi[j]).cos();
        residual[1] += ab * (theta[j] + phi[j]).sin();
        residual[2] += ab * (theta[j] - phi[j]).sin();
        constant += 0.5 * ab * (theta[j] - phi[j]).cos();
        mass += ab;
        xs.push((a[j] * theta[j].cos(), a[j] * theta[j].sin()));
        ts.push((b[j] * phi[j].cos(), b[j] * phi[j].sin()));
    }
    let x = Mat::from_fn(2, n, Field::Real, |i, j| C64::new(if i == 0 { xs[j].0 } else { xs[j].1 }, 0.0));
    let t = Mat::from_fn(2, n, Field::Real, |i, j| C64::new(if i == 0 { ts[j].0 } else { ts[j].1 }, 0.0));
    let fp = FramePair::new(x, t, tol)?;
    let rnorm = residual.iter().map(|r| r * r).sum::<f64>().sqrt();
    let tight = rnorm <= tol.bound(mass) && constant > tol.bound(mass);
    Ok(Circular { fp, tight, constant, residual })
}

/// kl members with angles 2πj/k for x and 2πj/l for τ, unit radii.
pub fn circular_kl(k: usize, l: usize, tol: Tolerance) -> Result<Circular> {
    if k < 1 || l < 1 || k * l < 3 {
        return Err(Error::BadKL);
    }
    let n = k * l;
    let theta: Vec<f64> = (0..n).map(|j| 2.0 * PI * j as f64 / k as f64).collect();
    let phi: Vec<f64> = (0..n).map(|j| 2.0 * PI * j as f64 / l as f64).collect();
    let ones = vec![1.0; n];
    circular_general(&ones, &theta, &ones, &phi, tol)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GeneratorBound {
    /// a ≤ (order/m)⟨x,τ⟩ ≤ b, or the family is not a frame (vacuous).
    Holds,
    Violated,
    /// ⟨x,τ⟩ is not real.
    NotApplicable,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GroupFrame {
    pub fp: FramePair,
    pub report: FrameReport,
    pub bound: GeneratorBound,
    pub generator_bound_ok: bool,
    /// (order/m)·⟨x,τ⟩ when real.
    pub bound_value: Option<f64>,
}

/// Orbit pair x_g = π_gx, τ_g = π_gτ in group-index order.
pub fn group_frame(rep: &Representation, x: &[C64], tau: &[C64]) -> Result<GroupFrame> {
    let m = rep.dim();
    for v in [x, tau] {
        if v.len() != m {
            return Err(Error::DimMismatch { expected: m, got: v.len() });
        }
    }
    let field = if rep.mats.iter().all(|p| p.is_real_valued()) && x.iter().chain(tau).all(|z| z.im == 0.0) {
        Field::Real
    } else {
        Field::Complex
    };
    let xs: Vec<Vec<C64>> = rep.mats.iter().map(|p| p.mul_vec(x)).collect();
    let ts: Vec<Vec<C64>> = rep.mats.iter().map(|p| p.mul_vec(tau)).collect();
    let fp = FramePair::from_columns(m, &xs, &ts, field, rep.tol)?;
    let report = frame::verify(&fp);
    let ip = inner(x, tau);
    let order = rep.group.order() as f64;
    let tol = rep.tol;
    let (bound, bound_value) = if !tol.is_small(ip.im, ip.norm()) {
        (GeneratorBound::NotApplicable, None)
    } else {
        let v = order / m as f64 * ip.re;
        let ok = !report.is_frame || (v >= report.lower_a - tol.bound(v) && v <= report.upper_b + tol.bound(v));
        (if ok { GeneratorBound::Holds } else { GeneratorBound::Violated }, Some(v))
    };
    Ok(GroupFrame { fp, report, generator_bound_ok: bound != GeneratorBound::Violated, bound, bound_value })
}

/// ⟨x_{gp},x_{gq}⟩ = ⟨x_p,x_q⟩, ⟨x_{gp},τ_{gq}⟩ = ⟨x_p,τ_q⟩ and
/// ⟨τ_{gp},τ_{gq}⟩ = ⟨τ_p,τ_q⟩ for all g, p, q.
pub fn check_group_invariance(fp: &FramePair, g: &GroupTable) -> Result<bool> {
    let n = g.order();
    if fp.count() != n {
        return Err(Error::CountMismatch(fp.count(), n));
    }
    let tol = fp.tol();
    // entry (i, j) of U*V is ⟨v_j, u_i⟩; each Gram must be fixed by i, j ↦ gi, gj
    let grams = [&fp.x().adjoint() * fp.x(), &fp.t().adjoint() * fp.x(), &fp.t().adjoint() * fp.t()];
    for gram in &grams {
        let scale = gram.max_abs();
        for a in 0..n {
            for p in 0..n {
                for q in 0..n {
                    let diff = (gram[(g.op(a, p), g.op(a, q))] - gram[(p, q)]).norm();
                    if diff > tol.bound(scale) {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq)]
pub struct Synthesis {
    pub rep: Representation,
    pub pi_reproduces: bool,
}

/// π_g = θ_τ*λ_gθ_x = T·λ_g·X* for a Parseval, group-invariant pair.
pub fn synthesize_representation(fp: &FramePair, g: &GroupTable) -> Result<Synthesis> {
    if fp.count() != g.order() {
        return Err(Error::CountMismatch(fp.count(), g.order()));
    }
    if !frame::verify(fp).parseval {
        return Err(Error::NotParseval);
    }
    if !check_group_invariance(fp, g)? {
        return Err(Error::NotInvariant);
    }
    let lam = left_regular(g);
    let xa = fp.x().adjoint();
    let mats: Vec<Mat> = lam.mats.iter().map(|l| &(fp.t() * l) * &xa).collect();
    let tol = fp.tol();
    let e = g.identity();
    let (xe, te) = (fp.x_col(e), fp.t_col(e));
    let mut pi_reproduces = true;
    for (k, p) in mats.iter().enumerate() {
        let dx = p.mul_vec(&xe);
        let dt = p.mul_vec(&te);
        let ok = |got: &[C64], want: &[C64]| {
            let scale = want.iter().chain(got).fold(0.0f64, |s, z| s.max(z.norm()));
            got.iter().zip(want).all(|(a, b)| (a - b).norm() <= tol.bound(scale))
        };
        if !ok(&dx, &fp.x_col(k)) || !ok(&dt, &fp.t_col(k)) {
            pi_reproduces = false;
        }
    }
    let rep = Representation::new(g.clone(), mats, tol)?;
    Ok(Synthesis { rep, pi_reproduces })
}
