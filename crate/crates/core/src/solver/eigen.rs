//! Dense real symmetric eigensolver.
//!
//! Householder reduction to tridiagonal form, implicit-shift QL for the
//! full spectrum, inverse iteration for the eigenvectors that are actually
//! requested, and back-transformation through the stored reflectors. All
//! loops run in a fixed order, so results are bit-reproducible.

use crate::error::{Error, Result};

/// Dense symmetric matrix in row-major storage. Only the lower triangle is
/// read by the eigensolver.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricMatrix {
    n: usize,
    data: Vec<f64>,
}

impl SymmetricMatrix {
    pub fn zeros(n: usize) -> Self {
        SymmetricMatrix { n, data: vec![0.0; n * n] }
    }

    /// Builds from a full row-major array; the upper triangle is ignored.
    pub fn from_row_major(n: usize, data: Vec<f64>) -> Self {
        assert_eq!(data.len(), n * n, "matrix data has wrong length");
        SymmetricMatrix { n, data }
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.n + j] = v;
    }

    /// y = A x using the lower triangle.
    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        let n = self.n;
        let mut y = vec![0.0; n];
        for i in 0..n {
            let row = &self.data[i * n..i * n + i + 1];
            let mut s = 0.0;
            for k in 0..i {
                s += row[k] * x[k];
                y[k] += row[k] * x[i];
            }
            y[i] += s + row[i] * x[i];
        }
        y
    }
}

/// Eigenvalues in ascending order together with the eigenvectors of the
/// selected subset.
#[derive(Debug, Clone)]
pub struct PartialEigen {
    pub values: Vec<f64>,
    /// (index into `values`, unit eigenvector)
    pub vectors: Vec<(usize, Vec<f64>)>,
}

/// Symmetric tridiagonal matrix plus the reflectors that produced it.
struct Tridiagonal {
    diag: Vec<f64>,
    /// off[i] couples rows i−1 and i; off[0] = 0.
    off: Vec<f64>,
    /// Reflector i occupies row i, columns 0..i, of the reduced matrix.
    reflectors: SymmetricMatrix,
    /// H_i of P_i = I − u uᵀ/H_i; zero when no reflection was needed.
    scale: Vec<f64>,
}

/// Eigen-decompose `a`, returning every eigenvalue and the eigenvectors of
/// those below `vector_bound`.
pub fn eigen_below(a: SymmetricMatrix, vector_bound: f64) -> Result<PartialEigen> {
    let tri = tridiagonalize(a);
    let values = ql_eigenvalues(&tri.diag, &tri.off)?;
    let wanted: Vec<usize> = (0..values.len()).filter(|&i| values[i] < vector_bound).collect();
    let selected: Vec<f64> = wanted.iter().map(|&i| values[i]).collect();
    let tri_vectors = inverse_iteration(&tri.diag, &tri.off, &selected);
    let vectors = wanted
        .into_iter()
        .zip(tri_vectors)
        .map(|(i, y)| (i, back_transform(&tri, y)))
        .collect();
    Ok(PartialEigen { values, vectors })
}

/// Householder reduction of the lower triangle (Martin, Reinsch and
/// Wilkinson's tred2 without accumulation). The rank-2 update of step i+1
/// is fused with the matrix-vector product of step i so the trailing block
/// is streamed once per step.
fn tridiagonalize(mut a: SymmetricMatrix) -> Tridiagonal {
    let n = a.n;
    let mut diag = vec![0.0; n];
    let mut off = vec![0.0; n];
    let mut scale_h = vec![0.0; n];
    if n == 0 {
        return Tridiagonal { diag, off, reflectors: a, scale: scale_h };
    }

    // Pending update A ← A − u qᵀ − q uᵀ from the previous step.
    let mut pend_u: Vec<f64> = Vec::with_capacity(n);
    let mut pend_q: Vec<f64> = Vec::with_capacity(n);
    let mut u: Vec<f64> = Vec::with_capacity(n);
    let mut p = vec![0.0; n];

    for i in (1..n).rev() {
        let l = i - 1;
        let data = &mut a.data;
        let row_i = &mut data[i * n..i * n + i + 1];
        if !pend_u.is_empty() {
            rank2_row(row_i, &pend_u, &pend_q);
        }
        diag[i] = row_i[i];
        let row_i = &mut row_i[..i];

        let mut h = 0.0;
        let mut reflect = false;
        if l > 0 {
            let scale: f64 = row_i.iter().map(|x| x.abs()).sum();
            if scale == 0.0 {
                off[i] = row_i[l];
            } else {
                for x in row_i.iter_mut() {
                    *x /= scale;
                    h += *x * *x;
                }
                let f = row_i[l];
                let g = if f >= 0.0 { -h.sqrt() } else { h.sqrt() };
                off[i] = scale * g;
                h -= f * g;
                row_i[l] = f - g;
                reflect = true;
            }
        } else {
            off[i] = row_i[l];
        }
        scale_h[i] = if reflect { h } else { 0.0 };

        u.clear();
        if reflect {
            u.extend_from_slice(row_i);
        }
        p[..i].fill(0.0);

        for j in 0..=l {
            let row = &mut data[j * n..j * n + j + 1];
            let has_pending = !pend_u.is_empty();
            match (has_pending, reflect) {
                (true, true) => fused_row(row, &pend_u, &pend_q, &u, &mut p[..=j]),
                (true, false) => rank2_row(row, &pend_u, &pend_q),
                (false, true) => product_row(row, &u, &mut p[..=j]),
                (false, false) => {}
            }
        }

        if reflect {
            let mut f = 0.0;
            for k in 0..i {
                p[k] /= h;
                f += p[k] * u[k];
            }
            let kk = f / (h + h);
            pend_q.clear();
            pend_q.extend(p[..i].iter().zip(&u).map(|(pk, uk)| pk - kk * uk));
            pend_u.clear();
            pend_u.extend_from_slice(&u);
        } else {
            pend_u.clear();
            pend_q.clear();
        }
    }
    diag[0] = a.data[0];
    off[0] = 0.0;
    Tridiagonal { diag, off, reflectors: a, scale: scale_h }
}

/// row[k] −= u_j q_k + q_j u_k for k ≤ j, where j = row.len() − 1.
#[inline]
fn rank2_row(row: &mut [f64], u: &[f64], q: &[f64]) {
    let j = row.len() - 1;
    let (uj, qj) = (u[j], q[j]);
    for ((x, &qk), &uk) in row.iter_mut().zip(&q[..=j]).zip(&u[..=j]) {
        *x -= uj * qk + qj * uk;
    }
}

/// Accumulate the contribution of one lower-triangle row to p = A·u.
#[inline]
fn product_row(row: &[f64], u: &[f64], p: &mut [f64]) {
    let j = row.len() - 1;
    let uj = u[j];
    let mut acc = [0.0f64; 4];
    let body = j - j % 4;
    for k in (0..body).step_by(4) {
        for t in 0..4 {
            let x = row[k + t];
            acc[t] += x * u[k + t];
            p[k + t] += x * uj;
        }
    }
    let mut s = (acc[0] + acc[1]) + (acc[2] + acc[3]);
    for k in body..j {
        let x = row[k];
        s += x * u[k];
        p[k] += x * uj;
    }
    p[j] += s + row[j] * uj;
}

/// [`rank2_row`] followed by [`product_row`] in a single sweep.
#[inline]
fn fused_row(row: &mut [f64], pu: &[f64], pq: &[f64], u: &[f64], p: &mut [f64]) {
    let j = row.len() - 1;
    let (puj, pqj, uj) = (pu[j], pq[j], u[j]);
    let mut acc = [0.0f64; 4];
    let body = j - j % 4;
    for k in (0..body).step_by(4) {
        for t in 0..4 {
            let idx = k + t;
            let x = row[idx] - (puj * pq[idx] + pqj * pu[idx]);
            row[idx] = x;
            acc[t] += x * u[idx];
            p[idx] += x * uj;
        }
    }
    let mut s = (acc[0] + acc[1]) + (acc[2] + acc[3]);
    for k in body..j {
        let x = row[k] - (puj * pq[k] + pqj * pu[k]);
        row[k] = x;
        s += x * u[k];
        p[k] += x * uj;
    }
    let x = row[j] - 2.0 * puj * pqj;
    row[j] = x;
    p[j] += s + x * uj;
}

const QL_MAX_ITER: usize = 60;

/// All eigenvalues of a symmetric tridiagonal matrix by implicit-shift QL,
/// sorted ascending.
fn ql_eigenvalues(diag: &[f64], off: &[f64]) -> Result<Vec<f64>> {
    let n = diag.len();
    let mut d = diag.to_vec();
    // e[i] couples i and i+1
    let mut e: Vec<f64> = (0..n).map(|i| if i + 1 < n { off[i + 1] } else { 0.0 }).collect();
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > QL_MAX_ITER {
                return Err(Error::numerical(
                    format!("QL iteration failed to isolate eigenvalue {l} of {n}"),
                    iter,
                ));
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut i = m;
            let mut underflow = false;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    d.sort_by(|a, b| a.total_cmp(b));
    Ok(d)
}

/// LU factors of T − λI with partial pivoting (at most two superdiagonals).
struct TridiagLu {
    u0: Vec<f64>,
    u1: Vec<f64>,
    u2: Vec<f64>,
    mult: Vec<f64>,
    swapped: Vec<bool>,
}

fn factor_shifted(diag: &[f64], off: &[f64], lambda: f64, tiny: f64) -> TridiagLu {
    let n = diag.len();
    let mut lu = TridiagLu {
        u0: vec![0.0; n],
        u1: vec![0.0; n],
        u2: vec![0.0; n],
        mult: vec![0.0; n],
        swapped: vec![false; n],
    };
    let mut a0 = diag[0] - lambda;
    let mut a1 = if n > 1 { off[1] } else { 0.0 };
    for k in 0..n.saturating_sub(1) {
        let sub = off[k + 1];
        let nd = diag[k + 1] - lambda;
        let ns = if k + 2 < n { off[k + 2] } else { 0.0 };
        if a0.abs() >= sub.abs() {
            if a0.abs() < tiny {
                a0 = tiny.copysign(a0);
            }
            let m = sub / a0;
            lu.u0[k] = a0;
            lu.u1[k] = a1;
            lu.mult[k] = m;
            a0 = nd - m * a1;
            a1 = ns;
        } else {
            let m = a0 / sub;
            lu.u0[k] = sub;
            lu.u1[k] = nd;
            lu.u2[k] = ns;
            lu.mult[k] = m;
            lu.swapped[k] = true;
            a0 = a1 - m * nd;
            a1 = -m * ns;
        }
    }
    if a0.abs() < tiny {
        a0 = tiny.copysign(a0);
    }
    lu.u0[n - 1] = a0;
    lu
}

fn solve_factored(lu: &TridiagLu, b: &mut [f64]) {
    let n = b.len();
    for k in 0..n.saturating_sub(1) {
        if lu.swapped[k] {
            b.swap(k, k + 1);
        }
        b[k + 1] -= lu.mult[k] * b[k];
    }
    for k in (0..n).rev() {
        let mut s = b[k];
        if k + 1 < n {
            s -= lu.u1[k] * b[k + 1];
        }
        if k + 2 < n {
            s -= lu.u2[k] * b[k + 2];
        }
        b[k] = s / lu.u0[k];
    }
}

fn normalize(v: &mut [f64]) {
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    if norm > 0.0 {
        v.iter_mut().for_each(|x| *x /= norm);
    }
}

/// Eigenvectors of the tridiagonal matrix for the given (ascending)
/// eigenvalues. Vectors whose eigenvalues lie within 1e-3·‖T‖ of the
/// previous one are reorthogonalized against that cluster.
fn inverse_iteration(diag: &[f64], off: &[f64], values: &[f64]) -> Vec<Vec<f64>> {
    const ITERATIONS: usize = 3;
    let n = diag.len();
    let norm = (0..n)
        .map(|i| diag[i].abs() + off[i].abs() + if i + 1 < n { off[i + 1].abs() } else { 0.0 })
        .fold(0.0, f64::max);
    let tiny = f64::EPSILON * norm.max(f64::MIN_POSITIVE);
    let cluster_gap = 1e-3 * norm;

    let mut out: Vec<Vec<f64>> = Vec::with_capacity(values.len());
    let mut cluster_start = 0;
    for (idx, &lambda) in values.iter().enumerate() {
        if idx > 0 && lambda - values[idx - 1] > cluster_gap {
            cluster_start = idx;
        }
        let lu = factor_shifted(diag, off, lambda, tiny);
        // deterministic pseudo-random start
        let mut state = 0x9E37_79B9_7F4A_7C15u64 ^ (idx as u64).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        let mut x: Vec<f64> = (0..n)
            .map(|_| {
                state ^= state << 13;
                state ^= state >> 7;
                state ^= state << 17;
                (state >> 11) as f64 / (1u64 << 53) as f64 - 0.5
            })
            .collect();
        normalize(&mut x);
        for _ in 0..ITERATIONS {
            solve_factored(&lu, &mut x);
            for prev in &out[cluster_start..idx] {
                let dot: f64 = x.iter().zip(prev).map(|(a, b)| a * b).sum();
                x.iter_mut().zip(prev).for_each(|(a, b)| *a -= dot * b);
            }
            normalize(&mut x);
        }
        out.push(x);
    }
    out
}

/// x = P_{n−1} ⋯ P_1 y.
fn back_transform(tri: &Tridiagonal, mut y: Vec<f64>) -> Vec<f64> {
    let n = y.len();
    for i in 1..n {
        let h = tri.scale[i];
        if h == 0.0 {
            continue;
        }
        let u = &tri.reflectors.data[i * n..i * n + i];
        let dot: f64 = u.iter().zip(&y[..i]).map(|(a, b)| a * b).sum();
        let f = dot / h;
        y[..i].iter_mut().zip(u).for_each(|(yk, uk)| *yk -= f * uk);
    }
    y
}
