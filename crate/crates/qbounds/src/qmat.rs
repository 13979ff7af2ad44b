//! Dense complex matrices, quantum states, and entropy primitives.
//!
//! Everything here targets the small dimensions this crate works at (products
//! of qubit/qudit factors up to 16), so matrices are stored dense in row-major
//! order and the eigensolver is a cyclic complex Jacobi iteration, which at
//! these sizes is exact to machine precision and fully deterministic.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{Scalar, cre, real, xlog2x};

/// Dense complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix<T> {
    rows: usize,
    cols: usize,
    entries: Vec<Complex<T>>,
}

impl<T: Scalar> ComplexMatrix<T> {
    pub fn new(rows: usize, cols: usize, entries: Vec<Complex<T>>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::ShapeMismatch {
                context: format!("{} entries for a {rows}x{cols} matrix", entries.len()),
            });
        }
        Ok(Self { rows, cols, entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, entries: vec![Complex::new(T::zero(), T::zero()); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = cre(T::one());
        }
        m
    }

    /// Outer product |v><w| of two vectors.
    pub fn outer(v: &[Complex<T>], w: &[Complex<T>]) -> Self {
        let mut m = Self::zeros(v.len(), w.len());
        for (i, vi) in v.iter().enumerate() {
            for (j, wj) in w.iter().enumerate() {
                m.entries[i * w.len() + j] = vi * wj.conj();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Complex<T> {
        self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Complex<T>) {
        self.entries[i * self.cols + j] = value;
    }

    pub fn trace(&self) -> Complex<T> {
        debug_assert_eq!(self.rows, self.cols);
        (0..self.rows).map(|i| self.get(i, i)).fold(Complex::new(T::zero(), T::zero()), |a, b| a + b)
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let mut m = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.entries[j * self.rows + i] = self.get(i, j).conj();
            }
        }
        m
    }

    pub fn scaled(&self, factor: Complex<T>) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| e * factor).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "matrix sum shape");
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "matrix difference shape");
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix product shape");
        let mut m = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let aik = self.get(i, k);
                if aik.re == T::zero() && aik.im == T::zero() {
                    continue;
                }
                for j in 0..other.cols {
                    m.entries[i * other.cols + j] += aik * other.get(k, j);
                }
            }
        }
        m
    }

    /// Kronecker product, left factor on the slow index.
    pub fn kron(&self, other: &Self) -> Self {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut m = Self::zeros(rows, cols);
        for ia in 0..self.rows {
            for ja in 0..self.cols {
                let a = self.get(ia, ja);
                for ib in 0..other.rows {
                    for jb in 0..other.cols {
                        m.entries[(ia * other.rows + ib) * cols + (ja * other.cols + jb)] =
                            a * other.get(ib, jb);
                    }
                }
            }
        }
        m
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "matrix comparison shape");
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(T::zero(), T::max)
    }

    /// Largest |a_ij - conj(a_ji)| over all entries.
    pub fn hermiticity_deviation(&self) -> T {
        debug_assert_eq!(self.rows, self.cols);
        let mut dev = T::zero();
        for i in 0..self.rows {
            for j in i..self.cols {
                let d = (self.get(i, j) - self.get(j, i).conj()).norm();
                dev = dev.max(d);
            }
        }
        dev
    }

    pub fn frobenius_norm(&self) -> T {
        self.entries.iter().map(|e| e.norm_sqr()).fold(T::zero(), |a, b| a + b).sqrt()
    }

    /// Eigendecomposition of a hermitian matrix by cyclic complex Jacobi
    /// rotations. Returns eigenvalues in descending order and a unitary whose
    /// columns are the matching eigenvectors.
    pub fn eig_hermitian(&self) -> Result<(Vec<T>, ComplexMatrix<T>)> {
        if self.rows != self.cols {
            return Err(Error::ShapeMismatch {
                context: format!("eigendecomposition of a {}x{} matrix", self.rows, self.cols),
            });
        }
        let dev = self.hermiticity_deviation();
        if dev > T::TOL_VALID {
            return Err(Error::NotHermitian { deviation: dev.to_f64().unwrap_or(f64::NAN) });
        }

        let n = self.rows;
        let mut a = self.clone();
        // Start from the exactly hermitian average so roundoff asymmetry in
        // the input cannot drift through the rotations.
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    a.set(i, i, cre(self.get(i, i).re));
                } else {
                    let m = (self.get(i, j) + self.get(j, i).conj()).unscale(real::<T>(2.0));
                    a.set(i, j, m);
                }
            }
        }
        let mut v = Self::identity(n);
        let scale = a.frobenius_norm().max(T::one());
        let stop = scale * T::epsilon() * T::from_usize(n).unwrap();

        const MAX_SWEEPS: usize = 64;
        let mut converged = false;
        for _ in 0..MAX_SWEEPS {
            let mut off = T::zero();
            for p in 0..n {
                for q in (p + 1)..n {
                    off += a.get(p, q).norm_sqr();
                }
            }
            if (off + off).sqrt() <= stop {
                converged = true;
                break;
            }
            for p in 0..n {
                for q in (p + 1)..n {
                    let apq = a.get(p, q);
                    let r = apq.norm();
                    if !(r > T::zero()) {
                        continue;
                    }
                    let alpha = a.get(p, p).re;
                    let gamma = a.get(q, q).re;
                    let tau = (gamma - alpha) / (r + r);
                    let t = if tau >= T::zero() {
                        T::one() / (tau + (T::one() + tau * tau).sqrt())
                    } else {
                        -T::one() / (-tau + (T::one() + tau * tau).sqrt())
                    };
                    let c = T::one() / (T::one() + t * t).sqrt();
                    let s = t * c;
                    let phase = apq.unscale(r);
                    let sp = phase.scale(s);

                    // Columns p and q of both the working matrix and the
                    // accumulated eigenvectors.
                    for k in 0..n {
                        let akp = a.get(k, p);
                        let akq = a.get(k, q);
                        a.set(k, p, akp.scale(c) - sp.conj() * akq);
                        a.set(k, q, sp * akp + akq.scale(c));

                        let vkp = v.get(k, p);
                        let vkq = v.get(k, q);
                        v.set(k, p, vkp.scale(c) - sp.conj() * vkq);
                        v.set(k, q, sp * vkp + vkq.scale(c));
                    }
                    // Rows p and q.
                    for k in 0..n {
                        let apk = a.get(p, k);
                        let aqk = a.get(q, k);
                        a.set(p, k, apk.scale(c) - sp * aqk);
                        a.set(q, k, sp.conj() * apk + aqk.scale(c));
                    }
                    a.set(p, q, Complex::new(T::zero(), T::zero()));
                    a.set(q, p, Complex::new(T::zero(), T::zero()));
                    a.set(p, p, cre(a.get(p, p).re));
                    a.set(q, q, cre(a.get(q, q).re));
                }
            }
        }
        if !converged {
            return Err(Error::NoConvergence { sweeps: MAX_SWEEPS });
        }

        let mut order: Vec<usize> = (0..n).collect();
        let diag: Vec<T> = (0..n).map(|i| a.get(i, i).re).collect();
        order.sort_by(|&i, &j| diag[j].partial_cmp(&diag[i]).unwrap().then(i.cmp(&j)));

        let values: Vec<T> = order.iter().map(|&i| diag[i]).collect();
        let mut vectors = Self::zeros(n, n);
        for (new_col, &old_col) in order.iter().enumerate() {
            for k in 0..n {
                vectors.set(k, new_col, v.get(k, old_col));
            }
        }
        Ok((values, vectors))
    }
}

/// Unit vector in a Hilbert space of the stated dimension.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState<T> {
    amplitudes: Vec<Complex<T>>,
}

impl<T: Scalar> PureState<T> {
    /// Accepts an already normalized amplitude vector.
    pub fn new(amplitudes: Vec<Complex<T>>) -> Result<Self> {
        let norm =
            amplitudes.iter().map(|a| a.norm_sqr()).fold(T::zero(), |acc, x| acc + x).sqrt();
        if (norm - T::one()).abs() > T::TOL_STRICT {
            return Err(Error::NotNormalized { norm: norm.to_f64().unwrap_or(f64::NAN) });
        }
        Ok(Self { amplitudes })
    }

    /// Normalizes the given amplitudes.
    pub fn normalized(amplitudes: Vec<Complex<T>>) -> Result<Self> {
        let norm =
            amplitudes.iter().map(|a| a.norm_sqr()).fold(T::zero(), |acc, x| acc + x).sqrt();
        if !(norm > T::zero()) {
            return Err(Error::NotNormalized { norm: 0.0 });
        }
        Ok(Self { amplitudes: amplitudes.into_iter().map(|a| a.unscale(norm)).collect() })
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex<T>] {
        &self.amplitudes
    }

    /// Rank-one projector |psi><psi|.
    pub fn projector(&self) -> ComplexMatrix<T> {
        ComplexMatrix::outer(&self.amplitudes, &self.amplitudes)
    }
}

/// Density matrix over an explicit tensor factorization.
///
/// Construction validates hermiticity and unit trace within `TOL_VALID`,
/// rejects spectra below `-TOL_VALID`, and clamps eigenvalue noise inside
/// that window to zero. The clamped spectrum is cached (descending) so
/// entropies never re-run the eigensolver.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix<T> {
    dims: Vec<usize>,
    matrix: ComplexMatrix<T>,
    spectrum: Vec<T>,
}

impl<T: Scalar> DensityMatrix<T> {
    pub fn new(dims: Vec<usize>, matrix: ComplexMatrix<T>) -> Result<Self> {
        if dims.is_empty() || dims.iter().any(|&d| d < 2) {
            return Err(Error::InvalidDims {
                context: format!("subsystem dimensions {dims:?} must all be at least 2"),
            });
        }
        let total: usize = dims.iter().product();
        if matrix.rows() != matrix.cols() {
            return Err(Error::ShapeMismatch {
                context: format!("density matrix must be square, got {}x{}", matrix.rows(), matrix.cols()),
            });
        }
        if matrix.rows() != total {
            return Err(Error::DimensionMismatch { expected: total, got: matrix.rows() });
        }
        let dev = matrix.hermiticity_deviation();
        if dev > T::TOL_VALID {
            return Err(Error::NotHermitian { deviation: dev.to_f64().unwrap_or(f64::NAN) });
        }
        let tr = matrix.trace();
        if (tr.re - T::one()).abs() > T::TOL_VALID || tr.im.abs() > T::TOL_VALID {
            return Err(Error::TraceNotOne { trace: tr.re.to_f64().unwrap_or(f64::NAN) });
        }
        let (values, _) = matrix.eig_hermitian()?;
        if let Some(&min) = values.last() {
            if min < -T::TOL_VALID {
                return Err(Error::NotPositive {
                    min_eigenvalue: min.to_f64().unwrap_or(f64::NAN),
                });
            }
        }
        let spectrum = values.into_iter().map(|v| v.max(T::zero())).collect();
        Ok(Self { dims, matrix, spectrum })
    }

    pub fn from_pure(state: &PureState<T>, dims: Vec<usize>) -> Result<Self> {
        Self::new(dims, state.projector())
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// Total Hilbert-space dimension.
    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &ComplexMatrix<T> {
        &self.matrix
    }

    /// Eigenvalues in descending order, clamped into [0, inf).
    pub fn spectrum(&self) -> &[T] {
        &self.spectrum
    }

    pub fn purity(&self) -> T {
        self.spectrum.iter().map(|&l| l * l).fold(T::zero(), |a, b| a + b)
    }

    /// Number of tensor factors.
    pub fn subsystems(&self) -> usize {
        self.dims.len()
    }

    /// Trace over every subsystem not listed in `keep`. Indices must be
    /// strictly ascending; the result keeps those factors in order.
    pub fn partial_trace(&self, keep: &[usize]) -> Result<Self> {
        let n = self.dims.len();
        if keep.is_empty() {
            return Err(Error::InvalidSubsystem { index: 0, count: n });
        }
        for (pos, &k) in keep.iter().enumerate() {
            if k >= n {
                return Err(Error::InvalidSubsystem { index: k, count: n });
            }
            if pos > 0 && keep[pos - 1] >= k {
                return Err(Error::InvalidDims {
                    context: format!("keep list {keep:?} must be strictly ascending"),
                });
            }
        }

        let strides = strides_of(&self.dims);
        let traced: Vec<usize> = (0..n).filter(|i| !keep.contains(i)).collect();
        let kept_dims: Vec<usize> = keep.iter().map(|&i| self.dims[i]).collect();
        let traced_dims: Vec<usize> = traced.iter().map(|&i| self.dims[i]).collect();
        let kept_offsets = subsystem_offsets(&kept_dims, &keep.iter().map(|&i| strides[i]).collect::<Vec<_>>());
        let traced_offsets =
            subsystem_offsets(&traced_dims, &traced.iter().map(|&i| strides[i]).collect::<Vec<_>>());

        let dk = kept_offsets.len();
        let mut out = ComplexMatrix::zeros(dk, dk);
        for (r, &ro) in kept_offsets.iter().enumerate() {
            for (c, &co) in kept_offsets.iter().enumerate() {
                let mut sum = Complex::new(T::zero(), T::zero());
                for &to in &traced_offsets {
                    sum += self.matrix.get(ro + to, co + to);
                }
                out.set(r, c, sum);
            }
        }
        Self::new(kept_dims, out)
    }
}

/// Row-major strides of a multi-index with the given dimensions.
fn strides_of(dims: &[usize]) -> Vec<usize> {
    let mut strides = vec![1usize; dims.len()];
    for i in (0..dims.len().saturating_sub(1)).rev() {
        strides[i] = strides[i + 1] * dims[i + 1];
    }
    strides
}

/// Flat offsets contributed by a group of subsystems: entry `k` is the full
/// index produced by the `k`-th multi-index over `dims` placed at `strides`.
fn subsystem_offsets(dims: &[usize], strides: &[usize]) -> Vec<usize> {
    let total: usize = dims.iter().product();
    let mut offsets = Vec::with_capacity(total);
    for mut k in 0..total {
        let mut off = 0;
        for i in (0..dims.len()).rev() {
            off += (k % dims[i]) * strides[i];
            k /= dims[i];
        }
        offsets.push(off);
    }
    offsets
}

/// Joint state rho_a (x) rho_b on the concatenated factor list.
pub fn tensor_product<T: Scalar>(a: &DensityMatrix<T>, b: &DensityMatrix<T>) -> Result<DensityMatrix<T>> {
    let mut dims = a.dims().to_vec();
    dims.extend_from_slice(b.dims());
    DensityMatrix::new(dims, a.matrix().kron(b.matrix()))
}

/// Entropy of a spectrum already known to be a clamped probability list.
pub(crate) fn entropy_of_spectrum<T: Scalar>(spectrum: &[T]) -> T {
    let s = -spectrum.iter().map(|&l| xlog2x(l)).fold(T::zero(), |a, b| a + b);
    s.max(T::zero())
}

/// Von Neumann entropy in bits.
pub fn von_neumann_entropy<T: Scalar>(rho: &DensityMatrix<T>) -> T {
    entropy_of_spectrum(rho.spectrum())
}

/// Shannon entropy of a probability vector, in bits. Entries inside
/// [-TOL_STRICT, 0) count as zero; the total must be 1 within TOL_SUM.
pub fn shannon_entropy<T: Scalar>(probabilities: &[T]) -> Result<T> {
    let mut sum = T::zero();
    for &p in probabilities {
        if p < -T::TOL_STRICT {
            return Err(Error::NotAProbabilityVector {
                context: format!("negative entry {:e}", p.to_f64().unwrap_or(f64::NAN)),
            });
        }
        sum += p.max(T::zero());
    }
    if (sum - T::one()).abs() > T::TOL_SUM {
        return Err(Error::NotAProbabilityVector {
            context: format!("entries sum to {}", sum.to_f64().unwrap_or(f64::NAN)),
        });
    }
    Ok(entropy_of_spectrum(
        &probabilities.iter().map(|&p| p.max(T::zero())).collect::<Vec<_>>(),
    ))
}

/// Relative entropy S(rho || sigma) in bits.
///
/// Requires the support of `rho` to lie inside the support of `sigma`:
/// every eigenvector of `rho` with eigenvalue above TOL_VALID may leak at
/// most TOL_SUPPORT of its weight into the null space of `sigma`. Values in
/// [-TOL_SUM, 0) are reported as 0.
pub fn relative_entropy<T: Scalar>(rho: &DensityMatrix<T>, sigma: &DensityMatrix<T>) -> Result<T> {
    if rho.dim() != sigma.dim() {
        return Err(Error::DimensionMismatch { expected: rho.dim(), got: sigma.dim() });
    }
    let n = rho.dim();
    let (rho_vals, rho_vecs) = rho.matrix().eig_hermitian()?;
    let (sig_vals, sig_vecs) = sigma.matrix().eig_hermitian()?;

    // overlap[i][j] = |<v_i | w_j>|^2 between eigenvectors of rho and sigma.
    let mut overlap = vec![vec![T::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            let mut ip = Complex::new(T::zero(), T::zero());
            for k in 0..n {
                ip += rho_vecs.get(k, i).conj() * sig_vecs.get(k, j);
            }
            overlap[i][j] = ip.norm_sqr();
        }
    }

    for i in 0..n {
        if rho_vals[i] <= T::TOL_VALID {
            continue;
        }
        let leak: T = (0..n)
            .filter(|&j| sig_vals[j] <= T::TOL_VALID)
            .map(|j| overlap[i][j])
            .fold(T::zero(), |a, b| a + b);
        if leak > T::TOL_SUPPORT {
            return Err(Error::SupportViolation { leakage: leak.to_f64().unwrap_or(f64::NAN) });
        }
    }

    let mut value = T::zero();
    for i in 0..n {
        let li = rho_vals[i].max(T::zero());
        value += xlog2x(li);
        if li == T::zero() {
            continue;
        }
        for j in 0..n {
            if sig_vals[j] > T::TOL_VALID {
                value -= li * overlap[i][j] * sig_vals[j].log2();
            }
        }
    }
    if value < T::zero() && value >= -T::TOL_SUM {
        value = T::zero();
    }
    Ok(value)
}
