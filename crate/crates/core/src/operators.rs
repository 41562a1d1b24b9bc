//! Dichotomic single-qubit observables and the three-party Svetlichny operator.

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::state::{expectation, PureState3};

/// Tolerance on `|v|² - 1` for a measurement direction.
pub const UNIT_TOL: f64 = 1e-12;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

/// Dense `N×N` complex matrix.
#[derive(Clone, Copy, PartialEq)]
pub struct Matrix<const N: usize>([[Complex64; N]; N]);

pub type Operator2 = Matrix<2>;
pub type Operator8 = Matrix<8>;
type Operator4 = Matrix<4>;

impl<const N: usize> Matrix<N> {
    pub fn zero() -> Self {
        Self([[ZERO; N]; N])
    }

    pub fn identity() -> Self {
        let mut m = Self::zero();
        for i in 0..N {
            m.0[i][i] = ONE;
        }
        m
    }

    pub fn from_rows(rows: [[Complex64; N]; N]) -> Self {
        Self(rows)
    }

    pub fn from_diagonal(diag: [f64; N]) -> Self {
        let mut m = Self::zero();
        for (i, d) in diag.into_iter().enumerate() {
            m.0[i][i] = Complex64::new(d, 0.0);
        }
        m
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.0[row][col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: Complex64) {
        self.0[row][col] = value;
    }

    pub fn rows(&self) -> &[[Complex64; N]; N] {
        &self.0
    }

    pub fn adjoint(&self) -> Self {
        let mut out = Self::zero();
        for i in 0..N {
            for j in 0..N {
                out.0[j][i] = self.0[i][j].conj();
            }
        }
        out
    }

    /// Largest element-wise `|M - M†|`.
    pub fn hermiticity_residual(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..N {
            for j in i..N {
                worst = worst.max((self.0[i][j] - self.0[j][i].conj()).norm());
            }
        }
        worst
    }

    /// Largest element-wise `|self - other|`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..N {
            for j in 0..N {
                worst = worst.max((self.0[i][j] - other.0[i][j]).norm());
            }
        }
        worst
    }

    pub fn trace(&self) -> Complex64 {
        (0..N).map(|i| self.0[i][i]).sum()
    }

    pub fn mul_vec(&self, v: &[Complex64; N]) -> [Complex64; N] {
        let mut out = [ZERO; N];
        for (o, row) in out.iter_mut().zip(self.0.iter()) {
            *o = row.iter().zip(v.iter()).map(|(m, x)| m * x).sum();
        }
        out
    }

    pub fn matmul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for i in 0..N {
            for k in 0..N {
                let a = self.0[i][k];
                if a == ZERO {
                    continue;
                }
                for j in 0..N {
                    out.0[i][j] += a * other.0[k][j];
                }
            }
        }
        out
    }

    pub fn scale(&self, factor: f64) -> Self {
        let mut out = *self;
        for row in out.0.iter_mut() {
            for x in row.iter_mut() {
                *x *= factor;
            }
        }
        out
    }
}

impl Operator2 {
    pub fn pauli_x() -> Self {
        Self([[ZERO, ONE], [ONE, ZERO]])
    }

    pub fn pauli_y() -> Self {
        Self([[ZERO, -I], [I, ZERO]])
    }

    pub fn pauli_z() -> Self {
        Self([[ONE, ZERO], [ZERO, -ONE]])
    }
}

impl<const N: usize> Index<(usize, usize)> for Matrix<N> {
    type Output = Complex64;

    fn index(&self, (r, c): (usize, usize)) -> &Complex64 {
        &self.0[r][c]
    }
}

impl<const N: usize> IndexMut<(usize, usize)> for Matrix<N> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Complex64 {
        &mut self.0[r][c]
    }
}

impl<const N: usize> Add for Matrix<N> {
    type Output = Self;

    fn add(mut self, rhs: Self) -> Self {
        for i in 0..N {
            for j in 0..N {
                self.0[i][j] += rhs.0[i][j];
            }
        }
        self
    }
}

impl<const N: usize> Sub for Matrix<N> {
    type Output = Self;

    fn sub(mut self, rhs: Self) -> Self {
        for i in 0..N {
            for j in 0..N {
                self.0[i][j] -= rhs.0[i][j];
            }
        }
        self
    }
}

impl<const N: usize> Neg for Matrix<N> {
    type Output = Self;

    fn neg(self) -> Self {
        self.scale(-1.0)
    }
}

impl<const N: usize> Mul<f64> for Matrix<N> {
    type Output = Self;

    fn mul(self, rhs: f64) -> Self {
        self.scale(rhs)
    }
}

impl<const N: usize> fmt::Debug for Matrix<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.0.iter()).finish()
    }
}

/// Kronecker product `x ⊗ y`; `P` must equal `N * M`.
fn kron<const N: usize, const M: usize, const P: usize>(x: &Matrix<N>, y: &Matrix<M>) -> Matrix<P> {
    assert_eq!(P, N * M, "kron output dimension mismatch");
    let mut out = Matrix::<P>::zero();
    for (i1, row) in x.0.iter().enumerate() {
        for (j1, &xv) in row.iter().enumerate() {
            if xv == ZERO {
                continue;
            }
            for i2 in 0..M {
                for j2 in 0..M {
                    out.0[i1 * M + i2][j1 * M + j2] = xv * y.0[i2][j2];
                }
            }
        }
    }
    out
}

/// `A ⊗ B ⊗ C` with qubit A most significant.
pub fn tensor3(a: &Operator2, b: &Operator2, c: &Operator2) -> Operator8 {
    let bc: Operator4 = kron(b, c);
    kron(a, &bc)
}

/// Real 3-vector defining the observable `v·σ`.
///
/// [`BlochVector::new`] enforces unit norm. [`BlochVector::unnormalized`]
/// builds the multilinear extension used when probing the objective with
/// arbitrary real vectors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochVector {
    x: f64,
    y: f64,
    z: f64,
}

impl BlochVector {
    pub const X: Self = Self { x: 1.0, y: 0.0, z: 0.0 };
    pub const Y: Self = Self { x: 0.0, y: 1.0, z: 0.0 };
    pub const Z: Self = Self { x: 0.0, y: 0.0, z: 1.0 };

    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        let v = Self { x, y, z };
        if !(x.is_finite() && y.is_finite() && z.is_finite()) {
            return Err(Error::NonFinite);
        }
        if !v.is_unit() {
            return Err(Error::NotUnit { x, y, z });
        }
        Ok(v)
    }

    pub fn unnormalized(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    /// Unit vector at polar angle `theta` from +z and azimuth `phi`.
    pub fn from_angles(theta: f64, phi: f64) -> Self {
        let (st, ct) = theta.sin_cos();
        let (sp, cp) = phi.sin_cos();
        Self {
            x: st * cp,
            y: st * sp,
            z: ct,
        }
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn y(&self) -> f64 {
        self.y
    }

    pub fn z(&self) -> f64 {
        self.z
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn from_array(v: [f64; 3]) -> Self {
        Self {
            x: v[0],
            y: v[1],
            z: v[2],
        }
    }

    pub fn norm(&self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn dot(&self, other: &Self) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn is_unit(&self) -> bool {
        (self.dot(self) - 1.0).abs() <= UNIT_TOL
    }
}

impl Add for BlochVector {
    type Output = Self;

    fn add(self, o: Self) -> Self {
        Self::unnormalized(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for BlochVector {
    type Output = Self;

    fn sub(self, o: Self) -> Self {
        Self::unnormalized(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Neg for BlochVector {
    type Output = Self;

    fn neg(self) -> Self {
        Self::unnormalized(-self.x, -self.y, -self.z)
    }
}

impl Mul<f64> for BlochVector {
    type Output = Self;

    fn mul(self, k: f64) -> Self {
        Self::unnormalized(self.x * k, self.y * k, self.z * k)
    }
}

/// One of the six measurement directions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Slot {
    A,
    APrime,
    B,
    BPrime,
    C,
    CPrime,
}

impl Slot {
    pub const ALL: [Slot; 6] = [Slot::A, Slot::APrime, Slot::B, Slot::BPrime, Slot::C, Slot::CPrime];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn label(self) -> &'static str {
        match self {
            Slot::A => "a",
            Slot::APrime => "a'",
            Slot::B => "b",
            Slot::BPrime => "b'",
            Slot::C => "c",
            Slot::CPrime => "c'",
        }
    }
}

/// The six directions `(a, a', b, b', c, c')`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasurementSettings {
    vectors: [BlochVector; 6],
}

impl MeasurementSettings {
    /// Validates every direction as unit norm. Order is `a, a', b, b', c, c'`.
    pub fn new(vectors: [BlochVector; 6]) -> Result<Self> {
        for v in &vectors {
            if !v.is_unit() {
                return Err(Error::NotUnit { x: v.x, y: v.y, z: v.z });
            }
        }
        Ok(Self { vectors })
    }

    /// Settings built from arbitrary real vectors (multilinear extension).
    pub fn algebraic(vectors: [BlochVector; 6]) -> Self {
        Self { vectors }
    }

    pub fn get(&self, slot: Slot) -> BlochVector {
        self.vectors[slot.index()]
    }

    pub fn with(&self, slot: Slot, v: BlochVector) -> Self {
        let mut out = *self;
        out.vectors[slot.index()] = v;
        out
    }

    pub fn vectors(&self) -> &[BlochVector; 6] {
        &self.vectors
    }

    pub fn is_unit(&self) -> bool {
        self.vectors.iter().all(BlochVector::is_unit)
    }

    pub fn a(&self) -> BlochVector {
        self.vectors[0]
    }
    pub fn a_p(&self) -> BlochVector {
        self.vectors[1]
    }
    pub fn b(&self) -> BlochVector {
        self.vectors[2]
    }
    pub fn b_p(&self) -> BlochVector {
        self.vectors[3]
    }
    pub fn c(&self) -> BlochVector {
        self.vectors[4]
    }
    pub fn c_p(&self) -> BlochVector {
        self.vectors[5]
    }
}

/// `v·σ`, rejecting non-unit `v`.
pub fn pauli_dot(v: BlochVector) -> Result<Operator2> {
    if !v.is_unit() {
        return Err(Error::NotUnit { x: v.x, y: v.y, z: v.z });
    }
    Ok(pauli_dot_algebraic(v))
}

/// `v·σ` for any real `v`.
pub fn pauli_dot_algebraic(v: BlochVector) -> Operator2 {
    Matrix([
        [Complex64::new(v.z, 0.0), Complex64::new(v.x, -v.y)],
        [Complex64::new(v.x, v.y), Complex64::new(-v.z, 0.0)],
    ])
}

fn check_settings(m: &MeasurementSettings) -> Result<()> {
    for v in m.vectors.iter() {
        if !v.is_unit() {
            return Err(Error::NotUnit { x: v.x, y: v.y, z: v.z });
        }
    }
    Ok(())
}

/// `S = A⊗(B⊗K + B'⊗K') + A'⊗(B⊗K' − B'⊗K)` with `K = C + C'`, `K' = C − C'`.
pub fn svetlichny_operator(m: &MeasurementSettings) -> Result<Operator8> {
    check_settings(m)?;
    Ok(svetlichny_operator_algebraic(m))
}

/// Same assembly as [`svetlichny_operator`] without the unit-norm check.
pub fn svetlichny_operator_algebraic(m: &MeasurementSettings) -> Operator8 {
    let [a, ap, b, bp, c, cp] = m.vectors.map(pauli_dot_algebraic);
    let k = c + cp;
    let kp = c - cp;
    let first: Operator4 = kron::<2, 2, 4>(&b, &k) + kron(&bp, &kp);
    let second: Operator4 = kron::<2, 2, 4>(&b, &kp) - kron(&bp, &k);
    kron::<2, 4, 8>(&a, &first) + kron(&ap, &second)
}

/// Sum of the eight signed correlator terms `±X⊗Y⊗Z`, built independently
/// of the `K, K'` grouping.
pub fn svetlichny_operator_expanded(m: &MeasurementSettings) -> Operator8 {
    let [a, ap, b, bp, c, cp] = m.vectors.map(pauli_dot_algebraic);
    let terms: [(f64, &Operator2, &Operator2, &Operator2); 8] = [
        (1.0, &a, &b, &c),
        (1.0, &a, &b, &cp),
        (1.0, &a, &bp, &c),
        (-1.0, &a, &bp, &cp),
        (1.0, &ap, &b, &c),
        (-1.0, &ap, &b, &cp),
        (-1.0, &ap, &bp, &c),
        (-1.0, &ap, &bp, &cp),
    ];
    terms.iter().fold(Operator8::zero(), |acc, (sign, x, y, z)| {
        acc + tensor3(x, y, z).scale(*sign)
    })
}

/// `⟨s|S(m)|s⟩`.
pub fn svetlichny_expectation(s: &PureState3, m: &MeasurementSettings) -> Result<f64> {
    expectation(s, &svetlichny_operator(m)?)
}

/// Three-body correlation tensor `T_ijk = ⟨ψ|σ_i⊗σ_j⊗σ_k|ψ⟩`.
///
/// `⟨A B C⟩ = Σ a_i b_j c_k T_ijk`, so the Svetlichny value of any settings
/// is a cheap trilinear contraction once `T` is known.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorrelationTensor([[[f64; 3]; 3]; 3]);

impl CorrelationTensor {
    pub fn of(s: &PureState3) -> Self {
        let amps = s.amplitudes();
        let mut t = [[[0.0; 3]; 3]; 3];
        for (i, plane) in t.iter_mut().enumerate() {
            for (j, row) in plane.iter_mut().enumerate() {
                for (k, out) in row.iter_mut().enumerate() {
                    *out = pauli_string_expectation(amps, [i, j, k]);
                }
            }
        }
        Self(t)
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> f64 {
        self.0[i][j][k]
    }

    /// `Σ x_i y_j z_k T_ijk` for arbitrary real vectors.
    pub fn contract(&self, x: &BlochVector, y: &BlochVector, z: &BlochVector) -> f64 {
        let (x, y, z) = (x.to_array(), y.to_array(), z.to_array());
        let mut total = 0.0;
        for i in 0..3 {
            let mut acc_i = 0.0;
            for j in 0..3 {
                let r = &self.0[i][j];
                acc_i += y[j] * (r[0] * z[0] + r[1] * z[1] + r[2] * z[2]);
            }
            total += x[i] * acc_i;
        }
        total
    }

    /// `⟨S⟩` for the given (possibly unnormalized) settings.
    pub fn svetlichny_value(&self, m: &MeasurementSettings) -> f64 {
        let [a, ap, b, bp, c, cp] = m.vectors;
        let k = c + cp;
        let kp = c - cp;
        self.contract(&a, &b, &k) + self.contract(&a, &bp, &kp) + self.contract(&ap, &b, &kp)
            - self.contract(&ap, &bp, &k)
    }
}

/// `⟨ψ|σ_p0 ⊗ σ_p1 ⊗ σ_p2|ψ⟩` with `p = 0, 1, 2` for `x, y, z`.
fn pauli_string_expectation(amps: &[Complex64; 8], paulis: [usize; 3]) -> f64 {
    let mut total = ZERO;
    for (basis, amp) in amps.iter().enumerate() {
        let mut target = basis;
        let mut phase = ONE;
        for (q, &p) in paulis.iter().enumerate() {
            let shift = 2 - q;
            let bit = (basis >> shift) & 1;
            match p {
                0 => target ^= 1 << shift,
                1 => {
                    target ^= 1 << shift;
                    phase *= if bit == 0 { I } else { -I };
                }
                _ => {
                    if bit == 1 {
                        phase = -phase;
                    }
                }
            }
        }
        total += amps[target].conj() * phase * amp;
    }
    total.re
}
