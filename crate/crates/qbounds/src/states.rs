//! Named state families and a small text format for selecting them.

use std::fmt;

use num_complex::Complex;
use rand::{Rng, RngExt, SeedableRng};
use rand::distr::{Distribution, StandardUniform};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::qmat::{ComplexMatrix, DensityMatrix, tensor_product};
use crate::scalar::{Scalar, cre, real};

fn check_unit_range<T: Scalar>(name: &str, value: T) -> Result<()> {
    if value < T::zero() || value > T::one() {
        return Err(Error::ParamOutOfRange {
            name: name.into(),
            value: value.to_f64().unwrap_or(f64::NAN),
            min: 0.0,
            max: 1.0,
        });
    }
    Ok(())
}

/// Isotropic two-qubit mixture eta * phi+ + (1 - eta) * 1/4 for eta in [0, 1],
/// with phi+ = (|00> + |11>)/sqrt2. Both marginals are maximally mixed.
pub fn werner<T: Scalar>(eta: T) -> Result<DensityMatrix<T>> {
    check_unit_range("eta", eta)?;
    let quarter = (T::one() - eta) / real::<T>(4.0);
    let half_eta = eta / (T::one() + T::one());
    let mut m = ComplexMatrix::zeros(4, 4);
    m.set(0, 0, cre(half_eta + quarter));
    m.set(1, 1, cre(quarter));
    m.set(2, 2, cre(quarter));
    m.set(3, 3, cre(half_eta + quarter));
    m.set(0, 3, cre(half_eta));
    m.set(3, 0, cre(half_eta));
    DensityMatrix::new(vec![2, 2], m)
}

/// Rank-two mixture p * psi+ + (1 - p) * |11><11| for p in [0, 1], with
/// psi+ = (|01> + |10>)/sqrt2. Nonzero entries form an X pattern.
pub fn x_state<T: Scalar>(p: T) -> Result<DensityMatrix<T>> {
    check_unit_range("p", p)?;
    let half_p = p / (T::one() + T::one());
    let mut m = ComplexMatrix::zeros(4, 4);
    m.set(1, 1, cre(half_p));
    m.set(2, 2, cre(half_p));
    m.set(1, 2, cre(half_p));
    m.set(2, 1, cre(half_p));
    m.set(3, 3, cre(T::one() - p));
    DensityMatrix::new(vec![2, 2], m)
}

/// Maximally entangled state sum_i |ii> / sqrt(d) on a d x d system.
pub fn maximally_entangled<T: Scalar>(d: usize) -> Result<DensityMatrix<T>> {
    if d < 2 {
        return Err(Error::InvalidDims {
            context: format!("local dimension {d} must be at least 2"),
        });
    }
    let w = T::one() / real::<T>(d as f64);
    let mut m = ComplexMatrix::zeros(d * d, d * d);
    for i in 0..d {
        for j in 0..d {
            m.set(i * d + i, j * d + j, cre(w));
        }
    }
    DensityMatrix::new(vec![d, d], m)
}

/// Two-qubit state with maximally mixed marginals, parametrized by the three
/// correlation coefficients: (1/4)(1 + sum_k c_k s_k (x) s_k) over the Pauli
/// matrices. Coefficient triples outside the physical tetrahedron are
/// rejected by the positivity check.
pub fn bell_diagonal<T: Scalar>(c: [T; 3]) -> Result<DensityMatrix<T>> {
    let q = T::one() / real::<T>(4.0);
    let [c1, c2, c3] = c;
    let mut m = ComplexMatrix::zeros(4, 4);
    m.set(0, 0, cre(q * (T::one() + c3)));
    m.set(3, 3, cre(q * (T::one() + c3)));
    m.set(1, 1, cre(q * (T::one() - c3)));
    m.set(2, 2, cre(q * (T::one() - c3)));
    m.set(0, 3, cre(q * (c1 - c2)));
    m.set(3, 0, cre(q * (c1 - c2)));
    m.set(1, 2, cre(q * (c1 + c2)));
    m.set(2, 1, cre(q * (c1 + c2)));
    DensityMatrix::new(vec![2, 2], m)
}

/// One normalized Ginibre draw G G^dag / tr(G G^dag) from an existing stream.
pub(crate) fn ginibre_from_rng<T: Scalar>(dim: usize, rng: &mut impl Rng) -> ComplexMatrix<T>
where
    StandardNormal: Distribution<T>,
{
    let mut g = ComplexMatrix::zeros(dim, dim);
    for i in 0..dim {
        for j in 0..dim {
            let re: T = rng.sample(StandardNormal);
            let im: T = rng.sample(StandardNormal);
            g.set(i, j, Complex::new(re, im));
        }
    }
    let s = g.matmul(&g.adjoint());
    let t = s.trace().re;
    s.scaled(cre(T::one() / t))
}

/// Full-rank random state from the Ginibre ensemble, deterministic in the
/// seed (ChaCha8 stream).
pub fn random_ginibre<T: Scalar>(dims: &[usize], seed: u64) -> Result<DensityMatrix<T>>
where
    StandardNormal: Distribution<T>,
{
    if dims.is_empty() || dims.iter().any(|&d| d < 2) {
        return Err(Error::InvalidDims {
            context: format!("subsystem dimensions {dims:?} must each be at least 2"),
        });
    }
    let total: usize = dims.iter().product();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = ginibre_from_rng::<T>(total, &mut rng);
    DensityMatrix::new(dims.to_vec(), m)
}

/// Product of two independent Ginibre draws from one seeded stream.
pub fn random_product<T: Scalar>(da: usize, db: usize, seed: u64) -> Result<DensityMatrix<T>>
where
    StandardNormal: Distribution<T>,
{
    if da < 2 || db < 2 {
        return Err(Error::InvalidDims {
            context: format!("subsystem dimensions ({da}, {db}) must both be at least 2"),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let a = DensityMatrix::new(vec![da], ginibre_from_rng::<T>(da, &mut rng))?;
    let b = DensityMatrix::new(vec![db], ginibre_from_rng::<T>(db, &mut rng))?;
    tensor_product(&a, &b)
}

/// Families accepted by [`StateSpec::parse`].
pub const FAMILIES: &[&str] =
    &["werner", "xstate", "bell", "bell_diagonal", "product", "ginibre", "a_incoherent"];

/// Parsed description of a state, e.g. `werner:eta=0.5` or
/// `ginibre:dA=2,dB=2,seed=42`. Random families need a seed, either inline
/// or from the parse-time fallback.
#[derive(Debug, Clone, PartialEq)]
pub enum StateSpec<T> {
    Werner { eta: T },
    XState { p: T },
    Bell { d: usize },
    BellDiagonal { c: [T; 3] },
    Product { da: usize, db: usize, seed: u64 },
    Ginibre { da: usize, db: usize, seed: u64 },
    AIncoherent { da: usize, db: usize, seed: u64 },
}

struct ParamBag<'a> {
    spec: &'a str,
    family: &'a str,
    entries: Vec<(&'a str, &'a str)>,
    used: Vec<bool>,
}

impl<'a> ParamBag<'a> {
    fn parse(spec: &'a str, family: &'a str, rest: &'a str) -> Result<Self> {
        let mut entries = Vec::new();
        if !rest.is_empty() {
            for piece in rest.split(',') {
                let (k, v) = piece.split_once('=').ok_or_else(|| Error::BadSpec {
                    spec: spec.into(),
                    context: format!("expected key=value, got {piece:?}"),
                })?;
                if entries.iter().any(|&(seen, _)| seen == k) {
                    return Err(Error::BadSpec {
                        spec: spec.into(),
                        context: format!("duplicate parameter {k:?}"),
                    });
                }
                entries.push((k, v));
            }
        }
        let used = vec![false; entries.len()];
        Ok(Self { spec, family, entries, used })
    }

    fn take(&mut self, name: &str) -> Option<&'a str> {
        for (i, &(k, v)) in self.entries.iter().enumerate() {
            if k == name {
                self.used[i] = true;
                return Some(v);
            }
        }
        None
    }

    fn real<T: Scalar>(&mut self, name: &str) -> Result<T> {
        let raw = self.take(name).ok_or_else(|| Error::MissingParam {
            family: self.family.into(),
            name: name.into(),
        })?;
        let x: f64 = raw.parse().map_err(|_| Error::BadSpec {
            spec: self.spec.into(),
            context: format!("{name} is not a number: {raw:?}"),
        })?;
        Ok(real::<T>(x))
    }

    fn dim(&mut self, name: &str, default: usize) -> Result<usize> {
        match self.take(name) {
            None => Ok(default),
            Some(raw) => raw.parse().map_err(|_| Error::BadSpec {
                spec: self.spec.into(),
                context: format!("{name} is not a dimension: {raw:?}"),
            }),
        }
    }

    fn seed(&mut self, fallback: Option<u64>) -> Result<u64> {
        match self.take("seed") {
            Some(raw) => raw.parse().map_err(|_| Error::BadSpec {
                spec: self.spec.into(),
                context: format!("seed is not an unsigned integer: {raw:?}"),
            }),
            None => fallback.ok_or_else(|| Error::MissingParam {
                family: self.family.into(),
                name: "seed".into(),
            }),
        }
    }

    fn finish(self) -> Result<()> {
        for (i, &(k, _)) in self.entries.iter().enumerate() {
            if !self.used[i] {
                return Err(Error::UnknownParam { family: self.family.into(), name: k.into() });
            }
        }
        Ok(())
    }
}

impl<T: Scalar> StateSpec<T> {
    /// Parses the `family:key=value,...` form. `fallback_seed` fills in a
    /// missing seed for the random families.
    pub fn parse(text: &str, fallback_seed: Option<u64>) -> Result<Self> {
        let (family, rest) = match text.split_once(':') {
            Some((f, r)) => (f, r),
            None => (text, ""),
        };
        let mut bag = ParamBag::parse(text, family, rest)?;
        let spec = match family {
            "werner" => Self::Werner { eta: bag.real("eta")? },
            "xstate" => Self::XState { p: bag.real("p")? },
            "bell" => Self::Bell { d: bag.dim("d", 2)? },
            "bell_diagonal" => Self::BellDiagonal {
                c: [bag.real("c1")?, bag.real("c2")?, bag.real("c3")?],
            },
            "product" => Self::Product {
                da: bag.dim("dA", 2)?,
                db: bag.dim("dB", 2)?,
                seed: bag.seed(fallback_seed)?,
            },
            "ginibre" => Self::Ginibre {
                da: bag.dim("dA", 2)?,
                db: bag.dim("dB", 2)?,
                seed: bag.seed(fallback_seed)?,
            },
            "a_incoherent" => Self::AIncoherent {
                da: bag.dim("dA", 2)?,
                db: bag.dim("dB", 2)?,
                seed: bag.seed(fallback_seed)?,
            },
            other => {
                return Err(Error::UnknownFamily {
                    name: other.into(),
                    valid: FAMILIES.join(", "),
                });
            }
        };
        bag.finish()?;
        Ok(spec)
    }

    pub fn family(&self) -> &'static str {
        match self {
            Self::Werner { .. } => "werner",
            Self::XState { .. } => "xstate",
            Self::Bell { .. } => "bell",
            Self::BellDiagonal { .. } => "bell_diagonal",
            Self::Product { .. } => "product",
            Self::Ginibre { .. } => "ginibre",
            Self::AIncoherent { .. } => "a_incoherent",
        }
    }

    /// Name of the scalar parameter a sweep can vary, if the family has one.
    pub fn sweep_params(&self) -> &'static [&'static str] {
        match self {
            Self::Werner { .. } => &["eta"],
            Self::XState { .. } => &["p"],
            Self::BellDiagonal { .. } => &["c1", "c2", "c3"],
            _ => &[],
        }
    }

    /// Copy of this spec with one scalar parameter replaced.
    pub fn with_param(&self, name: &str, value: T) -> Result<Self> {
        match (self, name) {
            (Self::Werner { .. }, "eta") => Ok(Self::Werner { eta: value }),
            (Self::XState { .. }, "p") => Ok(Self::XState { p: value }),
            (Self::BellDiagonal { c }, "c1") => {
                Ok(Self::BellDiagonal { c: [value, c[1], c[2]] })
            }
            (Self::BellDiagonal { c }, "c2") => {
                Ok(Self::BellDiagonal { c: [c[0], value, c[2]] })
            }
            (Self::BellDiagonal { c }, "c3") => {
                Ok(Self::BellDiagonal { c: [c[0], c[1], value] })
            }
            _ => Err(Error::UnknownParam { family: self.family().into(), name: name.into() }),
        }
    }
}

impl<T: Scalar> StateSpec<T>
where
    StandardUniform: Distribution<T>,
    StandardNormal: Distribution<T>,
{
    pub fn build(&self) -> Result<DensityMatrix<T>> {
        match self {
            Self::Werner { eta } => werner(*eta),
            Self::XState { p } => x_state(*p),
            Self::Bell { d } => maximally_entangled(*d),
            Self::BellDiagonal { c } => bell_diagonal(*c),
            Self::Product { da, db, seed } => random_product(*da, *db, *seed),
            Self::Ginibre { da, db, seed } => random_ginibre(&[*da, *db], *seed),
            Self::AIncoherent { da, db, seed } => {
                crate::measurement::sample_a_incoherent(*da, *db, *seed)
            }
        }
    }
}

impl<T: Scalar> fmt::Display for StateSpec<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Werner { eta } => write!(f, "werner:eta={eta}"),
            Self::XState { p } => write!(f, "xstate:p={p}"),
            Self::Bell { d } => write!(f, "bell:d={d}"),
            Self::BellDiagonal { c } => {
                write!(f, "bell_diagonal:c1={},c2={},c3={}", c[0], c[1], c[2])
            }
            Self::Product { da, db, seed } => {
                write!(f, "product:dA={da},dB={db},seed={seed}")
            }
            Self::Ginibre { da, db, seed } => {
                write!(f, "ginibre:dA={da},dB={db},seed={seed}")
            }
            Self::AIncoherent { da, db, seed } => {
                write!(f, "a_incoherent:dA={da},dB={db},seed={seed}")
            }
        }
    }
}
