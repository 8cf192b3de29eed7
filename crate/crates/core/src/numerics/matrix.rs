use serde::{Deserialize, Serialize};

use super::scalar::{Mode, Scalar};
use crate::error::{Error, Result};
use crate::support::{SupportSet, MAX_INDEX};

/// Thresholds used by float-mode decisions. Ignored in exact mode.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TolerancePolicy {
    /// Relative threshold on singular values (against the largest one).
    pub rank_eps: f64,
    /// Scalar-is-zero threshold, scaled by `1 + max|X_kq|` where applicable.
    pub zero_eps: f64,
    /// Strict-positivity threshold.
    pub positivity_eps: f64,
}

impl Default for TolerancePolicy {
    fn default() -> Self {
        TolerancePolicy {
            rank_eps: 1e-9,
            zero_eps: 1e-10,
            positivity_eps: 1e-10,
        }
    }
}

impl TolerancePolicy {
    pub fn new(rank_eps: f64, zero_eps: f64, positivity_eps: f64) -> Result<Self> {
        let policy = TolerancePolicy {
            rank_eps,
            zero_eps,
            positivity_eps,
        };
        policy.validate()?;
        Ok(policy)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("rank_eps", self.rank_eps),
            ("zero_eps", self.zero_eps),
            ("positivity_eps", self.positivity_eps),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidArgument(format!(
                    "{name} must be finite and strictly positive, got {v}"
                )));
            }
        }
        Ok(())
    }
}

/// A symmetric `p × p` matrix with entries in a single arithmetic mode.
#[derive(Clone, Debug, PartialEq)]
pub struct SymMatrix {
    dim: usize,
    entries: Vec<Scalar>,
    mode: Mode,
    policy: TolerancePolicy,
}

impl SymMatrix {
    /// Largest dimension accepted (supports are 32-bit masks).
    pub const MAX_DIM: usize = MAX_INDEX;

    /// Builds a matrix from rows. The matrix is exact when every entry is
    /// exact, otherwise all entries are converted to floats.
    ///
    /// Exact entries must be symmetric exactly. Float entries may differ from
    /// their transpose by at most `zero_eps · (1 + max|X_kq|)` and are then
    /// replaced by the average of the pair.
    pub fn from_rows(rows: Vec<Vec<Scalar>>, policy: TolerancePolicy) -> Result<Self> {
        policy.validate()?;
        let dim = rows.len();
        if dim == 0 {
            return Err(Error::InvalidArgument(
                "matrix must have at least one row".into(),
            ));
        }
        if dim > Self::MAX_DIM {
            return Err(Error::ResourceLimit {
                what: "matrix dimension",
                required: dim as u128,
                limit: Self::MAX_DIM as u128,
            });
        }
        for (k, row) in rows.iter().enumerate() {
            if row.len() != dim {
                return Err(Error::Parse {
                    row: k + 1,
                    column: row.len().min(dim) + 1,
                    message: format!("expected {dim} entries, found {}", row.len()),
                });
            }
        }
        let mode = if rows.iter().flatten().all(|v| v.mode() == Mode::Exact) {
            Mode::Exact
        } else {
            Mode::Float
        };
        let mut entries: Vec<Scalar> = rows
            .into_iter()
            .flatten()
            .map(|v| v.to_mode(mode))
            .collect();
        for (n, v) in entries.iter().enumerate() {
            if !v.to_f64().is_finite() && mode == Mode::Float {
                return Err(Error::Parse {
                    row: n / dim + 1,
                    column: n % dim + 1,
                    message: "non-finite entry".into(),
                });
            }
        }

        let max_abs = entries.iter().map(|v| v.to_f64().abs()).fold(0.0, f64::max);
        let tol = policy.zero_eps * (1.0 + max_abs);
        for k in 0..dim {
            for q in k + 1..dim {
                let a = &entries[k * dim + q];
                let b = &entries[q * dim + k];
                let symmetric = match mode {
                    Mode::Exact => a == b,
                    Mode::Float => (a.to_f64() - b.to_f64()).abs() <= tol,
                };
                if !symmetric {
                    return Err(Error::Parse {
                        row: q + 1,
                        column: k + 1,
                        message: format!(
                            "matrix is not symmetric: entry ({},{}) = {a} but ({},{}) = {b}",
                            k + 1,
                            q + 1,
                            q + 1,
                            k + 1
                        ),
                    });
                }
                if mode == Mode::Float {
                    let avg = Scalar::Float(0.5 * (a.to_f64() + b.to_f64()));
                    entries[k * dim + q] = avg.clone();
                    entries[q * dim + k] = avg;
                }
            }
        }
        Ok(SymMatrix {
            dim,
            entries,
            mode,
            policy,
        })
    }

    /// Exact matrix from integer rows.
    pub fn from_integers(rows: &[Vec<i64>]) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|&v| Scalar::from_i64(Mode::Exact, v))
                    .collect()
            })
            .collect();
        Self::from_rows(rows, TolerancePolicy::default())
    }

    /// Float matrix from `f64` rows.
    pub fn from_f64_rows(rows: &[Vec<f64>], policy: TolerancePolicy) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&v| Scalar::Float(v)).collect())
            .collect();
        Self::from_rows(rows, policy)
    }

    pub fn identity(dim: usize, mode: Mode) -> Self {
        let mut m = Self::zeros(dim, mode);
        for k in 0..dim {
            m.entries[k * dim + k] = Scalar::one(mode);
        }
        m
    }

    pub fn zeros(dim: usize, mode: Mode) -> Self {
        assert!(
            (1..=Self::MAX_DIM).contains(&dim),
            "dimension {dim} out of range"
        );
        SymMatrix {
            dim,
            entries: vec![Scalar::zero(mode); dim * dim],
            mode,
            policy: TolerancePolicy::default(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn policy(&self) -> &TolerancePolicy {
        &self.policy
    }

    #[must_use]
    pub fn with_policy(mut self, policy: TolerancePolicy) -> Self {
        self.policy = policy;
        self
    }

    pub fn get(&self, k: usize, q: usize) -> &Scalar {
        &self.entries[k * self.dim + q]
    }

    pub fn row(&self, k: usize) -> &[Scalar] {
        &self.entries[k * self.dim..(k + 1) * self.dim]
    }

    pub fn rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.dim).map(|k| self.row(k).to_vec()).collect()
    }

    pub fn to_f64_rows(&self) -> Vec<Vec<f64>> {
        (0..self.dim)
            .map(|k| self.row(k).iter().map(Scalar::to_f64).collect())
            .collect()
    }

    /// The same matrix in another arithmetic mode.
    pub fn to_mode(&self, mode: Mode) -> SymMatrix {
        SymMatrix {
            dim: self.dim,
            entries: self.entries.iter().map(|v| v.to_mode(mode)).collect(),
            mode,
            policy: self.policy,
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.entries
            .iter()
            .map(|v| v.to_f64().abs())
            .fold(0.0, f64::max)
    }

    /// Absolute float-mode zero threshold `zero_eps · (1 + max|X_kq|)`.
    pub fn zero_threshold(&self) -> f64 {
        self.policy.zero_eps * (1.0 + self.max_abs())
    }

    /// Zero test for values derived from this matrix (quadratic forms,
    /// matrix-vector products, diagonal entries). Exact in exact mode, strict
    /// `|v| < zero_threshold()` in float mode.
    pub fn is_negligible(&self, v: &Scalar) -> bool {
        match v {
            Scalar::Exact(_) => v.is_exact_zero(),
            Scalar::Float(f) => f.abs() < self.zero_threshold(),
        }
    }

    /// Strict negativity with the same threshold as [`Self::is_negligible`].
    pub fn is_clearly_negative(&self, v: &Scalar) -> bool {
        v.is_negative_within(self.zero_threshold())
    }

    /// Rows and columns indexed by `subset`, in ascending index order.
    pub fn principal_submatrix(&self, subset: SupportSet) -> Result<SymMatrix> {
        if subset.is_empty() {
            return Err(Error::InvalidArgument(
                "empty index set for principal submatrix".into(),
            ));
        }
        if subset.span() > self.dim {
            return Err(Error::InvalidArgument(format!(
                "index set {subset} exceeds dimension {}",
                self.dim
            )));
        }
        let idx: Vec<usize> = subset.iter().collect();
        let entries = idx
            .iter()
            .flat_map(|&k| idx.iter().map(move |&q| (k, q)))
            .map(|(k, q)| self.get(k, q).clone())
            .collect();
        Ok(SymMatrix {
            dim: idx.len(),
            entries,
            mode: self.mode,
            policy: self.policy,
        })
    }

    /// `X v`.
    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.dim, "vector length mismatch");
        (0..self.dim)
            .map(|k| {
                self.row(k)
                    .iter()
                    .zip(v)
                    .filter(|(_, b)| !b.is_exact_zero())
                    .fold(Scalar::zero(self.mode), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    /// `u' X v`.
    pub fn bilinear(&self, u: &[Scalar], v: &[Scalar]) -> Scalar {
        assert_eq!(u.len(), self.dim, "vector length mismatch");
        self.mul_vec(v)
            .iter()
            .zip(u)
            .filter(|(_, a)| !a.is_exact_zero())
            .fold(Scalar::zero(self.mode), |acc, (xv, a)| acc + a * xv)
    }

    /// `t' X t`.
    pub fn quadratic_form(&self, t: &[Scalar]) -> Scalar {
        self.bilinear(t, t)
    }
}
