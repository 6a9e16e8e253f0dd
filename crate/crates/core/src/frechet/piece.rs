use crate::error::{check_dims, Error, Result};
use crate::point::{Point, Samples};
use crate::scalar::Scalar;

/// The function `((x_i − x_k) − c)²` with `c = p_{j,i} − p_{j,k}`.
///
/// Every squared distance `d(x, p_j)²` is the maximum of the pieces of
/// sample `j` over all ordered pairs `i ≠ k`. Indices are zero-based.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadraticPiece<S> {
    pub sample: usize,
    pub i: usize,
    pub k: usize,
    pub c: S,
}

impl<S: Scalar> QuadraticPiece<S> {
    pub fn from_sample(samples: &Samples<S>, sample: usize, i: usize, k: usize) -> Result<Self> {
        let p = samples.get(sample)?;
        let n = p.dim();
        for idx in [i, k] {
            if idx >= n {
                return Err(Error::IndexOutOfRange { index: idx, len: n });
            }
        }
        if i == k {
            return Err(Error::MalformedCertificate(format!("piece ({i},{k}) needs i != k")));
        }
        Ok(Self {
            sample,
            i,
            k,
            c: p[i].clone() - p[k].clone(),
        })
    }

    /// `(x_i − x_k) − c`, the affine form being squared.
    pub fn residual(&self, x: &[S]) -> S {
        x[self.i].clone() - x[self.k].clone() - self.c.clone()
    }

    pub fn eval(&self, x: &[S]) -> S {
        let r = self.residual(x);
        r.clone() * r
    }

    /// The same function written with `i < k`.
    pub fn canonical(&self) -> Self {
        if self.i < self.k {
            self.clone()
        } else {
            Self {
                sample: self.sample,
                i: self.k,
                k: self.i,
                c: -self.c.clone(),
            }
        }
    }

    /// Coefficient vector and constant of the affine form in `R^n`.
    pub fn affine(&self, n: usize) -> (Vec<S>, S) {
        let mut a = vec![S::zero(); n];
        a[self.i] = S::one();
        a[self.k] = -S::one();
        (a, -self.c.clone())
    }
}

/// Sum of squared tropical distances `Σ_j d(x, p_j)²`.
pub fn objective<S: Scalar>(samples: &Samples<S>, x: &Point<S>) -> Result<S> {
    check_dims(samples.dim(), x.dim())?;
    Ok(objective_raw(samples, x.coords()))
}

pub(crate) fn objective_raw<S: Scalar>(samples: &Samples<S>, x: &[S]) -> S {
    samples.iter().fold(S::zero(), |acc, p| {
        let d = crate::point::dist_raw(x, p.coords());
        acc + d.clone() * d
    })
}
