//! JSON forms of the exact types.
//!
//! Rationals are written as strings `"p/q"` (or `"p"` for integers) so
//! that values survive a round trip exactly. Indices are zero-based.
//! Matrix entries equal to −∞ are `null`.

use serde::{Deserialize, Serialize};

use crate::certify::{Certificate, SampleWeights, WeightedPiece};
use crate::error::{Error, Result};
use crate::frechet::{FrechetResult, QuadraticPiece};
use crate::point::Point;
use crate::polytrope::TropMatrix;
use crate::scalar::{format_rational, parse_rational, Rational};
use crate::tropical::Trop;

pub fn point_to_json(p: &Point<Rational>) -> Vec<String> {
    p.coords().iter().map(format_rational).collect()
}

pub fn point_from_json(raw: &[String]) -> Result<Point<Rational>> {
    Point::new(raw.iter().map(|s| parse_rational(s)).collect::<std::result::Result<_, _>>()?)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub n: usize,
    pub entries: Vec<Vec<Option<String>>>,
}

impl From<&TropMatrix<Rational>> for MatrixJson {
    fn from(m: &TropMatrix<Rational>) -> Self {
        Self {
            n: m.dim(),
            entries: m
                .rows()
                .map(|row| row.iter().map(|e| e.finite().map(format_rational)).collect())
                .collect(),
        }
    }
}

impl MatrixJson {
    pub fn to_matrix(&self) -> Result<TropMatrix<Rational>> {
        if self.entries.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: self.entries.len(),
            });
        }
        let rows = self
            .entries
            .iter()
            .map(|row| {
                row.iter()
                    .map(|e| match e {
                        Some(s) => Ok(Trop::Finite(parse_rational(s)?)),
                        None => Ok(Trop::NegInf),
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        TropMatrix::new(rows)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PieceJson {
    pub i: usize,
    pub k: usize,
    pub c: String,
    pub w: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleWeightsJson {
    pub sample: usize,
    pub pieces: Vec<PieceJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub c_star: String,
    pub weights: Vec<SampleWeightsJson>,
}

impl From<&Certificate<Rational>> for CertificateJson {
    fn from(c: &Certificate<Rational>) -> Self {
        Self {
            c_star: format_rational(&c.c_star),
            weights: c
                .weights
                .iter()
                .map(|sw| SampleWeightsJson {
                    sample: sw.sample,
                    pieces: sw
                        .pieces
                        .iter()
                        .map(|wp| PieceJson {
                            i: wp.piece.i,
                            k: wp.piece.k,
                            c: format_rational(&wp.piece.c),
                            w: format_rational(&wp.weight),
                        })
                        .collect(),
                })
                .collect(),
        }
    }
}

impl CertificateJson {
    pub fn to_certificate(&self) -> Result<Certificate<Rational>> {
        let weights = self
            .weights
            .iter()
            .map(|sw| {
                let pieces = sw
                    .pieces
                    .iter()
                    .map(|pj| {
                        Ok(WeightedPiece {
                            piece: QuadraticPiece {
                                sample: sw.sample,
                                i: pj.i,
                                k: pj.k,
                                c: parse_rational(&pj.c)?,
                            },
                            weight: parse_rational(&pj.w)?,
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(SampleWeights {
                    sample: sw.sample,
                    pieces,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Certificate {
            c_star: parse_rational(&self.c_star)?,
            weights,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrechetResultJson {
    pub mean: Vec<String>,
    pub distances: Vec<String>,
    pub min_sum: String,
    pub fm_polytrope: MatrixJson,
    pub exact: bool,
    pub tropical_vertices: Vec<Vec<String>>,
    pub pseudovertices: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<CertificateJson>,
}

impl FrechetResultJson {
    /// Also computes the vertex lists of the polytrope of means.
    pub fn new(r: &FrechetResult<Rational>) -> Result<Self> {
        Ok(Self {
            mean: point_to_json(&r.mean),
            distances: r.distances.iter().map(format_rational).collect(),
            min_sum: format_rational(&r.min_sum),
            fm_polytrope: MatrixJson::from(&r.fm_polytrope),
            exact: r.exact,
            tropical_vertices: r.tropical_vertices()?.iter().map(point_to_json).collect(),
            pseudovertices: r.pseudovertices()?.iter().map(point_to_json).collect(),
            certificate: r.certificate.as_ref().map(CertificateJson::from),
        })
    }

    pub fn to_result(&self) -> Result<FrechetResult<Rational>> {
        Ok(FrechetResult {
            mean: point_from_json(&self.mean)?,
            distances: self
                .distances
                .iter()
                .map(|s| parse_rational(s))
                .collect::<std::result::Result<_, _>>()?,
            min_sum: parse_rational(&self.min_sum)?,
            fm_polytrope: self.fm_polytrope.to_matrix()?,
            exact: self.exact,
            certificate: self.certificate.as_ref().map(|c| c.to_certificate()).transpose()?,
        })
    }
}
