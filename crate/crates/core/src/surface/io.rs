//! JSON surface files:
//! `{"faces": [{"sides": [l01, l12, l20]}, ...], "pairings": [[[f, s], [f2, s2]], ...]}`.
//!
//! A pairing entry may carry a third element `true` to mark a twisted
//! (start-to-start) gluing. The writer emits pairings sorted
//! lexicographically; the reader accepts any order.

use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{MetricSurface, Pairing, Slot, SurfaceError};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FaceRecord {
    pub sides: [f64; 3],
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PairingRecord {
    Plain([usize; 2], [usize; 2]),
    Flagged([usize; 2], [usize; 2], bool),
}

impl PairingRecord {
    fn to_pairing(&self) -> Pairing {
        let (a, b, twisted) = match *self {
            PairingRecord::Plain(a, b) => (a, b, false),
            PairingRecord::Flagged(a, b, t) => (a, b, t),
        };
        Pairing {
            a: Slot {
                face: a[0],
                side: a[1],
            },
            b: Slot {
                face: b[0],
                side: b[1],
            },
            twisted,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SurfaceFile {
    pub faces: Vec<FaceRecord>,
    pub pairings: Vec<PairingRecord>,
}

impl SurfaceFile {
    pub fn from_surface<T: Scalar>(surface: &MetricSurface<T>) -> Self {
        let faces = surface
            .faces()
            .iter()
            .map(|s| FaceRecord {
                sides: [s[0].as_f64(), s[1].as_f64(), s[2].as_f64()],
            })
            .collect();
        let mut pairs: Vec<Pairing> = surface
            .pairings()
            .into_iter()
            .map(Pairing::canonical)
            .collect();
        pairs.sort();
        let pairings = pairs
            .into_iter()
            .map(|p| {
                let a = [p.a.face, p.a.side];
                let b = [p.b.face, p.b.side];
                if p.twisted {
                    PairingRecord::Flagged(a, b, true)
                } else {
                    PairingRecord::Plain(a, b)
                }
            })
            .collect();
        SurfaceFile { faces, pairings }
    }

    pub fn to_surface<T: Scalar>(&self) -> Result<MetricSurface<T>, SurfaceError> {
        let faces = self
            .faces
            .iter()
            .map(|f| [T::cst(f.sides[0]), T::cst(f.sides[1]), T::cst(f.sides[2])])
            .collect();
        let pairings = self
            .pairings
            .iter()
            .map(PairingRecord::to_pairing)
            .collect();
        super::build_surface(faces, pairings)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("surface file serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, SurfaceError> {
        serde_json::from_str(text).map_err(|e| SurfaceError::Format(e.to_string()))
    }
}

pub fn read_surface<T: Scalar>(path: &Path) -> Result<MetricSurface<T>, SurfaceError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| SurfaceError::Format(format!("{}: {e}", path.display())))?;
    SurfaceFile::from_json(&text)?.to_surface()
}

pub fn write_surface<T: Scalar>(
    surface: &MetricSurface<T>,
    path: &Path,
) -> Result<(), SurfaceError> {
    let mut text = SurfaceFile::from_surface(surface).to_json();
    text.push('\n');
    std::fs::write(path, text).map_err(|e| SurfaceError::Format(format!("{}: {e}", path.display())))
}
