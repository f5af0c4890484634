//! On-disk record formats shared with the command-line tool.
//!
//! Cone file: `{"rank": 3, "rays": [[1,0,0],[0,1,0],[1,1,3]]}`.
//! Fan file: the same plus `"maximal_cones"`, a list of 0-based index
//! lists into `rays`.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::cone::Cone;
use crate::error::{Result, ToricError};
use crate::fan::Fan;
use crate::lattice::LatticeVector;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ConeData {
    pub rank: usize,
    pub rays: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FanData {
    pub rank: usize,
    pub rays: Vec<Vec<i64>>,
    pub maximal_cones: Vec<Vec<usize>>,
}

impl ConeData {
    pub fn to_cone(&self) -> Result<Cone> {
        let gens: Vec<LatticeVector> = self
            .rays
            .iter()
            .map(|r| LatticeVector::from_i64(r))
            .collect();
        Cone::new(&gens, self.rank)
    }

    pub fn from_cone(c: &Cone) -> Result<ConeData> {
        Ok(ConeData {
            rank: c.rank(),
            rays: c
                .rays()
                .iter()
                .map(vector_to_i64)
                .collect::<Result<Vec<_>>>()?,
        })
    }
}

impl FanData {
    pub fn to_fan(&self) -> Result<Fan> {
        Fan::new(
            self.rank,
            self.rays
                .iter()
                .map(|r| LatticeVector::from_i64(r))
                .collect(),
            self.maximal_cones.clone(),
        )
    }

    pub fn from_fan(f: &Fan) -> Result<FanData> {
        Ok(FanData {
            rank: f.rank(),
            rays: f
                .rays()
                .iter()
                .map(vector_to_i64)
                .collect::<Result<Vec<_>>>()?,
            maximal_cones: f.maximal_cones().to_vec(),
        })
    }
}

pub fn vector_to_i64(v: &LatticeVector) -> Result<Vec<i64>> {
    v.coords()
        .iter()
        .map(|c| {
            i64::try_from(c).map_err(|_| {
                ToricError::Internal("coordinate exceeds the file format range".into())
            })
        })
        .collect()
}

pub fn bigint_to_i64(x: &BigInt) -> Result<i64> {
    i64::try_from(x)
        .map_err(|_| ToricError::Internal("value exceeds the file format range".into()))
}
