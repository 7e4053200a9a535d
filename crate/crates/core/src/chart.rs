//! Coordinate charts: a named, ordered coordinate system with a rational
//! base point. The constructions in this crate are local, so a single chart
//! carries everything; no transition maps.

use crate::error::{Error, Result};
use crate::poly::Vars;
use crate::scalar::Scalar;
use std::sync::Arc;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chart {
    pub name: String,
    coords: Vars,
    base_point: Vec<Scalar>,
}

impl Chart {
    pub fn new(name: impl Into<String>, coords: Vars, base_point: Vec<Scalar>) -> Result<Arc<Chart>> {
        let name = name.into();
        for (i, a) in coords.iter().enumerate() {
            if a == "d" {
                return Err(Error::Invalid(
                    "coordinate name `d` collides with the d/d derivative syntax".into(),
                ));
            }
            for b in coords.iter().skip(i + 1) {
                if a == b {
                    return Err(Error::Invalid(format!("duplicate coordinate `{a}`")));
                }
            }
        }
        if base_point.len() != coords.len() {
            return Err(Error::Dimension {
                expected: coords.len(),
                got: base_point.len(),
            });
        }
        Ok(Arc::new(Chart {
            name,
            coords,
            base_point,
        }))
    }

    pub fn origin(name: impl Into<String>, coords: Vars) -> Arc<Chart> {
        let dim = coords.len();
        Chart::new(name, coords, vec![Scalar::zero(); dim]).expect("origin chart is valid")
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &Vars {
        &self.coords
    }

    pub fn base_point(&self) -> &[Scalar] {
        &self.base_point
    }

    /// Same chart moved to a new base point; coordinates are unchanged, so
    /// fields defined on the original chart remain compatible.
    pub fn at_point(&self, point: Vec<Scalar>) -> Result<Arc<Chart>> {
        Chart::new(self.name.clone(), self.coords.clone(), point)
    }

    /// Charts are compatible when they share the same coordinate system.
    pub fn compatible(&self, other: &Chart) -> bool {
        self.name == other.name && self.coords == other.coords
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::vars;

    #[test]
    fn rejects_duplicates_and_bad_lengths() {
        assert!(Chart::new("c", vars(&["x", "x"]), vec![Scalar::zero(); 2]).is_err());
        assert!(Chart::new("c", vars(&["x", "y"]), vec![Scalar::zero()]).is_err());
        assert!(Chart::new("c", vars(&["d"]), vec![Scalar::zero()]).is_err());
    }

    #[test]
    fn rebasing_keeps_compatibility() {
        let c = Chart::origin("c", vars(&["x", "y"]));
        let moved = c.at_point(vec![Scalar::from_int(1), Scalar::from_int(2)]).unwrap();
        assert!(c.compatible(&moved));
        assert_eq!(moved.base_point()[0], Scalar::from_int(1));
    }
}
