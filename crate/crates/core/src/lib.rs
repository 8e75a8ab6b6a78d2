//! Exact algebra for Ekedahl–Oort strata: finite coefficient rings, truncated
//! power series, reductive groups and their Weyl groups, zip data, loop group
//! orbits and windows.

pub mod coeffring;
pub mod error;
pub mod grp;
pub mod matrix;
pub mod series;
pub mod weyl;
pub mod zip;
pub mod loopgrp;
pub mod bkwin;
pub mod verify;

pub use coeffring::{FfElem, FieldSpec, FrobLiftSpec, Gf, PerfectRing, RelBase, RelElem, Ring, Zpm};
pub use error::{AlgError, Result};
pub use grp::{Cochar, GroupSpec, Part, ZipPair};
pub use matrix::Matrix;
pub use series::{MatSeries, SeriesRing, TruncSeries};
pub use weyl::{JSubset, StrataPoset, WeylElem, WeylGroup, WeylType};
pub use zip::{classify_orbits, geometric_equal, zeta_class, OrbitTable, ZetaLabel};
pub use loopgrp::{CosetCmp, CosetElem, KPlusElem};
pub use bkwin::{FrameRing, WindowData};
