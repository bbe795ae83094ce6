//! Exact arithmetic over Q: polynomials, rational maps, places, resultants,
//! factorization and power series.

pub mod field;
pub mod poly;
pub mod factor;
pub mod bipoly;
pub mod bifactor;
pub mod linalg;
pub mod ratmap;
pub mod place;
pub mod series;

pub use field::{q, qr, Field, RatFunc, Q};
pub use poly::{Poly, UniPoly};
pub use bipoly::BiPoly;
pub use place::{Place, PointSet};
pub use ratmap::{Pt, RatMap};
