//! Independent brute-force computations used to check the closed forms.
//!
//! Each oracle either returns an exact, stabilised answer or fails with
//! [`Error::RaiseBound`](crate::Error::RaiseBound) /
//! [`Error::RaisePrecision`](crate::Error::RaisePrecision).

pub mod class_group;
pub mod embed;
pub mod point_count;
pub mod unit_index;

pub use class_group::{brute_class_group, brute_unit_count, IdealRep};
pub use embed::brute_embed_count;
pub use point_count::point_count_p1;
pub use unit_index::brute_unit_index;
