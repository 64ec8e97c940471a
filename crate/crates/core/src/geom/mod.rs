//! Output-sensitive reporting structures over integer grids.

mod cartesian;
mod dom3;
mod enclosure;
mod range2d;
mod segray;

pub use cartesian::{CartesianTree, Point2};
pub use dom3::{Dominance3D, Point3};
pub use enclosure::{EnclosureIndex, Rect};
pub use range2d::RangeTree2D;
pub use segray::{HSegment, SegRayIndex};
