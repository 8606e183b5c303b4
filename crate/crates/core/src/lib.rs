//! Wrapped butterfly networks WB(r), the nested-ring drawing RB(r) with exact
//! rational coordinates, and an exact crossing census.

pub mod bounds;
pub mod cli;
pub mod crossing_counter;
pub mod drawing;
pub mod geometry;
pub mod ring_layout;
pub mod topology;
