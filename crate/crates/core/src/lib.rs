pub mod catalog;
pub mod corpus;
pub mod decision;
pub mod diagram;
pub mod fixtures;
pub mod gpd;
pub mod graph;
pub mod invariants;
pub mod lift;
pub mod link;
pub mod poly;
pub mod reidemeister;
pub mod verify;
