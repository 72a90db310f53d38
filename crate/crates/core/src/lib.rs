pub mod automorphism;
pub mod bitset;
pub mod budget;
pub mod cayley;
pub mod cycles;
pub mod digraph;
pub mod format;
pub mod graph;
pub mod group;
pub mod oracle;
pub mod families;
pub mod expansion;
pub mod dfs;
pub mod cycle_graph;
pub mod induced;
pub mod pipeline;
pub mod numgap;
pub mod report;
pub mod corpus;
pub mod suites;
