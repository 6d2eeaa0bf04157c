pub mod finalg;
pub mod report;
pub mod scalars;
pub mod lierinehart;
pub mod enveloping;
pub mod expr;
pub mod presets;
pub mod obstruction;
pub mod problem;
pub mod cli;
