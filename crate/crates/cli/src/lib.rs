//! Scenario files, the task runner and the bundled regression corpus behind
//! the `fgring` command.

pub mod corpus;
pub mod runner;
pub mod scenario;
