//! Library surface of the CLI: the machine-readable output records, shared
//! with integration tests that parse and re-render command output.

pub mod output;
