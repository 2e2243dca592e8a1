//! Library surface of the `matfn` binary: campaign orchestration and
//! the JSON matrix format, shared with the integration test suite.

pub mod campaign;
pub mod matrix;
