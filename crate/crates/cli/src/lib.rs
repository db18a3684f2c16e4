//! File formats shared by the `opball` binary and its tests.

pub mod matrix_file;
