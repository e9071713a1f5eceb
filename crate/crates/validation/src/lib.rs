//! Hosts the acceptance suite in `tests/acceptance.rs`.
