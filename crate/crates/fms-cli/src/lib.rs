//! Experiment runner library behind the `fms` binary.
