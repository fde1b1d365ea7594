pub use cmstat_core as core;
