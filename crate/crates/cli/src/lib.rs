pub mod report;
pub mod spec_file;
