//! Parameter sweeps and record files.

mod records;
mod search;

pub use records::{
    check_record, read_records, read_records_from, verify_parsed, verify_records, write_records,
    Format, Malformed, Mismatch, ParsedRecords, RecordCheck, RecordWriter, VerifyReport,
    CSV_COLUMNS,
};
pub use search::{
    run_search, run_search_with, EmptyExpansion, PrimeSet, SearchOutcome, SearchSpec, Target,
};
