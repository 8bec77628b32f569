//! Fuzzes the problem-spec parser and, when a document survives
//! validation, the full structure build behind it. Nothing here may panic:
//! malformed input must come back as an error value.

#![no_main]

use libfuzzer_sys::fuzz_target;

use jlbk_cli::spec::parse_spec;
use jlbk_core::build_kahler;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(spec) = parse_spec(text) else {
        return;
    };
    // keep the build bounded; validation already capped entries to finite
    // values, so only the total dimension needs a guard
    if spec.algebra.blocks.iter().map(|d| d * d).sum::<usize>() > 64 {
        return;
    }
    if let Ok((_, state)) = spec.build() {
        let _ = build_kahler(&state, spec.tolerances.rank_cutoff);
    }
});
