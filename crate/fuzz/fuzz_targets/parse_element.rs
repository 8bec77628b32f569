//! Fuzzes the element-file parser against a few fixed algebra shapes.

#![no_main]

use libfuzzer_sys::fuzz_target;

use jlbk_cli::elements::parse_element;
use jlbk_core::MatrixAlgebra;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    for dims in [&[2usize][..], &[3], &[2, 1]] {
        let algebra = MatrixAlgebra::new(dims).expect("fixed dims are valid");
        match parse_element(text, &algebra) {
            Ok((_, element)) => {
                // parsed elements must be well-formed Hermitian values
                assert!(element.norm().is_finite());
            }
            Err(_) => {}
        }
    }
});
