#![no_main]

use hypertree_spectra::AlphaPolynomial;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(p) = AlphaPolynomial::from_json(text) else {
        return;
    };
    assert_eq!(AlphaPolynomial::from_json(&p.to_json()).unwrap(), p);
});
