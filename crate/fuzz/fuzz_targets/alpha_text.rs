#![no_main]

use hypertree_spectra::{AlphaPolynomial, SparsePolynomial};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(p) = text.parse::<AlphaPolynomial>() else {
        return;
    };
    assert_eq!(p.to_string().parse::<AlphaPolynomial>().unwrap(), p);
    if p.degree().unwrap_or(0) <= 64 {
        let x: SparsePolynomial = p.x_form(3).parse().unwrap();
        assert_eq!(x, p.expand_to_x(3));
        assert_eq!(AlphaPolynomial::from_x(&x, 3), Some(p));
    }
});
