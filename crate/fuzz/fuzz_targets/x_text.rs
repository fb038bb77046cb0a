#![no_main]

use hypertree_spectra::SparsePolynomial;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(p) = text.parse::<SparsePolynomial>() else {
        return;
    };
    assert_eq!(p.to_string().parse::<SparsePolynomial>().unwrap(), p);
    if !p.is_zero() {
        let (q, r) = p.div_rem(&p).expect("a polynomial divides itself");
        assert!(r.is_zero());
        assert_eq!(q, SparsePolynomial::monomial(0));
    }
});
