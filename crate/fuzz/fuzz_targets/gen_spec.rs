#![no_main]

use hypertree_spectra::generate::GenSpec;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(spec) = text.parse::<GenSpec>() else {
        return;
    };
    assert_eq!(spec.to_string().parse::<GenSpec>().unwrap(), spec);
    if spec.vertex_count() > 1 << 14 {
        return;
    }
    if let Ok(h) = spec.generate() {
        assert_eq!(h.n(), spec.vertex_count());
        assert!(h.is_hypertree() || h.num_edges() == 0);
    }
});
