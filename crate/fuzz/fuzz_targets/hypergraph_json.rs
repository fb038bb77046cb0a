#![no_main]

use hypertree_spectra::matching::{matching_counts_bruteforce, matching_counts_tree};
use hypertree_spectra::UniformHypergraph;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(h) = UniformHypergraph::from_json_bytes(data) else {
        return;
    };
    let again = UniformHypergraph::from_json(&h.to_json()).expect("canonical JSON reparses");
    assert_eq!(again, h);

    // keep the O(n) passes and the brute force small
    if h.n() > 256 || h.num_edges() > 12 {
        return;
    }
    if h.is_hypertree() {
        let dp = matching_counts_tree(&h).expect("tree DP accepts hypertrees");
        let brute = matching_counts_bruteforce(&h).expect("small enough for brute force");
        assert_eq!(dp, brute);
    }
});
