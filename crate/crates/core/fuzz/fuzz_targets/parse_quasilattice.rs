#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else {
        return;
    };
    if s.len() > 1 << 16 {
        return;
    }
    if let Ok(m) = collig::io::parse_quasilattice_json(s) {
        // canonicalization must be a fixed point of parsing its own output
        let doc = collig::io::QuasiLatticeDoc::from_lattice(&m);
        let json = serde_json::to_string(&doc).unwrap();
        assert_eq!(collig::io::parse_quasilattice_json(&json).as_ref(), Ok(&m));
    }
});
