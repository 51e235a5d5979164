#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else {
        return;
    };
    if s.len() > 1 << 16 {
        return;
    }
    if let Ok(g) = collig::io::parse_colligation_json(s) {
        let doc = collig::io::ColligationDoc::from_colligation(&g);
        let json = serde_json::to_string(&doc).unwrap();
        assert_eq!(collig::io::parse_colligation_json(&json).as_ref(), Ok(&g));
    }
});
