#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else {
        return;
    };
    if s.len() > 1 << 16 {
        return;
    }
    if let Ok(f) = collig::io::parse_ratfun_json(s) {
        let doc = collig::io::RatFunDoc::from_ratfun(&f);
        let json = serde_json::to_string(&doc).unwrap();
        assert_eq!(collig::io::parse_ratfun_json(&json).as_ref(), Ok(&f));
    }
});
