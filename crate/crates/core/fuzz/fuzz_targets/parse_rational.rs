#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else {
        return;
    };
    if s.len() > 4096 {
        return;
    }
    if let Ok(x) = collig::io::parse_rational(s) {
        // the printed form must reparse to the same value
        let printed = collig::io::format_rational(&x);
        assert_eq!(collig::io::parse_rational(&printed), Ok(x));
    }
});
