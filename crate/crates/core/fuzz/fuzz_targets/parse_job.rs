#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else {
        return;
    };
    if s.len() > 1 << 16 {
        return;
    }
    if let Ok(job) = collig::io::parse_job_json(s) {
        // exercise the nested document validators too
        if let Some(c) = &job.colligation {
            let _ = c.to_colligation();
        }
        if let Some(c) = &job.colligation2 {
            let _ = c.to_colligation();
        }
        if let Some(l) = &job.lattice {
            let _ = l.to_lattice();
        }
        if let Some(f) = &job.function {
            let _ = f.to_ratfun();
        }
    }
});
