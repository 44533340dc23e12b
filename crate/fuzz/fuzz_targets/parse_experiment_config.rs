#![no_main]

use libfuzzer_sys::fuzz_target;
use rigidity_cli::ExperimentConfig;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    // config parsing must never panic; a parsed config must re-serialize
    if let Ok(cfg) = ExperimentConfig::from_json(text) {
        let _ = serde_json::to_string(&cfg).expect("config serializes");
    }
});
