//! Capacity failures and resumptions over a 10 000 s horizon, with the
//! exact optimum alongside every re-solve.

use curtail::dynamic::write_trace_csv;
use curtail::*;

fn main() -> Result<()> {
    let mut cfg = DynamicConfig {
        oracle_overlay: true,
        seed: 4,
        ..DynamicConfig::default()
    };
    cfg.base.scenario = "FCI".parse()?;
    cfg.base.n = 14;
    let trace = run_dynamic_capacity(&cfg)?;
    eprintln!("{} capacity events", trace.event_count());
    write_trace_csv(&trace, std::io::stdout().lock()).expect("stdout");
    Ok(())
}
