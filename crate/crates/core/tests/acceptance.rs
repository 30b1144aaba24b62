use std::process::ExitCode;
use std::time::Instant;

fn main() -> ExitCode {
    let mut failed = 0;
    let suites = vertexlab::checks::acceptance_suites();
    for suite in &suites {
        let start = Instant::now();
        let r = suite();
        println!("{r} [{:.1?}]", start.elapsed());
        failed += usize::from(!r.passed());
    }
    println!("{} of {} criteria passed", suites.len() - failed, suites.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
