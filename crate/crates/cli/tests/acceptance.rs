//! One PASS/FAIL/SKIPPED line per acceptance criterion.
//!
//! Set `KUMMER_KEUM_FILE` to a z_w action table to run criterion 8.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use kummer_core::chamber_geometry::{face_sweep, WallKind, WallSystem};
use kummer_core::configuration::{type_one_weber, IncidenceType};
use kummer_core::exec::Execution;
use kummer_verify::suites::{
    chamber_suite, config_suite, cremona_suite, isometry_suite, lattice_suite, load_keum,
    threefold_suite,
};
use kummer_verify::{Assertion, Status, Sweep};

const SEED: u64 = 7;
const SAMPLES: usize = 5;

struct Criterion {
    number: u8,
    title: &'static str,
    status: Status,
    elapsed: Duration,
    budget: Duration,
    note: String,
}

fn verdict(assertions: &[&Assertion], elapsed: Duration, budget: Duration) -> (Status, String) {
    let failed: Vec<&str> = assertions.iter().filter(|a| a.status == Status::Fail).map(|a| a.id.as_str()).collect();
    let checked = assertions.iter().filter(|a| a.status == Status::Pass).count();
    if !failed.is_empty() {
        return (Status::Fail, format!("failed: {}", failed.join(", ")));
    }
    if checked == 0 {
        return (Status::Skipped, "nothing checked".into());
    }
    if elapsed > budget {
        return (Status::Fail, format!("{checked} assertions passed but over budget"));
    }
    (Status::Pass, format!("{checked} assertions"))
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed())
}

fn criterion(
    number: u8,
    title: &'static str,
    assertions: &[&Assertion],
    elapsed: Duration,
    budget: Duration,
) -> Criterion {
    let (status, note) = verdict(assertions, elapsed, budget);
    Criterion { number, title, status, elapsed, budget, note }
}

fn main() -> ExitCode {
    let exec = Execution::default();
    let mut results = Vec::new();

    let (config, t) = timed(config_suite);
    results.push(criterion(1, "configuration counts", &config.iter().collect::<Vec<_>>(), t, Duration::from_secs(5)));

    let (lattice, t) = timed(lattice_suite);
    results.push(criterion(2, "lattice identities", &lattice.iter().collect::<Vec<_>>(), t, Duration::from_secs(1)));

    let (iso, t) = timed(|| isometry_suite(None, exec));
    let iso: Vec<&Assertion> = iso.iter().filter(|a| a.id != "isometry.keum_table").collect();
    results.push(criterion(3, "isometry suite", &iso, t, Duration::from_secs(10)));

    let (three, t) = timed(|| threefold_suite(exec));
    results.push(criterion(4, "threefold intertwining", &three.iter().collect::<Vec<_>>(), t, Duration::from_secs(5)));

    let (chamber, _) = timed(|| chamber_suite(Sweep::Representatives, SEED, None, exec));
    let geometry: Vec<&Assertion> = chamber
        .iter()
        .filter(|a| !a.id.starts_with("chamber.homing"))
        .collect();
    let geometry_time = geometry.iter().map(|a| a.elapsed).sum();
    results.push(criterion(5, "chamber geometry", &geometry, geometry_time, Duration::from_secs(300)));
    let homing: Vec<&Assertion> = chamber.iter().filter(|a| a.id == "chamber.homing_z_g").collect();
    let homing_time = homing.iter().map(|a| a.elapsed).sum();
    results.push(criterion(6, "homing round trips", &homing, homing_time, Duration::from_secs(120)));

    let cremona = cremona_suite(SAMPLES, SEED, false, exec);
    // The first assertion carries the mean time per specialization.
    let per_sample = cremona.first().map(|a| a.elapsed).unwrap_or_default();
    results.push(criterion(7, "Cremona suite, per specialization", &cremona.iter().collect::<Vec<_>>(), per_sample, Duration::from_secs(60)));

    results.push(keum_criterion(exec));

    let mut failed = false;
    for c in &results {
        println!(
            "criterion {}: {} ({}; {:.2?} of {:?}) {}",
            c.number, c.status, c.title, c.elapsed, c.budget, c.note
        );
        failed |= c.status == Status::Fail;
    }
    if failed {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}

fn keum_criterion(exec: Execution) -> Criterion {
    let title = "Keum table gate";
    let budget = Duration::from_secs(600);
    let Some(path) = std::env::var_os("KUMMER_KEUM_FILE").map(PathBuf::from) else {
        return Criterion {
            number: 8,
            title,
            status: Status::Skipped,
            elapsed: Duration::ZERO,
            budget,
            note: "no z_w action table supplied (KUMMER_KEUM_FILE unset)".into(),
        };
    };
    let start = Instant::now();
    let table = match load_keum(&path, exec) {
        Ok(t) => t,
        Err(e) => {
            return Criterion { number: 8, title, status: Status::Fail, elapsed: start.elapsed(), budget, note: e.to_string() };
        }
    };
    let iso = isometry_suite(Some(&table), exec);
    let chamber = chamber_suite(Sweep::Representatives, SEED, Some(&table), exec);
    let sys = WallSystem::get();
    let weber: Vec<usize> = type_one_weber()
        .iter()
        .map(|w| sys.find_kind(&WallKind::Weber(w.labels)).expect("Weber wall"))
        .collect();
    let faces = face_sweep(&weber, exec);
    let facets = faces.iter().filter(|f| f.dimension == 14).count();
    let mut assertions: Vec<&Assertion> = iso.iter().filter(|a| a.id == "isometry.keum_table").collect();
    assertions.extend(chamber.iter().filter(|a| a.id == "chamber.homing_mixed"));
    let mut c = criterion(8, title, &assertions, start.elapsed(), budget);
    debug_assert!(weber.iter().all(|&i| sys.wall(i).kind.incidence() == Some(IncidenceType::One)));
    if facets != 120 {
        c.status = Status::Fail;
        c.note = format!("{facets} of 120 type-1 Weber walls have dimension 14");
    } else {
        c.note = format!("{}; 120 type-1 Weber faces of dimension 14", c.note);
    }
    c
}
