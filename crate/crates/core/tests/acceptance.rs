//! One line per acceptance criterion over the default sweep. Exits nonzero
//! when a criterion fails, except those listed in `KNOWN_FAILING`.

use mvlab_core::lusztig::LusztigDatum;
use mvlab_core::suites::{
    mutation_detection, run_suite, string_word, Scope, Suite, VerifyReport, MUTATION_SEED, MUTATION_THRESHOLD,
    MUTATION_TRIALS,
};
use mvlab_core::weyl_words::Rank;
use std::process::ExitCode;

/// Every identity below is exact: no violation is tolerated.
const MAX_VIOLATIONS: usize = 0;

/// Criteria whose statement is false as written. They are evaluated and
/// reported, but do not fail the run.
const KNOWN_FAILING: &[u32] = &[2];

struct Line {
    id: u32,
    name: &'static str,
    pass: bool,
    detail: String,
}

fn suite(id: u32, name: &'static str, s: Suite) -> Line {
    let report: VerifyReport = run_suite(s, &Scope::default_for(s)).expect("suite runs");
    let pass = report.violations.len() == MAX_VIOLATIONS && report.instances > 0;
    let mut detail = format!("{} instances, {} violations", report.instances, report.violations.len());
    if let Some(v) = report.violations.first() {
        detail.push_str(&format!("; first: {} {} {}", v.instance, v.check, v.witness));
    }
    Line { id, name, pass, detail }
}

fn intro_identity_literal() -> Line {
    let zero = LusztigDatum::zero(Rank::new(2).unwrap());
    let mut literal = 0;
    let mut transposed = 0;
    for m in 0..=4 {
        for n in 0..=4 {
            let lhs = zero.apply_word(&string_word(1, 2, m, n)).unwrap();
            let rhs = zero.apply_word(&string_word(2, 1, m, n)).unwrap();
            let swapped = zero.apply_word(&string_word(2, 1, n, m)).unwrap();
            literal += usize::from(lhs.is_some() && lhs == rhs);
            transposed += usize::from(lhs.is_some() && lhs == swapped);
        }
    }
    Line {
        id: 2,
        name: "F1^m F2^(m+n) F1^n (0) = F2^m F1^(m+n) F2^n (0), 0 <= m,n <= 4",
        pass: literal == 25,
        detail: format!(
            "as stated: {literal}/25 pairs (equal only when m = n); with outer exponents exchanged, F2^n F1^(m+n) F2^m: {transposed}/25"
        ),
    }
}

fn bz_axioms() -> Line {
    let mut line = suite(3, "BZ axioms for Psi(a) and its star; single-component mutations detected", Suite::BzAxioms);
    let stats = mutation_detection(&Scope::default_for(Suite::BzAxioms), MUTATION_TRIALS, MUTATION_SEED).unwrap();
    line.pass &= stats.rate >= MUTATION_THRESHOLD;
    line.detail.push_str(&format!(
        "; mutations detected {}/{} = {:.4} (need >= {MUTATION_THRESHOLD})",
        stats.detected, stats.trials, stats.rate
    ));
    line
}

fn main() -> ExitCode {
    let lines = vec![
        suite(1, "crystal axioms for both structures", Suite::CrystalAxioms),
        intro_identity_literal(),
        bz_axioms(),
        suite(4, "weight and eps* of Psi(a) agree with a", Suite::PsiWeight),
        suite(5, "Psi intertwines f*_i with the AM formula; am_f drops M_[1,i] by 1", Suite::AmFormula),
        suite(6, "bz_e changes only the i-support and raises M_[1,i] by 1", Suite::BzRaise),
        suite(7, "min formula, c* identity and eps-max identity", Suite::MinFormulas),
        suite(8, "Psi = Hom formula = cokernel dimension for every K", Suite::Quiver),
        suite(9, "M_K and eps, eps* at random Lagrangian points, 3 seeds x 2 primes", Suite::Lagrangian),
        suite(10, "transition maps: round trip, weight, path independence; adapted replay to n = 6", Suite::Transition),
        suite(11, "MV vertices inside P(M) and tight on their chambers", Suite::Polytope),
    ];
    let mut ok = true;
    for l in &lines {
        let known = KNOWN_FAILING.contains(&l.id);
        let tag = match (l.pass, known) {
            (true, _) => "PASS",
            (false, true) => "FAIL (known)",
            (false, false) => "FAIL",
        };
        println!("criterion {:>2} {tag}: {} [{}]", l.id, l.name, l.detail);
        ok &= l.pass || known;
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
