//! Acceptance run: one line per criterion, nonzero exit if any fails.

use std::process::ExitCode;
use std::time::Instant;

use astro_float::BigFloat;
use num_traits::One;

use qramanujan::arith::cyclotomic::is_prime;
use qramanujan::arith::{rat, Rational};
use qramanujan::congruence::{
    check_factor_identity, intro_residue, modsun_residue, verify_intro, verify_intro_with,
    verify_modsun, verify_modsun_with, verify_sun, CongruenceConfig, Path,
};
use qramanujan::numeric::{
    check_identity_numeric, classical_target, eval_classical, limit_scan, q_gamma,
    strictly_decreasing, Classical, LimitTarget, NumCtx, NumIdentity,
};
use qramanujan::wz::{check_identity, check_telescoping_grid, IdentityId, WzPairId};

fn le(a: &BigFloat, b: &BigFloat) -> bool {
    matches!(a.cmp(b), Some(c) if c <= 0)
}

fn lt(a: &BigFloat, b: &BigFloat) -> bool {
    matches!(a.cmp(b), Some(c) if c < 0)
}

fn sci(ctx: &mut NumCtx, x: &BigFloat) -> String {
    let s = ctx.render(x);
    match s.split_once('e') {
        Some((m, e)) => format!("{}e{e}", &m[..m.len().min(6)]),
        None => s,
    }
}

fn odd_primes(max: u64) -> Vec<u64> {
    (3..=max).filter(|&p| is_prime(p)).collect()
}

fn telescoping() -> Result<String, String> {
    let mut cells = 0;
    for pair in [WzPairId::PairJ2, WzPairId::PairL2] {
        for r in check_telescoping_grid(pair, 20) {
            cells += 1;
            if !r.passed {
                return Err(r.case_label);
            }
        }
    }
    Ok(format!(
        "{cells} cells, 0 <= n <= 20, 1 <= k <= n+2, both pairs"
    ))
}

fn finite_identities() -> Result<String, String> {
    for id in [
        IdentityId::IdA2,
        IdentityId::IdA3,
        IdentityId::IdSecond,
        IdentityId::IdSecond2,
    ] {
        for n in 1..=25 {
            let r = check_identity(id, n).map_err(|e| format!("{id} n={n}: {e}"))?;
            if !r.passed {
                return Err(r.case_label);
            }
        }
    }
    Ok("ID_A2, ID_A3, ID_SECOND, ID_SECOND2 for n = 1..25".into())
}

fn whipple() -> Result<String, String> {
    for n in (1..=99).step_by(2) {
        let r = check_identity(IdentityId::IdWhipple, n).map_err(|e| format!("n={n}: {e}"))?;
        if !r.passed {
            return Err(r.case_label);
        }
    }
    Ok("odd n <= 99".into())
}

fn modsun() -> Result<String, String> {
    for n in (1..=99).step_by(2) {
        let fast = verify_modsun(n).map_err(|e| format!("n={n}: {e}"))?;
        if !fast.passed {
            return Err(fast.case_label);
        }
        if n <= 25 {
            let exact = verify_modsun_with(n, Path::Exact).map_err(|e| format!("n={n}: {e}"))?;
            if exact.passed != fast.passed {
                return Err(format!("n={n}: exact and modular verdicts differ"));
            }
        }
    }
    Ok("odd n <= 99 modular, odd n <= 25 exact agrees".into())
}

fn intro_j2() -> Result<String, String> {
    let cfg = CongruenceConfig::default();
    for n in (1..=27).step_by(2) {
        let r = verify_intro_with(WzPairId::PairJ2, n, Path::Exact, &cfg)
            .map_err(|e| format!("n={n}: {e}"))?;
        if !r.passed {
            return Err(r.case_label);
        }
    }
    for p in odd_primes(97) {
        let r = verify_intro(WzPairId::PairJ2, p, &cfg).map_err(|e| format!("n={p}: {e}"))?;
        if r.path != Path::Modular || !r.result.passed {
            return Err(r.result.case_label);
        }
    }
    Ok("odd n <= 27 exact, odd primes <= 97 modular".into())
}

fn intro_l2() -> Result<String, String> {
    let cfg = CongruenceConfig::default();
    let ns = [3u64, 5, 7, 9, 11, 13, 25, 27];
    for n in ns {
        let r = verify_intro(WzPairId::PairL2, n, &cfg).map_err(|e| format!("n={n}: {e}"))?;
        if !r.result.passed {
            return Err(r.result.case_label);
        }
    }
    Ok(format!("n in {ns:?}"))
}

fn sun() -> Result<String, String> {
    for p in odd_primes(97).into_iter().filter(|&p| p >= 5) {
        let (w, r) = verify_sun(p).map_err(|e| format!("p={p}: {e}"))?;
        if !r.passed {
            return Err(format!("p={p}: valuation {:?}", w.valuation));
        }
        if p == 5 && w.difference != rat(-125, 32) {
            return Err(format!("p=5 witness {}", w.difference));
        }
    }
    Ok("primes 5..97 with valuation >= 3, p=5 witness -125/32".into())
}

fn infinite_identities() -> Result<String, String> {
    for which in NumIdentity::ALL {
        for q in [rat(1, 4), rat(1, 3), rat(1, 2)] {
            let c = check_identity_numeric(which, &q, 50).map_err(|e| format!("{which}: {e}"))?;
            if !c.result.passed {
                return Err(c.result.case_label);
            }
        }
    }
    Ok("A1, A11, SLATER, PRODFACT at q in {1/4, 1/3, 1/2}, 50 digits".into())
}

fn classical() -> Result<String, String> {
    for which in [Classical::Pi1, Classical::Pi2] {
        let r = eval_classical(which, 40).map_err(|e| e.to_string())?;
        let mut ctx = NumCtx::new(40).map_err(|e| e.to_string())?;
        let target = classical_target(which, &mut ctx);
        let diff = ctx.sub(&r.value, &target).abs();
        if !lt(&diff, &ctx.pow10(-40)) {
            return Err(format!("{which}: distance {}", ctx.render(&diff)));
        }
    }
    Ok("PI1 and PI2 within 1e-40".into())
}

fn limits() -> Result<String, String> {
    let mut notes = Vec::new();
    for t in [LimitTarget::A1ToPi1, LimitTarget::A11ToPi2] {
        let pts = limit_scan(t, 4..=10, 30).map_err(|e| format!("{t}: {e}"))?;
        if !strictly_decreasing(&pts) {
            return Err(format!("{t}: distances not strictly decreasing"));
        }
        let mut ctx = NumCtx::new(30).map_err(|e| e.to_string())?;
        let last = &pts.last().expect("nonempty scan").distance;
        if !lt(last, &ctx.pow10(-2)) {
            return Err(format!("{t}: distance {} at j=10", ctx.render(last)));
        }
        notes.push(format!("{t} d(10)={}", sci(&mut ctx, last)));
    }
    Ok(format!(
        "j = 4..10 strictly decreasing; {}",
        notes.join(", ")
    ))
}

fn q_gamma_facts() -> Result<String, String> {
    let ctx = NumCtx::new(30).map_err(|e| e.to_string())?;
    for q in [rat(1, 2), rat(9, 10)] {
        for x in [1, 2] {
            let r = q_gamma(&rat(x, 1), &q, 30).map_err(|e| e.to_string())?;
            if r.value.cmp(&ctx.int(1)) != Some(0) {
                return Err(format!("Gamma_q({x}) != 1 at q={q}"));
            }
        }
    }
    let q = Rational::one() - rat(1, 1024);
    let r = q_gamma(&rat(1, 2), &q, 30).map_err(|e| e.to_string())?;
    let mut ctx = ctx;
    let pi = ctx.pi();
    let root = ctx.sqrt(&pi);
    let diff = ctx.sub(&r.value, &root).abs();
    if !lt(&diff, &ctx.pow10(-2)) {
        return Err(format!("|Gamma_q(1/2) - sqrt(pi)| = {}", ctx.render(&diff)));
    }
    if !le(&r.tail_bound, &ctx.pow10(-30)) {
        return Err("Gamma_q(1/2) bound too loose".into());
    }
    Ok(format!(
        "Gamma_q(1) = Gamma_q(2) = 1; |Gamma_q(1/2) - sqrt(pi)| = {} at q = 1 - 2^-10",
        sci(&mut ctx, &diff)
    ))
}

fn cross_path() -> Result<String, String> {
    let cfg = CongruenceConfig::default();
    for p in odd_primes(31) {
        let fast = verify_intro_with(WzPairId::PairJ2, p, Path::Modular, &cfg)
            .map_err(|e| format!("J2 n={p}: {e}"))?;
        let exact = verify_intro_with(WzPairId::PairJ2, p, Path::Exact, &cfg)
            .map_err(|e| format!("J2 n={p}: {e}"))?;
        if fast.passed != exact.passed {
            return Err(format!("J2 n={p}: verdicts differ"));
        }
        let a = intro_residue(WzPairId::PairJ2, p, Path::Modular).map_err(|e| e.to_string())?;
        let b = intro_residue(WzPairId::PairJ2, p, Path::Exact).map_err(|e| e.to_string())?;
        if a != b {
            return Err(format!("J2 n={p}: residues differ"));
        }
        let fast = verify_modsun_with(p, Path::Modular).map_err(|e| e.to_string())?;
        let exact = verify_modsun_with(p, Path::Exact).map_err(|e| e.to_string())?;
        if fast.passed != exact.passed {
            return Err(format!("modsun n={p}: verdicts differ"));
        }
        let a = modsun_residue(p, Path::Modular).map_err(|e| e.to_string())?;
        let b = modsun_residue(p, Path::Exact).map_err(|e| e.to_string())?;
        if a != b {
            return Err(format!("modsun n={p}: residues differ"));
        }
    }
    for n in 1..=50 {
        for j in 1..=n {
            if !check_factor_identity(n, j) {
                return Err(format!("factor identity n={n} j={j}"));
            }
        }
    }
    Ok("primes <= 31 agree on verdicts and residues; factor identity for 1 <= j <= n <= 50".into())
}

type Criterion = (&'static str, fn() -> Result<String, String>);

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("WZ telescoping certificate", telescoping),
        ("finite identities", finite_identities),
        ("Whipple specialization", whipple),
        ("modsun congruence", modsun),
        ("intro congruence J2", intro_j2),
        ("intro congruence L2", intro_l2),
        ("classical p-adic congruence", sun),
        ("infinite identities at 50 digits", infinite_identities),
        ("classical 1/pi series", classical),
        ("q -> 1 limits", limits),
        ("q-Gamma", q_gamma_facts),
        ("cross-path consistency", cross_path),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = f();
        let ms = t.elapsed().as_millis();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} ({ms} ms)", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {detail} ({ms} ms)", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
