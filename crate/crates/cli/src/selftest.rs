//! The property suite at reduced sizes, driven through verification plans.

use dold_zeta_core::dynamics::{cycle_profile, FiniteSelfMap};
use dold_zeta_core::engine::{
    coefficient_identities_check, gsymm_check, partition_check, DynamicsSource, IdentityReport, SeriesCheck,
    VerificationPlan,
};
use dold_zeta_core::graded::GradedEndomorphism;
use dold_zeta_core::oracle::{Bound, Oracle};
use dold_zeta_core::partition::{GSet, PartitionFamily, PermutationGroup};
use dold_zeta_core::Result;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

fn maps(rng: &mut ChaCha8Rng, count: usize, max_n: usize) -> Vec<FiniteSelfMap> {
    (0..count)
        .map(|_| {
            let n = rng.gen_range(1..=max_n);
            FiniteSelfMap::random(n, rng)
        })
        .collect()
}

struct Tally {
    name: &'static str,
    runs: usize,
    failures: Vec<String>,
}

impl Tally {
    fn new(name: &'static str) -> Self {
        Tally { name, runs: 0, failures: Vec::new() }
    }

    fn report(&mut self, r: &IdentityReport) {
        self.runs += 1;
        if let Some((label, m)) = r.first_mismatch() {
            self.failures.push(format!("{}: {label} at k={}", r.identity, m.k));
        }
    }

    fn check(&mut self, c: &SeriesCheck) {
        self.runs += 1;
        if !c.pass {
            self.failures.push(c.summary());
        }
    }

    fn value(&self) -> Value {
        json!({
            "property": self.name,
            "runs": self.runs,
            "pass": self.failures.is_empty(),
            "failures": self.failures.iter().take(5).collect::<Vec<_>>(),
        })
    }
}

/// Runs every family of checks; `pass` is false if any check failed.
pub fn run(seed: u64, order: usize, oracle: &Oracle) -> Result<(bool, Value)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k = order.min(5);
    let population = maps(&mut rng, 40, 5);
    let mut tallies = Vec::new();

    let mut t = Tally::new("series identities against brute-force counts");
    for f in &population {
        let plans = [
            VerificationPlan::Md { map: f.clone(), k_max: Some(k) },
            VerificationPlan::Main { map: f.clone(), l: Bound::Finite(rng.gen_range(1..=3)), k_max: Some(k) },
            VerificationPlan::Prod { map: f.clone(), k_max: Some(k) },
            VerificationPlan::Sub { map: f.clone(), l: Bound::Finite(rng.gen_range(1..=3)), k_max: Some(k) },
        ];
        for p in plans {
            t.report(&p.run(k, oracle)?);
        }
    }
    tallies.push(t);

    let mut t = Tally::new("orbit-sum polynomials, small groups");
    let groups = [PermutationGroup::cyclic(2), PermutationGroup::cyclic(3), PermutationGroup::symmetric(3)];
    for g in &groups {
        for kset in [GSet::natural(g), GSet::regular(g)] {
            for f in population.iter().take(8) {
                t.check(&gsymm_check(f, g, &kset, None, oracle)?);
            }
        }
    }
    tallies.push(t);

    let mut t = Tally::new("partition recursion");
    for deg in 2..=3 {
        let sym = PermutationGroup::symmetric(deg);
        for l in 1..=deg {
            let fam = PartitionFamily::max_block(deg, l)?;
            let y = GSet::natural(&sym).pointed();
            for f in population.iter().take(8) {
                t.check(&partition_check(f, &sym, &fam, None, oracle)?);
                t.check(&partition_check(f, &sym, &fam, Some(&y), oracle)?);
            }
        }
    }
    tallies.push(t);

    let mut t = Tally::new("coefficient identities");
    for f in population.iter().take(6) {
        let d = cycle_profile(f, 4);
        for n in -2i64..=2 {
            let l = (n <= 0).then(|| Bound::Finite((-n).max(1) as usize));
            for c in coefficient_identities_check(&d, n, l, 4)?.checks {
                t.check(&c);
            }
        }
        let plan = VerificationPlan::Coeffic {
            source: DynamicsSource { map: Some(f.clone()), ..Default::default() },
            n: 1,
            l: None,
            k_max: Some(3),
        };
        t.report(&plan.run(3, oracle)?);
    }
    tallies.push(t);

    let mut t = Tally::new("graded determinant formula");
    for _ in 0..20 {
        let dims: Vec<usize> = (0..3).map(|_| rng.gen_range(1..=2)).collect();
        let blocks: Vec<(usize, Vec<Vec<i64>>)> = dims
            .iter()
            .enumerate()
            .map(|(j, &n)| (j, (0..n).map(|_| (0..n).map(|_| rng.gen_range(-2..=2)).collect()).collect()))
            .collect();
        let a = GradedEndomorphism::from_ints(&blocks)?;
        let p = a.poincare_generating(3);
        for kk in 0..=3 {
            let lhs = a.koszul_invariant_trace(kk)?;
            let c = SeriesCheck::new(
                format!("invariant trace, q^{kk}"),
                0,
                lhs.coeffs().to_vec(),
                p.coeff(kk).coeffs().to_vec(),
            );
            t.check(&c);
        }
    }
    tallies.push(t);

    let pass = tallies.iter().all(|t| t.failures.is_empty());
    let out = json!({
        "seed": seed,
        "pass": pass,
        "properties": tallies.iter().map(Tally::value).collect::<Vec<_>>(),
    });
    Ok((pass, out))
}
