//! Section generating functions against subsequences of the recursions.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use periodic_paths::algebra::{int, rational, Rational};
use periodic_paths::appell::{lp_recursion, sp_recursion};
use periodic_paths::converter::{assemble_ogf, section_gfs};
use periodic_paths::{Boundary, PathFamily, StepShape};

fn random_boundary(rng: &mut StdRng) -> Boundary {
    loop {
        let mut prefix: Vec<u64> = (0..rng.gen_range(0..=2)).map(|_| rng.gen_range(1..=4)).collect();
        let mut period: Vec<u64> = (0..rng.gen_range(1..=3)).map(|_| rng.gen_range(0..=5)).collect();
        prefix.sort_unstable();
        period.sort_unstable();
        if *period.last().unwrap() == 0 {
            continue;
        }
        if let Ok(b) = Boundary::new(prefix, period) {
            return b;
        }
    }
}

fn counts(b: &Boundary, family: PathFamily, sigma: &Rational, n: usize) -> Vec<Rational> {
    match family {
        PathFamily::Lattice => lp_recursion(b, n).values.into_iter().map(Rational::from_integer).collect(),
        PathFamily::Diagonal(shape) => sp_recursion(b, shape, n).unwrap().values.iter().map(|p| p.eval(sigma)).collect(),
    }
}

#[test]
fn sections_match_recursions_on_25_combinations() {
    let mut rng = StdRng::seed_from_u64(25);
    let shapes = [StepShape::new(1, 1), StepShape::new(1, 2), StepShape::new(2, 1)];
    let sigmas = [int(1), int(-1), int(2), rational(1, 2)];
    let mut combos = Vec::new();
    while combos.len() < 15 {
        combos.push((random_boundary(&mut rng), PathFamily::Lattice, int(0)));
    }
    while combos.len() < 25 {
        let shape = shapes[rng.gen_range(0..shapes.len())];
        let b = random_boundary(&mut rng);
        if b.slope_condition(shape).is_satisfied() {
            let sigma = sigmas[rng.gen_range(0..sigmas.len())].clone();
            combos.push((b, PathFamily::Diagonal(shape), sigma));
        }
    }
    let q = 8;
    for (b, family, sigma) in &combos {
        let (k, r) = (b.height(), b.prefix_len());
        let expect = counts(b, *family, sigma, r + k * (q + 1));
        let s = section_gfs(b, *family, sigma, q).unwrap_or_else(|e| panic!("{b} {family:?}: {e}"));
        assert_eq!(s.prefix_counts[..], expect[..r], "{b} {family:?} prefix");
        for (j, section) in s.sections.iter().enumerate() {
            let want: Vec<Rational> = (0..=q).map(|i| expect[r + i * k + j].clone()).collect();
            assert_eq!(section.coeffs()[..=q], want[..], "{b} {family:?} σ={sigma} Q_{j}");
        }
        let ogf = assemble_ogf(&s);
        assert_eq!(ogf.coeffs()[..], expect[..=ogf.order()], "{b} {family:?} assembled");
    }
}
