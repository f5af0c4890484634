//! Cross-module invariants on randomized inputs: constructed resolutions
//! are smooth subdivisions, every resolution's rays contain the Hilbert
//! basis, restriction respects subdivisions, and search results survive a
//! serialization round trip.

use num_bigint::BigInt;

use toric_core::cone::Cone;
use toric_core::format::{ConeData, FanData};
use toric_core::hilbert::hilbert_basis;
use toric_core::lattice::LatticeVector;
use toric_core::search::{enumerate_hilbert_basis_resolutions, resolve, Budget};

struct Rng(u64);

impl Rng {
    fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    fn pick(&mut self, lo: i64, hi: i64) -> i64 {
        lo + (self.next() % (hi - lo + 1) as u64) as i64
    }
}

fn random_full_cones(seed: u64, count: usize, max_rank: usize, max_coord: i64) -> Vec<Cone> {
    let mut rng = Rng(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let d = rng.pick(2, max_rank as i64) as usize;
        let gens: Vec<LatticeVector> = (0..d)
            .map(|_| {
                LatticeVector::new(
                    (0..d)
                        .map(|_| BigInt::from(rng.pick(-max_coord, max_coord)))
                        .collect(),
                )
            })
            .collect();
        if gens.iter().any(|g| g.is_zero()) {
            continue;
        }
        let Ok(c) = Cone::new(&gens, d) else { continue };
        if c.is_full_dimensional() {
            out.push(c);
        }
    }
    out
}

#[test]
fn constructed_resolutions_are_smooth_subdivisions() {
    for c in random_full_cones(7, 25, 3, 4) {
        let fan = resolve(&c).unwrap();
        assert!(fan.is_smooth(), "cone {:?}", c.rays());
        assert!(fan.is_subdivision_of(&c), "cone {:?}", c.rays());
        assert!(fan.validate(), "cone {:?}", c.rays());
    }
}

#[test]
fn resolution_rays_contain_the_hilbert_basis() {
    // Every basis element appears among the rays of every resolution.
    for c in random_full_cones(11, 20, 3, 3) {
        let basis = hilbert_basis(&c).unwrap();
        let fan = resolve(&c).unwrap();
        let rays = fan.gen_set();
        for h in basis.elements() {
            assert!(rays.contains(h), "basis element {h:?} missing on {:?}", c.rays());
        }
    }
}

#[test]
fn restriction_of_a_resolution_subdivides_each_cell() {
    for c in random_full_cones(13, 10, 2, 5) {
        let outcome = enumerate_hilbert_basis_resolutions(&c, &Budget::default()).unwrap();
        assert!(outcome.complete);
        for fan in &outcome.fans {
            for cell in fan.cones() {
                let restricted = fan.restrict(cell).unwrap();
                assert!(restricted.validate());
                assert!(restricted.is_subdivision_of(cell));
            }
        }
    }
}

#[test]
fn search_results_round_trip_through_the_file_format() {
    let c = Cone::from_i64(
        &[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0], &[1, 1, 2, 3]],
        4,
    )
    .unwrap();
    let cone_data = ConeData::from_cone(&c).unwrap();
    let reparsed = serde_json::from_str::<ConeData>(&serde_json::to_string(&cone_data).unwrap())
        .unwrap()
        .to_cone()
        .unwrap();
    assert_eq!(c, reparsed);

    let outcome = enumerate_hilbert_basis_resolutions(&c, &Budget::default()).unwrap();
    for fan in &outcome.fans {
        let data = FanData::from_fan(fan).unwrap();
        let text = serde_json::to_string(&data).unwrap();
        let back = serde_json::from_str::<FanData>(&text).unwrap().to_fan().unwrap();
        assert_eq!(*fan, back);
        assert!(back.validate());
        assert!(back.is_subdivision_of(&c));
    }
}

#[test]
fn essential_divisor_split_partitions_the_basis() {
    for c in random_full_cones(17, 15, 3, 3) {
        let (basis, exceptional) = toric_core::hilbert::essential_divisors(&c).unwrap();
        for e in &exceptional {
            assert!(!c.rays().contains(e));
            assert!(basis.contains(e));
        }
        let ray_count = basis.len() - exceptional.len();
        assert_eq!(ray_count, c.rays().len());
    }
}

/// Independent oracle for the resolution search: try every subset of the
/// unimodular cells on the Hilbert basis points and keep those that the
/// official subdivision test accepts. The frontier search must find
/// exactly the same fans.
#[test]
fn search_agrees_with_subset_oracle() {
    use toric_core::fan::Fan;
    use toric_core::lattice::{determinant, IntMatrix};
    use num_traits::{One, Signed};

    let cones = [
        Cone::from_i64(&[&[0, 0, 1], &[1, 0, 1], &[0, 1, 1], &[1, 1, 1]], 3).unwrap(),
        Cone::from_i64(&[&[1, 0, 0], &[0, 1, 0], &[1, 1, 3]], 3).unwrap(),
        Cone::from_i64(&[&[1, 0, 0], &[0, 1, 0], &[1, 1, 2]], 3).unwrap(),
        Cone::from_i64(&[&[1, 0], &[2, 5]], 2).unwrap(),
    ];
    for c in &cones {
        let d = c.rank();
        let basis = hilbert_basis(c).unwrap();
        let points = basis.elements();

        // All unimodular d-subsets, with no extra emptiness filtering:
        // the oracle relies on the subdivision test alone.
        let mut cells: Vec<Vec<usize>> = Vec::new();
        let n = points.len();
        let mut pick = vec![0usize; d];
        fn subsets(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, depth: usize, out: &mut Vec<Vec<usize>>) {
            if depth == k {
                out.push(cur[..k].to_vec());
                return;
            }
            for i in start..n {
                cur[depth] = i;
                subsets(n, k, i + 1, cur, depth + 1, out);
            }
        }
        let mut all = Vec::new();
        subsets(n, d, 0, &mut pick, 0, &mut all);
        for subset in all {
            let rows: Vec<LatticeVector> = subset.iter().map(|&i| points[i].clone()).collect();
            let det = determinant(&IntMatrix::from_rows(rows).unwrap()).unwrap();
            if det.abs().is_one() {
                cells.push(subset);
            }
        }
        assert!(cells.len() <= 16, "oracle instance too large: {}", cells.len());

        let mut oracle: Vec<Fan> = Vec::new();
        for mask in 1u32..(1 << cells.len()) {
            let chosen: Vec<Cone> = (0..cells.len())
                .filter(|&i| mask & (1 << i) != 0)
                .map(|i| {
                    let gens: Vec<LatticeVector> =
                        cells[i].iter().map(|&j| points[j].clone()).collect();
                    Cone::new(&gens, d).unwrap()
                })
                .collect();
            let fan = Fan::from_cones(d, chosen);
            if fan.maximal_cones().len() != mask.count_ones() as usize {
                continue; // duplicate cells collapsed
            }
            let mut gens = fan.gen_set();
            gens.sort();
            let mut expected = points.to_vec();
            expected.sort();
            if gens == expected && fan.is_subdivision_of(c) && fan.validate() && fan.is_smooth() {
                oracle.push(fan);
            }
        }
        oracle.sort_by(|a, b| (a.rays(), a.maximal_cones()).cmp(&(b.rays(), b.maximal_cones())));
        oracle.dedup();

        let outcome = enumerate_hilbert_basis_resolutions(c, &Budget::default()).unwrap();
        assert!(outcome.complete);
        assert_eq!(
            outcome.fans, oracle,
            "search and subset oracle disagree on {:?}",
            c.rays()
        );
    }
}
