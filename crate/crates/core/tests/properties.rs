use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use rand::{Rng as _, SeedableRng};
use rand_chacha::ChaCha8Rng;
use symfq::counting::{
    bound_thm_main, count_points, BoundCase, BoundParams, Predicate, Surd,
};
use symfq::fields::{make_field, Fe, Field};
use symfq::multipoly::identities::subdisc_bridge;
use symfq::multipoly::symmetric::{complete_homogeneous, elementary, from_elementary, to_elementary};
use symfq::multipoly::{MPoly, Monomial};
use symfq::ring::{Integers, Rationals, Ring};
use symfq::rscodes::{criterion_report, h_expr, h_f_eval_formula, h_f_eval_remainder, h_f_expr, Criterion, TailPoly};
use symfq::unipoly::{factor, Lambda, UniPoly};

const FIELDS: [(u64, u32); 8] = [(2, 1), (3, 1), (5, 1), (7, 1), (2, 2), (2, 3), (3, 2), (2, 4)];

fn field_strategy() -> impl Strategy<Value = Field> {
    (0..FIELDS.len()).prop_map(|i| make_field(FIELDS[i].0, FIELDS[i].1).unwrap())
}

fn elems(f: &Field, raw: &[u32]) -> Vec<Fe> {
    raw.iter().map(|&r| f.elem(r % f.order())).collect()
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(f in field_strategy(), raw in prop::collection::vec(any::<u32>(), 3)) {
        let v = elems(&f, &raw);
        let (a, b, c) = (v[0], v[1], v[2]);
        prop_assert_eq!(f.add(&a, &b), f.add(&b, &a));
        prop_assert_eq!(f.mul(&a, &b), f.mul(&b, &a));
        prop_assert_eq!(f.mul(&a, &f.add(&b, &c)), f.add(&f.mul(&a, &b), &f.mul(&a, &c)));
        prop_assert_eq!(f.add(&f.add(&a, &b), &c), f.add(&a, &f.add(&b, &c)));
        prop_assert_eq!(f.mul(&f.mul(&a, &b), &c), f.mul(&a, &f.mul(&b, &c)));
        prop_assert!(f.is_zero(&f.add(&a, &f.neg(&a))));
        match f.inv_fe(a) {
            Some(i) => prop_assert!(f.is_one(&f.mul(&a, &i))),
            None => prop_assert!(f.is_zero(&a)),
        }
        prop_assert_eq!(f.pow_fe(a, u64::from(f.order())), a);
    }

    #[test]
    fn index_roundtrip(f in field_strategy(), r in any::<u32>()) {
        let a = f.elem(r % f.order());
        prop_assert_eq!(f.from_coeffs(&f.coeffs(a)), a);
        prop_assert_eq!(f.elem(a.index()), a);
    }

    #[test]
    fn frobenius_is_additive_and_fixes_base(f in field_strategy(), raw in prop::collection::vec(any::<u32>(), 2)) {
        let v = elems(&f, &raw);
        let p = u64::from(f.p());
        let fr = |x: Fe| f.frobenius(x, p).unwrap();
        prop_assert_eq!(fr(f.add(&v[0], &v[1])), f.add(&fr(v[0]), &fr(v[1])));
        prop_assert_eq!(fr(f.mul(&v[0], &v[1])), f.mul(&fr(v[0]), &fr(v[1])));
        let base = f.from_u64(u64::from(raw[0]));
        prop_assert_eq!(fr(base), base);
    }

    #[test]
    fn embed_restrict_roundtrip(p in prop::sample::select(vec![2u64, 3, 5]), i in 2u32..=3, r in any::<u32>()) {
        let base = make_field(p, 1).unwrap();
        let nf = base.normal_frame(i).unwrap();
        let a = base.elem(r % base.order());
        let up = nf.embed(a);
        prop_assert_eq!(nf.restrict(up), Some(a));
        let ext = nf.ext();
        prop_assert_eq!(ext.frobenius(up, p).unwrap(), up);
    }

    #[test]
    fn divmod_reconstructs(f in field_strategy(), a in prop::collection::vec(any::<u32>(), 0..8), b in prop::collection::vec(any::<u32>(), 1..5)) {
        let pa = UniPoly::from_coeffs(&f, elems(&f, &a));
        let pb = UniPoly::from_coeffs(&f, elems(&f, &b));
        prop_assume!(!pb.is_zero());
        let (q, r) = pa.divmod(&pb, &f).unwrap();
        prop_assert_eq!(q.mul(&pb, &f).add(&r, &f), pa);
        prop_assert!(r.is_zero() || r.degree() < pb.degree());
    }

    #[test]
    fn factor_product(f in field_strategy(), a in prop::collection::vec(any::<u32>(), 1..7)) {
        let mut c = elems(&f, &a);
        c.push(f.one());
        let g = UniPoly::from_coeffs(&f, c);
        let fac = factor(&g, &f).unwrap();
        prop_assert_eq!(fac.product(&f), g.clone());
        prop_assert_eq!(fac.pattern().n(), g.degree().unwrap());
        for (h, _) in &fac.factors {
            prop_assert!(symfq::unipoly::is_irreducible(h, &f));
        }
    }

    #[test]
    fn count_is_shard_invariant(f in field_strategy(), m in 1usize..4, shards in 1usize..20, r in any::<u32>()) {
        let t = f.elem(r % f.order());
        let zero = |x: &[Fe]| x.iter().fold(f.zero(), |acc, v| f.add(&acc, v)) == t;
        let one = count_points(&f, m, &Predicate::All, 1, 1 << 20, zero).unwrap().count;
        let many = count_points(&f, m, &Predicate::All, shards, 1 << 20, zero).unwrap().count;
        prop_assert_eq!(one, many);
        prop_assert_eq!(one, u64::from(f.order()).pow(m as u32 - 1));
    }

    #[test]
    fn surd_order_matches_squares(q in prop::sample::select(vec![2u64, 3, 5, 7, 8, 11, 13]), a in -50i64..50, b in -50i64..50, n in -100i64..100) {
        // a + b sqrt(q) vs n, decided by squaring
        let s = Surd { q, a: rat(a), b: rat(b) };
        let lhs = s.cmp_int(&BigInt::from(n));
        let d = a - n;
        let expect = match (d.signum(), b.signum()) {
            (x, 0) => x.cmp(&0),
            (x, y) if x >= 0 && y >= 0 => std::cmp::Ordering::Greater,
            (x, y) if x <= 0 && y <= 0 => std::cmp::Ordering::Less,
            (x, _) => ((x.signum()) * (d * d - b * b * q as i64).signum()).cmp(&0),
        };
        prop_assert_eq!(lhs, expect);
        let fl = s.floor();
        prop_assert_ne!(s.cmp_int(&fl), std::cmp::Ordering::Less);
        prop_assert_eq!(s.cmp_int(&(fl + 1)), std::cmp::Ordering::Less);
    }

    #[test]
    fn main_bound_grows_with_degree(q in prop::sample::select(vec![5u64, 7, 11, 13]), m in 3u64..7, delta in 1u64..5, big_d in 2u64..6) {
        // x = delta (D - 2) + 2 is increasing in delta once D >= 2
        let p = |delta, big_d| BoundParams { q, m, s: 1, k: 2, delta, big_d, d: 1 };
        let b0 = bound_thm_main(&p(delta, big_d), BoundCase::K2).unwrap();
        let b1 = bound_thm_main(&p(delta + 1, big_d), BoundCase::K2).unwrap();
        let b2 = bound_thm_main(&p(delta, big_d + 1), BoundCase::K2).unwrap();
        prop_assert_ne!(b1.cmp_surd(&b0), std::cmp::Ordering::Less);
        prop_assert_ne!(b2.cmp_surd(&b0), std::cmp::Ordering::Less);
    }

    #[test]
    fn h_f_methods_agree(k in 1usize..5, d in 1usize..4, raw in prop::collection::vec(any::<u32>(), 12)) {
        let f = make_field(11, 1).unwrap();
        let t = TailPoly::new(k, elems(&f, &raw[..d])).unwrap();
        let expr = h_f_expr(&f, &t);
        let x = elems(&f, &raw[4..4 + k + 1]);
        prop_assert_eq!(h_f_eval_formula(&f, &t, &expr, &x), h_f_eval_remainder(&f, &t, &x));
    }

    #[test]
    fn threshold_ordering(num in 1i64..8, den in 1i64..8, d in 1u64..8) {
        let eps = rat(num) / rat(den);
        let kb = |c| criterion_report(c, 1_000_003, 100, d, &eps).unwrap().k_bound;
        prop_assert!(kb(Criterion::Main) <= kb(Criterion::CaMaPr));
        prop_assert!(kb(Criterion::CaMaPr) <= kb(Criterion::LiWan));
    }

    #[test]
    fn predicate_roundtrip(m in 2usize..8, pairs in prop::collection::vec((0usize..8, 0usize..8), 1..4), i in 0usize..8, j in 0usize..8) {
        let pairs: Vec<_> = pairs.into_iter().map(|(a, b)| (a % m, b % m)).filter(|(a, b)| a != b).collect();
        let mut preds = vec![Predicate::All, Predicate::Nonzero, Predicate::DistinctNonzero];
        if !pairs.is_empty() {
            preds.push(Predicate::Distinct(pairs));
        }
        if i % m != j % m {
            preds.push(Predicate::Slice(i % m, j % m));
        }
        for p in preds {
            prop_assert_eq!(Predicate::parse(&p.to_string(), m).unwrap(), p);
        }
    }

    #[test]
    fn lambda_roundtrip(parts in prop::collection::vec(1usize..6, 1..6)) {
        let l = Lambda::from_parts(&parts);
        prop_assert_eq!(l.to_string().parse::<Lambda>().unwrap(), l.clone());
        prop_assert_eq!(l.n(), parts.iter().sum::<usize>());
    }

    #[test]
    fn subdisc_bridge_random(seed in any::<u64>(), m in 2usize..6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x: Vec<BigInt> = (0..m).map(|_| BigInt::from(rng.gen_range(-9i64..=9))).collect();
        for j in 0..m - 1 {
            let (a, b) = subdisc_bridge(&x, j).unwrap();
            prop_assert_eq!(a, b);
        }
    }

    #[test]
    fn to_elementary_roundtrip(m in 1usize..5, raw in prop::collection::vec((0u32..3, -5i64..5), 1..4)) {
        // a random symmetric polynomial built from products of elementary ones
        let z = &Integers;
        let mut f = MPoly::zero(m);
        for (e, c) in &raw {
            let i = (*e as usize % m) + 1;
            f = f.add(&elementary(z, m, i).pow(*e + 1, z).scale(&BigInt::from(*c), z), z);
        }
        let g = to_elementary(z, &f).unwrap();
        prop_assert_eq!(from_elementary(z, &g, m), f);
    }
}

#[test]
fn complete_homogeneous_in_elementary_basis() {
    // h_d = H_d(E_1..E_d), of degree one in E_d with coefficient (-1)^(d-1)
    let q = &Rationals;
    for d in 1..=5 {
        let hd = h_expr(q, d, d);
        let mut mono = vec![0u32; d];
        mono[d - 1] = 1;
        assert_eq!(hd.degree_in(d - 1), 1);
        let sign = if d % 2 == 1 { 1 } else { -1 };
        assert_eq!(hd.coeff(q, &Monomial(mono)), q.from_i64(sign));
        for m in d..=d + 1 {
            let lhs = from_elementary(q, &hd.with_nvars(q, m), m);
            assert_eq!(lhs, complete_homogeneous(q, m, d), "d={d} m={m}");
        }
    }
}
