// Copyright 2026 The levar Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! Randomized property checks over the whole library, run by
//! `levar selftest`.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::array::Array;
use crate::format::{self, generate, Fill};
use crate::kernels::{avgp_direct, avgp_nested, matmul, plus};
use crate::nesting::{all_cuts, cut_count, nest, unnest, ShapeCut};
use crate::shape::{index_to_offset, offset_to_index, BoundedNat, Shape};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: usize,
    pub failed: usize,
}

impl CheckResult {
    pub fn ok(&self) -> bool {
        self.failed == 0 && self.passed > 0
    }
}

#[derive(Debug, Clone, Default)]
pub struct Report {
    pub checks: Vec<CheckResult>,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(CheckResult::ok)
    }

    pub fn passed(&self) -> usize {
        self.checks.iter().filter(|c| c.ok()).count()
    }

    pub fn failed(&self) -> usize {
        self.checks.len() - self.passed()
    }
}

struct Tally {
    name: &'static str,
    passed: usize,
    failed: usize,
}

impl Tally {
    fn new(name: &'static str) -> Tally {
        Tally {
            name,
            passed: 0,
            failed: 0,
        }
    }

    fn check(&mut self, cond: bool) {
        if cond {
            self.passed += 1;
        } else {
            self.failed += 1;
        }
    }

    fn done(self) -> CheckResult {
        CheckResult {
            name: self.name,
            passed: self.passed,
            failed: self.failed,
        }
    }
}

/// Random divisor-based split of `n` into `k` factors (`k == 0` needs `n == 1`).
fn factors(rng: &mut ChaCha8Rng, n: usize, k: usize) -> Vec<usize> {
    if k == 0 {
        return Vec::new();
    }
    if n == 0 {
        let mut v: Vec<usize> = (0..k).map(|_| rng.gen_range(0..=3)).collect();
        v[rng.gen_range(0..k)] = 0;
        return v;
    }
    let mut rest = n;
    let mut v = Vec::with_capacity(k);
    for _ in 1..k {
        let divisors: Vec<usize> = (1..=rest).filter(|d| rest.is_multiple_of(*d)).collect();
        let d = *divisors.choose(rng).unwrap();
        v.push(d);
        rest /= d;
    }
    v.push(rest);
    v.shuffle(rng);
    v
}

/// A random shape of `level` with exactly `n` elements, if one exists.
pub fn shape_with_prod(rng: &mut ChaCha8Rng, level: usize, n: usize) -> Option<Shape> {
    match level {
        0 => (n == 1).then(Shape::unit),
        1 => Some(Shape::vector(n)),
        _ => {
            let lo = usize::from(n != 1);
            let slots = rng.gen_range(lo..=3);
            let sos = shape_with_prod(rng, level - 1, slots)?;
            Shape::node(sos, factors(rng, n, slots)).ok()
        }
    }
}

/// A random shape of `level` with extents drawn from `0..=max_extent`.
pub fn random_shape(rng: &mut ChaCha8Rng, level: usize, max_extent: usize) -> Shape {
    match level {
        0 => Shape::unit(),
        _ => {
            let sos_max = if level == 2 {
                max_extent
            } else {
                2.min(max_extent)
            };
            let sos = random_shape(rng, level - 1, sos_max);
            let extents = (0..sos.prod())
                .map(|_| rng.gen_range(0..=max_extent))
                .collect();
            Shape::node(sos, extents).unwrap()
        }
    }
}

fn small_shapes(rng: &mut ChaCha8Rng, count: usize, max_prod: usize) -> Vec<Shape> {
    let mut out = Vec::new();
    while out.len() < count {
        let level = rng.gen_range(0..=3);
        let s = random_shape(rng, level, 3);
        if s.prod() <= max_prod {
            out.push(s);
        }
    }
    out
}

fn random_array(rng: &mut ChaCha8Rng, s: &Shape) -> Array<i64> {
    generate(s, Fill::Random(rng.gen()))
}

fn triple_loop(a: &[i64], b: &[i64], m: usize, p: usize, n: usize) -> Vec<i64> {
    let mut c = vec![0; m * n];
    for i in 0..m {
        for j in 0..n {
            for k in 0..p {
                c[i * n + j] += a[i * p + k] * b[k * n + j];
            }
        }
    }
    c
}

/// Runs every property check with the given seed.
pub fn run(seed: u64) -> Report {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let shapes = small_shapes(&mut rng, 120, 256);
    let mut checks = Vec::new();

    let mut t = Tally::new("index/offset roundtrip");
    for s in &shapes {
        let n = s.prod();
        for iv in s.indices() {
            let o = index_to_offset(&iv).unwrap();
            t.check(offset_to_index(o, s).unwrap() == iv);
        }
        for o in 0..n {
            let o = BoundedNat::new(o, n).unwrap();
            t.check(index_to_offset(&offset_to_index(o, s).unwrap()).unwrap() == o);
        }
    }
    checks.push(t.done());

    let mut t = Tally::new("enumeration order and count");
    for s in &shapes {
        let all: Vec<_> = s.indices().collect();
        t.check(all.len() == s.prod());
        for (k, iv) in all.iter().enumerate() {
            t.check(index_to_offset(iv).unwrap().value() == k);
        }
    }
    checks.push(t.done());

    let mut t = Tally::new("bounded naturals reject value >= bound");
    for _ in 0..100 {
        let bound = rng.gen_range(0..50);
        let value = rng.gen_range(bound..bound + 50);
        t.check(BoundedNat::new(value, bound).is_err());
    }
    checks.push(t.done());

    let mut t = Tally::new("index equality agrees with offset equality");
    for s in shapes.iter().filter(|s| s.prod() > 0) {
        let all: Vec<_> = s.indices().collect();
        for _ in 0..20 {
            let (a, b) = (all.choose(&mut rng).unwrap(), all.choose(&mut rng).unwrap());
            t.check((a == b) == (a.offset().unwrap() == b.offset().unwrap()));
        }
    }
    checks.push(t.done());

    let mut t = Tally::new("tabulate agrees with sel and is idempotent");
    for s in &shapes {
        let a = random_array(&mut rng, s);
        let delayed = a.map(|x| x * 3 - 1);
        let tab = delayed.tabulate();
        t.check(tab.tabulate().buffer() == tab.buffer() && tab.shape() == s);
        for iv in s.indices() {
            t.check(tab.sel(&iv).unwrap() == delayed.sel(&iv).unwrap());
            t.check(tab.sel(&iv.clone()).unwrap() == tab.sel(&iv).unwrap());
        }
    }
    checks.push(t.done());

    let mut t = Tally::new("functor laws");
    for s in shapes.iter().filter(|s| s.prod() <= 64) {
        let a = random_array(&mut rng, s);
        t.check(a.map(|x| x).elementwise_eq(&a));
        let f = |x: i64| x / 3 + 7;
        let g = |x: i64| x * 2 - 5;
        t.check(a.map(move |x| f(g(x))).elementwise_eq(&a.map(g).map(f)));
    }
    checks.push(t.done());

    let mut t = Tally::new("reshape conserves row-major order");
    let mut r = Tally::new("reshape roundtrip");
    for s in &shapes {
        let a = random_array(&mut rng, s);
        for level in 0..=3 {
            if let Some(target) = shape_with_prod(&mut rng, level, s.prod()) {
                let b = a.reshape(&target).unwrap();
                t.check(b.shape() == &target && b.tabulate().to_vec() == a.to_vec());
                r.check(b.map(|x| x).reshape(s).unwrap().elementwise_eq(&a));
            }
        }
    }
    checks.push(t.done());
    checks.push(r.done());

    let mut t = Tally::new("plus is commutative and associative");
    for s in shapes.iter().take(60) {
        let (a, b, c) = (
            random_array(&mut rng, s),
            random_array(&mut rng, s),
            random_array(&mut rng, s),
        );
        t.check(plus(&a, &b).unwrap().elementwise_eq(&plus(&b, &a).unwrap()));
        let left = plus(&plus(&a, &b).unwrap(), &c).unwrap();
        let right = plus(&a, &plus(&b, &c).unwrap()).unwrap();
        t.check(left.elementwise_eq(&right));
    }
    checks.push(t.done());

    let mut mult = Tally::new("cut multiplicativity");
    let mut count = Tally::new("cut counts");
    let mut bij = Tally::new("split/merge bijection");
    let mut pres = Tally::new("nest preserves elements");
    let mut inv = Tally::new("unnest after nest is identity");
    for s in &shapes {
        let cuts = all_cuts(s);
        count.check(cuts.len() == cut_count(s));
        count.check(cuts.iter().collect::<HashSet<_>>().len() == cuts.len());
        let a = random_array(&mut rng, s);
        for c in cuts {
            let sc = ShapeCut::new(s, c).unwrap();
            mult.check(sc.left().prod() * sc.right().prod() == s.prod());
            let mut images = HashSet::new();
            for iv in s.indices() {
                let (o, i) = sc.split(&iv).unwrap();
                bij.check(sc.merge(&o, &i).unwrap() == iv);
                images.insert((o.offset().unwrap().value(), i.offset().unwrap().value()));
            }
            bij.check(images.len() == s.prod());
            let n = nest(&a, c).unwrap();
            for o in sc.left().indices() {
                let inner = n.sel(&o).unwrap();
                for i in sc.right().indices() {
                    let direct = a.sel(&sc.merge(&o, &i).unwrap()).unwrap();
                    pres.check(inner.sel(&i).unwrap() == direct);
                }
            }
            inv.check(unnest(&n, c, s).unwrap().elementwise_eq(&a));
        }
    }
    checks.extend([
        mult.done(),
        count.done(),
        bij.done(),
        pres.done(),
        inv.done(),
    ]);

    let mut t = Tally::new("nested pooling equals direct pooling");
    for _ in 0..200 {
        let (m, n) = (rng.gen_range(0..=8), rng.gen_range(0..=8));
        let a = random_array(&mut rng, &Shape::axes(&[2 * m, 2 * n]));
        t.check(
            avgp_nested(&a)
                .unwrap()
                .elementwise_eq(&avgp_direct(&a).unwrap()),
        );
    }
    checks.push(t.done());

    let mut t = Tally::new("matmul agrees with triple loop");
    for _ in 0..500 {
        let (m, p, n) = (
            rng.gen_range(0..=5),
            rng.gen_range(0..=5),
            rng.gen_range(0..=5),
        );
        let a = generate(&Shape::axes(&[m, p]), Fill::Random(rng.gen())).map(|x| x % 201 - 100);
        let b = generate(&Shape::axes(&[p, n]), Fill::Random(rng.gen())).map(|x| x % 201 - 100);
        let want = triple_loop(&a.to_vec(), &b.to_vec(), m, p, n);
        t.check(matmul(&a, &b).unwrap().to_vec() == want);
        let id = Array::from_fn(Shape::axes(&[p, p]), |iv| {
            i64::from(iv.components()[0] == iv.components()[1])
        });
        t.check(matmul(&a, &id).unwrap().elementwise_eq(&a));
    }
    checks.push(t.done());

    let mut t = Tally::new("format roundtrip");
    for s in shapes.iter().take(100) {
        let a = random_array(&mut rng, s);
        let bytes = format::to_bytes(&a);
        let back = format::from_slice(&bytes).unwrap();
        t.check(back.elementwise_eq(&a) && format::to_bytes(&back) == bytes);
    }
    checks.push(t.done());

    Report { checks }
}
