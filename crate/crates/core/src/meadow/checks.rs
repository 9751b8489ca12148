//! Axiom sweeps over meadow carriers.

use std::collections::BTreeMap;

use super::Meadow;
use crate::check::{run_law, sweep, CheckReport, LawOutcome};
use crate::limits::Limits;

fn outcome(name: &str, statement: &str, tuples: u64, sampled: bool, cx: Option<String>) -> LawOutcome {
    LawOutcome {
        name: name.to_string(),
        statement: statement.to_string(),
        passed: cx.is_none(),
        tuples_checked: tuples,
        sampled,
        counterexample: cx,
    }
}

impl Meadow {
    /// Fibers found from the operations alone: `0·x` for every `x`, grouped.
    fn observed_fibers(&self) -> BTreeMap<usize, Vec<usize>> {
        let zero = self.flat(self.zero());
        let mut fibers: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for x in 0..self.size() {
            fibers.entry(self.fmul(zero, x)).or_default().push(x);
        }
        fibers
    }

    /// P1–P10 plus the conditions of a pre-meadow with `a`: exactly one
    /// singleton fiber, and its element absorbs addition and multiplication.
    pub fn check_pre_meadow(&self, limits: &Limits) -> CheckReport {
        let mut r = CheckReport::new(format!("pre-meadow with {} elements", self.size()));
        let n = self.size();
        let zero = self.flat(self.zero());
        let one = self.flat(self.one());
        let (add, mul, neg) = (|a, b| self.fadd(a, b), |a, b| self.fmul(a, b), |a| self.fneg(a));
        let show = |f: usize| self.fdescribe(f);
        run_law(
            &mut r,
            "P1",
            "(x+y)+z = x+(y+z)",
            n,
            3,
            limits,
            |t| add(add(t[0], t[1]), t[2]) == add(t[0], add(t[1], t[2])),
            show,
        );
        run_law(
            &mut r,
            "P2",
            "x+y = y+x",
            n,
            2,
            limits,
            |t| add(t[0], t[1]) == add(t[1], t[0]),
            show,
        );
        run_law(&mut r, "P3", "x+0 = x", n, 1, limits, |t| add(t[0], zero) == t[0], show);
        run_law(
            &mut r,
            "P4",
            "x+(-x) = 0·x",
            n,
            1,
            limits,
            |t| add(t[0], neg(t[0])) == mul(zero, t[0]),
            show,
        );
        run_law(
            &mut r,
            "P5",
            "(xy)z = x(yz)",
            n,
            3,
            limits,
            |t| mul(mul(t[0], t[1]), t[2]) == mul(t[0], mul(t[1], t[2])),
            show,
        );
        run_law(
            &mut r,
            "P6",
            "xy = yx",
            n,
            2,
            limits,
            |t| mul(t[0], t[1]) == mul(t[1], t[0]),
            show,
        );
        run_law(&mut r, "P7", "1·x = x", n, 1, limits, |t| mul(one, t[0]) == t[0], show);
        run_law(
            &mut r,
            "P8",
            "x(y+z) = xy+xz",
            n,
            3,
            limits,
            |t| mul(t[0], add(t[1], t[2])) == add(mul(t[0], t[1]), mul(t[0], t[2])),
            show,
        );
        run_law(
            &mut r,
            "P9",
            "-(-x) = x",
            n,
            1,
            limits,
            |t| neg(neg(t[0])) == t[0],
            show,
        );
        run_law(
            &mut r,
            "P10",
            "0·(x+y) = 0·x·y",
            n,
            2,
            limits,
            |t| mul(zero, add(t[0], t[1])) == mul(mul(zero, t[0]), t[1]),
            show,
        );

        let fibers = self.observed_fibers();
        let singletons: Vec<usize> = fibers
            .iter()
            .filter(|(_, members)| members.len() == 1)
            .map(|(&z, _)| z)
            .collect();
        let cx = match singletons.len() {
            1 => None,
            0 => Some("no singleton fiber".to_string()),
            _ => Some(format!(
                "singleton fibers at {}",
                singletons
                    .iter()
                    .map(|&z| self.fdescribe(z))
                    .collect::<Vec<_>>()
                    .join(", ")
            )),
        };
        r.push(outcome(
            "A1",
            "exactly one z in 0·P has |P_z| = 1",
            fibers.len() as u64,
            false,
            cx,
        ));
        let a = singletons.first().copied().unwrap_or(self.flat(self.a()));
        run_law(&mut r, "A2", "x+a = a", n, 1, limits, |t| add(t[0], a) == a, show);
        run_law(&mut r, "A3", "x·a = a", n, 1, limits, |t| mul(t[0], a) == a, show);
        r
    }

    /// M1–M4 for the total inverse. On a non-common meadow the inverse is
    /// undefined; the report then holds a single failing law naming the witness.
    pub fn check_common(&self, limits: &Limits) -> CheckReport {
        let mut r = CheckReport::new(format!("common meadow with {} elements", self.size()));
        if let Some(w) = self.common_witness() {
            let maximal: Vec<&str> = w.maximal.iter().map(|&v| self.vertex_label(v)).collect();
            r.push(outcome(
                "C",
                "every invertibility set has a greatest element",
                self.size() as u64,
                false,
                Some(format!(
                    "{} at {} has maximal invertibility vertices {}",
                    w.rendered,
                    self.vertex_label(w.element.vertex()),
                    maximal.join(", ")
                )),
            ));
            return r;
        }
        let n = self.size();
        let zero = self.flat(self.zero());
        let one = self.flat(self.one());
        let a = self.flat(self.a());
        let (add, mul, inv) = (|x, y| self.fadd(x, y), |x, y| self.fmul(x, y), |x| self.fminv(x));
        let show = |f: usize| self.fdescribe(f);
        run_law(
            &mut r,
            "M1",
            "x·x⁻¹ = 1 + 0·x⁻¹",
            n,
            1,
            limits,
            |t| mul(t[0], inv(t[0])) == add(one, mul(zero, inv(t[0]))),
            show,
        );
        run_law(
            &mut r,
            "M2",
            "(xy)⁻¹ = x⁻¹y⁻¹",
            n,
            2,
            limits,
            |t| inv(mul(t[0], t[1])) == mul(inv(t[0]), inv(t[1])),
            show,
        );
        run_law(
            &mut r,
            "M3",
            "(1+0·x)⁻¹ = 1+0·x",
            n,
            1,
            limits,
            |t| {
                let u = add(one, mul(zero, t[0]));
                inv(u) == u
            },
            show,
        );
        run_law(
            &mut r,
            "M4",
            "0⁻¹ = a",
            1,
            1,
            limits,
            |_| inv(zero) == a,
            |_| self.fdescribe(zero),
        );
        r
    }

    /// Transition maps read off the operations: for fiber zeros `z <= z'`,
    /// `x ↦ x+z` must be a unital ring homomorphism from `P_z'` to `P_z`,
    /// compose coherently, match the stored transitions, and the order on
    /// `0·P` must match the lattice.
    pub fn check_transition_maps(&self, limits: &Limits) -> CheckReport {
        let mut r = CheckReport::new(format!("transition maps of {} fibers", self.vertex_count()));
        let fibers = self.observed_fibers();
        let zeros: Vec<usize> = fibers.keys().copied().collect();
        let one = self.flat(self.one());
        let zero = self.flat(self.zero());
        let leq = |z: usize, w: usize| self.fmul(z, w) == z;
        let l = self.lattice();

        let mut order_cx = None;
        'order: for &z in &zeros {
            for &w in &zeros {
                if leq(z, w) != l.leq(self.fvertex(z), self.fvertex(w)) {
                    order_cx = Some(format!("({}, {})", self.fdescribe(z), self.fdescribe(w)));
                    break 'order;
                }
            }
        }
        let pairs = (zeros.len() * zeros.len()) as u64;
        r.push(outcome(
            "T0",
            "z <= z' iff z·z' = z agrees with the lattice",
            pairs,
            false,
            order_cx,
        ));

        let mut hom_tuples = 0u64;
        let mut hom_sampled = false;
        let mut hom_cx = None;
        let mut stored_cx = None;
        let mut stored_tuples = 0u64;
        for &z in &zeros {
            for &w in zeros.iter().filter(|&&w| leq(z, w)) {
                let fib = &fibers[&w];
                let t = |x: usize| self.fadd(x, z);
                if hom_cx.is_none() {
                    let res = sweep("T1", fib.len(), 2, limits, |p| {
                        let (x, y) = (fib[p[0]], fib[p[1]]);
                        self.fmul(zero, t(x)) == z
                            && t(self.fadd(x, y)) == self.fadd(t(x), t(y))
                            && t(self.fmul(x, y)) == self.fmul(t(x), t(y))
                    });
                    hom_tuples += res.tuples;
                    hom_sampled |= res.sampled;
                    if let Some(p) = res.counterexample {
                        hom_cx = Some(format!(
                            "x ↦ x+{} at ({}, {})",
                            self.fdescribe(z),
                            self.fdescribe(fib[p[0]]),
                            self.fdescribe(fib[p[1]])
                        ));
                    } else if fibers[&z].iter().any(|&y| self.fmul(t(self.fadd(one, w)), y) != y) {
                        hom_cx = Some(format!("x ↦ x+{} does not preserve 1", self.fdescribe(z)));
                    }
                }
                let (vz, vw) = (self.fvertex(z), self.fvertex(w));
                let dl = self.directed_lattice();
                let off_w = self.fiber_range(vw).start;
                let off_z = self.fiber_range(vz).start;
                for &x in fib {
                    stored_tuples += 1;
                    if stored_cx.is_none() && t(x) != off_z + dl.push(vz, vw, x - off_w) {
                        stored_cx = Some(format!(
                            "{} + {} differs from the stored transition",
                            self.fdescribe(x),
                            self.fdescribe(z)
                        ));
                    }
                }
            }
        }
        r.push(outcome(
            "T1",
            "x ↦ x+z is a unital ring homomorphism P_z' -> P_z",
            hom_tuples,
            hom_sampled,
            hom_cx,
        ));

        let mut coh_cx = None;
        let mut coh_tuples = 0u64;
        'coh: for &z in &zeros {
            for &w in zeros.iter().filter(|&&w| leq(z, w)) {
                for &u in zeros.iter().filter(|&&u| leq(w, u)) {
                    for &x in &fibers[&u] {
                        coh_tuples += 1;
                        if self.fadd(self.fadd(x, w), z) != self.fadd(x, z) {
                            coh_cx = Some(format!(
                                "({}, {}, {}) at {}",
                                self.fdescribe(z),
                                self.fdescribe(w),
                                self.fdescribe(u),
                                self.fdescribe(x)
                            ));
                            break 'coh;
                        }
                    }
                }
            }
        }
        r.push(outcome("T2", "f(z,z')∘f(z',z'') = f(z,z'')", coh_tuples, false, coh_cx));
        r.push(outcome(
            "T3",
            "x+z equals the stored transition",
            stored_tuples,
            false,
            stored_cx,
        ));
        r
    }

    /// Every sweep: pre-meadow, common-meadow and transition-map laws.
    pub fn check_all(&self, limits: &Limits) -> Vec<CheckReport> {
        vec![
            self.check_pre_meadow(limits),
            self.check_common(limits),
            self.check_transition_maps(limits),
        ]
    }
}
