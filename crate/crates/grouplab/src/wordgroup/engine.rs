//! Table-driven normal-form arithmetic for the eight-coset group.
//!
//! States are pairs `(coset, power)` standing for `w_coset * a^power`. Left
//! multiplication by a single generator letter maps coset representatives to
//! normal forms by the closed-form tables below; right multiplication by `r`
//! first rewrites `a^t r` through the bulk move `a^(4q) r = r a^(q(2k-4))`
//! and the residues `a r = r^3 a^(k-1)`, `a^2 r = ar^3 a^(k-1)`,
//! `a^3 r = a^2r^3 a^(k-1)`, then resolves the representative product.
//! [`Engine::verify`] checks every defining relator on every state and the
//! reachability of all `16k` states, so the tables are certified at
//! construction time rather than trusted.

use super::Gen;
use crate::{Error, Result};

/// Printable coset labels, in representative order.
pub const COSET_NAMES: [&str; 8] = ["A", "rA", "r2A", "r3A", "ar2A", "ar3A", "a2r3A", "ra2r3A"];

/// Letter spellings of the eight coset representatives.
const REP_LETTERS: [&[Gen]; 8] = [
    &[],
    &[Gen::R],
    &[Gen::R, Gen::R],
    &[Gen::R, Gen::R, Gen::R],
    &[Gen::A, Gen::R, Gen::R],
    &[Gen::A, Gen::R, Gen::R, Gen::R],
    &[Gen::A, Gen::A, Gen::R, Gen::R, Gen::R],
    &[Gen::R, Gen::A, Gen::A, Gen::R, Gen::R, Gen::R],
];

pub(crate) fn rep_letters(c: u8) -> &'static [Gen] {
    REP_LETTERS[c as usize]
}

/// A normal form `w_coset * a^power`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub(crate) struct State {
    pub coset: u8,
    pub power: u32,
}

impl State {
    pub fn identity() -> State {
        State { coset: 0, power: 0 }
    }
}

#[derive(Debug, Clone)]
pub(crate) struct Engine {
    pub k: u32,
    two_k: u32,
    /// Left multiplication by `a`: coset -> (coset, power shift).
    lambda_a: [(u8, u32); 8],
    /// Left multiplication by `r`: coset -> (coset, power shift).
    lambda_r: [(u8, u32); 8],
    /// Representative products `w_c * w_b` as normal forms.
    pi: [[State; 8]; 8],
    /// `a^u r` for `u = 0..4` as (coset, power).
    base_r: [(u8, u32); 4],
}

impl Engine {
    pub fn new(k: u32) -> Result<Engine> {
        if k < 12 || k % 8 != 4 {
            return Err(Error::Parameter(format!(
                "presentation requires k >= 12 and k = 4 mod 8, got {k}"
            )));
        }
        let two_k = 2 * k;
        // Closed forms derived from the relations:
        //   a * e      = a                      a * r      = r^3 a^(k-1)
        //   a * r^2    = ar^2                   a * r^3    = ar^3
        //   a * ar^2   = a^2 r^2 = r^2 a^(k+2)  a * ar^3   = a^2 r^3
        //   a * a^2r^3 = a^3 r^3 = r a^(k-3)    a * ra^2r^3 = ra^2r^3 a^(k+1)
        let lambda_a: [(u8, u32); 8] = [
            (0, 1),
            (3, k - 1),
            (4, 0),
            (5, 0),
            (2, k + 2),
            (6, 0),
            (1, k - 3),
            (7, k + 1),
        ];
        //   r * e      = r                      r * r      = r^2
        //   r * r^2    = r^3                    r * r^3    = r^4 = a^k
        //   r * ar^2   = a^2r^3 a^(k+3)         r * ar^3   = ar^2 a^(k-2)
        //   r * a^2r^3 = ra^2r^3                r * ra^2r^3 = ar^3 a^(k-1)
        let lambda_r: [(u8, u32); 8] = [
            (1, 0),
            (2, 0),
            (3, 0),
            (0, k),
            (6, k + 3),
            (4, k - 2),
            (7, 0),
            (5, k - 1),
        ];
        // residues of a^u r for u = 0..4
        let base_r: [(u8, u32); 4] = [(1, 0), (3, k - 1), (5, k - 1), (6, k - 1)];

        let mut engine = Engine {
            k,
            two_k,
            lambda_a,
            lambda_r,
            pi: [[State::identity(); 8]; 8],
            base_r,
        };
        // representative products via left application of w_c onto (b, 0)
        for c in 0..8u8 {
            for b in 0..8u8 {
                let mut s = State { coset: b, power: 0 };
                for &g in rep_letters(c).iter().rev() {
                    s = match g {
                        Gen::A => engine.left_a(s),
                        Gen::R => engine.left_r(s),
                    };
                }
                engine.pi[c as usize][b as usize] = s;
            }
        }
        Ok(engine)
    }

    fn left_a(&self, s: State) -> State {
        let (c, p) = self.lambda_a[s.coset as usize];
        State {
            coset: c,
            power: (p + s.power) % self.two_k,
        }
    }

    fn left_r(&self, s: State) -> State {
        let (c, p) = self.lambda_r[s.coset as usize];
        State {
            coset: c,
            power: (p + s.power) % self.two_k,
        }
    }

    /// Right multiplication by a single `r`.
    fn mul_r(&self, s: State) -> State {
        let u = (s.power % 4) as usize;
        let q = s.power / 4;
        let (b, p0) = self.base_r[u];
        let bulk = (q as u64 * (self.two_k - 4) as u64 % self.two_k as u64) as u32;
        let rep = self.pi[s.coset as usize][b as usize];
        State {
            coset: rep.coset,
            power: (rep.power + p0 + bulk) % self.two_k,
        }
    }

    pub fn mul_a_pow(&self, s: State, e: i64) -> State {
        let m = self.two_k as i64;
        let shift = ((e % m) + m) % m;
        State {
            coset: s.coset,
            power: (s.power + shift as u32) % self.two_k,
        }
    }

    pub fn mul_r_pow(&self, s: State, e: i64) -> State {
        let times = e.rem_euclid(8) as u32;
        let mut out = s;
        for _ in 0..times {
            out = self.mul_r(out);
        }
        out
    }

    /// Right multiplication by the representative word of `coset`.
    pub fn mul_rep_word(&self, mut s: State, coset: u8) -> State {
        for &g in rep_letters(coset) {
            s = match g {
                Gen::A => self.mul_a_pow(s, 1),
                Gen::R => self.mul_r(s),
            };
        }
        s
    }

    /// Right multiplication by a whole state.
    pub fn mul_state(&self, x: State, y: State) -> State {
        let s = self.mul_rep_word(x, y.coset);
        self.mul_a_pow(s, y.power as i64)
    }

    pub fn inv_state(&self, x: State) -> State {
        let mut s = State::identity();
        s = self.mul_a_pow(s, -(x.power as i64));
        for &g in rep_letters(x.coset).iter().rev() {
            s = match g {
                Gen::A => self.mul_a_pow(s, -1),
                Gen::R => self.mul_r_pow(s, -1),
            };
        }
        s
    }

    pub fn state_count(&self) -> usize {
        8 * self.two_k as usize
    }

    pub fn state_id(&self, s: State) -> usize {
        s.coset as usize * self.two_k as usize + s.power as usize
    }

    pub fn state_from_id(&self, id: usize) -> State {
        State {
            coset: (id / self.two_k as usize) as u8,
            power: (id % self.two_k as usize) as u32,
        }
    }

    /// Certifies the compiled tables: every defining relator acts trivially
    /// on every state, normal-form words reproduce their state, and the two
    /// generators reach all `16k` states.
    pub fn verify(&self) -> Result<()> {
        let k = self.k as i64;
        // relators as (label, word)
        let relators: Vec<(&str, Vec<(Gen, i64)>)> = vec![
            ("a^2k", vec![(Gen::A, 2 * k)]),
            ("r^8", vec![(Gen::R, 8)]),
            ("r^4 a^k", vec![(Gen::R, 4), (Gen::A, k)]),
            (
                "(ar)^2",
                vec![(Gen::A, 1), (Gen::R, 1), (Gen::A, 1), (Gen::R, 1)],
            ),
            (
                "(ra)^2",
                vec![(Gen::R, 1), (Gen::A, 1), (Gen::R, 1), (Gen::A, 1)],
            ),
            (
                "(a^3 r^3)^2",
                vec![(Gen::A, 3), (Gen::R, 3), (Gen::A, 3), (Gen::R, 3)],
            ),
            (
                "r^2 a^2 r^2 a^-2",
                vec![(Gen::R, 2), (Gen::A, 2), (Gen::R, 2), (Gen::A, -2)],
            ),
            (
                "a^k central against r",
                vec![(Gen::A, k), (Gen::R, 1), (Gen::A, k), (Gen::R, -1)],
            ),
        ];
        for id in 0..self.state_count() {
            let s0 = self.state_from_id(id);
            for (label, rel) in &relators {
                let mut s = s0;
                for &(g, e) in rel {
                    s = match g {
                        Gen::A => self.mul_a_pow(s, e),
                        Gen::R => self.mul_r_pow(s, e),
                    };
                }
                if s != s0 {
                    return Err(Error::Rewrite(format!(
                        "relator {label} does not act trivially on state {s0:?} (reached {s:?})"
                    )));
                }
            }
        }
        // normal-form words reproduce their state
        for id in 0..self.state_count() {
            let s0 = self.state_from_id(id);
            let mut s = State::identity();
            s = self.mul_rep_word(s, s0.coset);
            s = self.mul_a_pow(s, s0.power as i64);
            if s != s0 {
                return Err(Error::Rewrite(format!(
                    "normal-form word for {s0:?} folds to {s:?}"
                )));
            }
        }
        // reachability of all states from the identity
        let mut seen = vec![false; self.state_count()];
        let mut stack = vec![State::identity()];
        seen[self.state_id(State::identity())] = true;
        let mut count = 1usize;
        while let Some(s) = stack.pop() {
            for next in [self.mul_a_pow(s, 1), self.mul_r(s)] {
                let id = self.state_id(next);
                if !seen[id] {
                    seen[id] = true;
                    count += 1;
                    stack.push(next);
                }
            }
        }
        if count != self.state_count() {
            return Err(Error::Rewrite(format!(
                "only {count} of {} states reachable from the identity",
                self.state_count()
            )));
        }
        Ok(())
    }
}
