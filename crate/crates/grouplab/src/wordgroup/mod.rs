//! Exact integer-only model of the abstract group
//!
//! ```text
//! < r, a | a^(2k) = e,  a^k = r^4 central,  (ar)^2 = (ra)^2 = (a^3 r^3)^2 = e,
//!          r^2 a^2 r^2 = a^2 >              (k >= 12, k = 4 mod 8)
//! ```
//!
//! Every element has a normal form `w_c * a^t` where `w_c` is one of the
//! eight coset representatives `e, r, r^2, r^3, ar^2, ar^3, a^2r^3, ra^2r^3`
//! and `t` ranges over `0..2k`. Right multiplication by the generators is
//! table-driven: the tables are closed forms in `k` compiled from the derived
//! relations (`ar = r^3 a^(k-1)`, `a^3 r^3 = r a^(k-3)`, `a^2 r^2 = r^2
//! a^(k+2)`, `a^4 r = r a^(2k-4)` and their iterates). Construction verifies
//! that every defining relator acts trivially on every normal form and that
//! the generators reach all `16k` forms, so a faulty table cannot go
//! unnoticed.
//!
//! When the additional relation `r^2 a = a^s r^2` is imposed (the commuting
//! case, `2s = k + 2 mod 2k`), the group is the quotient by the normal
//! closure of `(r^2 a)(a^s r^2)^-1`; the quotient is enumerated exactly and
//! has the four cosets `A, rA, r^2A, r^3A`.

mod analysis;
mod engine;

pub use analysis::{
    abstract_normalizer_k, abstract_order, coset_table, verify_abstract_relations,
    CosetTableReport, CosetTableRow, NormalizerKReport, WordRelationReport,
};
pub use engine::COSET_NAMES;

use engine::{Engine, State};

use crate::{Error, Result};

/// A generator letter.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Gen {
    R,
    A,
}

/// A word in the generators, as (generator, exponent) blocks. Exponents may
/// be negative; they are interpreted modulo the generator orders.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Word(pub Vec<(Gen, i64)>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    /// Shorthand parser: `"r2 a-3 r"` means `r^2 a^-3 r`.
    pub fn parse(s: &str) -> Result<Word> {
        let mut blocks = Vec::new();
        for tok in s.split_whitespace() {
            let (g, rest) = match tok.chars().next() {
                Some('r') => (Gen::R, &tok[1..]),
                Some('a') => (Gen::A, &tok[1..]),
                _ => return Err(Error::Parameter(format!("bad word token {tok}"))),
            };
            let e: i64 = if rest.is_empty() {
                1
            } else {
                rest.parse()
                    .map_err(|_| Error::Parameter(format!("bad exponent in {tok}")))?
            };
            blocks.push((g, e));
        }
        Ok(Word(blocks))
    }
}

/// Normal form: coset label and residual power of `a`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize)]
pub struct CosetForm {
    /// Index into [`COSET_NAMES`]; `0..8` in the eight-coset case, `0..4`
    /// in the commuting case.
    pub coset: u8,
    /// Exponent of the trailing power of `a`, in `0..2k`.
    pub power: u32,
}

impl CosetForm {
    pub fn name(&self) -> &'static str {
        COSET_NAMES[self.coset as usize]
    }
}

/// A validated presentation with compiled multiplication tables.
#[derive(Debug, Clone)]
pub struct Presentation {
    pub k: u32,
    pub tau: u32,
    /// `Some(s)` when the relation `r^2 a = a^s r^2` is imposed.
    pub commuting_exponent: Option<u32>,
    engine: Engine,
    /// Commuting case only: map from eight-coset states to quotient classes.
    quotient: Option<Quotient>,
}

#[derive(Debug, Clone)]
struct Quotient {
    /// For each eight-coset state id, the canonical four-coset form.
    class_rep: Vec<CosetForm>,
    order: usize,
}

impl Presentation {
    /// The eight-coset (non-commuting) presentation.
    pub fn new(k: u32) -> Result<Self> {
        let engine = Engine::new(k)?;
        engine.verify()?;
        Ok(Presentation {
            k,
            tau: k / 4,
            commuting_exponent: None,
            engine,
            quotient: None,
        })
    }

    /// The commuting-case quotient. `s` must be the unique exponent
    /// `2 tau + 1` consistent with `r^2 a^2 = a^(k+2) r^2`.
    pub fn new_commuting(k: u32, s: u32) -> Result<Self> {
        let engine = Engine::new(k)?;
        engine.verify()?;
        let tau = k / 4;
        if s != 2 * tau + 1 {
            return Err(Error::Parameter(format!(
                "commuting exponent must be 2 tau + 1 = {}, got {s}",
                2 * tau + 1
            )));
        }
        let quotient = build_quotient(&engine, s)?;
        Ok(Presentation {
            k,
            tau,
            commuting_exponent: Some(s),
            engine,
            quotient: Some(quotient),
        })
    }

    pub fn order_bound(&self) -> usize {
        match &self.quotient {
            Some(q) => q.order,
            None => 16 * self.k as usize,
        }
    }

    fn project(&self, s: State) -> CosetForm {
        match &self.quotient {
            Some(q) => q.class_rep[self.engine.state_id(s)],
            None => CosetForm {
                coset: s.coset,
                power: s.power,
            },
        }
    }

    /// Reduces a word to its normal form.
    pub fn reduce_word(&self, w: &Word) -> CosetForm {
        self.project(self.reduce_raw(w))
    }

    pub fn identity(&self) -> CosetForm {
        self.project(State::identity())
    }

    /// Product of two normal forms.
    pub fn mul(&self, x: CosetForm, y: CosetForm) -> CosetForm {
        let mut s = State {
            coset: x.coset,
            power: x.power,
        };
        s = self.engine.mul_rep_word(s, y.coset);
        s = self.engine.mul_a_pow(s, y.power as i64);
        self.project(s)
    }

    /// Inverse of a normal form.
    pub fn inv(&self, x: CosetForm) -> CosetForm {
        let s = State {
            coset: x.coset,
            power: x.power,
        };
        self.project(self.engine.inv_state(s))
    }

    /// The raw eight-coset state of a word, before any quotient projection.
    pub(crate) fn reduce_raw(&self, w: &Word) -> State {
        let mut s = State::identity();
        for &(g, e) in &w.0 {
            s = match g {
                Gen::A => self.engine.mul_a_pow(s, e),
                Gen::R => self.engine.mul_r_pow(s, e),
            };
        }
        s
    }
}

/// Quotient of the eight-coset group by the normal closure of
/// `(r^2 a)(a^s r^2)^-1`, via union-find over the 16k states.
fn build_quotient(engine: &Engine, s_exp: u32) -> Result<Quotient> {
    let n = engine.state_count();
    // z = r^2 a r^-2 a^-s
    let mut z = State::identity();
    z = engine.mul_r_pow(z, 2);
    z = engine.mul_a_pow(z, 1);
    z = engine.mul_r_pow(z, -2);
    z = engine.mul_a_pow(z, -(s_exp as i64));

    let mut uf: Vec<usize> = (0..n).collect();
    fn find(uf: &mut Vec<usize>, mut x: usize) -> usize {
        while uf[x] != x {
            uf[x] = uf[uf[x]];
            x = uf[x];
        }
        x
    }
    fn union(uf: &mut Vec<usize>, a: usize, b: usize) {
        let (ra, rb) = (find(uf, a), find(uf, b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            uf[hi] = lo;
        }
    }

    // the conjugates g z g^-1 generate the normal closure
    for gid in 0..n {
        let g = engine.state_from_id(gid);
        let gz = engine.mul_state(g, z);
        let conj = engine.mul_state(gz, engine.inv_state(g));
        for xid in 0..n {
            let x = engine.state_from_id(xid);
            let xc = engine.mul_state(x, conj);
            union(&mut uf, xid, engine.state_id(xc));
        }
    }

    // canonical label of each class: lexicographically least member with a
    // four-coset representative (the quotient keeps only A, rA, r^2A, r^3A)
    let mut class_small: Vec<Option<CosetForm>> = vec![None; n];
    let mut roots: std::collections::BTreeSet<usize> = std::collections::BTreeSet::new();
    for id in 0..n {
        let root = find(&mut uf, id);
        roots.insert(root);
        let st = engine.state_from_id(id);
        if st.coset < 4 {
            let cand = CosetForm {
                coset: st.coset,
                power: st.power,
            };
            let slot = &mut class_small[root];
            if slot.is_none_or(|prev| cand < prev) {
                *slot = Some(cand);
            }
        }
    }
    let order = roots.len();
    let mut class_rep = vec![CosetForm { coset: 0, power: 0 }; n];
    for id in 0..n {
        let root = find(&mut uf, id);
        class_rep[id] = class_small[root]
            .ok_or_else(|| Error::Rewrite("quotient class contains no four-coset form".into()))?;
    }
    Ok(Quotient { class_rep, order })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presentations_verify_for_all_k() {
        for k in [12u32, 20, 28, 36] {
            Presentation::new(k).unwrap();
        }
    }

    #[test]
    fn invalid_k_rejected() {
        assert!(Presentation::new(10).is_err());
        assert!(Presentation::new(16).is_err());
        assert!(Presentation::new(4).is_err());
    }

    #[test]
    fn empty_word_is_identity() {
        let p = Presentation::new(12).unwrap();
        assert_eq!(
            p.reduce_word(&Word::empty()),
            CosetForm { coset: 0, power: 0 }
        );
    }

    #[test]
    fn spec_example_words() {
        let p = Presentation::new(12).unwrap();
        // r a r lies in A
        let w = Word::parse("r a r").unwrap();
        assert_eq!(p.reduce_word(&w).coset, 0);
        // r a2 r lies in a r^2 A
        let w = Word::parse("r a2 r").unwrap();
        assert_eq!(p.reduce_word(&w).coset, 4);
    }

    #[test]
    fn multiplication_is_associative_on_samples() {
        let p = Presentation::new(20).unwrap();
        let mut rng = 1u64;
        let mut next = move || {
            rng = rng
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            rng >> 16
        };
        for _ in 0..200 {
            let x = CosetForm {
                coset: (next() % 8) as u8,
                power: (next() % 40) as u32,
            };
            let y = CosetForm {
                coset: (next() % 8) as u8,
                power: (next() % 40) as u32,
            };
            let z = CosetForm {
                coset: (next() % 8) as u8,
                power: (next() % 40) as u32,
            };
            assert_eq!(p.mul(p.mul(x, y), z), p.mul(x, p.mul(y, z)));
        }
    }

    #[test]
    fn inverses_multiply_to_identity() {
        let p = Presentation::new(12).unwrap();
        for c in 0..8u8 {
            for t in [0u32, 1, 5, 23] {
                let x = CosetForm { coset: c, power: t };
                assert_eq!(p.mul(x, p.inv(x)), p.identity());
                assert_eq!(p.mul(p.inv(x), x), p.identity());
            }
        }
    }

    #[test]
    fn reduce_is_a_congruence_on_random_words() {
        let p = Presentation::new(12).unwrap();
        let mut rng = 7u64;
        let mut next = move || {
            rng = rng
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            rng >> 16
        };
        for _ in 0..500 {
            let mut u = Vec::new();
            let mut v = Vec::new();
            for _ in 0..(next() % 6 + 1) {
                let g = if next() % 2 == 0 { Gen::R } else { Gen::A };
                u.push((g, (next() % 11) as i64 - 5));
            }
            for _ in 0..(next() % 6 + 1) {
                let g = if next() % 2 == 0 { Gen::R } else { Gen::A };
                v.push((g, (next() % 11) as i64 - 5));
            }
            let mut uv = u.clone();
            uv.extend_from_slice(&v);
            let lhs = p.reduce_word(&Word(uv));
            let rhs = p.mul(p.reduce_word(&Word(u)), p.reduce_word(&Word(v)));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn commuting_case_requires_the_consistent_exponent() {
        assert!(Presentation::new_commuting(12, 7).is_ok());
        assert!(Presentation::new_commuting(12, 5).is_err());
        assert!(Presentation::new_commuting(12, 19).is_err());
    }

    #[test]
    fn commuting_case_collapses_to_two_k() {
        // Imposing r^2 a = a^s r^2 collapses the presented group far below
        // the eight-coset order: (r^2 a r^-2 a^-s)^2 = a^k is derivable, and
        // conjugating by r lands a proper power of a in the normal closure.
        // Exhaustive enumeration of the quotient gives order 2k.
        let p = Presentation::new_commuting(12, 7).unwrap();
        assert_eq!(p.order_bound(), 24);
        // its defining relation holds in the quotient
        let lhs = p.reduce_word(&Word::parse("r2 a").unwrap());
        let rhs = p.reduce_word(&Word::parse("a7 r2").unwrap());
        assert_eq!(lhs, rhs);
        assert!(lhs.coset < 4);
    }
}
