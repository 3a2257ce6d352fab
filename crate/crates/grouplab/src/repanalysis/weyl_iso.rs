//! Bounded backtracking isomorphism search between two closed matrix groups,
//! filtered by element-order histograms.

use std::collections::BTreeMap;

use crate::matgroup::{element_order, FiniteMatrixGroup};

/// Outcome of an isomorphism search; running out of budget is distinct from
/// a disproof.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum IsoOutcome {
    Isomorphic,
    NotIsomorphic,
    Undecided,
}

/// Histogram of element orders, an isomorphism invariant.
pub fn order_histogram(group: &FiniteMatrixGroup) -> BTreeMap<usize, usize> {
    let bound = 4 * group.order().max(2);
    let mut hist = BTreeMap::new();
    for i in 0..group.order() {
        let o = element_order(group.element(i), bound).expect("finite group element order");
        *hist.entry(o).or_insert(0usize) += 1;
    }
    hist
}

struct Search<'a> {
    domain: &'a FiniteMatrixGroup,
    codomain: &'a FiniteMatrixGroup,
    gens: Vec<usize>,
    candidates: Vec<Vec<usize>>,
    budget: usize,
    nodes: usize,
}

impl<'a> Search<'a> {
    /// Extends the partial map by closing under products with the assigned
    /// generators; detects conflicts with injectivity or well-definedness.
    fn close(&self, map: &mut Vec<Option<usize>>, used: &mut Vec<bool>, assigned: usize) -> bool {
        let mut work: Vec<usize> = (0..self.domain.order())
            .filter(|&x| map[x].is_some())
            .collect();
        while let Some(x) = work.pop() {
            let fx = map[x].unwrap();
            for gi in 0..assigned {
                let g = self.gens[gi];
                let img_g = map[g].expect("assigned generator has an image");
                let xg = self.domain.mul(x, g);
                let y = self.codomain.mul(fx, img_g);
                match map[xg] {
                    Some(prev) if prev != y => return false,
                    Some(_) => {}
                    None => {
                        if used[y] {
                            return false;
                        }
                        map[xg] = Some(y);
                        used[y] = true;
                        work.push(xg);
                    }
                }
            }
        }
        true
    }

    fn assign(&mut self, map: Vec<Option<usize>>, used: Vec<bool>, next: usize) -> Option<bool> {
        if self.nodes >= self.budget {
            return None;
        }
        self.nodes += 1;
        if next == self.gens.len() {
            // all generators placed; the closure reached every element iff
            // the map is a bijection
            if map.iter().all(|m| m.is_some()) {
                return Some(true);
            }
            return Some(false);
        }
        let g = self.gens[next];
        for cand in self.candidates[next].clone() {
            let mut m2 = map.clone();
            let mut u2 = used.clone();
            match m2[g] {
                Some(prev) if prev != cand => continue,
                Some(_) => {}
                None => {
                    if u2[cand] {
                        continue;
                    }
                    m2[g] = Some(cand);
                    u2[cand] = true;
                }
            }
            if !self.close(&mut m2, &mut u2, next + 1) {
                continue;
            }
            match self.assign(m2, u2, next + 1) {
                Some(true) => return Some(true),
                Some(false) => continue,
                None => return None,
            }
        }
        Some(false)
    }
}

/// Decides whether `weyl` is isomorphic to `reference` by bounded
/// backtracking over generator images. The map is built from the reference
/// group's generators, candidates filtered by element order.
pub fn verify_weyl_is_g3(
    weyl: &FiniteMatrixGroup,
    reference: &FiniteMatrixGroup,
    budget: usize,
) -> IsoOutcome {
    if weyl.order() != reference.order() {
        return IsoOutcome::NotIsomorphic;
    }
    if order_histogram(weyl) != order_histogram(reference) {
        return IsoOutcome::NotIsomorphic;
    }
    let gens: Vec<usize> = reference.generator_indices().to_vec();
    assert!(!gens.is_empty(), "reference group must carry generators");
    let bound = 4 * weyl.order().max(2);
    let orders_cod: Vec<usize> = (0..weyl.order())
        .map(|i| element_order(weyl.element(i), bound).expect("finite order"))
        .collect();
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&g| {
            let o = element_order(reference.element(g), bound).expect("finite order");
            (0..weyl.order()).filter(|&i| orders_cod[i] == o).collect()
        })
        .collect();

    let mut map: Vec<Option<usize>> = vec![None; reference.order()];
    let mut used = vec![false; weyl.order()];
    map[reference.identity_index()] = Some(weyl.identity_index());
    used[weyl.identity_index()] = true;

    let mut search = Search {
        domain: reference,
        codomain: weyl,
        gens,
        candidates,
        budget,
        nodes: 0,
    };
    match search.assign(map, used, 0) {
        Some(true) => IsoOutcome::Isomorphic,
        Some(false) => IsoOutcome::NotIsomorphic,
        None => IsoOutcome::Undecided,
    }
}
