//! Normalizers of subgroups, the Weyl action on fixed-point spaces, and the
//! explicit normalizer-generator identities of the R^8 family.

use nalgebra::DMatrix;

use super::{fixed_subspace, Subspace};
use crate::matgroup::{
    build_g8_generators, close_group, close_matrices, g8_gen_a, FamilyTag, FiniteMatrixGroup,
};
use crate::quaternion::{pair, quaternion_pair_to_matrix, Quaternion, QuaternionPair};
use crate::{linalg, Error, Result, EPS_ORTH};

/// The normalizer `{g : g H g^-1 = H}` of a subgroup given by element
/// indices. Errors when `set` is not closed under multiplication.
pub fn normalizer(group: &FiniteMatrixGroup, set: &[usize]) -> Result<Vec<usize>> {
    if !group.is_subgroup(set) {
        return Err(Error::Parameter(
            "normalizer argument is not a subgroup".into(),
        ));
    }
    let mut sorted: Vec<usize> = set.to_vec();
    sorted.sort_unstable();
    Ok((0..group.order())
        .filter(|&g| group.conjugate_set(&sorted, g) == sorted)
        .collect())
}

/// The group of restrictions of normalizer elements to `Fix(H)`, expressed
/// in the subspace basis. Returns the restriction group together with the
/// fixed subspace. Faults if some normalizer element fails to preserve the
/// fixed space.
pub fn weyl_action(
    group: &FiniteMatrixGroup,
    set: &[usize],
) -> Result<(FiniteMatrixGroup, Subspace)> {
    let fix = fixed_subspace(group, set)?;
    if fix.dim() == 0 {
        return Err(Error::Parameter(
            "the subgroup has a trivial fixed space".into(),
        ));
    }
    let norm = normalizer(group, set)?;
    let b = fix.basis_matrix();
    let mut restrictions: Vec<DMatrix<f64>> = Vec::new();
    for &gi in &norm {
        let g = group.element(gi);
        for col in fix.basis() {
            let image = g * col;
            if !fix.contains(&image) {
                return Err(Error::Structural(
                    "normalizer element does not preserve the fixed space".into(),
                ));
            }
        }
        restrictions.push(b.transpose() * g * &b);
    }
    let weyl = close_matrices(
        fix.dim(),
        FamilyTag::Custom,
        &restrictions,
        restrictions.len() * 2,
    )?;
    Ok((weyl, fix))
}

/// Report on the pair of subgroups `<R2^2>` and `<-R2^2>`.
#[derive(Debug, Clone, serde::Serialize)]
pub struct FixPairReport {
    pub l: u32,
    pub fix_h_dim: usize,
    pub fix_h_prime_dim: usize,
    pub normalizers_equal: bool,
    pub normalizer_order: usize,
    pub index_in_group: usize,
    pub direct_sum_dim: usize,
    /// Every element outside the normalizer swaps the two fixed spaces.
    pub outside_elements_swap: bool,
    pub weyl_order: usize,
}

/// Indices of `<R2^2>` and `<-R2^2>` in the closed group.
pub fn h_pair_indices(
    group: &FiniteMatrixGroup,
    gens: &crate::matgroup::GeneratorSet,
) -> Result<(Vec<usize>, Vec<usize>)> {
    let r2sq = &gens.generators[1].mat * &gens.generators[1].mat;
    let h = group
        .find(&r2sq)
        .ok_or_else(|| Error::Internal("R2^2 not found in the closed group".into()))?;
    let neg = -&r2sq;
    let hp = group
        .find(&neg)
        .ok_or_else(|| Error::Internal("-R2^2 not found in the closed group".into()))?;
    Ok((
        group.generated_subgroup(&[h]),
        group.generated_subgroup(&[hp]),
    ))
}

/// Computes the full fixed-space / normalizer / Weyl structure for the pair
/// `H = <R2^2>`, `H' = <-R2^2>` of the R^8 family.
pub fn fix_h_pair_report(l: u32) -> Result<FixPairReport> {
    let gens = build_g8_generators(l)?;
    let group = close_group(&gens)?;
    let (h, hp) = h_pair_indices(&group, &gens)?;
    let fix_h = fixed_subspace(&group, &h)?;
    let fix_hp = fixed_subspace(&group, &hp)?;
    let n_h = normalizer(&group, &h)?;
    let n_hp = normalizer(&group, &hp)?;
    let (weyl, _) = weyl_action(&group, &h)?;

    let outside_elements_swap = (0..group.order())
        .filter(|g| n_h.binary_search(g).is_err())
        .all(|g| {
            let m = group.element(g);
            fix_h.basis().iter().all(|b| fix_hp.contains(&(m * b)))
                && fix_hp.basis().iter().all(|b| fix_h.contains(&(m * b)))
        });

    Ok(FixPairReport {
        l,
        fix_h_dim: fix_h.dim(),
        fix_h_prime_dim: fix_hp.dim(),
        normalizers_equal: n_h == n_hp,
        normalizer_order: n_h.len(),
        index_in_group: group.order() / n_h.len(),
        direct_sum_dim: fix_h.sum_dim(&fix_hp)?,
        outside_elements_swap,
        weyl_order: weyl.order(),
    })
}

/// Exponents and block identities of the normalizer generators.
#[derive(Debug, Clone, serde::Serialize)]
pub struct OmegaReport {
    pub l: u32,
    pub tau: u32,
    pub q1: u32,
    pub q2: u32,
    pub q3: u32,
    pub c: u32,
    /// Max deviation of the upper-left 4x4 block of Omega_j from M_j.
    pub block_deviations: [f64; 3],
    /// Max deviation of the same block from -M_j (the central element A^k
    /// flips the sign; a deviation of 0 here with a nonzero strict deviation
    /// means the formula is off by exactly that central factor).
    pub block_deviations_to_center: [f64; 3],
    /// Exponents q for which the block equation does hold exactly, found by
    /// scanning `0..k`; empty when no exponent matches.
    pub matching_exponents: [Option<u32>; 3],
    /// All three Omega_j lie in the normalizer of `<R2^2>`.
    pub omegas_in_normalizer: bool,
    pub all_blocks_match: bool,
    pub all_blocks_match_up_to_center: bool,
}

/// Exponent formulas for the normalizer generator words, by residue of tau.
pub fn omega_exponents(tau: u32) -> (u32, u32, u32, u32) {
    let q1 = if tau % 4 == 3 {
        2 * tau + 2
    } else {
        8 * tau - 16
    };
    let q2 = if tau % 4 == 3 { 3 * tau } else { tau };
    let c = match tau % 8 {
        1 => 5,
        3 => 3,
        5 => 1,
        _ => 7,
    };
    let q3 = (c * tau).div_ceil(2);
    (q1, q2, q3, c)
}

/// Verifies that `Omega_1 = Xi_2 Xi_3^q1`, `Omega_2 = Xi_3^q2`,
/// `Omega_3 = Xi_1 Xi_2 Xi_3^q3` (with `Xi_1 = A R1`, `Xi_2 = R1^2`,
/// `Xi_3 = A^2`) restrict to the quaternion-pair generator matrices
/// `M_1 = [e_tau, i]`, `M_2 = [1, j]`, `M_3 = [j, j]` on the fixed space of
/// `<R2^2>` (the upper-left 4x4 block), and that each `Omega_j` lies in the
/// normalizer.
pub fn verify_omega_formulas(l: u32) -> Result<OmegaReport> {
    let gens = build_g8_generators(l)?;
    let tau = match gens.family {
        FamilyTag::G8 { tau, .. } => tau,
        _ => unreachable!(),
    };
    let group = close_group(&gens)?;
    let r1 = gens.generators[0].mat.clone();
    let a = g8_gen_a(&gens)?.mat;

    let xi1 = &a * &r1;
    let xi2 = &r1 * &r1;
    let xi3 = &a * &a;
    let (q1, q2, q3, c) = omega_exponents(tau);

    let powm = |m: &DMatrix<f64>, e: u32| {
        let mut out = DMatrix::identity(8, 8);
        for _ in 0..e {
            out = &out * m;
        }
        out
    };
    let omegas = [
        &xi2 * powm(&xi3, q1),
        powm(&xi3, q2),
        &xi1 * &xi2 * powm(&xi3, q3),
    ];

    let e_tau = Quaternion::from_angle(std::f64::consts::PI / tau as f64);
    let theta: [QuaternionPair; 3] = [
        QuaternionPair::new(e_tau, Quaternion::I)?,
        pair([1.0, 0.0, 0.0, 0.0], [0.0, 0.0, 1.0, 0.0])?,
        pair([0.0, 0.0, 1.0, 0.0], [0.0, 0.0, 1.0, 0.0])?,
    ];

    let (h, _) = h_pair_indices(&group, &gens)?;
    let norm = normalizer(&group, &h)?;

    let k = 4 + 8 * l;
    let mut block_deviations = [0.0f64; 3];
    let mut block_deviations_to_center = [0.0f64; 3];
    let mut matching_exponents: [Option<u32>; 3] = [None; 3];
    let mut omegas_in_normalizer = true;
    for (j, omega) in omegas.iter().enumerate() {
        let m_j = quaternion_pair_to_matrix(theta[j])?.mat;
        let block = omega.view((0, 0), (4, 4)).clone_owned();
        block_deviations[j] = linalg::max_dist(&block, &m_j);
        block_deviations_to_center[j] = linalg::max_dist(&block, &(-&m_j));
        let idx = group
            .find(omega)
            .ok_or_else(|| Error::Internal("Omega word left the group".into()))?;
        if norm.binary_search(&idx).is_err() {
            omegas_in_normalizer = false;
        }
        // scan for the exponent that does satisfy the block equation
        for q in 0..k {
            let word = match j {
                0 => &xi2 * powm(&xi3, q),
                1 => powm(&xi3, q),
                _ => &xi1 * &xi2 * powm(&xi3, q),
            };
            let b = word.view((0, 0), (4, 4)).clone_owned();
            if linalg::max_dist(&b, &m_j) < EPS_ORTH {
                matching_exponents[j] = Some(q);
                break;
            }
        }
    }
    let all_blocks_match = block_deviations.iter().all(|d| *d < EPS_ORTH);
    let all_blocks_match_up_to_center = block_deviations
        .iter()
        .zip(block_deviations_to_center.iter())
        .all(|(d, dc)| *d < EPS_ORTH || *dc < EPS_ORTH);
    Ok(OmegaReport {
        l,
        tau,
        q1,
        q2,
        q3,
        c,
        block_deviations,
        block_deviations_to_center,
        matching_exponents,
        omegas_in_normalizer,
        all_blocks_match,
        all_blocks_match_up_to_center,
    })
}
