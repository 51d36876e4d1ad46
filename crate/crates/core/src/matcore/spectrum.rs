use super::scalar::{lex_cmp, Cmplx};
use super::tolerance::Tolerance;

/// Eigenvalue multiset with its symmetry verdicts.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumReport {
    pub eigenvalues: Vec<Cmplx>,
    /// Invariant under negation.
    pub symmetric: bool,
    /// Odd cardinality and symmetric after removing the center.
    pub c_symmetric: bool,
    pub center: Option<Cmplx>,
}

/// Largest distance in a greedy nearest-neighbour matching of two multisets after lexicographic
/// sorting; `None` when the cardinalities differ.
pub fn multiset_distance(a: &[Cmplx], b: &[Cmplx]) -> Option<f64> {
    if a.len() != b.len() {
        return None;
    }
    let mut a = a.to_vec();
    a.sort_by(lex_cmp);
    let mut pool = b.to_vec();
    let mut worst: f64 = 0.0;
    for x in a {
        let (idx, dist) = pool
            .iter()
            .enumerate()
            .map(|(i, y)| (i, (x - y).norm()))
            .fold(
                (0, f64::INFINITY),
                |best, cur| if cur.1 < best.1 { cur } else { best },
            );
        worst = worst.max(dist);
        pool.swap_remove(idx);
    }
    Some(worst)
}

/// One slot of a negation pairing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NegationPair {
    /// Indices of a value and of its (approximate) negation.
    Pair(usize, usize),
    /// A value within the cutoff of zero left without a partner.
    Zero(usize),
}

/// Greedy pairing of each value with the remaining value nearest to its negation; `None` when
/// some value has no partner within the cutoff.
pub fn pair_by_negation(
    values: &[Cmplx],
    indices: &[usize],
    cutoff: f64,
) -> Option<Vec<NegationPair>> {
    let mut pool: Vec<usize> = indices.to_vec();
    pool.sort_by(|&i, &j| lex_cmp(&values[i], &values[j]));
    let mut out = Vec::new();
    while let Some(i) = pool.first().copied() {
        pool.remove(0);
        let target = -values[i];
        let best = pool
            .iter()
            .enumerate()
            .map(|(p, &j)| (p, (values[j] - target).norm()))
            .fold(None, |best: Option<(usize, f64)>, cur| match best {
                Some(b) if b.1 <= cur.1 => Some(b),
                _ => Some(cur),
            });
        match best {
            Some((p, dist)) if dist <= cutoff => {
                out.push(NegationPair::Pair(i, pool.remove(p)));
            }
            _ if values[i].norm() <= cutoff => out.push(NegationPair::Zero(i)),
            _ => return None,
        }
    }
    Some(out)
}

/// Index of the value nearest to `trace`.
pub fn nearest_to(values: &[Cmplx], trace: Cmplx) -> Option<usize> {
    (0..values.len()).min_by(|&i, &j| {
        (values[i] - trace)
            .norm()
            .total_cmp(&(values[j] - trace).norm())
    })
}

/// Symmetry verdicts with an explicit pairing cutoff.
pub fn spectrum_symmetry_with_cutoff(eigs: &[Cmplx], trace: Cmplx, cutoff: f64) -> SpectrumReport {
    let all: Vec<usize> = (0..eigs.len()).collect();
    let symmetric = pair_by_negation(eigs, &all, cutoff).is_some();
    let mut c_symmetric = false;
    let mut center = None;
    if eigs.len() % 2 == 1 {
        let c = nearest_to(eigs, trace).expect("odd cardinality is nonempty");
        let rest: Vec<usize> = all.iter().copied().filter(|&i| i != c).collect();
        if pair_by_negation(eigs, &rest, cutoff).is_some() {
            c_symmetric = true;
            center = Some(eigs[c]);
        }
    }
    SpectrumReport {
        eigenvalues: eigs.to_vec(),
        symmetric,
        c_symmetric,
        center,
    }
}

/// Symmetry verdicts with cutoff `max(abs, rel * max(1, max |λ|))`.
pub fn spectrum_symmetry(eigs: &[Cmplx], trace: Cmplx, tol: Tolerance) -> SpectrumReport {
    let scale = eigs.iter().map(|z| z.norm()).fold(1.0, f64::max);
    spectrum_symmetry_with_cutoff(eigs, trace, tol.cutoff(scale))
}
