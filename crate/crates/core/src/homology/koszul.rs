use crate::comm::CommPresentation;
use crate::dimension::{is_regular_sequence, SequenceCheck};
use crate::error::{Error, Result};
use crate::poly::Polynomial;

/// The Koszul complex `0 -> Λ^r A^r -> ... -> A^r -> A -> 0` of a sequence
/// `s_1..s_r`, with `∂(e_S) = Σ_p (-1)^p s_{S_p} e_{S \ S_p}` for increasing `S`.
#[derive(Clone, Debug)]
pub struct KoszulComplex {
    presentation: CommPresentation,
    sequence: Vec<Polynomial>,
    /// `differentials[n - 1]` is `∂_n: K_n -> K_{n-1}` as rows of polynomial entries.
    differentials: Vec<Vec<Vec<Polynomial>>>,
}

fn subsets(r: usize, n: usize) -> Vec<u64> {
    let mut out: Vec<u64> = (0..1u64 << r).filter(|m| m.count_ones() as usize == n).collect();
    // increasing index tuples in lexicographic order
    out.sort_by_key(|&m| (0..r).filter(|i| m >> i & 1 == 1).collect::<Vec<_>>());
    out
}

pub fn koszul_complex(a: &CommPresentation, seq: &[Polynomial]) -> Result<KoszulComplex> {
    if seq.is_empty() {
        return Err(Error::Input("the Koszul complex needs a nonempty sequence".into()));
    }
    if seq.len() > 16 {
        return Err(Error::Unsupported("Koszul complexes of sequences longer than 16".into()));
    }
    let r = seq.len();
    let reduced = seq.iter().map(|s| a.normal_form(s)).collect::<Result<Vec<_>>>()?;
    let ring = a.ring();
    let mut differentials = Vec::with_capacity(r);
    for n in 1..=r {
        let cols = subsets(r, n);
        let rows = subsets(r, n - 1);
        let mut mat = vec![vec![Polynomial::zero(ring); cols.len()]; rows.len()];
        for (c, &s) in cols.iter().enumerate() {
            let members: Vec<usize> = (0..r).filter(|i| s >> i & 1 == 1).collect();
            for (p, &i) in members.iter().enumerate() {
                let row = rows.iter().position(|&t| t == s & !(1 << i)).expect("face is a subset");
                mat[row][c] = if p % 2 == 0 { reduced[i].clone() } else { reduced[i].neg() };
            }
        }
        differentials.push(mat);
    }
    Ok(KoszulComplex { presentation: a.clone(), sequence: reduced, differentials })
}

impl KoszulComplex {
    pub fn sequence(&self) -> &[Polynomial] {
        &self.sequence
    }

    /// Free ranks `C(r, n)` of `K_0..K_r`.
    pub fn ranks(&self) -> Vec<usize> {
        let mut out = vec![1];
        out.extend(self.differentials.iter().map(|d| d.first().map_or(0, Vec::len)));
        out
    }

    pub fn differential(&self, n: usize) -> Option<&Vec<Vec<Polynomial>>> {
        self.differentials.get(n.checked_sub(1)?)
    }

    /// Whether `∂_n ∂_{n+1} ≡ 0` modulo the relations for every `n`.
    pub fn is_complex(&self) -> Result<bool> {
        let ring = self.presentation.ring();
        for w in self.differentials.windows(2) {
            let (lower, upper) = (&w[0], &w[1]);
            for row in lower {
                for c in 0..upper[0].len() {
                    let mut acc = Polynomial::zero(ring);
                    for (k, entry) in row.iter().enumerate() {
                        acc = acc.add(&entry.mul(&upper[k][c]));
                    }
                    if !self.presentation.normal_form(&acc)?.is_zero() {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }
}

/// `dim Tor_n^A(A/(seq), A/(seq))` for `n = 0..=n_max`, as ranks of free `A/(seq)`-modules.
///
/// The sequence must be regular so that the Koszul complex resolves `A/(seq)`.
/// After tensoring with `A/(seq)` every differential is reduced modulo
/// `I + (seq)`; all entries vanish, so `Tor_n` is free of rank `C(r, n)`.
pub fn tor_via_koszul(a: &CommPresentation, seq: &[Polynomial], n_max: usize) -> Result<Vec<usize>> {
    if let SequenceCheck::FailsAt { position, reason } = is_regular_sequence(a, seq)? {
        return Err(Error::Input(format!(
            "not a regular sequence (position {position}: {reason}); the Koszul complex is not a resolution"
        )));
    }
    let k = koszul_complex(a, seq)?;
    let residue = a.quotient(seq)?;
    for d in &k.differentials {
        for row in d {
            for entry in row {
                if !residue.normal_form(entry)?.is_zero() {
                    return Err(Error::Invalid("Koszul differential survives reduction modulo the sequence".into()));
                }
            }
        }
    }
    let ranks = k.ranks();
    Ok((0..=n_max).map(|n| ranks.get(n).copied().unwrap_or(0)).collect())
}
