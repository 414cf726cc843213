use std::fmt;

/// Canonical index of a PBW/Fock basis vector of a graded module.
///
/// The word conventions follow the printed normal forms: Virasoro words are
/// ascending, L(-1)-factors leftmost; affine and Heisenberg words are sorted
/// descending by mode so the deepest creation operator acts last.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum BasisKey {
    /// L(-n_1)...L(-n_k) applied to the cyclic vector, with n_1 <= ... <= n_k.
    Vir(Vec<u32>),
    /// Affine PBW word of (mode n >= 1, g-basis index) pairs, canonically
    /// sorted descending, applied to the grade-0 basis vector `vec`.
    Aff { word: Vec<(u32, u8)>, vec: u8 },
    /// Heisenberg word of (mode n >= 1, Cartan index) pairs, sorted
    /// descending, applied to the lattice point gamma + sum coords_i alpha_i.
    Fock { heis: Vec<(u32, u8)>, point: Vec<i32> },
}

impl BasisKey {
    pub fn vacuum_vir() -> Self {
        BasisKey::Vir(vec![])
    }

    /// The conformal element L(-2)1 in a Virasoro VOA.
    pub fn omega() -> Self {
        BasisKey::Vir(vec![2])
    }

    pub fn fock_vacuum(rank: usize) -> Self {
        BasisKey::Fock {
            heis: vec![],
            point: vec![0; rank],
        }
    }

    pub fn fock_point(point: Vec<i32>) -> Self {
        BasisKey::Fock {
            heis: vec![],
            point,
        }
    }
}

impl fmt::Display for BasisKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisKey::Vir(parts) => {
                if parts.is_empty() {
                    return write!(f, "w");
                }
                let mut i = 0;
                while i < parts.len() {
                    let n = parts[i];
                    let mut mult = 1;
                    while i + mult < parts.len() && parts[i + mult] == n {
                        mult += 1;
                    }
                    if mult == 1 {
                        write!(f, "L(-{n})")?;
                    } else {
                        write!(f, "L(-{n})^{mult}")?;
                    }
                    i += mult;
                }
                write!(f, "w")
            }
            BasisKey::Aff { word, vec } => {
                for (n, g) in word {
                    write!(f, "x{g}(-{n})")?;
                }
                write!(f, "u{vec}")
            }
            BasisKey::Fock { heis, point } => {
                let mut i = 0;
                while i < heis.len() {
                    let (n, idx) = heis[i];
                    let mut mult = 1;
                    while i + mult < heis.len() && heis[i + mult] == (n, idx) {
                        mult += 1;
                    }
                    if mult == 1 {
                        write!(f, "a{idx}(-{n})")?;
                    } else {
                        write!(f, "a{idx}(-{n})^{mult}")?;
                    }
                    i += mult;
                }
                write!(f, "e[")?;
                for (j, k) in point.iter().enumerate() {
                    if j > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{k}")?;
                }
                write!(f, "]")
            }
        }
    }
}
