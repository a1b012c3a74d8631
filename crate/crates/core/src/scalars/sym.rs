use std::fmt;
use std::sync::OnceLock;

/// Number of symbols in the closed vocabulary.
pub const NSYM: usize = 35;

const NAMED: [&str; 15] = [
    "f0", "f1", "f2", "f3", "f4", "x", "y", "z", "h", "q", "k", "lam", "rbar", "c", "s",
];

/// A symbol of the fixed polynomial vocabulary.
///
/// The order of the vocabulary is the variable order used by the lexicographic
/// monomial order: `f0 > f1 > ... > s > R0101 > ...`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Sym(u8);

impl Sym {
    pub const F0: Sym = Sym(0);
    pub const F1: Sym = Sym(1);
    pub const F2: Sym = Sym(2);
    pub const F3: Sym = Sym(3);
    pub const F4: Sym = Sym(4);
    /// `x = f2^2 - f1 f3`
    pub const X: Sym = Sym(5);
    /// `y = f1^2 - f0 f2`
    pub const Y: Sym = Sym(6);
    /// `z = f1 f2 - f0 f3`
    pub const Z: Sym = Sym(7);
    /// `h = x y - z^2`
    pub const H: Sym = Sym(8);
    /// `q = x y - z^2/4`, the discriminant of the induced metric blocks.
    pub const Q: Sym = Sym(9);
    pub const K: Sym = Sym(10);
    pub const LAM: Sym = Sym(11);
    pub const RBAR: Sym = Sym(12);
    pub const C: Sym = Sym(13);
    pub const S: Sym = Sym(14);

    pub fn f(i: usize) -> Sym {
        assert!(i < 5, "f-index out of range");
        Sym(i as u8)
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn from_index(i: usize) -> Sym {
        assert!(i < NSYM);
        Sym(i as u8)
    }

    pub fn all() -> impl Iterator<Item = Sym> {
        (0..NSYM as u8).map(Sym)
    }

    /// True for the derived symbols x, y, z, h, q that `expand` eliminates.
    pub fn is_derived(self) -> bool {
        (5..=9).contains(&self.0)
    }

    /// The canonical Riemann symbol with these indices, if the quadruple is canonical.
    pub fn riemann(i: u8, j: u8, p: u8, q: u8) -> Option<Sym> {
        riemann_table()
            .iter()
            .position(|r| *r == [i, j, p, q])
            .map(|k| Sym(15 + k as u8))
    }

    pub fn riemann_indices(self) -> Option<[u8; 4]> {
        (self.0 >= 15).then(|| riemann_table()[(self.0 - 15) as usize])
    }

    pub fn name(self) -> String {
        match self.riemann_indices() {
            Some([i, j, p, q]) => format!("R{i}{j}{p}{q}"),
            None => NAMED[self.0 as usize].to_string(),
        }
    }

    pub fn parse(name: &str) -> Option<Sym> {
        if let Some(i) = NAMED.iter().position(|n| *n == name) {
            return Some(Sym(i as u8));
        }
        let digits = name.strip_prefix('R')?;
        let d: Vec<u8> = digits.bytes().map(|b| b.wrapping_sub(b'0')).collect();
        if d.len() != 4 || d.iter().any(|&v| v > 3) {
            return None;
        }
        Sym::riemann(d[0], d[1], d[2], d[3])
    }
}

/// The 20 independent Riemann components of a 4-manifold in canonical form:
/// `i < j`, `p < q`, `(i,j) <= (p,q)`, with `R0312` removed by the first Bianchi identity.
pub fn riemann_table() -> &'static [[u8; 4]; 20] {
    static TABLE: OnceLock<[[u8; 4]; 20]> = OnceLock::new();
    TABLE.get_or_init(|| {
        let pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        let mut out = [[0u8; 4]; 20];
        let mut n = 0;
        for (a, &(i, j)) in pairs.iter().enumerate() {
            for &(p, q) in &pairs[a..] {
                if [i, j, p, q] == [0, 3, 1, 2] {
                    continue;
                }
                out[n] = [i, j, p, q];
                n += 1;
            }
        }
        assert_eq!(n, 20);
        out
    })
}

impl fmt::Debug for Sym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl fmt::Display for Sym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for s in Sym::all() {
            assert_eq!(Sym::parse(&s.name()), Some(s));
        }
    }

    #[test]
    fn dependent_component_is_absent() {
        assert!(Sym::riemann(0, 3, 1, 2).is_none());
        assert!(Sym::riemann(0, 1, 2, 3).is_some());
        assert_eq!(riemann_table().len(), 20);
    }
}
