use std::collections::BTreeMap;

use super::Form;
use crate::scalars::{int, Ring};

/// Basis words of the invariant forms, written in the index order of the
/// adapted frame conventions (`e41`, `e315`, ...). Signs are applied when a
/// word is sorted.
const STANDARD: &[(&str, &[(&[u8], i64)])] = &[
    ("theta", &[(&[0], 1)]),
    ("dtheta", &[(&[4, 1], 1), (&[5, 2], 1), (&[6, 3], 1)]),
    ("alpha", &[(&[4, 5, 6], 1)]),
    ("alpha1", &[(&[1, 5, 6], 1), (&[2, 6, 4], 1), (&[3, 4, 5], 1)]),
    ("alpha2", &[(&[1, 2, 6], 1), (&[2, 3, 4], 1), (&[3, 1, 5], 1)]),
    ("alpha3", &[(&[1, 2, 3], 1)]),
    ("vol", &[(&[0, 1, 2, 3], 1)]),
    ("VolG", &[(&[0, 1, 2, 3, 4, 5, 6], 1)]),
];

/// Atoms accepted by the form grammar.
pub fn atom_names() -> &'static [&'static str] {
    &["theta", "dtheta", "alpha", "alpha1", "alpha2", "alpha3", "vol", "Vol", "VolG", "sigma0"]
}

/// Table of basis words for the named invariant forms. The standard table
/// can be perturbed term by term to test that checks notice sign errors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AtomTable {
    words: BTreeMap<String, Vec<(Vec<u8>, i64)>>,
}

impl Default for AtomTable {
    fn default() -> Self {
        AtomTable::standard()
    }
}

impl AtomTable {
    pub fn standard() -> Self {
        let words = STANDARD
            .iter()
            .map(|(n, ws)| (n.to_string(), ws.iter().map(|(w, s)| (w.to_vec(), *s)).collect()))
            .collect();
        AtomTable { words }
    }

    /// Flips the sign of one basis word of a primitive atom.
    pub fn with_flipped(&self, name: &str, word: usize) -> Option<AtomTable> {
        let mut out = self.clone();
        let entry = out.words.get_mut(name)?.get_mut(word)?;
        entry.1 = -entry.1;
        Some(out)
    }

    pub fn words(&self, name: &str) -> Option<&[(Vec<u8>, i64)]> {
        self.words.get(name).map(|v| v.as_slice())
    }

    pub fn form<C: Ring>(&self, name: &str) -> Option<Form<C>> {
        let name = if name == "Vol" { "VolG" } else { name };
        if name == "sigma0" {
            let a2: Form<C> = self.form("alpha2")?;
            let a: Form<C> = self.form("alpha")?;
            let tdt = self.form::<C>("theta")?.wedge(&self.form("dtheta")?);
            return Some(&(&a2 - &a) + &tdt);
        }
        let ws = self.words.get(name)?;
        let degree = ws.first().map(|(w, _)| w.len()).unwrap_or(0);
        let mut f = Form::zero(degree);
        for (w, s) in ws {
            f = &f + &Form::monomial(w, C::from_rat(int(*s)));
        }
        Some(f)
    }
}

/// A named invariant form from the standard table.
pub fn named_atom<C: Ring>(name: &str) -> Option<Form<C>> {
    AtomTable::standard().form(name)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::Rat;

    #[test]
    fn every_name_resolves() {
        for n in atom_names() {
            assert!(named_atom::<Rat>(n).is_some(), "{n}");
        }
        assert!(named_atom::<Rat>("beta").is_none());
    }

    #[test]
    fn vol_is_theta_wedge_alpha3() {
        let t: Form<Rat> = named_atom("theta").unwrap();
        let a3 = named_atom("alpha3").unwrap();
        assert_eq!(t.wedge(&a3), named_atom("vol").unwrap());
        let va = named_atom::<Rat>("vol").unwrap().wedge(&named_atom("alpha").unwrap());
        assert_eq!(va, named_atom("VolG").unwrap());
    }

    #[test]
    fn flipping_changes_the_form() {
        let m = AtomTable::standard().with_flipped("alpha2", 2).unwrap();
        assert_ne!(m.form::<Rat>("alpha2"), named_atom("alpha2"));
        assert!(AtomTable::standard().with_flipped("alpha2", 3).is_none());
    }
}
