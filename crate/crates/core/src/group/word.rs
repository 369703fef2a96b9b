use serde::{Deserialize, Serialize};

use crate::algebra::IntMatrix;
use crate::error::{Error, Result};

/// A letter is a nonzero signed 1-based generator index; `-k` is the inverse
/// of generator `k`.
pub type Letter = i32;
pub type Word = Vec<Letter>;

pub fn gen(i: usize) -> Letter {
    i as Letter + 1
}

pub fn gen_inv(i: usize) -> Letter {
    -(i as Letter + 1)
}

/// Zero-based generator index and exponent sign of a letter.
pub fn split(l: Letter) -> (usize, bool) {
    (l.unsigned_abs() as usize - 1, l > 0)
}

pub fn inverse(w: &[Letter]) -> Word {
    w.iter().rev().map(|&l| -l).collect()
}

pub fn free_reduce(w: &[Letter]) -> Word {
    let mut out: Word = Vec::with_capacity(w.len());
    for &l in w {
        if out.last() == Some(&-l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

pub fn concat(parts: &[&[Letter]]) -> Word {
    free_reduce(&parts.concat())
}

/// Word for g^n.
pub fn power(g: usize, n: i64) -> Word {
    let l = if n >= 0 { gen(g) } else { gen_inv(g) };
    vec![l; n.unsigned_abs() as usize]
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Presentation {
    pub gens: usize,
    pub relators: Vec<Word>,
}

impl Presentation {
    pub fn new(gens: usize, relators: Vec<Word>) -> Result<Self> {
        for r in &relators {
            if let Some(&l) = r.iter().find(|&&l| l == 0 || l.unsigned_abs() as usize > gens) {
                return Err(Error::Invalid(format!("letter {l} outside {gens} generators")));
            }
        }
        let relators = relators.iter().map(|r| free_reduce(r)).filter(|r| !r.is_empty()).collect();
        Ok(Presentation { gens, relators })
    }

    /// Exponent-sum matrix, one row per relator.
    pub fn relation_matrix(&self) -> Result<IntMatrix> {
        let trip = self.relators.iter().enumerate().flat_map(|(i, r)| {
            r.iter().map(move |&l| {
                let (g, pos) = split(l);
                (i, g, if pos { 1 } else { -1 })
            })
        });
        IntMatrix::from_triplets(self.relators.len(), self.gens, trip)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("presentation serializes")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let p: Presentation = serde_json::from_value(v.clone())?;
        Presentation::new(p.gens, p.relators)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduction() {
        assert_eq!(free_reduce(&[1, 2, -2, -1, 3]), vec![3]);
        assert_eq!(inverse(&[1, -2]), vec![2, -1]);
    }

    #[test]
    fn rejects_bad_letters() {
        assert!(Presentation::new(2, vec![vec![3]]).is_err());
        assert!(Presentation::new(2, vec![vec![0]]).is_err());
    }

    #[test]
    fn abelianization() {
        let p = Presentation::new(2, vec![vec![1, 1, 1], vec![1, 2, -1, -2]]).unwrap();
        let g = crate::algebra::abelianize_presentation(&p).unwrap();
        assert_eq!(g.to_string(), "Z + Z/3");
    }
}
