use std::sync::OnceLock;

use super::fp_linalg::FpMatrix;
use super::field::{ExtField, FieldElement};
use super::poly::Poly;
use super::roots::poly_roots;
use crate::error::{Error, Result};

/// A field homomorphism F_{p^a} → F_{p^b}, a | b, fixed by the image of the
/// source generator.
///
/// The image is the least root (in element order) of the source modulus in
/// the target, except that a field embeds into itself by the identity.
pub struct Embedding {
    source: ExtField,
    target: ExtField,
    /// Images of 1, t, …, t^{a−1}.
    basis_images: Vec<FieldElement>,
    preimage_matrix: OnceLock<FpMatrix>,
}

impl Embedding {
    pub fn new(source: &ExtField, target: &ExtField) -> Result<Self> {
        let p = source.characteristic();
        let (a, b) = (source.degree(), target.degree());
        if p != target.characteristic() || b % a != 0 {
            return Err(Error::NoEmbedding {
                p: p as u64,
                from: a,
                to: b,
            });
        }
        let image = if source == target {
            target.generator()
        } else {
            let modulus: Vec<i64> = source.modulus().iter().map(|&c| c as i64).collect();
            let f = Poly::from_ints(target, &modulus);
            poly_roots(&f, target)?
                .into_iter()
                .next()
                .map(|r| r.value)
                .ok_or(Error::NoEmbedding {
                    p: p as u64,
                    from: a,
                    to: b,
                })?
        };
        let mut basis_images = Vec::with_capacity(a);
        let mut cur = target.one();
        for _ in 0..a {
            basis_images.push(cur.clone());
            cur = &cur * &image;
        }
        Ok(Embedding {
            source: source.clone(),
            target: target.clone(),
            basis_images,
            preimage_matrix: OnceLock::new(),
        })
    }

    pub fn source(&self) -> &ExtField {
        &self.source
    }

    pub fn target(&self) -> &ExtField {
        &self.target
    }

    /// Image of the source generator t.
    pub fn generator_image(&self) -> FieldElement {
        if self.basis_images.len() > 1 {
            self.basis_images[1].clone()
        } else {
            self.target.from_int(-(self.source.modulus()[0] as i64))
        }
    }

    pub fn apply(&self, x: &FieldElement) -> FieldElement {
        assert!(x.field() == &self.source, "element not in embedding source");
        let mut acc = self.target.zero();
        for (&c, img) in x.coeffs().iter().zip(&self.basis_images) {
            match c {
                0 => {}
                1 => acc += img,
                _ => acc += img * &self.target.from_int(c as i64),
            }
        }
        acc
    }

    fn matrix(&self) -> &FpMatrix {
        self.preimage_matrix.get_or_init(|| {
            let cols: Vec<Vec<u32>> = self.basis_images.iter().map(|e| e.coeffs().to_vec()).collect();
            FpMatrix::from_columns(self.target.characteristic(), self.target.degree(), &cols)
        })
    }

    /// The unique source element mapping to `y`, if `y` lies in the image.
    pub fn preimage(&self, y: &FieldElement) -> Result<FieldElement> {
        assert!(y.field() == &self.target, "element not in embedding target");
        let x = self.matrix().solve(y.coeffs()).ok_or(Error::NotInSubfield)?;
        Ok(self.source.from_coeffs(&x))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn homomorphism_on_samples() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for (p, a, b) in [(5u64, 2usize, 6usize), (5, 3, 6), (2, 3, 9), (3, 2, 4), (5, 1, 2)] {
            let src = ExtField::new(p, a).unwrap();
            let dst = ExtField::new(p, b).unwrap();
            let e = Embedding::new(&src, &dst).unwrap();
            for _ in 0..200 {
                let x = src.random(&mut rng);
                let y = src.random(&mut rng);
                assert_eq!(e.apply(&(&x * &y)), &e.apply(&x) * &e.apply(&y));
                assert_eq!(e.apply(&(&x + &y)), &e.apply(&x) + &e.apply(&y));
                assert_eq!(e.preimage(&e.apply(&x)).unwrap(), x);
            }
            assert!(e.apply(&src.one()).is_one());
        }
    }

    #[test]
    fn rejects_non_divisor_degrees() {
        let src = ExtField::new(5, 2).unwrap();
        let dst = ExtField::new(5, 3).unwrap();
        assert!(Embedding::new(&src, &dst).is_err());
    }

    #[test]
    fn preimage_rejects_outside_subfield() {
        let src = ExtField::new(5, 2).unwrap();
        let dst = ExtField::new(5, 6).unwrap();
        let e = Embedding::new(&src, &dst).unwrap();
        let t = dst.generator();
        assert!(matches!(e.preimage(&t), Err(Error::NotInSubfield)));
    }
}
