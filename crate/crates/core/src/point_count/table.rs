//! Zech-logarithm representation of a small field for fast enumeration.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::Result;
use crate::gf_tower::{least_primitive_element, ExtField, FieldElement};
use crate::plane_curves::HomPoly3;

/// Elements are u32: 0 is zero, r > 0 is g^{r−1} for the least primitive g.
pub struct TableField {
    field: ExtField,
    size: u32,
    order: u32,
    /// exp[i] = code of g^i.
    exp: Vec<u32>,
    /// log[code] = i with g^i = code (unused at code 0).
    log: Vec<u32>,
    /// zech[n] = rep of 1 + g^n.
    zech: Vec<u32>,
}

static TABLES: OnceLock<Mutex<HashMap<(u32, usize), Arc<TableField>>>> = OnceLock::new();

impl TableField {
    /// Shared table for `field`, built on first use.
    pub fn get(field: &ExtField) -> Result<Arc<TableField>> {
        let key = (field.characteristic(), field.degree());
        let cache = TABLES.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(t) = cache.lock().expect("table cache poisoned").get(&key) {
            return Ok(t.clone());
        }
        let t = Arc::new(Self::build(field)?);
        cache
            .lock()
            .expect("table cache poisoned")
            .insert(key, t.clone());
        Ok(t)
    }

    fn build(field: &ExtField) -> Result<Self> {
        let size = field
            .size_u64()
            .filter(|&s| s <= u32::MAX as u64)
            .ok_or_else(|| crate::Error::CapExceeded(format!("{field} too large for a log table")))? as u32;
        let order = size - 1;
        let g = least_primitive_element(field)?;
        let mut exp = Vec::with_capacity(order as usize);
        let mut log = vec![0u32; size as usize];
        let mut cur = field.one();
        for i in 0..order {
            let code = cur.code() as u32;
            exp.push(code);
            log[code as usize] = i;
            cur = &cur * &g;
        }
        let p = field.characteristic();
        let zech = exp
            .iter()
            .map(|&c| {
                let d0 = c % p;
                let c1 = c - d0 + (d0 + 1) % p;
                if c1 == 0 {
                    0
                } else {
                    1 + log[c1 as usize]
                }
            })
            .collect();
        Ok(TableField {
            field: field.clone(),
            size,
            order,
            exp,
            log,
            zech,
        })
    }

    pub fn field(&self) -> &ExtField {
        &self.field
    }

    pub fn size(&self) -> u32 {
        self.size
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let s = (a - 1) as u64 + (b - 1) as u64;
        1 + (s % self.order as u64) as u32
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        if a == 0 {
            return b;
        }
        if b == 0 {
            return a;
        }
        let (la, lb) = (a - 1, b - 1);
        let n = if lb >= la { lb - la } else { lb + self.order - la };
        let z = self.zech[n as usize];
        if z == 0 {
            0
        } else {
            self.mul(a, z)
        }
    }

    /// a^e for e ≥ 0, with 0^0 = 1.
    #[inline]
    pub fn pow(&self, a: u32, e: u32) -> u32 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        1 + (((a - 1) as u64 * e as u64) % self.order as u64) as u32
    }

    pub fn from_element(&self, x: &FieldElement) -> u32 {
        let c = x.code() as usize;
        if c == 0 {
            0
        } else {
            1 + self.log[c]
        }
    }

    pub fn to_element(&self, r: u32) -> FieldElement {
        if r == 0 {
            self.field.zero()
        } else {
            self.field.from_code(self.exp[(r - 1) as usize] as u64)
        }
    }

    pub fn compile(&self, poly: &HomPoly3) -> Compiled {
        assert!(poly.field() == &self.field, "polynomial not over the table field");
        Compiled {
            terms: poly
                .terms()
                .map(|(e, c)| (self.from_element(c), *e))
                .collect(),
        }
    }
}

/// A polynomial with coefficients in table representation.
pub struct Compiled {
    terms: Vec<(u32, [u32; 3])>,
}

impl Compiled {
    #[inline]
    pub fn eval(&self, t: &TableField, pt: [u32; 3]) -> u32 {
        let mut acc = 0;
        'terms: for &(c, e) in &self.terms {
            let mut term = c;
            for i in 0..3 {
                if e[i] > 0 {
                    if pt[i] == 0 {
                        continue 'terms;
                    }
                    term = t.mul(term, t.pow(pt[i], e[i]));
                }
            }
            acc = t.add(acc, term);
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn table_arithmetic_matches_field() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for (p, k) in [(2u64, 4usize), (3, 3), (5, 2), (7, 1)] {
            let f = ExtField::new(p, k).unwrap();
            let t = TableField::get(&f).unwrap();
            for _ in 0..500 {
                let x = f.random(&mut rng);
                let y = f.random(&mut rng);
                let (rx, ry) = (t.from_element(&x), t.from_element(&y));
                assert_eq!(t.to_element(t.add(rx, ry)), &x + &y);
                assert_eq!(t.to_element(t.mul(rx, ry)), &x * &y);
                assert_eq!(t.to_element(t.pow(rx, 7)), x.pow_u64(7));
            }
        }
    }
}
