//! All-plus extension, the three-block product construction and the
//! counting bounds built on it.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{arg, Error, Result};
use crate::sign::Sign;
use crate::signotope::{Bits, Signotope};
use crate::triples::{binomial, MAX_ELEMENTS};

/// Copies `s` onto `{1..n}` and sets every triple touching `{n+1..n'}` to `+`.
pub fn all_plus_extension(s: &Signotope, n_prime: usize) -> Result<Signotope> {
    let n = s.n();
    if n_prime < n || n_prime > MAX_ELEMENTS {
        return arg(format!("cannot extend {n} elements to {n_prime}"));
    }
    let l = crate::triples::layout(n_prime);
    let mut bits = Bits::default();
    for (r, &[i, j, k]) in l.triples().iter().enumerate() {
        let v = if k as usize <= n { s.sign_sorted(i, j, k).is_plus() } else { true };
        bits.set(r, v);
    }
    Signotope::from_bits(n_prime, bits)
}

/// Signs on `A × B × C` for blocks `A = {1..n}`, `B = {n+1..2n}`,
/// `C = {2n+1..3n}`, stored in lex order of `(x, y-n, z-2n)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ProductMap {
    n: usize,
    values: Vec<Sign>,
}

impl ProductMap {
    pub fn new(n: usize, values: Vec<Sign>) -> Result<Self> {
        if n == 0 || values.len() != n * n * n {
            return arg(format!("product map on {n} needs {} signs, got {}", n * n * n, values.len()));
        }
        Ok(ProductMap { n, values })
    }

    pub fn constant(n: usize, sign: Sign) -> Self {
        ProductMap {
            n,
            values: vec![sign; n * n * n],
        }
    }

    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        ProductMap {
            n,
            values: (0..n * n * n).map(|_| Sign::from_bit(rng.gen())).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[Sign] {
        &self.values
    }

    /// Sign at block offsets `x, y, z` in `1..=n`.
    pub fn get(&self, x: usize, y: usize, z: usize) -> Sign {
        self.values[((x - 1) * self.n + (y - 1)) * self.n + (z - 1)]
    }
}

impl fmt::Display for ProductMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n={}", self.n)?;
        writeln!(f, "{}", crate::sign::sign_string(&self.values))
    }
}

impl FromStr for ProductMap {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let body = text.trim_start();
        let offset = text.len() - body.len();
        let Some(rest) = body.strip_prefix("n=") else {
            return Err(Error::Parse {
                pos: offset,
                msg: "expected `n=<int>`".into(),
            });
        };
        let digits = rest.chars().take_while(char::is_ascii_digit).count();
        let n: usize = rest[..digits].parse().map_err(|_| Error::Parse {
            pos: offset + 2,
            msg: "expected element count".into(),
        })?;
        let signs_start = offset + 2 + digits;
        let mut values = Vec::new();
        for (i, c) in text[signs_start..].char_indices() {
            if c.is_whitespace() {
                continue;
            }
            match Sign::from_char(c) {
                Some(s) => values.push(s),
                None => {
                    return Err(Error::Parse {
                        pos: signs_start + i,
                        msg: format!("unexpected `{c}`"),
                    })
                }
            }
        }
        ProductMap::new(n, values)
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Block {
    A,
    B,
    C,
}

fn block(n: usize, x: u8) -> (Block, u8) {
    let x = x as usize;
    let b = match (x - 1) / n {
        0 => Block::A,
        1 => Block::B,
        _ => Block::C,
    };
    (b, ((x - 1) % n + 1) as u8)
}

/// The signotope on `3n` elements with the three blocks taken from `sa`,
/// `sb`, `sc`, one-element-per-block triples from `m`, everything else `+`.
pub fn product_construct(sa: &Signotope, sb: &Signotope, sc: &Signotope, m: &ProductMap) -> Result<Signotope> {
    let n = sa.n();
    if sb.n() != n || sc.n() != n || m.n() != n {
        return arg(format!(
            "block sizes differ: {}, {}, {}, map {}",
            n,
            sb.n(),
            sc.n(),
            m.n()
        ));
    }
    if 3 * n > MAX_ELEMENTS {
        return arg(format!("3·{n} exceeds {MAX_ELEMENTS} elements"));
    }
    let l = crate::triples::layout(3 * n);
    let mut bits = Bits::default();
    for (r, &[x, y, z]) in l.triples().iter().enumerate() {
        let (bx, x0) = block(n, x);
        let (by, y0) = block(n, y);
        let (bz, z0) = block(n, z);
        let v = match (bx, by, bz) {
            (Block::A, Block::A, Block::A) => sa.sign_sorted(x0, y0, z0),
            (Block::B, Block::B, Block::B) => sb.sign_sorted(x0, y0, z0),
            (Block::C, Block::C, Block::C) => sc.sign_sorted(x0, y0, z0),
            (Block::A, Block::B, Block::C) => m.get(x0 as usize, y0 as usize, z0 as usize),
            _ => Sign::Plus,
        };
        bits.set(r, v.is_plus());
    }
    Signotope::from_bits(3 * n, bits)
}

/// Exact inverse of [`product_construct`]: the three blocks and the map.
/// Fails when `s` is not in the image.
pub fn product_decompose(s: &Signotope) -> Result<(Signotope, Signotope, Signotope, ProductMap)> {
    if !s.n().is_multiple_of(3) {
        return arg(format!("{} elements is not three equal blocks", s.n()));
    }
    let n = s.n() / 3;
    let span = |lo: u8| -> Vec<u8> { (lo..lo + n as u8).collect() };
    let sa = s.restrict(&span(1))?;
    let sb = s.restrict(&span(n as u8 + 1))?;
    let sc = s.restrict(&span(2 * n as u8 + 1))?;
    let mut values = Vec::with_capacity(n * n * n);
    for (r, &[x, y, z]) in s.layout().triples().iter().enumerate() {
        let blocks = (block(n, x).0, block(n, y).0, block(n, z).0);
        match blocks {
            (Block::A, Block::B, Block::C) => values.push(s.sign_at(r)),
            (a, b, c) if a == b && b == c => {}
            _ => {
                if !s.sign_at(r).is_plus() {
                    return arg(format!("mixed triple {x}{y}{z} is `-`; not a product"));
                }
            }
        }
    }
    // triples come in lex order, which is lex order of (x, y-n, z-2n) here
    Ok((sa, sb, sc, ProductMap::new(n, values)?))
}

/// Lower-bound exponent: `f(1) = f(2) = 0`, `f(3) = 1`,
/// `f(n) = 3 f(n/3) + (n/3)^3` with floor division.
pub fn lower_bound_exponent(n: usize) -> u64 {
    match n {
        0..=2 => 0,
        3 => 1,
        _ => {
            let k = (n / 3) as u64;
            3 * lower_bound_exponent(n / 3) + k * k * k
        }
    }
}

/// The cubic the exponent dominates: `n^3/24 - 3n^2/8`.
pub fn lower_bound_cubic(n: usize) -> f64 {
    let n = n as f64;
    n * n * n / 24.0 - 3.0 * n * n / 8.0
}

/// `log2(g_t) / C(t,3)`, the exponent constant of the upper bound obtained
/// from the count on `t` elements.
pub fn upper_bound_constant(t: usize, g_t: u128) -> Result<f64> {
    if t < 3 || g_t == 0 {
        return arg(format!("need t >= 3 and g >= 1, got t={t}, g={g_t}"));
    }
    Ok((g_t as f64).log2() / binomial(t as u64, 3) as f64)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub t: usize,
    pub g_t: u128,
    pub c_t: f64,
    /// `(n, f(n))` for `n = 1..=max_n`.
    pub f_values: Vec<(usize, u64)>,
}

pub fn bound_report(t: usize, g_t: u128, max_n: usize) -> Result<BoundReport> {
    Ok(BoundReport {
        t,
        g_t,
        c_t: upper_bound_constant(t, g_t)?,
        f_values: (1..=max_n).map(|n| (n, lower_bound_exponent(n))).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::{enumerate_all, random_signotope};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn extension_copies_and_pads() {
        for s in enumerate_all(5, false, 1).unwrap() {
            assert_eq!(all_plus_extension(&s, 5).unwrap(), s);
            let e = all_plus_extension(&s, 8).unwrap();
            assert_eq!(e.restrict(&[1, 2, 3, 4, 5]).unwrap(), s);
            assert_eq!(e.plus_count(), s.plus_count() + 56 - 10);
        }
        let s = Signotope::all_minus(5).unwrap();
        assert!(all_plus_extension(&s, 4).is_err());
    }

    #[test]
    fn trivial_product() {
        let p = Signotope::all_plus(3).unwrap();
        let out = product_construct(&p, &p, &p, &ProductMap::constant(3, Sign::Plus)).unwrap();
        assert_eq!(out, Signotope::all_plus(9).unwrap());
    }

    #[test]
    fn product_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in [3usize, 4, 5] {
            for _ in 0..20 {
                let parts: Vec<Signotope> = (0..3).map(|_| random_signotope(n, &mut rng).unwrap()).collect();
                let m = ProductMap::random(n, &mut rng);
                let s = product_construct(&parts[0], &parts[1], &parts[2], &m).unwrap();
                let (a, b, c, m2) = product_decompose(&s).unwrap();
                assert_eq!((a, b, c), (parts[0], parts[1], parts[2]));
                assert_eq!(m2, m);
            }
        }
    }

    #[test]
    fn product_rejects_mismatch_and_foreign_input() {
        let p3 = Signotope::all_plus(3).unwrap();
        let p4 = Signotope::all_plus(4).unwrap();
        assert!(product_construct(&p3, &p4, &p3, &ProductMap::constant(3, Sign::Plus)).is_err());
        assert!(product_construct(&p3, &p3, &p3, &ProductMap::constant(2, Sign::Plus)).is_err());
        assert!(product_decompose(&Signotope::all_minus(6).unwrap()).is_err());
        assert!(product_decompose(&p4).is_err());
    }

    #[test]
    fn map_text_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let m = ProductMap::random(3, &mut rng);
        assert_eq!(m.to_string().parse::<ProductMap>().unwrap(), m);
        assert!("n=2 +++".parse::<ProductMap>().is_err());
        let err = "n=1 x".parse::<ProductMap>().unwrap_err();
        assert!(matches!(err, Error::Parse { pos: 4, .. }), "{err:?}");
    }

    #[test]
    fn recursion_values() {
        assert_eq!(lower_bound_exponent(3), 1);
        assert_eq!(lower_bound_exponent(9), 30);
        assert_eq!(lower_bound_exponent(27), 3 * 30 + 729);
        for n in 1..=300 {
            assert!(lower_bound_exponent(n) as f64 >= lower_bound_cubic(n), "n={n}");
            assert!(lower_bound_exponent(n + 1) >= lower_bound_exponent(n));
        }
    }

    #[test]
    fn upper_constant() {
        assert_eq!(upper_bound_constant(3, 2).unwrap(), 1.0);
        let c7 = upper_bound_constant(7, 630_988_832).unwrap();
        assert!((c7 - 0.8352).abs() < 5e-4, "{c7}");
        assert!(upper_bound_constant(2, 2).is_err());
    }
}
