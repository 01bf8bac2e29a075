//! Dense polynomials over a small prime field, used internally by the
//! rational factorization. Coefficients are `u64` residues below `p < 2^31`.

use rand::Rng;

#[derive(Clone, Copy, Debug)]
pub(crate) struct Fp {
    pub p: u64,
}

pub(crate) type PolyP = Vec<u64>;

impl Fp {
    pub fn new(p: u64) -> Self {
        debug_assert!(p < (1 << 31));
        Fp { p }
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.p - b) % self.p
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    pub fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut acc = 1;
        a %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: u64) -> u64 {
        debug_assert!(a % self.p != 0);
        self.pow(a, self.p - 2)
    }

    pub fn trim(&self, mut a: PolyP) -> PolyP {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    pub fn deg(a: &PolyP) -> usize {
        a.len().saturating_sub(1)
    }

    pub fn add_poly(&self, a: &PolyP, b: &PolyP) -> PolyP {
        let n = a.len().max(b.len());
        let v = (0..n)
            .map(|i| self.add(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0)))
            .collect();
        self.trim(v)
    }

    pub fn sub_poly(&self, a: &PolyP, b: &PolyP) -> PolyP {
        let n = a.len().max(b.len());
        let v = (0..n)
            .map(|i| self.sub(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0)))
            .collect();
        self.trim(v)
    }

    pub fn mul_poly(&self, a: &PolyP, b: &PolyP) -> PolyP {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut v = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                v[i + j] = (v[i + j] + x * y) % self.p;
            }
        }
        self.trim(v)
    }

    pub fn scale(&self, a: &PolyP, c: u64) -> PolyP {
        self.trim(a.iter().map(|&x| self.mul(x, c)).collect())
    }

    pub fn monic(&self, a: &PolyP) -> PolyP {
        match a.last() {
            None => Vec::new(),
            Some(&lc) => self.scale(a, self.inv(lc)),
        }
    }

    pub fn div_rem(&self, a: &PolyP, b: &PolyP) -> (PolyP, PolyP) {
        assert!(!b.is_empty());
        if a.len() < b.len() {
            return (Vec::new(), a.clone());
        }
        let db = b.len() - 1;
        let inv = self.inv(*b.last().unwrap());
        let mut r = a.clone();
        let mut q = vec![0u64; a.len() - db];
        for k in (0..q.len()).rev() {
            let c = self.mul(r[k + db], inv);
            if c == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                r[k + j] = self.sub(r[k + j], self.mul(c, bj));
            }
            q[k] = c;
        }
        r.truncate(db);
        (self.trim(q), self.trim(r))
    }

    pub fn rem(&self, a: &PolyP, b: &PolyP) -> PolyP {
        self.div_rem(a, b).1
    }

    pub fn gcd(&self, a: &PolyP, b: &PolyP) -> PolyP {
        let (mut x, mut y) = (a.clone(), b.clone());
        while !y.is_empty() {
            let r = self.rem(&x, &y);
            x = y;
            y = r;
        }
        self.monic(&x)
    }

    /// Returns `(g, s, t)` with `s a + t b = g` monic.
    pub fn ext_gcd(&self, a: &PolyP, b: &PolyP) -> (PolyP, PolyP, PolyP) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (vec![1u64], Vec::new());
        let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
        while !r1.is_empty() {
            let (q, r) = self.div_rem(&r0, &r1);
            let s2 = self.sub_poly(&s0, &self.mul_poly(&q, &s1));
            let t2 = self.sub_poly(&t0, &self.mul_poly(&q, &t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        let inv = self.inv(*r0.last().expect("nonzero gcd"));
        (self.scale(&r0, inv), self.scale(&s0, inv), self.scale(&t0, inv))
    }

    pub fn derivative(&self, a: &PolyP) -> PolyP {
        self.trim(
            a.iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| self.mul(c, i as u64 % self.p))
                .collect(),
        )
    }

    pub fn powmod(&self, base: &PolyP, mut e: u64, m: &PolyP) -> PolyP {
        let mut acc = vec![1u64];
        let mut b = self.rem(base, m);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.rem(&self.mul_poly(&acc, &b), m);
            }
            b = self.rem(&self.mul_poly(&b, &b), m);
            e >>= 1;
        }
        acc
    }

    /// Distinct-degree factorization of a monic square-free polynomial.
    pub fn ddf(&self, f: &PolyP) -> Vec<(PolyP, usize)> {
        let mut out = Vec::new();
        let mut rest = f.clone();
        let x = vec![0, 1];
        let mut h = x.clone();
        let mut d = 0;
        while Self::deg(&rest) >= 2 * (d + 1) {
            d += 1;
            h = self.powmod(&h, self.p, &rest);
            let g = self.gcd(&rest, &self.sub_poly(&h, &x));
            if Self::deg(&g) > 0 {
                rest = self.div_rem(&rest, &g).0;
                h = self.rem(&h, &rest);
                out.push((g, d));
            }
        }
        if Self::deg(&rest) > 0 {
            let dd = Self::deg(&rest);
            out.push((rest, dd));
        }
        out
    }

    /// Cantor-Zassenhaus equal-degree splitting (odd `p`).
    pub fn edf(&self, f: &PolyP, d: usize, rng: &mut impl Rng) -> Vec<PolyP> {
        let n = Self::deg(f);
        if n == d {
            return vec![f.clone()];
        }
        loop {
            let a: PolyP = self.trim((0..n).map(|_| rng.gen_range(0..self.p)).collect());
            if Self::deg(&a) == 0 {
                continue;
            }
            // a^((p^d - 1)/2) = (a^(1 + p + ... + p^(d-1)))^((p-1)/2)
            let mut frob = a.clone();
            let mut norm = a.clone();
            for _ in 1..d {
                frob = self.powmod(&frob, self.p, f);
                norm = self.rem(&self.mul_poly(&norm, &frob), f);
            }
            let b = self.sub_poly(&self.powmod(&norm, (self.p - 1) / 2, f), &vec![1]);
            let g = self.gcd(f, &b);
            let dg = Self::deg(&g);
            if dg > 0 && dg < n {
                let other = self.div_rem(f, &g).0;
                let mut out = self.edf(&g, d, rng);
                out.extend(self.edf(&self.monic(&other), d, rng));
                return out;
            }
        }
    }

    /// Complete factorization of a monic square-free polynomial into monic
    /// irreducibles.
    pub fn factor_squarefree(&self, f: &PolyP, rng: &mut impl Rng) -> Vec<PolyP> {
        let mut out = Vec::new();
        for (g, d) in self.ddf(f) {
            out.extend(self.edf(&g, d, rng));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn splits_x4_minus_1_mod_5() {
        let fp = Fp::new(5);
        // x^4 - 1 = prod (x - a) over F_5
        let f = vec![4, 0, 0, 0, 1];
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        let mut fs = fp.factor_squarefree(&f, &mut rng);
        fs.sort();
        assert_eq!(fs.len(), 4);
        assert!(fs.iter().all(|g| g.len() == 2));
    }

    #[test]
    fn irreducible_stays_whole() {
        let fp = Fp::new(7);
        // x^2 + 1 is irreducible mod 7 (7 = 3 mod 4)
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2);
        assert_eq!(fp.factor_squarefree(&vec![1, 0, 1], &mut rng).len(), 1);
    }
}
