/// Mixed-radix encoding of an additive group `Z_{m_0} x ... x Z_{m_{d-1}}`
/// onto dense ids. Coordinate 0 is the least significant digit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coords {
    moduli: Vec<u64>,
    strides: Vec<u64>,
}

impl Coords {
    pub fn new(moduli: Vec<u64>) -> Self {
        let mut strides = Vec::with_capacity(moduli.len());
        let mut s = 1u64;
        for &m in &moduli {
            strides.push(s);
            s = s.saturating_mul(m);
        }
        Coords { moduli, strides }
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    pub fn len(&self) -> usize {
        self.moduli.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moduli.is_empty()
    }

    /// Id of the element with a single 1 in coordinate `i`.
    pub fn unit_vector(&self, i: usize) -> u32 {
        self.strides[i] as u32
    }

    pub fn decode_into(&self, id: u32, out: &mut [u64]) {
        let mut rest = id as u64;
        for (slot, &m) in out.iter_mut().zip(&self.moduli) {
            *slot = rest % m;
            rest /= m;
        }
    }

    pub fn decode(&self, id: u32) -> Vec<u64> {
        let mut out = vec![0; self.moduli.len()];
        self.decode_into(id, &mut out);
        out
    }

    pub fn encode(&self, coords: &[u64]) -> u32 {
        coords
            .iter()
            .zip(&self.strides)
            .map(|(&c, &s)| c * s)
            .sum::<u64>() as u32
    }

    /// Digitwise sum of two ids.
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let (mut a, mut b) = (a as u64, b as u64);
        let mut out = 0;
        for (&m, &s) in self.moduli.iter().zip(&self.strides) {
            out += ((a % m + b % m) % m) * s;
            a /= m;
            b /= m;
        }
        out as u32
    }

    /// Digitwise additive inverse.
    pub fn neg(&self, a: u32) -> u32 {
        let mut a = a as u64;
        let mut out = 0;
        for (&m, &s) in self.moduli.iter().zip(&self.strides) {
            out += ((m - a % m) % m) * s;
            a /= m;
        }
        out as u32
    }

    /// The prime `p` when every coordinate is `Z_p`.
    pub fn prime_field(&self) -> Option<u64> {
        let &p = self.moduli.first()?;
        if self.moduli.iter().all(|&m| m == p) && is_prime(p) {
            Some(p)
        } else {
            None
        }
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}
