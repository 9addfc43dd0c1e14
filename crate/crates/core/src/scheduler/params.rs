use crate::error::{Error, Result};

/// Parameters of a dense (type-2) phase.
#[derive(Debug, Clone, PartialEq)]
pub struct LadderParams {
    pub n: usize,
    pub m: usize,
    /// Average degree `2m/n`.
    pub d: f64,
    /// `z_1 > z_2 > … > z_k`, each half the previous.
    pub z: Vec<usize>,
    /// Power of two in `[√n, 2√n)`.
    pub eta: usize,
}

impl LadderParams {
    pub fn k(&self) -> usize {
        self.z.len()
    }

    /// `z_i` for `1 ≤ i ≤ k`.
    pub fn z_at(&self, i: usize) -> usize {
        self.z[i - 1]
    }

    /// Length of a level-i phase, `z_i · η`.
    pub fn phase_len(&self, i: usize) -> usize {
        self.z_at(i) * self.eta
    }

    /// The lower end the ladder may reach: `max(2, √n / (4 log₂ n))`.
    pub fn z_floor(n: usize) -> f64 {
        let nf = n as f64;
        (nf.sqrt() / (4.0 * nf.log2())).max(2.0)
    }
}

/// Smallest power of two that is at least `x` (and at least 1).
pub fn pow2_at_least(x: f64) -> usize {
    let mut p = 1usize;
    while (p as f64) < x {
        p *= 2;
    }
    p
}

/// Computes the ladder for a graph with `n` vertices and `m > 0` edges.
pub fn ladder_params(n: usize, m: usize) -> Result<LadderParams> {
    if n < 4 || !n.is_power_of_two() {
        return Err(Error::InvalidParameter(format!("n = {} must be a power of two >= 4", n)));
    }
    if m == 0 {
        return Err(Error::InvalidParameter("dense phase needs at least one edge".into()));
    }
    let d = 2.0 * m as f64 / n as f64;
    let z1 = pow2_at_least(d);
    let eta = pow2_at_least((n as f64).sqrt());
    let floor = LadderParams::z_floor(n);
    let max_levels = (n as f64).log2().floor() as usize;
    let mut z = vec![z1];
    while z.len() < max_levels {
        let next = z[z.len() - 1] / 2;
        if (next as f64) < floor {
            break;
        }
        z.push(next);
    }
    Ok(LadderParams { n, m, d, z, eta })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_example() {
        let p = ladder_params(64, 600).unwrap();
        assert_eq!(p.d, 18.75);
        assert_eq!(p.z, vec![32, 16, 8, 4, 2]);
        assert_eq!(p.eta, 8);
        assert_eq!(p.phase_len(3), 64);
    }

    #[test]
    fn larger_example() {
        let p = ladder_params(1024, 40960).unwrap();
        assert_eq!(p.d, 80.0);
        assert_eq!(p.z[0], 128);
        assert_eq!(p.eta, 32);
        assert_eq!(*p.z.last().unwrap(), 2);
        assert_eq!(p.k(), 7);
    }

    #[test]
    fn exact_powers() {
        assert_eq!(pow2_at_least(16.0), 16);
        assert_eq!(pow2_at_least(16.5), 32);
        assert_eq!(pow2_at_least(0.3), 1);
        // √256 = 16 is itself a power of two
        assert_eq!(ladder_params(256, 5000).unwrap().eta, 16);
    }
}
