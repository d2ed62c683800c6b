use rand::RngCore;

/// Replays a fixed list of uniform draws, then zeros.
pub struct FixedRng {
    values: Vec<f64>,
    next: usize,
}

impl FixedRng {
    pub fn new(values: &[f64]) -> Self {
        Self {
            values: values.to_vec(),
            next: 0,
        }
    }
}

impl RngCore for FixedRng {
    fn next_u32(&mut self) -> u32 {
        (self.next_u64() >> 32) as u32
    }

    fn next_u64(&mut self) -> u64 {
        let v = self.values.get(self.next).copied().unwrap_or(0.0);
        self.next += 1;
        // `random::<f64>()` keeps the top 53 bits.
        ((v * (1u64 << 53) as f64) as u64) << 11
    }

    fn fill_bytes(&mut self, dst: &mut [u8]) {
        for chunk in dst.chunks_mut(8) {
            let bytes = self.next_u64().to_le_bytes();
            chunk.copy_from_slice(&bytes[..chunk.len()]);
        }
    }
}
