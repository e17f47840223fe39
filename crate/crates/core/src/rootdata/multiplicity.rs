//! Freudenthal's recursion on dominant weights, expanded along Weyl orbits.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};

use crate::error::{Error, Result};

use super::{RootDatum, Weight, WeylCap};

impl RootDatum {
    /// Dominant weights of `V_lambda`, ordered by depth below `lambda`.
    /// Each entry carries the height of `lambda - mu`.
    pub fn dominant_weights_below(&self, lambda: &[i64]) -> Vec<(Vec<i64>, i64)> {
        let roots: Vec<(Vec<i64>, i64)> = self
            .positive_roots()
            .iter()
            .map(|b| (self.root_to_weight(b), b.iter().sum()))
            .collect();
        let mut seen: HashSet<Vec<i64>> = HashSet::new();
        let mut out = Vec::new();
        let mut queue = VecDeque::new();
        seen.insert(lambda.to_vec());
        queue.push_back((lambda.to_vec(), 0i64));
        // subtracting positive roots while staying dominant reaches every
        // dominant weight below lambda
        while let Some((mu, depth)) = queue.pop_front() {
            for (beta, h) in &roots {
                let nu: Vec<i64> = mu.iter().zip(beta).map(|(a, b)| a - b).collect();
                if nu.iter().all(|&c| c >= 0) && seen.insert(nu.clone()) {
                    queue.push_back((nu, depth + h));
                }
            }
            out.push((mu, depth));
        }
        // depths from different paths agree since they only depend on lambda - mu
        out.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| b.0.cmp(&a.0)));
        out
    }

    /// Multiplicities of the dominant weights of `V_lambda`.
    pub fn dominant_multiplicities(&self, lambda: &Weight) -> Result<BTreeMap<Vec<i64>, u64>> {
        self.check_dominant(lambda)?;
        let lam = &lambda.coeffs;
        let shift = |x: &[i64]| -> Vec<i64> { x.iter().map(|c| c + 1).collect() };
        let lr = shift(lam);
        let top = self.scaled_form(&lr, &lr);
        let roots: Vec<Vec<i64>> = self
            .positive_roots()
            .iter()
            .map(|b| self.root_to_weight(b))
            .collect();

        let mut mult: HashMap<Vec<i64>, u64> = HashMap::new();
        for (mu, depth) in self.dominant_weights_below(lam) {
            if depth == 0 {
                mult.insert(mu, 1);
                continue;
            }
            let mut num: i128 = 0;
            for beta in &roots {
                let mut k = 1i64;
                loop {
                    let nu: Vec<i64> = mu.iter().zip(beta).map(|(a, b)| a + k * b).collect();
                    let (dom, _) = self.to_dominant(&nu, WeylCap::default())?;
                    let Some(&m) = mult.get(&dom) else { break };
                    num += m as i128 * self.scaled_form(&nu, beta);
                    k += 1;
                }
            }
            let mr = shift(&mu);
            let den = top - self.scaled_form(&mr, &mr);
            let m = 2 * num / den;
            debug_assert_eq!(2 * num % den, 0);
            if m > 0 {
                mult.insert(mu, m as u64);
            }
        }
        Ok(mult.into_iter().collect())
    }

    /// Full weight multiplicity map of `V_lambda`. Keys are semisimple
    /// fundamental coordinates.
    pub fn weight_multiplicities(&self, lambda: &Weight) -> Result<BTreeMap<Vec<i64>, u64>> {
        self.weight_multiplicities_capped(lambda, WeylCap::default())
    }

    pub fn weight_multiplicities_capped(
        &self,
        lambda: &Weight,
        cap: WeylCap,
    ) -> Result<BTreeMap<Vec<i64>, u64>> {
        let dominant = self.dominant_multiplicities(lambda)?;
        let mut out = BTreeMap::new();
        for (mu, m) in dominant {
            for w in self.weyl_orbit(&mu, cap)? {
                out.insert(w, m);
                if out.len() > cap.0 {
                    return Err(Error::WeylCapExceeded { cap: cap.0 });
                }
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use crate::rootdata::{Isogeny, RootDatum, Weight};
    use std::collections::BTreeMap;

    fn sc(s: &str, r: usize) -> RootDatum {
        RootDatum::build(s, r, Isogeny::SimplyConnected).unwrap()
    }

    #[test]
    fn a1_spin_one() {
        let m = sc("A", 1).weight_multiplicities(&Weight::new(vec![2])).unwrap();
        let expected: BTreeMap<Vec<i64>, u64> =
            [(vec![2], 1), (vec![0], 1), (vec![-2], 1)].into_iter().collect();
        assert_eq!(m, expected);
    }

    #[test]
    fn a2_standard_and_adjoint() {
        let a2 = sc("A", 2);
        let m = a2.weight_multiplicities(&Weight::new(vec![1, 0])).unwrap();
        assert_eq!(m.len(), 3);
        assert!(m.values().all(|&x| x == 1));
        let adj = a2.weight_multiplicities(&Weight::new(vec![1, 1])).unwrap();
        assert_eq!(adj[&vec![0, 0]], 2);
        assert_eq!(adj.values().sum::<u64>(), 8);
    }

    #[test]
    fn zero_weight_is_trivial() {
        for (s, r) in [("A", 3), ("G", 2), ("B", 3)] {
            let m = sc(s, r).weight_multiplicities(&Weight::zero(r)).unwrap();
            assert_eq!(m.len(), 1);
            assert_eq!(m[&vec![0; r]], 1);
        }
    }

    #[test]
    fn known_zero_weight_multiplicities() {
        // zero weight of the adjoint representation has multiplicity = rank
        let g2 = sc("G", 2);
        assert_eq!(g2.weight_multiplicities(&Weight::new(vec![0, 1])).unwrap()[&vec![0, 0]], 2);
        let b2 = sc("B", 2);
        let m = b2.weight_multiplicities(&Weight::new(vec![0, 2])).unwrap();
        assert_eq!(m[&vec![0, 0]], 2);
        assert_eq!(m.values().sum::<u64>(), 10);
    }
}
