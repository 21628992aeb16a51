use crate::error::{Error, Result};
use crate::rack::FiniteRack;

/// A validated rack homomorphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RackHom {
    dom: FiniteRack,
    cod: FiniteRack,
    map: Vec<usize>,
    surjective: bool,
}

impl RackHom {
    /// Checks `map[x ◁ y] = map[x] ◁ map[y]`; preservation of `◁⁻¹` follows.
    pub fn new(dom: FiniteRack, cod: FiniteRack, map: Vec<usize>) -> Result<Self> {
        if map.len() != dom.order() {
            return Err(Error::Shape(format!(
                "map has length {}, domain has order {}",
                map.len(),
                dom.order()
            )));
        }
        if let Some(&bad) = map.iter().find(|&&v| v >= cod.order()) {
            return Err(Error::Shape(format!("map value {bad} out of range")));
        }
        for x in 0..dom.order() {
            for y in 0..dom.order() {
                if map[dom.op(x, y)] != cod.op(map[x], map[y]) {
                    return Err(Error::NotAHomomorphism { x, y });
                }
            }
        }
        let mut hit = vec![false; cod.order()];
        for &v in &map {
            hit[v] = true;
        }
        let surjective = hit.iter().all(|&h| h);
        Ok(RackHom {
            dom,
            cod,
            map,
            surjective,
        })
    }

    pub fn identity(rack: &FiniteRack) -> Self {
        RackHom {
            dom: rack.clone(),
            cod: rack.clone(),
            map: (0..rack.order()).collect(),
            surjective: true,
        }
    }

    /// The unique map to the one-element rack.
    pub fn to_terminal(rack: &FiniteRack) -> Self {
        RackHom {
            dom: rack.clone(),
            cod: FiniteRack::trivial(1),
            map: vec![0; rack.order()],
            surjective: true,
        }
    }

    pub fn dom(&self) -> &FiniteRack {
        &self.dom
    }

    pub fn cod(&self) -> &FiniteRack {
        &self.cod
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn is_surjective(&self) -> bool {
        self.surjective
    }

    pub fn require_surjective(&self) -> Result<()> {
        if self.surjective {
            return Ok(());
        }
        let mut hit = vec![false; self.cod.order()];
        for &v in &self.map {
            hit[v] = true;
        }
        let missing = hit.iter().position(|&h| !h).unwrap_or(0);
        Err(Error::NotSurjective { missing })
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &RackHom) -> Result<RackHom> {
        if self.cod != *other.dom() {
            return Err(Error::Shape("composable maps need matching (co)domains".into()));
        }
        RackHom::new(
            self.dom.clone(),
            other.cod.clone(),
            self.map.iter().map(|&x| other.apply(x)).collect(),
        )
    }

    /// Pairs `(a, b)` with `f(a) = f(b)`, in row-major order.
    pub fn kernel_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.dom.order();
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if self.map[a] == self.map[b] {
                    out.push((a, b));
                }
            }
        }
        out
    }
}

/// Pullback of `f: A → C` and `g: B → C`: the subrack of `A × B` on pairs
/// with equal image, with both projections. Elements are listed in
/// row-major order of `(a, b)` and labelled `(a,b)`.
pub fn pullback(f: &RackHom, g: &RackHom) -> Result<(FiniteRack, RackHom, RackHom)> {
    if f.cod() != g.cod() {
        return Err(Error::Shape("pullback needs a common codomain".into()));
    }
    let (a, b) = (f.dom(), g.dom());
    let mut pairs = Vec::new();
    for x in 0..a.order() {
        for y in 0..b.order() {
            if f.apply(x) == g.apply(y) {
                pairs.push((x, y));
            }
        }
    }
    let index = |p: (usize, usize)| pairs.binary_search(&p).expect("pullback is closed");
    let table: Vec<Vec<usize>> = pairs
        .iter()
        .map(|&(x1, y1)| {
            pairs
                .iter()
                .map(|&(x2, y2)| index((a.op(x1, x2), b.op(y1, y2))))
                .collect()
        })
        .collect();
    let labels = pairs
        .iter()
        .map(|&(x, y)| format!("({},{})", a.label(x), b.label(y)))
        .collect();
    let p = FiniteRack::validate(&table, labels)?;
    let p1 = RackHom::new(p.clone(), a.clone(), pairs.iter().map(|q| q.0).collect())?;
    let p2 = RackHom::new(p.clone(), b.clone(), pairs.iter().map(|q| q.1).collect())?;
    Ok((p, p1, p2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn eta_of_qabs_is_a_hom() {
        let q = corpus::qabs();
        let t2 = FiniteRack::trivial(2);
        let f = RackHom::new(q, t2, vec![0, 0, 1]).unwrap();
        assert!(f.is_surjective());
    }

    #[test]
    fn t2_into_qabs_is_not_a_hom() {
        let q = corpus::qabs();
        let t2 = FiniteRack::trivial(2);
        assert_eq!(
            RackHom::new(t2, q, vec![0, 2]),
            Err(Error::NotAHomomorphism { x: 0, y: 1 })
        );
    }

    #[test]
    fn kernel_pair_of_eta_has_five_elements() {
        let f = corpus::eta_qabs();
        let (p, _, _) = pullback(&f, &f).unwrap();
        assert_eq!(p.order(), 5);
        assert_eq!(p.labels()[1], "(a,b)");
    }

    #[test]
    fn pullback_of_trivial_racks_is_product() {
        let f = RackHom::to_terminal(&FiniteRack::trivial(2));
        let g = RackHom::to_terminal(&FiniteRack::trivial(3));
        let (p, _, _) = pullback(&f, &g).unwrap();
        assert_eq!(p.order(), 6);
        assert!(p.classify().is_trivial);
    }

    #[test]
    fn pullback_along_identity_is_isomorphic() {
        let f = corpus::eta_qabs();
        let id = RackHom::identity(f.cod());
        let (p, p1, _) = pullback(&f, &id).unwrap();
        assert_eq!(p.order(), f.dom().order());
        let mut seen = p1.map().to_vec();
        seen.sort_unstable();
        assert_eq!(seen, vec![0, 1, 2]);
    }

    #[test]
    fn non_surjective_reports_missing_element() {
        let t2 = FiniteRack::trivial(2);
        let f = RackHom::new(t2.clone(), t2, vec![0, 0]).unwrap();
        assert_eq!(f.require_surjective(), Err(Error::NotSurjective { missing: 1 }));
    }
}
