use crate::congruence::Congruence;
use crate::hom::RackHom;

/// All set partitions of `0..n` as restricted growth strings.
pub fn set_partitions(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = vec![0; n];
    fn go(i: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == cur.len() {
            out.push(cur.clone());
            return;
        }
        for b in 0..=max + 1 {
            cur[i] = b;
            go(i + 1, max.max(b), cur, out);
        }
    }
    if n == 0 {
        return vec![vec![]];
    }
    go(1, 0, &mut cur, &mut out);
    out
}

/// Every congruence `D ≤ Eq(f)` for which the induced map `A/D → B` is a
/// covering, found by enumerating all partitions of the domain.
pub fn congruences_below(f: &RackHom) -> Vec<Congruence> {
    let dom = f.dom();
    let eq = Congruence::kernel(f);
    let kp = f.kernel_pairs();
    set_partitions(dom.order())
        .into_iter()
        .filter_map(|labels| Congruence::from_partition(dom, &labels).ok())
        .filter(|d| d.is_finer_than(&eq))
        .filter(|d| {
            (0..dom.order()).all(|x| {
                kp.iter()
                    .all(|&(a, b)| d.related(dom.op_inv(dom.op(x, a), b), x))
            })
        })
        .collect()
}
