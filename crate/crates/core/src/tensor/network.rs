//! A small tensor-network contractor.
//!
//! Labels name summation indices. A label may be shared by any number of
//! nodes and may appear several times in one node or in the output; all
//! occurrences are tied to the same index value (a hyperedge, i.e. a
//! copying spider). Labels can be merged after creation, which is how wires
//! get connected while a morphism is being unfolded.

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Origin {
    /// One of the evaluation inputs, as supplied by the caller.
    Input,
    /// A structure tensor created by a generator.
    Generated,
}

#[derive(Clone, Debug)]
pub(crate) struct Node {
    pub data: Vec<f64>,
    pub labels: Vec<usize>,
    pub origin: Origin,
}

#[derive(Default)]
pub(crate) struct Network {
    dims: Vec<usize>,
    parent: Vec<usize>,
    pub nodes: Vec<Node>,
}

impl Network {
    pub fn fresh(&mut self, dim: usize) -> usize {
        self.dims.push(dim);
        self.parent.push(self.parent.len());
        self.parent.len() - 1
    }

    pub fn dim(&self, label: usize) -> usize {
        self.dims[label]
    }

    pub fn find(&self, mut l: usize) -> usize {
        while self.parent[l] != l {
            l = self.parent[l];
        }
        l
    }

    /// Ties two labels together; fails with both dimensions if they differ.
    pub fn union(&mut self, a: usize, b: usize) -> Result<(), (usize, usize)> {
        let (ra, rb) = (self.find(a), self.find(b));
        if self.dims[ra] != self.dims[rb] {
            return Err((self.dims[ra], self.dims[rb]));
        }
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
        Ok(())
    }

    pub fn add(&mut self, data: Vec<f64>, labels: Vec<usize>, origin: Origin) -> usize {
        debug_assert_eq!(
            data.len(),
            labels.iter().map(|&l| self.dims[l]).product::<usize>()
        );
        self.nodes.push(Node {
            data,
            labels,
            origin,
        });
        self.nodes.len() - 1
    }

    /// Does any node other than `except` mention a label of this class?
    pub fn class_used(&self, label: usize, except: Option<usize>) -> bool {
        let r = self.find(label);
        self.nodes
            .iter()
            .enumerate()
            .filter(|(i, _)| Some(*i) != except)
            .any(|(_, n)| n.labels.iter().any(|&l| self.find(l) == r))
    }

    /// Contracts everything, returning the entries indexed by `output`.
    pub fn contract(&self, output: &[usize]) -> Vec<f64> {
        let output: Vec<usize> = output.iter().map(|&l| self.find(l)).collect();
        let mut nodes: Vec<(Vec<f64>, Vec<usize>)> = self
            .nodes
            .iter()
            .map(|n| {
                (
                    n.data.clone(),
                    n.labels.iter().map(|&l| self.find(l)).collect(),
                )
            })
            .collect();

        while nodes.len() > 1 {
            let (i, j) = self.pick_pair(&nodes);
            let (bd, bl) = nodes.swap_remove(j);
            let (ad, al) = nodes.swap_remove(i);
            let mut keep: Vec<usize> = Vec::new();
            for &l in al.iter().chain(&bl) {
                let needed = output.contains(&l) || nodes.iter().any(|(_, ls)| ls.contains(&l));
                if needed && !keep.contains(&l) {
                    keep.push(l);
                }
            }
            let data = einsum2(&ad, &al, &bd, &bl, &keep, &self.dims);
            nodes.push((data, keep));
        }
        let (data, labels) = nodes.pop().unwrap_or((vec![1.0], Vec::new()));
        einsum2(&data, &labels, &[1.0], &[], &output, &self.dims)
    }

    /// The cheapest pair of nodes sharing a label, or the two smallest nodes
    /// if none do. Indices are returned with `i < j`.
    fn pick_pair(&self, nodes: &[(Vec<f64>, Vec<usize>)]) -> (usize, usize) {
        let mut best: Option<(usize, usize, usize)> = None;
        for i in 0..nodes.len() {
            for j in i + 1..nodes.len() {
                if !nodes[i].1.iter().any(|l| nodes[j].1.contains(l)) {
                    continue;
                }
                let mut union: Vec<usize> = nodes[i].1.clone();
                for &l in &nodes[j].1 {
                    if !union.contains(&l) {
                        union.push(l);
                    }
                }
                let cost: usize = union.iter().map(|&l| self.dims[l]).product();
                if best.is_none_or(|(c, _, _)| cost < c) {
                    best = Some((cost, i, j));
                }
            }
        }
        if let Some((_, i, j)) = best {
            return (i, j);
        }
        let mut order: Vec<usize> = (0..nodes.len()).collect();
        order.sort_by_key(|&k| (nodes[k].0.len(), k));
        let (a, b) = (order[0], order[1]);
        (a.min(b), a.max(b))
    }
}

/// `out[o] = Σ a[la] · b[lb]` over every label not in `out`. Repeated labels
/// read or write diagonals; labels only in `out` broadcast.
pub(crate) fn einsum2(
    a: &[f64],
    la: &[usize],
    b: &[f64],
    lb: &[usize],
    out: &[usize],
    dims: &[usize],
) -> Vec<f64> {
    let mut labels: Vec<usize> = Vec::new();
    for &l in la.iter().chain(lb).chain(out) {
        if !labels.contains(&l) {
            labels.push(l);
        }
    }
    let strides = |ls: &[usize]| -> Vec<usize> {
        // per-label stride into a row-major tensor with these labels
        let mut s = vec![0usize; labels.len()];
        let mut step = 1usize;
        for &l in ls.iter().rev() {
            let k = labels.iter().position(|&x| x == l).unwrap();
            s[k] += step;
            step *= dims[l];
        }
        s
    };
    let (sa, sb, so) = (strides(la), strides(lb), strides(out));
    let ldims: Vec<usize> = labels.iter().map(|&l| dims[l]).collect();
    let out_len: usize = out.iter().map(|&l| dims[l]).product();
    let mut result = vec![0.0; out_len];
    let total: usize = ldims.iter().product();
    if total == 0 {
        return result;
    }
    let mut idx = vec![0usize; labels.len()];
    let (mut oa, mut ob, mut oo) = (0usize, 0usize, 0usize);
    for _ in 0..total {
        result[oo] += a[oa] * b[ob];
        for k in (0..labels.len()).rev() {
            idx[k] += 1;
            oa += sa[k];
            ob += sb[k];
            oo += so[k];
            if idx[k] < ldims[k] {
                break;
            }
            oa -= sa[k] * ldims[k];
            ob -= sb[k] * ldims[k];
            oo -= so[k] * ldims[k];
            idx[k] = 0;
        }
    }
    result
}
