use crate::walk::Walk;

/// Chronological loop erasure of a walk together with the walk times that
/// survive it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LoopErasure {
    pub path: Vec<usize>,
    /// `λ_k`: strictly increasing, `walk[λ_k] = path[k]`.
    pub lambda_times: Vec<usize>,
}

impl LoopErasure {
    pub fn len(&self) -> usize {
        self.path.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// Last time each vertex is visited, indexed by vertex id.
pub(crate) fn last_visits(x: &[usize]) -> Vec<usize> {
    let top = x.iter().copied().max().unwrap_or(0);
    let mut last = vec![usize::MAX; top + 1];
    for (t, &v) in x.iter().enumerate() {
        last[v] = t;
    }
    last
}

/// `λ_0 = 0`, `λ_{k+1} = 1 + max{t : X_t = X_{λ_k}}`, stopping once that
/// maximum is `L`. Linear in the walk length.
pub fn loop_erase(x: &Walk) -> LoopErasure {
    let xs = x.vertices();
    let last = last_visits(xs);
    let end = xs.len() - 1;
    let mut path = Vec::new();
    let mut lambda_times = Vec::new();
    let mut t = 0;
    loop {
        path.push(xs[t]);
        lambda_times.push(t);
        let m = last[xs[t]];
        if m == end {
            break;
        }
        t = m + 1;
    }
    LoopErasure { path, lambda_times }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn walk(v: &[usize]) -> Walk {
        Walk::new(v.to_vec()).unwrap()
    }

    #[test]
    fn simple_path_is_fixed() {
        let le = loop_erase(&walk(&[4, 2, 7, 1]));
        assert_eq!(le.path, vec![4, 2, 7, 1]);
        assert_eq!(le.lambda_times, vec![0, 1, 2, 3]);
    }

    #[test]
    fn hand_traced_loop() {
        // (a, b, a, c): the last visit to a is time 2, so the next kept time is 3
        let le = loop_erase(&walk(&[0, 1, 0, 2]));
        assert_eq!(le.path, vec![0, 2]);
        assert_eq!(le.lambda_times, vec![0, 3]);
    }

    #[test]
    fn constant_walk() {
        let le = loop_erase(&walk(&[5, 5, 5]));
        assert_eq!(le.path, vec![5]);
        assert_eq!(le.lambda_times, vec![0]);
        assert_eq!(le.len(), 0);
    }

    #[test]
    fn matches_stack_erasure() {
        // Erasing loops as they close with an explicit stack gives the same path.
        let xs = [0, 1, 2, 1, 3, 0, 4, 4, 5, 3, 6];
        let mut stack: Vec<usize> = Vec::new();
        for &v in &xs {
            if let Some(i) = stack.iter().position(|&u| u == v) {
                stack.truncate(i + 1);
            } else {
                stack.push(v);
            }
        }
        assert_eq!(loop_erase(&walk(&xs)).path, stack);
    }
}
