use polyo::generate::{enumerate_closed_paths, LabelledPath};

fn main() {
    let max: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(18);
    let paths = enumerate_closed_paths(max);
    let mut by_size = std::collections::BTreeMap::<usize, (usize, usize, usize)>::new();
    for p in paths {
        let n = p.len();
        let l = LabelledPath::label(p);
        let e = by_size.entry(n).or_default();
        e.0 += 1;
        if l.non_prime { e.1 += 1; }
        if !l.detectors_agree() { e.2 += 1; }
    }
    for (n, (all, np, bad)) in by_size {
        println!("{n:>3} cells: {all:>6} paths, {np:>5} non-prime, {bad} detector disagreements");
    }
}
