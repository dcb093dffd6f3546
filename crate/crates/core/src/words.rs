//! Combinatorics of contiguous blocks in words.

/// Calls `visit` with every decomposition of `0..d` into consecutive nonempty
/// blocks, each given as a half-open range `(start, end)` in increasing order.
pub fn for_each_partition(d: usize, mut visit: impl FnMut(&[(usize, usize)])) {
    if d == 0 {
        return;
    }
    let mut blocks = Vec::with_capacity(d);
    for cuts in 0u64..(1u64 << (d - 1)) {
        blocks.clear();
        let mut start = 0;
        for i in 0..d - 1 {
            if cuts >> i & 1 == 1 {
                blocks.push((start, i + 1));
                start = i + 1;
            }
        }
        blocks.push((start, d));
        visit(&blocks);
    }
}

/// Every contiguous block `(start, len)` of a word of length `d`.
pub fn blocks(d: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..d).flat_map(move |s| (1..=d - s).map(move |m| (s, m)))
}

/// `word[..s] ++ [mid] ++ word[s + m..]`.
pub fn splice<G: Clone>(word: &[G], s: usize, m: usize, mid: G) -> Vec<G> {
    let mut out = Vec::with_capacity(word.len() + 1 - m);
    out.extend_from_slice(&word[..s]);
    out.push(mid);
    out.extend_from_slice(&word[s + m..]);
    out
}
