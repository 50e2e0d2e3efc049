//! Knuth-Morris-Pratt search over arbitrary comparable symbols.
//!
//! Used on integer alphabets (distance sequences), so no hashing is involved
//! and the worst case is linear in `text.len() + pattern.len()`.

/// Failure function: `fail[q]` is the length of the longest proper prefix of
/// `pattern[..=q]` that is also a suffix of it.
pub fn failure<T: PartialEq>(pattern: &[T]) -> Vec<usize> {
    let mut fail = vec![0; pattern.len()];
    let mut k = 0;
    for q in 1..pattern.len() {
        while k > 0 && pattern[k] != pattern[q] {
            k = fail[k - 1];
        }
        if pattern[k] == pattern[q] {
            k += 1;
        }
        fail[q] = k;
    }
    fail
}

/// Iterator over start positions of (possibly overlapping) occurrences of a pattern.
pub struct Matches<'a, T> {
    pattern: &'a [T],
    text: &'a [T],
    fail: Vec<usize>,
    matched: usize,
    pos: usize,
}

impl<T: PartialEq> Iterator for Matches<'_, T> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        let m = self.pattern.len();
        if m == 0 {
            return None;
        }
        while self.pos < self.text.len() {
            let c = &self.text[self.pos];
            self.pos += 1;
            while self.matched > 0 && self.pattern[self.matched] != *c {
                self.matched = self.fail[self.matched - 1];
            }
            if self.pattern[self.matched] == *c {
                self.matched += 1;
            }
            if self.matched == m {
                self.matched = self.fail[m - 1];
                return Some(self.pos - m);
            }
        }
        None
    }
}

pub fn find_all<'a, T: PartialEq>(pattern: &'a [T], text: &'a [T]) -> Matches<'a, T> {
    Matches {
        pattern,
        text,
        fail: failure(pattern),
        matched: 0,
        pos: 0,
    }
}

/// Offsets `r` such that `text[(r + i) % n] == pattern[i]` for all `i`, in
/// increasing order. Both slices must have the same length `n`.
pub fn cyclic_offsets<T: PartialEq + Clone>(pattern: &[T], text: &[T]) -> Vec<usize> {
    if pattern.len() != text.len() || pattern.is_empty() {
        return Vec::new();
    }
    let n = text.len();
    let doubled: Vec<T> = text.iter().chain(&text[..n - 1]).cloned().collect();
    find_all(pattern, &doubled).collect()
}

/// Smallest cyclic offset, if any.
pub fn first_cyclic_offset<T: PartialEq + Clone>(pattern: &[T], text: &[T]) -> Option<usize> {
    if pattern.len() != text.len() || pattern.is_empty() {
        return None;
    }
    let n = text.len();
    let doubled: Vec<T> = text.iter().chain(&text[..n - 1]).cloned().collect();
    find_all(pattern, &doubled).next()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive(pattern: &[u8], text: &[u8]) -> Vec<usize> {
        if pattern.is_empty() || pattern.len() > text.len() {
            return vec![];
        }
        (0..=text.len() - pattern.len())
            .filter(|&i| &text[i..i + pattern.len()] == pattern)
            .collect()
    }

    #[test]
    fn failure_function() {
        assert_eq!(failure(b"abab"), vec![0, 0, 1, 2]);
        assert_eq!(failure(b"aabaaab"), vec![0, 1, 0, 1, 2, 2, 3]);
    }

    #[test]
    fn overlapping_matches() {
        let got: Vec<_> = find_all(b"aa", b"aaaa").collect();
        assert_eq!(got, vec![0, 1, 2]);
        let got: Vec<_> = find_all(b"abbab", b"aaaaabbabbbbbbbabbab").collect();
        assert_eq!(got, vec![4, 15]);
    }

    #[test]
    fn cyclic() {
        assert_eq!(cyclic_offsets(&[3, 4, 2], &[2, 3, 4]), vec![1]);
        assert_eq!(cyclic_offsets(&[1, 1], &[1, 1]), vec![0, 1]);
        assert_eq!(first_cyclic_offset(&[1, 2], &[1, 3]), None);
    }

    proptest::proptest! {
        #[test]
        fn agrees_with_naive(text in proptest::collection::vec(0u8..3, 0..40),
                             pattern in proptest::collection::vec(0u8..3, 1..5)) {
            let got: Vec<_> = find_all(&pattern, &text).collect();
            proptest::prop_assert_eq!(got, naive(&pattern, &text));
        }
    }
}
