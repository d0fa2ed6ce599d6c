//! Exhaustive search for a large set of KTS(9) on `GF(7) ∪ {∞₁, ∞₂}`.
//!
//! Works on plain integers 0..9 (7 = ∞₁, 8 = ∞₂) and uses nothing from the
//! library except the final normalization, so it can serve as an oracle.

use lkts_core::base::RawDesigns;
use lkts_core::{normalize_base, BaseLargeSet, Field, Triple};

pub type Block = [u8; 3];

/// Every STS(9) on points 0..9, each as 12 sorted blocks.
pub fn all_sts9() -> Vec<Vec<Block>> {
    fn go(covered: &mut [[bool; 9]; 9], blocks: &mut Vec<Block>, out: &mut Vec<Vec<Block>>) {
        let Some((a, b)) =
            (0..9u8).flat_map(|a| (a + 1..9).map(move |b| (a, b))).find(|&(a, b)| !covered[a as usize][b as usize])
        else {
            let mut sorted = blocks.clone();
            sorted.sort();
            out.push(sorted);
            return;
        };
        for c in b + 1..9 {
            let (ai, bi, ci) = (a as usize, b as usize, c as usize);
            if covered[ai][ci] || covered[bi][ci] {
                continue;
            }
            for (x, y) in [(ai, bi), (ai, ci), (bi, ci)] {
                covered[x][y] = true;
            }
            blocks.push([a, b, c]);
            go(covered, blocks, out);
            blocks.pop();
            for (x, y) in [(ai, bi), (ai, ci), (bi, ci)] {
                covered[x][y] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut [[false; 9]; 9], &mut Vec::new(), &mut out);
    out
}

/// Partitions 12 blocks into 4 parallel classes; `None` if impossible.
pub fn resolve(blocks: &[Block]) -> Option<Vec<Vec<Block>>> {
    fn mask(b: &Block) -> u16 {
        b.iter().fold(0, |m, &p| m | 1 << p)
    }
    fn go(blocks: &[Block], used: &mut Vec<bool>, classes: &mut Vec<Vec<Block>>) -> bool {
        let Some(first) = used.iter().position(|u| !u) else { return true };
        used[first] = true;
        let m0 = mask(&blocks[first]);
        for i in first + 1..blocks.len() {
            if used[i] || mask(&blocks[i]) & m0 != 0 {
                continue;
            }
            for j in i + 1..blocks.len() {
                if used[j] || mask(&blocks[j]) & (m0 | mask(&blocks[i])) != 0 {
                    continue;
                }
                used[i] = true;
                used[j] = true;
                classes.push(vec![blocks[first], blocks[i], blocks[j]]);
                if go(blocks, used, classes) {
                    return true;
                }
                classes.pop();
                used[i] = false;
                used[j] = false;
            }
        }
        used[first] = false;
        false
    }
    let mut classes = Vec::new();
    go(blocks, &mut vec![false; blocks.len()], &mut classes).then_some(classes)
}

fn triple_index(b: &Block) -> usize {
    // colex rank among the 84 triples of 0..9
    let [a, b, c] = b.map(usize::from);
    c * (c - 1) * (c - 2) / 6 + b * (b - 1) / 2 + a
}

/// Seven pairwise disjoint STS(9), found by depth-first exact cover over
/// the 84 triples, in the order produced by [`all_sts9`].
pub fn find_large_set(systems: &[Vec<Block>]) -> Option<Vec<usize>> {
    let masks: Vec<u128> = systems.iter().map(|s| s.iter().fold(0u128, |m, b| m | 1 << triple_index(b))).collect();
    let full = (1u128 << 84) - 1;
    fn go(masks: &[u128], full: u128, used: u128, chosen: &mut Vec<usize>) -> bool {
        if used == full {
            return true;
        }
        let target = (!used & full).trailing_zeros();
        for (i, &m) in masks.iter().enumerate() {
            if m >> target & 1 == 1 && m & used == 0 {
                chosen.push(i);
                if go(masks, full, used | m, chosen) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    let mut chosen = Vec::new();
    go(&masks, full, 0, &mut chosen).then_some(chosen)
}

/// Runs the whole search and normalizes the result.
pub fn oracle_lkts9() -> BaseLargeSet {
    let systems = all_sts9();
    assert_eq!(systems.len(), 840);
    let chosen = find_large_set(&systems).expect("an LKTS(9) exists");
    let raw: RawDesigns = chosen
        .iter()
        .map(|&i| {
            resolve(&systems[i])
                .expect("every STS(9) is resolvable")
                .into_iter()
                .map(|class| {
                    class.iter().map(|&[a, b, c]| Triple::from_ids(a.into(), b.into(), c.into()).unwrap()).collect()
                })
                .collect()
        })
        .collect();
    normalize_base(&Field::new(7, 1).unwrap(), raw).expect("search output is a large set")
}
