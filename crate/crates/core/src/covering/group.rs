//! Finite groups given by a validated multiplication table.

use crate::error::CoveringError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    tokens: Vec<String>,
    table: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
}

impl FiniteGroup {
    /// Checks closure, associativity, identity and inverses.
    pub fn from_table(
        name: impl Into<String>,
        tokens: Vec<String>,
        table: Vec<Vec<usize>>,
    ) -> Result<Self, CoveringError> {
        let r = tokens.len();
        let bad = |msg: String| Err(CoveringError::InvalidGroup(msg));
        if r == 0 {
            return bad("empty group".into());
        }
        if table.len() != r || table.iter().any(|row| row.len() != r) {
            return bad(format!("multiplication table must be {r}x{r}"));
        }
        if table.iter().flatten().any(|&x| x >= r) {
            return bad("table entry out of range".into());
        }
        for a in 0..r {
            for b in 0..r {
                for c in 0..r {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return bad(format!(
                            "not associative at ({}, {}, {})",
                            tokens[a], tokens[b], tokens[c]
                        ));
                    }
                }
            }
        }
        let Some(identity) = (0..r).find(|&e| (0..r).all(|a| table[e][a] == a && table[a][e] == a))
        else {
            return bad("no identity element".into());
        };
        let mut inverse = Vec::with_capacity(r);
        for a in 0..r {
            match (0..r).find(|&b| table[a][b] == identity && table[b][a] == identity) {
                Some(b) => inverse.push(b),
                None => return bad(format!("{} has no inverse", tokens[a])),
            }
        }
        Ok(FiniteGroup { name: name.into(), tokens, table, identity, inverse })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.tokens.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn token(&self, a: usize) -> &str {
        &self.tokens[a]
    }

    pub fn element(&self, token: &str) -> Option<usize> {
        self.tokens.iter().position(|t| t == token)
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order()
    }
}

/// `Z_r` with tokens `0..r-1`.
pub fn cyclic(r: usize) -> FiniteGroup {
    let tokens = (0..r).map(|a| a.to_string()).collect();
    let table = (0..r).map(|a| (0..r).map(|b| (a + b) % r).collect()).collect();
    FiniteGroup::from_table(format!("Z{r}"), tokens, table).expect("cyclic table is a group")
}

/// `Z_2^k` with bitstring tokens, most significant bit first.
pub fn elementary_abelian(k: u32) -> FiniteGroup {
    let r = 1usize << k;
    let width = k as usize;
    let tokens = (0..r).map(|a| format!("{a:0width$b}")).collect();
    let table = (0..r).map(|a| (0..r).map(|b| a ^ b).collect()).collect();
    FiniteGroup::from_table(format!("Z2^{k}"), tokens, table).expect("xor table is a group")
}

/// Permutations of `{1, 2, 3}` in the order of [`S3_TOKENS`].
pub const S3_PERMS: [[usize; 3]; 6] = [
    [1, 2, 3],
    [2, 1, 3],
    [3, 2, 1],
    [1, 3, 2],
    [2, 3, 1],
    [3, 1, 2],
];

pub const S3_TOKENS: [&str; 6] = ["e", "(12)", "(13)", "(23)", "(123)", "(132)"];

/// `S_3` with product `(gh)(x) = g(h(x))`.
pub fn symmetric3() -> FiniteGroup {
    let compose = |g: usize, h: usize| {
        let p: Vec<usize> = (0..3).map(|x| S3_PERMS[g][S3_PERMS[h][x] - 1]).collect();
        S3_PERMS.iter().position(|q| q[..] == p[..]).expect("closed under composition")
    };
    let table = (0..6).map(|g| (0..6).map(|h| compose(g, h)).collect()).collect();
    let tokens = S3_TOKENS.iter().map(|s| s.to_string()).collect();
    FiniteGroup::from_table("S3", tokens, table).expect("S3 table is a group")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_groups() {
        let g = cyclic(4);
        assert_eq!(g.order(), 4);
        assert_eq!(g.mul(3, 2), 1);
        assert_eq!(g.inv(1), 3);
        assert_eq!(g.element("2"), Some(2));
    }

    #[test]
    fn xor_groups() {
        let g = elementary_abelian(2);
        assert_eq!(g.token(1), "01");
        assert_eq!(g.mul(g.element("10").unwrap(), g.element("11").unwrap()), 1);
        assert!((0..4).all(|a| g.inv(a) == a));
    }

    #[test]
    fn s3_structure() {
        let g = symmetric3();
        let c = g.element("(123)").unwrap();
        let s = g.element("(12)").unwrap();
        // (12) after (123): 1 -> 2 -> 1, 2 -> 3 -> 3
        assert_eq!(g.token(g.mul(s, c)), "(23)");
        assert_eq!(g.token(g.mul(c, s)), "(13)");
        assert_eq!(g.inv(c), g.element("(132)").unwrap());
        assert_eq!(g.mul(c, g.mul(c, c)), g.identity());
    }

    #[test]
    fn rejects_non_groups() {
        let tokens = vec!["a".into(), "b".into()];
        let table = vec![vec![0, 0], vec![0, 1]];
        assert!(FiniteGroup::from_table("bad", tokens, table).is_err());
    }
}
