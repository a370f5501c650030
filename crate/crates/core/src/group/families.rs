//! Named group families: the small groups used throughout the test battery.

use super::{Element, FiniteGroup, GroupError};

/// Largest `n` accepted by [`symmetric`].
pub const MAX_SYMMETRIC_DEGREE: usize = 4;

/// The groups of the standard verification battery, in order.
pub const BATTERY: [&str; 7] = ["c2", "c3", "c4", "v4", "s3", "d4", "q8"];

pub fn cyclic(n: usize) -> Result<FiniteGroup, GroupError> {
    if n == 0 {
        return Err(GroupError::Unsupported("cyclic group of order 0".into()));
    }
    let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
    let names = (0..n)
        .map(|a| match a {
            0 => "e".to_string(),
            1 => "a".to_string(),
            _ => format!("a^{a}"),
        })
        .collect();
    Ok(FiniteGroup::from_table(table, Some(names))?.with_name(format!("C{n}")))
}

/// The dihedral group of order `2n`; element `i + n·j` is `r^i s^j`.
pub fn dihedral(n: usize) -> Result<FiniteGroup, GroupError> {
    if n == 0 {
        return Err(GroupError::Unsupported("dihedral group D0".into()));
    }
    let order = 2 * n;
    let split = |x: usize| (x % n, x / n);
    let mut table = vec![vec![0; order]; order];
    for (x, row) in table.iter_mut().enumerate() {
        let (i, a) = split(x);
        for (y, cell) in row.iter_mut().enumerate() {
            let (j, b) = split(y);
            // r^i s^a r^j s^b = r^(i ± j) s^(a+b)
            let rot = if a == 0 { (i + j) % n } else { (i + n - j) % n };
            *cell = rot + n * ((a + b) % 2);
        }
    }
    let names = (0..order)
        .map(|x| {
            let (i, a) = split(x);
            match (i, a) {
                (0, 0) => "e".to_string(),
                (1, 0) => "r".to_string(),
                (_, 0) => format!("r^{i}"),
                (0, _) => "s".to_string(),
                (1, _) => "rs".to_string(),
                _ => format!("r^{i}s"),
            }
        })
        .collect();
    Ok(FiniteGroup::from_table(table, Some(names))?.with_name(format!("D{n}")))
}

/// Permutations of `{0..n}` in lexicographic order (identity first), with
/// `(a·b)(x) = a(b(x))`.
pub fn symmetric(n: usize) -> Result<FiniteGroup, GroupError> {
    if n == 0 || n > MAX_SYMMETRIC_DEGREE {
        return Err(GroupError::Unsupported(format!(
            "symmetric group S{n} (supported degrees 1..={MAX_SYMMETRIC_DEGREE})"
        )));
    }
    let perms = permutations(n);
    let index = |p: &[usize]| perms.iter().position(|q| q == p).expect("closed under composition");
    let table = perms
        .iter()
        .map(|a| perms.iter().map(|b| index(&b.iter().map(|&x| a[x]).collect::<Vec<_>>())).collect())
        .collect();
    let names = perms.iter().map(|p| cycle_notation(p)).collect();
    Ok(FiniteGroup::from_table(table, Some(names))?.with_name(format!("S{n}")))
}

/// Finds the element of a group built by [`symmetric`] acting as `perm`
/// (zero-based images).
pub fn permutation_element(g: &FiniteGroup, perm: &[usize]) -> Option<Element> {
    let name = cycle_notation(perm);
    g.elements().find(|&x| g.element_name(x) == name)
}

pub fn product(a: &FiniteGroup, b: &FiniteGroup) -> FiniteGroup {
    let (na, nb) = (a.order(), b.order());
    let table = (0..na * nb)
        .map(|x| (0..na * nb).map(|y| a.mul(x / nb, y / nb) * nb + b.mul(x % nb, y % nb)).collect())
        .collect();
    let names =
        (0..na * nb)
            .map(|x| {
                if x == 0 {
                    "e".to_string()
                } else {
                    format!("({},{})", a.element_name(x / nb), b.element_name(x % nb))
                }
            })
            .collect();
    let g = FiniteGroup::from_table(table, Some(names)).expect("direct products are groups");
    g.with_name(format!("{a}x{b}"))
}

pub fn klein_four() -> FiniteGroup {
    let c2 = cyclic(2).expect("C2");
    product(&c2, &c2).with_name("V4")
}

/// The quaternion group `{±1, ±i, ±j, ±k}`; element `u + 4·s` is `(-1)^s·u`
/// with `u` running over `1, i, j, k`.
pub fn quaternion() -> FiniteGroup {
    // unit products: (sign, unit)
    const UNIT: [[(usize, usize); 4]; 4] = [
        [(0, 0), (0, 1), (0, 2), (0, 3)],
        [(0, 1), (1, 0), (0, 3), (1, 2)],
        [(0, 2), (1, 3), (1, 0), (0, 1)],
        [(0, 3), (0, 2), (1, 1), (1, 0)],
    ];
    let table = (0..8)
        .map(|x| {
            (0..8)
                .map(|y| {
                    let (s, u) = UNIT[x % 4][y % 4];
                    u + 4 * ((s + x / 4 + y / 4) % 2)
                })
                .collect()
        })
        .collect();
    let names = ["1", "i", "j", "k", "-1", "-i", "-j", "-k"].map(String::from).to_vec();
    FiniteGroup::from_table(table, Some(names)).expect("Q8 table").with_name("Q8")
}

/// Resolves a family name: `c<n>`, `d<n>`, `s<n>`, `v4`, `q8`, or products
/// written `a*b`.
pub fn by_name(name: &str) -> Result<FiniteGroup, GroupError> {
    let name = name.trim().to_ascii_lowercase();
    if let Some((l, r)) = name.split_once(['*', 'x']) {
        return Ok(product(&by_name(l)?, &by_name(r)?));
    }
    let unknown = || GroupError::Unsupported(format!("unknown group family {name:?}"));
    match name.as_str() {
        "v4" | "k4" => return Ok(klein_four()),
        "q8" => return Ok(quaternion()),
        "trivial" | "e" => return cyclic(1),
        _ => {}
    }
    let (kind, n) = name.split_at(1);
    let n: usize = n.parse().map_err(|_| unknown())?;
    match kind {
        "c" => cyclic(n),
        "d" => dihedral(n),
        "s" => symmetric(n),
        _ => Err(unknown()),
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                go(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// One-based cycle notation, `"e"` for the identity.
fn cycle_notation(p: &[usize]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] == start {
            continue;
        }
        out.push('(');
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            out.push_str(&(x + 1).to_string());
            x = p[x];
        }
        out.push(')');
    }
    if out.is_empty() {
        "e".into()
    } else {
        out
    }
}
