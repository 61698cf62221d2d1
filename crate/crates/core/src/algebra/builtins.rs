//! Quivers with potential that ship with the toolkit.

use super::{Arrow, Quiver};

fn arrow(id: &str, tail: &str, head: &str) -> Arrow {
    Arrow { id: id.into(), tail: tail.into(), head: head.into() }
}

/// Two vertices, `A, B: 0 -> 1`, `C, D: 1 -> 0`, `W = BCAD - ACBD`.
pub fn conifold() -> Quiver {
    Quiver::new(
        ["0", "1"],
        [arrow("A", "0", "1"), arrow("B", "0", "1"), arrow("C", "1", "0"), arrow("D", "1", "0")],
    )
    .and_then(|q| q.with_potential_str("BCAD - ACBD"))
    .expect("conifold quiver")
}

/// One vertex with loops `x, y, z` and `W = xyz - xzy`.
pub fn c3() -> Quiver {
    Quiver::new(["0"], [arrow("x", "0", "0"), arrow("y", "0", "0"), arrow("z", "0", "0")])
        .and_then(|q| q.with_potential_str("xyz - xzy"))
        .expect("C3 quiver")
}

/// Three vertices with arrows `a_i: 0 -> 1`, `b_i: 1 -> 2`, `c_i: 2 -> 0`.
pub fn kp2() -> Quiver {
    let mut arrows = Vec::new();
    for (letter, tail, head) in [("a", "0", "1"), ("b", "1", "2"), ("c", "2", "0")] {
        for i in 1..=3 {
            arrows.push(arrow(&format!("{letter}{i}"), tail, head));
        }
    }
    Quiver::new(["0", "1", "2"], arrows)
        .and_then(|q| q.with_potential_str("a1b2c3 - a1b3c2 + a2b3c1 - a2b1c3 + a3b1c2 - a3b2c1"))
        .expect("local P2 quiver")
}

/// The conifold quiver with a loop at each vertex and
/// `W = -s X^{n+1} - s Y^{n+1} - XAC + XBD - YCA + YDB`, `s = (-1)^{n(n-1)/2}`.
///
/// Words are read in traversal order, which puts `X` at vertex 0 and `Y` at 1.
pub fn laufer(n: u32) -> Quiver {
    assert!(n >= 1, "laufer parameter must be at least 1");
    let s: i64 = if (n as u64 * (n as u64 - 1) / 2).is_multiple_of(2) { 1 } else { -1 };
    let q = Quiver::new(
        ["0", "1"],
        [
            arrow("A", "0", "1"),
            arrow("B", "0", "1"),
            arrow("C", "1", "0"),
            arrow("D", "1", "0"),
            arrow("X", "0", "0"),
            arrow("Y", "1", "1"),
        ],
    )
    .expect("laufer quiver");
    let p = n + 1;
    let sign = if s > 0 { '-' } else { '+' };
    let text = format!("{sign} X^{p} {sign} Y^{p} - XAC + XBD - YCA + YDB");
    q.with_potential_str(&text).expect("laufer potential")
}

/// Looks up a builtin by name: `conifold`, `c3`, `kp2` or `laufer:<n>`.
pub fn by_name(name: &str) -> Option<Quiver> {
    match name {
        "conifold" => Some(conifold()),
        "c3" => Some(c3()),
        "kp2" => Some(kp2()),
        _ => {
            let n: u32 = name.strip_prefix("laufer:")?.parse().ok()?;
            (n >= 1).then(|| laufer(n))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::CyclicWord;

    #[test]
    fn laufer_signs_follow_the_printed_formula() {
        let x = |p: usize| CyclicWord::new(vec!["X"; p]).unwrap();
        assert_eq!(laufer(1).potential().coeff(&x(2)), -1);
        assert_eq!(laufer(2).potential().coeff(&x(3)), 1);
        assert_eq!(laufer(3).potential().coeff(&x(4)), 1);
        assert_eq!(laufer(4).potential().coeff(&x(5)), -1);
        let w = laufer(2);
        assert_eq!(w.potential().len(), 6);
        assert_eq!(w.potential().coeff(&CyclicWord::new(["X", "A", "C"]).unwrap()), -1);
        assert_eq!(w.potential().coeff(&CyclicWord::new(["Y", "D", "B"]).unwrap()), 1);
    }

    #[test]
    fn names_resolve() {
        assert_eq!(by_name("laufer:3"), Some(laufer(3)));
        assert!(by_name("laufer:0").is_none());
        assert!(by_name("nope").is_none());
    }
}
