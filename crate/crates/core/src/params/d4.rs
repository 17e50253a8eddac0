use super::ParameterData;
use crate::exactfield::FieldValue;
use std::fmt;

/// One of the three involutions generating the relative group of a Leonard
/// system: the first inversion (down), the second inversion (ddown), and the
/// dual (star).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum D4Generator {
    Down,
    DDown,
    Star,
}

/// An element of the dihedral group of order 8 acting on Leonard systems,
/// kept in the normal form down^a ddown^b star^s.
///
/// The generators satisfy down² = ddown² = star² = 1 and
/// star·down = ddown·star; down and ddown commute. Group elements act on the
/// right of a system, so in a word the rightmost generator applies first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct D4Element {
    down: bool,
    ddown: bool,
    star: bool,
}

impl D4Element {
    pub fn identity() -> D4Element {
        D4Element {
            down: false,
            ddown: false,
            star: false,
        }
    }

    pub fn generator(g: D4Generator) -> D4Element {
        match g {
            D4Generator::Down => D4Element {
                down: true,
                ddown: false,
                star: false,
            },
            D4Generator::DDown => D4Element {
                down: false,
                ddown: true,
                star: false,
            },
            D4Generator::Star => D4Element {
                down: false,
                ddown: false,
                star: true,
            },
        }
    }

    pub fn has_down(&self) -> bool {
        self.down
    }

    pub fn has_ddown(&self) -> bool {
        self.ddown
    }

    pub fn has_star(&self) -> bool {
        self.star
    }

    /// All 8 elements, identity first, in a fixed order.
    pub fn all() -> [D4Element; 8] {
        let mut out = [D4Element::identity(); 8];
        for (k, e) in out.iter_mut().enumerate() {
            e.down = k & 1 != 0;
            e.ddown = k & 2 != 0;
            e.star = k & 4 != 0;
        }
        out
    }

    /// The composite self ∘ first: apply `first`, then self. Moving the
    /// star of `self` past the inversions of `first` swaps their roles.
    pub fn after(&self, first: &D4Element) -> D4Element {
        let (f_down, f_ddown) = if self.star {
            (first.ddown, first.down)
        } else {
            (first.down, first.ddown)
        };
        D4Element {
            down: self.down ^ f_down,
            ddown: self.ddown ^ f_ddown,
            star: self.star ^ first.star,
        }
    }

    /// Group inverse. Without a star the element is an involution; with one,
    /// the two inversion exponents trade places.
    pub fn inverse(&self) -> D4Element {
        if self.star {
            D4Element {
                down: self.ddown,
                ddown: self.down,
                star: true,
            }
        } else {
            *self
        }
    }

    /// Builds the element a word denotes, leftmost generator outermost (so
    /// the rightmost generator of the word applies first).
    pub fn from_word(word: &[D4Generator]) -> D4Element {
        let mut acc = D4Element::identity();
        for g in word {
            acc = acc.after(&D4Element::generator(*g));
        }
        acc
    }

    pub fn name(&self) -> &'static str {
        match (self.down, self.ddown, self.star) {
            (false, false, false) => "identity",
            (true, false, false) => "down",
            (false, true, false) => "ddown",
            (true, true, false) => "down_ddown",
            (false, false, true) => "star",
            (true, false, true) => "down_star",
            (false, true, true) => "ddown_star",
            (true, true, true) => "down_ddown_star",
        }
    }

    pub fn from_name(name: &str) -> Option<D4Element> {
        D4Element::all().into_iter().find(|e| e.name() == name)
    }
}

impl fmt::Display for D4Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

fn reversed(v: &[FieldValue]) -> Vec<FieldValue> {
    v.iter().rev().cloned().collect()
}

fn apply_star(p: ParameterData) -> ParameterData {
    ParameterData {
        d: p.d,
        theta: p.theta_star,
        theta_star: p.theta,
        varphi: p.varphi,
        phi: reversed(&p.phi),
    }
}

fn apply_ddown(p: ParameterData) -> ParameterData {
    ParameterData {
        d: p.d,
        theta: reversed(&p.theta),
        theta_star: p.theta_star,
        varphi: p.phi,
        phi: p.varphi,
    }
}

fn apply_down(p: ParameterData) -> ParameterData {
    ParameterData {
        d: p.d,
        theta: p.theta,
        theta_star: reversed(&p.theta_star),
        varphi: reversed(&p.phi),
        phi: reversed(&p.varphi),
    }
}

/// The parameter array of the relative Φ^g.
///
/// The parameter maps of the three generators are: star swaps the eigenvalue
/// and dual eigenvalue sequences, keeps the varphi-sequence, and reverses the
/// phi-sequence; ddown reverses the eigenvalue sequence and trades the
/// varphi- and phi-sequences; down reverses the dual eigenvalue sequence and
/// trades the two sequences reversed. The normal form applies star first,
/// then ddown, then down.
pub fn d4_transform(p: &ParameterData, g: &D4Element) -> ParameterData {
    let mut cur = p.clone();
    if g.star {
        cur = apply_star(cur);
    }
    if g.ddown {
        cur = apply_ddown(cur);
    }
    if g.down {
        cur = apply_down(cur);
    }
    cur
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactfield::FieldSpec;

    const RAT: FieldSpec = FieldSpec::Rational;

    fn q(s: &str) -> FieldValue {
        FieldValue::parse(s, &RAT).unwrap()
    }

    fn qv(ss: &[&str]) -> Vec<FieldValue> {
        ss.iter().map(|s| q(s)).collect()
    }

    fn diameter_one_example() -> ParameterData {
        ParameterData::new(
            1,
            qv(&["0", "1"]),
            qv(&["0", "1"]),
            qv(&["2"]),
            qv(&["3"]),
        )
        .unwrap()
    }

    fn diameter_three_example() -> ParameterData {
        // Validity is irrelevant here: the action is pure index bookkeeping.
        ParameterData::new(
            3,
            qv(&["0", "1", "2", "3"]),
            qv(&["0", "1", "4", "9"]),
            qv(&["1", "2", "3"]),
            qv(&["4", "5", "6"]),
        )
        .unwrap()
    }

    #[test]
    fn identity_fixes_parameters() {
        let p = diameter_one_example();
        assert_eq!(d4_transform(&p, &D4Element::identity()), p);
    }

    #[test]
    fn star_is_an_involution() {
        let p = diameter_three_example();
        let star = D4Element::generator(D4Generator::Star);
        let once = d4_transform(&p, &star);
        assert_ne!(once, p);
        assert_eq!(d4_transform(&once, &star), p);
    }

    #[test]
    fn down_on_diameter_one() {
        let p = diameter_one_example();
        let down = D4Element::generator(D4Generator::Down);
        let moved = d4_transform(&p, &down);
        assert_eq!(moved.theta, qv(&["0", "1"]));
        assert_eq!(moved.theta_star, qv(&["1", "0"]));
        assert_eq!(moved.varphi, qv(&["3"]));
        assert_eq!(moved.phi, qv(&["2"]));
    }

    #[test]
    fn star_of_down_is_ddown_of_star() {
        use D4Generator::*;
        let left = D4Element::from_word(&[Star, Down]);
        let right = D4Element::from_word(&[DDown, Star]);
        assert_eq!(left, right);
        let p = diameter_three_example();
        assert_eq!(d4_transform(&p, &left), d4_transform(&p, &right));
    }

    #[test]
    fn down_star_has_order_four() {
        use D4Generator::*;
        let ds = D4Element::from_word(&[Down, Star]);
        let sq = ds.after(&ds);
        assert_eq!(sq, D4Element::from_word(&[Down, DDown]));
        assert_eq!(sq.after(&sq), D4Element::identity());
        assert_ne!(sq, D4Element::identity());
    }

    #[test]
    fn inverses_cancel() {
        for g in D4Element::all() {
            assert_eq!(g.after(&g.inverse()), D4Element::identity());
            assert_eq!(g.inverse().after(&g), D4Element::identity());
        }
    }

    #[test]
    fn composition_matches_sequential_action() {
        let p = diameter_three_example();
        for g in D4Element::all() {
            for h in D4Element::all() {
                let sequential = d4_transform(&d4_transform(&p, &g), &h);
                let composite = d4_transform(&p, &h.after(&g));
                assert_eq!(sequential, composite, "g={g} h={h}");
            }
        }
    }

    #[test]
    fn names_round_trip() {
        for g in D4Element::all() {
            assert_eq!(D4Element::from_name(g.name()), Some(g));
        }
        assert_eq!(D4Element::from_name("nonsense"), None);
    }
}
