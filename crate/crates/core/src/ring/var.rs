use core::fmt;

/// Number of symbols known to the engine. Every exponent vector has this length.
pub const NVARS: usize = 8;

const NAMES: [&str; NVARS] = ["s", "t", "w", "b", "u", "eta", "xi", "x"];
const LATEX: [&str; NVARS] = ["s", "t", "w", "b", "u", "\\eta", "\\xi", "x"];

/// An interned symbol. The index doubles as the position in the global variable
/// order `s > t > w > b > u > eta > xi > x` used by the monomial order.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Var(u8);

impl Var {
    pub const S: Var = Var(0);
    pub const T: Var = Var(1);
    pub const W: Var = Var(2);
    pub const B: Var = Var(3);
    pub const U: Var = Var(4);
    pub const ETA: Var = Var(5);
    pub const XI: Var = Var(6);
    pub const X: Var = Var(7);

    pub const ALL: [Var; NVARS] = [
        Var::S,
        Var::T,
        Var::W,
        Var::B,
        Var::U,
        Var::ETA,
        Var::XI,
        Var::X,
    ];

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn name(self) -> &'static str {
        NAMES[self.index()]
    }

    pub fn latex(self) -> &'static str {
        LATEX[self.index()]
    }

    /// Looks a symbol up by its ASCII name or its Greek spelling.
    pub fn from_name(name: &str) -> Option<Var> {
        match name {
            "η" => return Some(Var::ETA),
            "ξ" => return Some(Var::XI),
            _ => {}
        }
        NAMES.iter().position(|n| *n == name).map(|i| Var(i as u8))
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}
