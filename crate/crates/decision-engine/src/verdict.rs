use fol_semantics::Structure;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    Structure(Structure),
    /// `values[v - 1]` is the value of variable `v`.
    Assignment(Vec<bool>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SatVerdict {
    Sat(Witness),
    Unsat,
    /// No model up to the searched size, while the small-model bound lies
    /// beyond it. `bound` is the bound as an expression.
    Inconclusive { searched: usize, bound: String },
}

impl SatVerdict {
    pub fn is_sat(&self) -> bool {
        matches!(self, SatVerdict::Sat(_))
    }

    pub fn is_unsat(&self) -> bool {
        matches!(self, SatVerdict::Unsat)
    }

    pub fn structure(&self) -> Option<&Structure> {
        match self {
            SatVerdict::Sat(Witness::Structure(s)) => Some(s),
            _ => None,
        }
    }

    pub fn assignment(&self) -> Option<&[bool]> {
        match self {
            SatVerdict::Sat(Witness::Assignment(a)) => Some(a),
            _ => None,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            SatVerdict::Sat(_) => "SAT",
            SatVerdict::Unsat => "UNSAT",
            SatVerdict::Inconclusive { .. } => "INCONCLUSIVE",
        }
    }
}
