use super::{BinaryOp, Operator, UnaryOp};

/// Operators available to the search, each with a selection weight.
#[derive(Clone, Debug, PartialEq)]
pub struct OperatorSet {
    pub binary: Vec<(BinaryOp, f64)>,
    pub unary: Vec<(UnaryOp, f64)>,
}

impl Default for OperatorSet {
    fn default() -> Self {
        OperatorSet {
            binary: BinaryOp::ALL.iter().map(|&op| (op, 1.0)).collect(),
            unary: vec![
                (UnaryOp::Exp, 1.0),
                (UnaryOp::Log, 1.0),
                (UnaryOp::Sin, 1.0),
                (UnaryOp::Cos, 1.0),
            ],
        }
    }
}

impl OperatorSet {
    pub fn new(binary: &[BinaryOp], unary: &[UnaryOp]) -> Self {
        OperatorSet {
            binary: binary.iter().map(|&op| (op, 1.0)).collect(),
            unary: unary.iter().map(|&op| (op, 1.0)).collect(),
        }
    }

    /// Checks the set is usable: at least one binary operator, no
    /// duplicates, non-negative weights with a positive total.
    pub fn validate(&self) -> Result<(), String> {
        if self.binary.is_empty() {
            return Err("operator set needs at least one binary operator".into());
        }
        let ops = self.operators();
        for (i, (a, _)) in ops.iter().enumerate() {
            if ops[..i].iter().any(|(b, _)| b == a) {
                return Err(format!("operator `{a}` listed twice"));
            }
        }
        if ops.iter().any(|(_, w)| !(w.is_finite() && *w >= 0.0)) {
            return Err("operator weights must be finite and non-negative".into());
        }
        if ops.iter().map(|(_, w)| w).sum::<f64>() <= 0.0 {
            return Err("operator weights must sum to a positive value".into());
        }
        Ok(())
    }

    /// All operators with weights, binary first.
    pub fn operators(&self) -> Vec<(Operator, f64)> {
        self.binary
            .iter()
            .map(|&(op, w)| (Operator::Binary(op), w))
            .chain(self.unary.iter().map(|&(op, w)| (Operator::Unary(op), w)))
            .collect()
    }

    pub fn contains(&self, op: Operator) -> bool {
        match op {
            Operator::Binary(b) => self.binary.iter().any(|(o, _)| *o == b),
            Operator::Unary(u) => self.unary.iter().any(|(o, _)| *o == u),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(OperatorSet::default().validate().is_ok());
        assert!(OperatorSet::new(&[], &[UnaryOp::Exp]).validate().is_err());
        assert!(OperatorSet::new(&[BinaryOp::Add, BinaryOp::Add], &[])
            .validate()
            .is_err());
        let mut zero = OperatorSet::new(&[BinaryOp::Add], &[]);
        zero.binary[0].1 = 0.0;
        assert!(zero.validate().is_err());
        assert!(OperatorSet::new(&[BinaryOp::Add], &[]).validate().is_ok());
    }
}
