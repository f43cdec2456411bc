use crate::error::GroupError;
use crate::group::FiniteGroup;

/// Parse a word such as `"g1 g2^-1 d^2"` or `"g1*d"` over the generator
/// names of `g`. The empty word, `"e"` and `"1"` denote the identity.
pub fn parse_word(g: &FiniteGroup, word: &str) -> Result<usize, GroupError> {
    let bad = |reason: &str| GroupError::BadWord { word: word.to_string(), reason: reason.to_string() };
    let mut acc = 0usize;
    for tok in word.split(|c: char| c.is_whitespace() || c == '*' || c == '.').filter(|t| !t.is_empty()) {
        let (name, exp) = match tok.split_once('^') {
            Some((a, b)) => (a, b.parse::<i64>().map_err(|_| bad("exponent is not an integer"))?),
            None => (tok, 1),
        };
        if name == "e" || name == "1" {
            continue;
        }
        let idx = g.gen_names().iter().position(|s| s == name).ok_or_else(|| bad(&format!("unknown generator {name}")))?;
        let mut x = g.gens()[idx];
        if exp < 0 {
            x = g.inv(x);
        }
        for _ in 0..exp.unsigned_abs() {
            acc = g.mul(acc, x);
        }
    }
    Ok(acc)
}
