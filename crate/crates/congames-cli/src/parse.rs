use congames::generator::GameKind;
use congames::Rational;

pub fn parse_rational(text: &str) -> Result<Rational, String> {
    text.parse::<Rational>()
        .map_err(|_| format!("{text:?} is not a rational like -4 or 3/2"))
}

/// Flag-level alpha validation; `generate --alpha 1/2` is a usage error.
pub fn parse_alpha(text: &str) -> Result<Rational, String> {
    let alpha = parse_rational(text)?;
    if alpha < Rational::one() {
        return Err(format!("alpha must be >= 1, got {alpha}"));
    }
    Ok(alpha)
}

pub fn parse_kind(text: &str) -> Result<GameKind, String> {
    match text {
        "positive" => Ok(GameKind::Positive),
        "negative" => Ok(GameKind::Negative),
        other => Err(format!("unknown kind {other:?}, expected positive|negative")),
    }
}

/// `default` or `random:<seed>`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InitChoice {
    Default,
    Random(u64),
}

pub fn parse_init(text: &str) -> Result<InitChoice, String> {
    if text == "default" {
        return Ok(InitChoice::Default);
    }
    if let Some(seed) = text.strip_prefix("random:") {
        return seed
            .parse::<u64>()
            .map(InitChoice::Random)
            .map_err(|_| format!("bad init seed {seed:?}"));
    }
    Err(format!("unknown init {text:?}, expected default or random:<seed>"))
}
