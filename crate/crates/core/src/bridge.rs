//! Bridge-side meaning of the protocol bits.
//!
//! Two situations are covered. In Roman Key-card Blackwood the responder
//! holds `a0` (0 or 3 key cards vs 1 or 4) and `a1` (trump queen or not);
//! the asker's interest `b` selects which one matters, and the single message
//! bit travels as 5♣ or 5♦. On defence the partner signals with a small or
//! high spot card, carrying either attitude or count parity.

use std::fmt;

use crate::error::{check_probability, Error, Result};
use crate::strategy::{evaluate_product, ProductForm, StrategyReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Denomination {
    Clubs,
    Diamonds,
    Hearts,
    Spades,
    NoTrump,
}

impl Denomination {
    pub fn symbol(self) -> &'static str {
        match self {
            Denomination::Clubs => "♣",
            Denomination::Diamonds => "♦",
            Denomination::Hearts => "♥",
            Denomination::Spades => "♠",
            Denomination::NoTrump => "NT",
        }
    }
}

/// A contract bid; ordering follows auction sufficiency.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bid {
    level: u8,
    denomination: Denomination,
}

impl Bid {
    pub fn new(level: u8, denomination: Denomination) -> Result<Self> {
        if !(1..=7).contains(&level) {
            return Err(Error::InvalidBidLevel(level));
        }
        Ok(Self { level, denomination })
    }

    const fn five(denomination: Denomination) -> Self {
        Self { level: 5, denomination }
    }

    pub fn level(&self) -> u8 {
        self.level
    }

    pub fn denomination(&self) -> Denomination {
        self.denomination
    }

    /// Whether this bid may legally follow `previous`.
    pub fn is_sufficient_over(&self, previous: &Bid) -> bool {
        self > previous
    }
}

impl fmt::Display for Bid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.level, self.denomination.symbol())
    }
}

/// Highest bid reachable during the key-card exchange.
pub const SAFETY_LEVEL: Bid = Bid::five(Denomination::Diamonds);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RkbHolding {
    keycards: u8,
    has_trump_queen: bool,
}

impl RkbHolding {
    pub fn new(keycards: u8, has_trump_queen: bool) -> Result<Self> {
        if keycards > 5 {
            return Err(Error::InvalidKeycards(keycards));
        }
        Ok(Self {
            keycards,
            has_trump_queen,
        })
    }

    pub fn keycards(&self) -> u8 {
        self.keycards
    }

    pub fn has_trump_queen(&self) -> bool {
        self.has_trump_queen
    }

    /// All 12 holdings.
    pub fn all() -> impl Iterator<Item = RkbHolding> {
        (0..=5u8).flat_map(|k| [false, true].map(move |q| RkbHolding::new(k, q).unwrap()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RkbAnswer {
    ProtocolInputs { a0: u8, a1: u8 },
    Bypass(Bid),
}

pub fn rkb_encode(holding: RkbHolding) -> RkbAnswer {
    let a1 = u8::from(!holding.has_trump_queen);
    match holding.keycards {
        0 | 3 => RkbAnswer::ProtocolInputs { a0: 0, a1 },
        1 | 4 => RkbAnswer::ProtocolInputs { a0: 1, a1 },
        _ if holding.has_trump_queen => RkbAnswer::Bypass(Bid::five(Denomination::Spades)),
        _ => RkbAnswer::Bypass(Bid::five(Denomination::Hearts)),
    }
}

pub fn rkb_message_bid(m: u8) -> Bid {
    if m == 0 {
        Bid::five(Denomination::Clubs)
    } else {
        Bid::five(Denomination::Diamonds)
    }
}

pub fn rkb_bid_message(bid: Bid) -> Result<u8> {
    match (bid.level, bid.denomination) {
        (5, Denomination::Clubs) => Ok(0),
        (5, Denomination::Diamonds) => Ok(1),
        _ => Err(Error::NotAMessageBid(bid)),
    }
}

/// What the asker wants to learn; the protocol's `b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RkbInterest {
    Keycards,
    TrumpQueen,
}

impl RkbInterest {
    pub fn bit(self) -> u8 {
        match self {
            RkbInterest::Keycards => 0,
            RkbInterest::TrumpQueen => 1,
        }
    }

    /// Human-readable meaning of a guessed bit.
    pub fn describe(self, guess: u8) -> &'static str {
        match (self, guess) {
            (RkbInterest::Keycards, 0) => "0 or 3 key cards",
            (RkbInterest::Keycards, _) => "1 or 4 key cards",
            (RkbInterest::TrumpQueen, 0) => "has queen",
            (RkbInterest::TrumpQueen, _) => "no queen",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Attitude {
    Encourage,
    Discourage,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CountParity {
    Odd,
    Even,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DefenseHolding {
    pub attitude: Attitude,
    pub parity: CountParity,
}

impl DefenseHolding {
    pub fn all() -> [DefenseHolding; 4] {
        use Attitude::*;
        use CountParity::*;
        [(Encourage, Odd), (Encourage, Even), (Discourage, Odd), (Discourage, Even)]
            .map(|(attitude, parity)| DefenseHolding { attitude, parity })
    }
}

pub fn defense_encode(holding: DefenseHolding) -> (u8, u8) {
    let a0 = match holding.attitude {
        Attitude::Encourage => 0,
        Attitude::Discourage => 1,
    };
    let a1 = match holding.parity {
        CountParity::Odd => 0,
        CountParity::Even => 1,
    };
    (a0, a1)
}

pub fn defense_decode(a0: u8, a1: u8) -> DefenseHolding {
    DefenseHolding {
        attitude: if a0 == 0 { Attitude::Encourage } else { Attitude::Discourage },
        parity: if a1 == 0 { CountParity::Odd } else { CountParity::Even },
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SignalCard {
    /// Spot card 2–5.
    Small,
    /// Spot card 6–10.
    High,
}

impl SignalCard {
    pub fn spots(self) -> std::ops::RangeInclusive<u8> {
        match self {
            SignalCard::Small => 2..=5,
            SignalCard::High => 6..=10,
        }
    }
}

impl fmt::Display for SignalCard {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SignalCard::Small => f.write_str("small card (2-5)"),
            SignalCard::High => f.write_str("high card (6-10)"),
        }
    }
}

pub fn defense_message_card(m: u8) -> SignalCard {
    if m == 0 {
        SignalCard::Small
    } else {
        SignalCard::High
    }
}

pub fn defense_card_message(card: SignalCard) -> u8 {
    match card {
        SignalCard::Small => 0,
        SignalCard::High => 1,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DefenseInterest {
    Attitude,
    Count,
}

impl DefenseInterest {
    pub fn bit(self) -> u8 {
        match self {
            DefenseInterest::Attitude => 0,
            DefenseInterest::Count => 1,
        }
    }

    pub fn describe(self, guess: u8) -> &'static str {
        match (self, guess) {
            (DefenseInterest::Attitude, 0) => "encourage",
            (DefenseInterest::Attitude, _) => "discourage",
            (DefenseInterest::Count, 0) => "odd count",
            (DefenseInterest::Count, _) => "even count",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ScenarioKind {
    Rkb,
    Defense,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScenarioConfig {
    pub kind: ScenarioKind,
    pub p0_prime: f64,
    pub p1_prime: f64,
    pub q: f64,
    /// Weight of 2- or 5-key-card holdings answered by a bypass bid.
    pub bypass_probability: f64,
}

impl ScenarioConfig {
    /// Expert estimates for the key-card question.
    pub fn rkb_default() -> Self {
        Self {
            kind: ScenarioKind::Rkb,
            p0_prime: 0.5,
            p1_prime: 0.55,
            q: 0.75,
            bypass_probability: 0.0,
        }
    }

    pub fn defense_default() -> Self {
        Self {
            kind: ScenarioKind::Defense,
            p0_prime: 0.5,
            p1_prime: 0.5,
            q: 0.5,
            bypass_probability: 0.0,
        }
    }

    pub fn default_for(kind: ScenarioKind) -> Self {
        match kind {
            ScenarioKind::Rkb => Self::rkb_default(),
            ScenarioKind::Defense => Self::defense_default(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.product_form()?;
        check_probability("bypass_probability", self.bypass_probability)?;
        Ok(())
    }

    pub fn product_form(&self) -> Result<ProductForm> {
        ProductForm::new(self.p0_prime, self.p1_prime, self.q)
    }
}

/// Classical and quantum values for a scenario. For key-card bidding the
/// bypass branch always succeeds and is mixed in with its weight.
pub fn scenario_evaluate(config: &ScenarioConfig) -> Result<StrategyReport> {
    config.validate()?;
    let report = evaluate_product(config.product_form()?);
    Ok(match config.kind {
        ScenarioKind::Rkb if config.bypass_probability > 0.0 => report.with_certain_branch(config.bypass_probability),
        _ => report,
    })
}
