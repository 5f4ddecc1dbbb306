//! Campaign cost arithmetic.
//!
//! Money carries no currency and is whatever scalar the caller picks; exact
//! rationals make `cost_per_responder · responders == total_cost` hold exactly.

use serde::{Deserialize, Serialize};

use crate::error::{MetricError, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CampaignEconomics<S> {
    pub total_cost: S,
    pub addresses: u64,
    pub responders: u64,
}

impl<S: Scalar> CampaignEconomics<S> {
    pub fn new(total_cost: S, addresses: u64, responders: u64) -> Result<Self> {
        if total_cost < S::zero() {
            return Err(MetricError::InvalidParameter("total cost is negative".into()));
        }
        if addresses == 0 {
            return Err(MetricError::InvalidParameter("at least one address is required".into()));
        }
        if responders > addresses {
            return Err(MetricError::InvalidParameter(format!(
                "{responders} responders exceed {addresses} addresses"
            )));
        }
        Ok(CampaignEconomics {
            total_cost,
            addresses,
            responders,
        })
    }
}

/// Total cost divided by the number of addresses, times 1000.
pub fn cost_per_thousand<S: Scalar>(econ: &CampaignEconomics<S>) -> S {
    econ.total_cost * S::from_count(1000) / S::from_count(econ.addresses)
}

/// Cost per thousand divided by responders per thousand addresses, which
/// reduces to total cost over responders.
pub fn cost_per_responder<S: Scalar>(econ: &CampaignEconomics<S>) -> Result<S> {
    if econ.responders == 0 {
        return Err(MetricError::NoResponders);
    }
    Ok(econ.total_cost / S::from_count(econ.responders))
}

/// Cost per action minus cost per responder, with both operands kept.
///
/// The two operands have different denominators (per action and per
/// responder); the difference is reported as defined, without reinterpreting
/// it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpreadingLoss<S> {
    pub cost_per_action: S,
    pub cost_per_responder: S,
    pub loss: S,
}

pub fn spreading_loss<S: Scalar>(cost_per_action: S, cost_per_responder: S) -> Result<SpreadingLoss<S>> {
    if cost_per_action < S::zero() || cost_per_responder < S::zero() {
        return Err(MetricError::InvalidParameter("costs must be non-negative".into()));
    }
    Ok(SpreadingLoss {
        cost_per_action,
        cost_per_responder,
        loss: cost_per_action - cost_per_responder,
    })
}

/// All three quantities for one campaign, using cost per thousand as the cost
/// per action.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EconomicsReport<S> {
    pub economics: CampaignEconomics<S>,
    pub cost_per_thousand: S,
    pub cost_per_responder: S,
    pub spreading_loss: SpreadingLoss<S>,
}

pub fn economics_report<S: Scalar>(econ: &CampaignEconomics<S>) -> Result<EconomicsReport<S>> {
    let per_thousand = cost_per_thousand(econ);
    let per_responder = cost_per_responder(econ)?;
    Ok(EconomicsReport {
        economics: *econ,
        cost_per_thousand: per_thousand,
        cost_per_responder: per_responder,
        spreading_loss: spreading_loss(per_thousand, per_responder)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Rational64;
    use proptest::prelude::*;

    fn money(n: i64) -> Rational64 {
        Rational64::from_integer(n)
    }

    #[test]
    fn cost_examples() {
        let e = CampaignEconomics::new(money(50_000), 100_000, 4_000).unwrap();
        assert_eq!(cost_per_thousand(&e), money(500));
        assert_eq!(cost_per_responder(&e).unwrap(), Rational64::new(25, 2));
        let loss = spreading_loss(money(500), Rational64::new(25, 2)).unwrap();
        assert_eq!(loss.loss, Rational64::new(975, 2));
        assert_eq!(loss.cost_per_action, money(500));

        let free = CampaignEconomics::new(money(0), 1234, 5).unwrap();
        assert_eq!(cost_per_thousand(&free), money(0));
        let unit = CampaignEconomics::new(money(1000), 1000, 10).unwrap();
        assert_eq!(cost_per_thousand(&unit), money(1000));
        assert_eq!(cost_per_responder(&unit).unwrap(), money(100));
        let everyone = CampaignEconomics::new(money(777), 21, 21).unwrap();
        assert_eq!(cost_per_responder(&everyone).unwrap(), Rational64::new(777, 21));
    }

    #[test]
    fn spreading_loss_edges() {
        assert_eq!(spreading_loss(3.5_f64, 3.5).unwrap().loss, 0.0);
        assert_eq!(spreading_loss(0.0_f64, 0.0).unwrap().loss, 0.0);
        assert!(spreading_loss(-1.0_f64, 0.0).is_err());
    }

    #[test]
    fn invalid_inputs() {
        let e = CampaignEconomics::new(money(10), 100, 0).unwrap();
        assert_eq!(cost_per_responder(&e), Err(MetricError::NoResponders));
        assert!(CampaignEconomics::new(money(10), 0, 0).is_err());
        assert!(CampaignEconomics::new(money(10), 5, 6).is_err());
        assert!(CampaignEconomics::new(money(-1), 5, 1).is_err());
    }

    proptest! {
        #[test]
        fn scale_covariance_and_exact_reconstruction(
            cost in 0i64..10_000_000,
            addresses in 1u64..1_000_000,
            frac in 0.0f64..=1.0,
            lambda in 1i64..1000,
        ) {
            let responders = ((addresses as f64 * frac) as u64).clamp(1, addresses);
            let e = CampaignEconomics::new(money(cost), addresses, responders).unwrap();
            let scaled = CampaignEconomics::new(money(cost * lambda), addresses, responders).unwrap();
            prop_assert_eq!(cost_per_thousand(&scaled), cost_per_thousand(&e) * money(lambda));
            prop_assert_eq!(
                cost_per_responder(&scaled).unwrap(),
                cost_per_responder(&e).unwrap() * money(lambda)
            );
            prop_assert_eq!(
                cost_per_responder(&e).unwrap() * money(responders as i64),
                money(cost)
            );
        }
    }
}
