//! Cycle detection for period measurements.

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
#[error("no cycle found within {max_steps} steps")]
pub struct PeriodNotFound {
    pub max_steps: u64,
}

/// Least period and preperiod of an eventually-periodic orbit: the state
/// after `preperiod + k + period` steps equals the state after
/// `preperiod + k` steps for every k >= 0.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PeriodInfo {
    pub period: u64,
    pub preperiod: u64,
}

/// Brent's cycle detection over a pure step function.
///
/// Returns the least period (and preperiod) if one exists within
/// `max_steps`, else [`PeriodNotFound`]. `max_steps` bounds the cycle length
/// plus preperiod, not the raw number of step evaluations.
pub fn find_period<T, F>(step: F, initial: T, max_steps: u64) -> Result<PeriodInfo, PeriodNotFound>
where
    T: Clone + PartialEq,
    F: Fn(&T) -> T,
{
    let err = PeriodNotFound { max_steps };
    // Main phase: find the cycle length lambda.
    let mut power: u64 = 1;
    let mut lambda: u64 = 1;
    let mut tortoise = initial.clone();
    let mut hare = step(&initial);
    while tortoise != hare {
        if power == lambda {
            tortoise = hare.clone();
            power *= 2;
            lambda = 0;
        }
        hare = step(&hare);
        lambda += 1;
        if lambda > max_steps {
            return Err(err);
        }
    }
    // Find the preperiod mu: advance hare lambda steps ahead of the start,
    // then walk both until they meet.
    let mut mu: u64 = 0;
    tortoise = initial.clone();
    hare = initial;
    for _ in 0..lambda {
        hare = step(&hare);
    }
    while tortoise != hare {
        tortoise = step(&tortoise);
        hare = step(&hare);
        mu += 1;
        if mu > max_steps {
            return Err(err);
        }
    }
    if lambda + mu > max_steps {
        return Err(err);
    }
    Ok(PeriodInfo { period: lambda, preperiod: mu })
}
