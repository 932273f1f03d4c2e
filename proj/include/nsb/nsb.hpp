#pragma once

// Umbrella header for the non-stationary bandit toolkit.

#include "nsb/baselines.hpp"
#include "nsb/config.hpp"
#include "nsb/environment.hpp"
#include "nsb/errors.hpp"
#include "nsb/experiment.hpp"
#include "nsb/io.hpp"
#include "nsb/lmdsee.hpp"
#include "nsb/numeric.hpp"
#include "nsb/policy.hpp"
#include "nsb/regret.hpp"
#include "nsb/rng.hpp"
#include "nsb/swucb.hpp"
