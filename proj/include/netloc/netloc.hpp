// SPDX-License-Identifier: MIT
// Umbrella header.
#pragma once

#include "netloc/construct.hpp"
#include "netloc/core.hpp"
#include "netloc/efficiency.hpp"
#include "netloc/examples.hpp"
#include "netloc/network.hpp"
#include "netloc/payoff.hpp"
#include "netloc/verify.hpp"
