#pragma once

// Convenience umbrella for the whole library.

#include "ehfdr/analysis.hpp"
#include "ehfdr/channel.hpp"
#include "ehfdr/config.hpp"
#include "ehfdr/montecarlo.hpp"
#include "ehfdr/optimize.hpp"
#include "ehfdr/quadrature.hpp"
#include "ehfdr/random.hpp"
#include "ehfdr/relay_control.hpp"
#include "ehfdr/special_functions.hpp"
#include "ehfdr/validation.hpp"
