#pragma once

#include "jumpcast/analysis.hpp"
#include "jumpcast/config.hpp"
#include "jumpcast/error.hpp"
#include "jumpcast/forecasts.hpp"
#include "jumpcast/io.hpp"
#include "jumpcast/model.hpp"
#include "jumpcast/montecarlo.hpp"
#include "jumpcast/numeric.hpp"
#include "jumpcast/rng.hpp"
#include "jumpcast/simulation.hpp"
#include "jumpcast/stats.hpp"
