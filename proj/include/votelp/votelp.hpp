#pragma once

#include "votelp/baselines.hpp"
#include "votelp/clp.hpp"
#include "votelp/generator.hpp"
#include "votelp/io.hpp"
#include "votelp/knapsack.hpp"
#include "votelp/pipeline.hpp"
#include "votelp/rearrange.hpp"
#include "votelp/rng.hpp"
#include "votelp/rounding.hpp"
#include "votelp/scoring.hpp"
#include "votelp/simplex.hpp"
#include "votelp/types.hpp"
