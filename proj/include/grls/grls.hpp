#pragma once

// Umbrella header: geometrically robust least squares on R^n x Gr(k,n).

#include "grls/errors.hpp"
#include "grls/experiment.hpp"
#include "grls/grassmann.hpp"
#include "grls/objective.hpp"
#include "grls/oracles.hpp"
#include "grls/solver.hpp"
