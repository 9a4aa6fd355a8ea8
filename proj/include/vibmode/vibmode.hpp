#pragma once

// Umbrella header: exact time-dependent dynamics of the coupled stretching
// modes of symmetric triatomics under a bond-angle schedule, via the
// auxiliary-amplitude (Ermakov) reduction of each normal mode.

#include "vibmode/algebra.hpp"
#include "vibmode/config.hpp"
#include "vibmode/constants.hpp"
#include "vibmode/csv.hpp"
#include "vibmode/dynamics.hpp"
#include "vibmode/ermakov.hpp"
#include "vibmode/errors.hpp"
#include "vibmode/molecule.hpp"
#include "vibmode/runner.hpp"
#include "vibmode/schedule.hpp"
#include "vibmode/wavefunction.hpp"
