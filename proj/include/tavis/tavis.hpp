// tavis.hpp — umbrella include

#pragma once

#include "tavis/analytic.hpp"
#include "tavis/errors.hpp"
#include "tavis/evolve.hpp"
#include "tavis/model.hpp"
#include "tavis/observables.hpp"
#include "tavis/oracle.hpp"
#include "tavis/scenario.hpp"
