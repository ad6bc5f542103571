#pragma once

// Umbrella header.

#include "moo/autodiff.hpp"
#include "moo/core.hpp"
#include "moo/csv.hpp"
#include "moo/decomposition.hpp"
#include "moo/dual.hpp"
#include "moo/indicators.hpp"
#include "moo/matrix.hpp"
#include "moo/mcdm.hpp"
#include "moo/moea.hpp"
#include "moo/operators.hpp"
#include "moo/problems.hpp"
#include "moo/rng.hpp"
#include "moo/termination.hpp"
#include "moo/viz.hpp"
