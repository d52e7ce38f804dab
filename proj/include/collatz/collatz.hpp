#pragma once

// Umbrella header: the whole library.

#include "collatz/arith.hpp"
#include "collatz/census.hpp"
#include "collatz/census_io.hpp"
#include "collatz/collatz_core.hpp"
#include "collatz/errors.hpp"
#include "collatz/figure.hpp"
#include "collatz/line_geometry.hpp"
#include "collatz/reference_data.hpp"
#include "collatz/type_algebra.hpp"
#include "collatz/witness_engine.hpp"
