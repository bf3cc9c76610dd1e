#pragma once

// Umbrella header.

#include "chipfire/divisor.hpp"
#include "chipfire/divisor_class.hpp"
#include "chipfire/divisors.hpp"
#include "chipfire/errors.hpp"
#include "chipfire/graph.hpp"
#include "chipfire/io.hpp"
#include "chipfire/options.hpp"
#include "chipfire/rank.hpp"
#include "chipfire/reduce.hpp"
#include "chipfire/reps.hpp"
