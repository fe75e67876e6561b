#pragma once

// Umbrella header for the observer-situation lattice belief store.

#include "osl/bench.hpp"
#include "osl/belief.hpp"
#include "osl/contradiction.hpp"
#include "osl/errors.hpp"
#include "osl/io.hpp"
#include "osl/manager.hpp"
#include "osl/poset.hpp"
#include "osl/product.hpp"
#include "osl/propagation.hpp"
#include "osl/scenarios.hpp"
