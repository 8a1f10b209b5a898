#pragma once

// Umbrella header: pulls in the whole library.

#include "audit.hpp"
#include "best_response.hpp"
#include "contract.hpp"
#include "envelope.hpp"
#include "error.hpp"
#include "families.hpp"
#include "implementability.hpp"
#include "instance.hpp"
#include "io.hpp"
#include "linalg.hpp"
#include "lp.hpp"
#include "rational.hpp"
#include "regularity.hpp"
#include "robust.hpp"
#include "solvers.hpp"
