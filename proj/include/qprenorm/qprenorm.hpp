#pragma once

// Umbrella header for the quasi-periodic renormalization laboratory.

#include "qprenorm/csv.hpp"
#include "qprenorm/disc_domain.hpp"
#include "qprenorm/errors.hpp"
#include "qprenorm/flm.hpp"
#include "qprenorm/harmonic.hpp"
#include "qprenorm/linalg.hpp"
#include "qprenorm/mode_action.hpp"
#include "qprenorm/pair_field.hpp"
#include "qprenorm/parallel.hpp"
#include "qprenorm/qp_function.hpp"
#include "qprenorm/qp_operators.hpp"
#include "qprenorm/renorm1d.hpp"
#include "qprenorm/renorm_fixed_point.hpp"
#include "qprenorm/rotation.hpp"
#include "qprenorm/solenoid.hpp"
#include "qprenorm/spectral.hpp"
#include "qprenorm/taylor.hpp"

namespace qpr {
inline constexpr const char* version = "1.0.0";
}
