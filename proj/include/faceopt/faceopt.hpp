#pragma once

// Umbrella header: the complete public surface.

#include "faceopt/core.hpp"
#include "faceopt/rotation.hpp"
#include "faceopt/planarity.hpp"
#include "faceopt/spqr.hpp"
#include "faceopt/compose.hpp"
#include "faceopt/enumerate.hpp"
#include "faceopt/simplex.hpp"
#include "faceopt/matching.hpp"
#include "faceopt/approx.hpp"
#include "faceopt/minmaxface.hpp"
#include "faceopt/uniform.hpp"
#include "faceopt/gadgets.hpp"
#include "faceopt/json_io.hpp"
