#pragma once

// Umbrella header: empirical distance-to-measure, its k-center power-distance
// coreset approximation, reference baselines, and the supporting tooling.

#include "kpdtm/baselines.hpp"
#include "kpdtm/csv.hpp"
#include "kpdtm/datagen.hpp"
#include "kpdtm/dtm.hpp"
#include "kpdtm/fit.hpp"
#include "kpdtm/grid.hpp"
#include "kpdtm/model_io.hpp"
#include "kpdtm/neighbors.hpp"
#include "kpdtm/ot.hpp"
#include "kpdtm/parallel.hpp"
#include "kpdtm/point_cloud.hpp"
#include "kpdtm/power_model.hpp"
#include "kpdtm/rng.hpp"
