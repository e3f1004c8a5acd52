#pragma once

#include "modalnav/errors.hpp"
#include "modalnav/grid.hpp"
#include "modalnav/grid_io.hpp"
#include "modalnav/perception.hpp"
#include "modalnav/costmap.hpp"
#include "modalnav/planner.hpp"
#include "modalnav/raster.hpp"
#include "modalnav/postprocess.hpp"
#include "modalnav/energy.hpp"
#include "modalnav/executor.hpp"
#include "modalnav/path_io.hpp"
#include "modalnav/render.hpp"
#include "modalnav/config.hpp"
#include "modalnav/fixtures.hpp"
#include "modalnav/scenario.hpp"
