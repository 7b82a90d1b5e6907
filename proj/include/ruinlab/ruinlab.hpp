#pragma once

#include "ruinlab/bounds.hpp"
#include "ruinlab/errors.hpp"
#include "ruinlab/game.hpp"
#include "ruinlab/io.hpp"
#include "ruinlab/montecarlo.hpp"
#include "ruinlab/parallel.hpp"
#include "ruinlab/rng.hpp"
#include "ruinlab/stats.hpp"
#include "ruinlab/tail.hpp"
#include "ruinlab/verify.hpp"
#include "ruinlab/walk.hpp"
