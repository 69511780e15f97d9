#pragma once

#include "coverplan/bench.hpp"
#include "coverplan/discretize.hpp"
#include "coverplan/errors.hpp"
#include "coverplan/geometry.hpp"
#include "coverplan/graph.hpp"
#include "coverplan/ilp.hpp"
#include "coverplan/instance.hpp"
#include "coverplan/io.hpp"
#include "coverplan/offline.hpp"
#include "coverplan/online.hpp"
#include "coverplan/oracle.hpp"
#include "coverplan/rng.hpp"
#include "coverplan/steiner.hpp"
#include "coverplan/tour.hpp"
