#pragma once

#include "enscale/allometry.hpp"
#include "enscale/chronometry.hpp"
#include "enscale/cone.hpp"
#include "enscale/errors.hpp"
#include "enscale/graph.hpp"
#include "enscale/netmetrics.hpp"
#include "enscale/ratio.hpp"
#include "enscale/report.hpp"
#include "enscale/scaling.hpp"
