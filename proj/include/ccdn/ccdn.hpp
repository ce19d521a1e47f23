#pragma once

// QoS-aware content placement for cloud CDNs: topology and LUT construction,
// the placement model evaluator and validator, the W-SNA/GS/SNA heuristics,
// exact tiny-instance solvers, the ILP exporter and the experiment harness.

#include "ccdn/betweenness.hpp"
#include "ccdn/config_io.hpp"
#include "ccdn/configuration.hpp"
#include "ccdn/errors.hpp"
#include "ccdn/experiment.hpp"
#include "ccdn/heuristics.hpp"
#include "ccdn/instance.hpp"
#include "ccdn/lp_export.hpp"
#include "ccdn/lut.hpp"
#include "ccdn/model.hpp"
#include "ccdn/oracle.hpp"
#include "ccdn/paths.hpp"
#include "ccdn/rng.hpp"
#include "ccdn/scenario.hpp"
#include "ccdn/text.hpp"
#include "ccdn/topology.hpp"
