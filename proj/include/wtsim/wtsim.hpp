#pragma once

#include "wtsim/types.hpp"
#include "wtsim/priority.hpp"
#include "wtsim/event_log.hpp"
#include "wtsim/order_book.hpp"
#include "wtsim/auction.hpp"
#include "wtsim/rng.hpp"
#include "wtsim/order_flow.hpp"
#include "wtsim/simulator.hpp"
#include "wtsim/stats.hpp"
#include "wtsim/analysis.hpp"
#include "wtsim/output.hpp"
#include "wtsim/grid.hpp"
#include "wtsim/config.hpp"
