#pragma once

#include "vinesim/agents.hpp"
#include "vinesim/config.hpp"
#include "vinesim/csv_io.hpp"
#include "vinesim/error.hpp"
#include "vinesim/experiment.hpp"
#include "vinesim/field.hpp"
#include "vinesim/phase_result.hpp"
#include "vinesim/phase_sim.hpp"
#include "vinesim/random.hpp"
#include "vinesim/routing.hpp"
#include "vinesim/svg.hpp"
#include "vinesim/tables.hpp"
#include "vinesim/yield_map.hpp"
#include "vinesim/commands.hpp"
