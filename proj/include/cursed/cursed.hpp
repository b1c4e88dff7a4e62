#pragma once

#include "cursed/error.hpp"
#include "cursed/scalar.hpp"
#include "cursed/game.hpp"
#include "cursed/strategy.hpp"
#include "cursed/dsl.hpp"
#include "cursed/cse.hpp"
#include "cursed/partition.hpp"
#include "cursed/sce.hpp"
#include "cursed/one_stage.hpp"
#include "cursed/parallel.hpp"
#include "cursed/scenarios.hpp"
#include "cursed/report.hpp"
