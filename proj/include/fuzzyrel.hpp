#pragma once

// Umbrella header: include this to get the whole library.

#include "fuzzyrel/analysis.hpp"
#include "fuzzyrel/csv.hpp"
#include "fuzzyrel/error.hpp"
#include "fuzzyrel/grid.hpp"
#include "fuzzyrel/logic.hpp"
#include "fuzzyrel/properties.hpp"
#include "fuzzyrel/relation.hpp"
#include "fuzzyrel/report.hpp"
#include "fuzzyrel/structure.hpp"
