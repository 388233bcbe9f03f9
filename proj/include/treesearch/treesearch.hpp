#pragma once

#include "treesearch/approx.hpp"
#include "treesearch/bench.hpp"
#include "treesearch/decision_tree.hpp"
#include "treesearch/dot.hpp"
#include "treesearch/error.hpp"
#include "treesearch/exact.hpp"
#include "treesearch/generate.hpp"
#include "treesearch/io.hpp"
#include "treesearch/modularity.hpp"
#include "treesearch/ranking.hpp"
#include "treesearch/rational.hpp"
#include "treesearch/tree.hpp"
