#pragma once

#include "bidir/bigraph.hpp"
#include "bidir/blossom.hpp"
#include "bidir/cpp_solver.hpp"
#include "bidir/debruijn.hpp"
#include "bidir/dna.hpp"
#include "bidir/edge_list.hpp"
#include "bidir/error.hpp"
#include "bidir/euler.hpp"
#include "bidir/fasta.hpp"
#include "bidir/matching.hpp"
#include "bidir/shortest_walk.hpp"
#include "bidir/stats.hpp"
#include "bidir/walk.hpp"
