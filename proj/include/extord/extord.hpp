#pragma once

#include "extord/bisimulation.hpp"
#include "extord/checkers.hpp"
#include "extord/codes.hpp"
#include "extord/core.hpp"
#include "extord/edgelist.hpp"
#include "extord/graph.hpp"
#include "extord/hamiltonian.hpp"
#include "extord/hfsets.hpp"
#include "extord/orientation_solvers.hpp"
#include "extord/reductions.hpp"
