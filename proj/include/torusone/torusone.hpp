#pragma once

// Umbrella header.

#include "torusone/errors.hpp"
#include "torusone/exact.hpp"
#include "torusone/polyhedra.hpp"
#include "torusone/presentation.hpp"
#include "torusone/grading.hpp"
#include "torusone/demazure.hpp"
#include "torusone/rootsystem.hpp"
#include "torusone/atlas.hpp"
#include "torusone/io.hpp"
