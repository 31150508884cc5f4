#pragma once

// Umbrella header for the whole library.

#include "indexlab/bigint.hpp"
#include "indexlab/enumerate.hpp"
#include "indexlab/errors.hpp"
#include "indexlab/extensions.hpp"
#include "indexlab/gf.hpp"
#include "indexlab/graph.hpp"
#include "indexlab/indexcode.hpp"
#include "indexlab/io.hpp"
#include "indexlab/matrix.hpp"
#include "indexlab/minrank.hpp"
#include "indexlab/parallel.hpp"
#include "indexlab/ramsey.hpp"
