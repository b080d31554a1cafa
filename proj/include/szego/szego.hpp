#pragma once

#include "szego/blaschke.hpp"
#include "szego/circle_grid.hpp"
#include "szego/compression.hpp"
#include "szego/io.hpp"
#include "szego/malmquist.hpp"
#include "szego/matrix.hpp"
#include "szego/spectral.hpp"
#include "szego/symbol.hpp"
