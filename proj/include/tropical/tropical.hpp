#pragma once

#include "tropical/errors.hpp"
#include "tropical/rational.hpp"
#include "tropical/core.hpp"
#include "tropical/linalg.hpp"
#include "tropical/polyhedra.hpp"
#include "tropical/polytope.hpp"
#include "tropical/grassmann.hpp"
