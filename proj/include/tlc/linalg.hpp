#pragma once

#include "tlc/errors.hpp"
#include "tlc/linalg/dense_matrix.hpp"
#include "tlc/linalg/eigen.hpp"
#include "tlc/linalg/extended.hpp"
#include "tlc/linalg/fov.hpp"
#include "tlc/linalg/gmres.hpp"
#include "tlc/linalg/lu.hpp"
#include "tlc/tolerances.hpp"
