#pragma once

#include "schouten/basis.hpp"
#include "schouten/boundary.hpp"
#include "schouten/chain.hpp"
#include "schouten/errors.hpp"
#include "schouten/homology.hpp"
#include "schouten/homotopy.hpp"
#include "schouten/io.hpp"
#include "schouten/multivector.hpp"
#include "schouten/parallel.hpp"
#include "schouten/polynomial.hpp"
#include "schouten/random.hpp"
#include "schouten/rational.hpp"
#include "schouten/sparse_matrix.hpp"
#include "schouten/verify.hpp"
