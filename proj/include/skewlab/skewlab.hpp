#pragma once

// Umbrella header: exact computations in p-division algebras and modular Lie
// theory over multivariate rational function fields of characteristic p.

#include "skewlab/algebra.hpp"
#include "skewlab/corpus.hpp"
#include "skewlab/error.hpp"
#include "skewlab/fp.hpp"
#include "skewlab/fpmat.hpp"
#include "skewlab/io.hpp"
#include "skewlab/lie.hpp"
#include "skewlab/matrix.hpp"
#include "skewlab/parse.hpp"
#include "skewlab/pbw.hpp"
#include "skewlab/poly.hpp"
#include "skewlab/scalar.hpp"
#include "skewlab/specialize.hpp"
#include "skewlab/torus.hpp"
