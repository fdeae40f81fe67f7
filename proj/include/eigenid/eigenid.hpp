#pragma once

// Convenience umbrella for the numeric library.  cli.hpp and matrix_io.hpp
// are not included here: they pull in third-party single-header
// dependencies and are only needed by executables.

#include "eigenid/complex_matrix.hpp"
#include "eigenid/eigensolve.hpp"
#include "eigenid/errors.hpp"
#include "eigenid/identity.hpp"
#include "eigenid/phase.hpp"
#include "eigenid/rng.hpp"
#include "eigenid/spectral.hpp"
#include "eigenid/verify.hpp"
