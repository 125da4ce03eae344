#pragma once

// Umbrella header.

#include "sphdiff/analysis.hpp"
#include "sphdiff/coefficients.hpp"
#include "sphdiff/diffusion.hpp"
#include "sphdiff/errors.hpp"
#include "sphdiff/grid.hpp"
#include "sphdiff/io.hpp"
#include "sphdiff/legendre.hpp"
#include "sphdiff/mode_evolution.hpp"
#include "sphdiff/quadrature.hpp"
#include "sphdiff/random_field.hpp"
#include "sphdiff/rng.hpp"
#include "sphdiff/spectrum.hpp"
#include "sphdiff/version.hpp"
