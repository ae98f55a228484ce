#pragma once

#include "affine_moduli/catalog.hpp"
#include "affine_moduli/config.hpp"
#include "affine_moduli/curvature.hpp"
#include "affine_moduli/document.hpp"
#include "affine_moduli/errors.hpp"
#include "affine_moduli/genericity.hpp"
#include "affine_moduli/linalg.hpp"
#include "affine_moduli/rng.hpp"
#include "affine_moduli/sampling.hpp"
#include "affine_moduli/symmetry.hpp"
#include "affine_moduli/tensor.hpp"
