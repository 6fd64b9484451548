#pragma once

#include "polar_olct/bessel.hpp"
#include "polar_olct/field.hpp"
#include "polar_olct/harness.hpp"
#include "polar_olct/io.hpp"
#include "polar_olct/params.hpp"
#include "polar_olct/quadrature.hpp"
#include "polar_olct/sampling.hpp"
#include "polar_olct/transforms.hpp"
