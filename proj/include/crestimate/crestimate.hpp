#pragma once

#include "crestimate/bounds.hpp"
#include "crestimate/crests.hpp"
#include "crestimate/errors.hpp"
#include "crestimate/hardy.hpp"
#include "crestimate/io.hpp"
#include "crestimate/piecewise.hpp"
#include "crestimate/quadrature.hpp"
#include "crestimate/random.hpp"
#include "crestimate/rearrange.hpp"
#include "crestimate/transform.hpp"
#include "crestimate/verify.hpp"
