#pragma once

#include "dormant/brackets.hpp"
#include "dormant/covers.hpp"
#include "dormant/cyclic.hpp"
#include "dormant/descent.hpp"
#include "dormant/diffmodule.hpp"
#include "dormant/duality.hpp"
#include "dormant/errors.hpp"
#include "dormant/exponents.hpp"
#include "dormant/fp.hpp"
#include "dormant/funcfield.hpp"
#include "dormant/matrix.hpp"
#include "dormant/module_io.hpp"
#include "dormant/poly.hpp"
#include "dormant/ratfunc.hpp"
#include "dormant/selftest.hpp"
