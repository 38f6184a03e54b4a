#pragma once

#include "pwlnet/compile.hpp"
#include "pwlnet/cpwl.hpp"
#include "pwlnet/errors.hpp"
#include "pwlnet/fit.hpp"
#include "pwlnet/grid.hpp"
#include "pwlnet/io.hpp"
#include "pwlnet/kst.hpp"
#include "pwlnet/modulus.hpp"
#include "pwlnet/ramp.hpp"
#include "pwlnet/rational.hpp"
#include "pwlnet/relu_net.hpp"
#include "pwlnet/rng.hpp"
#include "pwlnet/scalar.hpp"
#include "pwlnet/shatter.hpp"
#include "pwlnet/to_cpwl.hpp"
