#pragma once

#include "quadrep/error.hpp"
#include "quadrep/arith.hpp"
#include "quadrep/quadfield.hpp"
#include "quadrep/ideals.hpp"
#include "quadrep/gauss.hpp"
#include "quadrep/repnum.hpp"
#include "quadrep/divisor.hpp"
#include "quadrep/dirichlet.hpp"
