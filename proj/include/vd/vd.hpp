#pragma once

#include "error.hpp"
#include "series.hpp"
#include "quadrature.hpp"
#include "mobius.hpp"
#include "handle.hpp"
#include "roots.hpp"
#include "quotient.hpp"
#include "parser.hpp"
#include "symbol.hpp"
#include "operators.hpp"
#include "norms.hpp"
#include "domains.hpp"
