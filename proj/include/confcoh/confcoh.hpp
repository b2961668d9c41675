#pragma once

#include "arnold.hpp"
#include "coproduct.hpp"
#include "errors.hpp"
#include "expression.hpp"
#include "json_io.hpp"
#include "pairing.hpp"
#include "scalar.hpp"
#include "strata.hpp"
