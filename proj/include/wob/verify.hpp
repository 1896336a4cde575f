#pragma once

#include "wob/verify/oracles.hpp"
#include "wob/verify/positivity.hpp"
#include "wob/verify/real.hpp"
