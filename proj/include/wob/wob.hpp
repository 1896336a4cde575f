#pragma once

#include "wob/classical.hpp"
#include "wob/errors.hpp"
#include "wob/order3.hpp"
#include "wob/qext.hpp"
#include "wob/records.hpp"
#include "wob/refine2.hpp"
#include "wob/verify.hpp"
