#pragma once

// Umbrella header.

#include "rmt/numerics.hpp"
#include "rmt/root_system.hpp"
#include "rmt/catalog.hpp"
#include "rmt/plancherel.hpp"
#include "rmt/bfunction.hpp"
#include "rmt/spherical.hpp"
#include "rmt/hardy.hpp"
#include "rmt/master.hpp"
