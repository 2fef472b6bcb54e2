// Umbrella header.
#pragma once

#include "weyljacobi/extensions.hpp"
#include "weyljacobi/green.hpp"
#include "weyljacobi/limits.hpp"
#include "weyljacobi/model.hpp"
#include "weyljacobi/moebius.hpp"
#include "weyljacobi/serialize.hpp"
#include "weyljacobi/transfer.hpp"
#include "weyljacobi/types.hpp"
#include "weyljacobi/weyl.hpp"
