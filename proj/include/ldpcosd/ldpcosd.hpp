#pragma once
// Umbrella header for the decoding library (the CLI layer is separate).

#include "ldpcosd/alist.hpp"
#include "ldpcosd/channel.hpp"
#include "ldpcosd/decoders.hpp"
#include "ldpcosd/gf2.hpp"
#include "ldpcosd/montecarlo.hpp"
#include "ldpcosd/osd.hpp"
