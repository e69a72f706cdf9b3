#pragma once

// Everything except the JSON layer (dbox/io.hpp), which needs the vendored
// nlohmann header.

#include "dbox/box.hpp"
#include "dbox/canon.hpp"
#include "dbox/error.hpp"
#include "dbox/genome.hpp"
#include "dbox/index.hpp"
#include "dbox/numeric.hpp"
#include "dbox/oracle.hpp"
#include "dbox/suit.hpp"
#include "dbox/tiling.hpp"
