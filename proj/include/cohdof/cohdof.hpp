#pragma once

#include "cohdof/bc_regions.hpp"
#include "cohdof/cli.hpp"
#include "cohdof/config_io.hpp"
#include "cohdof/errors.hpp"
#include "cohdof/geometry.hpp"
#include "cohdof/linksim.hpp"
#include "cohdof/lp.hpp"
#include "cohdof/mac_regions.hpp"
#include "cohdof/model.hpp"
#include "cohdof/rational.hpp"
#include "cohdof/scheduler.hpp"
#include "cohdof/svg.hpp"
#include "cohdof/verify.hpp"
