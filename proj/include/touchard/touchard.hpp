#pragma once

#include "touchard/class_criteria.hpp"
#include "touchard/disk_verifier.hpp"
#include "touchard/error.hpp"
#include "touchard/explorer.hpp"
#include "touchard/io.hpp"
#include "touchard/series.hpp"
#include "touchard/special_kernel.hpp"
