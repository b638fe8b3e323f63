#pragma once

#include "svcdep/dependencies.hpp"
#include "svcdep/dot.hpp"
#include "svcdep/elementary.hpp"
#include "svcdep/errors.hpp"
#include "svcdep/impact.hpp"
#include "svcdep/io.hpp"
#include "svcdep/model.hpp"
#include "svcdep/partition.hpp"
#include "svcdep/report.hpp"
#include "svcdep/scc.hpp"
#include "svcdep/slicing.hpp"
