#pragma once

#include "loadstab/calendar.hpp"
#include "loadstab/config.hpp"
#include "loadstab/csv.hpp"
#include "loadstab/error.hpp"
#include "loadstab/ingest.hpp"
#include "loadstab/io.hpp"
#include "loadstab/longterm.hpp"
#include "loadstab/seasonality.hpp"
#include "loadstab/series.hpp"
#include "loadstab/shortterm.hpp"
#include "loadstab/stability.hpp"
#include "loadstab/stats.hpp"
