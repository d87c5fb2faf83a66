#pragma once

#include "tsuq/frame.hpp"

namespace tsuq::dataio {

// Beijing PM2.5 hourly file (columns No, year, month, day, hour, pm2.5,
// DEWP, TEMP, PRES, cbwd, Iws, Is, Ir). Produces 8 features with pm2.5 as
// the target; wind direction is label-encoded in order of first appearance.
// Missing pm2.5 values are forward-filled, rows before the first observed
// value are dropped.
FrameTable load_pm25(const std::string& path);

// Jena weather file ("Date Time" + 14 feature columns, 10-minute cadence).
// Keeps rows at indices 0, 6, 12, ... for an hourly series; the target is
// "p (mbar)".
FrameTable load_jena(const std::string& path);

}  // namespace tsuq::dataio
