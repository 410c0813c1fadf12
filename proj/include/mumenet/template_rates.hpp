#ifndef MUMENET_TEMPLATE_RATES_HPP
#define MUMENET_TEMPLATE_RATES_HPP

#include <cstdint>

#include "mumenet/config.hpp"

namespace mumenet {

/// One row of the concert-template rate table: the uniform ranges the
/// production/communication/consumption rates of an information object are
/// drawn from. Commodities inherit the triple drawn for their object.
struct RateRow {
  UniformRange prod;
  UniformRange comm;
  UniformRange cons;
};

enum class RateRowKind {
  EmotionsToVEControls,
  GesturesStream,     // Gestures(u) -> AvatarSynch and -> MMPred
  SoundsStream,       // Sounds(u) -> AudienceMix and -> MMPred
  NetMonitorToLatComp,
  VEControlsOut,
  AvatarSynchOut,
  AudienceMixOut,
  StreamingOut,
  PredGestures,       // MMPred -> AvatarSynch
  PredSounds,         // MMPred -> AudienceMix
  CompDelays,         // LatComp -> MMPred / Streaming
};

RateRow rate_row(RateRowKind kind);

/// Upper bound on the summed communication rate over all commodities of a
/// concert template with `users` users (each commodity counted once at the
/// top of its range). Used to size the source/destination link capacity so
/// it can never bind.
double concert_comm_rate_upper_bound(std::int64_t users);

}  // namespace mumenet

#endif
