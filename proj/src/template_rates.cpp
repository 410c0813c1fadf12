#include "mumenet/template_rates.hpp"

namespace mumenet {

RateRow rate_row(RateRowKind kind) {
  switch (kind) {
    case RateRowKind::EmotionsToVEControls:
      return {{3, 10}, {10, 50}, {10, 50}};
    case RateRowKind::GesturesStream:
      return {{50, 70}, {10, 50}, {10, 50}};
    case RateRowKind::SoundsStream:
      return {{80, 120}, {10, 50}, {10, 50}};
    case RateRowKind::NetMonitorToLatComp:
      return {{3, 10}, {3, 10}, {3, 10}};
    case RateRowKind::VEControlsOut:
      return {{10, 50}, {10, 50}, {3, 10}};
    case RateRowKind::AvatarSynchOut:
      return {{10, 50}, {10, 50}, {50, 70}};
    case RateRowKind::AudienceMixOut:
      return {{10, 50}, {10, 50}, {120, 200}};
    case RateRowKind::StreamingOut:
      return {{10, 50}, {10, 50}, {120, 200}};
    case RateRowKind::PredGestures:
      return {{50, 70}, {30, 70}, {50, 70}};
    case RateRowKind::PredSounds:
      return {{80, 120}, {30, 40}, {80, 120}};
    case RateRowKind::CompDelays:
      return {{3, 10}, {3, 10}, {3, 10}};
  }
  return {};
}

double concert_comm_rate_upper_bound(std::int64_t users) {
  const double u = static_cast<double>(users);
  // Per user: 5 source commodities (emotions, 2x gestures, 2x sounds) and
  // 4 destination commodities, all with comm rate <= 50.
  const double per_user = 5 * 50.0 + 4 * 50.0;
  // Shared: net monitor feed, two prediction streams, two delay feeds.
  const double shared = rate_row(RateRowKind::NetMonitorToLatComp).comm.hi +
                        rate_row(RateRowKind::PredGestures).comm.hi +
                        rate_row(RateRowKind::PredSounds).comm.hi +
                        2 * rate_row(RateRowKind::CompDelays).comm.hi;
  return per_user * u + shared;
}

}  // namespace mumenet
