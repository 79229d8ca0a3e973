#include "cakebandit/model.hpp"

#include <string>

namespace cakebandit {

const ValuationSchedule& validate_schedule(const ValuationSchedule& schedule) {
    if (schedule.horizon < 1 || schedule.num_agents < 1) {
        throw DimensionMismatch("schedule requires horizon >= 1 and num_agents >= 1, got T=" +
                                std::to_string(schedule.horizon) + ", n=" +
                                std::to_string(schedule.num_agents));
    }
    const auto expected =
        static_cast<std::size_t>(schedule.horizon) * static_cast<std::size_t>(schedule.num_agents);
    if (schedule.values.size() != expected) {
        throw DimensionMismatch("value matrix has " + std::to_string(schedule.values.size()) +
                                " entries, expected " + std::to_string(expected));
    }
    if (!(schedule.alpha > 0.0)) {
        throw NonPositiveAlpha("alpha must be > 0, got " + std::to_string(schedule.alpha));
    }
    for (std::int64_t t = 0; t < schedule.horizon; ++t) {
        for (int a = 0; a < schedule.num_agents; ++a) {
            const double v = schedule.value(t, a);
            if (!(v >= 0.0 && v <= 1.0)) throw OutOfRangeValue(t, a, v);
        }
    }
    if (!schedule.pieces.empty()) {
        if (schedule.pieces.size() != static_cast<std::size_t>(schedule.horizon)) {
            throw DimensionMismatch("pieces present but count " +
                                    std::to_string(schedule.pieces.size()) + " != horizon " +
                                    std::to_string(schedule.horizon));
        }
        for (std::size_t t = 0; t < schedule.pieces.size(); ++t) {
            const Piece& p = schedule.pieces[t];
            if (!(0.0 <= p.left && p.left <= p.right && p.right <= 1.0)) {
                throw OutOfRangeValue("piece " + std::to_string(t + 1) + " endpoints [" +
                                      std::to_string(p.left) + ", " + std::to_string(p.right) +
                                      "] violate 0 <= left <= right <= 1");
            }
            if (t > 0 && schedule.pieces[t - 1].right != p.left) {
                throw OutOfRangeValue("piece " + std::to_string(t + 1) +
                                      " does not start where piece " + std::to_string(t) +
                                      " ended");
            }
        }
    }
    return schedule;
}

}  // namespace cakebandit
