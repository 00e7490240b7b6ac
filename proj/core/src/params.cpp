#include "ssle/params.hpp"

namespace ssle {

void Params::validate() const {
    auto fail = [](const std::string& msg) { throw std::invalid_argument("Params: " + msg); };

    if (n < 2) fail("population size must be at least 2");
    if (r < 1 || r > n / 2) fail("require 1 <= r <= n/2, got r=" + std::to_string(r));
    if (cPool <= 1.0) fail("cPool must exceed 1");
    if (static_cast<std::int64_t>(r) * labelPool() <= n)
        fail("total label pool r*labelPool must exceed n");
    if (idSpace() < static_cast<std::int64_t>(n) * n) fail("identifier space must be at least n^2");

    if (cMax() < 1 || pMax() < 1 || rMax() < 1 || dMax() < 1 || sleepMax() < 1 ||
        leCountCap() < 1)
        fail("all timer caps must be at least 1");

    // Group-dependent spaces must be sane for every group size that can occur
    // (sizes range over {floor(r/2), ..., r}; size 0 never materializes).
    for (int g = r / 2 > 0 ? r / 2 : 1; g <= r; ++g) {
        if (sigSpaceFor(g) < 2) fail("signature space must be at least 2");
        if (idsPerRankFor(g) < 1) fail("ids per rank must be at least 1");
        if (sigRefreshFor(g) < 2) fail("signature refresh period must be at least 2");
    }
}

}  // namespace ssle
